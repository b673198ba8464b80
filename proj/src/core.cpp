#include "mscodec/core.hpp"

#include <algorithm>
#include <cctype>
#include <set>

namespace mscodec {

std::string_view errc_name(Errc c) {
    switch (c) {
        case Errc::DuplicateString: return "DuplicateString";
        case Errc::LengthMismatch: return "LengthMismatch";
        case Errc::OddLength: return "OddLength";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::ParseError: return "ParseError";
        case Errc::DistanceTooSmall: return "DistanceTooSmall";
        case Errc::SearchSpaceTooLarge: return "SearchSpaceTooLarge";
        case Errc::NoSolution: return "NoSolution";
        case Errc::AmbiguousSolution: return "AmbiguousSolution";
        case Errc::CountMismatch: return "CountMismatch";
        case Errc::NegativeIncrement: return "NegativeIncrement";
        case Errc::InconsistentPoolSize: return "InconsistentPoolSize";
        case Errc::Unsupported: return "Unsupported";
        case Errc::PatternNotPresent: return "PatternNotPresent";
        case Errc::NotMassReducing: return "NotMassReducing";
        case Errc::Conflict: return "Conflict";
        case Errc::CapabilityTooSmall: return "CapabilityTooSmall";
        case Errc::TooManyErasures: return "TooManyErasures";
        case Errc::DecodeFailure: return "DecodeFailure";
        case Errc::OddH: return "OddH";
    }
    return "Unknown";
}

// ---- BitString ----

BitString::BitString(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
    for (auto b : bits_)
        if (b > 1) throw Error(Errc::ParseError, "bit value out of range");
}

BitString::BitString(std::string_view text) {
    bits_.reserve(text.size());
    for (char ch : text) {
        if (ch == '0' || ch == '1')
            bits_.push_back(static_cast<std::uint8_t>(ch - '0'));
        else
            throw Error(Errc::ParseError, "not a binary string: '" + std::string(text) + "'");
    }
}

int BitString::weight() const {
    return static_cast<int>(std::count(bits_.begin(), bits_.end(), 1));
}

int BitString::rds(std::size_t i) const {
    if (i > bits_.size()) throw Error(Errc::InvalidArgument, "rds index out of range");
    int w = static_cast<int>(std::count(bits_.begin(), bits_.begin() + static_cast<long>(i), 1));
    return 2 * w - static_cast<int>(i);
}

BitString BitString::slice(std::size_t pos, std::size_t len) const {
    if (pos + len > bits_.size()) throw Error(Errc::InvalidArgument, "slice out of range");
    return BitString(std::vector<std::uint8_t>(bits_.begin() + static_cast<long>(pos),
                                               bits_.begin() + static_cast<long>(pos + len)));
}

BitString BitString::complement() const {
    auto out = bits_;
    for (auto& b : out) b ^= 1;
    return BitString(std::move(out));
}

BitString BitString::operator+(const BitString& o) const {
    BitString r = *this;
    r += o;
    return r;
}

BitString& BitString::operator+=(const BitString& o) {
    bits_.insert(bits_.end(), o.bits_.begin(), o.bits_.end());
    return *this;
}

BitString BitString::operator^(const BitString& o) const {
    if (o.size() != size()) throw Error(Errc::LengthMismatch, "xor of unequal lengths");
    auto out = bits_;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] ^= o.bits_[i];
    return BitString(std::move(out));
}

std::string BitString::str() const {
    std::string s;
    s.reserve(bits_.size());
    for (auto b : bits_) s.push_back(static_cast<char>('0' + b));
    return s;
}

// ---- Composition ----

namespace {

void append_power(std::string& out, char sym, int e) {
    if (e == 0) return;
    out.push_back(sym);
    if (e == 1) return;
    out.push_back('^');
    if (e < 10)
        out += std::to_string(e);
    else
        out += "{" + std::to_string(e) + "}";
}

// parses an optional "^e" / "^{e}" suffix
int parse_exponent(std::string_view t, std::size_t& i) {
    if (i >= t.size() || t[i] != '^') return 1;
    ++i;
    if (i < t.size() && t[i] == '{') {
        auto close = t.find('}', i);
        if (close == std::string_view::npos) throw Error(Errc::ParseError, "unclosed exponent");
        auto digits = t.substr(i + 1, close - i - 1);
        if (digits.empty() || !std::all_of(digits.begin(), digits.end(), ::isdigit))
            throw Error(Errc::ParseError, "bad exponent");
        i = close + 1;
        return std::stoi(std::string(digits));
    }
    if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) return t[i++] - '0';
    throw Error(Errc::ParseError, "bad exponent");
}

}  // namespace

std::string Composition::str() const {
    std::string out;
    append_power(out, '0', zeros);
    append_power(out, '1', ones);
    return out;
}

Composition Composition::parse(std::string_view text) {
    std::string t;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) t.push_back(ch);
    Composition c;
    std::size_t i = 0;
    if (i < t.size() && t[i] == '0') {
        ++i;
        c.zeros = parse_exponent(t, i);
    }
    if (i < t.size() && t[i] == '1') {
        ++i;
        c.ones = parse_exponent(t, i);
    }
    if (i != t.size() || c.length() == 0)
        throw Error(Errc::ParseError, "not a composition: '" + std::string(text) + "'");
    return c;
}

// ---- CompositionMultiset ----

CompositionMultiset::CompositionMultiset(std::initializer_list<Composition> items) {
    for (const auto& c : items) add(c);
}

CompositionMultiset CompositionMultiset::parse(std::string_view text) {
    std::string t(text);
    auto b = t.find('{');
    auto e = t.rfind('}');
    if (b != std::string::npos && e != std::string::npos && e > b) t = t.substr(b + 1, e - b - 1);
    CompositionMultiset m;
    std::size_t start = 0;
    while (start <= t.size()) {
        auto comma = t.find(',', start);
        std::string item = t.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        bool blank = std::all_of(item.begin(), item.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); });
        if (!blank) m.add(Composition::parse(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return m;
}

void CompositionMultiset::add(const Composition& c, int mult) {
    if (mult <= 0) return;
    if (c.zeros < 0 || c.ones < 0 || c.length() == 0)
        throw Error(Errc::InvalidArgument, "composition must have positive length");
    entries_[c] += mult;
    size_ += static_cast<std::size_t>(mult);
}

bool CompositionMultiset::remove(const Composition& c, int mult) {
    auto it = entries_.find(c);
    if (it == entries_.end() || it->second < mult) return false;
    it->second -= mult;
    if (it->second == 0) entries_.erase(it);
    size_ -= static_cast<std::size_t>(mult);
    return true;
}

int CompositionMultiset::count(const Composition& c) const {
    auto it = entries_.find(c);
    return it == entries_.end() ? 0 : it->second;
}

int CompositionMultiset::max_length() const {
    return entries_.empty() ? 0 : entries_.rbegin()->first.length();
}

std::vector<Composition> CompositionMultiset::of_length(int len) const {
    std::vector<Composition> out;
    auto it = entries_.lower_bound(Composition{len, 0});
    for (; it != entries_.end() && it->first.length() == len; ++it)
        for (int k = 0; k < it->second; ++k) out.push_back(it->first);
    return out;
}

int CompositionMultiset::count_of_length(int len) const {
    int n = 0;
    auto it = entries_.lower_bound(Composition{len, 0});
    for (; it != entries_.end() && it->first.length() == len; ++it) n += it->second;
    return n;
}

int CompositionMultiset::ones_of_length(int len) const {
    int n = 0;
    auto it = entries_.lower_bound(Composition{len, 0});
    for (; it != entries_.end() && it->first.length() == len; ++it) n += it->first.ones * it->second;
    return n;
}

bool CompositionMultiset::contains(const CompositionMultiset& sub) const {
    for (const auto& [c, m] : sub.entries_)
        if (count(c) < m) return false;
    return true;
}

CompositionMultiset& CompositionMultiset::operator+=(const CompositionMultiset& o) {
    for (const auto& [c, m] : o.entries_) add(c, m);
    return *this;
}

CompositionMultiset CompositionMultiset::operator+(const CompositionMultiset& o) const {
    CompositionMultiset r = *this;
    r += o;
    return r;
}

CompositionMultiset CompositionMultiset::operator-(const CompositionMultiset& o) const {
    CompositionMultiset r = *this;
    for (const auto& [c, m] : o.entries_)
        if (!r.remove(c, m)) throw Error(Errc::PatternNotPresent, "multiset difference: " + c.str() + " missing");
    return r;
}

std::string CompositionMultiset::str() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [c, m] : entries_)
        for (int k = 0; k < m; ++k) {
            if (!first) out += ", ";
            out += c.str();
            first = false;
        }
    return out + "}";
}

// ---- operations ----

Composition composition(const BitString& s) {
    if (s.empty()) throw Error(Errc::InvalidArgument, "empty string");
    int w = s.weight();
    return {static_cast<int>(s.size()) - w, w};
}

CompositionMultiset prefix_multiset(const BitString& s) {
    if (s.empty()) throw Error(Errc::InvalidArgument, "empty string");
    CompositionMultiset m;
    int w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        w += s[i];
        m.add({static_cast<int>(i + 1) - w, w});
    }
    return m;
}

CompositionMultiset suffix_multiset(const BitString& s) {
    if (s.empty()) throw Error(Errc::InvalidArgument, "empty string");
    CompositionMultiset m;
    int w = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        w += s[s.size() - 1 - i];
        m.add({static_cast<int>(i + 1) - w, w});
    }
    return m;
}

CompositionMultiset full_multiset(const BitString& s) {
    return prefix_multiset(s) + suffix_multiset(s);
}

CompositionMultiset pool(const std::vector<BitString>& strings) {
    CompositionMultiset m;
    std::set<BitString> seen;
    for (const auto& s : strings) {
        if (s.size() != strings.front().size()) throw Error(Errc::LengthMismatch, "pool of unequal lengths");
        if (!seen.insert(s).second) throw Error(Errc::DuplicateString, s.str());
        m += full_multiset(s);
    }
    return m;
}

bool is_dyck(const BitString& s) {
    if (s.size() % 2 != 0) throw Error(Errc::OddLength, "Dyck strings have even length");
    if (s.empty()) return true;
    int w = 0;
    for (std::size_t i = 0; i + 1 < s.size(); ++i) {
        w += s[i];
        if (w < static_cast<int>((i + 2) / 2)) return false;
    }
    w += s[s.size() - 1];
    return 2 * w == static_cast<int>(s.size());
}

std::vector<BitString> parse_bitstrings(const std::vector<std::string>& text) {
    std::vector<BitString> out;
    out.reserve(text.size());
    for (const auto& t : text) out.emplace_back(t);
    return out;
}

}  // namespace mscodec
