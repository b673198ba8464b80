#include "mscodec/bhcode.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "mscodec/combinatorics.hpp"

namespace mscodec {

// ---- parity-check specs ----

ParityCheckSpec parse_parity_check(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    ParityCheckSpec spec;
    bool have_d = false;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        auto first = line.find_first_not_of(' ');
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        if (line.rfind("d=", 0) == 0) {
            try {
                spec.d = std::stoi(line.substr(2));
            } catch (const std::exception&) {
                throw Error(Errc::ParseError, "bad d= header");
            }
            have_d = true;
            continue;
        }
        rows.push_back(line);
    }
    if (!have_d) throw Error(Errc::ParseError, "missing d= header");
    if (rows.empty()) throw Error(Errc::ParseError, "empty matrix");
    spec.matrix = Gf2Matrix::from_rows(rows);
    return spec;
}

ParityCheckSpec load_parity_check(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw Error(Errc::ParseError, "cannot open " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    auto spec = parse_parity_check(ss.str());
    spec.name = path;
    return spec;
}

std::string format_parity_check(const ParityCheckSpec& spec) {
    std::string out = "d=" + std::to_string(spec.d) + "\n";
    for (const auto& r : spec.matrix.row_strings()) out += r + "\n";
    return out;
}

ParityCheckSpec cyclic_parity_check(std::uint64_t g, int n, int d, std::string name) {
    int r = 63;
    while (r > 0 && !((g >> r) & 1)) --r;
    ParityCheckSpec spec;
    spec.d = d;
    spec.name = std::move(name);
    spec.matrix = Gf2Matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(n));
    std::uint64_t v = 1;  // x^i mod g
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < r; ++j) spec.matrix.set(static_cast<std::size_t>(j), static_cast<std::size_t>(i), static_cast<int>((v >> j) & 1));
        v <<= 1;
        if ((v >> r) & 1) v ^= g;
    }
    return spec;
}

namespace {
struct Builtin {
    const char* name;
    std::uint64_t g;
    int n, d;
};
constexpr Builtin kBuiltins[] = {
    {"hamming_7_4", 0b1011, 7, 3},
    {"bch_15_7", 0b111010001, 15, 5},
    {"bch_15_5", 0b10100110111, 15, 7},
    {"bch_31_16", 0b1000111110101111, 31, 7},
    {"bch_255_239", 0b10110111101100011, 255, 5},
};
}  // namespace

ParityCheckSpec builtin_parity_check(const std::string& name) {
    for (const auto& b : kBuiltins)
        if (name == b.name) return cyclic_parity_check(b.g, b.n, b.d, b.name);
    throw Error(Errc::InvalidArgument, "unknown builtin matrix " + name);
}

std::vector<std::string> builtin_parity_check_names() {
    std::vector<std::string> out;
    for (const auto& b : kBuiltins) out.emplace_back(b.name);
    return out;
}

// ---- codebooks ----

int BhCodebook::index_of(const BitString& s) const {
    for (std::size_t i = 0; i < strings.size(); ++i)
        if (strings[i] == s) return static_cast<int>(i);
    return -1;
}

BhCodebook build_bh_codebook(int h, const ParityCheckSpec& spec) {
    if (h < 1) throw Error(Errc::InvalidArgument, "h must be positive");
    if (spec.d < 2 * h + 1)
        throw Error(Errc::DistanceTooSmall, "d=" + std::to_string(spec.d) + " < 2h+1=" + std::to_string(2 * h + 1));
    BhCodebook cb;
    cb.n = static_cast<int>(spec.matrix.rows());
    cb.h = h;
    std::set<BitString> seen;
    for (std::size_t c = 0; c < spec.matrix.cols(); ++c) {
        auto col = spec.matrix.column(c);
        if (col.weight() == 0) throw Error(Errc::InvalidArgument, "zero column in parity-check matrix");
        if (!seen.insert(col).second) throw Error(Errc::DuplicateString, "repeated column " + col.str());
        cb.strings.push_back(col);
    }
    cb.spec = spec;
    return cb;
}

BhCodebook explicit_codebook(const std::vector<BitString>& strings, int h) {
    BhCodebook cb;
    cb.h = h;
    cb.n = strings.empty() ? 0 : static_cast<int>(strings.front().size());
    std::set<BitString> seen;
    for (const auto& s : strings) {
        if (static_cast<int>(s.size()) != cb.n) throw Error(Errc::LengthMismatch, "codebook strings differ in length");
        if (!seen.insert(s).second) throw Error(Errc::DuplicateString, s.str());
    }
    cb.strings = strings;
    return cb;
}

SumVector real_sum(const std::vector<BitString>& strings, std::size_t n) {
    SumVector v(n, 0);
    for (const auto& s : strings) {
        if (s.size() != n) throw Error(Errc::LengthMismatch, "sum of unequal lengths");
        for (std::size_t i = 0; i < n; ++i) v[i] += s[i];
    }
    return v;
}

SumVector real_sum(const std::vector<BitString>& strings) {
    return real_sum(strings, strings.empty() ? 0 : strings.front().size());
}

namespace {

std::vector<BitString> pick(const BhCodebook& cb, const std::vector<int>& idx) {
    std::vector<BitString> out;
    for (int i : idx) out.push_back(cb.strings[static_cast<std::size_t>(i)]);
    return out;
}

std::uint64_t subsets_up_to(std::size_t L, int h) {
    std::uint64_t total = 0;
    for (int k = 1; k <= h; ++k) {
        auto c = binomial(static_cast<long long>(L), k);
        if (c == UINT64_MAX || total + c < total) return UINT64_MAX;
        total += c;
    }
    return total;
}

}  // namespace

VerificationResult verify_bh(const BhCodebook& cb, int h, std::uint64_t budget) {
    const int L = static_cast<int>(cb.size());
    if (subsets_up_to(cb.size(), h) > budget)
        throw Error(Errc::SearchSpaceTooLarge, "verify_bh over " + std::to_string(L) + " strings, h=" + std::to_string(h));
    std::map<SumVector, std::vector<int>> seen;
    VerificationResult res;
    for (int k = 1; k <= h && res.valid; ++k) {
        for_each_combination(L, k, [&](const std::vector<int>& idx) {
            auto sum = real_sum(pick(cb, idx), static_cast<std::size_t>(cb.n));
            auto [it, fresh] = seen.emplace(sum, idx);
            if (!fresh) {
                res.valid = false;
                res.first = pick(cb, it->second);
                res.second = pick(cb, idx);
                res.sum = sum;
                return false;
            }
            return true;
        });
    }
    return res;
}

std::vector<int> invert_xor(const BhCodebook& cb, const BitString& target, int hbar, std::uint64_t budget) {
    if (!cb.spec) throw Error(Errc::Unsupported, "mod-2 inversion needs a parity-check-backed codebook");
    if (static_cast<int>(target.size()) != cb.n) throw Error(Errc::LengthMismatch, "target length");
    if (hbar < 0 || hbar > cb.h) throw Error(Errc::InvalidArgument, "hbar out of range");
    if (hbar == 0) {
        if (target.weight() != 0) throw Error(Errc::NoSolution, "no subset with mod-2 sum " + target.str());
        return {};
    }
    if (binomial(static_cast<long long>(cb.size()), hbar - 1) > budget)
        throw Error(Errc::SearchSpaceTooLarge, "syndrome table too large");
    // enumerate hbar-1 members, look the last one up
    std::map<BitString, int> where;
    for (std::size_t i = 0; i < cb.size(); ++i) where.emplace(cb.strings[i], static_cast<int>(i));
    std::vector<std::vector<int>> hits;
    for_each_combination(static_cast<int>(cb.size()), hbar - 1, [&](const std::vector<int>& idx) {
        BitString acc = target;
        for (int i : idx) acc = acc ^ cb.strings[static_cast<std::size_t>(i)];
        auto it = where.find(acc);
        if (it != where.end() && (idx.empty() || it->second > idx.back())) {
            auto full = idx;
            full.push_back(it->second);
            hits.push_back(std::move(full));
        }
        return hits.size() < 2;
    });
    if (hits.empty()) throw Error(Errc::NoSolution, "no subset with mod-2 sum " + target.str());
    if (hits.size() > 1) throw Error(Errc::AmbiguousSolution, "several subsets share mod-2 sum " + target.str());
    return hits.front();
}

std::vector<BitString> invert_sum(const BhCodebook& cb, const SumVector& target, int hbar,
                                  InvertStrategy strategy, std::uint64_t budget) {
    if (static_cast<int>(target.size()) != cb.n) throw Error(Errc::LengthMismatch, "target length");
    if (hbar < 0) throw Error(Errc::InvalidArgument, "negative hbar");
    if (strategy == InvertStrategy::Syndrome) {
        std::vector<std::uint8_t> mod2(target.size());
        for (std::size_t i = 0; i < target.size(); ++i) mod2[i] = static_cast<std::uint8_t>(((target[i] % 2) + 2) % 2);
        auto idx = invert_xor(cb, BitString(std::move(mod2)), hbar, budget);
        auto picked = pick(cb, idx);
        if (real_sum(picked, static_cast<std::size_t>(cb.n)) != target)
            throw Error(Errc::NoSolution, "syndrome solution does not match the real sum");
        return picked;
    }
    if (binomial(static_cast<long long>(cb.size()), hbar) > budget)
        throw Error(Errc::SearchSpaceTooLarge, "exhaustive inversion too large");
    std::vector<std::vector<int>> hits;
    for_each_combination(static_cast<int>(cb.size()), hbar, [&](const std::vector<int>& idx) {
        if (real_sum(pick(cb, idx), static_cast<std::size_t>(cb.n)) == target) hits.push_back(idx);
        return hits.size() < 2;
    });
    if (hits.empty()) throw Error(Errc::NoSolution, "no subset sums to " + sum_string(target));
    if (hits.size() > 1) throw Error(Errc::AmbiguousSolution, "several subsets sum to " + sum_string(target));
    return pick(cb, hits.front());
}

double codebook_rate(std::size_t size, std::size_t length) {
    if (size == 0 || length == 0) return 0.0;
    return std::log2(static_cast<double>(size)) / static_cast<double>(length);
}

}  // namespace mscodec
