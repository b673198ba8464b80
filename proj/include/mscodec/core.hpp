#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "mscodec/error.hpp"

namespace mscodec {

// Binary string, left to right. The empty string is representable so that
// segments (e.g. an empty flag string) can be handled uniformly; the
// operations of this module reject it where a nonempty string is required.
class BitString {
public:
    BitString() = default;
    explicit BitString(std::vector<std::uint8_t> bits);
    explicit BitString(std::string_view text);
    static BitString zeros(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 0)); }
    static BitString ones(std::size_t n) { return BitString(std::vector<std::uint8_t>(n, 1)); }

    std::size_t size() const { return bits_.size(); }
    bool empty() const { return bits_.empty(); }
    int operator[](std::size_t i) const { return bits_[i]; }
    const std::vector<std::uint8_t>& bits() const { return bits_; }

    int weight() const;
    // R(s)_i = 2 wt(s_1..s_i) - i, for i in [0, n].
    int rds(std::size_t i) const;
    int rds() const { return rds(size()); }

    BitString slice(std::size_t pos, std::size_t len) const;
    BitString complement() const;
    BitString operator+(const BitString& o) const;
    BitString& operator+=(const BitString& o);
    BitString operator^(const BitString& o) const;

    std::string str() const;
    auto operator<=>(const BitString&) const = default;
    bool operator==(const BitString&) const = default;

private:
    std::vector<std::uint8_t> bits_;
};

struct Composition {
    int zeros = 0;
    int ones = 0;

    int length() const { return zeros + ones; }
    std::string str() const;
    static Composition parse(std::string_view text);

    // canonical order: (length, ones)
    friend std::strong_ordering operator<=>(const Composition& a, const Composition& b) {
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        return a.ones <=> b.ones;
    }
    friend bool operator==(const Composition& a, const Composition& b) = default;
};

class CompositionMultiset {
public:
    using Map = std::map<Composition, int>;

    CompositionMultiset() = default;
    CompositionMultiset(std::initializer_list<Composition> items);
    // "{0, 01, 01^2, 0^21^2}" or the same without braces
    static CompositionMultiset parse(std::string_view text);

    void add(const Composition& c, int mult = 1);
    // false when fewer than mult copies are present (multiset unchanged)
    bool remove(const Composition& c, int mult = 1);
    int count(const Composition& c) const;
    // number of elements counted with multiplicity
    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    const Map& entries() const { return entries_; }

    int max_length() const;
    // items of one fragment length, canonical order, with multiplicity
    std::vector<Composition> of_length(int len) const;
    int count_of_length(int len) const;
    int ones_of_length(int len) const;

    bool contains(const CompositionMultiset& sub) const;
    CompositionMultiset& operator+=(const CompositionMultiset& o);
    CompositionMultiset operator+(const CompositionMultiset& o) const;
    // multiset difference; requires contains(o)
    CompositionMultiset operator-(const CompositionMultiset& o) const;

    std::string str() const;
    bool operator==(const CompositionMultiset&) const = default;

private:
    Map entries_;
    std::size_t size_ = 0;
};

Composition composition(const BitString& s);
CompositionMultiset prefix_multiset(const BitString& s);
CompositionMultiset suffix_multiset(const BitString& s);
CompositionMultiset full_multiset(const BitString& s);
CompositionMultiset pool(const std::vector<BitString>& strings);
bool is_dyck(const BitString& s);

std::vector<BitString> parse_bitstrings(const std::vector<std::string>& text);

}  // namespace mscodec
