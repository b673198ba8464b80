#pragma once

#include <random>
#include <string>
#include <vector>

#include "mscodec/core.hpp"

namespace testsupport {

inline mscodec::BitString bs(const std::string& s) { return mscodec::BitString(s); }
inline mscodec::CompositionMultiset ms(const std::string& s) { return mscodec::CompositionMultiset::parse(s); }

inline std::vector<mscodec::BitString> bss(std::initializer_list<const char*> items) {
    std::vector<mscodec::BitString> out;
    for (auto* s : items) out.emplace_back(std::string(s));
    return out;
}

inline mscodec::BitString random_bits(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (auto& b : v) b = static_cast<std::uint8_t>(rng() & 1);
    return mscodec::BitString(std::move(v));
}

inline mscodec::BitString from_int(unsigned long long x, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>((x >> (n - 1 - i)) & 1);
    return mscodec::BitString(std::move(v));
}

// naive composition of a text substring, used as an independent oracle
inline mscodec::Composition naive_comp(const std::string& t) {
    mscodec::Composition c;
    for (char ch : t) (ch == '1' ? c.ones : c.zeros)++;
    return c;
}

}  // namespace testsupport
