#include <bit>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "doctest.h"
#include "mscodec/bhcode.hpp"
#include "mscodec/combinatorics.hpp"
#include "support.hpp"

using namespace mscodec;
using namespace testsupport;

namespace {

// independent oracle: compare every pair of subsets (sizes 1..h) directly
bool brute_is_bh(const std::vector<BitString>& v, int h) {
    std::vector<std::vector<int>> subsets;
    for (int k = 1; k <= h; ++k)
        for_each_combination(static_cast<int>(v.size()), k, [&](const std::vector<int>& idx) {
            subsets.push_back(idx);
            return true;
        });
    auto sum = [&](const std::vector<int>& idx) {
        std::vector<int> s(v.front().size(), 0);
        for (int i : idx)
            for (std::size_t j = 0; j < s.size(); ++j) s[j] += v[static_cast<std::size_t>(i)][j];
        return s;
    };
    for (std::size_t a = 0; a < subsets.size(); ++a)
        for (std::size_t b = a + 1; b < subsets.size(); ++b)
            if (sum(subsets[a]) == sum(subsets[b])) return false;
    return true;
}

// minimum weight of the cyclic code generated by g (polynomial products)
int cyclic_min_distance(std::uint64_t g, int n) {
    int r = 63 - std::countl_zero(g);
    int k = n - r;
    int best = n;
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
        std::uint64_t c = 0;
        for (int i = 0; i < k; ++i)
            if ((m >> i) & 1) c ^= g << i;
        best = std::min(best, std::popcount(c));
    }
    return best;
}

std::string read_file(const std::string& p) {
    std::ifstream f(p);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("shipped matrix files match the builtin tables") {
    for (const auto& name : builtin_parity_check_names()) {
        if (name == "bch_31_16" || name == "bch_255_239") continue;
        auto file = load_parity_check(std::string(MSCODEC_DATA_DIR) + "/matrices/" + name + ".txt");
        auto builtin = builtin_parity_check(name);
        CHECK(file.matrix == builtin.matrix);
        CHECK(file.d == builtin.d);
        CHECK(format_parity_check(builtin) == read_file(std::string(MSCODEC_DATA_DIR) + "/matrices/" + name + ".txt"));
    }
}

TEST_CASE("builtin matrices have the declared distance") {
    // every nonzero x with Hx = 0 has weight >= d, checked on the generator polynomial side
    CHECK(cyclic_min_distance(0b1011, 7) == 3);
    CHECK(cyclic_min_distance(0b111010001, 15) == 5);
    CHECK(cyclic_min_distance(0b10100110111, 15) == 7);
    CHECK(cyclic_min_distance(0b1000111110101111, 31) == 7);
    // and the matrix annihilates the generator
    for (auto [name, g] : {std::pair{"bch_15_7", 0b111010001ull}, std::pair{"bch_15_5", 0b10100110111ull},
                           std::pair{"bch_31_16", 0b1000111110101111ull}}) {
        auto spec = builtin_parity_check(name);
        std::vector<std::uint8_t> c(spec.matrix.cols(), 0);
        for (std::size_t i = 0; i < c.size(); ++i) c[i] = static_cast<std::uint8_t>((g >> i) & 1);
        CHECK(spec.matrix.multiply(BitString(c)).weight() == 0);
    }
}

TEST_CASE("parity-check file format") {
    auto spec = parse_parity_check("# comment\nd=3\n1001011\n0101110\n0010111\n");
    CHECK(spec.d == 3);
    CHECK(spec.matrix.rows() == 3);
    CHECK(spec.matrix.cols() == 7);
    CHECK_THROWS_AS(parse_parity_check("1001\n0110\n"), Error);
    CHECK_THROWS_AS(parse_parity_check("d=3\n1001\n011\n"), Error);
    CHECK_THROWS_AS(parse_parity_check("d=3\n10a1\n"), Error);
}

TEST_CASE("build_bh_codebook") {
    auto cb = build_bh_codebook(2, builtin_parity_check("bch_15_7"));
    CHECK(cb.size() == 15);
    CHECK(cb.n == 8);
    CHECK(verify_bh(cb, 2).valid);
    CHECK(brute_is_bh(cb.strings, 2));
    CHECK(codebook_rate(cb) == doctest::Approx(0.488361).epsilon(1e-6));

    auto ham = build_bh_codebook(1, builtin_parity_check("hamming_7_4"));
    CHECK(ham.size() == 7);
    CHECK(ham.n == 3);
    CHECK(verify_bh(ham, 1).valid);

    try {
        build_bh_codebook(2, builtin_parity_check("hamming_7_4"));
        FAIL("expected DistanceTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DistanceTooSmall);
    }

    auto cb3 = build_bh_codebook(3, builtin_parity_check("bch_15_5"));
    CHECK(cb3.n == 10);
    CHECK(verify_bh(cb3, 3).valid);
    CHECK(brute_is_bh(cb3.strings, 3));

    auto wide = build_bh_codebook(2, builtin_parity_check("bch_255_239"));
    CHECK(wide.n == 16);
    CHECK(wide.size() == 255);
    CHECK(verify_bh(wide, 2).valid);
}

TEST_CASE("verify_bh on the six-bit example") {
    auto good = explicit_codebook(bss({"110100", "101010", "110010"}), 2);
    CHECK(verify_bh(good, 2).valid);
    auto bad = explicit_codebook(bss({"110100", "101010", "110010", "101100"}), 2);
    auto r = verify_bh(bad, 2);
    CHECK_FALSE(r.valid);
    CHECK(r.first == bss({"110100", "101010"}));
    CHECK(r.second == bss({"110010", "101100"}));
    CHECK(sum_string(r.sum) == "211110");
    CHECK(verify_bh(explicit_codebook(bss({"0110"}), 5), 5).valid);
    CHECK_THROWS_AS(verify_bh(build_bh_codebook(2, builtin_parity_check("bch_15_7")), 2, 10), Error);
}

TEST_CASE("property: verify_bh agrees with the brute-force oracle on random sets") {
    std::mt19937_64 rng(21);
    int agree_valid = 0, agree_invalid = 0;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<BitString> v;
        std::size_t want = 3 + rng() % 5;
        while (v.size() < want) {
            auto s = random_bits(rng, 6);
            if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
        }
        int h = 1 + static_cast<int>(rng() % 3);
        bool ours = verify_bh(explicit_codebook(v, h), h).valid;
        bool theirs = brute_is_bh(v, h);
        CHECK(ours == theirs);
        (ours ? agree_valid : agree_invalid)++;
    }
    CHECK(agree_valid > 0);
    CHECK(agree_invalid > 0);
}

TEST_CASE("invert_sum") {
    auto cb = explicit_codebook(bss({"110100", "101010", "110010"}), 2);
    CHECK(invert_sum(cb, parse_sum("211110"), 2) == bss({"110100", "101010"}));
    CHECK(invert_sum(cb, parse_sum("110010"), 1) == bss({"110010"}));
    CHECK_THROWS_AS(invert_sum(cb, parse_sum("222222"), 2), Error);
    // Syndrome strategy needs a parity-check-backed codebook
    try {
        invert_sum(cb, parse_sum("211110"), 2, InvertStrategy::Syndrome);
        FAIL("expected Unsupported");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::Unsupported);
    }
    auto bad = explicit_codebook(bss({"110100", "101010", "110010", "101100"}), 2);
    try {
        invert_sum(bad, parse_sum("211110"), 2);
        FAIL("expected AmbiguousSolution");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::AmbiguousSolution);
    }
}

TEST_CASE("property: invert_sum round trip over every subset, both strategies") {
    auto cb = build_bh_codebook(2, builtin_parity_check("bch_15_7"));
    for (int k = 1; k <= 2; ++k)
        for_each_combination(15, k, [&](const std::vector<int>& idx) {
            std::vector<BitString> chosen;
            for (int i : idx) chosen.push_back(cb.strings[static_cast<std::size_t>(i)]);
            auto target = real_sum(chosen);
            CHECK(invert_sum(cb, target, k) == chosen);
            CHECK(invert_sum(cb, target, k, InvertStrategy::Syndrome) == chosen);
            return true;
        });
    auto cb3 = build_bh_codebook(3, builtin_parity_check("bch_15_5"));
    for_each_combination(15, 3, [&](const std::vector<int>& idx) {
        std::vector<BitString> chosen;
        for (int i : idx) chosen.push_back(cb3.strings[static_cast<std::size_t>(i)]);
        CHECK(invert_sum(cb3, real_sum(chosen), 3, InvertStrategy::Syndrome) == chosen);
        return true;
    });
}

TEST_CASE("property: mod-2 sum of a subset equals H times its indicator") {
    auto spec = builtin_parity_check("bch_15_7");
    auto cb = build_bh_codebook(2, spec);
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> x(15, 0);
        std::vector<BitString> chosen;
        for (int i = 0; i < 15; ++i)
            if (rng() % 3 == 0) {
                x[static_cast<std::size_t>(i)] = 1;
                chosen.push_back(cb.strings[static_cast<std::size_t>(i)]);
            }
        auto s = real_sum(chosen, 8);
        std::vector<std::uint8_t> m(8);
        for (int j = 0; j < 8; ++j) m[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(s[static_cast<std::size_t>(j)] % 2);
        CHECK(spec.matrix.multiply(BitString(x)) == BitString(m));
    }
}

TEST_CASE("codebook_rate") {
    CHECK(codebook_rate(15, 8) == doctest::Approx(std::log2(15.0) / 8));
    CHECK(codebook_rate(2, 1) == 1.0);
    CHECK(codebook_rate(3, 6) == doctest::Approx(0.264160).epsilon(1e-6));
}
