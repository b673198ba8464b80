#include <algorithm>
#include <random>

#include "doctest.h"
#include "mscodec/core.hpp"
#include "support.hpp"

using namespace mscodec;
using namespace testsupport;

TEST_CASE("composition text form") {
    CHECK(Composition{2, 1}.str() == "0^21");
    CHECK(Composition{0, 1}.str() == "1");
    CHECK(Composition{1, 2}.str() == "01^2");
    CHECK(Composition{2, 3}.str() == "0^21^3");
    CHECK(Composition{12, 3}.str() == "0^{12}1^3");
    CHECK(Composition::parse("0^21^3") == Composition{2, 3});
    CHECK(Composition::parse("0^31^1") == Composition{3, 1});
    CHECK(Composition::parse("0^2 1^3") == Composition{2, 3});
    CHECK(Composition::parse("0^{12}1^{13}") == Composition{12, 13});
    CHECK_THROWS_AS(Composition::parse(""), Error);
    CHECK_THROWS_AS(Composition::parse("10"), Error);
    for (int z = 0; z < 14; ++z)
        for (int o = 0; o < 14; ++o)
            if (z + o > 0) CHECK(Composition::parse(Composition{z, o}.str()) == Composition{z, o});
}

TEST_CASE("composition of a string") {
    CHECK(composition(bs("001")) == Composition{2, 1});
    CHECK(composition(bs("1")) == Composition{0, 1});
    CHECK(composition(bs("01101")) == Composition{2, 3});
    CHECK_THROWS_AS(composition(BitString()), Error);
}

TEST_CASE("prefix and suffix multisets, worked examples") {
    CHECK(prefix_multiset(bs("01101")).str() == "{0, 01, 01^2, 0^21^2, 0^21^3}");
    CHECK(suffix_multiset(bs("01101")).str() == "{1, 01, 01^2, 01^3, 0^21^3}");
    CHECK(prefix_multiset(bs("1")) == ms("{1}"));
    CHECK(suffix_multiset(bs("0")) == ms("{0}"));
    CHECK(prefix_multiset(bs("001")) == ms("{0, 0^2, 0^21}"));
    CHECK(suffix_multiset(bs("001")) == ms("{1, 01, 0^21}"));
    CHECK(full_multiset(bs("1")) == ms("{1, 1}"));
    CHECK(full_multiset(bs("001")) == ms("{0, 0^2, 0^21, 1, 01, 0^21}"));
    CHECK(full_multiset(bs("01101")).size() == 10);
    CHECK(full_multiset(bs("01101")) ==
          ms("{0, 01, 01^2, 0^21^2, 0^21^3, 1, 01, 01^2, 01^3, 0^21^3}"));
}

TEST_CASE("pool of the two-string example") {
    auto m = pool(bss({"110100", "101010"}));
    auto expected = ms(
        "{1,1, 01, 1^2, 01^2, 01^2, 0^2 1^2, 01^3, 0^21^3, 0^21^3, 0^31^3, 0^31^3, 0^31^3, 0^31^3,"
        " 0^31^2, 0^31^2,0^21^2, 0^31, 0^21, 0^21, 01, 0^2, 0, 0}");
    CHECK(m.size() == 24);
    CHECK(m == expected);
    CHECK(m.str() ==
          "{0, 0, 1, 1, 0^2, 01, 01, 1^2, 0^21, 0^21, 01^2, 01^2, 0^31, 0^21^2, 0^21^2, 01^3, "
          "0^31^2, 0^31^2, 0^21^3, 0^21^3, 0^31^3, 0^31^3, 0^31^3, 0^31^3}");
    CHECK(pool(bss({"110100", "101010", "110010"})).size() == 36);
    CHECK(pool(bss({"0110"})) == full_multiset(bs("0110")));
    CHECK_THROWS_AS(pool(bss({"110", "110"})), Error);
    CHECK_THROWS_AS(pool(bss({"110", "1100"})), Error);
    try {
        pool(bss({"110", "110"}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DuplicateString);
    }
    try {
        pool(bss({"110", "1100"}));
    } catch (const Error& e) {
        CHECK(e.code() == Errc::LengthMismatch);
    }
}

TEST_CASE("is_dyck") {
    CHECK(is_dyck(bs("110100")));
    CHECK(is_dyck(bs("101010")));
    CHECK(is_dyck(bs("110010")));
    CHECK_FALSE(is_dyck(bs("01")));
    CHECK(is_dyck(bs("10")));
    CHECK_FALSE(is_dyck(bs("1110")));
    try {
        is_dyck(bs("101"));
        FAIL("expected OddLength");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OddLength);
    }
}

TEST_CASE("rds") {
    auto s = bs("0111");
    CHECK(s.rds(0) == 0);
    CHECK(s.rds(1) == -1);
    CHECK(s.rds(4) == 2);
    CHECK(s.rds() == 2 * s.weight() - 4);
}

TEST_CASE("property: multisets agree with a naive substring oracle") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 300; ++trial) {
        std::size_t n = 1 + rng() % 20;
        auto s = random_bits(rng, n);
        auto t = s.str();
        CompositionMultiset p, q;
        for (std::size_t i = 1; i <= n; ++i) {
            p.add(naive_comp(t.substr(0, i)));
            q.add(naive_comp(t.substr(n - i)));
        }
        CHECK(prefix_multiset(s) == p);
        CHECK(suffix_multiset(s) == q);
        auto full = full_multiset(s);
        CHECK(full.size() == 2 * n);
        for (int len = 1; len <= static_cast<int>(n); ++len) CHECK(full.count_of_length(len) == 2);
        // complementarity of prefix i and suffix n-i
        auto whole = composition(s);
        for (std::size_t i = 1; i < n; ++i) {
            auto a = naive_comp(t.substr(0, i));
            auto b = naive_comp(t.substr(i));
            CHECK(a.zeros + b.zeros == whole.zeros);
            CHECK(a.ones + b.ones == whole.ones);
        }
    }
}

TEST_CASE("property: pool is commutative and associative") {
    std::mt19937_64 rng(12);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<BitString> v;
        while (v.size() < 4) {
            auto s = random_bits(rng, 8);
            if (std::find(v.begin(), v.end(), s) == v.end()) v.push_back(s);
        }
        auto a = pool(v);
        auto w = v;
        std::shuffle(w.begin(), w.end(), rng);
        CHECK(pool(w) == a);
        CHECK(pool({v[0], v[1]}) + pool({v[2], v[3]}) == a);
    }
}

TEST_CASE("property: suffixes of Dyck strings are light") {
    std::mt19937_64 rng(13);
    int found = 0;
    for (int trial = 0; trial < 20000 && found < 300; ++trial) {
        auto s = random_bits(rng, 12);
        if (!is_dyck(s)) continue;
        ++found;
        auto t = s.str();
        for (std::size_t i = 1; i <= 12; ++i) CHECK(naive_comp(t.substr(12 - i)).ones <= static_cast<int>(i / 2));
    }
    CHECK(found > 50);
}

TEST_CASE("multiset parse round trip and difference") {
    auto m = ms("{0^21^3, 1, 1, 01}");
    CHECK(CompositionMultiset::parse(m.str()) == m);
    CHECK(m.count(Composition{0, 1}) == 2);
    auto d = m - ms("{1}");
    CHECK(d.size() == 3);
    CHECK_THROWS_AS(m - ms("{0}"), Error);
    CHECK(m.contains(ms("{1,1}")));
    CHECK_FALSE(m.contains(ms("{1,1,1}")));
}
