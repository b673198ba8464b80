#include <algorithm>
#include <random>

#include "doctest.h"
#include "mscodec/channel.hpp"
#include "mscodec/combinatorics.hpp"
#include "mscodec/ecc.hpp"
#include "support.hpp"

using namespace mscodec;
using namespace testsupport;

namespace {

const BhCodebook& wide_codebook() {
    static const BhCodebook cb = build_bh_codebook(2, builtin_parity_check("bch_255_239"));
    return cb;
}

struct Tally {
    int exact = 0, flagged = 0, silent = 0;
};

void classify(Tally& t, const CompositionMultiset& p, int hbar, const std::vector<int>& truth, const EccScheme& sc) {
    try {
        auto d = ecc_decode(p, hbar, wide_codebook(), sc);
        if (d.indices == truth)
            ++t.exact;
        else
            ++t.silent;
    } catch (const Error&) {
        ++t.flagged;
    }
}

CompositionMultiset pool_of(const std::vector<int>& idx, const EccScheme& sc) {
    std::vector<BitString> cws;
    for (int i : idx) cws.push_back(ecc_encode(wide_codebook().strings[static_cast<std::size_t>(i)], sc).bits);
    return pool(cws);
}

// every distinct single missing composition
Tally single_sweep(const EccScheme& sc, const std::vector<std::vector<int>>& sets) {
    Tally t;
    for (const auto& idx : sets) {
        auto full = pool_of(idx, sc);
        for (const auto& [c, m] : full.entries()) {
            auto p = full;
            p.remove(c);
            classify(t, p, static_cast<int>(idx.size()), idx, sc);
        }
    }
    return t;
}

Tally random_pairs_sweep(const EccScheme& sc, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    Tally t;
    const int size = static_cast<int>(wide_codebook().size());
    for (int trial = 0; trial < trials; ++trial) {
        int hbar = 1 + static_cast<int>(rng() % 2);
        std::vector<int> idx;
        while (static_cast<int>(idx.size()) < hbar) {
            int i = static_cast<int>(rng() % static_cast<std::uint64_t>(size));
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) idx.push_back(i);
        }
        std::sort(idx.begin(), idx.end());
        auto full = pool_of(idx, sc);
        std::vector<Composition> items;
        for (const auto& [c, m] : full.entries())
            for (int j = 0; j < m; ++j) items.push_back(c);
        std::shuffle(items.begin(), items.end(), rng);
        auto p = full;
        p.remove(items[0]);
        p.remove(items[1]);
        classify(t, p, hbar, idx, sc);
    }
    return t;
}

std::vector<std::vector<int>> some_sets() { return {{3}, {200}, {0, 1}, {17, 99}, {120, 254}}; }

ErasureWord erase_at(const BitString& w, const std::vector<int>& where) {
    ErasureWord out(w.size());
    for (std::size_t i = 0; i < w.size(); ++i) out[i] = w[i];
    for (int p : where) out[static_cast<std::size_t>(p)].reset();
    return out;
}

}  // namespace

TEST_CASE("shipped linear codes have the stated parameters") {
    auto bch = repeated_bch(16, 1);
    CHECK(bch.n == 31);
    CHECK(bch.k == 16);
    CHECK(min_distance(bch) == 7);
    auto ham = hamming_code(8);
    CHECK(ham.n == 12);
    CHECK(min_distance(ham) == 3);
    CHECK(min_distance(extend_parity(hamming_code(4))) == 4);
    CHECK(min_distance(single_parity_code(5)) == 2);
    auto rep = repeat(hamming_code(4), 2);
    CHECK(rep.n == 14);
    CHECK(rep.d == 6);
    CHECK(min_distance(rep) == 6);
    auto sh = repeated_bch(8, 1);
    CHECK(sh.n == 23);
    CHECK(min_distance(sh) >= 7);
    auto big = repeated_bch(16, 2);
    CHECK(big.n == 62);
    CHECK(min_distance(big) == 14);
    CHECK(trivial_code(5).n == 5);
}

TEST_CASE("code_from_parity_check finds an information set") {
    auto c = code_from_parity_check(builtin_parity_check("hamming_7_4").matrix);
    CHECK(c.n == 7);
    CHECK(c.k == 4);
    CHECK(c.d == 3);
    for (unsigned x = 0; x < 16; ++x) {
        auto data = from_int(x, 4);
        auto w = c.encode(data);
        CHECK(c.is_codeword(w));
        CHECK(builtin_parity_check("hamming_7_4").matrix.multiply(w).weight() == 0);
        CHECK(c.data_of(w) == data);
    }
}

TEST_CASE("property: erasure decoding recovers every pattern of at most d-1 erasures") {
    for (const auto& code : {hamming_code(4), extend_parity(hamming_code(4)), single_parity_code(6), repeat(hamming_code(3), 2)}) {
        for (unsigned x = 0; x < (1u << code.k); ++x) {
            auto w = code.encode(from_int(x, static_cast<std::size_t>(code.k)));
            for (int e = 0; e < code.d; ++e)
                for_each_combination(code.n, e, [&](const std::vector<int>& where) {
                    CHECK(code.decode_erasures(erase_at(w, where)) == w);
                    return true;
                });
        }
    }
    // larger codes, random patterns
    std::mt19937_64 rng(41);
    auto big = repeated_bch(16, 2);
    for (int trial = 0; trial < 300; ++trial) {
        auto w = big.encode(random_bits(rng, 16));
        std::vector<int> pos(62);
        for (int i = 0; i < 62; ++i) pos[static_cast<std::size_t>(i)] = i;
        std::shuffle(pos.begin(), pos.end(), rng);
        pos.resize(13);
        CHECK(big.decode_erasures(erase_at(w, pos)) == w);
    }
}

TEST_CASE("erasure decoding flags patterns beyond the distance") {
    auto ham = hamming_code(4);
    // erase the support of a weight-3 codeword
    BitString w3;
    for (unsigned x = 1; x < 16; ++x) {
        auto w = ham.encode(from_int(x, 4));
        if (w.weight() == 3) {
            w3 = w;
            break;
        }
    }
    std::vector<int> support;
    for (std::size_t i = 0; i < w3.size(); ++i)
        if (w3[i]) support.push_back(static_cast<int>(i));
    try {
        ham.decode_erasures(erase_at(BitString::zeros(7), support));
        FAIL("expected TooManyErasures");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::TooManyErasures);
    }
    ErasureWord bad(7, std::uint8_t{0});
    bad[0] = 1;
    try {
        ham.decode_erasures(bad);
        FAIL("expected DecodeFailure");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::DecodeFailure);
    }
}

TEST_CASE("errors-and-erasures decoding by enumeration") {
    auto code = repeated_bch(8, 1);  // d >= 7
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        auto w = code.encode(random_bits(rng, 8));
        int e = static_cast<int>(rng() % 4);
        int f = 6 - 2 * e;
        std::vector<int> pos(23);
        for (int i = 0; i < 23; ++i) pos[static_cast<std::size_t>(i)] = i;
        std::shuffle(pos.begin(), pos.end(), rng);
        auto word = erase_at(w, std::vector<int>(pos.begin(), pos.begin() + f));
        for (int i = 0; i < e; ++i) {
            auto& b = word[static_cast<std::size_t>(pos[static_cast<std::size_t>(f + i)])];
            b = static_cast<std::uint8_t>(*b ^ 1);
        }
        CHECK(code.decode_errors_erasures(word) == w);
    }
}

TEST_CASE("prime code recovers real sums of mixtures") {
    auto pc = prime_code(16, 2, 4);
    CHECK(pc.p == 23);
    CHECK(pc.width == 5);
    CHECK(pc.length() == 36);
    std::mt19937_64 rng(43);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_bits(rng, 16), b = random_bits(rng, 16);
        auto sum = real_sum({pc.encode(a), pc.encode(b)});
        std::vector<std::optional<int>> obs(sum.begin(), sum.end());
        // erase up to r symbols: two data sums and two whole parity symbols
        obs[static_cast<std::size_t>(rng() % 8)].reset();
        obs[static_cast<std::size_t>(8 + rng() % 8)].reset();
        obs[static_cast<std::size_t>(16 + rng() % 5)].reset();
        obs[static_cast<std::size_t>(26 + rng() % 5)].reset();
        auto got = pc.decode_sums(obs, 2);
        CHECK(SumVector(got.begin(), got.end()) == real_sum({a, b}));
    }
    auto sum = real_sum({pc.encode(from_int(5, 16))});
    std::vector<std::optional<int>> obs(sum.begin(), sum.end());
    for (int i = 0; i < 5; ++i) obs[static_cast<std::size_t>(i)].reset();
    CHECK_THROWS_AS(pc.decode_sums(obs, 1), Error);
}

TEST_CASE("integral and derivative") {
    CHECK(integral(bs("110100")) == bs("100111"));
    CHECK(integral(BitString::zeros(9)) == BitString::zeros(9));
    CHECK(derivative(bs("100111")) == bs("110100"));
    for (unsigned x = 0; x < 256; ++x) {
        auto s = from_int(x, 8);
        CHECK(derivative(integral(s)) == s);
    }
}

TEST_CASE("property: integral is linear (exhaustive n <= 8)") {
    for (std::size_t n = 1; n <= 8; ++n)
        for (unsigned x = 0; x < (1u << n); ++x)
            for (unsigned y = 0; y < (1u << n); ++y) {
                auto a = from_int(x, n), b = from_int(y, n);
                if (integral(a ^ b) != (integral(a) ^ integral(b))) FAIL("integral not linear at n=" << n);
            }
    CHECK(true);
}

TEST_CASE("integral redundancy recurrence") {
    CHECK(integral_redundancy(BitString(), 1).empty());
    CHECK(integral_redundancy(bs("1"), 0) == bs("10"));
    CHECK(integral_redundancy(bs("1"), 1) == bs("01"));
    // R_1 = 1+0, R_3 = R'_1 + R'_2 + R_2
    CHECK(integral_redundancy(bs("10"), 0) == bs("1010"));
    CHECK(integral_redundancy(bs("11"), 0) == bs("1001"));
    std::mt19937_64 rng(44);
    for (int trial = 0; trial < 500; ++trial) {
        auto x = random_bits(rng, 12);
        auto rp = random_bits(rng, 1 + trial % 5);
        auto R = integral_redundancy(rp, x[0]);
        auto I = integral(x + R);
        int c = x[0] ^ integral(x)[11];
        for (std::size_t i = 0; i < rp.size(); ++i) {
            CHECK(R[2 * i + 1] == (R[2 * i] ^ 1));
            CHECK(I[12 + 2 * i] == (rp[i] ^ c));
            CHECK(I[12 + 2 * i + 1] == (integral(x)[11] ^ ((i + 1) & 1)));
        }
    }
}

TEST_CASE("scheme construction and capability checks") {
    try {
        one_step_scheme(16, 1, repeated_bch(16, 1));
        FAIL("expected CapabilityTooSmall");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::CapabilityTooSmall);
    }
    CHECK_THROWS_AS(one_step_scheme(15, 1, repeated_bch(16, 2)), Error);
    CHECK_THROWS_AS(integral_scheme(16, 2, trivial_code(20)), Error);
    CHECK_THROWS_AS(two_step_scheme(16, 2, repeated_bch(16, 2), single_parity_code(8)), Error);

    auto one1 = default_scheme(Scheme::OneStep, 16, 1);
    CHECK(one1.code.n == 62);
    CHECK(one1.inner.block == 8);
    CHECK(one1.N == 132);
    auto one2 = default_scheme(Scheme::OneStep, 16, 2);
    CHECK(one2.code.n == 124);
    CHECK(one2.inner.block == 12);
    CHECK(one2.code.d - 1 >= 2 * (12 + 1));
    auto integ = default_scheme(Scheme::Integral, 16, 2);
    CHECK(integ.code.d == 2);
    CHECK(integ.z_pairs == 1);
    CHECK(default_scheme(Scheme::Integral, 16, 1).code.d == 1);
}

TEST_CASE("t=0 schemes reduce to the plain codec") {
    std::mt19937_64 rng(45);
    for (int trial = 0; trial < 50; ++trial) {
        auto s = random_bits(rng, 16);
        CHECK(one_step_encode(s, 0, trivial_code(16)).bits == encode(s).bits);
        CHECK(two_step_encode(s, 0, trivial_code(16), trivial_code(4)).bits == encode(s).bits);
        CHECK(ecc_encode(s, default_scheme(Scheme::Integral, 16, 1)).bits == encode(s).bits);
    }
}

TEST_CASE("two-step codewords: Dyck, complementary z pairs, exact length identity") {
    std::mt19937_64 rng(46);
    for (int t : {1, 2}) {
        auto sc = default_scheme(Scheme::TwoStep, 16, t);
        CHECK(sc.inner.block % 4 == 0);
        CHECK(static_cast<double>(sc.N) == two_step_length_formula(sc));
        for (int trial = 0; trial < 300; ++trial) {
            auto cw = ecc_encode(random_bits(rng, 16), sc);
            CHECK(cw.bits.size() == static_cast<std::size_t>(sc.N));
            CHECK(is_dyck(cw.bits));
            const auto& z = cw.layout.segment("z");
            for (int i = 0; i < z.length; i += 2)
                CHECK(cw.bits[static_cast<std::size_t>(z.offset + i)] != cw.bits[static_cast<std::size_t>(z.offset + i + 1)]);
        }
    }
    auto t1 = default_scheme(Scheme::TwoStep, 16, 1);
    CHECK(t1.N == 132 + 2 * 1 + 2);
    auto t2 = default_scheme(Scheme::TwoStep, 16, 2);
    CHECK(t2.N == 132 + 2 * 4 + 2);
}

TEST_CASE("integral codewords are Dyck and carry s R(s) after the leading run") {
    std::mt19937_64 rng(47);
    auto sc = default_scheme(Scheme::Integral, 16, 2);
    for (int trial = 0; trial < 300; ++trial) {
        auto s = random_bits(rng, 16);
        auto cw = ecc_encode(s, sc);
        CHECK(is_dyck(cw.bits));
        const auto& R = cw.layout.segment("R");
        CHECK(R.length == 2);
        auto bal = block_balance(s);
        CHECK(cw.bits.slice(static_cast<std::size_t>(sc.lead), 20) == bal.r + bal.u);
        CHECK(cw.bits.slice(0, static_cast<std::size_t>(sc.lead)) == BitString::ones(static_cast<std::size_t>(sc.lead)));
    }
}

TEST_CASE("clean pools decode for every scheme") {
    for (auto kind : {Scheme::OneStep, Scheme::TwoStep, Scheme::Integral, Scheme::OneStepNonbinary})
        for (int t : {0, 1, 2}) {
            if (kind == Scheme::OneStepNonbinary && t == 0) continue;
            auto sc = default_scheme(kind, 16, t);
            for (const auto& idx : some_sets()) {
                if (kind == Scheme::OneStepNonbinary && idx.size() > 1) continue;
                auto d = ecc_decode(pool_of(idx, sc), static_cast<int>(idx.size()), wide_codebook(), sc);
                CHECK(d.indices == idx);
            }
            CHECK(ecc_decode(CompositionMultiset{}, 0, wide_codebook(), sc).indices.empty());
        }
}

TEST_CASE("single missing composition: one-step, two-step and integral at t=1") {
    for (auto kind : {Scheme::OneStep, Scheme::TwoStep, Scheme::Integral}) {
        auto t = single_sweep(default_scheme(kind, 16, 1), some_sets());
        CHECK(t.silent == 0);
        CHECK(t.flagged == 0);
        CHECK(t.exact > 0);
    }
}

TEST_CASE("two missing compositions at t=2, randomized") {
    for (auto kind : {Scheme::OneStep, Scheme::TwoStep, Scheme::Integral}) {
        auto t = random_pairs_sweep(default_scheme(kind, 16, 2), 300, 48);
        CHECK(t.silent == 0);
        CHECK(t.flagged == 0);
    }
}

TEST_CASE("complementary missing lengths exceed a zero-capability code") {
    // prefix q and suffix N-q both missing hides n_q
    for (auto kind : {Scheme::OneStep, Scheme::Integral}) {
        auto sc = kind == Scheme::OneStep ? one_step_scheme(16, 0, trivial_code(16)) : default_scheme(Scheme::Integral, 16, 1);
        auto cw = ecc_encode(wide_codebook().strings[5], sc);
        const auto& u = sc.layout.segment("u");
        int flagged = 0, silent = 0;
        for (int q = u.offset + 1; q < u.offset + u.length; ++q) {
            auto p = pool({cw.bits});
            p.remove(composition(cw.bits.slice(0, static_cast<std::size_t>(q))));
            p.remove(composition(cw.bits.slice(static_cast<std::size_t>(q), cw.bits.size() - static_cast<std::size_t>(q))));
            try {
                auto d = ecc_decode(p, 1, wide_codebook(), sc);
                if (d.indices != std::vector<int>{5}) ++silent;
            } catch (const Error& e) {
                CHECK((e.code() == Errc::TooManyErasures || e.code() == Errc::DecodeFailure || e.code() == Errc::AmbiguousSolution));
                ++flagged;
            }
        }
        CHECK(silent == 0);
        CHECK(flagged > 0);
    }
}

TEST_CASE("two-step recovers r when only the z segment is hit") {
    auto sc = default_scheme(Scheme::TwoStep, 16, 2);
    const auto& z = sc.layout.segment("z");
    for (const auto& idx : some_sets()) {
        auto full = pool_of(idx, sc);
        std::vector<BitString> cws;
        for (int i : idx) cws.push_back(ecc_encode(wide_codebook().strings[static_cast<std::size_t>(i)], sc).bits);
        for (int q = z.offset + 1; q < z.offset + z.length; ++q) {
            auto p = full;
            p.remove(composition(cws[0].slice(0, static_cast<std::size_t>(q))));
            p.remove(composition(cws.back().slice(static_cast<std::size_t>(q), cws.back().size() - static_cast<std::size_t>(q))));
            CHECK(ecc_decode(p, static_cast<int>(idx.size()), wide_codebook(), sc).indices == idx);
        }
    }
}

TEST_CASE("nonbinary one-step variant") {
    auto sc = default_scheme(Scheme::OneStepNonbinary, 16, 1, 2);
    CHECK(sc.prime->r >= sc.t * (sc.inner.block + 1));
    CHECK(sc.prime->p > 2);
    // single strings: sums are exact wherever the increments are known
    auto one = single_sweep(sc, {{3}, {77}, {254}});
    CHECK(one.silent == 0);
    CHECK(one.flagged == 0);
    // mixtures lose real sums in blocks flipped for only one string; failures must be loud
    auto two = single_sweep(sc, {{0, 1}, {17, 99}});
    CHECK(two.silent == 0);
    Tally clean;
    for (const auto& idx : std::vector<std::vector<int>>{{0, 1}, {17, 99}, {120, 254}, {5, 6}, {40, 41}})
        classify(clean, pool_of(idx, sc), 2, idx, sc);
    CHECK(clean.silent == 0);
}

TEST_CASE("two-step substitution mode corrects one same-length substitution") {
    auto sc = default_scheme(Scheme::TwoStep, 16, 1, 2, true);
    CHECK(sc.flag->d >= 5);
    CHECK(sc.code.d >= 5);
    std::mt19937_64 rng(49);
    Tally t;
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<int> idx{static_cast<int>(rng() % 255)};
        if (trial % 2) {
            int j = static_cast<int>(rng() % 255);
            if (j == idx[0]) continue;
            idx.push_back(j);
            std::sort(idx.begin(), idx.end());
        }
        auto p = pool_of(idx, sc);
        std::vector<Composition> items;
        for (const auto& [c, m] : p.entries()) items.push_back(c);
        auto victim = items[static_cast<std::size_t>(rng() % items.size())];
        Composition repl = victim;
        if (victim.ones > 0 && (victim.zeros == 0 || rng() % 2)) {
            --repl.ones;
            ++repl.zeros;
        } else {
            ++repl.ones;
            --repl.zeros;
        }
        p.remove(victim);
        p.add(repl);
        classify(t, p, static_cast<int>(idx.size()), idx, sc);
    }
    CHECK(t.silent == 0);
    CHECK(t.exact > 250);
}

TEST_CASE("ecc_decode argument errors") {
    auto sc = default_scheme(Scheme::OneStep, 16, 1);
    auto p = pool_of({4}, sc);
    CHECK_THROWS_AS(ecc_decode(p, 3, wide_codebook(), sc), Error);
    try {
        ecc_decode(p + p + p, 1, wide_codebook(), sc);
        FAIL("expected InconsistentPoolSize");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::InconsistentPoolSize);
    }
    auto narrow = build_bh_codebook(2, builtin_parity_check("bch_15_7"));
    CHECK_THROWS_AS(ecc_decode(p, 1, narrow, sc), Error);
    CHECK(parse_scheme("two-step") == Scheme::TwoStep);
    CHECK_THROWS_AS(parse_scheme("three-step"), Error);
}
