#include <cmath>

#include "doctest.h"
#include "mscodec/bounds.hpp"
#include "mscodec/combinatorics.hpp"
#include "mscodec/error.hpp"

using namespace mscodec;

namespace {

// entropy from integer binomial coefficients, independent of the lgamma route
double entropy_oracle(int h) {
    double H = 0, total = std::ldexp(1.0, h);
    for (int k = 0; k <= h; ++k) {
        double p = static_cast<double>(binomial(h, k)) / total;
        H -= p * std::log2(p);
    }
    return H;
}

}  // namespace

TEST_CASE("binomial entropy in both modes") {
    CHECK(binomial_entropy(1, EntropyMode::Exact) == doctest::Approx(1.0));
    CHECK(binomial_entropy(2, EntropyMode::Exact) == doctest::Approx(1.5));
    CHECK(round4(binomial_entropy(4, EntropyMode::Exact)) == doctest::Approx(2.0306));
    CHECK(round4(binomial_entropy(4, EntropyMode::Gaussian)) == doctest::Approx(2.0471));
    for (int h = 1; h <= 40; ++h) CHECK(binomial_entropy(h, EntropyMode::Exact) == doctest::Approx(entropy_oracle(h)).epsilon(1e-12));
    CHECK_THROWS_AS(binomial_entropy(0, EntropyMode::Exact), Error);
}

TEST_CASE("naive and refined B_h upper bounds") {
    CHECK(round4(naive_bh_upper(4, EntropyMode::Gaussian)) == doctest::Approx(0.5118));
    CHECK(round4(naive_bh_upper(6, EntropyMode::Gaussian)) == doctest::Approx(0.3899));
    CHECK(round4(naive_bh_upper(8, EntropyMode::Gaussian)) == doctest::Approx(0.3184));
    CHECK(round4(naive_bh_upper(4, EntropyMode::Exact)) == doctest::Approx(0.5077));
    CHECK(naive_bh_upper(1, EntropyMode::Exact) == doctest::Approx(1.0));
    CHECK(round4(bh_upper_refined(4, EntropyMode::Gaussian)) == doctest::Approx(0.4406));
    CHECK(round4(bh_upper_refined(6, EntropyMode::Gaussian)) == doctest::Approx(0.3433));
    CHECK(round4(bh_upper_refined(8, EntropyMode::Gaussian)) == doctest::Approx(0.2837));
    CHECK(bh_upper_refined(4, EntropyMode::Exact) == doctest::Approx(0.4313).epsilon(0.0005 / 0.4313));
    CHECK(bh_upper_refined(4, EntropyMode::Exact) == doctest::Approx(0.431361).epsilon(1e-5));
    try {
        bh_upper_refined(5, EntropyMode::Gaussian);
        FAIL("expected OddH");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::OddH);
    }
}

TEST_CASE("property: refined bound is tighter and converges to the naive one") {
    for (auto mode : {EntropyMode::Exact, EntropyMode::Gaussian}) {
        for (int h : {4, 6, 8}) CHECK(bh_upper_refined(h, mode) < naive_bh_upper(h, mode));
        double prev = 0;
        for (int h = 4; h <= 64; h += 2) {
            double ratio = bh_upper_refined(h, mode) / naive_bh_upper(h, mode);
            CHECK(ratio > prev);
            CHECK(ratio < 1.0);
            prev = ratio;
        }
        CHECK(prev > 0.9);
    }
}

TEST_CASE("multiset code upper bound as a rational") {
    CHECK(mc_upper(2) == Rational{2, 3});
    CHECK(mc_upper(3) == Rational{2, 3});
    CHECK(mc_upper(4) == Rational{3, 5});
    CHECK(mc_upper(5) == Rational{3, 5});
    CHECK(mc_upper(4).str() == "3/5");
    CHECK(mc_upper_limit() == 0.5);
    for (int h = 2; h <= 200; ++h) {
        CHECK(mc_lower_construction(h) < mc_upper(h).value());
        CHECK(mc_upper(h).value() > 0.5);
        if (h % 2 == 0) CHECK(mc_upper(h).value() == doctest::Approx(1 - 0.5 / (1 + 1.0 / h)));
    }
    CHECK_THROWS_AS(mc_upper(1), Error);
}

TEST_CASE("gap table") {
    auto rows = gap_table({2, 4, 6, 8});
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].achievable_source == "b2_reference");
    CHECK(rows[0].gap >= 0.09);
    CHECK(round4(rows[0].gap) == doctest::Approx(0.0914));
    CHECK(round4(rows[1].gap) == doctest::Approx(0.0882));
    CHECK(round4(rows[2].gap) == doctest::Approx(0.1815));
    CHECK(round4(rows[3].gap) == doctest::Approx(0.2372));
    CHECK(mc_lower_construction(2) == 0.5);
    CHECK(mc_lower_construction(3) == doctest::Approx(1.0 / 3));
}

TEST_CASE("bounds table and rounding") {
    // the gaussian approximation overshoots a fair bit at h = 1
    CHECK(naive_bh_upper(1, EntropyMode::Gaussian) > 1.0);
    auto t = bounds_table(2, 4, EntropyMode::Gaussian);
    int refined = 0, mc = 0;
    for (const auto& b : t) {
        CHECK(b.value > 0);
        CHECK(b.value <= 1.0 + 1e-12);
        refined += b.kind == "bh_upper_refined";
        mc += b.kind == "mc_upper";
    }
    CHECK(refined == 2);
    CHECK(mc == 3);
    for (const auto& b : bounds_table(1, 12, EntropyMode::Exact)) {
        CHECK(b.value > 0);
        CHECK(b.value <= 1.0 + 1e-12);
    }
    CHECK(round4(0.12345) == doctest::Approx(0.1234).epsilon(1e-9));
    CHECK(round4(0.12355) == doctest::Approx(0.1236).epsilon(1e-9));
    CHECK(parse_entropy_mode("exact") == EntropyMode::Exact);
    CHECK_THROWS_AS(parse_entropy_mode("fast"), Error);
}
