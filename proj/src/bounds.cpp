#include "mscodec/bounds.hpp"

#include <cfenv>
#include <cmath>
#include <numbers>
#include <numeric>

#include "mscodec/error.hpp"

namespace mscodec {

std::string entropy_mode_name(EntropyMode m) { return m == EntropyMode::Exact ? "exact" : "gaussian"; }

EntropyMode parse_entropy_mode(std::string_view s) {
    if (s == "exact") return EntropyMode::Exact;
    if (s == "gaussian") return EntropyMode::Gaussian;
    throw Error(Errc::ParseError, "entropy mode must be exact or gaussian");
}

double binomial_entropy(int h, EntropyMode mode) {
    if (h < 1) throw Error(Errc::InvalidArgument, "h must be positive");
    if (mode == EntropyMode::Gaussian) return 0.5 * std::log2(2 * std::numbers::pi * std::numbers::e * h / 4.0);
    double H = 0;
    for (int k = 0; k <= h; ++k) {
        double lp = std::lgamma(h + 1.0) - std::lgamma(k + 1.0) - std::lgamma(h - k + 1.0) - h * std::log(2.0);
        H -= std::exp(lp) * lp / std::log(2.0);
    }
    return H;
}

double naive_bh_upper(int h, EntropyMode mode) { return binomial_entropy(h, mode) / h; }

double bh_upper_refined(int h, EntropyMode mode) {
    if (h < 2 || h % 2) throw Error(Errc::OddH, "bound needs an even h >= 2");
    const double full = binomial_entropy(h, mode), half = binomial_entropy(h / 2, mode);
    return (2.0 / h) * half / (1.0 + half / full);
}

std::string Rational::str() const { return std::to_string(num) + "/" + std::to_string(den); }

Rational mc_upper(int h) {
    if (h < 2) throw Error(Errc::InvalidArgument, "h must be at least 2");
    Rational r = h % 2 ? Rational{h + 1, 2LL * h} : Rational{h + 2, 2LL * h + 2};
    long long g = std::gcd(r.num, r.den);
    return {r.num / g, r.den / g};
}

double mc_lower_construction(int h) {
    if (h < 1) throw Error(Errc::InvalidArgument, "h must be positive");
    return 1.0 / h;
}

std::vector<GapRow> gap_table(const std::vector<int>& hs) {
    std::vector<GapRow> out;
    for (int h : hs) {
        GapRow row;
        row.h = h;
        row.upper = mc_upper(h);
        if (h == 2) {
            row.achievable = kB2RateReference;
            row.achievable_source = "b2_reference";
        } else {
            row.achievable = naive_bh_upper(h, EntropyMode::Gaussian);
            row.achievable_source = "naive_gaussian";
        }
        row.gap = row.upper.value() - row.achievable;
        out.push_back(row);
    }
    return out;
}

std::vector<RateBound> bounds_table(int hmin, int hmax, EntropyMode mode) {
    if (hmin < 1 || hmax < hmin) throw Error(Errc::InvalidArgument, "bad h range");
    std::vector<RateBound> out;
    for (int h = hmin; h <= hmax; ++h) {
        out.push_back({h, "naive_bh_upper", naive_bh_upper(h, mode), mode});
        if (h % 2 == 0) out.push_back({h, "bh_upper_refined", bh_upper_refined(h, mode), mode});
        if (h >= 2) out.push_back({h, "mc_upper", mc_upper(h).value(), mode});
        out.push_back({h, "mc_lower_construction", mc_lower_construction(h), mode});
    }
    return out;
}

double round4(double x) {
    const int old = std::fegetround();
    std::fesetround(FE_TONEAREST);
    double r = std::nearbyint(x * 1e4) / 1e4;
    std::fesetround(old);
    return r;
}

}  // namespace mscodec
