#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace mscodec {

enum class EntropyMode { Exact, Gaussian };
std::string entropy_mode_name(EntropyMode m);
EntropyMode parse_entropy_mode(std::string_view s);

// entropy in bits of Binomial(h, 1/2); gaussian mode is 1/2 log2(2 pi e h / 4)
double binomial_entropy(int h, EntropyMode mode);
// H(h) / h
double naive_bh_upper(int h, EntropyMode mode);
// (2/h) H(h/2) / (1 + H(h/2)/H(h)), h even (OddH otherwise)
double bh_upper_refined(int h, EntropyMode mode);

// best known rate of binary B_2 codes, used as the achievable side at h = 2
inline constexpr double kB2RateReference = 0.5753;

struct Rational {
    long long num = 0, den = 1;
    double value() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
    bool operator==(const Rational&) const = default;
};

// odd h: (h+1)/(2h); even h: 1 - 1/(2(1+1/h)) = (h+2)/(2h+2); reduced
Rational mc_upper(int h);
inline double mc_upper_limit() { return 0.5; }
double mc_lower_construction(int h);  // 1/h

struct GapRow {
    int h = 0;
    Rational upper;
    double achievable = 0;
    std::string achievable_source;  // "b2_reference" or "naive_gaussian"
    double gap = 0;
};
std::vector<GapRow> gap_table(const std::vector<int>& hs);

struct RateBound {
    int h = 0;
    std::string kind;  // naive_bh_upper, bh_upper_refined, mc_upper, mc_lower_construction
    double value = 0;
    EntropyMode mode = EntropyMode::Gaussian;
};
// every bound that applies to each h in [hmin, hmax]
std::vector<RateBound> bounds_table(int hmin, int hmax, EntropyMode mode);

// half-to-even at 4 decimals
double round4(double x);

}  // namespace mscodec
