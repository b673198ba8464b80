#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mscodec/core.hpp"
#include "mscodec/gf2.hpp"

namespace mscodec {

inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

struct ParityCheckSpec {
    Gf2Matrix matrix;  // m_rows x L
    int d = 0;         // designed minimum distance
    std::string name;
};

// "d=<int>" header, then one row of 0/1 per line; '#' starts a comment line
ParityCheckSpec parse_parity_check(const std::string& text);
ParityCheckSpec load_parity_check(const std::string& path);
std::string format_parity_check(const ParityCheckSpec& spec);
// columns x^i mod g(x), i = 0..n-1 (g given with bit j = coefficient of x^j)
ParityCheckSpec cyclic_parity_check(std::uint64_t g, int n, int d, std::string name = {});
// "hamming_7_4" (d=3), "bch_15_7" (d=5), "bch_15_5" (d=7), "bch_31_16" (d=7),
// "bch_255_239" (d=5, 16 rows)
ParityCheckSpec builtin_parity_check(const std::string& name);
std::vector<std::string> builtin_parity_check_names();

struct BhCodebook {
    int n = 0;
    int h = 0;
    std::vector<BitString> strings;
    std::optional<ParityCheckSpec> spec;

    std::size_t size() const { return strings.size(); }
    int index_of(const BitString& s) const;  // -1 when absent
};

BhCodebook build_bh_codebook(int h, const ParityCheckSpec& spec);
BhCodebook explicit_codebook(const std::vector<BitString>& strings, int h);

using SumVector = std::vector<int>;
SumVector real_sum(const std::vector<BitString>& strings, std::size_t n);
SumVector real_sum(const std::vector<BitString>& strings);

struct VerificationResult {
    bool valid = true;
    std::vector<BitString> first, second;  // collision witness
    SumVector sum;
};

// All pairs of distinct subsets with sizes 1..h. Budget bounds the number of subsets.
VerificationResult verify_bh(const BhCodebook& cb, int h, std::uint64_t budget = kDefaultBudget);

enum class InvertStrategy { Exhaustive, Syndrome };

std::vector<BitString> invert_sum(const BhCodebook& cb, const SumVector& target, int hbar,
                                  InvertStrategy strategy = InvertStrategy::Exhaustive,
                                  std::uint64_t budget = kDefaultBudget);

// Subset of size hbar whose mod-2 sum equals target; indices ascending.
// Requires a parity-check-backed codebook (Unsupported otherwise).
std::vector<int> invert_xor(const BhCodebook& cb, const BitString& target, int hbar,
                            std::uint64_t budget = kDefaultBudget);

double codebook_rate(std::size_t size, std::size_t length);
inline double codebook_rate(const BhCodebook& cb) { return codebook_rate(cb.size(), static_cast<std::size_t>(cb.n)); }

}  // namespace mscodec
