#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mscodec/bhcode.hpp"
#include "mscodec/core.hpp"

namespace mscodec {

enum class Side { Prefix, Suffix };
std::string side_name(Side s);
Side parse_side(std::string_view s);

struct Removal {
    Side side = Side::Prefix;
    int length = 0;
    int count = 1;
    std::optional<int> ones;  // exact composition; default picks heaviest (prefix) or lightest (suffix)
};

struct Substitution {
    Side side = Side::Prefix;
    int length = 0;
    int ones_from = 0;
    int ones_to = 0;
};

struct ErasurePattern {
    std::vector<Removal> removals;
    std::vector<Substitution> substitutions;

    int total() const;
};

CompositionMultiset erase(const CompositionMultiset& pool, const ErasurePattern& pattern);
CompositionMultiset substitute_mass_reducing(const CompositionMultiset& pool, const Substitution& sub);
// erasures then substitutions
CompositionMultiset apply_pattern(const CompositionMultiset& pool, const ErasurePattern& pattern);

// nullopt marks an erased symbol
using PartialSumString = std::vector<std::optional<int>>;
std::string psum_str(const PartialSumString& p);
PartialSumString parse_psum(std::string_view text);  // "ε", "e" or "*" for erasures
PartialSumString to_partial(const SumVector& v);

// (prefix side, suffix side reversed into prefix orientation)
std::pair<PartialSumString, PartialSumString> partial_sum_strings(const CompositionMultiset& pool, int N, int hbar);
std::pair<PartialSumString, PartialSumString> partial_sum_strings(const CompositionMultiset& prefixes,
                                                                  const CompositionMultiset& suffixes, int N, int hbar);

// n_i (ones in all prefixes of length i), i = 0..N, read from either side through
// the total weight W. Known only when every feasible split of the tied items agrees.
std::vector<std::optional<int>> prefix_totals(const CompositionMultiset& pool, int N, int hbar, int W);
// t_i = n_i - n_(i-1), erased where either total is unknown
PartialSumString increments(const std::vector<std::optional<int>>& totals);

struct MergeResult {
    bool ambiguous = false;
    PartialSumString merged;
    std::optional<SumVector> sum;
    std::vector<SumVector> candidates;  // fillings consistent with W when ambiguous
};
MergeResult merge_partials(const PartialSumString& p, const PartialSumString& s, std::optional<int> W,
                           std::optional<int> hbar = std::nullopt, std::uint64_t budget = kDefaultBudget);

struct Burst {
    int start = 0;  // 1-based
    int length = 0;
    bool operator==(const Burst&) const = default;
};

struct BurstReport {
    std::vector<Burst> prefix, suffix;
    std::vector<int> overlaps;

    bool empty() const { return prefix.empty() && suffix.empty(); }
    // no overlap, or exactly one overlap of length one
    bool recoverable() const;
};
BurstReport burst_report(const PartialSumString& p, const PartialSumString& s);

enum class Outcome { Exact, Ambiguous, Conflict };
std::string outcome_name(Outcome o);

struct ReconstructResult {
    Outcome outcome = Outcome::Conflict;
    std::optional<SumVector> sum;
    std::vector<BitString> strings;                 // decoded set when a codebook is supplied
    std::vector<SumVector> candidate_sums;          // when ambiguous
    std::vector<std::vector<BitString>> witnesses;  // consistent codebook subsets when ambiguous
    PartialSumString prefix, suffix;
    BurstReport bursts;
};

// W defaults to hbar * N / 2 (Dyck codewords). codebook holds length-N strings.
ReconstructResult reconstruct_redundancy_free(const CompositionMultiset& pool, int N, int hbar,
                                              std::optional<int> W = std::nullopt,
                                              const std::vector<BitString>& codebook = {},
                                              std::uint64_t budget = kDefaultBudget);
// prefix and suffix pools already told apart; W defaults to the full-length weight when present
ReconstructResult reconstruct_labeled(const CompositionMultiset& prefixes, const CompositionMultiset& suffixes,
                                      int N, int hbar, std::optional<int> W = std::nullopt,
                                      const std::vector<BitString>& codebook = {},
                                      std::uint64_t budget = kDefaultBudget);

struct IncrementFlag {
    Side side = Side::Prefix;
    int position = 0;  // 1-based, prefix orientation
    int value = 0;
    bool operator==(const IncrementFlag&) const = default;
};

struct CountAnomaly {
    int length = 0;
    int prefix_count = 0;
    int suffix_count = 0;
};

struct CandidateCorrection {
    Composition from, to;
    SumVector sum;
    std::vector<BitString> strings;  // when a codebook is supplied
};

struct DetectionReport {
    PartialSumString prefix_increments, suffix_increments;  // naive, counts ignored
    std::vector<IncrementFlag> flags;
    std::vector<CountAnomaly> count_anomalies;
    std::vector<int> incompatible_lengths;  // prefix lengths i with n_i + m_(N-i) != W
    std::optional<SumVector> prefix_sum, suffix_sum;
    std::vector<CandidateCorrection> candidates;

    bool clean() const { return flags.empty() && count_anomalies.empty() && incompatible_lengths.empty(); }
};
DetectionReport detect_substitution(const CompositionMultiset& pool, int N, int hbar,
                                    std::optional<int> W = std::nullopt,
                                    const std::vector<BitString>& codebook = {});

long long count_correctable_single(int n, int t);
long long count_correctable_multi(int n, int t, int h);

}  // namespace mscodec
