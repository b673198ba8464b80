#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mscodec/bhcode.hpp"
#include "mscodec/core.hpp"

namespace mscodec {

struct HmcVerification {
    bool valid = true;
    std::vector<BitString> first, second;  // two subsets with equal pools
};

// compares pool(S1) and pool(S2) over all pairs of distinct subsets of sizes 1..h;
// SearchSpaceTooLarge when the number of subsets exceeds the budget
HmcVerification verify_hmc(const std::vector<BitString>& codebook, int h, std::uint64_t budget = kDefaultBudget);
// same with prefix multisets only
HmcVerification verify_prefix_code(const std::vector<BitString>& codebook, int h, std::uint64_t budget = kDefaultBudget);

enum class SearchMode { Greedy, Exact };
SearchMode parse_search_mode(std::string_view s);  // "max-greedy" or "exact-max"

// Greedy: seeds first, then each candidate in order is kept when the code stays B_h.
// Exact: a maximum B_h code containing the seeds, by branch and bound (n <= 8; node budget).
// Candidates default to every string of length n in lexicographic order.
BhCodebook exhaustive_bh_search(int n, int h, SearchMode mode, const std::vector<BitString>& seeds = {},
                                std::uint64_t budget = kDefaultBudget,
                                const std::optional<std::vector<BitString>>& candidates = std::nullopt);

// Every subset S of the codebook with |S| <= h whose pool contains `pool` with exactly
// `removals` compositions missing. Indices ascending, subsets in lexicographic order.
std::vector<std::vector<int>> brute_decode(const CompositionMultiset& pool, const std::vector<BitString>& codebook,
                                           int h, int removals = 0, std::uint64_t budget = kDefaultBudget);

struct CycleReport {
    bool free = true;
    int weight = -1;               // prefix weight of the stratum holding the cycle
    std::vector<BitString> cycle;  // codewords a1b1, a2b1, a2b2, ... closing back at a1
};

// Bipartite graph per prefix weight w: left = distinct prefixes of length `split` with weight w,
// right = suffixes, one edge per codeword. Looks for a cycle with 2*half_length edges.
CycleReport check_prefix_code_cycles(const std::vector<BitString>& codebook, int split, int half_length = 2);

}  // namespace mscodec
