#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace mscodec {

// C(n, k), saturating at UINT64_MAX; zero outside 0 <= k <= n.
std::uint64_t binomial(long long n, long long k);

// Calls f(indices) for every k-subset of {0..n-1} in lexicographic order;
// stops early when f returns false. Returns false if stopped early.
template <class F>
bool for_each_combination(int n, int k, F&& f) {
    if (k < 0 || k > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        if (!f(static_cast<const std::vector<int>&>(idx))) return false;
        int i = k - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) return true;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

// digits for 0..9, "(v)" otherwise
std::string sum_string(const std::vector<int>& v);
std::vector<int> parse_sum(const std::string& s);

}  // namespace mscodec
