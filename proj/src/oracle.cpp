#include "mscodec/oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <unordered_map>

#include "mscodec/combinatorics.hpp"

namespace mscodec {

namespace {

std::uint64_t subset_count(std::size_t m, int h) {
    std::uint64_t total = 0;
    for (int k = 1; k <= h; ++k) {
        std::uint64_t c = binomial(static_cast<long long>(m), k);
        total = c > UINT64_MAX - total ? UINT64_MAX : total + c;
    }
    return total;
}

std::vector<BitString> pick(const std::vector<BitString>& cb, const std::vector<int>& idx) {
    std::vector<BitString> out;
    for (int i : idx) out.push_back(cb[static_cast<std::size_t>(i)]);
    return out;
}

HmcVerification verify_by(const std::vector<BitString>& cb, int h, std::uint64_t budget,
                          const std::function<CompositionMultiset(const std::vector<BitString>&)>& key) {
    if (h < 1) throw Error(Errc::InvalidArgument, "h must be positive");
    if (subset_count(cb.size(), h) > budget) throw Error(Errc::SearchSpaceTooLarge, "too many subsets to compare");
    std::unordered_map<std::string, std::vector<int>> seen;
    HmcVerification out;
    for (int k = 1; k <= h && out.valid; ++k)
        for_each_combination(static_cast<int>(cb.size()), k, [&](const std::vector<int>& idx) {
            auto sub = pick(cb, idx);
            auto [it, fresh] = seen.emplace(key(sub).str(), idx);
            if (!fresh) {
                out.valid = false;
                out.first = pick(cb, it->second);
                out.second = sub;
                return false;
            }
            return true;
        });
    return out;
}

}  // namespace

HmcVerification verify_hmc(const std::vector<BitString>& codebook, int h, std::uint64_t budget) {
    return verify_by(codebook, h, budget, [](const std::vector<BitString>& s) { return pool(s); });
}

HmcVerification verify_prefix_code(const std::vector<BitString>& codebook, int h, std::uint64_t budget) {
    return verify_by(codebook, h, budget, [](const std::vector<BitString>& s) {
        CompositionMultiset m;
        for (const auto& x : s) m += prefix_multiset(x);
        return m;
    });
}

SearchMode parse_search_mode(std::string_view s) {
    if (s == "max-greedy" || s == "greedy") return SearchMode::Greedy;
    if (s == "exact-max" || s == "exact") return SearchMode::Exact;
    throw Error(Errc::ParseError, "search mode must be max-greedy or exact-max");
}

namespace {

// subset sums of a growing code, packed 4 bits per coordinate
class SumIndex {
public:
    SumIndex(int n, int h) : n_(n), h_(h), by_size_(static_cast<std::size_t>(h) + 1) { by_size_[0].push_back(0); }

    static std::uint64_t pack(const BitString& s) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < s.size(); ++i) v |= static_cast<std::uint64_t>(s[i]) << (4 * i);
        return v;
    }

    // new sums created by adding s, or nullopt on a collision
    std::optional<std::vector<std::vector<std::uint64_t>>> try_add(std::uint64_t s) const {
        std::vector<std::vector<std::uint64_t>> fresh(static_cast<std::size_t>(h_) + 1);
        std::set<std::uint64_t> local;
        for (int k = 1; k <= h_; ++k)
            for (auto base : by_size_[static_cast<std::size_t>(k - 1)]) {
                auto v = base + s;
                if (all_.count(v) || !local.insert(v).second) return std::nullopt;
                fresh[static_cast<std::size_t>(k)].push_back(v);
            }
        return fresh;
    }

    void add(const std::vector<std::vector<std::uint64_t>>& fresh) {
        for (int k = 1; k <= h_; ++k)
            for (auto v : fresh[static_cast<std::size_t>(k)]) {
                by_size_[static_cast<std::size_t>(k)].push_back(v);
                all_.insert(v);
            }
    }

    void undo(const std::vector<std::vector<std::uint64_t>>& fresh) {
        for (int k = 1; k <= h_; ++k) {
            auto& v = by_size_[static_cast<std::size_t>(k)];
            v.resize(v.size() - fresh[static_cast<std::size_t>(k)].size());
            for (auto x : fresh[static_cast<std::size_t>(k)]) all_.erase(x);
        }
    }

private:
    int n_, h_;
    std::vector<std::vector<std::uint64_t>> by_size_;
    std::set<std::uint64_t> all_;
};

BitString nth_string(unsigned x, int n) {
    std::vector<std::uint8_t> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((x >> (n - 1 - i)) & 1);
    return BitString(std::move(v));
}

}  // namespace

BhCodebook exhaustive_bh_search(int n, int h, SearchMode mode, const std::vector<BitString>& seeds, std::uint64_t budget,
                                const std::optional<std::vector<BitString>>& candidates) {
    if (n < 1 || h < 1) throw Error(Errc::InvalidArgument, "n and h must be positive");
    if (h > 15 || n > 16) throw Error(Errc::SearchSpaceTooLarge, "search limited to n <= 16, h <= 15");
    if (mode == SearchMode::Exact && n > 8) throw Error(Errc::SearchSpaceTooLarge, "exact search limited to n <= 8");
    SumIndex index(n, h);
    std::vector<BitString> code;
    std::set<BitString> used;
    for (const auto& s : seeds) {
        if (static_cast<int>(s.size()) != n) throw Error(Errc::LengthMismatch, "seed length");
        auto fresh = index.try_add(SumIndex::pack(s));
        if (!fresh || !used.insert(s).second) throw Error(Errc::InvalidArgument, "seeds are not a B_h code");
        index.add(*fresh);
        code.push_back(s);
    }
    std::vector<BitString> cands;
    auto offer = [&](const BitString& s) {
        if (static_cast<int>(s.size()) != n) throw Error(Errc::LengthMismatch, "candidate length");
        if (used.insert(s).second) cands.push_back(s);
    };
    if (candidates)
        for (const auto& s : *candidates) offer(s);
    else
        for (unsigned x = 0; x < (1u << n); ++x) offer(nth_string(x, n));

    if (mode == SearchMode::Greedy) {
        for (const auto& s : cands) {
            if (auto fresh = index.try_add(SumIndex::pack(s))) {
                index.add(*fresh);
                code.push_back(s);
            }
        }
        return explicit_codebook(code, h);
    }

    std::vector<BitString> best = code;
    std::uint64_t nodes = 0;
    std::function<void(std::size_t)> dfs = [&](std::size_t from) {
        if (++nodes > budget) throw Error(Errc::SearchSpaceTooLarge, "exact search exceeded the node budget");
        if (code.size() > best.size()) best = code;
        for (std::size_t i = from; i < cands.size(); ++i) {
            if (code.size() + (cands.size() - i) <= best.size()) return;
            auto fresh = index.try_add(SumIndex::pack(cands[i]));
            if (!fresh) continue;
            index.add(*fresh);
            code.push_back(cands[i]);
            dfs(i + 1);
            code.pop_back();
            index.undo(*fresh);
        }
    };
    dfs(0);
    return explicit_codebook(best, h);
}

std::vector<std::vector<int>> brute_decode(const CompositionMultiset& target, const std::vector<BitString>& codebook,
                                           int h, int removals, std::uint64_t budget) {
    if (h < 0 || removals < 0) throw Error(Errc::InvalidArgument, "h and removals must be non-negative");
    std::vector<std::vector<int>> out;
    if (target.empty() && removals == 0) return {{}};
    if (codebook.empty()) return out;
    const std::size_t len = codebook.front().size();
    const std::size_t per = 2 * len;
    const std::size_t total = target.size() + static_cast<std::size_t>(removals);
    if (total % per != 0) return out;
    const int k = static_cast<int>(total / per);
    if (k > h) return out;
    if (binomial(static_cast<long long>(codebook.size()), k) > budget)
        throw Error(Errc::SearchSpaceTooLarge, "too many subsets to try");
    for_each_combination(static_cast<int>(codebook.size()), k, [&](const std::vector<int>& idx) {
        if (pool(pick(codebook, idx)).contains(target)) out.push_back(idx);
        return true;
    });
    return out;
}

CycleReport check_prefix_code_cycles(const std::vector<BitString>& codebook, int split, int half_length) {
    if (half_length < 2) throw Error(Errc::InvalidArgument, "cycles need at least four edges");
    CycleReport rep;
    std::map<int, std::vector<BitString>> strata;
    for (const auto& s : codebook) {
        if (split < 1 || split >= static_cast<int>(s.size())) throw Error(Errc::InvalidArgument, "split out of range");
        strata[s.slice(0, static_cast<std::size_t>(split)).weight()].push_back(s);
    }
    for (const auto& [w, words] : strata) {
        // vertices: prefixes 0..P-1, suffixes P..
        std::map<BitString, int> pid, sid;
        for (const auto& s : words) {
            pid.emplace(s.slice(0, static_cast<std::size_t>(split)), 0);
            sid.emplace(s.slice(static_cast<std::size_t>(split), s.size() - static_cast<std::size_t>(split)), 0);
        }
        int next = 0;
        std::vector<BitString> pre_of, suf_of;
        for (auto& [a, id] : pid) {
            id = next++;
            pre_of.push_back(a);
        }
        const int P = next;
        for (auto& [b, id] : sid) {
            id = next++;
            suf_of.push_back(b);
        }
        std::vector<std::set<int>> adj(static_cast<std::size_t>(next));
        for (const auto& s : words) {
            int a = pid[s.slice(0, static_cast<std::size_t>(split))];
            int b = sid[s.slice(static_cast<std::size_t>(split), s.size() - static_cast<std::size_t>(split))];
            adj[static_cast<std::size_t>(a)].insert(b);
            adj[static_cast<std::size_t>(b)].insert(a);
        }
        const int len = 2 * half_length;
        std::vector<int> path;
        std::vector<std::uint8_t> on(static_cast<std::size_t>(next), 0);
        std::function<bool(int)> dfs = [&](int v) -> bool {
            if (static_cast<int>(path.size()) == len) return adj[static_cast<std::size_t>(v)].count(path.front()) > 0;
            for (int u : adj[static_cast<std::size_t>(v)]) {
                // the cycle's smallest prefix vertex is its start
                if (on[static_cast<std::size_t>(u)] || (u < P && u < path.front())) continue;
                on[static_cast<std::size_t>(u)] = 1;
                path.push_back(u);
                if (dfs(u)) return true;
                path.pop_back();
                on[static_cast<std::size_t>(u)] = 0;
            }
            return false;
        };
        for (int a = 0; a < P; ++a) {
            path = {a};
            std::fill(on.begin(), on.end(), 0);
            on[static_cast<std::size_t>(a)] = 1;
            if (dfs(a)) {
                rep.free = false;
                rep.weight = w;
                for (int i = 0; i < len; ++i) {
                    int x = path[static_cast<std::size_t>(i)], y = path[static_cast<std::size_t>((i + 1) % len)];
                    int pv = x < P ? x : y, sv = x < P ? y : x;
                    rep.cycle.push_back(pre_of[static_cast<std::size_t>(pv)] + suf_of[static_cast<std::size_t>(sv - P)]);
                }
                return rep;
            }
        }
    }
    return rep;
}

}  // namespace mscodec
