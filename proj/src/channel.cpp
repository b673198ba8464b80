#include "mscodec/channel.hpp"

#include <algorithm>
#include <set>

#include "mscodec/codec.hpp"
#include "mscodec/combinatorics.hpp"

namespace mscodec {

std::string side_name(Side s) { return s == Side::Prefix ? "prefix" : "suffix"; }

Side parse_side(std::string_view s) {
    if (s == "prefix" || s == "p") return Side::Prefix;
    if (s == "suffix" || s == "s") return Side::Suffix;
    throw Error(Errc::ParseError, "unknown side: " + std::string(s));
}

int ErasurePattern::total() const {
    int t = 0;
    for (const auto& r : removals) t += r.count;
    return t + static_cast<int>(substitutions.size());
}

namespace {

Composition pick_victim(const CompositionMultiset& pool, const Removal& r) {
    if (r.ones) return Composition{r.length - *r.ones, *r.ones};
    auto items = pool.of_length(r.length);
    if (items.empty())
        throw Error(Errc::PatternNotPresent, "no composition of length " + std::to_string(r.length));
    return r.side == Side::Prefix ? items.back() : items.front();
}

}  // namespace

CompositionMultiset erase(const CompositionMultiset& pool, const ErasurePattern& pattern) {
    CompositionMultiset out = pool;
    for (const auto& r : pattern.removals) {
        if (r.length < 1 || r.count < 0) throw Error(Errc::InvalidArgument, "bad removal");
        for (int k = 0; k < r.count; ++k) {
            auto victim = pick_victim(out, r);
            if (!out.remove(victim))
                throw Error(Errc::PatternNotPresent, side_name(r.side) + " " + victim.str() + " not in pool");
        }
    }
    return out;
}

CompositionMultiset substitute_mass_reducing(const CompositionMultiset& pool, const Substitution& sub) {
    if (sub.ones_to >= sub.ones_from || sub.ones_to < 0)
        throw Error(Errc::NotMassReducing, "substitution must strictly reduce the number of ones");
    Composition from{sub.length - sub.ones_from, sub.ones_from};
    if (from.zeros < 0) throw Error(Errc::InvalidArgument, "ones exceed length");
    CompositionMultiset out = pool;
    if (!out.remove(from)) throw Error(Errc::PatternNotPresent, from.str() + " not in pool");
    out.add(Composition{sub.length - sub.ones_to, sub.ones_to});
    return out;
}

CompositionMultiset apply_pattern(const CompositionMultiset& pool, const ErasurePattern& pattern) {
    auto out = erase(pool, pattern);
    for (const auto& s : pattern.substitutions) out = substitute_mass_reducing(out, s);
    return out;
}

std::string psum_str(const PartialSumString& p) {
    std::string out;
    for (const auto& v : p) {
        if (!v)
            out += "ε";
        else if (*v >= 0 && *v <= 9)
            out += static_cast<char>('0' + *v);
        else
            out += "(" + std::to_string(*v) + ")";
    }
    return out;
}

PartialSumString parse_psum(std::string_view text) {
    PartialSumString out;
    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        if (text.substr(i, 2) == "ε") {
            out.push_back(std::nullopt);
            i += 2;
        } else if (c == 'e' || c == '*') {
            out.push_back(std::nullopt);
            ++i;
        } else if (c >= '0' && c <= '9') {
            out.push_back(c - '0');
            ++i;
        } else if (c == '(') {
            auto close = text.find(')', i);
            if (close == std::string_view::npos) throw Error(Errc::ParseError, "unclosed '('");
            out.push_back(std::stoi(std::string(text.substr(i + 1, close - i - 1))));
            i = close + 1;
        } else {
            throw Error(Errc::ParseError, std::string("unexpected character in sum string: ") + c);
        }
    }
    return out;
}

PartialSumString to_partial(const SumVector& v) { return PartialSumString(v.begin(), v.end()); }

namespace {

using Totals = std::vector<std::optional<int>>;  // index 0..N, [0] = 0

PartialSumString prefix_side(const Totals& n) {
    const std::size_t N = n.size() - 1;
    PartialSumString out(N);
    for (std::size_t i = 1; i <= N; ++i)
        if (n[i] && n[i - 1]) out[i - 1] = *n[i] - *n[i - 1];
    return out;
}

// suffix position i sits at prefix position N - i + 1
PartialSumString suffix_side(const Totals& m) {
    const std::size_t N = m.size() - 1;
    PartialSumString out(N);
    for (std::size_t i = 1; i <= N; ++i)
        if (m[i] && m[i - 1]) out[N - i] = *m[i] - *m[i - 1];
    return out;
}

// How the compositions of one length can split between the two sides.
struct LengthSplit {
    int a = 0, b = 0, c = 0;  // strict prefix, strict suffix, ties
    int sp = 0, ss = 0;       // ones in strict prefix / suffix items
    int lo = 0, hi = -1;      // feasible number of prefixes
    int total() const { return a + b + c; }
};

std::vector<LengthSplit> analyse(const CompositionMultiset& pool, int N, int hbar) {
    std::vector<LengthSplit> out(static_cast<std::size_t>(N) + 1);
    for (int i = 1; i <= N; ++i) {
        auto& s = out[static_cast<std::size_t>(i)];
        for (const auto& c : pool.of_length(i)) {
            if (2 * c.ones > i) {
                ++s.a;
                s.sp += c.ones;
            } else if (2 * c.ones < i) {
                ++s.b;
                s.ss += c.ones;
            } else {
                ++s.c;
            }
        }
        s.lo = std::max(s.a, s.total() - hbar);
        s.hi = std::min(s.a + s.c, hbar);
    }
    return out;
}

// choice[i] < 0 leaves an unforced length unknown on both sides
std::pair<Totals, Totals> totals_for(const std::vector<LengthSplit>& splits, int hbar, const std::vector<int>& choice) {
    const std::size_t N = splits.size() - 1;
    Totals n(N + 1), m(N + 1);
    n[0] = 0;
    m[0] = 0;
    for (std::size_t i = 1; i <= N; ++i) {
        const auto& s = splits[i];
        int p = s.lo == s.hi ? s.lo : choice[i];
        if (p < 0) continue;
        int half = static_cast<int>(i) / 2;
        int tie_p = p - s.a, tie_s = s.c - tie_p;
        if (p == hbar) n[i] = s.sp + tie_p * half;
        if (s.total() - p == hbar) m[i] = s.ss + tie_s * half;
    }
    return {n, m};
}

struct Evaluation {
    bool discard = false;
    MergeResult merge;
};

Evaluation evaluate(const PartialSumString& p, const PartialSumString& s, std::optional<int> W, int hbar,
                    std::uint64_t budget) {
    Evaluation ev;
    for (const auto* side : {&p, &s})
        for (const auto& v : *side)
            if (v && (*v < 0 || *v > hbar)) {
                ev.discard = true;
                return ev;
            }
    try {
        ev.merge = merge_partials(p, s, W, hbar, budget);
    } catch (const Error& e) {
        if (e.code() != Errc::Conflict) throw;
        ev.discard = true;
    }
    return ev;
}

std::vector<std::vector<BitString>> consistent_subsets(const CompositionMultiset& erased,
                                                       const std::vector<BitString>& codebook, int hbar,
                                                       std::uint64_t budget) {
    std::vector<std::vector<BitString>> out;
    if (binomial(static_cast<long long>(codebook.size()), hbar) > budget)
        throw Error(Errc::SearchSpaceTooLarge, "too many codebook subsets");
    for_each_combination(static_cast<int>(codebook.size()), hbar, [&](const std::vector<int>& idx) {
        std::vector<BitString> chosen;
        for (int i : idx) chosen.push_back(codebook[static_cast<std::size_t>(i)]);
        if (pool(chosen).contains(erased)) out.push_back(std::move(chosen));
        return true;
    });
    return out;
}

void attach_codebook(ReconstructResult& res, const CompositionMultiset& erased, int hbar,
                     const std::vector<BitString>& codebook, std::uint64_t budget) {
    if (codebook.empty() || hbar == 0) return;
    if (res.outcome == Outcome::Exact) {
        try {
            res.strings = invert_sum(explicit_codebook(codebook, hbar), *res.sum, hbar);
            return;
        } catch (const Error& e) {
            if (e.code() == Errc::NoSolution) {
                res.outcome = Outcome::Conflict;
                return;
            }
            if (e.code() != Errc::AmbiguousSolution) throw;
            res.outcome = Outcome::Ambiguous;
            res.candidate_sums = {*res.sum};
            res.sum.reset();
        }
    }
    if (res.outcome == Outcome::Ambiguous) res.witnesses = consistent_subsets(erased, codebook, hbar, budget);
}

void set_from_merge(ReconstructResult& res, const Evaluation& ev) {
    if (ev.discard) {
        res.outcome = Outcome::Conflict;
    } else if (ev.merge.ambiguous) {
        res.outcome = Outcome::Ambiguous;
        res.candidate_sums = ev.merge.candidates;
    } else {
        res.outcome = Outcome::Exact;
        res.sum = ev.merge.sum;
    }
}

}  // namespace

std::pair<PartialSumString, PartialSumString> partial_sum_strings(const CompositionMultiset& pool, int N, int hbar) {
    auto splits = analyse(pool, N, hbar);
    auto [n, m] = totals_for(splits, hbar, std::vector<int>(static_cast<std::size_t>(N) + 1, -1));
    return {prefix_side(n), suffix_side(m)};
}

std::pair<PartialSumString, PartialSumString> partial_sum_strings(const CompositionMultiset& prefixes,
                                                                  const CompositionMultiset& suffixes, int N,
                                                                  int hbar) {
    Totals n(static_cast<std::size_t>(N) + 1), m(static_cast<std::size_t>(N) + 1);
    n[0] = 0;
    m[0] = 0;
    for (int i = 1; i <= N; ++i) {
        if (prefixes.count_of_length(i) == hbar) n[static_cast<std::size_t>(i)] = prefixes.ones_of_length(i);
        if (suffixes.count_of_length(i) == hbar) m[static_cast<std::size_t>(i)] = suffixes.ones_of_length(i);
    }
    return {prefix_side(n), suffix_side(m)};
}

MergeResult merge_partials(const PartialSumString& p, const PartialSumString& s, std::optional<int> W,
                           std::optional<int> hbar, std::uint64_t budget) {
    if (p.size() != s.size()) throw Error(Errc::LengthMismatch, "partial sums differ in length");
    MergeResult out;
    out.merged.resize(p.size());
    std::vector<std::size_t> erased;
    int known = 0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] && s[i] && *p[i] != *s[i])
            throw Error(Errc::Conflict, "position " + std::to_string(i + 1) + ": " + std::to_string(*p[i]) +
                                            " vs " + std::to_string(*s[i]));
        out.merged[i] = p[i] ? p[i] : s[i];
        if (out.merged[i])
            known += *out.merged[i];
        else
            erased.push_back(i);
    }
    auto finish = [&](const PartialSumString& full) {
        SumVector v;
        for (const auto& x : full) v.push_back(*x);
        return v;
    };
    if (erased.empty()) {
        out.sum = finish(out.merged);
        return out;
    }
    if (!W) {
        out.ambiguous = true;
        return out;
    }
    const int rest = *W - known;
    const int cap = hbar ? *hbar : rest;
    // enumerate fillings of the erased positions that add up to rest
    std::vector<int> fill(erased.size(), 0);
    std::uint64_t nodes = 0;
    auto rec = [&](auto&& self, std::size_t k, int left) -> void {
        if (++nodes > budget) throw Error(Errc::SearchSpaceTooLarge, "too many fillings");
        if (k + 1 == erased.size()) {
            if (left < 0 || left > cap) return;
            fill[k] = left;
            auto full = out.merged;
            for (std::size_t j = 0; j < erased.size(); ++j) full[erased[j]] = fill[j];
            out.candidates.push_back(finish(full));
            return;
        }
        for (int v = 0; v <= std::min(cap, left); ++v) {
            fill[k] = v;
            self(self, k + 1, left - v);
        }
    };
    if (rest >= 0) rec(rec, 0, rest);
    if (out.candidates.empty()) throw Error(Errc::Conflict, "no filling matches the total weight");
    if (out.candidates.size() == 1) {
        out.sum = out.candidates.front();
        out.candidates.clear();
        for (std::size_t j = 0; j < out.merged.size(); ++j) out.merged[j] = (*out.sum)[j];
        return out;
    }
    out.ambiguous = true;
    return out;
}

namespace {

std::vector<Burst> bursts_of(const PartialSumString& p) {
    std::vector<Burst> out;
    for (std::size_t i = 0; i < p.size();) {
        if (p[i]) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < p.size() && !p[j]) ++j;
        out.push_back(Burst{static_cast<int>(i) + 1, static_cast<int>(j - i)});
        i = j;
    }
    return out;
}

}  // namespace

bool BurstReport::recoverable() const { return overlaps.empty() || (overlaps.size() == 1 && overlaps[0] == 1); }

BurstReport burst_report(const PartialSumString& p, const PartialSumString& s) {
    BurstReport r;
    r.prefix = bursts_of(p);
    r.suffix = bursts_of(s);
    for (const auto& a : r.prefix)
        for (const auto& b : r.suffix) {
            int lo = std::max(a.start, b.start);
            int hi = std::min(a.start + a.length, b.start + b.length);
            if (hi > lo) r.overlaps.push_back(hi - lo);
        }
    return r;
}

std::string outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Exact: return "exact";
        case Outcome::Ambiguous: return "ambiguous";
        case Outcome::Conflict: return "conflict";
    }
    return "?";
}

ReconstructResult reconstruct_redundancy_free(const CompositionMultiset& pool, int N, int hbar, std::optional<int> W,
                                              const std::vector<BitString>& codebook, std::uint64_t budget) {
    if (N < 1 || hbar < 0) throw Error(Errc::InvalidArgument, "bad N or hbar");
    if (!W) W = hbar * N / 2;
    ReconstructResult res;
    auto splits = analyse(pool, N, hbar);
    std::vector<int> choice(static_cast<std::size_t>(N) + 1, -1);
    auto [n, m] = totals_for(splits, hbar, choice);
    res.prefix = prefix_side(n);
    res.suffix = suffix_side(m);
    res.bursts = burst_report(res.prefix, res.suffix);

    bool feasible = pool.max_length() <= N;
    std::vector<std::size_t> open;
    std::uint64_t combos = 1;
    for (std::size_t i = 1; i < splits.size(); ++i) {
        if (splits[i].lo > splits[i].hi) feasible = false;
        if (splits[i].lo < splits[i].hi) {
            open.push_back(i);
            combos *= static_cast<std::uint64_t>(splits[i].hi - splits[i].lo + 1);
            if (combos > budget) throw Error(Errc::SearchSpaceTooLarge, "too many tie hypotheses");
        }
    }
    if (!feasible) {
        res.outcome = Outcome::Conflict;
        return res;
    }

    auto base = evaluate(res.prefix, res.suffix, W, hbar, budget);
    if (open.empty() || (!base.discard && !base.merge.ambiguous)) {
        set_from_merge(res, base);
        attach_codebook(res, pool, hbar, codebook, budget);
        return res;
    }

    // resolve ambiguous tie splits by trying every feasible assignment
    std::set<SumVector> sums, cands;
    bool ambiguous = false;
    for (auto i : open) choice[i] = splits[i].lo;
    while (true) {
        auto [hn, hm] = totals_for(splits, hbar, choice);
        auto ev = evaluate(prefix_side(hn), suffix_side(hm), W, hbar, budget);
        if (!ev.discard) {
            if (ev.merge.ambiguous) {
                ambiguous = true;
                cands.insert(ev.merge.candidates.begin(), ev.merge.candidates.end());
            } else {
                sums.insert(*ev.merge.sum);
            }
        }
        std::size_t k = 0;
        while (k < open.size() && choice[open[k]] == splits[open[k]].hi) {
            choice[open[k]] = splits[open[k]].lo;
            ++k;
        }
        if (k == open.size()) break;
        ++choice[open[k]];
    }
    if (!ambiguous && sums.size() == 1) {
        res.outcome = Outcome::Exact;
        res.sum = *sums.begin();
    } else if (!ambiguous && sums.empty()) {
        res.outcome = Outcome::Conflict;
    } else {
        res.outcome = Outcome::Ambiguous;
        cands.insert(sums.begin(), sums.end());
        res.candidate_sums.assign(cands.begin(), cands.end());
    }
    attach_codebook(res, pool, hbar, codebook, budget);
    return res;
}

ReconstructResult reconstruct_labeled(const CompositionMultiset& prefixes, const CompositionMultiset& suffixes, int N,
                                      int hbar, std::optional<int> W, const std::vector<BitString>& codebook,
                                      std::uint64_t budget) {
    ReconstructResult res;
    std::tie(res.prefix, res.suffix) = partial_sum_strings(prefixes, suffixes, N, hbar);
    res.bursts = burst_report(res.prefix, res.suffix);
    if (!W) {
        if (prefixes.count_of_length(N) == hbar)
            W = prefixes.ones_of_length(N);
        else if (suffixes.count_of_length(N) == hbar)
            W = suffixes.ones_of_length(N);
    }
    bool feasible = prefixes.max_length() <= N && suffixes.max_length() <= N;
    for (int i = 1; i <= N; ++i)
        if (prefixes.count_of_length(i) > hbar || suffixes.count_of_length(i) > hbar) feasible = false;
    if (!feasible) {
        res.outcome = Outcome::Conflict;
        return res;
    }
    set_from_merge(res, evaluate(res.prefix, res.suffix, W, hbar, budget));
    attach_codebook(res, prefixes + suffixes, hbar, codebook, budget);
    return res;
}

namespace {

// both partial strings fully known, in range and equal
std::optional<SumVector> clean_sum(const CompositionMultiset& pool, int N, int hbar) {
    try {
        auto [pre, suf] = separate_pool(pool, N, hbar);
        auto [p, s] = partial_sum_strings(pre, suf, N, hbar);
        SumVector out;
        for (std::size_t i = 0; i < p.size(); ++i) {
            if (!p[i] || !s[i] || *p[i] != *s[i] || *p[i] < 0 || *p[i] > hbar) return std::nullopt;
            out.push_back(*p[i]);
        }
        return out;
    } catch (const Error&) {
        return std::nullopt;
    }
}

}  // namespace

DetectionReport detect_substitution(const CompositionMultiset& pool, int N, int hbar, std::optional<int> W,
                                    const std::vector<BitString>& codebook) {
    if (!W) W = hbar * N / 2;
    DetectionReport rep;
    const std::size_t NN = static_cast<std::size_t>(N);
    std::vector<int> pc(NN + 1, 0), sc(NN + 1, 0);
    Totals n(NN + 1), m(NN + 1);
    n[0] = 0;
    m[0] = 0;
    // classify as separate_pool would, but tolerate wrong counts
    for (int i = 1; i <= N; ++i) {
        auto idx = static_cast<std::size_t>(i);
        int np = 0, ns = 0;
        std::vector<Composition> ties;
        for (const auto& c : pool.of_length(i)) {
            if (2 * c.ones > i) {
                ++pc[idx];
                np += c.ones;
            } else if (2 * c.ones < i) {
                ++sc[idx];
                ns += c.ones;
            } else {
                ties.push_back(c);
            }
        }
        for (const auto& c : ties) {
            if (pc[idx] < hbar) {
                ++pc[idx];
                np += c.ones;
            } else {
                ++sc[idx];
                ns += c.ones;
            }
        }
        n[idx] = np;
        m[idx] = ns;
        if (pc[idx] != hbar || sc[idx] != hbar) rep.count_anomalies.push_back({i, pc[idx], sc[idx]});
    }
    rep.prefix_increments = prefix_side(n);
    rep.suffix_increments = suffix_side(m);
    bool p_ok = true, s_ok = true;
    for (std::size_t i = 0; i < NN; ++i) {
        int pv = *rep.prefix_increments[i], sv = *rep.suffix_increments[i];
        if (pv < 0 || pv > hbar) {
            rep.flags.push_back({Side::Prefix, static_cast<int>(i) + 1, pv});
            p_ok = false;
        }
        if (sv < 0 || sv > hbar) {
            rep.flags.push_back({Side::Suffix, static_cast<int>(i) + 1, sv});
            s_ok = false;
        }
    }
    std::sort(rep.flags.begin(), rep.flags.end(),
              [](const IncrementFlag& a, const IncrementFlag& b) { return a.position < b.position; });
    for (std::size_t i = 1; i <= NN; ++i) {
        if (pc[i] != hbar) p_ok = false;
        if (sc[i] != hbar) s_ok = false;
    }
    auto as_sum = [](const PartialSumString& ps) {
        SumVector v;
        for (const auto& x : ps) v.push_back(*x);
        return v;
    };
    if (p_ok) rep.prefix_sum = as_sum(rep.prefix_increments);
    if (s_ok) rep.suffix_sum = as_sum(rep.suffix_increments);
    for (std::size_t i = 1; i < NN; ++i)
        if (pc[i] == hbar && sc[NN - i] == hbar && *n[i] + *m[NN - i] != *W)
            rep.incompatible_lengths.push_back(static_cast<int>(i));

    if (rep.clean()) return rep;
    for (const auto& [c, mult] : pool.entries()) {
        for (int o = c.ones + 1; o <= c.length(); ++o) {
            Composition to{c.length() - o, o};
            CompositionMultiset fixed = pool;
            fixed.remove(c);
            fixed.add(to);
            auto sum = clean_sum(fixed, N, hbar);
            if (!sum) continue;
            CandidateCorrection cand{c, to, *sum, {}};
            if (!codebook.empty()) {
                try {
                    cand.strings = invert_sum(explicit_codebook(codebook, hbar), *sum, hbar);
                } catch (const Error&) {
                    continue;
                }
                if (mscodec::pool(cand.strings) != fixed) continue;
            }
            rep.candidates.push_back(std::move(cand));
        }
    }
    return rep;
}

long long count_correctable_single(int n, int t) {
    if (t < 0 || t > n) throw Error(Errc::InvalidArgument, "need 0 <= t <= n");
    unsigned long long total = 0;
    for (int i = 0; i <= t; ++i) total += binomial(n, i) * binomial(n - i, t - i);
    return static_cast<long long>(total);
}

long long count_correctable_multi(int n, int t, int h) {
    if (t < 0 || t > n || t > h) throw Error(Errc::InvalidArgument, "need 0 <= t <= min(n, h)");
    if (t == 0) return 1;
    unsigned long long total = 0;
    for (int j = 0; j <= t; ++j) total += binomial(n, j) * binomial(t - 1, t - j) * (1ull << j);
    return static_cast<long long>(total);
}

std::vector<std::optional<int>> prefix_totals(const CompositionMultiset& pool, int N, int hbar, int W) {
    if (N < 1 || hbar < 0) throw Error(Errc::InvalidArgument, "bad N or hbar");
    if (pool.max_length() > N) throw Error(Errc::CountMismatch, "composition longer than N");
    const auto splits = analyse(pool, N, hbar);
    auto options = [&](int len) {
        const auto& s = splits[static_cast<std::size_t>(len)];
        std::vector<int> out;
        for (int p = s.lo; p <= s.hi; ++p) out.push_back(p);
        return out;
    };
    auto from_prefix = [&](int len, int p) -> std::optional<int> {
        const auto& s = splits[static_cast<std::size_t>(len)];
        if (p != hbar) return std::nullopt;
        return s.sp + (p - s.a) * (len / 2);
    };
    auto from_suffix = [&](int len, int p) -> std::optional<int> {
        const auto& s = splits[static_cast<std::size_t>(len)];
        if (s.total() - p != hbar) return std::nullopt;
        return W - (s.ss + (s.c - (p - s.a)) * (len / 2));
    };

    std::vector<std::optional<int>> n(static_cast<std::size_t>(N) + 1);
    n[0] = 0;
    n[static_cast<std::size_t>(N)] = W;
    for (int i = 1; i < N; ++i) {
        const int j = N - i;
        std::optional<int> agreed;
        bool known = true, any = false;
        for (int p : options(i)) {
            for (int q : (j == i ? std::vector<int>{p} : options(j))) {
                auto a = from_prefix(i, p);
                auto b = from_suffix(j, q);
                if (a && b && *a != *b) continue;  // this split pair contradicts itself
                auto v = a ? a : b;
                if (!v || (agreed && *agreed != *v)) {
                    known = false;
                    break;
                }
                agreed = v;
                any = true;
            }
            if (!known) break;
        }
        if (known && any) n[static_cast<std::size_t>(i)] = agreed;
    }
    return n;
}

PartialSumString increments(const std::vector<std::optional<int>>& totals) { return prefix_side(totals); }

}  // namespace mscodec
