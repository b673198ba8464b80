#include "mscodec/codec.hpp"

#include <algorithm>
#include <cmath>

namespace mscodec {

int isqrt_exact(int n) {
    int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    while (k * k > n) --k;
    while ((k + 1) * (k + 1) <= n) ++k;
    return k;
}

int next_square(int n) {
    int k = isqrt_exact(n);
    if (k * k < n) ++k;
    return k * k;
}

BalancedPair block_balance(const BitString& s) {
    if (s.empty()) throw Error(Errc::InvalidArgument, "empty string");
    const int n = static_cast<int>(s.size());
    BalancedPair out;
    out.pad = next_square(n) - n;
    BitString padded = BitString::zeros(static_cast<std::size_t>(out.pad)) + s;
    const int k = isqrt_exact(static_cast<int>(padded.size()));
    std::vector<std::uint8_t> flags(static_cast<std::size_t>(k), 0);
    BitString u;
    int R = 0;  // RDS of u so far
    for (int j = 0; j < k; ++j) {
        BitString blk = padded.slice(static_cast<std::size_t>(j * k), static_cast<std::size_t>(k));
        if (j > 0) {
            bool flip = (R < 0) == (blk.rds() < 0);
            if (flip) {
                blk = blk.complement();
                flags[static_cast<std::size_t>(j)] = 1;
            }
        }
        R += blk.rds();
        u += blk;
    }
    out.u = u;
    out.r = BitString(std::move(flags));
    return out;
}

BitString unbalance(const BitString& u, const BitString& r) {
    const std::size_t k = r.size();
    if (k * k != u.size()) throw Error(Errc::LengthMismatch, "unbalance: |r|^2 != |u|");
    auto bits = u.bits();
    for (std::size_t j = 0; j < k; ++j)
        if (r[j])
            for (std::size_t i = j * k; i < (j + 1) * k; ++i) bits[i] ^= 1;
    return BitString(std::move(bits));
}

const Segment& CodewordLayout::segment(const std::string& name) const {
    for (const auto& s : segments)
        if (s.name == name) return s;
    throw Error(Errc::InvalidArgument, "layout has no segment " + name);
}

bool CodewordLayout::has(const std::string& name) const {
    return std::any_of(segments.begin(), segments.end(), [&](const Segment& s) { return s.name == name; });
}

McParams mc_params(int n) {
    if (n < 1) throw Error(Errc::InvalidArgument, "source length must be positive");
    McParams p;
    p.n = n;
    int sq = next_square(n);
    p.pad = sq - n;
    p.block = isqrt_exact(sq);
    p.lead = (5 * p.block + 1) / 2;
    p.N = sq + (17 * p.block + 1) / 2;
    if (p.N % 2) ++p.N;
    return p;
}

BitString dyck_tail(const BitString& v, int N) {
    const int w = v.weight();
    const int ones = N / 2 - w;
    const int zeros = N / 2 - (static_cast<int>(v.size()) - w);
    if (N % 2 || ones < 0 || zeros < 0) throw Error(Errc::InvalidArgument, "length too short to balance v");
    return v + BitString::ones(static_cast<std::size_t>(ones)) + BitString::zeros(static_cast<std::size_t>(zeros));
}

McCodeword encode(const BitString& s) {
    const auto p = mc_params(static_cast<int>(s.size()));
    auto bal = block_balance(s);
    BitString v = BitString::ones(static_cast<std::size_t>(p.lead)) + bal.r + bal.u;
    McCodeword cw;
    cw.source = s;
    cw.bits = dyck_tail(v, p.N);
    const int w = v.weight();
    const int tail1 = p.N / 2 - w;
    const int vlen = static_cast<int>(v.size());
    cw.layout.n = p.n;
    cw.layout.pad = p.pad;
    cw.layout.block = p.block;
    cw.layout.N = p.N;
    cw.layout.segments = {
        {"lead", 0, p.lead},
        {"r", p.lead, p.block},
        {"u", p.lead + p.block, p.block * p.block},
        {"tail1", vlen, tail1},
        {"tail0", vlen + tail1, p.N - vlen - tail1},
    };
    return cw;
}

McCodebook build_mc_codebook(const BhCodebook& base) {
    McCodebook cb;
    cb.base = base;
    cb.params = mc_params(base.n);
    for (const auto& s : base.strings) cb.codewords.push_back(encode(s));
    return cb;
}

double mc_rate(double log2_size, int n) { return log2_size / mc_params(n).N; }

double mc_rate(const McCodebook& cb) {
    return cb.codewords.empty() ? 0.0 : std::log2(static_cast<double>(cb.codewords.size())) / cb.params.N;
}

std::pair<CompositionMultiset, CompositionMultiset> separate_pool(const CompositionMultiset& pool, int N, int hbar) {
    CompositionMultiset pre, suf;
    if (pool.max_length() > N) throw Error(Errc::CountMismatch, "composition longer than N");
    for (int i = 1; i <= N; ++i) {
        auto items = pool.of_length(i);
        if (static_cast<int>(items.size()) != 2 * hbar)
            throw Error(Errc::CountMismatch, "length " + std::to_string(i) + " has " + std::to_string(items.size()) +
                                                 " compositions, expected " + std::to_string(2 * hbar));
        int a = 0, b = 0;
        std::vector<Composition> ties;
        for (const auto& c : items) {
            if (2 * c.ones > i) {
                pre.add(c);
                ++a;
            } else if (2 * c.ones < i) {
                suf.add(c);
                ++b;
            } else {
                ties.push_back(c);
            }
        }
        if (a > hbar || b > hbar) throw Error(Errc::CountMismatch, "length " + std::to_string(i) + " does not split evenly");
        for (const auto& c : ties) {
            if (a < hbar) {
                pre.add(c);
                ++a;
            } else {
                suf.add(c);
            }
        }
    }
    return {pre, suf};
}

SumVector sum_from_prefixes(const CompositionMultiset& prefixes, int N, int hbar) {
    SumVector t(static_cast<std::size_t>(N), 0);
    int prev = 0;
    for (int i = 1; i <= N; ++i) {
        if (prefixes.count_of_length(i) != hbar)
            throw Error(Errc::CountMismatch, "prefix length " + std::to_string(i) + " incomplete");
        int cur = prefixes.ones_of_length(i);
        int d = cur - prev;
        if (d < 0 || d > hbar)
            throw Error(Errc::NegativeIncrement, "increment " + std::to_string(d) + " at position " + std::to_string(i));
        t[static_cast<std::size_t>(i - 1)] = d;
        prev = cur;
    }
    return t;
}

MixtureDecode decode_mixture(const CompositionMultiset& pool, const McCodebook& cb, std::uint64_t budget) {
    const auto& p = cb.params;
    MixtureDecode out;
    if (pool.size() % static_cast<std::size_t>(2 * p.N) != 0)
        throw Error(Errc::InconsistentPoolSize, "pool size " + std::to_string(pool.size()) + " is not a multiple of 2N");
    const int hbar = static_cast<int>(pool.size() / static_cast<std::size_t>(2 * p.N));
    if (hbar > cb.base.h) throw Error(Errc::InconsistentPoolSize, "more strings than h");
    if (hbar == 0) return out;
    if (!cb.base.spec) throw Error(Errc::Unsupported, "mixture decoding needs a parity-check-backed codebook");

    auto [pre, suf] = separate_pool(pool, p.N, hbar);
    auto t = sum_from_prefixes(pre, p.N, hbar);
    for (int i = 0; i < p.lead; ++i)
        if (t[static_cast<std::size_t>(i)] != hbar) throw Error(Errc::DecodeFailure, "leading run is not all ones");
    std::vector<std::uint8_t> r2(static_cast<std::size_t>(p.block)), u2(static_cast<std::size_t>(p.block * p.block));
    for (int j = 0; j < p.block; ++j) r2[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(t[static_cast<std::size_t>(p.lead + j)] & 1);
    for (int j = 0; j < p.block * p.block; ++j)
        u2[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(t[static_cast<std::size_t>(p.lead + p.block + j)] & 1);
    BitString s2 = unbalance(BitString(std::move(u2)), BitString(std::move(r2)));
    if (s2.slice(0, static_cast<std::size_t>(p.pad)).weight() != 0) throw Error(Errc::DecodeFailure, "nonzero padding");
    BitString target = s2.slice(static_cast<std::size_t>(p.pad), static_cast<std::size_t>(p.n));

    out.indices = invert_xor(cb.base, target, hbar, budget);
    std::vector<BitString> cws;
    for (int i : out.indices) {
        out.sources.push_back(cb.base.strings[static_cast<std::size_t>(i)]);
        cws.push_back(cb.codewords[static_cast<std::size_t>(i)].bits);
    }
    if (mscodec::pool(cws) != pool) throw Error(Errc::DecodeFailure, "decoded set does not reproduce the pool");
    out.codewords = cws;
    return out;
}

}  // namespace mscodec
