#pragma once

#include <string>
#include <utility>
#include <vector>

#include "mscodec/bhcode.hpp"
#include "mscodec/core.hpp"

namespace mscodec {

struct BalancedPair {
    BitString u;  // balanced blocks, length n + pad
    BitString r;  // flag string, one bit per block
    int pad = 0;  // zeros prepended to reach a perfect square
};

// smallest perfect square >= n, and its root
int next_square(int n);
int isqrt_exact(int n);

BalancedPair block_balance(const BitString& s);
// flips block j of u when r_j = 1; |r|^2 must equal |u|
BitString unbalance(const BitString& u, const BitString& r);

struct Segment {
    std::string name;
    int offset = 0;
    int length = 0;
};

struct CodewordLayout {
    int n = 0;      // source length
    int pad = 0;    // zeros prepended before balancing
    int block = 0;  // block length sqrt(n + pad)
    int N = 0;
    std::vector<Segment> segments;  // in order, covering [0, N)

    const Segment& segment(const std::string& name) const;
    bool has(const std::string& name) const;
};

struct McCodeword {
    BitString bits;
    CodewordLayout layout;
    BitString source;
};

// Parameters shared by every codeword of source length n.
struct McParams {
    int n = 0, pad = 0, block = 0;
    int lead = 0;  // ceil(5/2 sqrt(n'))
    int N = 0;     // n' + ceil(17/2 sqrt(n')), rounded up to even
};
McParams mc_params(int n);

McCodeword encode(const BitString& s);
// v followed by 1^(N/2 - w) 0^(N/2 - (|v| - w)); throws if N cannot make it balanced
BitString dyck_tail(const BitString& v, int N);

struct McCodebook {
    BhCodebook base;
    std::vector<McCodeword> codewords;
    McParams params;

    int N() const { return params.N; }
};
McCodebook build_mc_codebook(const BhCodebook& base);
// log2|C| / N for a codebook of the given size over sources of length n
double mc_rate(double log2_size, int n);
double mc_rate(const McCodebook& cb);

// Splits a complete pool into (prefix pool, suffix pool) using the Dyck weight rule.
std::pair<CompositionMultiset, CompositionMultiset> separate_pool(const CompositionMultiset& pool, int N, int hbar);
SumVector sum_from_prefixes(const CompositionMultiset& prefixes, int N, int hbar);

struct MixtureDecode {
    std::vector<int> indices;  // into the codebook, ascending
    std::vector<BitString> sources;
    std::vector<BitString> codewords;
};
MixtureDecode decode_mixture(const CompositionMultiset& pool, const McCodebook& cb,
                             std::uint64_t budget = kDefaultBudget);

}  // namespace mscodec
