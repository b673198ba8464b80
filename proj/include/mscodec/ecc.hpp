#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mscodec/bhcode.hpp"
#include "mscodec/codec.hpp"
#include "mscodec/core.hpp"
#include "mscodec/gf2.hpp"

namespace mscodec {

// nullopt marks an erased symbol
using ErasureWord = std::vector<std::optional<std::uint8_t>>;

struct LinearCodeSpec {
    int n = 0, k = 0, d = 0;
    Gf2Matrix G;                      // k x n
    Gf2Matrix H;                      // (n-k) x n
    std::vector<int> info_positions;  // data symbol j sits at info_positions[j]
    std::string name;

    BitString encode(const BitString& data) const;
    BitString data_of(const BitString& codeword) const;
    // the n-k symbols outside info_positions, in order
    BitString redundancy_of(const BitString& codeword) const;
    bool is_codeword(const BitString& w) const;
    bool systematic() const;  // data occupies positions 0..k-1

    // TooManyErasures when the known symbols leave several codewords, DecodeFailure when none fits
    BitString decode_erasures(const ErasureWord& word) const;
    // nearest codeword on the known symbols, by enumerating all 2^k codewords (k <= 24).
    // DecodeFailure unless the nearest is unique and 2e + f < d.
    BitString decode_errors_erasures(const ErasureWord& word) const;
};

// G = [I_k | P]
LinearCodeSpec systematic_code(const Gf2Matrix& P, int d, std::string name = {});
// info positions are the columns left free by elimination from the right; d = 0 computes it
LinearCodeSpec code_from_parity_check(const Gf2Matrix& H, int d = 0, std::string name = {});
int min_distance(const LinearCodeSpec& c);  // enumerates 2^k codewords

LinearCodeSpec trivial_code(int k);                                                // [k, k, 1]
LinearCodeSpec single_parity_code(int k);                                          // [k+1, k, 2]
LinearCodeSpec cyclic_code(std::uint64_t g, int n, int d, std::string name = {});  // data first
LinearCodeSpec hamming_code(int k);                                                // shortened, d = 3
LinearCodeSpec shorten(const LinearCodeSpec& c, int s);  // drops the first s data symbols
LinearCodeSpec extend_parity(const LinearCodeSpec& c);   // appends an overall parity bit
LinearCodeSpec repeat(const LinearCodeSpec& c, int times);
// BCH(31,16,7) shortened to k <= 16 data bits and repeated `times` times
LinearCodeSpec repeated_bch(int k, int times);

// Systematic Cauchy code over F_p (MDS). Parity symbols are written as fixed-width
// binary expansions, so a real sum of codewords reduces mod p to a codeword.
struct PrimeCode {
    int p = 0, k = 0, r = 0, width = 0;
    std::vector<std::vector<int>> C;  // k x r

    int length() const { return k + r * width; }
    BitString encode(const BitString& data) const;
    // real column sums of a mixture of hbar codewords (nullopt = unknown) -> data sums.
    // TooManyErasures when more than r symbols are unknown.
    std::vector<int> decode_sums(const std::vector<std::optional<int>>& sums, int hbar) const;
};
// smallest prime p > h with p >= k + r
PrimeCode prime_code(int k, int h, int r);

enum class Scheme { OneStep, OneStepNonbinary, TwoStep, Integral };
std::string scheme_name(Scheme s);
Scheme parse_scheme(std::string_view s);

struct EccScheme {
    Scheme kind = Scheme::OneStep;
    int n = 0;  // source length
    int t = 0;  // missing compositions (or substitutions) to survive
    LinearCodeSpec code;                 // data code; integral: code over I(r u)
    std::optional<LinearCodeSpec> flag;  // two-step code over r
    std::optional<PrimeCode> prime;      // nonbinary one-step
    bool substitution = false;           // two-step only

    McParams inner;  // codec parameters of the protected string
    int lead = 0;    // leading run of ones
    int N = 0;
    int z_pairs = 0;  // two-step: m4; integral: redundancy pairs of R(s)
    // fixed segments: lead, r, [z], u, [R]
    CodewordLayout layout;
    // positions inside the padded protected string: pad, data, syndrome
    std::vector<Segment> inner_segments;
};

// CapabilityTooSmall / LengthMismatch on unsuitable codes
EccScheme one_step_scheme(int n, int t, const LinearCodeSpec& code);
EccScheme one_step_nonbinary_scheme(int n, int t, int h);
EccScheme two_step_scheme(int n, int t, const LinearCodeSpec& data, const LinearCodeSpec& flag,
                          bool substitution = false);
EccScheme integral_scheme(int n, int t, const LinearCodeSpec& code);
// shipped desk codes for the given scheme (n <= 16 for the BCH-backed ones)
EccScheme default_scheme(Scheme kind, int n, int t, int h = 2, bool substitution = false);

struct EccCodeword {
    BitString bits;
    Scheme scheme = Scheme::OneStep;
    CodewordLayout layout;
    BitString source;
};

struct EccDecode {
    std::vector<int> indices;  // into the codebook, ascending
    std::vector<BitString> sources;
};

EccCodeword ecc_encode(const BitString& s, const EccScheme& scheme);
// pool of hbar codewords with missing compositions (or substituted ones in substitution mode)
EccDecode ecc_decode(const CompositionMultiset& pool, int hbar, const BhCodebook& cb, const EccScheme& scheme,
                     std::uint64_t budget = kDefaultBudget);

EccCodeword one_step_encode(const BitString& s, int t, const LinearCodeSpec& code);
EccCodeword two_step_encode(const BitString& s, int t, const LinearCodeSpec& data, const LinearCodeSpec& flag);
EccCodeword integral_encode(const BitString& s, int t, const LinearCodeSpec& code);

// running mod-2 sums
BitString integral(const BitString& s);
BitString derivative(const BitString& I);
// R(s) from R' and the first integral symbol; |R| = 2|R'|
BitString integral_redundancy(const BitString& rprime, int I1);

// m1 + 17/2 sqrt(m1) + 2(m3 - sqrt(m1)) + 2 with m1 the padded data length, m3 = |r r'|
double two_step_length_formula(const EccScheme& s);

}  // namespace mscodec
