#include "mscodec/ecc.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "mscodec/channel.hpp"

namespace mscodec {

namespace {

using Packed = std::vector<std::uint64_t>;

Packed pack(const BitString& b) {
    Packed out((b.size() + 63) / 64, 0);
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i]) out[i / 64] |= std::uint64_t{1} << (i % 64);
    return out;
}

BitString unpack(const Packed& p, std::size_t n) {
    std::vector<std::uint8_t> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = static_cast<std::uint8_t>((p[i / 64] >> (i % 64)) & 1);
    return BitString(std::move(v));
}

// calls f(codeword) for all 2^k codewords in Gray-code order
template <class F>
void for_each_codeword(const LinearCodeSpec& c, F&& f) {
    if (c.k > 24) throw Error(Errc::Unsupported, "codeword enumeration needs k <= 24");
    std::vector<Packed> rows;
    for (int j = 0; j < c.k; ++j) rows.push_back(pack(c.G.row(static_cast<std::size_t>(j))));
    Packed cur((static_cast<std::size_t>(c.n) + 63) / 64, 0);
    f(static_cast<const Packed&>(cur));
    for (std::uint64_t g = 1; g < (std::uint64_t{1} << c.k); ++g) {
        const auto& row = rows[static_cast<std::size_t>(std::countr_zero(g))];
        for (std::size_t w = 0; w < cur.size(); ++w) cur[w] ^= row[w];
        f(static_cast<const Packed&>(cur));
    }
}

Gf2Matrix parity_part(const LinearCodeSpec& c) {
    if (!c.systematic()) throw Error(Errc::Unsupported, c.name + " is not systematic");
    Gf2Matrix P(static_cast<std::size_t>(c.k), static_cast<std::size_t>(c.n - c.k));
    for (int i = 0; i < c.k; ++i)
        for (int j = 0; j < c.n - c.k; ++j)
            P.set(static_cast<std::size_t>(i), static_cast<std::size_t>(j), c.G.at(static_cast<std::size_t>(i), static_cast<std::size_t>(c.k + j)));
    return P;
}

bool is_prime(int p) {
    if (p < 2) return false;
    for (int q = 2; q * q <= p; ++q)
        if (p % q == 0) return false;
    return true;
}

int mod(long long a, int p) { return static_cast<int>(((a % p) + p) % p); }

int inv_mod(int a, int p) {
    int r = 1;
    long long b = mod(a, p);
    for (int e = p - 2; e > 0; e >>= 1, b = b * b % p)
        if (e & 1) r = static_cast<int>(r * b % p);
    return r;
}

}  // namespace

// ---- binary linear codes ----

BitString LinearCodeSpec::encode(const BitString& data) const {
    if (static_cast<int>(data.size()) != k) throw Error(Errc::LengthMismatch, "data length " + std::to_string(data.size()) + " != k=" + std::to_string(k));
    BitString c = BitString::zeros(static_cast<std::size_t>(n));
    for (int j = 0; j < k; ++j)
        if (data[static_cast<std::size_t>(j)]) c = c ^ G.row(static_cast<std::size_t>(j));
    return c;
}

BitString LinearCodeSpec::data_of(const BitString& w) const {
    if (static_cast<int>(w.size()) != n) throw Error(Errc::LengthMismatch, "codeword length");
    std::vector<std::uint8_t> out;
    for (int p : info_positions) out.push_back(w[static_cast<std::size_t>(p)]);
    return BitString(std::move(out));
}

BitString LinearCodeSpec::redundancy_of(const BitString& w) const {
    if (static_cast<int>(w.size()) != n) throw Error(Errc::LengthMismatch, "codeword length");
    std::vector<std::uint8_t> is_info(static_cast<std::size_t>(n), 0), out;
    for (int p : info_positions) is_info[static_cast<std::size_t>(p)] = 1;
    for (int i = 0; i < n; ++i)
        if (!is_info[static_cast<std::size_t>(i)]) out.push_back(w[static_cast<std::size_t>(i)]);
    return BitString(std::move(out));
}

bool LinearCodeSpec::is_codeword(const BitString& w) const {
    return static_cast<int>(w.size()) == n && H.multiply(w).weight() == 0;
}

bool LinearCodeSpec::systematic() const {
    for (int j = 0; j < k; ++j)
        if (info_positions[static_cast<std::size_t>(j)] != j) return false;
    return true;
}

BitString LinearCodeSpec::decode_erasures(const ErasureWord& word) const {
    if (static_cast<int>(word.size()) != n) throw Error(Errc::LengthMismatch, "word length");
    std::vector<std::size_t> erased;
    std::vector<std::uint8_t> known(static_cast<std::size_t>(n), 0);
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i])
            known[i] = *word[i] & 1;
        else
            erased.push_back(i);
    }
    BitString y(known);
    BitString syn = H.multiply(y);
    if (erased.empty()) {
        if (syn.weight() != 0) throw Error(Errc::DecodeFailure, "word is not a codeword");
        return y;
    }
    if (H.rows() == 0) throw Error(Errc::TooManyErasures, "code has no redundancy");
    Gf2Matrix A(H.rows(), erased.size());
    for (std::size_t r = 0; r < H.rows(); ++r)
        for (std::size_t j = 0; j < erased.size(); ++j) A.set(r, j, H.at(r, erased[j]));
    auto sol = gf2_solve(A, syn.bits());
    if (!sol) throw Error(Errc::DecodeFailure, "no codeword matches the known symbols");
    if (!sol->unique)
        throw Error(Errc::TooManyErasures, std::to_string(erased.size()) + " erasures leave several codewords");
    for (std::size_t j = 0; j < erased.size(); ++j) known[erased[j]] = sol->x[j];
    return BitString(std::move(known));
}

BitString LinearCodeSpec::decode_errors_erasures(const ErasureWord& word) const {
    if (static_cast<int>(word.size()) != n) throw Error(Errc::LengthMismatch, "word length");
    std::vector<std::uint8_t> val(static_cast<std::size_t>(n), 0), msk(static_cast<std::size_t>(n), 0);
    int f = 0;
    for (std::size_t i = 0; i < word.size(); ++i) {
        if (word[i]) {
            val[i] = *word[i] & 1;
            msk[i] = 1;
        } else {
            ++f;
        }
    }
    const Packed pv = pack(BitString(val)), pm = pack(BitString(msk));
    int best = n + 1, ties = 0;
    Packed arg;
    for_each_codeword(*this, [&](const Packed& cw) {
        int dist = 0;
        for (std::size_t w = 0; w < cw.size(); ++w) dist += std::popcount((cw[w] ^ pv[w]) & pm[w]);
        if (dist < best) {
            best = dist;
            ties = 1;
            arg = cw;
        } else if (dist == best) {
            ++ties;
        }
    });
    if (ties != 1 || 2 * best + f >= d)
        throw Error(Errc::DecodeFailure, std::to_string(best) + " errors and " + std::to_string(f) + " erasures exceed d=" + std::to_string(d));
    return unpack(arg, static_cast<std::size_t>(n));
}

LinearCodeSpec systematic_code(const Gf2Matrix& P, int d, std::string name) {
    const int k = static_cast<int>(P.rows()), r = static_cast<int>(P.cols()), n = k + r;
    LinearCodeSpec c;
    c.n = n;
    c.k = k;
    c.d = d;
    c.name = std::move(name);
    c.G = Gf2Matrix(static_cast<std::size_t>(k), static_cast<std::size_t>(n));
    c.H = Gf2Matrix(static_cast<std::size_t>(r), static_cast<std::size_t>(n));
    for (int i = 0; i < k; ++i) {
        c.G.set(static_cast<std::size_t>(i), static_cast<std::size_t>(i), 1);
        for (int j = 0; j < r; ++j) {
            int v = P.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            c.G.set(static_cast<std::size_t>(i), static_cast<std::size_t>(k + j), v);
            c.H.set(static_cast<std::size_t>(j), static_cast<std::size_t>(i), v);
        }
    }
    for (int j = 0; j < r; ++j) c.H.set(static_cast<std::size_t>(j), static_cast<std::size_t>(k + j), 1);
    for (int i = 0; i < k; ++i) c.info_positions.push_back(i);
    return c;
}

LinearCodeSpec code_from_parity_check(const Gf2Matrix& H0, int d, std::string name) {
    const std::size_t rows = H0.rows(), n = H0.cols();
    Gf2Matrix A = H0;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (std::size_t cc = n; cc-- > 0 && rank < rows;) {
        std::size_t pr = rank;
        while (pr < rows && !A.at(pr, cc)) ++pr;
        if (pr == rows) continue;
        if (pr != rank)
            for (std::size_t j = 0; j < n; ++j) {
                int t = A.at(pr, j);
                A.set(pr, j, A.at(rank, j));
                A.set(rank, j, t);
            }
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && A.at(r, cc))
                for (std::size_t j = 0; j < n; ++j) A.set(r, j, A.at(r, j) ^ A.at(rank, j));
        pivot_col.push_back(static_cast<int>(cc));
        ++rank;
    }
    LinearCodeSpec c;
    c.n = static_cast<int>(n);
    c.k = static_cast<int>(n - rank);
    c.name = std::move(name);
    std::vector<std::uint8_t> is_pivot(n, 0);
    for (int p : pivot_col) is_pivot[static_cast<std::size_t>(p)] = 1;
    for (std::size_t j = 0; j < n; ++j)
        if (!is_pivot[j]) c.info_positions.push_back(static_cast<int>(j));
    c.H = Gf2Matrix(rank, n);
    for (std::size_t r = 0; r < rank; ++r)
        for (std::size_t j = 0; j < n; ++j) c.H.set(r, j, A.at(r, j));
    c.G = Gf2Matrix(static_cast<std::size_t>(c.k), n);
    for (int i = 0; i < c.k; ++i) {
        const auto col = static_cast<std::size_t>(c.info_positions[static_cast<std::size_t>(i)]);
        c.G.set(static_cast<std::size_t>(i), col, 1);
        for (std::size_t r = 0; r < rank; ++r)
            c.G.set(static_cast<std::size_t>(i), static_cast<std::size_t>(pivot_col[r]), A.at(r, col));
    }
    c.d = d > 0 ? d : min_distance(c);
    return c;
}

int min_distance(const LinearCodeSpec& c) {
    int best = c.n + 1;
    bool first = true;
    for_each_codeword(c, [&](const Packed& cw) {
        if (first) {
            first = false;
            return;
        }
        int w = 0;
        for (auto x : cw) w += std::popcount(x);
        best = std::min(best, w);
    });
    return best;
}

LinearCodeSpec trivial_code(int k) {
    return systematic_code(Gf2Matrix(static_cast<std::size_t>(k), 0), 1, "trivial_" + std::to_string(k));
}

LinearCodeSpec single_parity_code(int k) {
    Gf2Matrix P(static_cast<std::size_t>(k), 1);
    for (int i = 0; i < k; ++i) P.set(static_cast<std::size_t>(i), 0, 1);
    return systematic_code(P, 2, "parity_" + std::to_string(k + 1) + "_" + std::to_string(k));
}

LinearCodeSpec cyclic_code(std::uint64_t g, int n, int d, std::string name) {
    const int r = 63 - std::countl_zero(g);
    const int k = n - r;
    if (r < 0 || k < 1) throw Error(Errc::InvalidArgument, "generator degree must be below n");
    Gf2Matrix P(static_cast<std::size_t>(k), static_cast<std::size_t>(r));
    std::uint64_t rem = std::uint64_t{1} << r;  // x^r mod g
    rem ^= g;
    for (int j = 0; j < k; ++j) {
        for (int b = 0; b < r; ++b) P.set(static_cast<std::size_t>(j), static_cast<std::size_t>(b), static_cast<int>((rem >> b) & 1));
        rem <<= 1;
        if ((rem >> r) & 1) rem ^= g;
    }
    if (name.empty()) name = "cyclic_" + std::to_string(n) + "_" + std::to_string(k);
    return systematic_code(P, d, std::move(name));
}

LinearCodeSpec hamming_code(int k) {
    static constexpr std::uint64_t kPrimitive[] = {0, 0, 0b111, 0b1011, 0b10011, 0b100101, 0b1000011, 0b10001001, 0b100011101};
    for (int r = 2; r <= 8; ++r) {
        int full_k = (1 << r) - 1 - r;
        if (full_k >= k) {
            auto c = shorten(cyclic_code(kPrimitive[r], (1 << r) - 1, 3), full_k - k);
            c.name = "hamming_" + std::to_string(c.n) + "_" + std::to_string(k);
            return c;
        }
    }
    throw Error(Errc::Unsupported, "Hamming code too long");
}

LinearCodeSpec shorten(const LinearCodeSpec& c, int s) {
    if (s < 0 || s >= c.k) throw Error(Errc::InvalidArgument, "cannot shorten by " + std::to_string(s));
    auto P = parity_part(c);
    Gf2Matrix Q(static_cast<std::size_t>(c.k - s), P.cols());
    for (std::size_t i = 0; i < Q.rows(); ++i)
        for (std::size_t j = 0; j < Q.cols(); ++j) Q.set(i, j, P.at(i + static_cast<std::size_t>(s), j));
    return systematic_code(Q, c.d, c.name + "_short" + std::to_string(s));
}

LinearCodeSpec extend_parity(const LinearCodeSpec& c) {
    auto P = parity_part(c);
    Gf2Matrix Q(P.rows(), P.cols() + 1);
    for (std::size_t i = 0; i < P.rows(); ++i) {
        int par = 1;
        for (std::size_t j = 0; j < P.cols(); ++j) {
            Q.set(i, j, P.at(i, j));
            par ^= P.at(i, j);
        }
        Q.set(i, P.cols(), par);
    }
    return systematic_code(Q, c.d % 2 ? c.d + 1 : c.d, c.name + "_ext");
}

LinearCodeSpec repeat(const LinearCodeSpec& c, int times) {
    if (times < 1) throw Error(Errc::InvalidArgument, "repeat count must be positive");
    auto P = parity_part(c);
    const std::size_t k = P.rows(), r = P.cols();
    Gf2Matrix Q(k, r + static_cast<std::size_t>(times - 1) * (k + r));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < r; ++j) Q.set(i, j, P.at(i, j));
        for (int t = 1; t < times; ++t) {
            std::size_t off = r + static_cast<std::size_t>(t - 1) * (k + r);
            Q.set(i, off + i, 1);
            for (std::size_t j = 0; j < r; ++j) Q.set(i, off + k + j, P.at(i, j));
        }
    }
    return systematic_code(Q, c.d * times, c.name + "_x" + std::to_string(times));
}

LinearCodeSpec repeated_bch(int k, int times) {
    if (k < 1 || k > 16) throw Error(Errc::Unsupported, "repeated BCH needs 1 <= k <= 16");
    auto base = cyclic_code(0b1000111110101111, 31, 7, "bch_31_16");
    if (k < 16) base = shorten(base, 16 - k);
    return times == 1 ? base : repeat(base, times);
}

// ---- codes over F_p ----

PrimeCode prime_code(int k, int h, int r) {
    if (k < 1 || r < 1 || h < 1) throw Error(Errc::InvalidArgument, "prime code needs k, r, h >= 1");
    PrimeCode c;
    c.k = k;
    c.r = r;
    c.p = h + 1;
    while (!is_prime(c.p) || c.p < k + r) ++c.p;
    c.width = std::bit_width(static_cast<unsigned>(c.p - 1));
    c.C.assign(static_cast<std::size_t>(k), std::vector<int>(static_cast<std::size_t>(r)));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < r; ++j) c.C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = inv_mod(i - (k + j), c.p);
    return c;
}

BitString PrimeCode::encode(const BitString& data) const {
    if (static_cast<int>(data.size()) != k) throw Error(Errc::LengthMismatch, "data length");
    BitString out = data;
    for (int j = 0; j < r; ++j) {
        long long v = 0;
        for (int i = 0; i < k; ++i)
            if (data[static_cast<std::size_t>(i)]) v += C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        int sym = mod(v, p);
        std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
        for (int b = 0; b < width; ++b) bits[static_cast<std::size_t>(b)] = static_cast<std::uint8_t>((sym >> (width - 1 - b)) & 1);
        out += BitString(std::move(bits));
    }
    return out;
}

std::vector<int> PrimeCode::decode_sums(const std::vector<std::optional<int>>& sums, int hbar) const {
    if (static_cast<int>(sums.size()) != length()) throw Error(Errc::LengthMismatch, "sum vector length");
    std::vector<std::optional<int>> parity(static_cast<std::size_t>(r));
    int erased = 0;
    for (int j = 0; j < r; ++j) {
        long long v = 0;
        bool ok = true;
        for (int b = 0; b < width && ok; ++b) {
            const auto& s = sums[static_cast<std::size_t>(k + j * width + b)];
            if (!s)
                ok = false;
            else
                v += static_cast<long long>(*s) << (width - 1 - b);
        }
        if (ok)
            parity[static_cast<std::size_t>(j)] = mod(v, p);
        else
            ++erased;
    }
    std::vector<int> unknown;
    for (int i = 0; i < k; ++i) {
        const auto& s = sums[static_cast<std::size_t>(i)];
        if (!s)
            unknown.push_back(i);
        else if (*s < 0 || *s > hbar)
            throw Error(Errc::DecodeFailure, "data sum out of range");
    }
    erased += static_cast<int>(unknown.size());
    if (erased > r) throw Error(Errc::TooManyErasures, std::to_string(erased) + " symbols erased, code corrects " + std::to_string(r));

    // rows: known parity checks; columns: unknown data sums, then the right-hand side
    const std::size_t u = unknown.size();
    std::vector<std::vector<int>> M;
    for (int j = 0; j < r; ++j) {
        if (!parity[static_cast<std::size_t>(j)]) continue;
        std::vector<int> row(u + 1);
        long long rhs = *parity[static_cast<std::size_t>(j)];
        std::size_t ui = 0;
        for (int i = 0; i < k; ++i) {
            int coef = C[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (ui < u && unknown[ui] == i)
                row[ui++] = coef;
            else
                rhs -= static_cast<long long>(coef) * *sums[static_cast<std::size_t>(i)];
        }
        row[u] = mod(rhs, p);
        M.push_back(std::move(row));
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < u; ++col) {
        std::size_t pr = rank;
        while (pr < M.size() && M[pr][col] == 0) ++pr;
        if (pr == M.size()) throw Error(Errc::TooManyErasures, "parity checks do not pin the erased sums");
        std::swap(M[pr], M[rank]);
        int iv = inv_mod(M[rank][col], p);
        for (auto& x : M[rank]) x = static_cast<int>(static_cast<long long>(x) * iv % p);
        for (std::size_t rr = 0; rr < M.size(); ++rr) {
            if (rr == rank || M[rr][col] == 0) continue;
            long long f = M[rr][col];
            for (std::size_t j = 0; j <= u; ++j) M[rr][j] = mod(M[rr][j] - f * M[rank][j], p);
        }
        ++rank;
    }
    for (std::size_t rr = rank; rr < M.size(); ++rr)
        if (M[rr][u] != 0) throw Error(Errc::DecodeFailure, "parity sums disagree");
    std::vector<int> out(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        if (sums[static_cast<std::size_t>(i)]) out[static_cast<std::size_t>(i)] = *sums[static_cast<std::size_t>(i)];
    for (std::size_t j = 0; j < u; ++j) {
        int v = M[j][u];
        if (v > hbar) throw Error(Errc::DecodeFailure, "recovered sum out of range");
        out[static_cast<std::size_t>(unknown[j])] = v;
    }
    return out;
}

// ---- schemes ----

std::string scheme_name(Scheme s) {
    switch (s) {
        case Scheme::OneStep: return "one-step";
        case Scheme::OneStepNonbinary: return "one-step-nonbinary";
        case Scheme::TwoStep: return "two-step";
        case Scheme::Integral: return "integral";
    }
    return "?";
}

Scheme parse_scheme(std::string_view s) {
    for (auto k : {Scheme::OneStep, Scheme::OneStepNonbinary, Scheme::TwoStep, Scheme::Integral})
        if (s == scheme_name(k)) return k;
    throw Error(Errc::ParseError, "unknown scheme " + std::string(s));
}

namespace {

void set_layout(EccScheme& sc, std::vector<Segment> segs) {
    sc.layout.n = sc.n;
    sc.layout.pad = sc.inner.pad;
    sc.layout.block = sc.inner.block;
    sc.layout.N = sc.N;
    sc.layout.segments = std::move(segs);
}

void set_inner(EccScheme& sc, int data, int total) {
    const int pad = sc.inner.pad;
    sc.inner_segments = {{"pad", 0, pad}, {"data", pad, data}, {"syndrome", pad + data, total - data}};
}

int block_of(int m) { return isqrt_exact(next_square(m)); }

}  // namespace

EccScheme one_step_scheme(int n, int t, const LinearCodeSpec& code) {
    if (code.k != n) throw Error(Errc::LengthMismatch, "code dimension " + std::to_string(code.k) + " != n=" + std::to_string(n));
    EccScheme sc;
    sc.kind = Scheme::OneStep;
    sc.n = n;
    sc.t = t;
    sc.code = code;
    sc.inner = mc_params(code.n);
    if (code.d - 1 < t * (sc.inner.block + 1))
        throw Error(Errc::CapabilityTooSmall, "d-1=" + std::to_string(code.d - 1) + " < t(sqrt m + 1)=" + std::to_string(t * (sc.inner.block + 1)));
    sc.lead = sc.inner.lead;
    sc.N = sc.inner.N;
    const int k = sc.inner.block;
    set_layout(sc, {{"lead", 0, sc.lead}, {"r", sc.lead, k}, {"u", sc.lead + k, k * k}});
    if (code.systematic())
        set_inner(sc, code.k, code.n);
    else
        sc.inner_segments = {{"pad", 0, sc.inner.pad}, {"code", sc.inner.pad, code.n}};
    return sc;
}

EccScheme one_step_nonbinary_scheme(int n, int t, int h) {
    // grow r until it covers t(sqrt m + 1) symbol erasures at the resulting length
    int r = std::max(1, t);
    PrimeCode pc;
    for (int iter = 0; iter < 64; ++iter) {
        pc = prime_code(n, h, r);
        int need = t * (block_of(pc.length()) + 1);
        if (r >= need) break;
        r = need;
    }
    EccScheme sc;
    sc.kind = Scheme::OneStepNonbinary;
    sc.n = n;
    sc.t = t;
    sc.prime = pc;
    sc.inner = mc_params(pc.length());
    if (pc.r < t * (sc.inner.block + 1)) throw Error(Errc::CapabilityTooSmall, "prime code too short");
    sc.lead = sc.inner.lead;
    sc.N = sc.inner.N;
    const int k = sc.inner.block;
    set_layout(sc, {{"lead", 0, sc.lead}, {"r", sc.lead, k}, {"u", sc.lead + k, k * k}});
    set_inner(sc, n, pc.length());
    return sc;
}

EccScheme two_step_scheme(int n, int t, const LinearCodeSpec& data, const LinearCodeSpec& flag, bool substitution) {
    if (data.k != n) throw Error(Errc::LengthMismatch, "data code dimension " + std::to_string(data.k) + " != n=" + std::to_string(n));
    EccScheme sc;
    sc.kind = Scheme::TwoStep;
    sc.n = n;
    sc.t = t;
    sc.code = data;
    sc.flag = flag;
    sc.substitution = substitution;
    sc.inner = mc_params(data.n);
    const int k = sc.inner.block;
    if (flag.k != k) throw Error(Errc::LengthMismatch, "flag code dimension " + std::to_string(flag.k) + " != sqrt m1=" + std::to_string(k));
    const int need = substitution ? 4 * t + 1 : t + 1;
    if (data.d < need || flag.d < need)
        throw Error(Errc::CapabilityTooSmall, "codes need d >= " + std::to_string(need));
    sc.z_pairs = flag.n - flag.k;
    const int extra = sc.z_pairs > 0 ? 1 : 0;
    sc.lead = sc.inner.lead + extra;
    sc.N = sc.inner.N + 2 * sc.z_pairs + 2 * extra;
    set_layout(sc, {{"lead", 0, sc.lead},
                    {"r", sc.lead, k},
                    {"z", sc.lead + k, 2 * sc.z_pairs},
                    {"u", sc.lead + k + 2 * sc.z_pairs, k * k}});
    set_inner(sc, data.k, data.n);
    return sc;
}

EccScheme integral_scheme(int n, int t, const LinearCodeSpec& code) {
    EccScheme sc;
    sc.kind = Scheme::Integral;
    sc.n = n;
    sc.t = t;
    sc.code = code;
    sc.inner = mc_params(n);
    const int k = sc.inner.block;
    if (code.k != k + k * k) throw Error(Errc::LengthMismatch, "integral code must have dimension " + std::to_string(k + k * k));
    if (code.d < t / 2 + 1) throw Error(Errc::CapabilityTooSmall, "integral code needs d >= " + std::to_string(t / 2 + 1));
    sc.z_pairs = code.n - code.k;
    const int extra = sc.z_pairs > 0 ? 1 : 0;
    sc.lead = sc.inner.lead + extra;
    sc.N = sc.inner.N + 2 * sc.z_pairs + 2 * extra;
    set_layout(sc, {{"lead", 0, sc.lead}, {"r", sc.lead, k}, {"u", sc.lead + k, k * k}, {"R", sc.lead + k + k * k, 2 * sc.z_pairs}});
    sc.inner_segments = {{"pad", 0, sc.inner.pad}, {"data", sc.inner.pad, n}};
    return sc;
}

namespace {

LinearCodeSpec flag_code_for(int k, int need) {
    if (need <= 1) return trivial_code(k);
    if (need == 2) return single_parity_code(k);
    if (need == 3) return hamming_code(k);
    if (need == 4) return extend_parity(hamming_code(k));
    return repeated_bch(k, (need + 6) / 7);
}

}  // namespace

EccScheme default_scheme(Scheme kind, int n, int t, int h, bool substitution) {
    if (t < 0) throw Error(Errc::InvalidArgument, "t must be non-negative");
    switch (kind) {
        case Scheme::OneStep: {
            if (t == 0) return one_step_scheme(n, 0, trivial_code(n));
            for (int R = 1; R <= 32; ++R) {
                auto c = repeated_bch(n, R);
                if (c.d - 1 >= t * (block_of(c.n) + 1)) return one_step_scheme(n, t, c);
            }
            throw Error(Errc::Unsupported, "no shipped one-step code for t=" + std::to_string(t));
        }
        case Scheme::OneStepNonbinary: return one_step_nonbinary_scheme(n, t, h);
        case Scheme::TwoStep: {
            const int need = substitution ? 4 * t + 1 : t + 1;
            if (t == 0) return two_step_scheme(n, 0, trivial_code(n), trivial_code(mc_params(n).block), substitution);
            // a block length divisible by 4 keeps every term of the length formula integral
            for (int R = 1; R <= 32; ++R) {
                auto data = repeated_bch(n, R);
                if (data.d < need || block_of(data.n) % 4 != 0) continue;
                return two_step_scheme(n, t, data, flag_code_for(block_of(data.n), need), substitution);
            }
            throw Error(Errc::Unsupported, "no shipped two-step code for t=" + std::to_string(t));
        }
        case Scheme::Integral: {
            const int k = mc_params(n).block;
            return integral_scheme(n, t, flag_code_for(k + k * k, t / 2 + 1));
        }
    }
    throw Error(Errc::InvalidArgument, "unknown scheme");
}

// ---- integral ----

BitString integral(const BitString& s) {
    auto b = s.bits();
    for (std::size_t i = 1; i < b.size(); ++i) b[i] ^= b[i - 1];
    return BitString(std::move(b));
}

BitString derivative(const BitString& I) {
    auto b = I.bits();
    for (std::size_t i = b.size(); i-- > 1;) b[i] ^= b[i - 1];
    return BitString(std::move(b));
}

BitString integral_redundancy(const BitString& rp, int I1) {
    const std::size_t rho = rp.size();
    std::vector<std::uint8_t> R(2 * rho);
    if (rho == 0) return BitString(std::move(R));
    R[0] = static_cast<std::uint8_t>(rp[0] ^ (I1 & 1));
    R[1] = R[0] ^ 1;
    for (std::size_t i = 1; i < rho; ++i) {
        R[2 * i] = static_cast<std::uint8_t>(rp[i - 1] ^ rp[i] ^ R[2 * i - 1]);
        R[2 * i + 1] = R[2 * i] ^ 1;
    }
    return BitString(std::move(R));
}

// ---- encoding ----

EccCodeword ecc_encode(const BitString& s, const EccScheme& sc) {
    if (static_cast<int>(s.size()) != sc.n) throw Error(Errc::LengthMismatch, "source length " + std::to_string(s.size()) + " != n=" + std::to_string(sc.n));
    BitString v = BitString::ones(static_cast<std::size_t>(sc.lead));
    switch (sc.kind) {
        case Scheme::OneStep:
        case Scheme::OneStepNonbinary: {
            auto bal = block_balance(sc.kind == Scheme::OneStep ? sc.code.encode(s) : sc.prime->encode(s));
            v += bal.r + bal.u;
            break;
        }
        case Scheme::TwoStep: {
            auto bal = block_balance(sc.code.encode(s));
            auto rp = sc.flag->redundancy_of(sc.flag->encode(bal.r));
            std::vector<std::uint8_t> z;
            for (std::size_t i = 0; i < rp.size(); ++i) {
                z.push_back(rp[i]);
                z.push_back(rp[i] ^ 1);
            }
            v += bal.r + BitString(std::move(z)) + bal.u;
            break;
        }
        case Scheme::Integral: {
            auto bal = block_balance(s);
            BitString x = bal.r + bal.u;
            BitString I = integral(x);
            auto rp = sc.code.redundancy_of(sc.code.encode(I));
            v += x + integral_redundancy(rp, I[0]);
            break;
        }
    }
    EccCodeword cw;
    cw.scheme = sc.kind;
    cw.source = s;
    cw.bits = dyck_tail(v, sc.N);
    cw.layout = sc.layout;
    const int vlen = static_cast<int>(v.size());
    const int tail1 = sc.N / 2 - v.weight();
    cw.layout.segments.push_back({"tail1", vlen, tail1});
    cw.layout.segments.push_back({"tail0", vlen + tail1, sc.N - vlen - tail1});
    return cw;
}

EccCodeword one_step_encode(const BitString& s, int t, const LinearCodeSpec& code) {
    return ecc_encode(s, one_step_scheme(static_cast<int>(s.size()), t, code));
}

EccCodeword two_step_encode(const BitString& s, int t, const LinearCodeSpec& data, const LinearCodeSpec& flag) {
    return ecc_encode(s, two_step_scheme(static_cast<int>(s.size()), t, data, flag));
}

EccCodeword integral_encode(const BitString& s, int t, const LinearCodeSpec& code) {
    return ecc_encode(s, integral_scheme(static_cast<int>(s.size()), t, code));
}

double two_step_length_formula(const EccScheme& s) {
    if (s.kind != Scheme::TwoStep) throw Error(Errc::InvalidArgument, "not a two-step scheme");
    const double k = s.inner.block;
    return k * k + 8.5 * k + 2.0 * (s.flag->n - k) + 2.0;
}

// ---- decoding ----

namespace {

using Opt = std::optional<int>;

ErasureWord mod2(const PartialSumString& inc, int offset, int len) {
    ErasureWord out(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i)
        if (const auto& v = inc[static_cast<std::size_t>(offset + i)]) out[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(*v & 1);
    return out;
}

// the padding of s' is zero in every codeword, so a visible pad bit of u reveals its block flag
void flags_from_pad(const ErasureWord& u, ErasureWord& r, int pad, int k) {
    for (int p = 0; p < pad; ++p) {
        auto j = static_cast<std::size_t>(p / k);
        if (!r[j] && u[static_cast<std::size_t>(p)]) r[j] = u[static_cast<std::size_t>(p)];
    }
}

// mod-2 padded s' from u and r; padding forced to zero
ErasureWord unflip(const ErasureWord& u, const ErasureWord& r, int pad, int k, bool strict_pad) {
    ErasureWord out(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        const auto& f = r[i / static_cast<std::size_t>(k)];
        if (u[i] && f) out[i] = static_cast<std::uint8_t>(*u[i] ^ *f);
    }
    for (int p = 0; p < pad; ++p) {
        auto& b = out[static_cast<std::size_t>(p)];
        if (strict_pad && b && *b) throw Error(Errc::DecodeFailure, "nonzero padding");
        b = 0;
    }
    return out;
}

ErasureWord drop_pad(const ErasureWord& w, int pad) { return ErasureWord(w.begin() + pad, w.end()); }

std::vector<BitString> encoded(const std::vector<int>& idx, const BhCodebook& cb, const EccScheme& sc) {
    std::vector<BitString> out;
    for (int i : idx) out.push_back(ecc_encode(cb.strings[static_cast<std::size_t>(i)], sc).bits);
    return out;
}

// compositions of the decoded pool that the observed pool lacks
int missing_from(const CompositionMultiset& observed, const CompositionMultiset& full) {
    int missing = 0;
    for (const auto& [c, m] : full.entries()) missing += std::max(0, m - observed.count(c));
    return missing;
}

EccDecode finish(std::vector<int> idx, const CompositionMultiset& observed, const BhCodebook& cb, const EccScheme& sc) {
    std::sort(idx.begin(), idx.end());
    auto full = pool(encoded(idx, cb, sc));
    if (sc.substitution) {
        if (full.size() != observed.size() || missing_from(observed, full) > sc.t)
            throw Error(Errc::DecodeFailure, "decoded set is more than t substitutions from the pool");
    } else if (!full.contains(observed)) {
        throw Error(Errc::DecodeFailure, "decoded set does not explain the pool");
    }
    EccDecode out;
    out.indices = idx;
    for (int i : idx) out.sources.push_back(cb.strings[static_cast<std::size_t>(i)]);
    return out;
}

// n_i from each side separately, using only lengths whose split is forced; disagreements erase
std::vector<Opt> substitution_totals(const CompositionMultiset& pool, int N, int hbar, int W) {
    std::vector<Opt> pre(static_cast<std::size_t>(N) + 1), suf(static_cast<std::size_t>(N) + 1);
    for (int i = 1; i <= N; ++i) {
        int a = 0, b = 0, c = 0, sp = 0, ss = 0;
        for (const auto& comp : pool.of_length(i)) {
            if (2 * comp.ones > i) {
                ++a;
                sp += comp.ones;
            } else if (2 * comp.ones < i) {
                ++b;
                ss += comp.ones;
            } else {
                ++c;
            }
        }
        if (a + b + c != 2 * hbar || a > hbar || b > hbar) continue;
        int ties_p = hbar - a, ties_s = hbar - b;
        pre[static_cast<std::size_t>(i)] = sp + ties_p * (i / 2);
        suf[static_cast<std::size_t>(i)] = ss + ties_s * (i / 2);
    }
    std::vector<Opt> n(static_cast<std::size_t>(N) + 1);
    n[0] = 0;
    n[static_cast<std::size_t>(N)] = W;
    for (int i = 1; i < N; ++i) {
        Opt a = pre[static_cast<std::size_t>(i)];
        Opt b;
        if (suf[static_cast<std::size_t>(N - i)]) b = W - *suf[static_cast<std::size_t>(N - i)];
        if (a && b && *a != *b) continue;
        n[static_cast<std::size_t>(i)] = a ? a : b;
    }
    return n;
}

EccDecode decode_two_step(const PartialSumString& inc, const CompositionMultiset& observed, int hbar,
                          const BhCodebook& cb, const EccScheme& sc, std::uint64_t budget) {
    const auto& L = sc.layout;
    const int k = sc.inner.block, pad = sc.inner.pad;
    const auto& flag = *sc.flag;
    auto r2 = mod2(inc, L.segment("r").offset, k);
    auto u2 = mod2(inc, L.segment("u").offset, k * k);
    if (!sc.substitution) flags_from_pad(u2, r2, pad, k);

    ErasureWord fw(static_cast<std::size_t>(flag.n));
    std::vector<std::uint8_t> is_info(static_cast<std::size_t>(flag.n), 0);
    for (int j = 0; j < flag.k; ++j) {
        auto p = static_cast<std::size_t>(flag.info_positions[static_cast<std::size_t>(j)]);
        fw[p] = r2[static_cast<std::size_t>(j)];
        is_info[p] = 1;
    }
    const int zoff = L.segment("z").offset;
    std::size_t slot = 0;
    for (int i = 0; i < sc.z_pairs; ++i) {
        while (is_info[slot]) ++slot;
        const auto& a = inc[static_cast<std::size_t>(zoff + 2 * i)];
        const auto& b = inc[static_cast<std::size_t>(zoff + 2 * i + 1)];
        if (a && b && *a + *b != hbar) {
            if (!sc.substitution) throw Error(Errc::DecodeFailure, "z pair is not complementary");
        } else if (a) {
            fw[slot] = static_cast<std::uint8_t>(*a & 1);
        } else if (b) {
            fw[slot] = static_cast<std::uint8_t>((hbar - *b) & 1);
        }
        ++slot;
    }
    BitString rcw = sc.substitution ? flag.decode_errors_erasures(fw) : flag.decode_erasures(fw);
    BitString r = flag.data_of(rcw);
    ErasureWord rk(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) rk[static_cast<std::size_t>(j)] = r[static_cast<std::size_t>(j)];

    auto sword = drop_pad(unflip(u2, rk, pad, k, !sc.substitution), pad);
    BitString cw = sc.substitution ? sc.code.decode_errors_erasures(sword) : sc.code.decode_erasures(sword);
    return finish(invert_xor(cb, sc.code.data_of(cw), hbar, budget), observed, cb, sc);
}

EccDecode decode_integral(const std::vector<Opt>& totals, const CompositionMultiset& observed, int hbar,
                          const BhCodebook& cb, const EccScheme& sc, std::uint64_t budget) {
    const int k = sc.inner.block, pad = sc.inner.pad, L = sc.lead;
    const int xlen = k + k * k, rho = sc.z_pairs;
    const auto& code = sc.code;
    ErasureWord X(static_cast<std::size_t>(xlen + 2 * rho));
    for (int j = 1; j <= xlen + 2 * rho; ++j)
        if (const auto& v = totals[static_cast<std::size_t>(L + j)]) X[static_cast<std::size_t>(j - 1)] = static_cast<std::uint8_t>((*v - hbar * L) & 1);

    std::vector<std::uint8_t> is_info(static_cast<std::size_t>(code.n), 0);
    for (int p : code.info_positions) is_info[static_cast<std::size_t>(p)] = 1;

    // the odd redundancy positions carry R'_i + I_1 + I_last; try both values of that constant
    std::vector<BitString> found;
    bool undetermined = false;
    for (int c = 0; c <= 1; ++c) {
        ErasureWord w(static_cast<std::size_t>(code.n));
        for (int j = 0; j < xlen; ++j) w[static_cast<std::size_t>(code.info_positions[static_cast<std::size_t>(j)])] = X[static_cast<std::size_t>(j)];
        std::size_t slot = 0;
        for (int i = 0; i < rho; ++i) {
            while (is_info[slot]) ++slot;
            if (const auto& b = X[static_cast<std::size_t>(xlen + 2 * i)]) w[slot] = static_cast<std::uint8_t>(*b ^ c);
            ++slot;
        }
        BitString cw;
        try {
            cw = code.decode_erasures(w);
        } catch (const Error& e) {
            if (e.code() == Errc::TooManyErasures) undetermined = true;
            if (e.code() == Errc::TooManyErasures || e.code() == Errc::DecodeFailure) continue;
            throw;
        }
        BitString I = code.data_of(cw);
        const int last = I[static_cast<std::size_t>(xlen - 1)];
        if ((I[0] ^ last) != c) continue;
        bool ok = true;
        for (int i = 1; i <= rho && ok; ++i)
            if (const auto& b = X[static_cast<std::size_t>(xlen + 2 * i - 1)]) ok = *b == ((last ^ (hbar * i)) & 1);
        if (ok && std::find(found.begin(), found.end(), I) == found.end()) found.push_back(I);
    }
    if (found.empty()) {
        if (undetermined) throw Error(Errc::TooManyErasures, "integral word has too many erasures");
        throw Error(Errc::DecodeFailure, "no integral codeword fits the pool");
    }
    std::vector<EccDecode> good;
    for (const auto& I : found) {
        BitString x = derivative(I);
        BitString s2 = unbalance(x.slice(static_cast<std::size_t>(k), static_cast<std::size_t>(k * k)), x.slice(0, static_cast<std::size_t>(k)));
        if (s2.slice(0, static_cast<std::size_t>(pad)).weight() != 0) continue;
        try {
            good.push_back(finish(invert_xor(cb, s2.slice(static_cast<std::size_t>(pad), static_cast<std::size_t>(sc.n)), hbar, budget), observed, cb, sc));
        } catch (const Error& e) {
            if (found.size() == 1) throw;
        }
    }
    if (good.empty()) throw Error(Errc::DecodeFailure, "no candidate explains the pool");
    if (good.size() > 1) throw Error(Errc::AmbiguousSolution, "two integral candidates explain the pool");
    return good.front();
}

EccDecode decode_nonbinary(const PartialSumString& inc, const CompositionMultiset& observed, int hbar,
                           const BhCodebook& cb, const EccScheme& sc, std::uint64_t budget) {
    const int k = sc.inner.block, pad = sc.inner.pad;
    const int roff = sc.layout.segment("r").offset, uoff = sc.layout.segment("u").offset;
    std::vector<Opt> f(static_cast<std::size_t>(k)), u(static_cast<std::size_t>(k * k));
    for (int j = 0; j < k; ++j) f[static_cast<std::size_t>(j)] = inc[static_cast<std::size_t>(roff + j)];
    for (int i = 0; i < k * k; ++i) u[static_cast<std::size_t>(i)] = inc[static_cast<std::size_t>(uoff + i)];
    for (int p = 0; p < pad; ++p)  // every flipped string shows a 1 in the padding
        if (!f[static_cast<std::size_t>(p / k)] && u[static_cast<std::size_t>(p)]) f[static_cast<std::size_t>(p / k)] = u[static_cast<std::size_t>(p)];
    std::vector<Opt> sums;
    for (int i = pad; i < k * k; ++i) {
        const auto& fl = f[static_cast<std::size_t>(i / k)];
        const auto& ui = u[static_cast<std::size_t>(i)];
        Opt v;
        if (fl && ui) {
            if (*fl == 0)
                v = *ui;
            else if (*fl == hbar)
                v = hbar - *ui;
            else if (*ui == 0)
                v = *fl;
            else if (*ui == hbar)
                v = hbar - *fl;
        }
        sums.push_back(v);
    }
    auto data = sc.prime->decode_sums(sums, hbar);
    SumVector target(data.begin(), data.end());
    auto strat = cb.spec ? InvertStrategy::Syndrome : InvertStrategy::Exhaustive;
    std::vector<int> idx;
    for (const auto& s : invert_sum(cb, target, hbar, strat, budget)) idx.push_back(cb.index_of(s));
    return finish(idx, observed, cb, sc);
}

}  // namespace

EccDecode ecc_decode(const CompositionMultiset& observed, int hbar, const BhCodebook& cb, const EccScheme& sc,
                     std::uint64_t budget) {
    if (cb.n != sc.n) throw Error(Errc::LengthMismatch, "codebook length differs from the scheme");
    if (hbar < 0 || hbar > cb.h) throw Error(Errc::InvalidArgument, "hbar out of range");
    if (observed.size() > static_cast<std::size_t>(2 * sc.N * hbar))
        throw Error(Errc::InconsistentPoolSize, "pool larger than 2N hbar");
    if (hbar == 0) return {};
    if (sc.kind != Scheme::OneStepNonbinary && !cb.spec) throw Error(Errc::Unsupported, "mod-2 decoding needs a parity-check-backed codebook");
    const int W = hbar * sc.N / 2;

    std::vector<Opt> totals = sc.substitution ? substitution_totals(observed, sc.N, hbar, W)
                                              : prefix_totals(observed, sc.N, hbar, W);
    PartialSumString inc = increments(totals);
    if (sc.substitution)
        for (auto& v : inc)
            if (v && (*v < 0 || *v > hbar)) v.reset();
    for (int i = 0; i < sc.lead; ++i) {
        const auto& v = inc[static_cast<std::size_t>(i)];
        if (v && *v != hbar && !sc.substitution) throw Error(Errc::DecodeFailure, "leading run is not all ones");
    }

    switch (sc.kind) {
        case Scheme::OneStep: {
            const int k = sc.inner.block, pad = sc.inner.pad;
            auto r2 = mod2(inc, sc.layout.segment("r").offset, k);
            auto u2 = mod2(inc, sc.layout.segment("u").offset, k * k);
            flags_from_pad(u2, r2, pad, k);
            auto cw = sc.code.decode_erasures(drop_pad(unflip(u2, r2, pad, k, true), pad));
            return finish(invert_xor(cb, sc.code.data_of(cw), hbar, budget), observed, cb, sc);
        }
        case Scheme::OneStepNonbinary: return decode_nonbinary(inc, observed, hbar, cb, sc, budget);
        case Scheme::TwoStep: return decode_two_step(inc, observed, hbar, cb, sc, budget);
        case Scheme::Integral: return decode_integral(totals, observed, hbar, cb, sc, budget);
    }
    throw Error(Errc::InvalidArgument, "unknown scheme");
}

}  // namespace mscodec
