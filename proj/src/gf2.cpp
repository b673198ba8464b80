#include "mscodec/gf2.hpp"

#include <utility>

namespace mscodec {

Gf2Matrix Gf2Matrix::from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) return {};
    Gf2Matrix m(rows.size(), rows.front().size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != m.cols_) throw Error(Errc::ParseError, "ragged matrix rows");
        BitString b(rows[r]);
        for (std::size_t c = 0; c < m.cols_; ++c) m.set(r, c, b[c]);
    }
    return m;
}

BitString Gf2Matrix::column(std::size_t c) const {
    std::vector<std::uint8_t> v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) v[r] = at(r, c);
    return BitString(std::move(v));
}

BitString Gf2Matrix::row(std::size_t r) const {
    return BitString(std::vector<std::uint8_t>(a_.begin() + static_cast<long>(r * cols_),
                                               a_.begin() + static_cast<long>((r + 1) * cols_)));
}

std::vector<std::string> Gf2Matrix::row_strings() const {
    std::vector<std::string> out;
    for (std::size_t r = 0; r < rows_; ++r) out.push_back(row(r).str());
    return out;
}

BitString Gf2Matrix::multiply(const BitString& x) const {
    if (x.size() != cols_) throw Error(Errc::LengthMismatch, "matrix-vector size mismatch");
    std::vector<std::uint8_t> y(rows_, 0);
    for (std::size_t r = 0; r < rows_; ++r) {
        std::uint8_t acc = 0;
        for (std::size_t c = 0; c < cols_; ++c) acc ^= static_cast<std::uint8_t>(at(r, c) & x[c]);
        y[r] = acc;
    }
    return BitString(std::move(y));
}

std::size_t Gf2Matrix::rank() const {
    Gf2Matrix m = *this;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols_ && rank < rows_; ++c) {
        std::size_t p = rank;
        while (p < rows_ && !m.at(p, c)) ++p;
        if (p == rows_) continue;
        for (std::size_t k = 0; k < cols_; ++k) std::swap(m.a_[p * cols_ + k], m.a_[rank * cols_ + k]);
        for (std::size_t r = 0; r < rows_; ++r)
            if (r != rank && m.at(r, c))
                for (std::size_t k = 0; k < cols_; ++k) m.a_[r * cols_ + k] ^= m.a_[rank * cols_ + k];
        ++rank;
    }
    return rank;
}

std::optional<Gf2Solution> gf2_solve(Gf2Matrix a, std::vector<std::uint8_t> b) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && !a.at(p, c)) ++p;
        if (p == rows) continue;
        if (p != rank) {
            for (std::size_t k = 0; k < cols; ++k) {
                int t = a.at(p, k);
                a.set(p, k, a.at(rank, k));
                a.set(rank, k, t);
            }
            std::swap(b[p], b[rank]);
        }
        for (std::size_t r = 0; r < rows; ++r)
            if (r != rank && a.at(r, c)) {
                for (std::size_t k = c; k < cols; ++k) a.set(r, k, a.at(r, k) ^ a.at(rank, k));
                b[r] ^= b[rank];
            }
        pivot_col.push_back(c);
        ++rank;
    }
    for (std::size_t r = rank; r < rows; ++r)
        if (b[r]) return std::nullopt;
    Gf2Solution sol;
    sol.x.assign(cols, 0);
    for (std::size_t r = 0; r < rank; ++r) sol.x[pivot_col[r]] = b[r];
    sol.unique = rank == cols;
    return sol;
}

}  // namespace mscodec
