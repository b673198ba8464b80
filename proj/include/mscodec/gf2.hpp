#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "mscodec/core.hpp"

namespace mscodec {

// Dense binary matrix, row major.
class Gf2Matrix {
public:
    Gf2Matrix() = default;
    Gf2Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
    static Gf2Matrix from_rows(const std::vector<std::string>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int v) { a_[r * cols_ + c] = static_cast<std::uint8_t>(v & 1); }

    BitString column(std::size_t c) const;
    BitString row(std::size_t r) const;
    std::vector<std::string> row_strings() const;
    // H x over GF(2)
    BitString multiply(const BitString& x) const;
    std::size_t rank() const;

    bool operator==(const Gf2Matrix&) const = default;

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::uint8_t> a_;
};

// Solves A x = b over GF(2). Returns nullopt when inconsistent; `unique`
// reports whether the solution space is a single point.
struct Gf2Solution {
    std::vector<std::uint8_t> x;
    bool unique = false;
};
std::optional<Gf2Solution> gf2_solve(Gf2Matrix a, std::vector<std::uint8_t> b);

}  // namespace mscodec
