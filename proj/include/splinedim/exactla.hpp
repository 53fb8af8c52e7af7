#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace splinedim {

// Exact arithmetic carrier types. mpq_class keeps values canonical
// (positive denominator, reduced fraction), which is exactly the
// invariant we need for every rank computation downstream.
using BigInt = mpz_class;
using Rational = mpq_class;

/// Parses "p/q", "p", or "-p/q" into a canonical rational.
Rational rational_from_string(const std::string& text);

std::string to_string(const Rational& value);

/// Dense row-major matrix of exact rationals.
class RationalMatrix {
  public:
    RationalMatrix() : rows_(0), cols_(0) {}
    RationalMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), entries_(rows * cols) {}

    static RationalMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rational& operator()(std::size_t i, std::size_t j) {
        return entries_[i * cols_ + j];
    }
    const Rational& operator()(std::size_t i, std::size_t j) const {
        return entries_[i * cols_ + j];
    }

    RationalMatrix transposed() const;

    /// Appends the rows of `other` below this matrix (column counts must match,
    /// except that stacking onto an empty matrix adopts the new width).
    void append_rows(const RationalMatrix& other);

    /// Matrix product this * rhs.
    RationalMatrix operator*(const RationalMatrix& rhs) const;

    bool operator==(const RationalMatrix& rhs) const {
        return rows_ == rhs.rows_ && cols_ == rhs.cols_ && entries_ == rhs.entries_;
    }

    bool is_zero() const;

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Rational> entries_;
};

/// Exact rank over the rationals. Fraction-free elimination on the
/// denominator-cleared integer matrix; pivots are chosen as the first
/// nonzero entry in column order so results are reproducible.
std::size_t rank(const RationalMatrix& m);

/// cols - rank.
std::size_t kernel_dim(const RationalMatrix& m);

/// Reduced row echelon form together with the pivot columns, used to pick
/// deterministic quotient bases (non-pivot monomials).
struct Rref {
    RationalMatrix mat;                // only the nonzero rows are kept
    std::vector<std::size_t> pivots;   // pivot column per kept row
};

Rref reduced_row_echelon(const RationalMatrix& m);

}  // namespace splinedim
