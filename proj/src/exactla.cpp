#include "splinedim/exactla.hpp"

#include <algorithm>

namespace splinedim {

Rational rational_from_string(const std::string& text) {
    Rational value;
    if (value.set_str(text, 10) != 0) {
        throw std::invalid_argument("not a rational: '" + text + "'");
    }
    if (value.get_den() == 0) {
        throw std::invalid_argument("zero denominator: '" + text + "'");
    }
    value.canonicalize();
    return value;
}

std::string to_string(const Rational& value) {
    return value.get_str();
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
}

RationalMatrix RationalMatrix::transposed() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

void RationalMatrix::append_rows(const RationalMatrix& other) {
    if (rows_ == 0 && cols_ == 0) {
        *this = other;
        return;
    }
    if (other.rows_ == 0) return;
    if (other.cols_ != cols_) {
        throw std::invalid_argument("append_rows: column mismatch");
    }
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
    rows_ += other.rows_;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& rhs) const {
    if (cols_ != rhs.rows_) throw std::invalid_argument("matmul: shape mismatch");
    RationalMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const Rational& a = (*this)(i, k);
            if (a == 0) continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j) {
                const Rational& b = rhs(k, j);
                if (b == 0) continue;
                out(i, j) += a * b;
            }
        }
    }
    return out;
}

bool RationalMatrix::is_zero() const {
    for (const Rational& e : entries_)
        if (e != 0) return false;
    return true;
}

namespace {

// Clears denominators row by row and strips the row content, so the
// elimination below works on small coprime integer rows.
std::vector<std::vector<BigInt>> integer_rows(const RationalMatrix& m) {
    std::vector<std::vector<BigInt>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BigInt scale = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const BigInt den = m(i, j).get_den();
            scale = lcm(scale, den);
        }
        std::vector<BigInt>& row = rows[i];
        row.resize(m.cols());
        BigInt content = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            row[j] = m(i, j).get_num() * (scale / m(i, j).get_den());
            content = gcd(content, row[j]);
        }
        if (content > 1) {
            for (BigInt& e : row) e /= content;
        }
    }
    return rows;
}

void strip_content(std::vector<BigInt>& row) {
    BigInt content = 0;
    for (const BigInt& e : row) {
        content = gcd(content, e);
        if (content == 1) return;
    }
    if (content > 1) {
        for (BigInt& e : row) e /= content;
    }
}

}  // namespace

std::size_t rank(const RationalMatrix& m) {
    if (m.rows() == 0 || m.cols() == 0) return 0;
    std::vector<std::vector<BigInt>> rows = integer_rows(m);
    const std::size_t ncols = m.cols();
    std::size_t next = 0;  // rows above `next` are in echelon position
    for (std::size_t col = 0; col < ncols && next < rows.size(); ++col) {
        std::size_t pivot = next;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[next], rows[pivot]);
        const std::vector<BigInt>& prow = rows[next];
        for (std::size_t i = next + 1; i < rows.size(); ++i) {
            std::vector<BigInt>& row = rows[i];
            if (row[col] == 0) continue;
            const BigInt a = prow[col];
            const BigInt b = row[col];
            row[col] = 0;
            for (std::size_t j = col + 1; j < ncols; ++j) {
                row[j] = a * row[j] - b * prow[j];
            }
            strip_content(row);
        }
        ++next;
    }
    return next;
}

std::size_t kernel_dim(const RationalMatrix& m) {
    return m.cols() - rank(m);
}

Rref reduced_row_echelon(const RationalMatrix& m) {
    Rref out;
    std::vector<std::vector<Rational>> rows(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        rows[i].resize(m.cols());
        for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
    }
    std::vector<std::size_t> pivots;
    std::size_t next = 0;
    for (std::size_t col = 0; col < m.cols() && next < rows.size(); ++col) {
        std::size_t pivot = next;
        while (pivot < rows.size() && rows[pivot][col] == 0) ++pivot;
        if (pivot == rows.size()) continue;
        std::swap(rows[next], rows[pivot]);
        const Rational inv = 1 / rows[next][col];
        for (std::size_t j = col; j < m.cols(); ++j) rows[next][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == next || rows[i][col] == 0) continue;
            const Rational factor = rows[i][col];
            for (std::size_t j = col; j < m.cols(); ++j) {
                rows[i][j] -= factor * rows[next][j];
            }
        }
        pivots.push_back(col);
        ++next;
    }
    out.mat = RationalMatrix(next, m.cols());
    for (std::size_t i = 0; i < next; ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out.mat(i, j) = rows[i][j];
    out.pivots = std::move(pivots);
    return out;
}

}  // namespace splinedim
