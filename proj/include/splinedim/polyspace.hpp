#pragma once

#include <cstddef>
#include <vector>

#include "splinedim/exactla.hpp"

namespace splinedim {

enum class SpaceKind { TotalDegree, Bidegree };

/// Polynomial space attached to a cell: total degree <= m, or bidegree
/// <= (m, m).
struct PolySpaceSpec {
    SpaceKind kind = SpaceKind::TotalDegree;
    int m = 0;

    bool operator==(const PolySpaceSpec&) const = default;
};

long space_dim(const PolySpaceSpec& spec);

struct Monomial {
    int i = 0;  // x exponent
    int j = 0;  // y exponent
};

/// Monomial basis of the space in a fixed deterministic order.
std::vector<Monomial> monomial_basis(const PolySpaceSpec& spec);

/// Index of x^i y^j within monomial_basis(spec); -1 when outside the space.
long monomial_index(const PolySpaceSpec& spec, int i, int j);

/// Affine form a*x + b*y + c with (a, b) != (0, 0), normalized so the first
/// nonzero of (a, b) is 1.
struct LinearForm {
    Rational a, b, c;

    bool operator==(const LinearForm&) const = default;
};

LinearForm normalized_form(Rational a, Rational b, Rational c);

/// Dimension of the subspace of `spec` consisting of multiples of
/// form^exponent.
long principal_ideal_dim(const PolySpaceSpec& spec, const LinearForm& form,
                         int exponent);

/// Monomial cofactors q such that form^exponent * q stays inside the space;
/// form^exponent * q over these q spans the whole multiples-of-form^exponent
/// slice.
std::vector<Monomial> ideal_cofactor_monomials(const PolySpaceSpec& spec,
                                               const LinearForm& form,
                                               int exponent);

/// Rows = coordinates of form^exponent * q in monomial_basis(spec), one row
/// per cofactor monomial q.
RationalMatrix ideal_generator_matrix(const PolySpaceSpec& spec,
                                      const LinearForm& form, int exponent);

/// One univariate summand (x - a)^d * P_{m - d - e} of a sum of shifted
/// principal ideals.
struct ShiftedPoint {
    Rational root;    // a
    int exponent = 0; // d >= -1
    int shift = 0;    // e >= 0
};

/// M(I): for each distinct root among the selected indices, the index with
/// minimal exponent (ties broken by smallest index).
std::vector<std::size_t> min_index_set(const std::vector<ShiftedPoint>& points,
                                       const std::vector<std::size_t>& subset);

/// dim of sum_i (x - a_i)^{d_i} P_{m - d_i - e_i} inside P_m, computed from
/// the pure-power spanning set (x - a_i)^t, d_i <= t <= m - e_i. Always in
/// [0, m + 1].
long univ_sum_dim(int m, const std::vector<ShiftedPoint>& points);

/// Same dimension by brute force: rank of the coefficient matrix of all
/// generators (x - a_i)^{d_i} x^k, 0 <= k <= m - d_i - e_i. Independent of
/// univ_sum_dim's code path.
long univ_sum_dim_oracle(int m, const std::vector<ShiftedPoint>& points);

/// Single-min formula min(m+1, sum over M(I) of (m - d_i + 1)_+), valid when
/// all shifts vanish.
long univ_sum_dim_uniform(int m, const std::vector<ShiftedPoint>& points);

bool is_full(int m, const std::vector<ShiftedPoint>& points);

/// Change of basis taking coordinates w.r.t. monomials centered at
/// `src_origin` to coordinates w.r.t. monomials centered at `dst_origin`
/// (dst space must contain the src space).
RationalMatrix translation_matrix(const PolySpaceSpec& src,
                                  const std::pair<Rational, Rational>& src_origin,
                                  const PolySpaceSpec& dst,
                                  const std::pair<Rational, Rational>& dst_origin);

}  // namespace splinedim
