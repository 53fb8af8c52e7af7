#include "splinedim/polyspace.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace splinedim {

long space_dim(const PolySpaceSpec& spec) {
    if (spec.m < 0) throw std::invalid_argument("space_dim: negative degree");
    const long m = spec.m;
    return spec.kind == SpaceKind::TotalDegree ? (m + 1) * (m + 2) / 2
                                               : (m + 1) * (m + 1);
}

std::vector<Monomial> monomial_basis(const PolySpaceSpec& spec) {
    std::vector<Monomial> basis;
    for (int i = 0; i <= spec.m; ++i) {
        const int jmax = spec.kind == SpaceKind::TotalDegree ? spec.m - i : spec.m;
        for (int j = 0; j <= jmax; ++j) basis.push_back({i, j});
    }
    return basis;
}

long monomial_index(const PolySpaceSpec& spec, int i, int j) {
    if (i < 0 || j < 0 || i > spec.m) return -1;
    if (spec.kind == SpaceKind::TotalDegree) {
        if (i + j > spec.m) return -1;
        // rows of decreasing length m+1, m, ...
        long idx = 0;
        for (int k = 0; k < i; ++k) idx += spec.m - k + 1;
        return idx + j;
    }
    if (j > spec.m) return -1;
    return static_cast<long>(i) * (spec.m + 1) + j;
}

LinearForm normalized_form(Rational a, Rational b, Rational c) {
    if (a == 0 && b == 0) {
        throw std::invalid_argument("linear form must have a nonzero gradient");
    }
    const Rational lead = (a != 0) ? a : b;
    return LinearForm{a / lead, b / lead, c / lead};
}

namespace {

// Sparse bivariate polynomial, exponents -> coefficient.
using Poly2 = std::map<std::pair<int, int>, Rational>;

void add_term(Poly2& p, int i, int j, const Rational& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = p.try_emplace({i, j}, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0) p.erase(it);
    }
}

Poly2 poly_mul(const Poly2& lhs, const Poly2& rhs) {
    Poly2 out;
    for (const auto& [le, lc] : lhs)
        for (const auto& [re, rc] : rhs)
            add_term(out, le.first + re.first, le.second + re.second, lc * rc);
    return out;
}

Poly2 poly_pow(const Poly2& base, int exponent) {
    Poly2 out;
    out[{0, 0}] = 1;
    for (int k = 0; k < exponent; ++k) out = poly_mul(out, base);
    return out;
}

Poly2 form_poly(const LinearForm& form) {
    Poly2 p;
    add_term(p, 1, 0, form.a);
    add_term(p, 0, 1, form.b);
    add_term(p, 0, 0, form.c);
    return p;
}

std::vector<Rational> coords_in(const Poly2& p, const PolySpaceSpec& spec) {
    std::vector<Rational> coords(space_dim(spec));
    for (const auto& [exps, coeff] : p) {
        const long idx = monomial_index(spec, exps.first, exps.second);
        if (idx < 0) throw std::logic_error("polynomial falls outside target space");
        coords[idx] = coeff;
    }
    return coords;
}

}  // namespace

std::vector<Monomial> ideal_cofactor_monomials(const PolySpaceSpec& spec,
                                               const LinearForm& form,
                                               int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative ideal exponent");
    std::vector<Monomial> out;
    if (spec.kind == SpaceKind::TotalDegree) {
        const int rest = spec.m - exponent;
        for (int i = 0; i <= rest; ++i)
            for (int j = 0; j + i <= rest; ++j) out.push_back({i, j});
        return out;
    }
    // The x/y degree of form^exponent is additive under multiplication, so a
    // cofactor must fit in the complementary bidegree box.
    const int xdeg = form.a != 0 ? exponent : 0;
    const int ydeg = form.b != 0 ? exponent : 0;
    for (int i = 0; i + xdeg <= spec.m; ++i)
        for (int j = 0; j + ydeg <= spec.m; ++j) out.push_back({i, j});
    return out;
}

RationalMatrix ideal_generator_matrix(const PolySpaceSpec& spec,
                                      const LinearForm& form, int exponent) {
    const std::vector<Monomial> cofactors =
        ideal_cofactor_monomials(spec, form, exponent);
    const Poly2 power = poly_pow(form_poly(form), exponent);
    RationalMatrix gens(cofactors.size(), space_dim(spec));
    for (std::size_t r = 0; r < cofactors.size(); ++r) {
        Poly2 mono;
        mono[{cofactors[r].i, cofactors[r].j}] = 1;
        const std::vector<Rational> coords = coords_in(poly_mul(power, mono), spec);
        for (std::size_t c = 0; c < coords.size(); ++c) gens(r, c) = coords[c];
    }
    return gens;
}

long principal_ideal_dim(const PolySpaceSpec& spec, const LinearForm& form,
                         int exponent) {
    if (exponent < 0) throw std::invalid_argument("negative ideal exponent");
    if (exponent > spec.m) return 0;
    if (spec.kind == SpaceKind::TotalDegree) {
        return space_dim({SpaceKind::TotalDegree, spec.m - exponent});
    }
    if (form.a == 0 || form.b == 0) {
        return static_cast<long>(spec.m - exponent + 1) * (spec.m + 1);
    }
    return static_cast<long>(rank(ideal_generator_matrix(spec, form, exponent)));
}

std::vector<std::size_t> min_index_set(const std::vector<ShiftedPoint>& points,
                                       const std::vector<std::size_t>& subset) {
    // root -> retained index; smaller exponent wins, ties keep the first index.
    std::map<Rational, std::size_t> best;
    for (std::size_t idx : subset) {
        const ShiftedPoint& p = points.at(idx);
        auto [it, inserted] = best.try_emplace(p.root, idx);
        if (!inserted) {
            const ShiftedPoint& cur = points[it->second];
            if (p.exponent < cur.exponent ||
                (p.exponent == cur.exponent && idx < it->second)) {
                it->second = idx;
            }
        }
    }
    std::vector<std::size_t> out;
    for (const auto& [root, idx] : best) out.push_back(idx);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

// (x - a)^{-1} * P_{m+1-e} truncated to degree m is the same summand as
// (x - a)^0 * P_{m - max(e-1, 0)}; rewriting d = -1 this way lets both the
// closed formula and the oracle work with d >= 0 throughout.
std::vector<ShiftedPoint> normalized_points(int m,
                                            const std::vector<ShiftedPoint>& points) {
    std::vector<ShiftedPoint> out;
    for (const ShiftedPoint& p : points) {
        if (p.exponent < -1) throw std::invalid_argument("exponent below -1");
        if (p.shift < 0) throw std::invalid_argument("negative shift");
        ShiftedPoint q = p;
        if (q.exponent == -1) {
            q.exponent = 0;
            q.shift = std::max(q.shift - 1, 0);
        }
        if (m - q.exponent - q.shift < 0) continue;  // zero summand
        out.push_back(q);
    }
    return out;
}

// min(mm + 1, sum over M(selected) of (mm - d_i + 1)_+).
long clamped_sum(int mm, const std::vector<ShiftedPoint>& points,
                 const std::vector<std::size_t>& selected) {
    if (mm < 0) return 0;
    long sum = 0;
    for (std::size_t idx : min_index_set(points, selected)) {
        sum += std::max(0, mm - points[idx].exponent + 1);
    }
    return std::min(static_cast<long>(mm) + 1, sum);
}

}  // namespace

long univ_sum_dim(int m, const std::vector<ShiftedPoint>& points) {
    if (m < 0) throw std::invalid_argument("negative degree bound");
    const std::vector<ShiftedPoint> pts = normalized_points(m, points);
    if (pts.empty()) return 0;

    // Rebasing the cofactors at the root turns each summand into a span of
    // pure shifted powers: l^d * P_{m-d-e} = span{ (x-a)^t : d <= t <= m-e }.
    // The dimension is the rank of their coefficient matrix.
    std::set<std::pair<Rational, int>> powers;
    for (const ShiftedPoint& p : pts) {
        for (int t = p.exponent; t <= m - p.shift; ++t) powers.insert({p.root, t});
    }
    RationalMatrix mat(powers.size(), m + 1);
    std::size_t row = 0;
    for (const auto& [root, t] : powers) {
        // binomial expansion of (x - root)^t
        std::vector<Rational> coeff{Rational(1)};
        for (int k = 0; k < t; ++k) {
            std::vector<Rational> next(coeff.size() + 1);
            for (std::size_t s = 0; s < coeff.size(); ++s) {
                next[s] -= coeff[s] * root;
                next[s + 1] += coeff[s];
            }
            coeff.swap(next);
        }
        for (std::size_t s = 0; s < coeff.size(); ++s) mat(row, s) = coeff[s];
        ++row;
    }
    return static_cast<long>(rank(mat));
}

long univ_sum_dim_oracle(int m, const std::vector<ShiftedPoint>& points) {
    if (m < 0) throw std::invalid_argument("negative degree bound");
    const std::vector<ShiftedPoint> pts = normalized_points(m, points);
    std::vector<std::vector<Rational>> rows;
    for (const ShiftedPoint& p : pts) {
        // binomial expansion of (x - a)^d
        std::vector<Rational> base{Rational(1)};
        for (int k = 0; k < p.exponent; ++k) {
            std::vector<Rational> next(base.size() + 1);
            for (std::size_t t = 0; t < base.size(); ++t) {
                next[t] -= base[t] * p.root;
                next[t + 1] += base[t];
            }
            base.swap(next);
        }
        for (int k = 0; k <= m - p.exponent - p.shift; ++k) {
            std::vector<Rational> row(m + 1);
            for (std::size_t t = 0; t < base.size(); ++t) row[t + k] = base[t];
            rows.push_back(std::move(row));
        }
    }
    RationalMatrix mat(rows.size(), m + 1);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j <= static_cast<std::size_t>(m); ++j)
            mat(i, j) = rows[i][j];
    return static_cast<long>(rank(mat));
}

long univ_sum_dim_uniform(int m, const std::vector<ShiftedPoint>& points) {
    std::vector<ShiftedPoint> pts = normalized_points(m, points);
    std::vector<std::size_t> all(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) all[i] = i;
    return clamped_sum(m, pts, all);
}

bool is_full(int m, const std::vector<ShiftedPoint>& points) {
    return univ_sum_dim(m, points) == m + 1;
}

RationalMatrix translation_matrix(const PolySpaceSpec& src,
                                  const std::pair<Rational, Rational>& src_origin,
                                  const PolySpaceSpec& dst,
                                  const std::pair<Rational, Rational>& dst_origin) {
    if (src.kind != dst.kind || src.m > dst.m) {
        throw std::invalid_argument("translation target must contain the source space");
    }
    const std::vector<Monomial> src_basis = monomial_basis(src);
    RationalMatrix out(space_dim(dst), space_dim(src));
    const Rational dx = dst_origin.first - src_origin.first;
    const Rational dy = dst_origin.second - src_origin.second;
    // (x - u) = (x - v) + (v - u), expanded binomially per monomial
    Poly2 xs, ys;
    add_term(xs, 1, 0, Rational(1));
    add_term(xs, 0, 0, dx);
    add_term(ys, 0, 1, Rational(1));
    add_term(ys, 0, 0, dy);
    for (std::size_t col = 0; col < src_basis.size(); ++col) {
        const Poly2 expanded =
            poly_mul(poly_pow(xs, src_basis[col].i), poly_pow(ys, src_basis[col].j));
        for (const auto& [exps, coeff] : expanded) {
            const long row = monomial_index(dst, exps.first, exps.second);
            if (row < 0) throw std::logic_error("translation image escapes target space");
            out(row, col) = coeff;
        }
    }
    return out;
}

}  // namespace splinedim
