#include "splinedim/chain_complex.hpp"

#include <algorithm>
#include <stdexcept>

namespace splinedim {

SmoothnessDistribution SmoothnessDistribution::uniform(const Mesh& mesh, int r) {
    SmoothnessDistribution s;
    s.edge_r.assign(mesh.edge_count(), -1);
    for (std::size_t e : mesh.interior_edges()) s.edge_r[e] = r;
    return s;
}

void check_smoothness(const Mesh& mesh, const SmoothnessDistribution& r) {
    if (r.edge_r.size() != mesh.edge_count()) {
        throw std::invalid_argument("smoothness distribution does not match the mesh");
    }
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
        if (r.edge_r[e] < -1) {
            throw std::invalid_argument("smoothness below -1 on edge " +
                                        std::to_string(e));
        }
        if (!mesh.edge_interior(e) && r.edge_r[e] != -1) {
            throw std::invalid_argument("boundary edge " + std::to_string(e) +
                                        " must carry smoothness -1");
        }
    }
}

namespace {

std::pair<Rational, Rational> vertex_origin(const Mesh& mesh, std::size_t v) {
    return {mesh.vertex(v).x, mesh.vertex(v).y};
}

std::pair<Rational, Rational> edge_origin(const Mesh& mesh, std::size_t e) {
    return vertex_origin(mesh, mesh.edge(e).tail);
}

// The supporting line in coordinates centered at a point on it: the constant
// term drops and the gradient is unchanged.
LinearForm local_form(const LinearForm& global) {
    return LinearForm{global.a, global.b, Rational(0)};
}

// Generators of J_tau written in the coordinates of an ambient space
// `ambient` centered somewhere on the supporting line of tau. The cofactor
// degrees stay truncated to P_tau.
RationalMatrix truncated_ideal_rows(const PolySpaceSpec& edge_spec,
                                    const LinearForm& form, int exponent,
                                    const PolySpaceSpec& ambient) {
    const RationalMatrix gens = ideal_generator_matrix(edge_spec, form, exponent);
    if (edge_spec == ambient) return gens;
    const RationalMatrix embed = translation_matrix(edge_spec, {0, 0}, ambient, {0, 0});
    RationalMatrix out(gens.rows(), space_dim(ambient));
    for (std::size_t r = 0; r < gens.rows(); ++r) {
        for (std::size_t c = 0; c < gens.cols(); ++c) {
            if (gens(r, c) == 0) continue;
            // embed is a monomial inclusion, one unit entry per column
            for (std::size_t rr = 0; rr < embed.rows(); ++rr) {
                if (embed(rr, c) != 0) out(r, rr) = gens(r, c);
            }
        }
    }
    return out;
}

// Stacked vertex-ideal generators in coordinates centered at the vertex.
RationalMatrix vertex_ideal_rows(const Mesh& mesh, const InducedDegrees& induced,
                                 const SmoothnessDistribution& r, std::size_t v) {
    const PolySpaceSpec vspec = induced.vertex_spec(v);
    RationalMatrix rows(0, space_dim(vspec));
    for (std::size_t e : mesh.edges_at_vertex(v)) {
        const PolySpaceSpec espec = induced.edge_spec(e);
        const int smooth = r.at(e);
        if (smooth == -1) {
            // J_tau = P_tau, embedded monomial by monomial
            RationalMatrix full(space_dim(espec), space_dim(vspec));
            const std::vector<Monomial> basis = monomial_basis(espec);
            for (std::size_t k = 0; k < basis.size(); ++k) {
                full(k, monomial_index(vspec, basis[k].i, basis[k].j)) = 1;
            }
            rows.append_rows(full);
        } else {
            rows.append_rows(truncated_ideal_rows(
                espec, local_form(mesh.edge_line_form(e)), smooth + 1, vspec));
        }
    }
    return rows;
}

// Projection onto the quotient by the row space of an RREF: coordinates at
// non-pivot columns after eliminating pivot coordinates.
RationalMatrix quotient_projection(const Rref& rref, std::size_t dim) {
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t p : rref.pivots) is_pivot[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < dim; ++c) {
        if (!is_pivot[c]) rest.push_back(c);
    }
    RationalMatrix proj(rest.size(), dim);
    for (std::size_t t = 0; t < rest.size(); ++t) {
        proj(t, rest[t]) = 1;
        for (std::size_t j = 0; j < rref.pivots.size(); ++j) {
            proj(t, rref.pivots[j]) = -rref.mat(j, rest[t]);
        }
    }
    return proj;
}

// Section of the quotient: representative monomials at non-pivot columns.
RationalMatrix quotient_section(const Rref& rref, std::size_t dim) {
    std::vector<bool> is_pivot(dim, false);
    for (std::size_t p : rref.pivots) is_pivot[p] = true;
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < dim; ++c) {
        if (!is_pivot[c]) rest.push_back(c);
    }
    RationalMatrix sect(dim, rest.size());
    for (std::size_t t = 0; t < rest.size(); ++t) sect(rest[t], t) = 1;
    return sect;
}

struct CellData {
    // per interior edge (indexed by position in interior_edges())
    std::vector<Rref> edge_rref;
    std::vector<long> edge_full_dim;
    // per interior vertex
    std::vector<Rref> vertex_rref;
    std::vector<long> vertex_full_dim;
    InducedDegrees induced;
};

CellData collect_cell_data(const Mesh& mesh, const DegreeDistribution& deg,
                           const SmoothnessDistribution& r) {
    check_smoothness(mesh, r);
    CellData data;
    data.induced = induced_spaces(mesh, deg);
    for (std::size_t e : mesh.interior_edges()) {
        const PolySpaceSpec spec = data.induced.edge_spec(e);
        const long dim = space_dim(spec);
        data.edge_full_dim.push_back(dim);
        if (r.at(e) == -1) {
            Rref full;
            full.mat = RationalMatrix::identity(dim);
            full.pivots.resize(dim);
            for (long c = 0; c < dim; ++c) full.pivots[c] = c;
            data.edge_rref.push_back(std::move(full));
        } else {
            data.edge_rref.push_back(reduced_row_echelon(ideal_generator_matrix(
                spec, local_form(mesh.edge_line_form(e)), r.at(e) + 1)));
        }
    }
    for (std::size_t v : mesh.interior_vertices()) {
        const PolySpaceSpec spec = data.induced.vertex_spec(v);
        data.vertex_full_dim.push_back(space_dim(spec));
        data.vertex_rref.push_back(
            reduced_row_echelon(vertex_ideal_rows(mesh, data.induced, r, v)));
    }
    return data;
}

std::vector<long> offsets_of(const std::vector<long>& sizes) {
    std::vector<long> off(sizes.size() + 1, 0);
    for (std::size_t i = 0; i < sizes.size(); ++i) off[i + 1] = off[i] + sizes[i];
    return off;
}

void place_block(RationalMatrix& target, long row0, long col0,
                 const RationalMatrix& block, int sign) {
    for (std::size_t i = 0; i < block.rows(); ++i) {
        for (std::size_t j = 0; j < block.cols(); ++j) {
            if (block(i, j) == 0) continue;
            target(row0 + i, col0 + j) = sign > 0 ? block(i, j) : -block(i, j);
        }
    }
}

int traversal_sign(const FaceRec& face, std::size_t e) {
    for (std::size_t k = 0; k < face.edges.size(); ++k) {
        if (face.edges[k] == e) return face.signs[k];
    }
    throw std::logic_error("edge not on face");
}

enum class Row { Ideal, Cellular, Quotient };

GradedComplex assemble(const Mesh& mesh, const DegreeDistribution& deg,
                       const CellData& data, Row row) {
    GradedComplex out;
    const std::vector<std::size_t>& iedges = mesh.interior_edges();
    const std::vector<std::size_t>& iverts = mesh.interior_vertices();
    std::vector<long> vertex_pos(mesh.vertex_count(), -1);
    for (std::size_t k = 0; k < iverts.size(); ++k) vertex_pos[iverts[k]] = k;

    std::vector<long> face_sizes, edge_sizes, vertex_sizes;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        face_sizes.push_back(space_dim(deg.face_spec(f)));
    }
    for (std::size_t k = 0; k < iedges.size(); ++k) {
        const long full = data.edge_full_dim[k];
        const long ideal = data.edge_rref[k].pivots.size();
        edge_sizes.push_back(row == Row::Ideal ? ideal
                             : row == Row::Cellular ? full
                                                    : full - ideal);
    }
    for (std::size_t k = 0; k < iverts.size(); ++k) {
        const long full = data.vertex_full_dim[k];
        const long ideal = data.vertex_rref[k].pivots.size();
        vertex_sizes.push_back(row == Row::Ideal ? ideal
                               : row == Row::Cellular ? full
                                                      : full - ideal);
    }
    const std::vector<long> off2 = offsets_of(face_sizes);
    const std::vector<long> off1 = offsets_of(edge_sizes);
    const std::vector<long> off0 = offsets_of(vertex_sizes);

    out.tag = row == Row::Ideal ? "I" : row == Row::Cellular ? "C" : "Q";
    out.dims = {off0.back(), off1.back(),
                row == Row::Ideal ? 0 : off2.back()};
    out.d2 = RationalMatrix(off1.back(), out.dims[2]);
    out.d1 = RationalMatrix(off0.back(), off1.back());

    // position 2 -> 1
    if (row != Row::Ideal) {
        for (std::size_t k = 0; k < iedges.size(); ++k) {
            const std::size_t e = iedges[k];
            const PolySpaceSpec espec = data.induced.edge_spec(e);
            const RationalMatrix proj =
                row == Row::Quotient
                    ? quotient_projection(data.edge_rref[k], data.edge_full_dim[k])
                    : RationalMatrix::identity(data.edge_full_dim[k]);
            for (std::size_t f : mesh.edge(e).faces) {
                const RationalMatrix tr = translation_matrix(
                    deg.face_spec(f), {0, 0}, espec, edge_origin(mesh, e));
                place_block(out.d2, off1[k], off2[f], proj * tr,
                            traversal_sign(mesh.face(f), e));
            }
        }
    }

    // position 1 -> 0
    for (std::size_t k = 0; k < iedges.size(); ++k) {
        const std::size_t e = iedges[k];
        const PolySpaceSpec espec = data.induced.edge_spec(e);
        for (const bool at_head : {true, false}) {
            const std::size_t v = at_head ? mesh.edge(e).head : mesh.edge(e).tail;
            const long vpos = vertex_pos[v];
            if (vpos < 0) continue;
            const int sign = at_head ? 1 : -1;
            const PolySpaceSpec vspec = data.induced.vertex_spec(v);
            const RationalMatrix tr = translation_matrix(
                espec, edge_origin(mesh, e), vspec, vertex_origin(mesh, v));
            if (row == Row::Cellular) {
                place_block(out.d1, off0[vpos], off1[k], tr, sign);
            } else if (row == Row::Quotient) {
                const RationalMatrix block =
                    quotient_projection(data.vertex_rref[vpos],
                                        data.vertex_full_dim[vpos]) *
                    tr * quotient_section(data.edge_rref[k], data.edge_full_dim[k]);
                place_block(out.d1, off0[vpos], off1[k], block, sign);
            } else {
                // express the image of each edge-ideal basis row in the
                // vertex-ideal RREF basis; the expansion must be exact
                const Rref& vr = data.vertex_rref[vpos];
                const Rref& er = data.edge_rref[k];
                RationalMatrix block(vr.pivots.size(), er.pivots.size());
                for (std::size_t col = 0; col < er.pivots.size(); ++col) {
                    std::vector<Rational> w(data.vertex_full_dim[vpos]);
                    for (std::size_t c = 0; c < er.mat.cols(); ++c) {
                        if (er.mat(col, c) == 0) continue;
                        for (std::size_t rr = 0; rr < tr.rows(); ++rr) {
                            if (tr(rr, c) != 0) w[rr] += tr(rr, c) * er.mat(col, c);
                        }
                    }
                    std::vector<Rational> coords(vr.pivots.size());
                    for (std::size_t j = 0; j < vr.pivots.size(); ++j) {
                        coords[j] = w[vr.pivots[j]];
                    }
                    for (std::size_t j = 0; j < vr.pivots.size(); ++j) {
                        if (coords[j] == 0) continue;
                        for (std::size_t c = 0; c < vr.mat.cols(); ++c) {
                            w[c] -= coords[j] * vr.mat(j, c);
                        }
                    }
                    for (const Rational& res : w) {
                        if (res != 0) {
                            throw std::logic_error(
                                "edge ideal does not embed in the vertex ideal");
                        }
                    }
                    for (std::size_t j = 0; j < vr.pivots.size(); ++j) {
                        block(j, col) = coords[j];
                    }
                }
                place_block(out.d1, off0[vpos], off1[k], block, sign);
            }
        }
    }
    return out;
}

}  // namespace

long edge_ideal_dim(const Mesh& mesh, const DegreeDistribution& deg,
                    const SmoothnessDistribution& r, std::size_t e) {
    if (!mesh.edge_interior(e)) {
        throw std::invalid_argument("edge ideals are defined on interior edges");
    }
    const InducedDegrees induced = induced_spaces(mesh, deg);
    const PolySpaceSpec spec = induced.edge_spec(e);
    if (r.at(e) == -1) return space_dim(spec);
    return principal_ideal_dim(spec, local_form(mesh.edge_line_form(e)), r.at(e) + 1);
}

long vertex_ideal_dim(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r, std::size_t v) {
    if (!mesh.vertex_interior(v)) {
        throw std::invalid_argument("vertex ideals are defined on interior vertices");
    }
    const InducedDegrees induced = induced_spaces(mesh, deg);
    return static_cast<long>(rank(vertex_ideal_rows(mesh, induced, r, v)));
}

IdealDims compute_ideal_dims(const Mesh& mesh, const DegreeDistribution& deg,
                             const SmoothnessDistribution& r) {
    const CellData data = collect_cell_data(mesh, deg, r);
    IdealDims dims;
    dims.edge_ideal.assign(mesh.edge_count(), 0);
    dims.edge_quotient.assign(mesh.edge_count(), 0);
    dims.vertex_ideal.assign(mesh.vertex_count(), 0);
    dims.vertex_quotient.assign(mesh.vertex_count(), 0);
    const std::vector<std::size_t>& iedges = mesh.interior_edges();
    for (std::size_t k = 0; k < iedges.size(); ++k) {
        dims.edge_ideal[iedges[k]] = data.edge_rref[k].pivots.size();
        dims.edge_quotient[iedges[k]] =
            data.edge_full_dim[k] - dims.edge_ideal[iedges[k]];
    }
    const std::vector<std::size_t>& iverts = mesh.interior_vertices();
    for (std::size_t k = 0; k < iverts.size(); ++k) {
        dims.vertex_ideal[iverts[k]] = data.vertex_rref[k].pivots.size();
        dims.vertex_quotient[iverts[k]] =
            data.vertex_full_dim[k] - dims.vertex_ideal[iverts[k]];
    }
    return dims;
}

ComplexTriple build_complexes(const Mesh& mesh, const DegreeDistribution& deg,
                              const SmoothnessDistribution& r) {
    const CellData data = collect_cell_data(mesh, deg, r);
    ComplexTriple triple;
    triple.ideal = assemble(mesh, deg, data, Row::Ideal);
    triple.cellular = assemble(mesh, deg, data, Row::Cellular);
    triple.quotient = assemble(mesh, deg, data, Row::Quotient);
    return triple;
}

GradedComplex build_quotient_complex(const Mesh& mesh, const DegreeDistribution& deg,
                                     const SmoothnessDistribution& r) {
    const CellData data = collect_cell_data(mesh, deg, r);
    return assemble(mesh, deg, data, Row::Quotient);
}

long euler_characteristic(const GradedComplex& x) {
    return x.dims[2] - x.dims[1] + x.dims[0];
}

long homology_dim(const GradedComplex& x, int i) {
    switch (i) {
        case 2:
            return static_cast<long>(kernel_dim(x.d2));
        case 1:
            return static_cast<long>(kernel_dim(x.d1)) -
                   static_cast<long>(rank(x.d2));
        case 0:
            return x.dims[0] - static_cast<long>(rank(x.d1));
        default:
            throw std::invalid_argument("homology position must be 0, 1 or 2");
    }
}

QuotientSummary quotient_summary(const Mesh& mesh, const DegreeDistribution& deg,
                                 const SmoothnessDistribution& r) {
    const GradedComplex q = build_quotient_complex(mesh, deg, r);
    QuotientSummary s;
    s.dim2 = q.dims[2];
    s.dim1 = q.dims[1];
    s.dim0 = q.dims[0];
    s.chi = euler_characteristic(q);
    const long rank2 = static_cast<long>(rank(q.d2));
    const long rank1 = static_cast<long>(rank(q.d1));
    s.h2 = s.dim2 - rank2;
    s.h1 = (s.dim1 - rank1) - rank2;
    s.h0 = s.dim0 - rank1;
    s.kernel = s.h2;
    s.lower_acyclic = s.h1 == 0 && s.h0 == 0;
    return s;
}

bool is_lower_acyclic(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r) {
    return quotient_summary(mesh, deg, r).lower_acyclic;
}

long spline_dim_kernel(const Mesh& mesh, const DegreeDistribution& deg,
                       const SmoothnessDistribution& r) {
    const GradedComplex q = build_quotient_complex(mesh, deg, r);
    return static_cast<long>(kernel_dim(q.d2));
}

}  // namespace splinedim
