#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "splinedim/exactla.hpp"
#include "splinedim/mesh.hpp"
#include "splinedim/polyspace.hpp"

namespace splinedim {

/// Per-edge smoothness orders r(tau) >= -1, with r = -1 pinned on boundary
/// edges.
struct SmoothnessDistribution {
    std::vector<int> edge_r;

    static SmoothnessDistribution uniform(const Mesh& mesh, int r);

    int at(std::size_t e) const { return edge_r.at(e); }
};

/// Throws unless the distribution matches the mesh and respects the boundary
/// convention.
void check_smoothness(const Mesh& mesh, const SmoothnessDistribution& r);

/// dim of the edge ideal J_tau inside P_tau (all of P_tau when r = -1).
long edge_ideal_dim(const Mesh& mesh, const DegreeDistribution& deg,
                    const SmoothnessDistribution& r, std::size_t e);

/// dim of the vertex ideal J_gamma = sum of incident edge ideals inside
/// P_gamma.
long vertex_ideal_dim(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r, std::size_t v);

struct IdealDims {
    std::vector<long> edge_ideal;      // per edge id (interior entries meaningful)
    std::vector<long> edge_quotient;   // dim P_tau / J_tau
    std::vector<long> vertex_ideal;    // per vertex id
    std::vector<long> vertex_quotient; // dim P_gamma / J_gamma
};

IdealDims compute_ideal_dims(const Mesh& mesh, const DegreeDistribution& deg,
                             const SmoothnessDistribution& r);

/// One row of the three-row diagram: dims at positions 2/1/0 plus the two
/// boundary matrices in explicit bases. d2 maps position 2 to position 1
/// (rows = dim1, cols = dim2); d1 maps position 1 to position 0.
struct GradedComplex {
    std::string tag;  // "I", "C", or "Q"
    std::array<long, 3> dims{0, 0, 0};  // dims[2], dims[1], dims[0]
    RationalMatrix d2;
    RationalMatrix d1;

    long dim(int i) const { return dims.at(i); }
};

struct ComplexTriple {
    GradedComplex ideal;      // I^r (positions 1 and 0 only)
    GradedComplex cellular;   // C
    GradedComplex quotient;   // Q^r
};

ComplexTriple build_complexes(const Mesh& mesh, const DegreeDistribution& deg,
                              const SmoothnessDistribution& r);

/// Q^r alone; cheaper when the other rows are not needed.
GradedComplex build_quotient_complex(const Mesh& mesh, const DegreeDistribution& deg,
                                     const SmoothnessDistribution& r);

long euler_characteristic(const GradedComplex& x);

/// Homology dimension at position i: h2 = ker d2, h1 = ker d1 - rank d2,
/// h0 = dim0 - rank d1.
long homology_dim(const GradedComplex& x, int i);

/// Everything the reports need from Q^r, with the two ranks computed once.
struct QuotientSummary {
    long dim2 = 0, dim1 = 0, dim0 = 0;
    long chi = 0;
    long h2 = 0, h1 = 0, h0 = 0;
    long kernel = 0;  // = h2 = dim of the spline space
    bool lower_acyclic = false;
};

QuotientSummary quotient_summary(const Mesh& mesh, const DegreeDistribution& deg,
                                 const SmoothnessDistribution& r);

/// h1(Q^r) = 0 and h0(Q^r) = 0, computed directly.
bool is_lower_acyclic(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r);

/// Ground truth: dim R^r as the kernel dimension of the quotiented top
/// boundary map. Valid without any acyclicity hypothesis.
long spline_dim_kernel(const Mesh& mesh, const DegreeDistribution& deg,
                       const SmoothnessDistribution& r);

}  // namespace splinedim
