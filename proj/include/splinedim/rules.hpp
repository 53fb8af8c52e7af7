#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "splinedim/chain_complex.hpp"
#include "splinedim/mesh.hpp"

namespace splinedim {

/// Outcome of one smoothness-reduction rule: either the cited sufficient
/// condition held on the recorded evidence, or the rule does not apply.
struct Certificate {
    std::string rule;
    bool certified = false;
    std::string detail;  // branch taken, or why the rule does not apply
    std::vector<std::pair<std::string, long>> evidence;
    std::vector<std::size_t> edges;  // edges the step reduces
    int new_r = -1;
};

/// Omega = r + ceil((r+1)/(t-1)) with t = min(r+2, n): the degree from which
/// every monomial at an n-slope vertex of uniform smoothness r lies in the
/// vertex ideal. Requires r >= 0 and n >= 2.
long omega_bound(int r, std::size_t nslopes);

/// Omega at an interior vertex of a total-degree mesh.
long omega(const Mesh& mesh, const DegreeDistribution& deg, int r, std::size_t v);

/// Edge reduction on a triangulation: certified when an endpoint of e has
/// another interior incident edge already at -1.
Certificate tri_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                          const SmoothnessDistribution& r, std::size_t e);

/// dim of P_m modulo the sum of the vertex ideals around face f. Requires the
/// uniform total-degree setting and all vertices of f interior.
long face_removal_cokernel_dim(const Mesh& mesh, const DegreeDistribution& deg,
                               const SmoothnessDistribution& r, std::size_t f);

/// Face-boundary reduction on a triangulation, by the Omega bound
/// 2m > Omega_1 + Omega_2 + Omega_3 - 3 or by the exact cokernel route.
Certificate triangle_removal_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                  const SmoothnessDistribution& r, std::size_t f);

/// Face-boundary reduction on a convex polygonal face: m > 3r, or
/// m > Omega_i + Omega_{i+1} - 2 for some consecutive vertex pair.
Certificate polygonal_face_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                const SmoothnessDistribution& r, std::size_t f);

/// Single-edge reduction on a polygonal mesh: m > Omega_1 + Omega_2 - 2 at
/// the two interior endpoints.
Certificate polygonal_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                const SmoothnessDistribution& r, std::size_t e);

/// Weight of a segment: dimension of the univariate space spanned by the
/// transversal-edge ideal slices along A.
long segment_weight(const Mesh& mesh, const DegreeDistribution& deg,
                    const SmoothnessDistribution& s, const Segment& seg);

/// Segment reduction: certified when A extends to a strictly larger segment
/// already at or below new_r, or when the weight is full (m_A + 1).
Certificate tmesh_segment_rule(const Mesh& mesh, const DegreeDistribution& deg,
                               const SmoothnessDistribution& r, const Segment& seg,
                               int new_r);

/// T-mesh edge reduction: certified when e touches an interior edge at -1
/// with at least its degree.
Certificate tmesh_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                            const SmoothnessDistribution& r, std::size_t e);

struct ReductionStep {
    enum class Kind { Edge, Line, Face };
    Kind kind = Kind::Edge;
    std::size_t u = 0, v = 0;      // Edge: endpoint vertex ids
    Axis axis = Axis::Horizontal;  // Line: axis the line is parallel to
    Rational coord;                // Line: y (horizontal) or x (vertical)
    std::size_t face = 0;          // Face
    int new_r = -1;

    static ReductionStep edge(std::size_t u, std::size_t v, int new_r);
    static ReductionStep line(Axis axis, Rational coord, int new_r);
    static ReductionStep whole_face(std::size_t f, int new_r);
};

struct ReductionRequest {
    std::vector<ReductionStep> steps;
};

struct ReductionResult {
    SmoothnessDistribution smoothness;
    std::vector<Certificate> certificates;
    bool all_certified = true;
};

/// Applies the requested reductions in order, one auto-selected rule per
/// step. Uncertified steps are still performed and flagged; raising
/// smoothness anywhere is an error.
ReductionResult reduce(const Mesh& mesh, const DegreeDistribution& deg,
                       const SmoothnessDistribution& r, const ReductionRequest& request);

/// Faces all of whose edges carry r = -1.
std::vector<std::size_t> prunable_faces(const Mesh& mesh,
                                        const SmoothnessDistribution& r);

struct PruneResult {
    Mesh mesh;
    DegreeDistribution deg;
    SmoothnessDistribution smoothness;
    std::vector<std::size_t> removed_faces;  // original face ids
    std::vector<std::size_t> face_map;       // new face id -> original face id
    std::vector<std::size_t> vertex_map;     // new vertex id -> original vertex id
};

/// Deletes every prunable face and restricts the distributions. Throws when
/// the pruned domain is empty, disconnected, or otherwise invalid.
PruneResult prune(const Mesh& mesh, const DegreeDistribution& deg,
                  const SmoothnessDistribution& r);

/// chi(Q^r) minus the removed faces' space dimensions. Requires Q^r
/// lower-acyclic and fully released cells around the removed faces; throws
/// "formula inapplicable" otherwise.
long pruned_dimension(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r,
                      const std::vector<std::size_t>& faces);

}  // namespace splinedim
