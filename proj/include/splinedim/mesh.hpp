#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splinedim/exactla.hpp"
#include "splinedim/polyspace.hpp"

namespace splinedim {

struct Point {
    Rational x, y;

    bool operator==(const Point&) const = default;
};

struct EdgeRec {
    std::size_t tail = 0;  // vertex ids, tail < head
    std::size_t head = 0;
    LinearForm line;
    std::vector<std::size_t> faces;  // adjacent face ids, in discovery order
};

struct FaceRec {
    std::vector<std::size_t> loop;   // counterclockwise vertex ids
    std::vector<std::size_t> edges;  // edge id for loop[k] -> loop[k+1]
    std::vector<int> signs;          // +1 when traversal runs tail -> head
};

struct Violation {
    std::string code;
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    bool ok() const { return violations.empty(); }
};

/// Polygonal mesh with exact rational coordinates. Faces are given as vertex
/// loops; edges and incidence are derived. Values are immutable once built.
class Mesh {
  public:
    static Mesh from_loops(std::vector<Point> vertices,
                           std::vector<std::vector<std::size_t>> loops);

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t edge_count() const { return edges_.size(); }
    std::size_t face_count() const { return faces_.size(); }

    const Point& vertex(std::size_t v) const { return vertices_[v]; }
    const EdgeRec& edge(std::size_t e) const { return edges_[e]; }
    const FaceRec& face(std::size_t f) const { return faces_[f]; }

    const std::vector<std::size_t>& edges_at_vertex(std::size_t v) const {
        return vertex_edges_[v];
    }

    bool edge_interior(std::size_t e) const { return edges_[e].faces.size() == 2; }
    bool vertex_interior(std::size_t v) const { return vertex_interior_[v]; }

    /// Interior edge ids in id order, then interior vertex ids in id order.
    const std::vector<std::size_t>& interior_edges() const { return interior_edges_; }
    const std::vector<std::size_t>& interior_vertices() const {
        return interior_vertices_;
    }

    /// Faces whose loop contains v (closure incidence), in id order.
    const std::vector<std::size_t>& faces_at_vertex(std::size_t v) const {
        return vertex_faces_[v];
    }

    std::optional<std::size_t> edge_between(std::size_t u, std::size_t v) const;

    /// All Definition-of-mesh checks; returns every violation found.
    ValidationReport validate() const;

    /// Normalized supporting-line form of edge e.
    const LinearForm& edge_line_form(std::size_t e) const { return edges_[e].line; }

    /// Number of distinct supporting-line directions among edges at v.
    std::size_t slopes_at_vertex(std::size_t v) const;

    bool is_tmesh() const;

  private:
    std::vector<Point> vertices_;
    std::vector<EdgeRec> edges_;
    std::vector<FaceRec> faces_;
    std::vector<std::vector<std::size_t>> vertex_edges_;
    std::vector<std::vector<std::size_t>> vertex_faces_;
    std::vector<bool> vertex_interior_;
    std::vector<std::size_t> interior_edges_;
    std::vector<std::size_t> interior_vertices_;
};

/// Per-face polynomial space assignment; a single kind for the whole mesh.
struct DegreeDistribution {
    SpaceKind kind = SpaceKind::TotalDegree;
    std::vector<int> face_m;

    static DegreeDistribution uniform(const Mesh& mesh, SpaceKind kind, int m);

    PolySpaceSpec face_spec(std::size_t f) const { return {kind, face_m.at(f)}; }
};

/// Edge and vertex spaces induced by the max rule P_tau = max over adjacent
/// faces, P_gamma = max over incident faces.
struct InducedDegrees {
    SpaceKind kind = SpaceKind::TotalDegree;
    std::vector<int> edge_m;
    std::vector<int> vertex_m;

    PolySpaceSpec edge_spec(std::size_t e) const { return {kind, edge_m.at(e)}; }
    PolySpaceSpec vertex_spec(std::size_t v) const { return {kind, vertex_m.at(v)}; }
};

InducedDegrees induced_spaces(const Mesh& mesh, const DegreeDistribution& deg);

enum class Axis { Horizontal, Vertical };

/// Maximal run of collinear interior T-mesh edges sharing one edge degree.
struct Segment {
    Axis axis = Axis::Horizontal;
    Rational line_coord;        // y for horizontal, x for vertical
    Rational lo, hi;            // span along the line
    std::vector<std::size_t> edges;  // ordered along the line
    int m = 0;                  // shared edge degree m_A
};

/// All maximal segments, horizontal then vertical, ordered by line coordinate
/// then span. Throws unless the mesh is a T-mesh.
std::vector<Segment> detect_segments(const Mesh& mesh, const DegreeDistribution& deg);

struct Transversal {
    std::size_t edge = 0;
    Rational coord;  // crossing coordinate along the segment
    int m = 0;       // m of the transversal edge
};

/// Mesh edges (interior and boundary) perpendicular to A whose closure meets
/// the closed span of A.
std::vector<Transversal> transversal_edges(const Mesh& mesh,
                                           const DegreeDistribution& deg,
                                           const Segment& seg);

}  // namespace splinedim
