#include "splinedim/mesh.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace splinedim {

namespace {

// Sign of the cross product (q - p) x (r - p): orientation of the triple.
int orient(const Point& p, const Point& q, const Point& r) {
    const Rational det =
        (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

bool on_segment(const Point& a, const Point& b, const Point& p) {
    if (orient(a, b, p) != 0) return false;
    const Rational lox = std::min(a.x, b.x), hix = std::max(a.x, b.x);
    const Rational loy = std::min(a.y, b.y), hiy = std::max(a.y, b.y);
    return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}

bool strictly_on_segment(const Point& a, const Point& b, const Point& p) {
    return on_segment(a, b, p) && !(p == a) && !(p == b);
}

LinearForm line_through(const Point& p, const Point& q) {
    const Rational dx = q.x - p.x;
    const Rational dy = q.y - p.y;
    // normal (dy, -dx); constant fixed by passing through p
    return normalized_form(dy, -dx, -(dy * p.x) + dx * p.y);
}

Rational twice_signed_area(const Mesh& mesh, const FaceRec& face) {
    Rational area = 0;
    const std::size_t n = face.loop.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Point& p = mesh.vertex(face.loop[k]);
        const Point& q = mesh.vertex(face.loop[(k + 1) % n]);
        area += p.x * q.y - q.x * p.y;
    }
    return area;
}

}  // namespace

Mesh Mesh::from_loops(std::vector<Point> vertices,
                      std::vector<std::vector<std::size_t>> loops) {
    Mesh mesh;
    mesh.vertices_ = std::move(vertices);
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> edge_ids;
    for (std::vector<std::size_t>& loop : loops) {
        if (loop.size() < 3) throw std::invalid_argument("face loop needs >= 3 vertices");
        FaceRec face;
        face.loop = std::move(loop);
        for (std::size_t k = 0; k < face.loop.size(); ++k) {
            const std::size_t u = face.loop[k];
            const std::size_t v = face.loop[(k + 1) % face.loop.size()];
            if (u >= mesh.vertices_.size() || v >= mesh.vertices_.size()) {
                throw std::invalid_argument("face loop references unknown vertex");
            }
            if (u == v || mesh.vertices_[u] == mesh.vertices_[v]) {
                throw std::invalid_argument("degenerate edge in face loop");
            }
            const auto key = std::minmax(u, v);
            auto [it, inserted] = edge_ids.try_emplace(key, mesh.edges_.size());
            if (inserted) {
                EdgeRec edge;
                edge.tail = key.first;
                edge.head = key.second;
                edge.line = line_through(mesh.vertices_[edge.tail],
                                         mesh.vertices_[edge.head]);
                mesh.edges_.push_back(std::move(edge));
            }
            face.edges.push_back(it->second);
            face.signs.push_back(u == key.first ? 1 : -1);
        }
        mesh.faces_.push_back(std::move(face));
    }
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        for (std::size_t e : mesh.faces_[f].edges) {
            mesh.edges_[e].faces.push_back(f);
        }
    }
    mesh.vertex_edges_.resize(mesh.vertices_.size());
    for (std::size_t e = 0; e < mesh.edges_.size(); ++e) {
        mesh.vertex_edges_[mesh.edges_[e].tail].push_back(e);
        mesh.vertex_edges_[mesh.edges_[e].head].push_back(e);
    }
    mesh.vertex_faces_.resize(mesh.vertices_.size());
    for (std::size_t f = 0; f < mesh.faces_.size(); ++f) {
        for (std::size_t v : mesh.faces_[f].loop) mesh.vertex_faces_[v].push_back(f);
    }
    for (auto& faces : mesh.vertex_faces_) {
        std::sort(faces.begin(), faces.end());
        faces.erase(std::unique(faces.begin(), faces.end()), faces.end());
    }
    // interiority: an edge is interior iff it borders two faces; a vertex is
    // interior iff it has edges and all of them are interior
    mesh.vertex_interior_.assign(mesh.vertices_.size(), false);
    for (std::size_t v = 0; v < mesh.vertices_.size(); ++v) {
        const std::vector<std::size_t>& at = mesh.vertex_edges_[v];
        mesh.vertex_interior_[v] =
            !at.empty() && std::all_of(at.begin(), at.end(), [&](std::size_t e) {
                return mesh.edge_interior(e);
            });
    }
    for (std::size_t e = 0; e < mesh.edges_.size(); ++e) {
        if (mesh.edge_interior(e)) mesh.interior_edges_.push_back(e);
    }
    for (std::size_t v = 0; v < mesh.vertices_.size(); ++v) {
        if (mesh.vertex_interior_[v]) mesh.interior_vertices_.push_back(v);
    }
    return mesh;
}

std::optional<std::size_t> Mesh::edge_between(std::size_t u, std::size_t v) const {
    const auto [lo, hi] = std::minmax(u, v);
    for (std::size_t e : vertex_edges_[lo]) {
        if (edges_[e].tail == lo && edges_[e].head == hi) return e;
    }
    return std::nullopt;
}

std::size_t Mesh::slopes_at_vertex(std::size_t v) const {
    std::set<std::pair<Rational, Rational>> directions;
    for (std::size_t e : vertex_edges_[v]) {
        directions.insert({edges_[e].line.a, edges_[e].line.b});
    }
    return directions.size();
}

bool Mesh::is_tmesh() const {
    for (const EdgeRec& e : edges_) {
        if (e.line.a != 0 && e.line.b != 0) return false;
    }
    for (const FaceRec& f : faces_) {
        Rational lox = vertices_[f.loop[0]].x, hix = lox;
        Rational loy = vertices_[f.loop[0]].y, hiy = loy;
        for (std::size_t v : f.loop) {
            lox = std::min(lox, vertices_[v].x);
            hix = std::max(hix, vertices_[v].x);
            loy = std::min(loy, vertices_[v].y);
            hiy = std::max(hiy, vertices_[v].y);
        }
        // every loop vertex must lie on the bounding rectangle's sides, and
        // all four corners must be loop vertices
        std::set<std::pair<Rational, Rational>> corners;
        for (std::size_t v : f.loop) {
            const Point& p = vertices_[v];
            const bool on_x = p.x == lox || p.x == hix;
            const bool on_y = p.y == loy || p.y == hiy;
            if (!on_x && !on_y) return false;
            if (on_x && on_y) corners.insert({p.x, p.y});
        }
        if (corners.size() != 4) return false;
    }
    return true;
}

ValidationReport Mesh::validate() const {
    ValidationReport report;
    auto flag = [&report](std::string code, std::string detail) {
        report.violations.push_back({std::move(code), std::move(detail)});
    };

    for (std::size_t v = 0; v + 1 < vertices_.size(); ++v) {
        for (std::size_t w = v + 1; w < vertices_.size(); ++w) {
            if (vertices_[v] == vertices_[w]) {
                flag("duplicate_vertex",
                     "vertices " + std::to_string(v) + " and " + std::to_string(w) +
                         " have identical coordinates");
            }
        }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        if (vertex_edges_[v].empty()) {
            flag("unused_vertex", "vertex " + std::to_string(v) + " lies on no edge");
        }
    }

    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const FaceRec& face = faces_[f];
        std::set<std::size_t> seen(face.loop.begin(), face.loop.end());
        if (seen.size() != face.loop.size()) {
            flag("face_repeated_vertex",
                 "face " + std::to_string(f) + " visits a vertex twice");
        }
        std::set<std::size_t> edge_set(face.edges.begin(), face.edges.end());
        if (edge_set.size() != face.edges.size()) {
            flag("edge_repeated_in_face",
                 "face " + std::to_string(f) + " uses an edge twice");
        }
        if (twice_signed_area(*this, face) <= 0) {
            flag("face_not_ccw",
                 "face " + std::to_string(f) + " is not counterclockwise");
        }
    }

    // Definition bullet 3: two distinct edges meet at most in a shared vertex.
    for (std::size_t e = 0; e < edges_.size(); ++e) {
        const Point& a = vertices_[edges_[e].tail];
        const Point& b = vertices_[edges_[e].head];
        for (std::size_t g = e + 1; g < edges_.size(); ++g) {
            const Point& c = vertices_[edges_[g].tail];
            const Point& d = vertices_[edges_[g].head];
            const bool share_vertex = edges_[e].tail == edges_[g].tail ||
                                      edges_[e].tail == edges_[g].head ||
                                      edges_[e].head == edges_[g].tail ||
                                      edges_[e].head == edges_[g].head;
            bool bad = false;
            if (orient(a, b, c) == 0 && orient(a, b, d) == 0) {
                // collinear: overlap iff some endpoint is strictly inside the
                // other segment
                bad = strictly_on_segment(a, b, c) || strictly_on_segment(a, b, d) ||
                      strictly_on_segment(c, d, a) || strictly_on_segment(c, d, b);
            } else if (!share_vertex) {
                const int o1 = orient(a, b, c), o2 = orient(a, b, d);
                const int o3 = orient(c, d, a), o4 = orient(c, d, b);
                if (o1 != o2 && o3 != o4 && o1 * o2 <= 0 && o3 * o4 <= 0) {
                    bad = (o1 * o2 < 0 && o3 * o4 < 0) ||
                          strictly_on_segment(a, b, c) || strictly_on_segment(a, b, d) ||
                          strictly_on_segment(c, d, a) || strictly_on_segment(c, d, b);
                }
            } else {
                bad = strictly_on_segment(a, b, c) || strictly_on_segment(a, b, d) ||
                      strictly_on_segment(c, d, a) || strictly_on_segment(c, d, b);
            }
            if (bad) {
                flag("edges_cross", "edges " + std::to_string(e) + " and " +
                                        std::to_string(g) +
                                        " intersect outside a shared vertex");
            }
        }
    }

    for (std::size_t e = 0; e < edges_.size(); ++e) {
        if (edges_[e].faces.size() > 2) {
            flag("edge_face_count",
                 "edge " + std::to_string(e) + " borders more than two faces");
        } else if (edges_[e].faces.size() == 2) {
            const FaceRec& f0 = faces_[edges_[e].faces[0]];
            const FaceRec& f1 = faces_[edges_[e].faces[1]];
            int s0 = 0, s1 = 0;
            for (std::size_t k = 0; k < f0.edges.size(); ++k)
                if (f0.edges[k] == e) s0 = f0.signs[k];
            for (std::size_t k = 0; k < f1.edges.size(); ++k)
                if (f1.edges[k] == e) s1 = f1.signs[k];
            if (s0 == s1) {
                flag("orientation_mismatch",
                     "edge " + std::to_string(e) +
                         " is traversed in the same direction by both faces");
            }
        }
    }

    // Connectivity of the domain via the face adjacency graph.
    if (!faces_.empty()) {
        std::vector<bool> seen(faces_.size(), false);
        std::vector<std::size_t> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            const std::size_t f = stack.back();
            stack.pop_back();
            for (std::size_t e : faces_[f].edges) {
                for (std::size_t g : edges_[e].faces) {
                    if (!seen[g]) {
                        seen[g] = true;
                        stack.push_back(g);
                    }
                }
            }
        }
        if (!std::all_of(seen.begin(), seen.end(), [](bool s) { return s; })) {
            flag("domain_disconnected", "face adjacency graph is not connected");
        }
    }

    // Definition bullet 2 residual: face interiors must not overlap. Each
    // face contributes one exact interior sample point, tested against every
    // other face.
    std::vector<std::optional<Point>> samples(faces_.size());
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        const FaceRec& face = faces_[f];
        std::vector<Rational> ys;
        for (std::size_t v : face.loop) ys.push_back(vertices_[v].y);
        std::sort(ys.begin(), ys.end());
        ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
        if (ys.size() < 2) continue;  // degenerate face, already flagged
        const Rational ymid = (ys[0] + ys[1]) / 2;
        std::vector<Rational> xs;
        const std::size_t n = face.loop.size();
        for (std::size_t k = 0; k < n; ++k) {
            const Point& p = vertices_[face.loop[k]];
            const Point& q = vertices_[face.loop[(k + 1) % n]];
            if ((p.y > ymid) != (q.y > ymid)) {
                xs.push_back(p.x + (q.x - p.x) * (ymid - p.y) / (q.y - p.y));
            }
        }
        std::sort(xs.begin(), xs.end());
        if (xs.size() >= 2) samples[f] = Point{(xs[0] + xs[1]) / 2, ymid};
    }
    auto strictly_inside = [&](const Point& p, const FaceRec& face) {
        const std::size_t n = face.loop.size();
        for (std::size_t k = 0; k < n; ++k) {
            if (on_segment(vertices_[face.loop[k]], vertices_[face.loop[(k + 1) % n]], p))
                return false;
        }
        bool inside = false;
        for (std::size_t k = 0; k < n; ++k) {
            const Point& a = vertices_[face.loop[k]];
            const Point& b = vertices_[face.loop[(k + 1) % n]];
            if ((a.y > p.y) != (b.y > p.y)) {
                const Rational xint = a.x + (b.x - a.x) * (p.y - a.y) / (b.y - a.y);
                if (xint > p.x) inside = !inside;
            }
        }
        return inside;
    };
    for (std::size_t f = 0; f < faces_.size(); ++f) {
        if (!samples[f]) continue;
        for (std::size_t g = 0; g < faces_.size(); ++g) {
            if (f == g) continue;
            if (strictly_inside(*samples[f], faces_[g])) {
                flag("overlapping_faces", "faces " + std::to_string(f) + " and " +
                                              std::to_string(g) + " overlap");
            }
        }
    }

    // An interior vertex with a single incident slope is a gratuitous
    // subdivision point; downstream regularity bounds assume n >= 2.
    for (std::size_t v : interior_vertices_) {
        if (slopes_at_vertex(v) < 2) {
            flag("spurious_vertex", "interior vertex " + std::to_string(v) +
                                        " has fewer than two distinct slopes");
        }
    }

    // The corners of the incident faces must chain the incident edges into a
    // single component; two separate fans would pinch the domain at v.
    for (std::size_t v = 0; v < vertices_.size(); ++v) {
        const std::vector<std::size_t>& at = vertex_edges_[v];
        if (at.size() < 2) continue;
        std::map<std::size_t, std::size_t> comp;  // edge -> representative
        for (std::size_t e : at) comp[e] = e;
        auto find = [&](std::size_t e) {
            while (comp[e] != e) e = comp[e] = comp[comp[e]];
            return e;
        };
        for (std::size_t fid : vertex_faces_[v]) {
            const FaceRec& face = faces_[fid];
            const std::size_t n = face.loop.size();
            for (std::size_t k = 0; k < n; ++k) {
                if (face.loop[k] != v) continue;
                const std::size_t eprev = face.edges[(k + n - 1) % n];
                const std::size_t enext = face.edges[k];
                comp[find(eprev)] = find(enext);
            }
        }
        std::set<std::size_t> reps;
        for (std::size_t e : at) reps.insert(find(e));
        if (reps.size() > 1) {
            flag("pinched_vertex",
                 "vertex " + std::to_string(v) + " joins disconnected face fans");
        }
    }

    return report;
}

DegreeDistribution DegreeDistribution::uniform(const Mesh& mesh, SpaceKind kind,
                                               int m) {
    DegreeDistribution deg;
    deg.kind = kind;
    deg.face_m.assign(mesh.face_count(), m);
    return deg;
}

InducedDegrees induced_spaces(const Mesh& mesh, const DegreeDistribution& deg) {
    if (deg.face_m.size() != mesh.face_count()) {
        throw std::invalid_argument("degree distribution does not match the mesh");
    }
    InducedDegrees induced;
    induced.kind = deg.kind;
    induced.edge_m.assign(mesh.edge_count(), 0);
    induced.vertex_m.assign(mesh.vertex_count(), 0);
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
        int m = -1;
        for (std::size_t f : mesh.edge(e).faces) m = std::max(m, deg.face_m[f]);
        if (m < 0) throw std::invalid_argument("edge without adjacent faces");
        induced.edge_m[e] = m;
    }
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        int m = 0;
        for (std::size_t f : mesh.faces_at_vertex(v)) m = std::max(m, deg.face_m[f]);
        induced.vertex_m[v] = m;
    }
    return induced;
}

namespace {

// Axis-parallel edge helpers. For a vertical edge the line form is x + c,
// so the line coordinate is -c; same for horizontal with y + c.
bool edge_is_vertical(const EdgeRec& e) { return e.line.b == 0; }

Rational line_coordinate(const EdgeRec& e) { return -e.line.c; }

struct SpanEdge {
    Rational lo, hi;
    std::size_t id;
};

}  // namespace

std::vector<Segment> detect_segments(const Mesh& mesh, const DegreeDistribution& deg) {
    if (!mesh.is_tmesh()) {
        throw std::invalid_argument("segments defined only for T-meshes");
    }
    const InducedDegrees induced = induced_spaces(mesh, deg);
    std::vector<Segment> out;
    for (const Axis axis : {Axis::Horizontal, Axis::Vertical}) {
        std::map<Rational, std::vector<SpanEdge>> lines;
        for (std::size_t e : mesh.interior_edges()) {
            const EdgeRec& edge = mesh.edge(e);
            if (edge_is_vertical(edge) != (axis == Axis::Vertical)) continue;
            const Point& p = mesh.vertex(edge.tail);
            const Point& q = mesh.vertex(edge.head);
            SpanEdge span;
            span.id = e;
            if (axis == Axis::Horizontal) {
                span.lo = std::min(p.x, q.x);
                span.hi = std::max(p.x, q.x);
            } else {
                span.lo = std::min(p.y, q.y);
                span.hi = std::max(p.y, q.y);
            }
            lines[line_coordinate(edge)].push_back(span);
        }
        for (auto& [coord, spans] : lines) {
            std::sort(spans.begin(), spans.end(),
                      [](const SpanEdge& a, const SpanEdge& b) { return a.lo < b.lo; });
            Segment current;
            auto open = [&](const SpanEdge& s) {
                current = Segment{};
                current.axis = axis;
                current.line_coord = coord;
                current.lo = s.lo;
                current.hi = s.hi;
                current.edges = {s.id};
                current.m = induced.edge_m[s.id];
            };
            bool active = false;
            for (const SpanEdge& s : spans) {
                if (!active) {
                    open(s);
                    active = true;
                    continue;
                }
                if (s.lo == current.hi && induced.edge_m[s.id] == current.m) {
                    current.hi = s.hi;
                    current.edges.push_back(s.id);
                } else {
                    out.push_back(current);
                    open(s);
                }
            }
            if (active) out.push_back(current);
        }
    }
    return out;
}

std::vector<Transversal> transversal_edges(const Mesh& mesh,
                                           const DegreeDistribution& deg,
                                           const Segment& seg) {
    const InducedDegrees induced = induced_spaces(mesh, deg);
    std::vector<Transversal> out;
    for (std::size_t e = 0; e < mesh.edge_count(); ++e) {
        const EdgeRec& edge = mesh.edge(e);
        const bool vertical = edge_is_vertical(edge);
        if (vertical != (seg.axis == Axis::Horizontal)) continue;
        const Point& p = mesh.vertex(edge.tail);
        const Point& q = mesh.vertex(edge.head);
        Rational cross = line_coordinate(edge);
        Rational lo, hi;
        if (vertical) {
            lo = std::min(p.y, q.y);
            hi = std::max(p.y, q.y);
        } else {
            lo = std::min(p.x, q.x);
            hi = std::max(p.x, q.x);
        }
        if (cross < seg.lo || cross > seg.hi) continue;
        if (seg.line_coord < lo || seg.line_coord > hi) continue;
        out.push_back({e, cross, induced.edge_m[e]});
    }
    return out;
}

}  // namespace splinedim
