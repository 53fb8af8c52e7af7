#include "splinedim/rules.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <stdexcept>

namespace splinedim {

namespace {

bool uniform_total_degree(const DegreeDistribution& deg, int& m_out) {
    if (deg.kind != SpaceKind::TotalDegree || deg.face_m.empty()) return false;
    m_out = deg.face_m[0];
    return std::all_of(deg.face_m.begin(), deg.face_m.end(),
                       [&](int m) { return m == m_out; });
}

bool all_triangles(const Mesh& mesh) {
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        if (mesh.face(f).loop.size() != 3) return false;
    }
    return true;
}

Certificate not_applicable(std::string rule, std::string why) {
    Certificate cert;
    cert.rule = std::move(rule);
    cert.certified = false;
    cert.detail = std::move(why);
    return cert;
}

int orient_sign(const Point& p, const Point& q, const Point& r) {
    const Rational det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    return det > 0 ? 1 : (det < 0 ? -1 : 0);
}

bool face_convex(const Mesh& mesh, std::size_t f) {
    const std::vector<std::size_t>& loop = mesh.face(f).loop;
    const std::size_t n = loop.size();
    for (std::size_t k = 0; k < n; ++k) {
        if (orient_sign(mesh.vertex(loop[k]), mesh.vertex(loop[(k + 1) % n]),
                        mesh.vertex(loop[(k + 2) % n])) < 0) {
            return false;
        }
    }
    return true;
}

}  // namespace

long omega_bound(int r, std::size_t nslopes) {
    if (r < 0) throw std::invalid_argument("omega requires smoothness r >= 0");
    if (nslopes < 2) {
        throw std::invalid_argument("omega requires at least two distinct slopes");
    }
    const long t = std::min<long>(r + 2, nslopes);
    return r + (r + 1 + (t - 1) - 1) / (t - 1);  // r + ceil((r+1)/(t-1))
}

long omega(const Mesh& mesh, const DegreeDistribution& deg, int r, std::size_t v) {
    if (deg.kind != SpaceKind::TotalDegree) {
        throw std::invalid_argument("omega is defined in the total-degree setting");
    }
    if (!mesh.vertex_interior(v)) {
        throw std::invalid_argument("omega is defined at interior vertices");
    }
    return omega_bound(r, mesh.slopes_at_vertex(v));
}

Certificate tri_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                          const SmoothnessDistribution& r, std::size_t e) {
    const char* rule = "tri_edge";
    int m = 0;
    if (!uniform_total_degree(deg, m)) {
        return not_applicable(rule, "uniform total-degree setting required");
    }
    if (!all_triangles(mesh)) return not_applicable(rule, "mesh is not a triangulation");
    if (!mesh.edge_interior(e)) return not_applicable(rule, "edge is not interior");
    if (r.at(e) < 0) return not_applicable(rule, "edge already carries r = -1");
    for (const std::size_t v : {mesh.edge(e).tail, mesh.edge(e).head}) {
        for (const std::size_t other : mesh.edges_at_vertex(v)) {
            if (other == e || !mesh.edge_interior(other)) continue;
            if (r.at(other) == -1) {
                Certificate cert;
                cert.rule = rule;
                cert.certified = true;
                cert.detail = "endpoint has an interior incident edge at -1";
                cert.evidence = {{"vertex", static_cast<long>(v)},
                                 {"witness_edge", static_cast<long>(other)}};
                cert.edges = {e};
                cert.new_r = -1;
                return cert;
            }
        }
    }
    return not_applicable(rule, "no endpoint has an interior incident edge at -1");
}

long face_removal_cokernel_dim(const Mesh& mesh, const DegreeDistribution& deg,
                               const SmoothnessDistribution& r, std::size_t f) {
    int m = 0;
    if (!uniform_total_degree(deg, m)) {
        throw std::invalid_argument("cokernel dimension needs the uniform total-degree setting");
    }
    const PolySpaceSpec spec{SpaceKind::TotalDegree, m};
    RationalMatrix stacked(0, space_dim(spec));
    for (const std::size_t v : mesh.face(f).loop) {
        if (!mesh.vertex_interior(v)) {
            throw std::invalid_argument("face has a boundary vertex");
        }
        for (const std::size_t e : mesh.edges_at_vertex(v)) {
            if (r.at(e) == -1) {
                return 0;  // J_gamma is all of P_m
            }
            stacked.append_rows(
                ideal_generator_matrix(spec, mesh.edge_line_form(e), r.at(e) + 1));
        }
    }
    return space_dim(spec) - static_cast<long>(rank(stacked));
}

Certificate triangle_removal_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                  const SmoothnessDistribution& r, std::size_t f) {
    const char* rule = "triangle_removal";
    int m = 0;
    if (!uniform_total_degree(deg, m)) {
        return not_applicable(rule, "uniform total-degree setting required");
    }
    const FaceRec& face = mesh.face(f);
    if (face.loop.size() != 3) return not_applicable(rule, "face is not a triangle");
    for (const std::size_t v : face.loop) {
        if (!mesh.vertex_interior(v)) {
            return not_applicable(rule, "face has a boundary vertex");
        }
    }
    const int rr = r.at(face.edges[0]);
    for (const std::size_t e : face.edges) {
        if (r.at(e) != rr || rr < 0) {
            return not_applicable(rule, "face edges do not share a smoothness r >= 0");
        }
    }
    for (const std::size_t v : face.loop) {
        for (const std::size_t e : mesh.edges_at_vertex(v)) {
            if (r.at(e) == -1) {
                return not_applicable(rule, "a face vertex touches an edge at -1");
            }
        }
    }
    Certificate cert;
    cert.rule = rule;
    cert.edges = {face.edges.begin(), face.edges.end()};
    cert.new_r = -1;
    long omega_sum = 0;
    for (std::size_t k = 0; k < 3; ++k) {
        const long om = omega(mesh, deg, rr, face.loop[k]);
        cert.evidence.emplace_back("omega_" + std::to_string(k + 1), om);
        omega_sum += om;
    }
    cert.evidence.emplace_back("m", m);
    cert.evidence.emplace_back("r", rr);
    if (2 * m > omega_sum - 3) {
        cert.certified = true;
        cert.detail = "2m > omega_1 + omega_2 + omega_3 - 3";
        return cert;
    }
    const long coker = face_removal_cokernel_dim(mesh, deg, r, f);
    cert.evidence.emplace_back("cokernel_dim", coker);
    if (coker == 0) {
        cert.certified = true;
        cert.detail = "cokernel of the face map vanishes";
        return cert;
    }
    cert.detail = "omega bound fails and the cokernel is nonzero";
    return cert;
}

Certificate polygonal_face_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                const SmoothnessDistribution& r, std::size_t f) {
    const char* rule = "polygonal_face";
    int m = 0;
    if (!uniform_total_degree(deg, m)) {
        return not_applicable(rule, "uniform total-degree setting required");
    }
    if (!face_convex(mesh, f)) {
        return not_applicable(rule, "warning: face is not convex");
    }
    const FaceRec& face = mesh.face(f);
    for (const std::size_t v : face.loop) {
        if (!mesh.vertex_interior(v)) {
            return not_applicable(rule, "face has a boundary vertex");
        }
    }
    const int rr = r.at(face.edges[0]);
    for (const std::size_t e : face.edges) {
        if (r.at(e) != rr || rr < 0) {
            return not_applicable(rule, "face edges do not share a smoothness r >= 0");
        }
    }
    Certificate cert;
    cert.rule = rule;
    cert.edges = {face.edges.begin(), face.edges.end()};
    cert.new_r = -1;
    cert.evidence.emplace_back("m", m);
    cert.evidence.emplace_back("r", rr);
    if (m > 3 * rr) {
        cert.certified = true;
        cert.detail = "m > 3r";
        return cert;
    }
    const std::size_t n = face.loop.size();
    std::vector<long> omegas(n);
    for (std::size_t k = 0; k < n; ++k) {
        omegas[k] = omega(mesh, deg, rr, face.loop[k]);
        cert.evidence.emplace_back("omega_" + std::to_string(k + 1), omegas[k]);
    }
    for (std::size_t k = 0; k < n; ++k) {
        if (m > omegas[k] + omegas[(k + 1) % n] - 2) {
            cert.certified = true;
            cert.detail = "m > omega_i + omega_{i+1} - 2 at consecutive vertices " +
                          std::to_string(k + 1) + "," + std::to_string((k + 1) % n + 1);
            return cert;
        }
    }
    cert.detail = "neither the 3r bound nor a consecutive omega pair certifies";
    return cert;
}

Certificate polygonal_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                                const SmoothnessDistribution& r, std::size_t e) {
    const char* rule = "polygonal_edge";
    int m = 0;
    if (!uniform_total_degree(deg, m)) {
        return not_applicable(rule, "uniform total-degree setting required");
    }
    if (!mesh.edge_interior(e)) return not_applicable(rule, "edge is not interior");
    const int rr = r.at(e);
    if (rr < 0) return not_applicable(rule, "edge already carries r = -1");
    const std::size_t tail = mesh.edge(e).tail;
    const std::size_t head = mesh.edge(e).head;
    if (!mesh.vertex_interior(tail) || !mesh.vertex_interior(head)) {
        return not_applicable(rule, "edge has a boundary endpoint");
    }
    // The omega formula assumes a uniform smoothness around each endpoint.
    for (const std::size_t v : {tail, head}) {
        for (const std::size_t other : mesh.edges_at_vertex(v)) {
            if (r.at(other) != rr) {
                return not_applicable(rule, "mixed smoothness at an endpoint");
            }
        }
    }
    Certificate cert;
    cert.rule = rule;
    cert.edges = {e};
    cert.new_r = -1;
    const long o1 = omega(mesh, deg, rr, tail);
    const long o2 = omega(mesh, deg, rr, head);
    cert.evidence = {{"m", m}, {"r", rr}, {"omega_1", o1}, {"omega_2", o2}};
    if (m > o1 + o2 - 2) {
        cert.certified = true;
        cert.detail = "m > omega_1 + omega_2 - 2";
    } else {
        cert.detail = "omega bound fails";
    }
    return cert;
}

long segment_weight(const Mesh& mesh, const DegreeDistribution& deg,
                    const SmoothnessDistribution& s, const Segment& seg) {
    std::vector<ShiftedPoint> points;
    for (const Transversal& t : transversal_edges(mesh, deg, seg)) {
        points.push_back(
            {t.coord, s.at(t.edge) + 1, std::max(0, seg.m - t.m)});
    }
    return univ_sum_dim(seg.m, points);
}

Certificate tmesh_segment_rule(const Mesh& mesh, const DegreeDistribution& deg,
                               const SmoothnessDistribution& r, const Segment& seg,
                               int new_r) {
    const char* rule = "tmesh_segment";
    if (!mesh.is_tmesh()) return not_applicable(rule, "mesh is not a T-mesh");
    for (const std::size_t e : seg.edges) {
        if (new_r > r.at(e)) {
            throw std::invalid_argument("segment rule cannot raise smoothness");
        }
    }
    Certificate cert;
    cert.rule = rule;
    cert.edges = seg.edges;
    cert.new_r = new_r;

    // the distribution after the reduction, used for both conditions
    SmoothnessDistribution s = r;
    for (const std::size_t e : seg.edges) s.edge_r[e] = new_r;

    // (a) A extends inside a maximal segment to an edge already at or below
    // new_r: that larger segment B satisfies s <= new_r throughout.
    const std::set<std::size_t> in_seg(seg.edges.begin(), seg.edges.end());
    for (const Segment& maximal : detect_segments(mesh, deg)) {
        if (maximal.axis != seg.axis || maximal.line_coord != seg.line_coord) continue;
        bool contains = true;
        for (const std::size_t e : seg.edges) {
            if (std::find(maximal.edges.begin(), maximal.edges.end(), e) ==
                maximal.edges.end()) {
                contains = false;
                break;
            }
        }
        if (!contains) continue;
        for (const std::size_t e : maximal.edges) {
            if (in_seg.count(e)) continue;
            const EdgeRec& cand = mesh.edge(e);
            const Point& p = mesh.vertex(cand.tail);
            const Point& q = mesh.vertex(cand.head);
            const Rational lo = seg.axis == Axis::Horizontal ? std::min(p.x, q.x)
                                                             : std::min(p.y, q.y);
            const Rational hi = seg.axis == Axis::Horizontal ? std::max(p.x, q.x)
                                                             : std::max(p.y, q.y);
            const bool adjacent = hi == seg.lo || lo == seg.hi;
            if (adjacent && s.at(e) <= new_r) {
                cert.certified = true;
                cert.detail = "segment extends to a larger one already reduced";
                cert.evidence = {{"extension_edge", static_cast<long>(e)}};
                return cert;
            }
        }
    }

    const long weight = segment_weight(mesh, deg, s, seg);
    cert.evidence = {{"weight", weight}, {"m_A", seg.m}};
    if (weight == seg.m + 1) {
        cert.certified = true;
        cert.detail = "segment weight is full";
    } else {
        cert.detail = "weight below m_A + 1 and no enclosing reduced segment";
    }
    return cert;
}

Certificate tmesh_edge_rule(const Mesh& mesh, const DegreeDistribution& deg,
                            const SmoothnessDistribution& r, std::size_t e) {
    const char* rule = "tmesh_edge";
    if (!mesh.is_tmesh()) return not_applicable(rule, "mesh is not a T-mesh");
    if (!mesh.edge_interior(e)) return not_applicable(rule, "edge is not interior");
    if (r.at(e) < 0) return not_applicable(rule, "edge already carries r = -1");
    const InducedDegrees induced = induced_spaces(mesh, deg);
    for (const std::size_t v : {mesh.edge(e).tail, mesh.edge(e).head}) {
        for (const std::size_t other : mesh.edges_at_vertex(v)) {
            if (other == e || !mesh.edge_interior(other)) continue;
            if (r.at(other) == -1 && induced.edge_m[other] >= induced.edge_m[e]) {
                Certificate cert;
                cert.rule = rule;
                cert.certified = true;
                cert.detail = "touches an interior edge at -1 of at least equal degree";
                cert.evidence = {{"witness_edge", static_cast<long>(other)},
                                 {"witness_m", induced.edge_m[other]},
                                 {"edge_m", induced.edge_m[e]}};
                cert.edges = {e};
                cert.new_r = -1;
                return cert;
            }
        }
    }
    return not_applicable(rule, "no touching interior -1 edge of sufficient degree");
}

ReductionStep ReductionStep::edge(std::size_t u, std::size_t v, int new_r) {
    ReductionStep s;
    s.kind = Kind::Edge;
    s.u = u;
    s.v = v;
    s.new_r = new_r;
    return s;
}

ReductionStep ReductionStep::line(Axis axis, Rational coord, int new_r) {
    ReductionStep s;
    s.kind = Kind::Line;
    s.axis = axis;
    s.coord = std::move(coord);
    s.new_r = new_r;
    return s;
}

ReductionStep ReductionStep::whole_face(std::size_t f, int new_r) {
    ReductionStep s;
    s.kind = Kind::Face;
    s.face = f;
    s.new_r = new_r;
    return s;
}

namespace {

// Singleton segments let the weight rule handle a single T-mesh edge.
Segment singleton_segment(const Mesh& mesh, const DegreeDistribution& deg,
                          std::size_t e) {
    const InducedDegrees induced = induced_spaces(mesh, deg);
    const EdgeRec& edge = mesh.edge(e);
    const Point& p = mesh.vertex(edge.tail);
    const Point& q = mesh.vertex(edge.head);
    Segment seg;
    seg.axis = edge.line.b == 0 ? Axis::Vertical : Axis::Horizontal;
    seg.line_coord = -edge.line.c;
    if (seg.axis == Axis::Horizontal) {
        seg.lo = std::min(p.x, q.x);
        seg.hi = std::max(p.x, q.x);
    } else {
        seg.lo = std::min(p.y, q.y);
        seg.hi = std::max(p.y, q.y);
    }
    seg.edges = {e};
    seg.m = induced.edge_m[e];
    return seg;
}

Certificate certify_edge_step(const Mesh& mesh, const DegreeDistribution& deg,
                              const SmoothnessDistribution& current, std::size_t e,
                              int new_r) {
    if (mesh.is_tmesh()) {
        if (new_r == -1) {
            Certificate cert = tmesh_edge_rule(mesh, deg, current, e);
            if (cert.certified) return cert;
        }
        Certificate cert = tmesh_segment_rule(mesh, deg, current,
                                              singleton_segment(mesh, deg, e), new_r);
        cert.edges = {e};
        return cert;
    }
    if (new_r != -1) {
        Certificate cert = not_applicable("edge_step", "only reductions to -1 are certified here");
        cert.edges = {e};
        cert.new_r = new_r;
        return cert;
    }
    if (all_triangles(mesh)) {
        Certificate cert = tri_edge_rule(mesh, deg, current, e);
        if (cert.certified) return cert;
    }
    Certificate cert = polygonal_edge_rule(mesh, deg, current, e);
    cert.edges = {e};
    cert.new_r = new_r;
    return cert;
}

}  // namespace

ReductionResult reduce(const Mesh& mesh, const DegreeDistribution& deg,
                       const SmoothnessDistribution& r, const ReductionRequest& request) {
    check_smoothness(mesh, r);
    ReductionResult result;
    result.smoothness = r;
    for (const ReductionStep& step : request.steps) {
        SmoothnessDistribution& current = result.smoothness;
        std::vector<std::size_t> targets;
        std::vector<Certificate> certs;
        switch (step.kind) {
            case ReductionStep::Kind::Edge: {
                const std::optional<std::size_t> e = mesh.edge_between(step.u, step.v);
                if (!e) {
                    throw std::invalid_argument("no edge between the requested vertices");
                }
                targets = {*e};
                certs.push_back(certify_edge_step(mesh, deg, current, *e, step.new_r));
                break;
            }
            case ReductionStep::Kind::Line: {
                for (const Segment& seg : detect_segments(mesh, deg)) {
                    if (seg.axis != step.axis || seg.line_coord != step.coord) continue;
                    certs.push_back(
                        tmesh_segment_rule(mesh, deg, current, seg, step.new_r));
                    targets.insert(targets.end(), seg.edges.begin(), seg.edges.end());
                }
                if (targets.empty()) {
                    throw std::invalid_argument("no interior segment on the requested line");
                }
                break;
            }
            case ReductionStep::Kind::Face: {
                if (step.face >= mesh.face_count()) {
                    throw std::invalid_argument("no such face");
                }
                targets = mesh.face(step.face).edges;
                if (mesh.is_tmesh()) {
                    Certificate cert = not_applicable(
                        "face_step", "no face rule on T-meshes; reduce edges or segments");
                    cert.edges = targets;
                    cert.new_r = step.new_r;
                    certs.push_back(std::move(cert));
                } else if (step.new_r != -1) {
                    Certificate cert = not_applicable(
                        "face_step", "only reductions to -1 are certified here");
                    cert.edges = targets;
                    cert.new_r = step.new_r;
                    certs.push_back(std::move(cert));
                } else if (mesh.face(step.face).loop.size() == 3) {
                    certs.push_back(triangle_removal_rule(mesh, deg, current, step.face));
                } else {
                    certs.push_back(polygonal_face_rule(mesh, deg, current, step.face));
                }
                break;
            }
        }
        for (const std::size_t e : targets) {
            if (step.new_r > current.at(e)) {
                throw std::invalid_argument("reduction request raises smoothness on edge " +
                                            std::to_string(e));
            }
        }
        for (const std::size_t e : targets) current.edge_r[e] = step.new_r;
        for (Certificate& cert : certs) {
            result.all_certified = result.all_certified && cert.certified;
            result.certificates.push_back(std::move(cert));
        }
    }
    return result;
}

std::vector<std::size_t> prunable_faces(const Mesh& mesh,
                                        const SmoothnessDistribution& r) {
    std::vector<std::size_t> out;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        const std::vector<std::size_t>& edges = mesh.face(f).edges;
        if (std::all_of(edges.begin(), edges.end(),
                        [&](std::size_t e) { return r.at(e) == -1; })) {
            out.push_back(f);
        }
    }
    return out;
}

PruneResult prune(const Mesh& mesh, const DegreeDistribution& deg,
                  const SmoothnessDistribution& r) {
    check_smoothness(mesh, r);
    const std::vector<std::size_t> removed = prunable_faces(mesh, r);
    std::vector<bool> is_removed(mesh.face_count(), false);
    for (const std::size_t f : removed) is_removed[f] = true;

    std::vector<std::size_t> face_map;
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        if (!is_removed[f]) face_map.push_back(f);
    }
    if (face_map.empty()) {
        throw std::runtime_error("pruning removed every face");
    }

    std::vector<long> vertex_new(mesh.vertex_count(), -1);
    std::vector<std::size_t> vertex_map;
    std::vector<Point> vertices;
    std::vector<std::vector<std::size_t>> loops;
    for (const std::size_t f : face_map) {
        std::vector<std::size_t> loop;
        for (const std::size_t v : mesh.face(f).loop) {
            if (vertex_new[v] < 0) {
                vertex_new[v] = vertices.size();
                vertices.push_back(mesh.vertex(v));
                vertex_map.push_back(v);
            }
            loop.push_back(vertex_new[v]);
        }
        loops.push_back(std::move(loop));
    }

    PruneResult result{Mesh::from_loops(std::move(vertices), std::move(loops)),
                       DegreeDistribution{},
                       SmoothnessDistribution{},
                       removed,
                       face_map,
                       vertex_map};
    const ValidationReport report = result.mesh.validate();
    if (!report.ok()) {
        throw std::runtime_error("pruning produced an invalid mesh: " +
                                 report.violations.front().code);
    }

    result.deg.kind = deg.kind;
    for (const std::size_t f : face_map) result.deg.face_m.push_back(deg.face_m[f]);
    result.smoothness.edge_r.assign(result.mesh.edge_count(), -1);
    for (std::size_t e = 0; e < result.mesh.edge_count(); ++e) {
        const std::size_t old_u = vertex_map[result.mesh.edge(e).tail];
        const std::size_t old_v = vertex_map[result.mesh.edge(e).head];
        const std::optional<std::size_t> old_e = mesh.edge_between(old_u, old_v);
        if (!old_e) throw std::logic_error("pruned edge missing from the original mesh");
        if (result.mesh.edge_interior(e)) {
            result.smoothness.edge_r[e] = r.at(*old_e);
        } else if (r.at(*old_e) != -1) {
            throw std::logic_error("surviving boundary edge carried smoothness above -1");
        }
    }
    return result;
}

long pruned_dimension(const Mesh& mesh, const DegreeDistribution& deg,
                      const SmoothnessDistribution& r,
                      const std::vector<std::size_t>& faces) {
    check_smoothness(mesh, r);
    for (const std::size_t f : faces) {
        for (const std::size_t e : mesh.face(f).edges) {
            if (r.at(e) != -1) {
                throw std::invalid_argument("face " + std::to_string(f) +
                                            " still carries smoothness above -1");
            }
        }
    }
    const QuotientSummary summary = quotient_summary(mesh, deg, r);
    if (!summary.lower_acyclic) {
        throw std::runtime_error("formula inapplicable; use the kernel oracle");
    }
    // The deleted faces' cells must contribute nothing to positions 1 and 0,
    // otherwise deleting them does not commute with building the pruned
    // complex (possible with mixed degrees).
    const IdealDims dims = compute_ideal_dims(mesh, deg, r);
    for (const std::size_t f : faces) {
        for (const std::size_t v : mesh.face(f).loop) {
            if (mesh.vertex_interior(v) && dims.vertex_quotient[v] != 0) {
                throw std::runtime_error("formula inapplicable; use the kernel oracle");
            }
        }
    }
    long result = summary.chi;
    for (const std::size_t f : faces) result -= space_dim(deg.face_spec(f));
    return result;
}

}  // namespace splinedim
