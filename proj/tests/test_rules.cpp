#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <optional>
#include <random>

#include "fixtures.hpp"
#include "splinedim/rules.hpp"

using namespace splinedim;

namespace {

DegreeDistribution total(const Mesh& mesh, int m) {
    return DegreeDistribution::uniform(mesh, SpaceKind::TotalDegree, m);
}

DegreeDistribution bidegree(const Mesh& mesh, int m) {
    return DegreeDistribution::uniform(mesh, SpaceKind::Bidegree, m);
}

// Triangle A=(0,0), B=(2,0), C=(0,2) whose supporting lines extend through
// all three vertices, so each vertex is an interior 2-slope crossing. The
// three strips stay quads to avoid introducing further slopes.
Mesh two_slope_triangle() {
    using fixtures::Rational;
    auto pt = [](long x, long y) { return Point{Rational(x), Rational(y)}; };
    return Mesh::from_loops(
        {pt(0, 0), pt(2, 0), pt(0, 2), pt(-1, 0), pt(3, 0), pt(0, -1), pt(0, 3),
         pt(3, -1), pt(-1, 3)},
        {
            {0, 1, 2},     // center triangle ABC
            {0, 3, 5},     // corner wedge at A
            {1, 7, 4},     // corner wedge at B
            {2, 6, 8},     // corner wedge at C
            {5, 7, 1, 0},  // bottom strip
            {1, 4, 6, 2},  // right strip
            {0, 2, 8, 3},  // left strip
        });
}

std::size_t vertex_at(const Mesh& mesh, long x, long y) {
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        if (mesh.vertex(v).x == x && mesh.vertex(v).y == y) return v;
    }
    throw std::logic_error("no vertex at the requested point");
}

// smallest d such that every monomial of total degree in [d, m] lies in the
// span of the stacked principal ideals of the given vertex-star forms
long saturation_degree(int m, int r, const std::vector<LinearForm>& forms) {
    const PolySpaceSpec spec{SpaceKind::TotalDegree, m};
    RationalMatrix stacked(0, space_dim(spec));
    for (const LinearForm& form : forms) {
        stacked.append_rows(ideal_generator_matrix(spec, form, r + 1));
    }
    const std::size_t base_rank = rank(stacked);
    long best = m + 1;
    for (long d = m + 1; d-- > 0;) {
        RationalMatrix probe = stacked;
        RationalMatrix monos(0, space_dim(spec));
        for (const Monomial& mono : monomial_basis(spec)) {
            if (mono.i + mono.j >= d) {
                RationalMatrix row(1, space_dim(spec));
                row(0, monomial_index(spec, mono.i, mono.j)) = 1;
                monos.append_rows(row);
            }
        }
        probe.append_rows(monos);
        if (rank(probe) == base_rank) {
            best = d;
        } else {
            break;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("omega formula values") {
    CHECK(omega_bound(1, 2) == 3);  // 2r + 1 at a two-slope vertex
    CHECK(omega_bound(1, 3) == 2);
    CHECK(omega_bound(1, 6) == 2);
    CHECK(omega_bound(0, 2) == 1);
    CHECK(omega_bound(0, 5) == 1);
    CHECK(omega_bound(2, 2) == 5);
    CHECK(omega_bound(2, 4) == 3);
    CHECK_THROWS_AS(omega_bound(1, 1), std::invalid_argument);
    CHECK_THROWS_AS(omega_bound(-1, 3), std::invalid_argument);

    const Mesh d = fixtures::fix_d();
    CHECK(omega(d, total(d, 2), 1, 4) == 3);  // center vertex has 2 slopes
    const Mesh e = fixtures::fix_e();
    CHECK(omega(e, total(e, 2), 1, e.interior_vertices().at(0)) == 2);
}

TEST_CASE("omega matches the brute-force saturation degree") {
    std::mt19937_64 rng(2024);
    std::uniform_int_distribution<long> pick(-5, 5);
    for (int r = 0; r <= 2; ++r) {
        for (int n = 2; n <= 5; ++n) {
            // random star of n distinct slopes through the origin
            std::vector<LinearForm> forms;
            while (forms.size() < static_cast<std::size_t>(n)) {
                const long a = pick(rng), b = pick(rng);
                if (a == 0 && b == 0) continue;
                const LinearForm form = normalized_form(Rational(a), Rational(b), 0);
                bool fresh = true;
                for (const LinearForm& seen : forms) {
                    if (seen == form) fresh = false;
                }
                if (fresh) forms.push_back(form);
            }
            const int m = 2 * r + 2;
            CAPTURE(r);
            CAPTURE(n);
            CHECK(saturation_degree(m, r, forms) == omega_bound(r, n));
        }
    }
}

TEST_CASE("tri edge rule") {
    const Mesh d = fixtures::fix_d();
    SmoothnessDistribution r = SmoothnessDistribution::uniform(d, 1);
    const std::size_t released = *d.edge_between(0, 4);
    const std::size_t target = *d.edge_between(1, 4);
    r.edge_r[released] = -1;
    const Certificate cert = tri_edge_rule(d, total(d, 2), r, target);
    CHECK(cert.certified);
    CHECK(cert.evidence.size() == 2);

    // soundness of this very step, by direct homology
    REQUIRE(is_lower_acyclic(d, total(d, 2), r));
    SmoothnessDistribution s = r;
    s.edge_r[target] = -1;
    CHECK(is_lower_acyclic(d, total(d, 2), s));

    const Mesh a = fixtures::fix_a();
    const Certificate none = tri_edge_rule(
        a, total(a, 2), SmoothnessDistribution::uniform(a, 1), a.interior_edges()[0]);
    CHECK_FALSE(none.certified);  // no -1 neighbours anywhere
}

TEST_CASE("face removal cokernel") {
    const Mesh e = fixtures::fix_e();
    CHECK(face_removal_cokernel_dim(e, total(e, 2),
                                    SmoothnessDistribution::uniform(e, 1), 0) == 0);
    // r = 2 in degree 2: all edge ideals vanish, the cokernel is all of P_2
    CHECK(face_removal_cokernel_dim(e, total(e, 2),
                                    SmoothnessDistribution::uniform(e, 2), 0) == 6);
    // faces with boundary vertices are outside the lemma
    CHECK_THROWS_AS(face_removal_cokernel_dim(
                        e, total(e, 2), SmoothnessDistribution::uniform(e, 1), 1),
                    std::invalid_argument);
}

TEST_CASE("triangle removal rule") {
    const Mesh e = fixtures::fix_e();
    const Certificate ok =
        triangle_removal_rule(e, total(e, 2), SmoothnessDistribution::uniform(e, 1), 0);
    CHECK(ok.certified);
    CHECK(ok.detail == "2m > omega_1 + omega_2 + omega_3 - 3");
    for (const auto& [name, value] : ok.evidence) {
        if (name.rfind("omega_", 0) == 0) CHECK(value == 2);
    }

    const Certificate low =
        triangle_removal_rule(e, total(e, 1), SmoothnessDistribution::uniform(e, 1), 0);
    CHECK_FALSE(low.certified);

    // all three vertices two-slope crossings: omega = 3 each, m = 3 fails
    const Mesh t = two_slope_triangle();
    REQUIRE(t.validate().ok());
    const Certificate crossing =
        triangle_removal_rule(t, total(t, 3), SmoothnessDistribution::uniform(t, 1), 0);
    CHECK_FALSE(crossing.certified);
    bool saw_omega3 = false;
    for (const auto& [name, value] : crossing.evidence) {
        if (name.rfind("omega_", 0) == 0) {
            CHECK(value == 3);
            saw_omega3 = true;
        }
    }
    CHECK(saw_omega3);
}

TEST_CASE("polygonal face rule") {
    const Mesh e = fixtures::fix_e();
    // r = 0: certified for any m >= 1 by the 3r branch
    const Certificate r0 =
        polygonal_face_rule(e, total(e, 1), SmoothnessDistribution::uniform(e, 0), 0);
    CHECK(r0.certified);
    CHECK(r0.detail == "m > 3r");

    // m = 3, r = 1: the 3r branch fails, the omega-pair branch certifies
    const Certificate pair =
        polygonal_face_rule(e, total(e, 3), SmoothnessDistribution::uniform(e, 1), 0);
    CHECK(pair.certified);
    CHECK(pair.detail.rfind("m > omega_i", 0) == 0);

    const Certificate fail = polygonal_face_rule(
        two_slope_triangle(), total(two_slope_triangle(), 3),
        SmoothnessDistribution::uniform(two_slope_triangle(), 1), 0);
    CHECK_FALSE(fail.certified);
}

TEST_CASE("polygonal edge rule") {
    const Mesh e = fixtures::fix_e();
    const std::size_t inner_edge = *e.edge_between(3, 4);
    const Certificate ok = polygonal_edge_rule(
        e, total(e, 3), SmoothnessDistribution::uniform(e, 1), inner_edge);
    CHECK(ok.certified);  // omega 2 + 2 - 2 < 3

    const Mesh t = two_slope_triangle();
    const std::size_t ab = *t.edge_between(0, 1);
    const Certificate two_slopes =
        polygonal_edge_rule(t, total(t, 4), SmoothnessDistribution::uniform(t, 1), ab);
    CHECK_FALSE(two_slopes.certified);  // 4 > 3 + 3 - 2 fails

    const Certificate r0 =
        polygonal_edge_rule(e, total(e, 1), SmoothnessDistribution::uniform(e, 0),
                            inner_edge);
    CHECK(r0.certified);  // 1 > 0

    // boundary endpoints are outside the remark
    const std::size_t spoke = *e.edge_between(0, 3);
    const Certificate boundary = polygonal_edge_rule(
        e, total(e, 3), SmoothnessDistribution::uniform(e, 1), spoke);
    CHECK_FALSE(boundary.certified);
}

TEST_CASE("segment weights on the 3x3 grid") {
    const Mesh c = fixtures::fix_c();
    const DegreeDistribution deg = bidegree(c, 2);
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(c, 1);
    std::optional<Segment> y1;
    for (const Segment& seg : detect_segments(c, deg)) {
        if (seg.axis == Axis::Horizontal && seg.line_coord == 1) y1 = seg;
    }
    REQUIRE(y1.has_value());
    CHECK(segment_weight(c, deg, r, *y1) == 3);  // full weight m_A + 1

    Segment middle;
    middle.axis = Axis::Horizontal;
    middle.line_coord = 1;
    middle.lo = 1;
    middle.hi = 2;
    middle.m = 2;
    middle.edges = {*c.edge_between(vertex_at(c, 1, 1), vertex_at(c, 2, 1))};
    CHECK(segment_weight(c, deg, r, middle) == 2);

    // raising the transversal smoothness to r = 2 kills every summand
    SmoothnessDistribution steep = r;
    for (const std::size_t e : c.interior_edges()) {
        const LinearForm& form = c.edge_line_form(e);
        if (form.a == 1 && form.b == 0) steep.edge_r[e] = 2;  // vertical lines
    }
    CHECK(segment_weight(c, deg, steep, middle) == 0);

    // weight is unchanged when only the segment's own edges are reduced
    SmoothnessDistribution reduced = r;
    for (const std::size_t e : y1->edges) reduced.edge_r[e] = -1;
    CHECK(segment_weight(c, deg, reduced, *y1) == segment_weight(c, deg, r, *y1));
}

TEST_CASE("t-mesh segment rule") {
    const Mesh c = fixtures::fix_c();
    const DegreeDistribution deg = bidegree(c, 2);
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(c, 1);
    std::optional<Segment> y1;
    for (const Segment& seg : detect_segments(c, deg)) {
        if (seg.axis == Axis::Horizontal && seg.line_coord == 1) y1 = seg;
    }
    REQUIRE(y1.has_value());
    const Certificate full = tmesh_segment_rule(c, deg, r, *y1, -1);
    CHECK(full.certified);
    CHECK(full.detail == "segment weight is full");

    Segment middle;
    middle.axis = Axis::Horizontal;
    middle.line_coord = 1;
    middle.lo = 1;
    middle.hi = 2;
    middle.m = 2;
    for (const std::size_t e : y1->edges) {
        const Point& p = c.vertex(c.edge(e).tail);
        const Point& q = c.vertex(c.edge(e).head);
        if (std::min(p.x, q.x) == 1 && std::max(p.x, q.x) == 2) middle.edges = {e};
    }
    REQUIRE(middle.edges.size() == 1);
    const Certificate alone = tmesh_segment_rule(c, deg, r, middle, -1);
    CHECK_FALSE(alone.certified);  // weight 2, nothing around it reduced

    SmoothnessDistribution line_released = r;
    for (const std::size_t e : y1->edges) line_released.edge_r[e] = -1;
    const Certificate inside = tmesh_segment_rule(c, deg, line_released, middle, -1);
    CHECK(inside.certified);
    CHECK(inside.detail == "segment extends to a larger one already reduced");

    CHECK_THROWS_AS(tmesh_segment_rule(c, deg, line_released, middle, 1),
                    std::invalid_argument);  // raising is not a reduction
}

TEST_CASE("t-mesh edge rule") {
    const Mesh c = fixtures::fix_c();
    const DegreeDistribution deg = bidegree(c, 2);
    SmoothnessDistribution r = SmoothnessDistribution::uniform(c, 1);

    const Certificate pristine =
        tmesh_edge_rule(c, deg, r, c.interior_edges().at(0));
    CHECK_FALSE(pristine.certified);

    for (const std::size_t e : c.interior_edges()) {
        if (c.edge_line_form(e) == normalized_form(0, 1, -1)) r.edge_r[e] = -1;
    }
    std::size_t vertical = c.edge_count();
    for (const std::size_t e : c.interior_edges()) {
        const Point& p = c.vertex(c.edge(e).tail);
        const Point& q = c.vertex(c.edge(e).head);
        if (p.x == 1 && q.x == 1 && std::min(p.y, q.y) == 1 && std::max(p.y, q.y) == 2) {
            vertical = e;
        }
    }
    REQUIRE(vertical < c.edge_count());
    CHECK(tmesh_edge_rule(c, deg, r, vertical).certified);

    // a touching -1 edge of smaller degree does not qualify
    const Mesh b = fixtures::fix_b();
    DegreeDistribution mixed;
    mixed.kind = SpaceKind::Bidegree;
    mixed.face_m = {2, 2, 3, 3};  // left column 2, right column 3
    SmoothnessDistribution rb = SmoothnessDistribution::uniform(b, 1);
    std::size_t low_edge = b.edge_count(), high_edge = b.edge_count();
    for (const std::size_t e : b.interior_edges()) {
        const LinearForm& form = b.edge_line_form(e);
        const Point& p = b.vertex(b.edge(e).tail);
        const Point& q = b.vertex(b.edge(e).head);
        if (form.a == 0 && std::max(p.x, q.x) == 1) low_edge = e;   // y=1, left half
        if (form.b == 0 && std::max(p.y, q.y) == 1) high_edge = e;  // x=1, bottom half
    }
    REQUIRE(low_edge < b.edge_count());
    REQUIRE(high_edge < b.edge_count());
    rb.edge_r[low_edge] = -1;  // m = 2 on the released edge, m = 3 on the target
    CHECK_FALSE(tmesh_edge_rule(b, mixed, rb, high_edge).certified);
}

TEST_CASE("reduce pipeline on the 3x3 grid") {
    const Mesh c = fixtures::fix_c();
    const DegreeDistribution deg = bidegree(c, 2);
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(c, 1);
    REQUIRE(is_lower_acyclic(c, deg, r));

    ReductionRequest request;
    request.steps.push_back(ReductionStep::line(Axis::Horizontal, 1, -1));
    const std::size_t v11 = vertex_at(c, 1, 1), v12 = vertex_at(c, 1, 2);
    const std::size_t v21 = vertex_at(c, 2, 1), v22 = vertex_at(c, 2, 2);
    request.steps.push_back(ReductionStep::edge(v11, v12, -1));
    request.steps.push_back(ReductionStep::edge(v21, v22, -1));
    request.steps.push_back(ReductionStep::edge(v12, v22, -1));

    const ReductionResult result = reduce(c, deg, r, request);
    CHECK(result.all_certified);
    REQUIRE(result.certificates.size() == 4);

    // certificate soundness step by step, by direct homology
    SmoothnessDistribution current = r;
    for (const Certificate& cert : result.certificates) {
        REQUIRE(is_lower_acyclic(c, deg, current));
        for (const std::size_t e : cert.edges) current.edge_r[e] = cert.new_r;
        CHECK(is_lower_acyclic(c, deg, current));
    }
    CHECK(current.edge_r == result.smoothness.edge_r);

    // empty requests are no-ops
    const ReductionResult empty = reduce(c, deg, r, {});
    CHECK(empty.all_certified);
    CHECK(empty.certificates.empty());
    CHECK(empty.smoothness.edge_r == r.edge_r);

    // raising smoothness is rejected
    ReductionRequest raise;
    raise.steps.push_back(ReductionStep::edge(v11, v12, 2));
    CHECK_THROWS_AS(reduce(c, deg, r, raise), std::invalid_argument);
}

TEST_CASE("prune after the certified pipeline") {
    const Mesh c = fixtures::fix_c();
    const DegreeDistribution deg = bidegree(c, 2);
    ReductionRequest request;
    request.steps.push_back(ReductionStep::line(Axis::Horizontal, 1, -1));
    for (const auto& [x0, y0, x1, y1] :
         std::vector<std::array<long, 4>>{{1, 1, 1, 2}, {2, 1, 2, 2}, {1, 2, 2, 2}}) {
        request.steps.push_back(ReductionStep::edge(vertex_at(c, x0, y0),
                                                    vertex_at(c, x1, y1), -1));
    }
    const ReductionResult result =
        reduce(c, deg, SmoothnessDistribution::uniform(c, 1), request);
    REQUIRE(result.all_certified);

    const std::vector<std::size_t> removable = prunable_faces(c, result.smoothness);
    REQUIRE(removable.size() == 1);  // exactly the center face

    const PruneResult pruned = prune(c, deg, result.smoothness);
    CHECK(pruned.removed_faces == removable);
    CHECK(pruned.mesh.face_count() == 8);
    CHECK(pruned.mesh.validate().ok());
    // the pruned domain has a hole
    const long chi_cells = static_cast<long>(pruned.mesh.face_count()) -
                           static_cast<long>(pruned.mesh.interior_edges().size()) +
                           static_cast<long>(pruned.mesh.interior_vertices().size());
    CHECK(chi_cells == 0);

    const long formula = pruned_dimension(c, deg, result.smoothness, removable);
    CHECK(formula == 45 - 9);
    CHECK(formula == spline_dim_kernel(pruned.mesh, pruned.deg, pruned.smoothness));

    // nothing to prune when everything is smooth
    const PruneResult untouched =
        prune(c, deg, SmoothnessDistribution::uniform(c, 1));
    CHECK(untouched.removed_faces.empty());
    CHECK(untouched.mesh.face_count() == c.face_count());

    // fully released grid: chi is the face count, one face removed
    const SmoothnessDistribution all_released =
        SmoothnessDistribution::uniform(c, -1);
    CHECK(pruned_dimension(c, deg, all_released, removable) == 81 - 9);

    // an empty face list leaves the euler characteristic untouched
    CHECK(pruned_dimension(c, deg, SmoothnessDistribution::uniform(c, 1), {}) == 25);
}

TEST_CASE("non-convex faces only get a warning from the polygonal rule") {
    using fixtures::Rational;
    auto pt = [](long x, long y) { return Point{Rational(x), Rational(y)}; };
    const Mesh mesh = Mesh::from_loops(
        {pt(0, 0), pt(2, 0), pt(2, 1), pt(1, 1), pt(1, 2), pt(0, 2), pt(2, 2)},
        {{0, 1, 2, 3, 4, 5}, {3, 2, 6, 4}});
    REQUIRE(mesh.validate().ok());
    const Certificate cert = polygonal_face_rule(
        mesh, total(mesh, 2), SmoothnessDistribution::uniform(mesh, 0), 0);
    CHECK_FALSE(cert.certified);
    CHECK(cert.detail.rfind("warning", 0) == 0);
}

TEST_CASE("pruned dimension needs lower acyclicity") {
    // generic position: the ring fixture is lower-acyclic at m=2, r=1
    const Mesh e = fixtures::fix_e();
    const QuotientSummary generic =
        quotient_summary(e, total(e, 2), SmoothnessDistribution::uniform(e, 1));
    CHECK(generic.chi == 6);
    CHECK(generic.kernel == 6);
    CHECK(generic.lower_acyclic);

    // concurrent joining lines: kernel 7 against euler characteristic 6
    const Mesh ms = fixtures::symmetric_triangle_ring();
    REQUIRE(ms.validate().ok());
    const DegreeDistribution deg = total(ms, 2);
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(ms, 1);
    const QuotientSummary summary = quotient_summary(ms, deg, r);
    CHECK(summary.chi == 6);
    CHECK(summary.kernel == 7);
    CHECK_FALSE(summary.lower_acyclic);
    CHECK_THROWS_AS(pruned_dimension(ms, deg, r, {}), std::runtime_error);
}

TEST_CASE("triangle removal and prune on the ring fixture") {
    const Mesh e = fixtures::fix_e();
    const DegreeDistribution deg = total(e, 4);  // m = 3r + 1 for r = 1
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(e, 1);
    REQUIRE(is_lower_acyclic(e, deg, r));

    ReductionRequest request;
    request.steps.push_back(ReductionStep::whole_face(0, -1));
    const ReductionResult result = reduce(e, deg, r, request);
    REQUIRE(result.all_certified);
    CHECK(result.certificates[0].rule == "triangle_removal");
    CHECK(is_lower_acyclic(e, deg, result.smoothness));

    const std::vector<std::size_t> removable = prunable_faces(e, result.smoothness);
    CHECK(removable == std::vector<std::size_t>{0});
    const PruneResult pruned = prune(e, deg, result.smoothness);
    CHECK(pruned.mesh.face_count() == 6);
    CHECK(pruned.mesh.validate().ok());
    const long formula = pruned_dimension(e, deg, result.smoothness, removable);
    CHECK(formula ==
          spline_dim_kernel(pruned.mesh, pruned.deg, pruned.smoothness));
}

TEST_CASE("certificate evidence is recomputable") {
    const Mesh e = fixtures::fix_e();
    const DegreeDistribution deg = total(e, 2);
    const SmoothnessDistribution r = SmoothnessDistribution::uniform(e, 1);
    const Certificate first = triangle_removal_rule(e, deg, r, 0);
    const Certificate second = triangle_removal_rule(e, deg, r, 0);
    CHECK(first.certified == second.certified);
    CHECK(first.evidence == second.evidence);
    CHECK(first.detail == second.detail);
}
