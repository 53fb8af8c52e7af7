#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fixtures {

namespace {

Point pt(long x, long y) { return {Rational(x), Rational(y)}; }

}  // namespace

Mesh fix_a() {
    return Mesh::from_loops({pt(0, 0), pt(1, 0), pt(0, 1), pt(1, 1)},
                            {{0, 1, 2}, {1, 3, 2}});
}

Mesh fix_b() { return quad_grid(2, 2); }

Mesh fix_c() { return quad_grid(3, 3); }

Mesh fix_d() {
    return Mesh::from_loops(
        {pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2), pt(1, 1)},
        {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}});
}

Mesh fix_e() {
    return Mesh::from_loops(
        {pt(0, 0), pt(8, 0), pt(4, 7), pt(3, 2), pt(5, 2), pt(4, 4)},
        {
            {3, 4, 5},     // inner triangle
            {0, 1, 4},     // ring, bottom
            {0, 4, 3},
            {1, 2, 5},     // ring, right
            {1, 5, 4},
            {2, 0, 3},     // ring, left
            {2, 3, 5},
        });
}

Mesh symmetric_triangle_ring() {
    const Rational third(1, 3);
    // outer (0,0), (8,0), (4,8); inner vertices on the medians beyond the
    // centroid (4, 8/3), so each line u_i -- V_i passes through it
    return Mesh::from_loops(
        {pt(0, 0), pt(8, 0), pt(4, 8),
         {Rational(5), Rational(10) * third},   // u1, on the median from (0,0)
         {Rational(3), Rational(10) * third},   // u2, on the median from (8,0)
         {Rational(4), Rational(4) * third}},   // u3, on the median from (4,8)
        {
            {3, 4, 5},     // inner triangle (u1, u2, u3)
            {0, 1, 5},     // ring: u3 adjacent to V1 and V2
            {1, 3, 5},
            {1, 2, 3},     // u1 adjacent to V2 and V3
            {2, 4, 3},
            {2, 0, 4},     // u2 adjacent to V3 and V1
            {0, 5, 4},
        });
}

Mesh quad_grid(int nx, int ny) {
    std::vector<Rect> rects;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            rects.push_back({Rational(i), Rational(j), Rational(i + 1), Rational(j + 1)});
        }
    }
    return tmesh_from_rects(rects);
}

Mesh tri_grid(int nx, int ny) {
    std::vector<Point> vertices;
    auto vid = [&](int i, int j) { return static_cast<std::size_t>(i * (ny + 1) + j); };
    for (int i = 0; i <= nx; ++i)
        for (int j = 0; j <= ny; ++j) vertices.push_back(pt(i, j));
    std::vector<std::vector<std::size_t>> loops;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t a = vid(i, j), b = vid(i + 1, j);
            const std::size_t c = vid(i + 1, j + 1), d = vid(i, j + 1);
            loops.push_back({a, b, c});
            loops.push_back({a, c, d});
        }
    }
    return Mesh::from_loops(std::move(vertices), std::move(loops));
}

Mesh tmesh_from_rects(const std::vector<Rect>& rects) {
    std::map<std::pair<Rational, Rational>, std::size_t> ids;
    std::vector<Point> vertices;
    auto vertex_id = [&](const Rational& x, const Rational& y) {
        auto [it, inserted] = ids.try_emplace({x, y}, vertices.size());
        if (inserted) vertices.push_back({x, y});
        return it->second;
    };
    for (const Rect& r : rects) {
        vertex_id(r.x0, r.y0);
        vertex_id(r.x1, r.y0);
        vertex_id(r.x1, r.y1);
        vertex_id(r.x0, r.y1);
    }
    std::vector<std::vector<std::size_t>> loops;
    for (const Rect& r : rects) {
        std::vector<std::pair<Rational, Rational>> boundary;
        std::vector<std::pair<Rational, std::size_t>> side;
        auto run_side = [&](bool ascending) {
            std::sort(side.begin(), side.end());
            if (!ascending) std::reverse(side.begin(), side.end());
            for (std::size_t k = 0; k + 1 < side.size(); ++k) {
                // drop the closing corner of each side
                loops.back().push_back(side[k].second);
            }
            side.clear();
        };
        loops.emplace_back();
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (vertices[v].y == r.y0 && vertices[v].x >= r.x0 && vertices[v].x <= r.x1)
                side.push_back({vertices[v].x, v});
        }
        run_side(true);  // bottom, left to right
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (vertices[v].x == r.x1 && vertices[v].y >= r.y0 && vertices[v].y <= r.y1)
                side.push_back({vertices[v].y, v});
        }
        run_side(true);  // right, upward
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (vertices[v].y == r.y1 && vertices[v].x >= r.x0 && vertices[v].x <= r.x1)
                side.push_back({vertices[v].x, v});
        }
        run_side(false);  // top, right to left
        for (std::size_t v = 0; v < vertices.size(); ++v) {
            if (vertices[v].x == r.x0 && vertices[v].y >= r.y0 && vertices[v].y <= r.y1)
                side.push_back({vertices[v].y, v});
        }
        run_side(false);  // left, downward
    }
    return Mesh::from_loops(std::move(vertices), std::move(loops));
}

Mesh jittered_tri_grid(int nx, int ny, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> offset(-2, 2);
    std::uniform_int_distribution<int> flip(0, 1);
    std::vector<Point> vertices;
    auto vid = [&](int i, int j) { return static_cast<std::size_t>(i * (ny + 1) + j); };
    for (int i = 0; i <= nx; ++i) {
        for (int j = 0; j <= ny; ++j) {
            vertices.push_back({Rational(16 * i + offset(rng), 16),
                                Rational(16 * j + offset(rng), 16)});
        }
    }
    std::vector<std::vector<std::size_t>> loops;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const std::size_t a = vid(i, j), b = vid(i + 1, j);
            const std::size_t c = vid(i + 1, j + 1), d = vid(i, j + 1);
            if (flip(rng)) {
                loops.push_back({a, b, c});
                loops.push_back({a, c, d});
            } else {
                loops.push_back({a, b, d});
                loops.push_back({b, c, d});
            }
        }
    }
    return Mesh::from_loops(std::move(vertices), std::move(loops));
}

Mesh random_tmesh(int nx, int ny, int splits, std::mt19937_64& rng) {
    std::vector<Rect> rects;
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            rects.push_back({Rational(i), Rational(j), Rational(i + 1), Rational(j + 1)});
        }
    }
    std::uniform_int_distribution<int> flip(0, 1);
    for (int s = 0; s < splits; ++s) {
        std::uniform_int_distribution<std::size_t> pick(0, rects.size() - 1);
        const std::size_t k = pick(rng);
        Rect r = rects[k];
        if (flip(rng)) {
            const Rational xm = (r.x0 + r.x1) / 2;
            rects[k] = {r.x0, r.y0, xm, r.y1};
            rects.push_back({xm, r.y0, r.x1, r.y1});
        } else {
            const Rational ym = (r.y0 + r.y1) / 2;
            rects[k] = {r.x0, r.y0, r.x1, ym};
            rects.push_back({r.x0, ym, r.x1, r.y1});
        }
    }
    return tmesh_from_rects(rects);
}

SmoothnessDistribution random_smoothness(const Mesh& mesh, std::mt19937_64& rng,
                                         int rmin, int rmax) {
    std::uniform_int_distribution<int> value(rmin, rmax);
    SmoothnessDistribution r;
    r.edge_r.assign(mesh.edge_count(), -1);
    for (const std::size_t e : mesh.interior_edges()) r.edge_r[e] = value(rng);
    return r;
}

DegreeDistribution random_degrees(const Mesh& mesh, splinedim::SpaceKind kind,
                                  int mmin, int mmax, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> value(mmin, mmax);
    DegreeDistribution deg;
    deg.kind = kind;
    deg.face_m.resize(mesh.face_count());
    for (int& m : deg.face_m) m = value(rng);
    return deg;
}

}  // namespace fixtures
