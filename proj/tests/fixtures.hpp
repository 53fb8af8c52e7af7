#pragma once

#include <random>
#include <vector>

#include "splinedim/chain_complex.hpp"
#include "splinedim/mesh.hpp"

namespace fixtures {

using splinedim::DegreeDistribution;
using splinedim::Mesh;
using splinedim::Point;
using splinedim::Rational;
using splinedim::SmoothnessDistribution;

// Two triangles on the unit square, diagonal (1,0)-(0,1).
Mesh fix_a();
// 2x2 unit-square grid on [0,2]^2.
Mesh fix_b();
// 3x3 unit-square grid on [0,3]^2.
Mesh fix_c();
// [0,2]^2 cross-triangulated through (1,1).
Mesh fix_d();
// Triangle-in-triangle ring, 7 faces: outer (0,0),(8,0),(4,7), inner
// (3,2),(5,2),(4,4), matching corners joined, ring quads split.
Mesh fix_e();

// Triangle-in-triangle ring placed so that the three lines joining each
// outer vertex to its non-adjacent inner vertex meet in one point (the
// centroid). The classic configuration where C^1 quadratics gain a
// dimension over the euler characteristic.
Mesh symmetric_triangle_ring();

// nx x ny unit quad cells on [0,nx] x [0,ny].
Mesh quad_grid(int nx, int ny);

// Same grid with every cell split by its SW-NE diagonal.
Mesh tri_grid(int nx, int ny);

struct Rect {
    Rational x0, y0, x1, y1;
};

// T-mesh from an axis-aligned rectangle partition; face loops pick up every
// vertex on their sides, so T-junctions subdivide the neighbouring faces.
Mesh tmesh_from_rects(const std::vector<Rect>& rects);

// Grid triangulation with random diagonal orientations and a small rational
// jitter on all vertices (cells stay convex).
Mesh jittered_tri_grid(int nx, int ny, std::mt19937_64& rng);

// Grid T-mesh refined by `splits` random midpoint cell splits.
Mesh random_tmesh(int nx, int ny, int splits, std::mt19937_64& rng);

SmoothnessDistribution random_smoothness(const Mesh& mesh, std::mt19937_64& rng,
                                         int rmin, int rmax);

DegreeDistribution random_degrees(const Mesh& mesh, splinedim::SpaceKind kind,
                                  int mmin, int mmax, std::mt19937_64& rng);

}  // namespace fixtures
