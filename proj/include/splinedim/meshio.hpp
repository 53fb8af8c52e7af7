#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "splinedim/chain_complex.hpp"
#include "splinedim/mesh.hpp"
#include "splinedim/rules.hpp"

namespace splinedim {

using Json = nlohmann::ordered_json;

/// A parsed mesh file: geometry plus the two distributions.
struct MeshFile {
    Mesh mesh;
    DegreeDistribution deg;
    SmoothnessDistribution smoothness;
};

/// Parse outcome: either a MeshFile, or the violations that stopped it.
/// Mesh-definition violations and file-level problems land in the same list.
struct LoadResult {
    std::optional<MeshFile> file;
    std::vector<Violation> violations;

    bool ok() const { return file.has_value() && violations.empty(); }
};

LoadResult load_mesh_file(const std::string& text);

/// Deterministic emission; parsing the output reproduces the same mesh,
/// degree and smoothness data with the input's vertex and face order.
std::string emit_mesh_file(const MeshFile& file);

Json violations_json(const std::vector<Violation>& violations);
Json summary_json(const QuotientSummary& summary);
Json certificate_json(const Mesh& mesh, const Certificate& cert);

}  // namespace splinedim
