#include "splinedim/meshio.hpp"

#include <algorithm>
#include <map>

namespace splinedim {

namespace {

Rational coordinate_from_json(const Json& value) {
    if (value.is_string()) return rational_from_string(value.get<std::string>());
    if (value.is_number_integer()) return Rational(value.get<long>());
    throw std::runtime_error("coordinates must be integers or \"p/q\" strings");
}

SpaceKind kind_from_string(const std::string& kind) {
    if (kind == "total") return SpaceKind::TotalDegree;
    if (kind == "bidegree") return SpaceKind::Bidegree;
    throw std::runtime_error("degree kind must be \"total\" or \"bidegree\"");
}

std::string kind_to_string(SpaceKind kind) {
    return kind == SpaceKind::TotalDegree ? "total" : "bidegree";
}

}  // namespace

LoadResult load_mesh_file(const std::string& text) {
    LoadResult result;
    auto fail = [&result](std::string code, std::string detail) {
        result.violations.push_back({std::move(code), std::move(detail)});
    };
    Json doc;
    try {
        doc = Json::parse(text);
    } catch (const std::exception& err) {
        fail("json_parse", err.what());
        return result;
    }
    try {
        if (!doc.is_object()) throw std::runtime_error("top level must be an object");
        if (doc.value("version", 1) != 1) throw std::runtime_error("unknown version");

        std::vector<Point> vertices;
        for (const Json& entry : doc.at("vertices")) {
            if (!entry.is_array() || entry.size() != 2) {
                throw std::runtime_error("each vertex must be a [x, y] pair");
            }
            vertices.push_back(
                {coordinate_from_json(entry[0]), coordinate_from_json(entry[1])});
        }
        std::vector<std::vector<std::size_t>> loops;
        for (const Json& entry : doc.at("faces")) {
            loops.push_back(entry.get<std::vector<std::size_t>>());
        }
        Mesh mesh = Mesh::from_loops(std::move(vertices), std::move(loops));

        const ValidationReport report = mesh.validate();
        if (!report.ok()) {
            result.violations = report.violations;
            return result;
        }

        const Json& degree = doc.at("degree");
        DegreeDistribution deg;
        deg.kind = kind_from_string(degree.at("kind").get<std::string>());
        const int default_m = degree.at("m").get<int>();
        if (default_m < 0) throw std::runtime_error("degree must be nonnegative");
        deg.face_m.assign(mesh.face_count(), default_m);
        for (const Json& entry : degree.value("overrides", Json::array())) {
            const std::size_t f = entry.at("face").get<std::size_t>();
            const int m = entry.at("m").get<int>();
            if (f >= mesh.face_count()) throw std::runtime_error("degree override names an unknown face");
            if (m < 0) throw std::runtime_error("degree must be nonnegative");
            deg.face_m[f] = m;
        }

        const Json& smooth = doc.at("smoothness");
        const int default_r = smooth.at("default").get<int>();
        if (default_r < -1) throw std::runtime_error("smoothness must be >= -1");
        SmoothnessDistribution r;
        r.edge_r.assign(mesh.edge_count(), -1);
        for (const std::size_t e : mesh.interior_edges()) r.edge_r[e] = default_r;
        for (const Json& entry : smooth.value("overrides", Json::array())) {
            const auto pair = entry.at("edge").get<std::vector<std::size_t>>();
            if (pair.size() != 2) throw std::runtime_error("edge keys are [i, j] pairs");
            const int value = entry.at("r").get<int>();
            const std::optional<std::size_t> e = mesh.edge_between(pair[0], pair[1]);
            if (!e) {
                fail("unknown_edge", "smoothness override names no mesh edge [" +
                                         std::to_string(pair[0]) + ", " +
                                         std::to_string(pair[1]) + "]");
                continue;
            }
            if (value < -1) {
                fail("bad_smoothness", "smoothness below -1 on edge [" +
                                           std::to_string(pair[0]) + ", " +
                                           std::to_string(pair[1]) + "]");
                continue;
            }
            if (!mesh.edge_interior(*e) && value != -1) {
                fail("boundary_smoothness",
                     "boundary edge [" + std::to_string(pair[0]) + ", " +
                         std::to_string(pair[1]) + "] must carry r = -1");
                continue;
            }
            r.edge_r[*e] = value;
        }
        if (!result.violations.empty()) return result;

        result.file = MeshFile{std::move(mesh), std::move(deg), std::move(r)};
    } catch (const std::exception& err) {
        fail("file_format", err.what());
    }
    return result;
}

namespace {

// Most frequent value; ties resolved toward the smaller value.
int dominant(const std::vector<int>& values, int fallback) {
    if (values.empty()) return fallback;
    std::map<int, std::size_t> counts;
    for (const int v : values) counts[v]++;
    int best = values[0];
    std::size_t best_count = 0;
    for (const auto& [value, count] : counts) {
        if (count > best_count) {
            best = value;
            best_count = count;
        }
    }
    return best;
}

}  // namespace

std::string emit_mesh_file(const MeshFile& file) {
    const Mesh& mesh = file.mesh;
    Json doc;
    doc["version"] = 1;
    Json vertices = Json::array();
    for (std::size_t v = 0; v < mesh.vertex_count(); ++v) {
        vertices.push_back(Json::array(
            {to_string(mesh.vertex(v).x), to_string(mesh.vertex(v).y)}));
    }
    doc["vertices"] = std::move(vertices);
    Json faces = Json::array();
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        faces.push_back(mesh.face(f).loop);
    }
    doc["faces"] = std::move(faces);

    Json degree;
    degree["kind"] = kind_to_string(file.deg.kind);
    const int default_m = dominant(file.deg.face_m, 0);
    degree["m"] = default_m;
    Json deg_overrides = Json::array();
    for (std::size_t f = 0; f < mesh.face_count(); ++f) {
        if (file.deg.face_m[f] != default_m) {
            deg_overrides.push_back(Json{{"face", f}, {"m", file.deg.face_m[f]}});
        }
    }
    if (!deg_overrides.empty()) degree["overrides"] = std::move(deg_overrides);
    doc["degree"] = std::move(degree);

    Json smooth;
    std::vector<int> interior_values;
    for (const std::size_t e : mesh.interior_edges()) {
        interior_values.push_back(file.smoothness.at(e));
    }
    const int default_r = dominant(interior_values, -1);
    smooth["default"] = default_r;
    Json smooth_overrides = Json::array();
    for (const std::size_t e : mesh.interior_edges()) {
        if (file.smoothness.at(e) != default_r) {
            smooth_overrides.push_back(
                Json{{"edge", Json::array({mesh.edge(e).tail, mesh.edge(e).head})},
                     {"r", file.smoothness.at(e)}});
        }
    }
    if (!smooth_overrides.empty()) smooth["overrides"] = std::move(smooth_overrides);
    doc["smoothness"] = std::move(smooth);
    return doc.dump(2) + "\n";
}

Json violations_json(const std::vector<Violation>& violations) {
    Json out = Json::array();
    for (const Violation& v : violations) {
        out.push_back(Json{{"code", v.code}, {"detail", v.detail}});
    }
    return out;
}

Json summary_json(const QuotientSummary& summary) {
    Json out;
    out["dims"] = Json{{"position2", summary.dim2},
                       {"position1", summary.dim1},
                       {"position0", summary.dim0}};
    out["euler_characteristic"] = summary.chi;
    out["homology"] = Json{{"h2", summary.h2}, {"h1", summary.h1}, {"h0", summary.h0}};
    out["kernel_dim"] = summary.kernel;
    out["lower_acyclic"] = summary.lower_acyclic;
    return out;
}

Json certificate_json(const Mesh& mesh, const Certificate& cert) {
    Json out;
    out["rule"] = cert.rule;
    out["certified"] = cert.certified;
    out["detail"] = cert.detail;
    Json evidence;
    for (const auto& [name, value] : cert.evidence) evidence[name] = value;
    out["evidence"] = std::move(evidence);
    Json edges = Json::array();
    for (const std::size_t e : cert.edges) {
        edges.push_back(Json::array({mesh.edge(e).tail, mesh.edge(e).head}));
    }
    out["edges"] = std::move(edges);
    out["new_r"] = cert.new_r;
    return out;
}

}  // namespace splinedim
