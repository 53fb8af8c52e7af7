#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "splinedim/meshio.hpp"
#include "splinedim/rules.hpp"

namespace {

using splinedim::Json;

int fail_validation(const std::vector<splinedim::Violation>& violations) {
    Json out;
    out["ok"] = false;
    out["violations"] = splinedim::violations_json(violations);
    std::cout << out.dump(2) << "\n";
    return 1;
}

splinedim::LoadResult load_path(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        splinedim::LoadResult result;
        result.violations.push_back({"io", "cannot read file: " + path});
        return result;
    }
    std::ostringstream text;
    text << in.rdbuf();
    return splinedim::load_mesh_file(text.str());
}

// "i,j=S" -> edge step
splinedim::ReductionStep parse_edge_step(const std::string& spec) {
    const auto comma = spec.find(',');
    const auto eq = spec.find('=');
    if (comma == std::string::npos || eq == std::string::npos || eq < comma) {
        throw CLI::ValidationError("--edge expects i,j=S");
    }
    return splinedim::ReductionStep::edge(std::stoul(spec.substr(0, comma)),
                                          std::stoul(spec.substr(comma + 1, eq - comma - 1)),
                                          std::stoi(spec.substr(eq + 1)));
}

// "h:COORD=S" or "v:COORD=S" -> whole-line step
splinedim::ReductionStep parse_segment_step(const std::string& spec) {
    const auto colon = spec.find(':');
    const auto eq = spec.find('=');
    if (colon == std::string::npos || eq == std::string::npos || eq < colon) {
        throw CLI::ValidationError("--segment expects AXIS:COORD=S with AXIS h or v");
    }
    const std::string axis = spec.substr(0, colon);
    if (axis != "h" && axis != "v") {
        throw CLI::ValidationError("--segment axis must be h or v");
    }
    return splinedim::ReductionStep::line(
        axis == "h" ? splinedim::Axis::Horizontal : splinedim::Axis::Vertical,
        splinedim::rational_from_string(spec.substr(colon + 1, eq - colon - 1)),
        std::stoi(spec.substr(eq + 1)));
}

// "K=S" -> face step
splinedim::ReductionStep parse_face_step(const std::string& spec) {
    const auto eq = spec.find('=');
    if (eq == std::string::npos) throw CLI::ValidationError("--face expects K=S");
    return splinedim::ReductionStep::whole_face(std::stoul(spec.substr(0, eq)),
                                                std::stoi(spec.substr(eq + 1)));
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spline space dimensions on polygonal meshes, triangulations and T-meshes"};
    app.require_subcommand(1);

    std::string path;
    splinedim::ReductionRequest request;

    CLI::App* cmd_validate = app.add_subcommand("validate", "check a mesh file");
    cmd_validate->add_option("file", path)->required();

    CLI::App* cmd_dim = app.add_subcommand("dim", "full dimension report");
    cmd_dim->add_option("file", path)->required();

    CLI::App* cmd_homology =
        app.add_subcommand("homology", "homology of the three complex rows");
    cmd_homology->add_option("file", path)->required();

    CLI::App* cmd_oracle = app.add_subcommand("oracle", "kernel-based dimension only");
    cmd_oracle->add_option("file", path)->required();

    CLI::App* cmd_reduce =
        app.add_subcommand("reduce", "apply smoothness reductions with certificates");
    cmd_reduce->add_option("file", path)->required();
    // steps apply in command-line order, so each option triggers per parse
    cmd_reduce->add_option("--edge", "reduce one edge: i,j=S")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->trigger_on_parse()
        ->each([&request](const std::string& s) {
            request.steps.push_back(parse_edge_step(s));
        });
    cmd_reduce->add_option("--segment", "reduce a whole line: AXIS:COORD=S")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->trigger_on_parse()
        ->each([&request](const std::string& s) {
            request.steps.push_back(parse_segment_step(s));
        });
    cmd_reduce->add_option("--face", "reduce a face boundary: K=S")
        ->multi_option_policy(CLI::MultiOptionPolicy::TakeAll)
        ->trigger_on_parse()
        ->each([&request](const std::string& s) {
            request.steps.push_back(parse_face_step(s));
        });

    CLI::App* cmd_prune = app.add_subcommand("prune", "delete fully released faces");
    cmd_prune->add_option("file", path)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    splinedim::LoadResult loaded = load_path(path);

    if (app.got_subcommand(cmd_validate)) {
        if (!loaded.ok()) return fail_validation(loaded.violations);
        Json out;
        out["ok"] = true;
        out["violations"] = Json::array();
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    if (!loaded.ok()) return fail_validation(loaded.violations);
    const splinedim::MeshFile& file = *loaded.file;

    try {
        if (app.got_subcommand(cmd_dim)) {
            const splinedim::QuotientSummary summary =
                splinedim::quotient_summary(file.mesh, file.deg, file.smoothness);
            std::cout << splinedim::summary_json(summary).dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_homology)) {
            const splinedim::ComplexTriple triple =
                splinedim::build_complexes(file.mesh, file.deg, file.smoothness);
            Json out;
            for (const splinedim::GradedComplex* row :
                 {&triple.quotient, &triple.cellular, &triple.ideal}) {
                Json entry;
                if (row->tag != "I") entry["h2"] = splinedim::homology_dim(*row, 2);
                entry["h1"] = splinedim::homology_dim(*row, 1);
                entry["h0"] = splinedim::homology_dim(*row, 0);
                out[row->tag] = std::move(entry);
            }
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_oracle)) {
            Json out;
            out["kernel_dim"] =
                splinedim::spline_dim_kernel(file.mesh, file.deg, file.smoothness);
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_reduce)) {
            const splinedim::ReductionResult result =
                splinedim::reduce(file.mesh, file.deg, file.smoothness, request);
            Json out;
            Json certs = Json::array();
            for (const splinedim::Certificate& cert : result.certificates) {
                certs.push_back(splinedim::certificate_json(file.mesh, cert));
            }
            out["certificates"] = std::move(certs);
            out["all_certified"] = result.all_certified;
            out["mesh"] = Json::parse(splinedim::emit_mesh_file(
                {file.mesh, file.deg, result.smoothness}));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
        if (app.got_subcommand(cmd_prune)) {
            const splinedim::PruneResult pruned =
                splinedim::prune(file.mesh, file.deg, file.smoothness);
            Json out;
            out["removed_faces"] = pruned.removed_faces;
            long dimension = 0;
            std::string method;
            try {
                dimension = splinedim::pruned_dimension(file.mesh, file.deg,
                                                        file.smoothness,
                                                        pruned.removed_faces);
                method = "euler_formula";
            } catch (const std::runtime_error&) {
                dimension = splinedim::spline_dim_kernel(pruned.mesh, pruned.deg,
                                                         pruned.smoothness);
                method = "kernel_oracle";
            }
            out["pruned_dimension"] = dimension;
            out["method"] = method;
            out["mesh"] = Json::parse(splinedim::emit_mesh_file(
                {pruned.mesh, pruned.deg, pruned.smoothness}));
            std::cout << out.dump(2) << "\n";
            return 0;
        }
    } catch (const std::exception& err) {
        Json out;
        out["ok"] = false;
        out["error"] = err.what();
        std::cout << out.dump(2) << "\n";
        return 1;
    }
    return 2;
}
