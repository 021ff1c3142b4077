#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "gridmix/design_io.hpp"
#include "gridmix/dual_order.hpp"
#include "gridmix/json_output.hpp"
#include "gridmix/library.hpp"
#include "gridmix/render.hpp"

using namespace gridmix;

namespace {

constexpr int kExitInternal = 1;
constexpr int kExitInvalid = 2;

// Input-side failures that should map to exit code 2.
struct InputError : Error {
    using Error::Error;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw InputError("cannot write " + path);
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") std::cout << text;
    else write_file(path, text);
}

std::vector<double> parse_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            if (item.find_first_not_of(" ", used) != std::string::npos) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw InputError("not a number: '" + item + "'");
        }
    }
    return out;
}

// "c[:v],c[:v],..."
std::vector<InletSpec> parse_inlets(const std::string& text) {
    std::vector<InletSpec> out;
    std::stringstream s(text);
    std::string item;
    while (std::getline(s, item, ',')) {
        const auto colon = item.find(':');
        InletSpec spec;
        const std::vector<double> c = parse_list(item.substr(0, colon));
        if (c.size() != 1) throw InputError("bad inlet '" + item + "'");
        spec.concentration = c[0];
        if (colon != std::string::npos) {
            const std::vector<double> v = parse_list(item.substr(colon + 1));
            if (v.size() != 1) throw InputError("bad inlet '" + item + "'");
            spec.velocity = v[0];
        }
        out.push_back(spec);
    }
    return out;
}

struct GenOptions {
    GeneratorParams params;
    std::string inlets = "1:1,0:1";
    std::string placement = "spread";

    void add_to(CLI::App* cmd) {
        cmd->add_option("--rows", params.rows, "grid rows")->capture_default_str();
        cmd->add_option("--cols", params.cols, "grid columns")->capture_default_str();
        cmd->add_option("--density", params.density, "channel probability")->capture_default_str();
        cmd->add_option("--inlets", inlets, "inlets left to right as c[:v],...")->capture_default_str();
        cmd->add_option("--outlets", params.outlet_count, "number of outlets")->capture_default_str();
        cmd->add_option("--placement", placement, "port placement")
            ->check(CLI::IsMember({"spread", "random"}))
            ->capture_default_str();
        cmd->add_option("--seed", params.seed, "random seed")->capture_default_str();
        cmd->add_option("--max-attempts", params.max_attempts, "draws before giving up")->capture_default_str();
        cmd->add_option("--diffusion", params.diffusion, "diffusion coefficient, mm^2/s")->capture_default_str();
    }

    GeneratorParams resolve() {
        params.inlets = parse_inlets(inlets);
        params.placement = placement == "random" ? Placement::Random : Placement::Spread;
        try {
            check_params(params);
        } catch (const Error& e) {
            throw InputError(e.what());
        }
        return params;
    }
};

void print_issues(const ValidationReport& report) {
    for (const Issue& i : report.issues)
        std::fprintf(stderr, "%s: %s: %s\n", i.severity == Severity::Error ? "error" : "warning",
                     i.location.c_str(), i.message.c_str());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Grid mixer simulator"};
    app.require_subcommand(1);

    std::string design_path;
    std::string output;

    auto* sim_cmd = app.add_subcommand("simulate", "predict outlet concentrations");
    bool with_velocities = false;
    bool with_profiles = false;
    std::string flow_dump, dual_dump, svg_path;
    sim_cmd->add_option("design", design_path, "design JSON file")->required();
    sim_cmd->add_flag("--velocities", with_velocities, "include channel velocities");
    sim_cmd->add_flag("--profiles", with_profiles, "include the exit profile of every channel");
    sim_cmd->add_option("--dump-flow", flow_dump, "write the flow system and solution as JSON");
    sim_cmd->add_option("--dump-dual", dual_dump, "write faces and dual edges as JSON");
    sim_cmd->add_option("--svg", svg_path, "write an SVG drawing with outlet concentrations");

    auto* val_cmd = app.add_subcommand("validate", "check a design");
    val_cmd->add_option("design", design_path, "design JSON file")->required();

    auto* gen_cmd = app.add_subcommand("generate", "draw random designs");
    GenOptions gen;
    gen.add_to(gen_cmd);
    int gen_count = 1;
    gen_cmd->add_option("--count", gen_count, "designs to draw, seeds seed..seed+count-1")->capture_default_str();
    gen_cmd->add_option("-o,--output", output, "output file; with --count > 1 a directory");

    auto* pop_cmd = app.add_subcommand("populate", "build a design library");
    GenOptions pop;
    pop.add_to(pop_cmd);
    int pop_count = 100;
    double epsilon = kDefaultLibraryEpsilon;
    int jobs = 1;
    pop_cmd->add_option("--count", pop_count, "designs to draw")->capture_default_str();
    pop_cmd->add_option("--epsilon", epsilon, "max-norm distance below which designs are redundant")
        ->capture_default_str();
    pop_cmd->add_option("-j,--jobs", jobs, "worker threads")->envname("GRIDMIX_JOBS")->capture_default_str();
    pop_cmd->add_option("-o,--output", output, "library file (JSON lines)");

    auto* query_cmd = app.add_subcommand("query", "nearest library designs");
    std::string library_path, target_text;
    std::size_t k = 5;
    query_cmd->add_option("library", library_path, "library file")->required();
    query_cmd->add_option("--target", target_text, "comma-separated outlet concentrations")->required();
    query_cmd->add_option("-k", k, "number of results")->capture_default_str();

    auto* render_cmd = app.add_subcommand("render", "draw a design as SVG");
    bool render_sim = false;
    render_cmd->add_option("design", design_path, "design JSON file")->required();
    render_cmd->add_flag("--simulate", render_sim, "colour channels and label outlets");
    render_cmd->add_option("-o,--output", output, "SVG file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim_cmd) {
            const GridDesign design = parse_design(read_file(design_path));
            const Simulation sim = run_simulation(design);
            print_issues(sim.warnings);
            std::cout << report_text(sim, {with_velocities, with_profiles}) << "\n";
            if (!flow_dump.empty()) emit(flow_dump, flow_dump_json(sim).dump(1) + "\n");
            if (!dual_dump.empty()) emit(dual_dump, dual_dump_json(sim.grid, build_dual(sim.grid)).dump(1) + "\n");
            if (!svg_path.empty()) emit(svg_path, render_svg(design, &sim));
        } else if (*val_cmd) {
            const ValidationReport report = validate(parse_design(read_file(design_path)));
            print_issues(report);
            std::cout << issues_json(report).dump() << "\n";
            return report.has_errors() ? kExitInvalid : 0;
        } else if (*gen_cmd) {
            const GeneratorParams base = gen.resolve();
            if (gen_count < 1) throw InputError("--count must be at least 1");
            if (gen_count == 1) {
                emit(output, serialize_design(random_grid(base)));
            } else {
                if (output.empty()) throw InputError("--count > 1 needs --output DIR");
                for (int i = 0; i < gen_count; ++i) {
                    GeneratorParams p = base;
                    p.seed = base.seed + static_cast<std::uint64_t>(i);
                    write_file(output + "/design_" + std::to_string(p.seed) + ".json",
                               serialize_design(random_grid(p)));
                }
            }
        } else if (*pop_cmd) {
            const GeneratorParams params = pop.resolve();
            const DesignLibrary lib = populate_library(params, pop_count, epsilon, jobs,
                                                       [](const std::string& m) { std::cerr << m << "\n"; });
            emit(output, write_library(lib));
            std::fprintf(stderr, "%zu of %d designs kept\n", lib.entries.size(), pop_count);
        } else if (*query_cmd) {
            const DesignLibrary lib = read_library(read_file(library_path));
            const std::vector<double> target = parse_list(target_text);
            if (!lib.entries.empty() && target.size() != lib.entries.front().concentrations.size())
                throw InputError("target has " + std::to_string(target.size()) + " values, library entries have " +
                                 std::to_string(lib.entries.front().concentrations.size()));
            ordered_json out = ordered_json::array();
            for (const QueryHit& hit : query_library(lib, target, k)) {
                const LibraryEntry& e = lib.entries[hit.index];
                ordered_json j;
                j["index"] = hit.index;
                j["distance"] = hit.distance;
                j["seed"] = e.seed;
                j["concentrations"] = e.concentrations;
                j["velocities"] = e.velocities;
                j["design"] = design_to_json(e.design);
                out.push_back(std::move(j));
            }
            std::cout << out.dump() << "\n";
        } else if (*render_cmd) {
            const GridDesign design = parse_design(read_file(design_path));
            if (render_sim) {
                const Simulation sim = run_simulation(design);
                emit(output, render_svg(design, &sim));
            } else {
                emit(output, render_svg(design));
            }
        }
    } catch (const InvalidDesign& e) {
        std::fprintf(stderr, "%s\n", e.what());
        print_issues(e.report());
        return kExitInvalid;
    } catch (const ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return kExitInvalid;
    } catch (const InputError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitInvalid;
    } catch (const NoPathError& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitInvalid;
    } catch (const GenerationFailure& e) {
        std::fprintf(stderr, "%s\n", e.what());
        return kExitInvalid;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "internal error: %s\n", e.what());
        return kExitInternal;
    }
    return 0;
}
