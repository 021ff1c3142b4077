#include <doctest.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <httplib.h>

#include "fixtures.hpp"
#include "gridmix/design_io.hpp"
#include "gridmix/json_output.hpp"
#include "gridmix/library.hpp"

extern char** environ;

using namespace gridmix;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path p = fs::temp_directory_path() / ("gridmix_cli_" + std::to_string(::getpid()));
        fs::create_directories(p);
        return p;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spit(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

Run run(const std::string& args, const std::string& env = "") {
    const fs::path err = scratch() / "stderr.txt";
    const std::string cmd = env + " " GRIDMIX_CLI " " + args + " 2>" + err.string();
    Run r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err);
    return r;
}

std::string write_design(const std::string& name, const GridDesign& d) {
    const fs::path p = scratch() / name;
    spit(p, serialize_design(d));
    return p.string();
}

}  // namespace

TEST_CASE("simulate prints the outlet report") {
    const Run r = run("simulate " + write_design("min.json", fixtures::single_path(1, 0.7)));
    CHECK(r.code == 0);
    CHECK(r.out == "{\"outlets\":[{\"concentration\":0.7,\"velocity\":1.0}]}\n");
}

TEST_CASE("simulate output equals the in-process result") {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const GridDesign d = random_grid(fixtures::paper_params(seed));
        const std::string path = write_design("r.json", d);
        const Simulation sim = run_simulation(parse_design(slurp(path)));
        CHECK(run("simulate " + path).out == report_text(sim) + "\n");
        CHECK(run("simulate --velocities --profiles " + path).out == report_text(sim, {true, true}) + "\n");
    }
}

TEST_CASE("simulate writes the requested side outputs") {
    const std::string path = write_design("side.json", random_grid(fixtures::paper_params(2)));
    const fs::path flow = scratch() / "flow.json";
    const fs::path dual = scratch() / "dual.json";
    const fs::path svg = scratch() / "grid.svg";
    const Run r = run("simulate " + path + " --dump-flow " + flow.string() + " --dump-dual " + dual.string() +
                      " --svg " + svg.string());
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(slurp(flow)).contains("pressure"));
    CHECK(nlohmann::json::parse(slurp(dual)).contains("faces"));
    CHECK(slurp(svg).rfind("<svg", 0) == 0);
}

TEST_CASE("invalid input exits with code 2") {
    GridDesign d = fixtures::two_into_one(2);
    std::swap(d.inlets[0].concentration, d.inlets[1].concentration);
    const Run bad = run("simulate " + write_design("bad.json", d));
    CHECK(bad.code == 2);
    CHECK(bad.err.find("monotonicity") != std::string::npos);
    CHECK(bad.out.empty());

    spit(scratch() / "broken.json", "{\"rows\": 1,\n \"cols\": }");
    const Run broken = run("simulate " + (scratch() / "broken.json").string());
    CHECK(broken.code == 2);
    CHECK(broken.err.find("line 2") != std::string::npos);

    CHECK(run("simulate " + (scratch() / "missing.json").string()).code == 2);
    CHECK(run("generate --density 0").code == 2);
    CHECK(run("generate --inlets 0,1").code == 2);
}

TEST_CASE("validate lists issues") {
    GridDesign d = fixtures::two_into_one(3);
    d.set_horizontal(2, 1);
    const Run ok = run("validate " + write_design("warn.json", d));
    CHECK(ok.code == 0);
    CHECK(ok.err.find("warning: h:2,1") != std::string::npos);
    CHECK(nlohmann::json::parse(ok.out)["issues"].size() == 1);

    d.outlets = {0, 1};
    CHECK(run("validate " + write_design("err.json", d)).code == 2);
}

TEST_CASE("generate matches the library generator") {
    GeneratorParams p = fixtures::paper_params(42);
    p.rows = 8;
    p.cols = 9;
    p.placement = Placement::Random;
    p.inlets = {{1.0, 1.0}, {0.5, 2.0}, {0.0, 1.0}};
    const Run r = run("generate --seed 42 --rows 8 --cols 9 --placement random --inlets 1:1,0.5:2,0");
    CHECK(r.code == 0);
    CHECK(r.out == serialize_design(random_grid(p)));

    const fs::path dir = scratch() / "many";
    fs::create_directories(dir);
    CHECK(run("generate --seed 7 --count 3 -o " + dir.string()).code == 0);
    for (std::uint64_t s = 7; s < 10; ++s) {
        p = fixtures::paper_params(s);
        CHECK(slurp(dir / ("design_" + std::to_string(s) + ".json")) == serialize_design(random_grid(p)));
    }
}

TEST_CASE("populate and query") {
    const fs::path lib_path = scratch() / "lib.jsonl";
    const Run pop = run("populate --rows 6 --cols 6 --count 60 --seed 3 -o " + lib_path.string(), "GRIDMIX_JOBS=3");
    CHECK(pop.code == 0);
    GeneratorParams p = fixtures::paper_params(3);
    p.rows = 6;
    p.cols = 6;
    CHECK(slurp(lib_path) == write_library(populate_library(p, 60, 0.01, 1)));

    const DesignLibrary lib = read_library(slurp(lib_path));
    REQUIRE(!lib.entries.empty());
    const auto& first = lib.entries.front().concentrations;
    std::string target;
    for (double c : first) target += (target.empty() ? "" : ",") + std::to_string(c);
    const Run q = run("query " + lib_path.string() + " --target " + target + " -k 3");
    CHECK(q.code == 0);
    const auto hits = nlohmann::json::parse(q.out);
    REQUIRE(!hits.empty());
    CHECK(hits[0]["index"] == 0);
    for (std::size_t k = 0; k + 1 < hits.size(); ++k)
        CHECK(hits[k]["distance"].get<double>() <= hits[k + 1]["distance"].get<double>());

    CHECK(run("query " + lib_path.string() + " --target 0.5").code == 2);
}

TEST_CASE("render writes SVG") {
    const std::string path = write_design("draw.json", fixtures::two_into_one(3));
    const Run r = run("render --simulate " + path);
    CHECK(r.code == 0);
    CHECK(r.out.rfind("<svg", 0) == 0);
    CHECK(r.out.find(">0.500</text>") != std::string::npos);
}

TEST_CASE("server binary answers like the CLI") {
    int out_pipe[2];
    REQUIRE(::pipe(out_pipe) == 0);
    posix_spawn_file_actions_t actions;
    posix_spawn_file_actions_init(&actions);
    posix_spawn_file_actions_adddup2(&actions, out_pipe[1], 1);
    posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
    std::string bin = GRIDMIX_SERVER;
    std::vector<char*> argv{bin.data(), const_cast<char*>("--port"), const_cast<char*>("0"), nullptr};
    pid_t pid = 0;
    REQUIRE(posix_spawn(&pid, bin.c_str(), &actions, nullptr, argv.data(), environ) == 0);
    posix_spawn_file_actions_destroy(&actions);
    ::close(out_pipe[1]);

    std::string line;
    char ch = 0;
    while (::read(out_pipe[0], &ch, 1) == 1 && ch != '\n') line += ch;
    const auto colon = line.rfind(':');
    REQUIRE(colon != std::string::npos);
    const int port = std::stoi(line.substr(colon + 1));

    const GridDesign d = random_grid(fixtures::paper_params(11));
    const std::string path = write_design("srv.json", d);
    httplib::Client client("127.0.0.1", port);
    auto res = client.Post("/api/simulate", design_to_json(d).dump(), "application/json");
    REQUIRE(res);
    CHECK(res->status == 200);
    CHECK(res->body + "\n" == run("simulate --velocities " + path).out);

    ::kill(pid, SIGTERM);
    int status = 0;
    ::waitpid(pid, &status, 0);
    ::close(out_pipe[0]);
}
