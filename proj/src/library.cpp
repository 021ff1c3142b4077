#include <algorithm>
#include <atomic>
#include <cmath>
#include <optional>
#include <sstream>
#include <thread>

#include <json.hpp>

#include "gridmix/design_io.hpp"
#include "gridmix/library.hpp"

namespace gridmix {

double max_norm_distance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw Error("concentration vectors differ in length");
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

bool DesignLibrary::try_insert(LibraryEntry entry) {
    for (const LibraryEntry& e : entries)
        if (max_norm_distance(e.concentrations, entry.concentrations) <= epsilon) return false;
    entries.push_back(std::move(entry));
    return true;
}

DesignLibrary populate_library(const GeneratorParams& params, int count, double epsilon, int jobs,
                               const LogSink& log) {
    if (count < 1) throw Error("count must be at least 1");
    if (!(epsilon >= 0.0)) throw Error("epsilon must be non-negative");
    check_params(params);
    jobs = std::clamp(jobs, 1, count);

    std::vector<std::optional<LibraryEntry>> results(static_cast<std::size_t>(count));
    std::vector<std::string> errors(static_cast<std::size_t>(count));
    std::atomic<int> next{0};
    auto worker = [&] {
        for (int i = next++; i < count; i = next++) {
            GeneratorParams p = params;
            p.seed = params.seed + static_cast<std::uint64_t>(i);
            try {
                Simulation sim = generate_simulated(p);
                LibraryEntry e;
                for (const OutletResult& o : sim.report.outlets) {
                    e.concentrations.push_back(o.concentration);
                    e.velocities.push_back(o.velocity);
                }
                e.seed = p.seed;
                e.design = std::move(sim.design);
                results[static_cast<std::size_t>(i)] = std::move(e);
            } catch (const std::exception& ex) {
                errors[static_cast<std::size_t>(i)] = ex.what();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (std::thread& t : pool) t.join();

    DesignLibrary lib;
    lib.rows = params.rows;
    lib.cols = params.cols;
    lib.epsilon = epsilon;
    for (int i = 0; i < count; ++i) {
        auto& r = results[static_cast<std::size_t>(i)];
        if (r) {
            lib.try_insert(std::move(*r));
        } else if (log) {
            log("seed " + std::to_string(params.seed + static_cast<std::uint64_t>(i)) +
                " skipped: " + errors[static_cast<std::size_t>(i)]);
        }
    }
    return lib;
}

std::vector<QueryHit> query_library(const DesignLibrary& lib, std::span<const double> target, std::size_t k) {
    std::vector<QueryHit> hits;
    hits.reserve(lib.entries.size());
    for (std::size_t i = 0; i < lib.entries.size(); ++i)
        hits.push_back({i, max_norm_distance(lib.entries[i].concentrations, target)});
    std::stable_sort(hits.begin(), hits.end(),
                     [](const QueryHit& a, const QueryHit& b) { return a.distance < b.distance; });
    if (hits.size() > k) hits.resize(k);
    return hits;
}

namespace {

constexpr const char* kSchema = "gridmix-library";
constexpr int kVersion = 1;

}  // namespace

std::string write_library(const DesignLibrary& lib) {
    nlohmann::ordered_json header;
    header["schema"] = kSchema;
    header["version"] = kVersion;
    header["rows"] = lib.rows;
    header["cols"] = lib.cols;
    header["epsilon"] = lib.epsilon;
    std::string out = header.dump() + "\n";
    for (const LibraryEntry& e : lib.entries) {
        nlohmann::ordered_json j;
        j["concentrations"] = e.concentrations;
        j["velocities"] = e.velocities;
        j["seed"] = e.seed;
        j["design"] = design_to_json(e.design);
        out += j.dump() + "\n";
    }
    return out;
}

DesignLibrary read_library(std::string_view text) {
    DesignLibrary lib;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("syntax error in library", line_no, static_cast<int>(e.byte));
        }
        try {
            if (!have_header) {
                if (j.at("schema").get<std::string>() != kSchema || j.at("version").get<int>() != kVersion)
                    throw ParseError("unsupported library schema", line_no);
                lib.rows = j.at("rows").get<int>();
                lib.cols = j.at("cols").get<int>();
                lib.epsilon = j.at("epsilon").get<double>();
                have_header = true;
                continue;
            }
            LibraryEntry e;
            e.concentrations = j.at("concentrations").get<std::vector<double>>();
            e.velocities = j.at("velocities").get<std::vector<double>>();
            e.seed = j.at("seed").get<std::uint64_t>();
            e.design = design_from_json(j.at("design"));
            if (!lib.entries.empty() && lib.entries.front().concentrations.size() != e.concentrations.size())
                throw ParseError("concentration vectors differ in length", line_no);
            lib.entries.push_back(std::move(e));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("malformed library entry: ") + e.what(), line_no);
        } catch (const ParseError&) {
            throw;
        } catch (const Error& e) {
            throw ParseError(std::string("invalid design in library: ") + e.what(), line_no);
        }
    }
    if (!have_header) throw ParseError("library has no header line", line_no);
    return lib;
}

}  // namespace gridmix
