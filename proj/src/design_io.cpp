#include <set>
#include <sstream>
#include <string>

#include "gridmix/design_io.hpp"

namespace gridmix {

namespace {

using nlohmann::json;

const std::set<std::string> kKnownKeys{"rows",         "cols",    "channelWidth",
                                       "channelLength", "horizontalChannels",
                                       "verticalChannels", "inlets", "outlets", "fluid"};

int require_int(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing required key '") + key + "'");
    if (!it->is_number_integer()) throw ParseError(std::string("'") + key + "' must be an integer");
    return it->get<int>();
}

double optional_number(const json& j, const char* key, double fallback) {
    auto it = j.find(key);
    if (it == j.end()) return fallback;
    if (!it->is_number()) throw ParseError(std::string("'") + key + "' must be a number");
    return it->get<double>();
}

const json& require_array(const json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing required key '") + key + "'");
    if (!it->is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    return *it;
}

void read_channels(const json& j, const char* key, bool horizontal, GridDesign& d,
                   ValidationReport& issues) {
    auto it = j.find(key);
    if (it == j.end()) return;
    if (!it->is_array()) throw ParseError(std::string("'") + key + "' must be an array");
    for (std::size_t i = 0; i < it->size(); ++i) {
        const json& pair = (*it)[i];
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
            !pair[1].is_number_integer())
            throw ParseError(std::string("'") + key + "' entries must be [row, col] integer pairs");
        int r = pair[0].get<int>();
        int c = pair[1].get<int>();
        bool in_range = horizontal ? (r >= 0 && r < d.rows && c >= 0 && c + 1 < d.cols)
                                   : (r >= 0 && r + 1 < d.rows && c >= 0 && c < d.cols);
        if (!in_range) {
            issues.issues.push_back({Severity::Error,
                                     std::string(key) + "[" + std::to_string(i) + "]",
                                     "channel index out of range"});
            continue;
        }
        if (horizontal)
            d.set_horizontal(r, c);
        else
            d.set_vertical(r, c);
    }
}

std::string compact(const nlohmann::ordered_json& j) { return j.dump(); }

}  // namespace

std::pair<int, int> line_column(std::string_view text, std::size_t offset) {
    int line = 1;
    int column = 1;
    for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return {line, column};
}

GridDesign design_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("design must be a JSON object");
    for (const auto& item : j.items())
        if (!kKnownKeys.count(item.key())) throw ParseError("unknown key '" + item.key() + "'");

    const int rows = require_int(j, "rows");
    const int cols = require_int(j, "cols");
    if (rows < 1 || cols < 1) {
        ValidationReport report;
        report.issues.push_back({Severity::Error, "grid", "rows and cols must be positive"});
        throw InvalidDesign(std::move(report));
    }
    GridDesign d = GridDesign::empty(rows, cols);
    d.channel_width = optional_number(j, "channelWidth", kDefaultChannelWidth);
    d.channel_length = optional_number(j, "channelLength", kDefaultChannelLength);

    ValidationReport issues;
    read_channels(j, "horizontalChannels", true, d, issues);
    read_channels(j, "verticalChannels", false, d, issues);

    for (const json& in : require_array(j, "inlets")) {
        if (!in.is_object()) throw ParseError("inlet entries must be objects");
        for (const auto& item : in.items())
            if (item.key() != "col" && item.key() != "concentration" && item.key() != "velocity")
                throw ParseError("unknown inlet key '" + item.key() + "'");
        Inlet inlet;
        inlet.col = require_int(in, "col");
        auto c = in.find("concentration");
        if (c == in.end() || !c->is_number())
            throw ParseError("inlet 'concentration' must be a number");
        inlet.concentration = c->get<double>();
        auto v = in.find("velocity");
        if (v == in.end() || !v->is_number()) throw ParseError("inlet 'velocity' must be a number");
        inlet.velocity = v->get<double>();
        d.inlets.push_back(inlet);
    }
    for (const json& out : require_array(j, "outlets")) {
        if (!out.is_number_integer()) throw ParseError("outlets must be integer column indices");
        d.outlets.push_back(out.get<int>());
    }
    if (auto f = j.find("fluid"); f != j.end()) {
        if (!f->is_object()) throw ParseError("'fluid' must be an object");
        for (const auto& item : f->items())
            if (item.key() != "diffusionCoefficient")
                throw ParseError("unknown fluid key '" + item.key() + "'");
        d.fluid.diffusion = optional_number(*f, "diffusionCoefficient", kSodiumDiffusion);
    }

    ValidationReport invariants = check_invariants(d);
    issues.issues.insert(issues.issues.end(), invariants.issues.begin(), invariants.issues.end());
    if (issues.has_errors()) throw InvalidDesign(std::move(issues));
    return d;
}

GridDesign parse_design(std::string_view text) {
    json j;
    try {
        j = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
        throw ParseError("syntax error in design JSON", line, column);
    }
    return design_from_json(j);
}

nlohmann::ordered_json design_to_json(const GridDesign& d) {
    nlohmann::ordered_json j;
    j["rows"] = d.rows;
    j["cols"] = d.cols;
    j["channelWidth"] = d.channel_width;
    j["channelLength"] = d.channel_length;
    auto h = nlohmann::ordered_json::array();
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c + 1 < d.cols; ++c)
            if (d.has_horizontal(r, c)) h.push_back({r, c});
    auto v = nlohmann::ordered_json::array();
    for (int r = 0; r + 1 < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (d.has_vertical(r, c)) v.push_back({r, c});
    j["horizontalChannels"] = std::move(h);
    j["verticalChannels"] = std::move(v);
    auto inlets = nlohmann::ordered_json::array();
    for (const Inlet& in : d.inlets) {
        nlohmann::ordered_json o;
        o["col"] = in.col;
        o["concentration"] = in.concentration;
        o["velocity"] = in.velocity;
        inlets.push_back(std::move(o));
    }
    j["inlets"] = std::move(inlets);
    j["outlets"] = d.outlets;
    j["fluid"]["diffusionCoefficient"] = d.fluid.diffusion;
    return j;
}

// One key per line, values compact: readable and byte-stable.
std::string serialize_design(const GridDesign& d) {
    const nlohmann::ordered_json j = design_to_json(d);
    std::ostringstream out;
    out << "{\n";
    bool first = true;
    for (const auto& item : j.items()) {
        if (!first) out << ",\n";
        first = false;
        out << "  " << nlohmann::ordered_json(item.key()).dump() << ": " << compact(item.value());
    }
    out << "\n}\n";
    return out.str();
}

}  // namespace gridmix
