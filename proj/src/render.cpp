#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "gridmix/network.hpp"
#include "gridmix/render.hpp"

namespace gridmix {

namespace {

constexpr double kCell = 40.0;
constexpr double kMargin = 40.0;

std::string fmt(double v, int digits = 1) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

std::string colour(double c) {
    c = std::clamp(c, 0.0, 1.0);
    const int red = static_cast<int>(std::lround(255 * c));
    const int blue = static_cast<int>(std::lround(255 * (1 - c)));
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x40%02x", red, blue);
    return buf;
}

double x_of(int col) { return kMargin + kCell * col; }
double y_of(int row) { return kMargin + kCell * (row + 1); }

}  // namespace

std::string render_svg(const GridDesign& d, const Simulation* sim) {
    std::map<std::string, double> mean;
    if (sim) {
        const Network& net = sim->flow.network;
        for (std::size_t e = 0; e < net.edges().size(); ++e)
            if (sim->profiles.present[e]) mean[net.edges()[e].ref.name()] = sim->profiles.exit[e].mean();
    }
    const double width = 2 * kMargin + kCell * (d.cols - 1);
    const double height = 2 * kMargin + kCell * (d.rows + 1);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(width) + "\" height=\"" +
                      fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) + "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    auto line = [&](const ChannelRef& ref, int r0, int c0, int r1, int c1) {
        const auto it = mean.find(ref.name());
        const std::string stroke = it == mean.end() ? "#888888" : colour(it->second);
        out += "<line class=\"channel\" data-channel=\"" + ref.name() + "\" x1=\"" + fmt(x_of(c0)) + "\" y1=\"" +
               fmt(y_of(r0)) + "\" x2=\"" + fmt(x_of(c1)) + "\" y2=\"" + fmt(y_of(r1)) + "\" stroke=\"" + stroke +
               "\" stroke-width=\"6\" stroke-linecap=\"round\"/>\n";
    };
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c + 1 < d.cols; ++c)
            if (d.has_horizontal(r, c)) line({ChannelKind::Horizontal, r, c, -1}, r, c, r, c + 1);
    for (int r = 0; r + 1 < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (d.has_vertical(r, c)) line({ChannelKind::Vertical, r, c, -1}, r, c, r + 1, c);
    for (std::size_t k = 0; k < d.inlets.size(); ++k) {
        const Inlet& in = d.inlets[k];
        line({ChannelKind::InletStub, -1, in.col, static_cast<int>(k)}, -1, in.col, 0, in.col);
        out += "<text class=\"inlet\" x=\"" + fmt(x_of(in.col)) + "\" y=\"" + fmt(y_of(-1) - 8) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + fmt(in.concentration, 3) + "</text>\n";
    }
    for (std::size_t k = 0; k < d.outlets.size(); ++k) {
        const int col = d.outlets[k];
        line({ChannelKind::OutletStub, d.rows, col, static_cast<int>(k)}, d.rows - 1, col, d.rows, col);
        if (sim && k < sim->report.outlets.size())
            out += "<text class=\"outlet\" x=\"" + fmt(x_of(col)) + "\" y=\"" + fmt(y_of(d.rows) + 16) +
                   "\" text-anchor=\"middle\" font-size=\"11\">" +
                   fmt(sim->report.outlets[k].concentration, 3) + "</text>\n";
    }
    out += "</svg>\n";
    return out;
}

}  // namespace gridmix
