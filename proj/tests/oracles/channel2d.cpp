#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <Eigen/SparseLU>
#include <cmath>
#include <stdexcept>

#include "oracles.hpp"

namespace oracle {

namespace {

struct Raster {
    int nx = 0;
    int ny = 0;
    std::vector<int> id;  // cell index or -1, row-major with y downward
    int count = 0;
    std::vector<std::pair<int, double>> inflow;  // (cell, velocity) at the top face
    std::vector<std::pair<int, int>> outflow;    // (cell, outlet) at the bottom face
    std::vector<double> inflow_c;                // concentration per inflow face

    int at(int x, int y) const {
        if (x < 0 || y < 0 || x >= nx || y >= ny) return -1;
        return id[static_cast<std::size_t>(y * nx + x)];
    }
};

Raster rasterize(const gridmix::GridDesign& d, int n) {
    const int nl = static_cast<int>(std::lround(d.channel_length / d.channel_width * n));
    const int pitch = nl + n;
    Raster g;
    g.nx = (d.cols - 1) * pitch + n;
    g.ny = 2 * nl + (d.rows - 1) * pitch + n;
    std::vector<char> on(static_cast<std::size_t>(g.nx * g.ny), 0);
    auto fill = [&](int x0, int x1, int y0, int y1) {
        for (int y = y0; y < y1; ++y)
            for (int x = x0; x < x1; ++x) on[static_cast<std::size_t>(y * g.nx + x)] = 1;
    };
    auto node_x = [&](int c) { return c * pitch; };
    auto node_y = [&](int r) { return nl + r * pitch; };
    auto node = [&](int r, int c) { fill(node_x(c), node_x(c) + n, node_y(r), node_y(r) + n); };
    for (int r = 0; r < d.rows; ++r)
        for (int c = 0; c + 1 < d.cols; ++c)
            if (d.has_horizontal(r, c)) {
                node(r, c);
                node(r, c + 1);
                fill(node_x(c) + n, node_x(c + 1), node_y(r), node_y(r) + n);
            }
    for (int r = 0; r + 1 < d.rows; ++r)
        for (int c = 0; c < d.cols; ++c)
            if (d.has_vertical(r, c)) {
                node(r, c);
                node(r + 1, c);
                fill(node_x(c), node_x(c) + n, node_y(r) + n, node_y(r + 1));
            }
    for (const auto& in : d.inlets) {
        node(0, in.col);
        fill(node_x(in.col), node_x(in.col) + n, 0, nl);
    }
    for (int c : d.outlets) {
        node(d.rows - 1, c);
        fill(node_x(c), node_x(c) + n, g.ny - nl, g.ny);
    }
    g.id.assign(on.size(), -1);
    for (std::size_t i = 0; i < on.size(); ++i)
        if (on[i]) g.id[i] = g.count++;
    for (const auto& in : d.inlets)
        for (int x = node_x(in.col); x < node_x(in.col) + n; ++x) {
            g.inflow.push_back({g.at(x, 0), in.velocity});
            g.inflow_c.push_back(in.concentration);
        }
    for (std::size_t k = 0; k < d.outlets.size(); ++k)
        for (int x = node_x(d.outlets[k]); x < node_x(d.outlets[k]) + n; ++x)
            g.outflow.push_back({g.at(x, g.ny - 1), static_cast<int>(k)});
    return g;
}

struct Face {
    int a, b;          // a is left/top of b
    int aa, bb;        // next cells beyond a and beyond b along the normal, or -1
    double q = 0.0;    // volumetric flux a -> b
};

double van_leer(double r) { return (r + std::abs(r)) / (1.0 + std::abs(r)); }

}  // namespace

ChannelFlowResult channel_flow_2d(const gridmix::GridDesign& d, int n) {
    const Raster g = rasterize(d, n);
    const double h = d.channel_width / n;
    const double diff = d.fluid.diffusion;
    const auto cells = static_cast<Eigen::Index>(g.count);

    std::vector<Face> faces;
    for (int y = 0; y < g.ny; ++y)
        for (int x = 0; x < g.nx; ++x) {
            const int a = g.at(x, y);
            if (a < 0) continue;
            if (const int b = g.at(x + 1, y); b >= 0) faces.push_back({a, b, g.at(x - 1, y), g.at(x + 2, y)});
            if (const int b = g.at(x, y + 1); b >= 0) faces.push_back({a, b, g.at(x, y - 1), g.at(x, y + 2)});
        }

    // Potential flow: unit conductance per face, potential 0 half a cell
    // beyond each outlet face.
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(cells);
    for (const Face& f : faces) {
        trip.emplace_back(f.a, f.a, 1.0);
        trip.emplace_back(f.b, f.b, 1.0);
        trip.emplace_back(f.a, f.b, -1.0);
        trip.emplace_back(f.b, f.a, -1.0);
    }
    for (auto [c, k] : g.outflow) trip.emplace_back(c, c, 2.0);
    for (auto [c, v] : g.inflow) rhs[c] += v * h;
    Eigen::SparseMatrix<double> lap(cells, cells);
    lap.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(lap);
    if (chol.info() != Eigen::Success) throw std::runtime_error("potential system failed");
    const Eigen::VectorXd phi = chol.solve(rhs);
    for (Face& f : faces) f.q = phi[f.a] - phi[f.b];

    // Transport with first-order upwind in the matrix.
    trip.clear();
    Eigen::VectorXd b = Eigen::VectorXd::Zero(cells);
    for (const Face& f : faces) {
        const int up = f.q >= 0 ? f.a : f.b;
        const int down = f.q >= 0 ? f.b : f.a;
        const double q = std::abs(f.q);
        trip.emplace_back(up, up, q);
        trip.emplace_back(down, up, -q);
        trip.emplace_back(f.a, f.a, diff);
        trip.emplace_back(f.b, f.b, diff);
        trip.emplace_back(f.a, f.b, -diff);
        trip.emplace_back(f.b, f.a, -diff);
    }
    for (auto [c, k] : g.outflow) trip.emplace_back(c, c, 2.0 * phi[c]);
    for (std::size_t i = 0; i < g.inflow.size(); ++i)
        b[g.inflow[i].first] += g.inflow[i].second * h * g.inflow_c[i];
    Eigen::SparseMatrix<double> a(cells, cells);
    a.setFromTriplets(trip.begin(), trip.end());
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(a);
    lu.factorize(a);
    if (lu.info() != Eigen::Success) throw std::runtime_error("transport system failed");

    // Deferred correction towards the limited second-order face values.
    Eigen::VectorXd c = lu.solve(b);
    ChannelFlowResult out;
    for (int it = 0; it < 2000; ++it) {
        Eigen::VectorXd rb = b;
        for (const Face& f : faces) {
            const bool forward = f.q >= 0;
            const int up = forward ? f.a : f.b;
            const int down = forward ? f.b : f.a;
            const int upup = forward ? f.aa : f.bb;
            if (upup < 0) continue;
            const double jump = c[down] - c[up];
            if (jump == 0.0) continue;
            const double r = (c[up] - c[upup]) / jump;
            const double extra = std::abs(f.q) * 0.5 * van_leer(r) * jump;
            rb[up] -= extra;
            rb[down] += extra;
        }
        Eigen::VectorXd next = lu.solve(rb);
        const double change = (next - c).lpNorm<Eigen::Infinity>();
        c = std::move(next);
        out.iterations = it + 1;
        if (change < 1e-12) break;
    }

    out.cells = g.count;
    out.outlet_concentration.assign(d.outlets.size(), 0.0);
    out.outlet_flux.assign(d.outlets.size(), 0.0);
    for (auto [cell, k] : g.outflow) {
        const double q = 2.0 * phi[cell];
        out.outlet_flux[static_cast<std::size_t>(k)] += q;
        out.outlet_concentration[static_cast<std::size_t>(k)] += q * c[cell];
        out.mass_out += q * c[cell];
    }
    for (std::size_t k = 0; k < d.outlets.size(); ++k) out.outlet_concentration[k] /= out.outlet_flux[k];
    for (std::size_t i = 0; i < g.inflow.size(); ++i) {
        out.inflow += g.inflow[i].second * h;
        out.mass_in += g.inflow[i].second * h * g.inflow_c[i];
    }
    return out;
}

}  // namespace oracle
