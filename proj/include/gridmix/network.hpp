#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gridmix/design.hpp"

namespace gridmix {

/// Compass directions in counter-clockwise order.
enum class Direction : std::uint8_t { East = 0, North = 1, West = 2, South = 3 };

inline constexpr std::array<Direction, 4> kDirections{Direction::East, Direction::North,
                                                      Direction::West, Direction::South};

constexpr int index_of(Direction d) { return static_cast<int>(d); }

/// Rotates by `steps` quarter turns counter-clockwise (negative: clockwise).
constexpr Direction rotate(Direction d, int steps) {
    return static_cast<Direction>(((index_of(d) + steps) % 4 + 4) % 4);
}

constexpr Direction opposite(Direction d) { return rotate(d, 2); }

enum class NodeRole : std::uint8_t { Grid, Inlet, Outlet };

/// A vertex of the channel network. Inlet nodes sit at row -1 and outlet
/// nodes at row `rows`, directly above/below the grid node they feed.
struct NetworkNode {
    NodeRole role = NodeRole::Grid;
    int row = 0;
    int col = 0;
    int port = -1;                        // inlet/outlet index
    std::array<int, 4> links{-1, -1, -1, -1};  // edge id per Direction

    int degree() const;
};

enum class ChannelKind : std::uint8_t { InletStub, Horizontal, Vertical, OutletStub };

struct ChannelRef {
    ChannelKind kind = ChannelKind::Horizontal;
    int row = 0;
    int col = 0;
    int port = -1;

    /// "in:k", "h:r,c", "v:r,c" or "out:k".
    std::string name() const;

    bool operator==(const ChannelRef&) const = default;
};

/// Parses a channel name produced by ChannelRef::name().
std::optional<ChannelRef> parse_channel_name(std::string_view name);

/// A channel. `from`/`to` follow the reference orientation: rightward for
/// horizontal channels, downward for vertical channels and stubs.
struct NetworkEdge {
    ChannelRef ref;
    int from = -1;
    int to = -1;
    Direction heading = Direction::South;  // direction from `from` to `to`
};

/// Undirected channel network of a design: every grid node, one node per
/// inlet and outlet, and one edge per present channel or stub.
class Network {
public:
    explicit Network(const GridDesign& design);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const std::vector<NetworkNode>& nodes() const { return nodes_; }
    const std::vector<NetworkEdge>& edges() const { return edges_; }
    const NetworkNode& node(int id) const { return nodes_[static_cast<std::size_t>(id)]; }
    const NetworkEdge& edge(int id) const { return edges_[static_cast<std::size_t>(id)]; }

    int grid_node(int row, int col) const { return row * cols_ + col; }
    int inlet_node(int port) const { return rows_ * cols_ + port; }
    int outlet_node(int port) const { return rows_ * cols_ + inlet_count_ + port; }
    int inlet_count() const { return inlet_count_; }
    int outlet_count() const { return outlet_count_; }

    /// Edge id for a channel name, or -1.
    int find_edge(std::string_view name) const;
    /// The endpoint of `edge` that is not `node`.
    int other_end(int edge, int node) const;
    /// Direction of `edge` as seen leaving `node`.
    Direction direction_from(int edge, int node) const;

    std::string node_name(int id) const;

private:
    int rows_;
    int cols_;
    int inlet_count_;
    int outlet_count_;
    std::vector<NetworkNode> nodes_;
    std::vector<NetworkEdge> edges_;
};

}  // namespace gridmix
