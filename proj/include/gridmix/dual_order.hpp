#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gridmix/flow.hpp"
#include "gridmix/profile.hpp"

namespace gridmix {

/// Half-edge of the planar embedding: the oriented grid's active channels
/// plus an enclosing rectangle through the inlet and outlet nodes.
/// Vertices are network node ids; the four rectangle corners follow them.
struct HalfEdge {
    int tail = -1;
    int head = -1;
    Direction heading = Direction::East;
    int channel = -1;  // network edge id, or -1 on the rectangle
    int face = -1;
    int next = -1;  // next half-edge around the same face
};

struct DualEdge {
    int from = -1;
    int to = -1;
    int channel = -1;
};

/// Faces of the embedding and the dual DAG over them. Each active channel
/// yields one dual edge, from the face on its right to the face on its left
/// (looking along the flow).
struct DualGraph {
    int vertex_count = 0;  // network nodes + 4 corners
    int face_count = 0;
    int outer = -1;        // the unbounded face; has no dual edges
    int source = -1;       // face along the left rectangle side
    int sink = -1;         // face along the right rectangle side
    std::vector<HalfEdge> half_edges;
    std::vector<int> face_start;         // one boundary half-edge per face
    std::vector<DualEdge> edges;
    std::vector<int> edge_of_channel;    // network edge id -> dual edge or -1
    std::vector<int> topological_order;  // dual vertices, outer face excluded

    /// Face to the left / right of an active channel, looking along the flow.
    int left_face(int channel) const;
    int right_face(int channel) const;
    /// Boundary vertices of a face in traversal order (face on the left).
    std::vector<int> boundary(int face) const;
};

/// Name of an embedding vertex: the network node name or "corner:tl" etc.
std::string vertex_name(const Network& net, int vertex);

/// Throws CycleError when the dual is cyclic and InternalError when the
/// source or sink is not unique.
DualGraph build_dual(const DirectedGrid& dg);

enum class Order : std::uint8_t { Precedes, Succeeds, Related };

const char* to_string(Order order);

/// Reachability over the oriented grid and its dual, for ⊴ queries.
class DualOrderQuery {
public:
    DualOrderQuery(const DirectedGrid& dg, const DualGraph& dual);

    /// Related when both channels lie on a common inlet-to-outlet path (or
    /// are the same channel); otherwise the dual verdict. Throws
    /// AmbiguousOrderError when dual reachability gives both or neither.
    Order compare(int channel, int other) const;
    bool related(int channel, int other) const;

private:
    using Bits = std::vector<std::uint64_t>;
    static bool test(const Bits& bits, int i);

    const DirectedGrid* dg_;
    const DualGraph* dual_;
    std::vector<Bits> node_reach_;  // reflexive, by network node
    std::vector<Bits> face_reach_;  // reflexive, by face
};

inline Order dually_precedes(const DualOrderQuery& q, int channel, int other) {
    return q.compare(channel, other);
}

struct MonotonicityViolation {
    enum class Kind : std::uint8_t {
        Increasing,  // a profile rises from left to right
        Ordering,    // e ⊴ e' but some value on e is below one on e'
        PortOrder,   // a node's left-to-right ports disagree with ⊴
    };
    Kind kind;
    int channel = -1;
    int other = -1;
    double excess = 0.0;
};

inline constexpr double kMonotonicityTol = 1e-9;

/// Checks that every profile is non-increasing and that whenever e ⊴ e'
/// (unrelated), every value on e is at least every value on e'. `profiles`
/// holds the recorded profiles per network edge id; edges with none are
/// skipped. Also checks that the inflow and outflow orders used at nodes
/// agree with ⊴.
std::vector<MonotonicityViolation> check_monotonicity(const DirectedGrid& dg,
                                                      const DualOrderQuery& q,
                                                      const std::vector<std::vector<SPProfile>>& profiles,
                                                      double tol = kMonotonicityTol);

}  // namespace gridmix
