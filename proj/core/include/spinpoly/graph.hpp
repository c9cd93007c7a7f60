#ifndef SPINPOLY_GRAPH_HPP
#define SPINPOLY_GRAPH_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "spinpoly/errors.hpp"

namespace spinpoly {

using EdgeId = int;
using VertexId = int;

enum class EdgeKind { Internal, Leaf };

// Caterpillar graphs: a chain of handles/loops on one side, a chain of
// leaf-carrying vertices on the other.  The extra edge ids recorded here
// are the anchors used by the witness constructions.
struct CaterpillarInfo {
    int g = 0;
    int n = 0;
    EdgeId separating_end = -1; // edge between the tree part and the genus part
    EdgeId handle_x = -1;       // double-edge pair closest to the tree part
    EdgeId handle_y = -1;
    EdgeId end_loop = -1;       // loop at the far end of the genus part
};

// An undirected graph whose internal vertices all have exactly three
// half-edge slots.  Loops occupy two slots of one vertex; leaf edges occupy
// a single slot and have a free end.  Immutable after construction.
class TrivalentGraph {
public:
    struct Incidence {
        VertexId vertex = -1;
        int multiplicity = 0; // 2 for a loop, else 1

        friend bool operator==(const Incidence&, const Incidence&) = default;
    };

    // Assembles a graph from explicit slot bindings.  Throws
    // InvariantViolation unless every TrivalentGraph invariant holds.
    static TrivalentGraph from_parts(std::vector<std::array<EdgeId, 3>> slots,
                                     std::vector<EdgeKind> edge_kinds,
                                     std::vector<EdgeId> leaf_order,
                                     std::optional<CaterpillarInfo> family = std::nullopt);

    int vertex_count() const { return static_cast<int>(slots_.size()); }
    int edge_count() const { return static_cast<int>(kinds_.size()); }
    int internal_edge_count() const { return internal_edges_; }
    int leaf_count() const { return static_cast<int>(leaf_order_.size()); }

    EdgeKind edge_kind(EdgeId e) const { return kinds_[static_cast<std::size_t>(e)]; }
    const std::array<EdgeId, 3>& slots(VertexId v) const { return slots_[static_cast<std::size_t>(v)]; }
    const std::vector<std::array<EdgeId, 3>>& all_slots() const { return slots_; }
    const std::vector<EdgeId>& leaf_order() const { return leaf_order_; }
    const std::vector<Incidence>& incidences(EdgeId e) const { return incidences_[static_cast<std::size_t>(e)]; }

    // First Betti number; the two computations mentioned in the class
    // contract (leaves pruned / leaves kept with their free endpoints) are
    // both evaluated and checked against each other at construction.
    int betti_number() const { return betti_; }

    const std::optional<CaterpillarInfo>& family() const { return family_; }

    bool operator==(const TrivalentGraph& other) const {
        return slots_ == other.slots_ && kinds_ == other.kinds_ && leaf_order_ == other.leaf_order_;
    }

private:
    TrivalentGraph() = default;

    std::vector<std::array<EdgeId, 3>> slots_;
    std::vector<EdgeKind> kinds_;
    std::vector<EdgeId> leaf_order_;
    std::vector<std::vector<Incidence>> incidences_;
    std::optional<CaterpillarInfo> family_;
    int internal_edges_ = 0;
    int betti_ = 0;
};

// Checks all TrivalentGraph invariants on raw parts; throws
// InvariantViolation with a description of the first failure.
void validate_parts(const std::vector<std::array<EdgeId, 3>>& slots,
                    const std::vector<EdgeKind>& edge_kinds,
                    const std::vector<EdgeId>& leaf_order);

// Re-checks an assembled graph (cheap; used by deserialization and tests).
void validate(const TrivalentGraph& graph);

// The chain-of-handles graph with n ordered leaves and first Betti number g.
// Feasible signatures: g=0 needs n>=3, g=1 needs n>=1, g>=2 allows any n.
TrivalentGraph build_caterpillar(int g, int n);

enum class NamedGraph { Trinode, Theta, Dumbbell, LoopWithLeaf };

TrivalentGraph build_named(NamedGraph name);
TrivalentGraph build_named(const std::string& name); // throws UnknownName

} // namespace spinpoly

#endif
