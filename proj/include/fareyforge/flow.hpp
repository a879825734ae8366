#pragma once

#include <limits>
#include <vector>

namespace fareyforge {

// Small deterministic max-flow network (BFS augmenting paths). Arcs are
// explored in insertion order, so callers control tie-breaking by inserting
// arcs in sorted order.
class FlowNetwork {
public:
    explicit FlowNetwork(int node_count) : head_(node_count, -1) {}

    int node_count() const { return static_cast<int>(head_.size()); }

    // Adds a forward arc with the given capacity and a zero-capacity reverse.
    // Returns the forward arc id.
    int add_arc(int from, int to, long long cap);
    // Undirected edge: capacity in both directions.
    void add_edge(int a, int b, long long cap);

    // Augments until `limit` or no augmenting path remains; returns the flow.
    long long max_flow(int source, int sink,
                       long long limit = std::numeric_limits<long long>::max());

    long long flow_on(int arc_id) const { return arcs_[arc_id].flow; }
    void cancel_flow(int arc_id, long long amount);

    // Nodes reachable from `source` in the residual graph (source side of a
    // minimum cut after max_flow ran to completion).
    std::vector<bool> residual_reachable(int source) const;

private:
    struct Arc {
        int to;
        int next;
        long long cap;
        long long flow;
    };
    std::vector<Arc> arcs_;
    std::vector<int> head_;
};

} // namespace fareyforge
