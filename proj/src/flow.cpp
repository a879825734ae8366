#include "fareyforge/flow.hpp"

#include <deque>

namespace fareyforge {

int FlowNetwork::add_arc(int from, int to, long long cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({to, head_[from], cap, 0});
    head_[from] = id;
    arcs_.push_back({from, head_[to], 0, 0});
    head_[to] = id + 1;
    return id;
}

void FlowNetwork::add_edge(int a, int b, long long cap) {
    int id = static_cast<int>(arcs_.size());
    arcs_.push_back({b, head_[a], cap, 0});
    head_[a] = id;
    arcs_.push_back({a, head_[b], cap, 0});
    head_[b] = id + 1;
}

long long FlowNetwork::max_flow(int source, int sink, long long limit) {
    long long total = 0;
    std::vector<int> via(node_count());
    while (total < limit) {
        std::fill(via.begin(), via.end(), -1);
        via[source] = -2;
        std::deque<int> queue{source};
        while (!queue.empty() && via[sink] == -1) {
            int v = queue.front();
            queue.pop_front();
            // head_ lists arcs in reverse insertion order; walk them into a
            // buffer so exploration follows insertion order deterministically.
            std::vector<int> order;
            for (int id = head_[v]; id != -1; id = arcs_[id].next)
                order.push_back(id);
            for (auto it = order.rbegin(); it != order.rend(); ++it) {
                const Arc& a = arcs_[*it];
                if (a.cap - a.flow <= 0 || via[a.to] != -1)
                    continue;
                via[a.to] = *it;
                if (a.to == sink)
                    break;
                queue.push_back(a.to);
            }
        }
        if (via[sink] == -1)
            break;
        long long push = limit - total;
        for (int v = sink; v != source;) {
            const Arc& a = arcs_[via[v]];
            push = std::min(push, a.cap - a.flow);
            v = arcs_[via[v] ^ 1].to;
        }
        for (int v = sink; v != source;) {
            int id = via[v];
            arcs_[id].flow += push;
            arcs_[id ^ 1].flow -= push;
            v = arcs_[id ^ 1].to;
        }
        total += push;
    }
    return total;
}

void FlowNetwork::cancel_flow(int arc_id, long long amount) {
    arcs_[arc_id].flow -= amount;
    arcs_[arc_id ^ 1].flow += amount;
}

std::vector<bool> FlowNetwork::residual_reachable(int source) const {
    std::vector<bool> seen(node_count(), false);
    seen[source] = true;
    std::deque<int> queue{source};
    while (!queue.empty()) {
        int v = queue.front();
        queue.pop_front();
        for (int id = head_[v]; id != -1; id = arcs_[id].next) {
            const Arc& a = arcs_[id];
            if (a.cap - a.flow > 0 && !seen[a.to]) {
                seen[a.to] = true;
                queue.push_back(a.to);
            }
        }
    }
    return seen;
}

} // namespace fareyforge
