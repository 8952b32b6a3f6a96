#pragma once

#include <algorithm>
#include <cstdint>
#include <deque>
#include <limits>
#include <vector>

namespace oddwidth {

// Dinic's maximum flow on int64 capacities. Arcs are explored in insertion
// order, so results are deterministic.
class MaxFlow {
public:
    explicit MaxFlow(int n) : head_(static_cast<std::size_t>(n), -1) {}

    int add_node() {
        head_.push_back(-1);
        return static_cast<int>(head_.size()) - 1;
    }

    // Returns the arc id (the reverse arc is id ^ 1).
    int add_arc(int from, int to, std::int64_t cap) {
        int id = static_cast<int>(arcs_.size());
        arcs_.push_back({to, head_[from], cap});
        head_[from] = id;
        arcs_.push_back({from, head_[to], 0});
        head_[to] = id + 1;
        return id;
    }

    std::int64_t run(int s, int t) {
        std::int64_t total = 0;
        // head_ lists arcs newest-first; rebuild insertion-ordered adjacency.
        adj_.assign(head_.size(), {});
        for (std::size_t v = 0; v < head_.size(); ++v) {
            for (int a = head_[v]; a != -1; a = arcs_[a].next) adj_[v].push_back(a);
            std::reverse(adj_[v].begin(), adj_[v].end());
        }
        while (bfs(s, t)) {
            it_.assign(head_.size(), 0);
            while (std::int64_t f = dfs(s, t, std::numeric_limits<std::int64_t>::max())) total += f;
        }
        return total;
    }

    std::int64_t flow_on(int arc) const { return arcs_[arc ^ 1].cap; }
    int head_of(int arc) const { return arcs_[arc].to; }
    int tail_of(int arc) const { return arcs_[arc ^ 1].to; }
    int num_arcs() const { return static_cast<int>(arcs_.size()); }
    bool is_forward(int arc) const { return (arc & 1) == 0; }

    // Vertices reachable from s in the residual network (after run()).
    std::vector<char> residual_reachable(int s) const {
        std::vector<char> seen(head_.size(), 0);
        std::vector<int> stack{s};
        seen[s] = 1;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (int a : adj_[v])
                if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
                    seen[arcs_[a].to] = 1;
                    stack.push_back(arcs_[a].to);
                }
        }
        return seen;
    }

    const std::vector<int>& out_arcs(int v) const { return adj_[v]; }

private:
    struct Arc {
        int to;
        int next;
        std::int64_t cap;
    };

    bool bfs(int s, int t) {
        level_.assign(head_.size(), -1);
        std::deque<int> q{s};
        level_[s] = 0;
        while (!q.empty()) {
            int v = q.front();
            q.pop_front();
            for (int a : adj_[v])
                if (arcs_[a].cap > 0 && level_[arcs_[a].to] < 0) {
                    level_[arcs_[a].to] = level_[v] + 1;
                    q.push_back(arcs_[a].to);
                }
        }
        return level_[t] >= 0;
    }

    std::int64_t dfs(int v, int t, std::int64_t pushed) {
        if (v == t) return pushed;
        for (std::size_t& i = it_[v]; i < adj_[v].size(); ++i) {
            int a = adj_[v][i];
            int w = arcs_[a].to;
            if (arcs_[a].cap <= 0 || level_[w] != level_[v] + 1) continue;
            if (std::int64_t f = dfs(w, t, std::min(pushed, arcs_[a].cap))) {
                arcs_[a].cap -= f;
                arcs_[a ^ 1].cap += f;
                return f;
            }
        }
        return 0;
    }

    std::vector<Arc> arcs_;
    std::vector<int> head_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> level_;
    std::vector<std::size_t> it_;
};

} // namespace oddwidth
