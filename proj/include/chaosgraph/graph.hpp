#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "chaosgraph/error.hpp"

namespace chaosgraph {

using VertexSet = std::vector<int>;
using Edge = std::pair<int, int>;

// Membership vector for S; rejects labels outside [0, n).
inline std::vector<char> membership(int n, const VertexSet& s) {
    std::vector<char> in(static_cast<std::size_t>(n), 0);
    for (int v : s) {
        if (v < 0 || v >= n)
            fail(ErrorKind::LabelOutOfRange, "vertex " + std::to_string(v) + " not in [0, " + std::to_string(n) + ")");
        in[v] = 1;
    }
    return in;
}

// Simple undirected graph without isolated vertices. Edges are stored with u < v,
// sorted lexicographically.
class Graph {
public:
    Graph() = default;

    // Validates and builds. With drop_isolated, isolated vertices are removed and
    // the remaining ones relabeled in increasing order; labels() maps back.
    static Graph build(int n, std::vector<Edge> edges, bool drop_isolated = false) {
        if (n <= 0) fail(ErrorKind::InvalidInput, "vertex count must be positive");
        for (auto& e : edges) {
            if (e.first < 0 || e.first >= n || e.second < 0 || e.second >= n)
                fail(ErrorKind::LabelOutOfRange, "edge (" + std::to_string(e.first) + "," + std::to_string(e.second) + ") out of range");
            if (e.first == e.second)
                fail(ErrorKind::LoopEdge, "loop at vertex " + std::to_string(e.first));
            if (e.first > e.second) std::swap(e.first, e.second);
        }
        std::sort(edges.begin(), edges.end());
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i] == edges[i - 1])
                fail(ErrorKind::DuplicateEdge, "duplicate edge (" + std::to_string(edges[i].first) + "," + std::to_string(edges[i].second) + ")");

        std::vector<int> deg(n, 0);
        for (auto& e : edges) {
            ++deg[e.first];
            ++deg[e.second];
        }
        std::vector<int> labels;
        std::vector<int> relabel(n, -1);
        for (int v = 0; v < n; ++v) {
            if (deg[v] == 0) {
                if (!drop_isolated) fail(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " is isolated");
                continue;
            }
            relabel[v] = static_cast<int>(labels.size());
            labels.push_back(v);
        }
        if (labels.empty()) fail(ErrorKind::IsolatedVertex, "graph has no edges");

        Graph g;
        g.n_ = static_cast<int>(labels.size());
        g.labels_ = std::move(labels);
        g.edges_.reserve(edges.size());
        for (auto& e : edges) g.edges_.emplace_back(relabel[e.first], relabel[e.second]);
        // relabeling is monotone, so edges stay sorted
        g.adj_.assign(g.n_, {});
        for (auto& e : g.edges_) {
            g.adj_[e.first].push_back(e.second);
            g.adj_[e.second].push_back(e.first);
        }
        for (auto& a : g.adj_) std::sort(a.begin(), a.end());
        return g;
    }

    int n() const { return n_; }
    std::size_t m() const { return edges_.size(); }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adj_[v]; }
    int degree(int v) const { return static_cast<int>(adj_[v].size()); }
    const std::vector<int>& labels() const { return labels_; }

    int max_degree() const {
        int d = 0;
        for (auto& a : adj_) d = std::max(d, static_cast<int>(a.size()));
        return d;
    }

    bool has_edge(int u, int v) const {
        const auto& a = adj_[u];
        return std::binary_search(a.begin(), a.end(), v);
    }

    // Component id per vertex, ids in order of first vertex.
    std::vector<int> components() const {
        std::vector<int> comp(n_, -1);
        int c = 0;
        std::vector<int> stack;
        for (int s = 0; s < n_; ++s) {
            if (comp[s] >= 0) continue;
            comp[s] = c;
            stack.push_back(s);
            while (!stack.empty()) {
                int v = stack.back();
                stack.pop_back();
                for (int w : adj_[v])
                    if (comp[w] < 0) {
                        comp[w] = c;
                        stack.push_back(w);
                    }
            }
            ++c;
        }
        return comp;
    }

    int component_count() const {
        auto c = components();
        return c.empty() ? 0 : *std::max_element(c.begin(), c.end()) + 1;
    }

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
    std::vector<int> labels_;
};

// E(S,T): edges with one endpoint in S and the other in T. Edges inside S∩T count once.
inline std::size_t edge_count(const Graph& g, const VertexSet& s, const VertexSet& t) {
    auto in_s = membership(g.n(), s);
    auto in_t = membership(g.n(), t);
    std::size_t c = 0;
    for (auto& [u, v] : g.edges())
        if ((in_s[u] && in_t[v]) || (in_s[v] && in_t[u])) ++c;
    return c;
}

inline VertexSet complement(int n, const VertexSet& s) {
    auto in = membership(n, s);
    VertexSet out;
    for (int v = 0; v < n; ++v)
        if (!in[v]) out.push_back(v);
    return out;
}

inline double volume(const Graph& g, const VertexSet& s) {
    auto in = membership(g.n(), s);
    double vol = 0;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) vol += g.degree(v);
    return vol;
}

// φ(S) = E(S, S̄)/vol(S); zero for S = V.
inline double edge_expansion(const Graph& g, const VertexSet& s) {
    auto in = membership(g.n(), s);
    double vol = 0;
    for (int v = 0; v < g.n(); ++v)
        if (in[v]) vol += g.degree(v);
    if (vol == 0) fail(ErrorKind::EmptySet, "edge expansion of an empty set");
    double cut = 0;
    for (auto& [u, v] : g.edges())
        if (in[u] != in[v]) cut += 1;
    return cut / vol;
}

} // namespace chaosgraph
