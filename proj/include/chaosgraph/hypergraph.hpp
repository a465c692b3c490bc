#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaosgraph/error.hpp"
#include "chaosgraph/expansion.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/spectrum.hpp"

namespace chaosgraph {

constexpr double kMinWeight = 1e-15;

struct Hyperedge {
    std::vector<int> verts; // sorted
    double w;
};

// Weighted hypergraph with sorted, distinct hyperedges of size ≥ 2.
class WeightedHypergraph {
public:
    WeightedHypergraph() = default;

    static WeightedHypergraph build(int n, std::vector<Hyperedge> edges, bool drop_isolated = false) {
        if (n <= 0) fail(ErrorKind::InvalidInput, "vertex count must be positive");
        for (auto& e : edges) {
            if (e.verts.size() < 2) fail(ErrorKind::InvalidInput, "hyperedge with fewer than 2 vertices");
            std::sort(e.verts.begin(), e.verts.end());
            for (int v : e.verts)
                if (v < 0 || v >= n) fail(ErrorKind::LabelOutOfRange, "vertex " + std::to_string(v) + " out of range");
            if (std::adjacent_find(e.verts.begin(), e.verts.end()) != e.verts.end())
                fail(ErrorKind::LoopEdge, "hyperedge repeats a vertex");
            if (!(e.w >= kMinWeight)) fail(ErrorKind::InvalidWeight, "hyperedge weight below 1e-15");
        }
        std::sort(edges.begin(), edges.end(), [](const Hyperedge& a, const Hyperedge& b) { return a.verts < b.verts; });
        for (std::size_t i = 1; i < edges.size(); ++i)
            if (edges[i].verts == edges[i - 1].verts) fail(ErrorKind::DuplicateEdge, "repeated hyperedge");

        std::vector<char> covered(n, 0);
        for (auto& e : edges)
            for (int v : e.verts) covered[v] = 1;
        std::vector<int> relabel(n, -1), labels;
        for (int v = 0; v < n; ++v) {
            if (!covered[v]) {
                if (!drop_isolated) fail(ErrorKind::IsolatedVertex, "vertex " + std::to_string(v) + " lies in no hyperedge");
                continue;
            }
            relabel[v] = static_cast<int>(labels.size());
            labels.push_back(v);
        }
        if (labels.empty()) fail(ErrorKind::IsolatedVertex, "hypergraph has no edges");
        for (auto& e : edges)
            for (int& v : e.verts) v = relabel[v];

        WeightedHypergraph h;
        h.n_ = static_cast<int>(labels.size());
        h.labels_ = std::move(labels);
        h.edges_ = std::move(edges);
        std::vector<std::vector<int>> ev;
        std::vector<double> w;
        for (auto& e : h.edges_) {
            ev.push_back(e.verts);
            w.push_back(e.w);
        }
        h.cut_ = CutStructure::make(h.n_, std::move(ev), std::move(w));
        return h;
    }

    static WeightedHypergraph from_graph(const Graph& g) {
        std::vector<Hyperedge> e;
        for (auto& [u, v] : g.edges()) e.push_back({{u, v}, 1.0});
        return build(g.n(), std::move(e));
    }

    int n() const { return n_; }
    const std::vector<Hyperedge>& edges() const { return edges_; }
    const std::vector<int>& labels() const { return labels_; }
    const CutStructure& cut() const { return cut_; }
    int rank() const { return cut_.rank; }
    int corank() const { return cut_.corank; }
    double degree(int v) const { return cut_.degree[v]; }
    double total_weight() const {
        double s = 0;
        for (auto& e : edges_) s += e.w;
        return s;
    }

    Eigen::MatrixXd adjacency() const { return cut_.adjacency(); }

    // Indices of hyperedges meeting both S and its complement.
    std::vector<int> boundary(const VertexSet& s) const {
        auto in = membership(n_, s);
        std::vector<int> out;
        for (std::size_t i = 0; i < edges_.size(); ++i) {
            std::size_t inside = 0;
            for (int v : edges_[i].verts) inside += in[v];
            if (inside > 0 && inside < edges_[i].verts.size()) out.push_back(static_cast<int>(i));
        }
        return out;
    }
    double volume(const VertexSet& s) const { return cut_.volume(s); }
    double expansion(const VertexSet& s) const { return cut_.expansion(s); }

private:
    int n_ = 0;
    std::vector<Hyperedge> edges_;
    std::vector<int> labels_;
    CutStructure cut_;
};

inline SpectralReport hyper_laplacian_spectrum(const WeightedHypergraph& h) {
    return laplacian_spectrum_of(h.adjacency());
}

inline SpectralReport hyper_adjacency_spectrum(const WeightedHypergraph& h) {
    return make_report(MatrixKind::Adjacency, symmetric_eigenvalues(h.adjacency()));
}

inline CheegerReport hyper_cheeger_check(const WeightedHypergraph& h, int k_max, int exact_limit = 12,
                                         bool require_exact = false) {
    return cheeger_check(h.cut(), k_max, exact_limit, require_exact);
}

} // namespace chaosgraph
