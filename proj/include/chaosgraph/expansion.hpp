#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/spectrum.hpp"

namespace chaosgraph {

// Weighted edge system shared by graphs (2-uniform, unit weights) and hypergraphs.
struct CutStructure {
    int n = 0;
    std::vector<std::vector<int>> edges;
    std::vector<double> weight;
    std::vector<double> degree;
    std::vector<std::vector<int>> incident;
    int rank = 2;
    int corank = 2;

    static CutStructure from_graph(const Graph& g) {
        std::vector<std::vector<int>> e;
        e.reserve(g.m());
        for (auto& [u, v] : g.edges()) e.push_back({u, v});
        return make(g.n(), std::move(e), std::vector<double>(g.m(), 1.0));
    }

    static CutStructure make(int n, std::vector<std::vector<int>> edges, std::vector<double> w) {
        CutStructure c;
        c.n = n;
        c.edges = std::move(edges);
        c.weight = std::move(w);
        c.degree.assign(n, 0.0);
        c.incident.assign(n, {});
        c.rank = 0;
        c.corank = std::numeric_limits<int>::max();
        for (std::size_t i = 0; i < c.edges.size(); ++i) {
            int sz = static_cast<int>(c.edges[i].size());
            c.rank = std::max(c.rank, sz);
            c.corank = std::min(c.corank, sz);
            for (int v : c.edges[i]) {
                c.degree[v] += c.weight[i];
                c.incident[v].push_back(static_cast<int>(i));
            }
        }
        if (c.edges.empty()) c.rank = c.corank = 2;
        return c;
    }

    // Cheeger factor 2(r-1)^2/(cr-1); equals 2 for graphs.
    double cheeger_factor() const {
        double r = rank, cr = corank;
        return 2.0 * (r - 1) * (r - 1) / (cr - 1);
    }

    // A_ij = sum over edges containing i and j of w(e)/(|e|-1).
    Eigen::MatrixXd adjacency() const {
        check_dense_size(n);
        Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            double c = weight[i] / static_cast<double>(e.size() - 1);
            for (std::size_t x = 0; x < e.size(); ++x)
                for (std::size_t y = x + 1; y < e.size(); ++y) {
                    a(e[x], e[y]) += c;
                    a(e[y], e[x]) += c;
                }
        }
        return a;
    }

    double volume(const VertexSet& s) const {
        auto in = membership(n, s);
        double vol = 0;
        for (int v = 0; v < n; ++v)
            if (in[v]) vol += degree[v];
        return vol;
    }

    // Total weight of edges meeting both S and its complement.
    double boundary(const VertexSet& s) const {
        auto in = membership(n, s);
        double b = 0;
        for (std::size_t i = 0; i < edges.size(); ++i) {
            int inside = 0;
            for (int v : edges[i]) inside += in[v];
            if (inside > 0 && inside < static_cast<int>(edges[i].size())) b += weight[i];
        }
        return b;
    }

    double expansion(const VertexSet& s) const {
        double vol = volume(s);
        if (vol == 0) fail(ErrorKind::EmptySet, "edge expansion of an empty set");
        return boundary(s) / vol;
    }
};

inline VertexSet mask_to_set(std::uint32_t mask) {
    VertexSet s;
    for (int v = 0; mask; ++v, mask >>= 1)
        if (mask & 1u) s.push_back(v);
    return s;
}

// φ(S) for every bitmask S of an instance with n ≤ 20; entry 0 is +inf.
inline std::vector<double> phi_table(const CutStructure& cs) {
    if (cs.n > 20) fail(ErrorKind::TooLargeForExact, "subset table limited to 20 vertices");
    const std::uint32_t full = (1u << cs.n) - 1;
    std::vector<std::uint32_t> emask(cs.edges.size(), 0);
    for (std::size_t i = 0; i < cs.edges.size(); ++i)
        for (int v : cs.edges[i]) emask[i] |= 1u << v;
    std::vector<double> vol(full + 1, 0.0), phi(full + 1, 0.0);
    for (std::uint32_t s = 1; s <= full; ++s) {
        int low = std::countr_zero(s);
        vol[s] = vol[s & (s - 1)] + cs.degree[low];
    }
    phi[0] = std::numeric_limits<double>::infinity();
    for (std::uint32_t s = 1; s <= full; ++s) {
        double b = 0;
        for (std::size_t i = 0; i < emask.size(); ++i)
            if ((emask[i] & s) && (emask[i] & ~s)) b += cs.weight[i];
        phi[s] = b / vol[s];
    }
    return phi;
}

struct PhiKResult {
    double value = 0;
    std::vector<VertexSet> witness;
    bool exact = false;
    bool upper_bound = false;
    // max φ(S_i)/sqrt(μ_k) for the returned sets; reported only, never asserted.
    double hard_ratio = std::numeric_limits<double>::quiet_NaN();
};

inline int exact_vertex_limit(int k, int exact_limit) {
    return k <= 3 ? exact_limit : std::min(exact_limit, 10);
}

// min over k disjoint nonempty S_1..S_k of max φ(S_i), by dynamic programming over
// subsets: h_j[C] is the best value using j sets inside C.
inline PhiKResult phi_k_exact(const CutStructure& cs, int k, int exact_limit = 12) {
    if (k < 1 || k > cs.n) fail(ErrorKind::InvalidK, "k must lie in [1, n]");
    if (cs.n > exact_vertex_limit(k, exact_limit))
        fail(ErrorKind::TooLargeForExact, "exact phi_k limited to " + std::to_string(exact_vertex_limit(k, exact_limit)) + " vertices for k=" + std::to_string(k));
    const double inf = std::numeric_limits<double>::infinity();
    const std::uint32_t full = (1u << cs.n) - 1;
    auto phi = phi_table(cs);

    std::vector<std::vector<double>> h(k + 1, std::vector<double>(full + 1, inf));
    std::vector<std::vector<std::uint32_t>> choice(k + 1, std::vector<std::uint32_t>(full + 1, 0));
    for (std::uint32_t c = 1; c <= full; ++c) {
        h[1][c] = phi[c];
        choice[1][c] = c;
        for (std::uint32_t r = c; r; r &= r - 1) {
            std::uint32_t sub = c & ~(r & -r);
            if (sub && h[1][sub] < h[1][c]) {
                h[1][c] = h[1][sub];
                choice[1][c] = choice[1][sub];
            }
        }
    }
    for (int j = 2; j <= k; ++j) {
        for (std::uint32_t c = 1; c <= full; ++c) {
            if (std::popcount(c) < j) continue;
            std::uint32_t low = c & -c;
            std::uint32_t rest = c & ~low;
            double best = h[j][rest];
            std::uint32_t arg = 0;
            // subsets S of c containing low
            for (std::uint32_t t = rest;; t = (t - 1) & rest) {
                std::uint32_t s = t | low;
                double v = std::max(phi[s], h[j - 1][c & ~s]);
                if (v < best) {
                    best = v;
                    arg = s;
                }
                if (t == 0) break;
            }
            h[j][c] = best;
            choice[j][c] = arg;
        }
    }

    PhiKResult res;
    res.exact = true;
    res.value = h[k][full];
    std::uint32_t c = full;
    int j = k;
    while (j > 1) {
        std::uint32_t s = choice[j][c];
        if (s == 0) {
            c &= c - 1;
            continue;
        }
        res.witness.push_back(mask_to_set(s));
        c &= ~s;
        --j;
    }
    res.witness.push_back(mask_to_set(choice[1][c]));
    return res;
}

// φ̃_2 = min over 0 < |S| ≤ n/2 of φ(S).
inline std::pair<double, VertexSet> phi_tilde2_exact(const CutStructure& cs, int exact_limit = 12) {
    if (cs.n > exact_limit) fail(ErrorKind::TooLargeForExact, "exact phi_tilde_2 limited to " + std::to_string(exact_limit) + " vertices");
    auto phi = phi_table(cs);
    double best = std::numeric_limits<double>::infinity();
    std::uint32_t arg = 0;
    for (std::uint32_t s = 1; s < phi.size(); ++s)
        if (2 * std::popcount(s) <= cs.n && phi[s] < best) {
            best = phi[s];
            arg = s;
        }
    return {best, mask_to_set(arg)};
}

struct Eigensystem {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns
};

inline Eigensystem laplacian_eigensystem(const CutStructure& cs) {
    Eigen::MatrixXd l = normalized_laplacian(cs.adjacency());
    auto es = symmetric_eigen(l, true);
    return {es.values, es.vectors};
}

namespace detail {

// Incremental φ along a vertex order: φ of every prefix of length 1..n-1.
inline std::vector<double> sweep_values(const CutStructure& cs, const std::vector<int>& order) {
    std::vector<int> cnt(cs.edges.size(), 0);
    std::vector<double> out;
    out.reserve(order.size());
    double vol = 0, b = 0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
        int v = order[i];
        vol += cs.degree[v];
        for (int e : cs.incident[v]) {
            int sz = static_cast<int>(cs.edges[e].size());
            bool before = cnt[e] > 0 && cnt[e] < sz;
            ++cnt[e];
            bool after = cnt[e] > 0 && cnt[e] < sz;
            if (before != after) b += after ? cs.weight[e] : -cs.weight[e];
        }
        out.push_back(b / vol);
    }
    return out;
}

inline std::vector<int> edge_components(const CutStructure& cs) {
    std::vector<int> parent(cs.n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto& e : cs.edges)
        for (std::size_t i = 1; i < e.size(); ++i) parent[find(e[i])] = find(e[0]);
    std::vector<int> comp(cs.n), id(cs.n, -1);
    int c = 0;
    for (int v = 0; v < cs.n; ++v) {
        int r = find(v);
        if (id[r] < 0) id[r] = c++;
        comp[v] = id[r];
    }
    return comp;
}

} // namespace detail

// Upper bound on φ_k from sweep cuts of the k lowest eigenvectors (in the
// D^{-1/2} embedding), connected components and singletons, picked greedily by
// ascending φ among pairwise disjoint candidates.
inline PhiKResult phi_k_heuristic(const CutStructure& cs, int k, const Eigensystem& es) {
    if (k < 1 || k > cs.n) fail(ErrorKind::InvalidK, "k must lie in [1, n]");
    struct Cand {
        double phi;
        int vec;  // -1: component, -2: singleton
        int dir;  // 0 prefix, 1 suffix
        int len;  // or component id / vertex
    };
    std::vector<Cand> cands;
    std::vector<std::vector<int>> orders;
    int nvec = std::min<int>(k, static_cast<int>(es.values.size()));
    for (int j = 0; j < nvec; ++j) {
        std::vector<double> x(cs.n);
        for (int v = 0; v < cs.n; ++v) x[v] = es.vectors(v, j) / std::sqrt(cs.degree[v]);
        std::vector<int> ord(cs.n);
        std::iota(ord.begin(), ord.end(), 0);
        std::stable_sort(ord.begin(), ord.end(), [&](int a, int b) { return x[a] < x[b]; });
        auto pre = detail::sweep_values(cs, ord);
        std::vector<int> rev(ord.rbegin(), ord.rend());
        auto suf = detail::sweep_values(cs, rev);
        int idx = static_cast<int>(orders.size());
        orders.push_back(ord);
        orders.push_back(rev);
        for (std::size_t i = 0; i < pre.size(); ++i) cands.push_back({pre[i], idx, 0, static_cast<int>(i + 1)});
        for (std::size_t i = 0; i < suf.size(); ++i) cands.push_back({suf[i], idx + 1, 0, static_cast<int>(i + 1)});
    }
    auto comp = detail::edge_components(cs);
    int ncomp = *std::max_element(comp.begin(), comp.end()) + 1;
    if (ncomp > 1)
        for (int c = 0; c < ncomp; ++c) cands.push_back({0.0, -1, 0, c});
    for (int v = 0; v < cs.n; ++v) cands.push_back({cs.expansion({v}), -2, 0, v});
    std::stable_sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.phi < b.phi; });

    auto members = [&](const Cand& c) {
        VertexSet s;
        if (c.vec == -2) {
            s.push_back(c.len);
        } else if (c.vec == -1) {
            for (int v = 0; v < cs.n; ++v)
                if (comp[v] == c.len) s.push_back(v);
        } else {
            s.assign(orders[c.vec].begin(), orders[c.vec].begin() + c.len);
            std::sort(s.begin(), s.end());
        }
        return s;
    };

    PhiKResult res;
    res.upper_bound = true;
    std::vector<char> used(cs.n, 0);
    double worst = 0;
    for (const auto& c : cands) {
        if (static_cast<int>(res.witness.size()) == k) break;
        auto s = members(c);
        bool ok = true;
        for (int v : s)
            if (used[v]) {
                ok = false;
                break;
            }
        if (!ok) continue;
        for (int v : s) used[v] = 1;
        res.witness.push_back(s);
        worst = std::max(worst, c.phi);
    }
    // singletons are always available, so k sets were found
    res.value = worst;
    double mu = es.values(k - 1);
    res.hard_ratio = mu > 0 ? worst / std::sqrt(mu) : std::numeric_limits<double>::infinity();
    return res;
}

enum class PhiMode { Exact, Heuristic };

inline PhiKResult phi_k(const CutStructure& cs, int k, PhiMode mode, int exact_limit = 12) {
    if (mode == PhiMode::Exact) return phi_k_exact(cs, k, exact_limit);
    return phi_k_heuristic(cs, k, laplacian_eigensystem(cs));
}

struct CheegerRow {
    int k;
    double mu_k;
    double phi_k;
    bool exact;
    double factor;
    double bound;
    bool ok;
    double hard_ratio;
};

struct CheegerReport {
    std::vector<CheegerRow> rows;
    bool tilde_checked = false; // graphs only, exact only
    double phi_tilde2 = std::numeric_limits<double>::quiet_NaN();
    double sqrt_2mu2 = std::numeric_limits<double>::quiet_NaN();
    bool tilde_ok = true;

    bool all_ok() const {
        for (auto& r : rows)
            if (!r.ok) return false;
        return tilde_ok;
    }
};

// Checks μ_k ≤ factor·φ_k for k = 2..k_max, exactly when the instance is small
// enough and against sweep upper bounds otherwise (where the inequality is
// implied and serves as a consistency check). For graphs also checks
// φ̃_2 ≤ sqrt(2 μ_2) when φ̃_2 can be computed exactly.
inline CheegerReport cheeger_check(const CutStructure& cs, int k_max, int exact_limit = 12,
                                   bool require_exact = false, double tol = 1e-9) {
    if (k_max < 2 || k_max > cs.n) fail(ErrorKind::InvalidK, "k_max must lie in [2, n]");
    auto es = laplacian_eigensystem(cs);
    CheegerReport rep;
    double factor = cs.cheeger_factor();
    for (int k = 2; k <= k_max; ++k) {
        bool exact = cs.n <= exact_vertex_limit(k, exact_limit);
        if (!exact && require_exact)
            fail(ErrorKind::TooLargeForExact, "exact phi_k requested beyond the vertex limit");
        PhiKResult p = exact ? phi_k_exact(cs, k, exact_limit) : phi_k_heuristic(cs, k, es);
        double mu = es.values(k - 1);
        CheegerRow row{k, mu, p.value, exact, factor, factor * p.value, mu <= factor * p.value + tol, p.hard_ratio};
        if (exact) {
            double worst = 0;
            for (auto& s : p.witness) worst = std::max(worst, cs.expansion(s));
            row.hard_ratio = mu > 0 ? worst / std::sqrt(mu) : std::numeric_limits<double>::infinity();
        }
        rep.rows.push_back(row);
    }
    if (cs.rank == 2 && cs.corank == 2 && cs.n <= exact_limit) {
        rep.tilde_checked = true;
        rep.phi_tilde2 = phi_tilde2_exact(cs, exact_limit).first;
        rep.sqrt_2mu2 = std::sqrt(2.0 * std::max(0.0, es.values(1)));
        rep.tilde_ok = rep.phi_tilde2 <= rep.sqrt_2mu2 + tol;
    }
    return rep;
}

struct PartitionBound {
    double bound;
    double mu_k;
    bool ok;
    std::vector<int> order; // block indices sorted by ascending φ
};

// factor · Σ_{i≥k} vol(B_i)φ(B_i) / Σ_{i≥k} vol(B_i) with blocks sorted by φ.
inline PartitionBound partition_spectral_bound(const CutStructure& cs, const std::vector<double>& mu,
                                               const std::vector<VertexSet>& blocks, int k, double tol = 1e-9) {
    int m = static_cast<int>(blocks.size());
    if (k < 1 || k > m) fail(ErrorKind::InvalidK, "k must lie in [1, number of blocks]");
    std::vector<char> used(cs.n, 0);
    std::vector<double> vol(m), phi(m);
    for (int i = 0; i < m; ++i) {
        if (blocks[i].empty()) fail(ErrorKind::EmptySet, "empty block");
        membership(cs.n, blocks[i]);
        for (int v : blocks[i]) {
            if (used[v]) fail(ErrorKind::OverlappingBlocks, "vertex " + std::to_string(v) + " in two blocks");
            used[v] = 1;
        }
        vol[i] = cs.volume(blocks[i]);
        phi[i] = cs.boundary(blocks[i]) / vol[i];
    }
    PartitionBound pb;
    pb.order.resize(m);
    std::iota(pb.order.begin(), pb.order.end(), 0);
    std::stable_sort(pb.order.begin(), pb.order.end(), [&](int a, int b) { return phi[a] < phi[b]; });
    double num = 0, den = 0;
    for (int i = k - 1; i < m; ++i) {
        num += vol[pb.order[i]] * phi[pb.order[i]];
        den += vol[pb.order[i]];
    }
    pb.bound = cs.cheeger_factor() * num / den;
    pb.mu_k = mu.at(static_cast<std::size_t>(k - 1));
    pb.ok = pb.mu_k <= pb.bound + tol;
    return pb;
}

} // namespace chaosgraph
