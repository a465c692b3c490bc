#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/rng.hpp"

namespace chaosgraph {

constexpr std::size_t kMaxGeneratedEdges = 50'000'000;
constexpr long long kMaxGeneratedVertices = 1LL << 24;

inline double binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    double r = 1;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

inline Graph complete(int n) {
    if (n < 2) fail(ErrorKind::InvalidInput, "complete graph needs n >= 2");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) e.emplace_back(u, v);
    return Graph::build(n, std::move(e));
}

// K_{n,n}: left side 0..n-1, right side n..2n-1.
inline Graph complete_bipartite(int n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "complete bipartite graph needs n >= 1");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u)
        for (int v = 0; v < n; ++v) e.emplace_back(u, n + v);
    return Graph::build(2 * n, std::move(e));
}

inline Graph cycle(int n) {
    if (n < 3) fail(ErrorKind::InvalidInput, "cycle needs n >= 3");
    std::vector<Edge> e;
    for (int u = 0; u < n; ++u) e.emplace_back(u, (u + 1) % n);
    return Graph::build(n, std::move(e));
}

// g □ h with vertex (u, w) labeled u·|V_h| + w.
inline Graph cartesian_product(const Graph& g, const Graph& h) {
    long long nv = static_cast<long long>(g.n()) * h.n();
    double ne = static_cast<double>(g.m()) * h.n() + static_cast<double>(h.m()) * g.n();
    if (nv > kMaxGeneratedVertices || ne > kMaxGeneratedEdges)
        fail(ErrorKind::SizeLimitExceeded, "product too large");
    const int nh = h.n();
    std::vector<Edge> e;
    e.reserve(static_cast<std::size_t>(ne));
    for (auto& [a, b] : g.edges())
        for (int w = 0; w < nh; ++w) e.emplace_back(a * nh + w, b * nh + w);
    for (int u = 0; u < g.n(); ++u)
        for (auto& [a, b] : h.edges()) e.emplace_back(u * nh + a, u * nh + b);
    return Graph::build(static_cast<int>(nv), std::move(e));
}

inline Graph product_power(const Graph& g, int m) {
    if (m < 1) fail(ErrorKind::InvalidM, "power must be at least 1");
    Graph r = g;
    for (int i = 1; i < m; ++i) r = cartesian_product(r, g);
    return r;
}

// Q_n = K_2^{□n}; vertex label bits read with the first coordinate most significant.
inline Graph hypercube(int n) {
    if (n < 1) fail(ErrorKind::InvalidInput, "hypercube dimension must be >= 1");
    return product_power(complete(2), n);
}

// K_q^{□m}.
inline Graph rook(int q, int m) {
    if (q < 2 || m < 1) fail(ErrorKind::InvalidInput, "rook graph needs q >= 2, m >= 1");
    return product_power(complete(q), m);
}

// Out-neighbours of (a, b) (0-based) under the literal rule: same first
// coordinate, or same second coordinate with the target's first coordinate
// (1-based) at most k.
inline std::vector<std::pair<int, int>> rook_variant_out_arcs(int n, int k, int a, int b) {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < n; ++j)
        if (j != b) out.emplace_back(a, j);
    for (int i = 0; i < n; ++i)
        if (i != a && i + 1 <= k) out.emplace_back(i, b);
    return out;
}

// Vertices (a, b) ↦ a·n + b. The literal arc relation is asymmetric for 0 < k < n;
// symmetrize = true keeps a vertical edge when either arc exists (one endpoint has
// first coordinate ≤ k), false keeps it only when both arcs exist.
inline Graph rook_variant(int n, int k, bool symmetrize = true) {
    if (n < 2) fail(ErrorKind::InvalidInput, "rook variant needs n >= 2");
    if (k < 0 || k > n) fail(ErrorKind::InvalidK, "k_n must lie in [0, n]");
    std::vector<Edge> e;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int j = b + 1; j < n; ++j) e.emplace_back(a * n + b, a * n + j);
    for (int b = 0; b < n; ++b)
        for (int a = 0; a < n; ++a)
            for (int i = a + 1; i < n; ++i) {
                bool fwd = i < k, back = a < k;
                if (symmetrize ? (fwd || back) : (fwd && back)) e.emplace_back(a * n + b, i * n + b);
            }
    return Graph::build(n * n, std::move(e));
}

// Vertex (x, y) of [n]² is labeled x·n + y.
struct GridLayout {
    int n = 0;
    double beta = 1;
    std::vector<VertexSet> sv; // sv[a] ⊆ column {a}×[n]
    std::vector<VertexSet> sh; // sh[b] ⊆ row [n]×{b}

    int side() const { return static_cast<int>(std::floor(beta * n + 1e-12)); }

    void validate() const {
        if (n < 2) fail(ErrorKind::InvalidInput, "grid side must be >= 2");
        if (!(beta > 0 && beta <= 1)) fail(ErrorKind::BetaOutOfRange, "beta must lie in (0, 1]");
        if (static_cast<int>(sv.size()) != n || static_cast<int>(sh.size()) != n)
            fail(ErrorKind::LayoutSizeMismatch, "layout needs one set per column and per row");
        int k = side();
        for (int a = 0; a < n; ++a) {
            if (static_cast<int>(std::set<int>(sv[a].begin(), sv[a].end()).size()) != k || static_cast<int>(sv[a].size()) != k)
                fail(ErrorKind::LayoutSizeMismatch, "vertical set " + std::to_string(a) + " must have floor(beta n) distinct vertices");
            for (int v : sv[a])
                if (v < 0 || v >= n * n || v / n != a) fail(ErrorKind::LayoutSizeMismatch, "vertical set leaves its column");
        }
        for (int b = 0; b < n; ++b) {
            if (static_cast<int>(std::set<int>(sh[b].begin(), sh[b].end()).size()) != k || static_cast<int>(sh[b].size()) != k)
                fail(ErrorKind::LayoutSizeMismatch, "horizontal set " + std::to_string(b) + " must have floor(beta n) distinct vertices");
            for (int v : sh[b])
                if (v < 0 || v >= n * n || v % n != b) fail(ErrorKind::LayoutSizeMismatch, "horizontal set leaves its row");
        }
    }
};

// S_v(a) = {a}×[⌊βn⌋], S_h(b) = [⌊βn⌋]×{b}.
inline GridLayout contiguous_layout(int n, double beta) {
    GridLayout l;
    l.n = n;
    l.beta = beta;
    int k = l.side();
    l.sv.resize(n);
    l.sh.resize(n);
    for (int a = 0; a < n; ++a)
        for (int y = 0; y < k; ++y) l.sv[a].push_back(a * n + y);
    for (int b = 0; b < n; ++b)
        for (int x = 0; x < k; ++x) l.sh[b].push_back(x * n + b);
    return l;
}

inline std::vector<Edge> grid_edges(const GridLayout& l) {
    l.validate();
    std::vector<Edge> e;
    for (auto* sets : {&l.sv, &l.sh})
        for (const auto& s : *sets) {
            auto t = s;
            std::sort(t.begin(), t.end());
            for (std::size_t i = 0; i < t.size(); ++i)
                for (std::size_t j = i + 1; j < t.size(); ++j) e.emplace_back(t[i], t[j]);
        }
    // a vertical and a horizontal set share at most one vertex, so no pair repeats
    return e;
}

// The β-grid as a homogeneous sum (q ≡ 1) on all n² vertices; uncovered vertices
// simply carry no terms.
inline HomogeneousSum grid_sum(const GridLayout& l) {
    std::vector<Term> t;
    for (auto& [u, v] : grid_edges(l)) t.push_back({{u, v}, 1.0});
    return HomogeneousSum::build(2, l.n * l.n, std::move(t));
}

// The β-grid graph with uncovered (isolated) vertices dropped; labels() maps back to [n]².
inline Graph grid_family(const GridLayout& l) {
    return Graph::build(l.n * l.n, grid_edges(l), true);
}

// (K_m ⊔ K̄_{n-m}) □ (K_m ⊔ K̄_{n-m}) without its isolated vertices; labels() maps
// back to x·n + y.
inline Graph union_with_isolated(int n, int m) {
    if (n < 1 || m < 1 || m > n) fail(ErrorKind::InvalidM, "need 1 <= m <= n");
    if (m == 1) fail(ErrorKind::InvalidM, "m = 1 leaves no edges after dropping isolated vertices");
    std::vector<Edge> e;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (x < m)
                for (int x2 = x + 1; x2 < m; ++x2) e.emplace_back(x * n + y, x2 * n + y);
            if (y < m)
                for (int y2 = y + 1; y2 < m; ++y2) e.emplace_back(x * n + y, x * n + y2);
        }
    return Graph::build(n * n, std::move(e), true);
}

// Cells are (row, slot) pairs, 0-based: row in [0, d), slot in [0, b).
struct FractionalPartition {
    int d = 0;
    int b = 0;
    std::vector<std::vector<std::pair<int, int>>> blocks;

    // From 1-based cells.
    static FractionalPartition from_one_based(int d, int b, const std::vector<std::vector<std::pair<int, int>>>& blocks) {
        FractionalPartition fp{d, b, blocks};
        for (auto& s : fp.blocks)
            for (auto& c : s) {
                --c.first;
                --c.second;
            }
        return fp;
    }

    void validate() const {
        if (d < 3) fail(ErrorKind::BlockSizeError, "order d must be at least 3");
        if (b < 1 || b > d - 1) fail(ErrorKind::BlockSizeError, "block width must lie in [1, d-1]");
        if (static_cast<int>(blocks.size()) != d) fail(ErrorKind::BlockSizeError, "need exactly d blocks");
        std::set<std::pair<int, int>> seen;
        for (auto& s : blocks) {
            if (static_cast<int>(s.size()) != b) fail(ErrorKind::BlockSizeError, "every block must have b cells");
            std::set<int> rows;
            for (auto& c : s) {
                if (c.first < 0 || c.first >= d || c.second < 0 || c.second >= b)
                    fail(ErrorKind::BlockSizeError, "cell outside the d x b grid");
                if (!seen.insert(c).second) fail(ErrorKind::BlockSizeError, "cell used by two blocks");
                if (!rows.insert(c.first).second) fail(ErrorKind::RowCollision, "block holds two cells of one row");
            }
        }
        // connected: no proper nonempty row set R whose cells are a union of blocks
        for (std::uint32_t r = 1; r + 1 < (1u << d); ++r) {
            if (!(r & 1u)) continue; // R and its complement give the same split
            bool split = true;
            for (auto& s : blocks) {
                int inside = 0;
                for (auto& c : s) inside += (r >> c.first) & 1u;
                if (inside != 0 && inside != b) {
                    split = false;
                    break;
                }
            }
            if (split) fail(ErrorKind::DisconnectedPartition, "rows split into two groups each covered by whole blocks");
        }
    }
};

// d = 3, b = 2 partition whose blocks chain the rows in a cycle:
// {(0,1),(1,1)}, {(1,0),(2,0)}, {(2,1),(0,0)}.
inline FractionalPartition cyclic_partition_3x2() {
    return FractionalPartition::from_one_based(3, 2, {{{1, 2}, {2, 2}}, {{2, 1}, {3, 1}}, {{3, 2}, {1, 1}}});
}

// Non-diagonal b-tuples of [n] in lexicographic order.
inline std::vector<std::vector<int>> nondiagonal_tuples(int n, int b) {
    std::vector<std::vector<int>> out;
    std::vector<int> t(b, 0);
    for (;;) {
        std::set<int> s(t.begin(), t.end());
        if (static_cast<int>(s.size()) == b) out.push_back(t);
        int i = b - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
    return out;
}

// Support generated by a connected block partition: vertices are non-diagonal
// b-tuples of [n]; tuple (v_1..v_d) lies in E⁰ iff cells (l, s) in one block carry
// equal labels and cells in different blocks distinct ones. E_n is the
// symmetrization of E⁰, returned with q ≡ 1.
inline HomogeneousSum fractional_product(int n, const FractionalPartition& fp) {
    fp.validate();
    if (n <= fp.b) fail(ErrorKind::InvalidInput, "need n > b");
    if (n < fp.d) fail(ErrorKind::InvalidInput, "need n >= d distinct labels");
    auto verts = nondiagonal_tuples(n, fp.b);
    std::map<std::vector<int>, int> index;
    for (std::size_t i = 0; i < verts.size(); ++i) index[verts[i]] = static_cast<int>(i);
    // block of each cell
    std::vector<std::vector<int>> cell_block(fp.d, std::vector<int>(fp.b));
    for (int i = 0; i < fp.d; ++i)
        for (auto& c : fp.blocks[i]) cell_block[c.first][c.second] = i;

    std::set<std::vector<int>> keys;
    std::vector<int> label(fp.d);
    // injective labelings of the d blocks
    std::function<void(int, std::vector<char>&)> rec = [&](int i, std::vector<char>& used) {
        if (i == fp.d) {
            std::vector<int> tuple(fp.d);
            for (int l = 0; l < fp.d; ++l) {
                std::vector<int> v(fp.b);
                for (int s = 0; s < fp.b; ++s) v[s] = label[cell_block[l][s]];
                tuple[l] = index.at(v);
            }
            std::sort(tuple.begin(), tuple.end());
            if (std::adjacent_find(tuple.begin(), tuple.end()) == tuple.end()) keys.insert(tuple);
            return;
        }
        for (int x = 0; x < n; ++x) {
            if (used[x]) continue;
            used[x] = 1;
            label[i] = x;
            rec(i + 1, used);
            used[x] = 0;
        }
    };
    std::vector<char> used(n, 0);
    rec(0, used);
    std::vector<Term> terms;
    for (auto& k : keys) terms.push_back({k, 1.0});
    return HomogeneousSum::build(fp.d, static_cast<int>(verts.size()), std::move(terms));
}

// Vertices are ordered pairs (x, y), x ≠ y, indexed as in nondiagonal_tuples(n, 2).
// Hyperedges: for each 3-set of labels, one orientation of each of its three pairs.
inline HomogeneousSum triangle_hypergraph(int n) {
    if (n < 4) fail(ErrorKind::InvalidInput, "triangle hypergraph needs n > 3");
    auto id = [n](int x, int y) { return x * (n - 1) + (y < x ? y : y - 1); };
    std::vector<Term> terms;
    for (int x = 0; x < n; ++x)
        for (int y = x + 1; y < n; ++y)
            for (int z = y + 1; z < n; ++z)
                for (int o = 0; o < 8; ++o) {
                    int p1 = (o & 1) ? id(y, x) : id(x, y);
                    int p2 = (o & 2) ? id(z, y) : id(y, z);
                    int p3 = (o & 4) ? id(z, x) : id(x, z);
                    terms.push_back({{p1, p2, p3}, 1.0});
                }
    return HomogeneousSum::build(3, n * (n - 1), std::move(terms));
}

// d-subsets of every row and column of [n]², coefficient sqrt((d-1)/C(n-2, d-2)),
// so the induced adjacency is that of K_n □ K_n.
inline HomogeneousSum rooklike_hypergraph(int n, int d) {
    if (d < 2 || n <= d) fail(ErrorKind::InvalidInput, "rook-like hypergraph needs 2 <= d < n");
    double count = 2.0 * n * binomial(n, d);
    if (count > kMaxGeneratedEdges) fail(ErrorKind::SizeLimitExceeded, "too many hyperedges");
    double q = std::sqrt((d - 1) / binomial(n - 2, d - 2));
    std::vector<Term> terms;
    std::vector<int> c(d);
    for (int line = 0; line < n; ++line)
        for (int dir = 0; dir < 2; ++dir) {
            std::iota(c.begin(), c.end(), 0);
            for (;;) {
                std::vector<int> vs(d);
                for (int i = 0; i < d; ++i) vs[i] = dir == 0 ? line * n + c[i] : c[i] * n + line;
                terms.push_back({vs, q});
                int i = d - 1;
                while (i >= 0 && c[i] == n - d + i) --i;
                if (i < 0) break;
                ++c[i];
                for (int j = i + 1; j < d; ++j) c[j] = c[j - 1] + 1;
            }
        }
    return HomogeneousSum::build(d, n * n, std::move(terms));
}

// Trivially reducible sum: n disjoint blocks {id, ..., id+d-1} with q ≡ 1.
inline HomogeneousSum block_sum(int n, int d) {
    if (n < 1 || d < 2) fail(ErrorKind::InvalidInput, "block sum needs n >= 1, d >= 2");
    std::vector<Term> terms;
    for (int i = 0; i < n; ++i) {
        std::vector<int> vs(d);
        std::iota(vs.begin(), vs.end(), i * d);
        terms.push_back({vs, 1.0});
    }
    return HomogeneousSum::build(d, n * d, std::move(terms));
}

// Each non-diagonal d-tuple of [n] kept independently with probability n^(α-d),
// visited in lexicographic order with one uniform draw each. For d = 2 with
// symmetrize_d2 only pairs u < v are drawn and mirrored (Erdős–Rényi).
inline Support random_support(int n, double alpha, int d, std::uint64_t seed, bool symmetrize_d2 = true) {
    if (d < 2) fail(ErrorKind::WrongOrder, "order must be at least 2");
    if (!(alpha > 1 && alpha < d)) fail(ErrorKind::InvalidAlpha, "alpha must lie in (1, d)");
    if (std::pow(static_cast<double>(n), d) > 1e9) fail(ErrorKind::SizeLimitExceeded, "n^d too large");
    double p = std::pow(static_cast<double>(n), alpha - d);
    Rng rng(seed);
    Support s;
    s.d = d;
    s.n = n;
    if (d == 2 && symmetrize_d2) {
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.bernoulli(p)) {
                    s.tuples.push_back({u, v});
                    s.tuples.push_back({v, u});
                }
        s.normalize();
        return s;
    }
    std::vector<int> t(d, 0);
    for (;;) {
        std::vector<int> sorted = t;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && rng.bernoulli(p)) s.tuples.push_back(t);
        int i = d - 1;
        while (i >= 0 && ++t[i] == n) t[i--] = 0;
        if (i < 0) break;
    }
    return s;
}

// Graph on the vertices touched by a d = 2 support (isolated vertices dropped).
inline Graph graph_of_support(const Support& s) {
    if (s.d != 2) fail(ErrorKind::WrongOrder, "graph needs d = 2");
    std::vector<Edge> e;
    for (auto& t : s.tuples)
        if (t[0] < t[1]) e.emplace_back(t[0], t[1]);
    return Graph::build(s.n, std::move(e), true);
}

} // namespace chaosgraph
