#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "chaosgraph/error.hpp"
#include "chaosgraph/expansion.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/hypergraph.hpp"
#include "chaosgraph/spectrum.hpp"

namespace chaosgraph {

struct Partition {
    std::vector<VertexSet> blocks;
    std::vector<int> vprime; // optional

    // Throws OverlappingBlocks / EmptySet / LabelOutOfRange; returns whether the
    // blocks cover [0, n).
    bool validate(int n) const {
        std::vector<char> used(n, 0);
        std::size_t count = 0;
        for (auto& b : blocks) {
            if (b.empty()) fail(ErrorKind::EmptySet, "empty block");
            for (int v : b) {
                if (v < 0 || v >= n) fail(ErrorKind::LabelOutOfRange, "vertex " + std::to_string(v) + " out of range");
                if (used[v]) fail(ErrorKind::OverlappingBlocks, "vertex " + std::to_string(v) + " in two blocks");
                used[v] = 1;
                ++count;
            }
        }
        return count == static_cast<std::size_t>(n);
    }
};

// σ²(B) = d!·Σ over ordered tuples inside B^d of q² = d!²·Σ over keys inside B of q².
inline double sigma2(const HomogeneousSum& z, const VertexSet& b) {
    auto in = membership(z.n(), b);
    double s = 0;
    for (auto& t : z.terms()) {
        bool inside = true;
        for (int v : t.verts)
            if (!in[v]) {
                inside = false;
                break;
            }
        if (inside) s += t.q * t.q;
    }
    double f = factorial(z.d());
    return f * f * s;
}

struct BlockRow {
    int id;
    double sigma2;
    double vol;
    double phi;
};

struct ReducibilityReport {
    int m = 0;
    double variance = 0;
    double captured_fraction = 0;
    double max_box_fraction = 0;
    bool covers = false;
    std::vector<BlockRow> per_block;
};

// Definition-style evaluation of a box system: per-block variance shares and the
// volume/expansion of each block in the hypergraph with weights q².
inline ReducibilityReport evaluate_partition(const HomogeneousSum& z, const Partition& p) {
    ReducibilityReport r;
    r.covers = p.validate(z.n());
    r.m = static_cast<int>(p.blocks.size());
    r.variance = variance(z);
    std::vector<int> block_of(z.n(), -1);
    for (int i = 0; i < r.m; ++i)
        for (int v : p.blocks[i]) block_of[v] = i;
    std::vector<double> inside(r.m, 0.0), vol(r.m, 0.0), bnd(r.m, 0.0);
    for (auto& t : z.terms()) {
        double w = t.q * t.q;
        int b0 = block_of[t.verts[0]];
        bool same = b0 >= 0;
        for (int v : t.verts) {
            if (block_of[v] != b0) same = false;
            if (block_of[v] >= 0) vol[block_of[v]] += w;
        }
        if (same) {
            inside[b0] += w;
            continue;
        }
        // crossing term: boundary of every block it meets
        std::vector<int> met;
        for (int v : t.verts)
            if (block_of[v] >= 0) met.push_back(block_of[v]);
        std::sort(met.begin(), met.end());
        met.erase(std::unique(met.begin(), met.end()), met.end());
        for (int b : met) bnd[b] += w;
    }
    double f = factorial(z.d());
    for (int i = 0; i < r.m; ++i) {
        double s2 = f * f * inside[i];
        r.captured_fraction += s2 / r.variance;
        r.max_box_fraction = std::max(r.max_box_fraction, s2 / r.variance);
        r.per_block.push_back({i, s2, vol[i], vol[i] > 0 ? bnd[i] / vol[i] : 0.0});
    }
    return r;
}

// ‖Z̃ - T̃‖² for the box-restricted sum T, i.e. 1 - captured fraction.
inline double restricted_sum_gap(const HomogeneousSum& z, const Partition& p) {
    if (p.blocks.empty()) return 1.0;
    return 1.0 - evaluate_partition(z, p).captured_fraction;
}

// Boxes of Q_n fixing the first h coordinates (the top h label bits).
inline Partition hypercube_boxes(int n, int h) {
    if (h < 0 || h > n) fail(ErrorKind::InvalidK, "need 0 <= h <= n");
    Partition p;
    p.blocks.resize(std::size_t{1} << h);
    for (int v = 0; v < (1 << n); ++v) p.blocks[v >> (n - h)].push_back(v);
    return p;
}

// Row boxes {(i, l) : l ∈ [n]} of [n]² under labeling i·n + l.
inline Partition row_boxes(int n) {
    Partition p;
    p.blocks.resize(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) p.blocks[i].push_back(i * n + l);
    return p;
}

inline Partition column_boxes(int n) {
    Partition p;
    p.blocks.resize(n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i) p.blocks[l].push_back(i * n + l);
    return p;
}

// k×k grid of contiguous squares of [n]² (last row/column of squares absorbs the remainder).
inline Partition square_boxes(int n, int k) {
    if (k < 1 || k > n) fail(ErrorKind::InvalidK, "need 1 <= k <= n");
    Partition p;
    p.blocks.resize(static_cast<std::size_t>(k) * k);
    int w = n / k;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            int bx = std::min(x / w, k - 1), by = std::min(y / w, k - 1);
            p.blocks[bx * k + by].push_back(x * n + y);
        }
    return p;
}

// Connected components as blocks.
inline Partition component_boxes(const Graph& g) {
    auto c = g.components();
    Partition p;
    p.blocks.resize(*std::max_element(c.begin(), c.end()) + 1);
    for (int v = 0; v < g.n(); ++v) p.blocks[c[v]].push_back(v);
    return p;
}

struct TrendRow {
    std::string member;
    double size;
    ReducibilityReport report;
};

struct TrendVerdict {
    std::vector<TrendRow> rows;
    bool captured_monotone = false;
    bool max_box_monotone = false;
    bool thresholds_met = false;
    bool reducible_evidence = false;
};

struct TrendThresholds {
    double captured_min = 0.95;
    double max_box_max = 0.05;
    int min_members = 3;
};

// Family-level reading of box systems ordered by size: captured should rise to 1
// and the largest box share fall to 0.
inline TrendVerdict family_trend(std::vector<TrendRow> rows, const TrendThresholds& th = {}) {
    TrendVerdict v;
    std::stable_sort(rows.begin(), rows.end(), [](const TrendRow& a, const TrendRow& b) { return a.size < b.size; });
    v.rows = std::move(rows);
    if (v.rows.empty()) return v;
    v.captured_monotone = v.max_box_monotone = true;
    for (std::size_t i = 1; i < v.rows.size(); ++i) {
        if (v.rows[i].report.captured_fraction < v.rows[i - 1].report.captured_fraction) v.captured_monotone = false;
        if (v.rows[i].report.max_box_fraction > v.rows[i - 1].report.max_box_fraction) v.max_box_monotone = false;
    }
    const auto& last = v.rows.back().report;
    v.thresholds_met = last.captured_fraction >= th.captured_min && last.max_box_fraction <= th.max_box_max;
    v.reducible_evidence = static_cast<int>(v.rows.size()) >= th.min_members && v.captured_monotone &&
                           v.max_box_monotone && v.thresholds_met;
    return v;
}

struct CertificateRow {
    std::string member;
    int n_vertices;
    double mu_k;
};

struct SpectralCertificate {
    int k = 2;
    double threshold = 1e-3;
    std::vector<CertificateRow> rows;
    double proxy = 0; // min over members of μ_k
    bool granted = false;
    std::string label = "finite-family evidence, not a limit proof";
};

inline SpectralCertificate spectral_certificate(const std::vector<std::pair<std::string, SpectralReport>>& family,
                                                int k, double threshold = 1e-3) {
    if (family.empty()) fail(ErrorKind::FamilyTooSmall, "family is empty");
    SpectralCertificate c;
    c.k = k;
    c.threshold = threshold;
    c.proxy = std::numeric_limits<double>::infinity();
    for (auto& [name, rep] : family) {
        if (k < 1 || k > static_cast<int>(rep.eigenvalues.size())) fail(ErrorKind::InvalidK, "k exceeds member size");
        double mu = rep.mu(k);
        c.rows.push_back({name, static_cast<int>(rep.eigenvalues.size()), mu});
        c.proxy = std::min(c.proxy, mu);
    }
    c.granted = c.proxy >= threshold;
    return c;
}

inline SpectralCertificate spectral_certificate(const std::vector<std::pair<std::string, Graph>>& family, int k,
                                                double threshold = 1e-3) {
    std::vector<std::pair<std::string, SpectralReport>> reps;
    for (auto& [name, g] : family) reps.emplace_back(name, normalized_laplacian_spectrum(g));
    return spectral_certificate(reps, k, threshold);
}

inline SpectralCertificate spectral_certificate(const std::vector<std::pair<std::string, WeightedHypergraph>>& family,
                                                int k, double threshold = 1e-3) {
    std::vector<std::pair<std::string, SpectralReport>> reps;
    for (auto& [name, h] : family) reps.emplace_back(name, hyper_laplacian_spectrum(h));
    return spectral_certificate(reps, k, threshold);
}

struct PartialReductionReport {
    double volume_fraction = 0;   // vol(V')/vol(V)
    double boundary_fraction = 0; // E(V', V̄')/|𝓔|
    double deficit = 0;           // (E(V',V') - Σ E(B_i,B_i))/|𝓔|
    double max_block_fraction = 0; // max E(B_i,B_i)/|𝓔|
    double inside_fraction = 0;   // E(V',V')/|𝓔|
};

// Box system on a vertex subset V′ of a graph.
inline PartialReductionReport partial_reduction_eval(const Graph& g, const VertexSet& vprime, const Partition& p) {
    auto in_vp = membership(g.n(), vprime);
    p.validate(g.n());
    std::vector<int> block_of(g.n(), -1);
    for (std::size_t i = 0; i < p.blocks.size(); ++i)
        for (int v : p.blocks[i]) {
            if (!in_vp[v]) fail(ErrorKind::BlocksNotInVprime, "block vertex " + std::to_string(v) + " outside V'");
            block_of[v] = static_cast<int>(i);
        }
    double total = static_cast<double>(g.m());
    double vol_all = 2.0 * total, vol_vp = 0;
    for (int v = 0; v < g.n(); ++v)
        if (in_vp[v]) vol_vp += g.degree(v);
    std::vector<double> inside(p.blocks.size(), 0.0);
    double vp_inside = 0, vp_boundary = 0;
    for (auto& [u, v] : g.edges()) {
        if (in_vp[u] && in_vp[v]) {
            vp_inside += 1;
            if (block_of[u] >= 0 && block_of[u] == block_of[v]) inside[block_of[u]] += 1;
        } else if (in_vp[u] != in_vp[v]) {
            vp_boundary += 1;
        }
    }
    PartialReductionReport r;
    r.volume_fraction = vol_vp / vol_all;
    r.boundary_fraction = vp_boundary / total;
    r.inside_fraction = vp_inside / total;
    double sum = 0;
    for (double x : inside) {
        sum += x;
        r.max_block_fraction = std::max(r.max_block_fraction, x / total);
    }
    r.deficit = (vp_inside - sum) / total;
    return r;
}

struct GridCandidateRow {
    std::string name;
    double captured;  // Σσ²(B_i)/n³
    double max_box;   // max σ²(B_i)/n³
    bool precondition;
    bool ok;
    double margin;    // max_box - required, when the precondition holds
};

struct GridBoundReport {
    bool in_scope = false;
    double beta = 0;
    int n = 0;
    double capture_threshold = 0; // 4β² - η
    double box_threshold = 0;     // 2β²(2β-1) - slack
    std::vector<GridCandidateRow> rows;
    bool all_ok = true;
    int applicable = 0;
};

// For each candidate capturing at least (4β² - η)n³ of the variance, checks that
// some box holds at least (2β²(2β-1) - slack)n³. Out of scope for β ≤ 1/2.
inline GridBoundReport grid_bound_check(const HomogeneousSum& grid, int n, double beta,
                                        const std::vector<std::pair<std::string, Partition>>& candidates,
                                        double eta = 0.3, double slack = 0.15) {
    GridBoundReport r;
    r.beta = beta;
    r.n = n;
    r.capture_threshold = 4 * beta * beta - eta;
    r.box_threshold = 2 * beta * beta * (2 * beta - 1) - slack;
    if (!(beta > 0.5 && beta <= 1)) return r;
    r.in_scope = true;
    double n3 = static_cast<double>(n) * n * n;
    for (auto& [name, p] : candidates) {
        auto rep = evaluate_partition(grid, p);
        GridCandidateRow row;
        row.name = name;
        row.captured = rep.captured_fraction * rep.variance / n3;
        row.max_box = rep.max_box_fraction * rep.variance / n3;
        row.precondition = row.captured >= r.capture_threshold;
        row.ok = !row.precondition || row.max_box >= r.box_threshold;
        row.margin = row.max_box - r.box_threshold;
        if (row.precondition) ++r.applicable;
        r.all_ok = r.all_ok && row.ok;
        r.rows.push_back(row);
    }
    return r;
}

} // namespace chaosgraph
