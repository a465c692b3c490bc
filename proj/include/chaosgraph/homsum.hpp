#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/hypergraph.hpp"
#include "chaosgraph/spectrum.hpp"

namespace chaosgraph {

inline double factorial(int d) {
    double f = 1;
    for (int i = 2; i <= d; ++i) f *= i;
    return f;
}

struct Term {
    std::vector<int> verts; // sorted, distinct
    double q;
};

// Z = Σ over ordered non-diagonal tuples of q(v_1..v_d) X_{v_1}...X_{v_d}, with q
// symmetric. Each unordered support set is stored once under its sorted key.
class HomogeneousSum {
public:
    HomogeneousSum() = default;

    // Tuples may be given in any order; repeated listings of the same set must
    // carry the same coefficient (they describe one symmetric function).
    // Zero coefficients are dropped.
    static HomogeneousSum build(int d, int n, std::vector<Term> terms, double sym_tol = 1e-12) {
        if (d < 2) fail(ErrorKind::WrongOrder, "order must be at least 2");
        if (n <= 0) fail(ErrorKind::InvalidInput, "vertex count must be positive");
        for (auto& t : terms) {
            if (static_cast<int>(t.verts.size()) != d)
                fail(ErrorKind::InvalidInput, "tuple length differs from the order d");
            for (int v : t.verts)
                if (v < 0 || v >= n) fail(ErrorKind::LabelOutOfRange, "vertex " + std::to_string(v) + " out of range");
            std::sort(t.verts.begin(), t.verts.end());
            if (std::adjacent_find(t.verts.begin(), t.verts.end()) != t.verts.end())
                fail(ErrorKind::DiagonalSupport, "tuple repeats a vertex");
        }
        std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.verts < b.verts; });
        HomogeneousSum z;
        z.d_ = d;
        z.n_ = n;
        for (auto& t : terms) {
            if (!z.terms_.empty() && z.terms_.back().verts == t.verts) {
                double a = z.terms_.back().q;
                if (std::abs(a - t.q) > sym_tol * std::max(1.0, std::abs(a)))
                    fail(ErrorKind::NonSymmetricCoefficients, "orderings of one tuple carry different coefficients");
                continue;
            }
            z.terms_.push_back(std::move(t));
        }
        z.terms_.erase(std::remove_if(z.terms_.begin(), z.terms_.end(), [](const Term& t) { return t.q == 0.0; }),
                       z.terms_.end());
        if (z.terms_.empty()) fail(ErrorKind::EmptySet, "homogeneous sum has no nonzero terms");
        return z;
    }

    static HomogeneousSum from_graph(const Graph& g) {
        std::vector<Term> t;
        t.reserve(g.m());
        for (auto& [u, v] : g.edges()) t.push_back({{u, v}, 1.0});
        return build(2, g.n(), std::move(t));
    }

    int d() const { return d_; }
    int n() const { return n_; }
    const std::vector<Term>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }

    // ‖q‖² = Σ over ordered tuples of q² = d!·Σ over keys of q².
    double norm2() const {
        double s = 0;
        for (auto& t : terms_) s += t.q * t.q;
        return factorial(d_) * s;
    }

    // Number of ordered support tuples |E_n|.
    double ordered_size() const { return factorial(d_) * static_cast<double>(terms_.size()); }

private:
    int d_ = 0;
    int n_ = 0;
    std::vector<Term> terms_;
};

// E[Z²] = d!·‖q‖².
inline double variance(const HomogeneousSum& z) { return factorial(z.d()) * z.norm2(); }

// Hyperedges are the supports, weighted by q².
inline WeightedHypergraph homsum_to_hypergraph(const HomogeneousSum& z, bool drop_isolated = false) {
    std::vector<Hyperedge> e;
    e.reserve(z.size());
    for (auto& t : z.terms()) e.push_back({t.verts, t.q * t.q});
    return WeightedHypergraph::build(z.n(), std::move(e), drop_isolated);
}

// Ordered support: every ordering of every key.
struct Support {
    int d = 0;
    int n = 0;
    std::vector<std::vector<int>> tuples;

    std::size_t size() const { return tuples.size(); }

    void normalize() {
        std::sort(tuples.begin(), tuples.end());
        tuples.erase(std::unique(tuples.begin(), tuples.end()), tuples.end());
    }
};

inline Support support_of(const HomogeneousSum& z) {
    Support s;
    s.d = z.d();
    s.n = z.n();
    for (auto& t : z.terms()) {
        auto p = t.verts;
        do s.tuples.push_back(p);
        while (std::next_permutation(p.begin(), p.end()));
    }
    s.normalize();
    return s;
}

inline Support support_of(const Graph& g) {
    Support s;
    s.d = 2;
    s.n = g.n();
    for (auto& [u, v] : g.edges()) {
        s.tuples.push_back({u, v});
        s.tuples.push_back({v, u});
    }
    s.normalize();
    return s;
}

// Symmetric coefficient matrix A_q of an order-2 sum.
inline Eigen::MatrixXd coefficient_matrix(const HomogeneousSum& z) {
    if (z.d() != 2) fail(ErrorKind::WrongOrder, "coefficient matrix needs d = 2");
    check_dense_size(z.n());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(z.n(), z.n());
    for (auto& t : z.terms()) a(t.verts[0], t.verts[1]) = a(t.verts[1], t.verts[0]) = t.q;
    return a;
}

namespace detail {

struct Csr {
    std::vector<std::size_t> start;
    std::vector<int> col;
    std::vector<double> val;
};

inline Csr coefficient_csr(const HomogeneousSum& z) {
    Csr m;
    int n = z.n();
    std::vector<std::size_t> deg(n + 1, 0);
    for (auto& t : z.terms()) {
        ++deg[t.verts[0]];
        ++deg[t.verts[1]];
    }
    m.start.assign(n + 1, 0);
    for (int v = 0; v < n; ++v) m.start[v + 1] = m.start[v] + deg[v];
    m.col.resize(m.start[n]);
    m.val.resize(m.start[n]);
    std::vector<std::size_t> pos(m.start.begin(), m.start.end() - 1);
    for (auto& t : z.terms()) {
        int u = t.verts[0], v = t.verts[1];
        m.col[pos[u]] = v;
        m.val[pos[u]++] = t.q;
        m.col[pos[v]] = u;
        m.val[pos[v]++] = t.q;
    }
    return m;
}

} // namespace detail

struct TraceMoments {
    double tr2;
    double tr4;
};

// Tr(A²) and Tr(A⁴) = ‖A²‖_F² for the coefficient matrix, row by row.
inline TraceMoments coefficient_traces(const HomogeneousSum& z) {
    if (z.d() != 2) fail(ErrorKind::WrongOrder, "trace moments need d = 2");
    auto m = detail::coefficient_csr(z);
    int n = z.n();
    double tr2 = 0;
    for (double x : m.val) tr2 += x * x;
    std::vector<double> acc(n, 0.0);
    std::vector<int> touched;
    std::vector<char> mark(n, 0);
    double tr4 = 0;
    for (int u = 0; u < n; ++u) {
        touched.clear();
        for (std::size_t i = m.start[u]; i < m.start[u + 1]; ++i) {
            int w = m.col[i];
            double a = m.val[i];
            for (std::size_t j = m.start[w]; j < m.start[w + 1]; ++j) {
                int v = m.col[j];
                if (!mark[v]) {
                    mark[v] = 1;
                    touched.push_back(v);
                }
                acc[v] += a * m.val[j];
            }
        }
        for (int v : touched) {
            tr4 += acc[v] * acc[v];
            acc[v] = 0;
            mark[v] = 0;
        }
    }
    return {tr2, tr4};
}

// E[Z̃⁴] for Gaussian inputs: Z = XᵀAX has fourth cumulant 48 Tr(A⁴) and
// variance 2 Tr(A²), so E[Z̃⁴] = 3 + 12 Tr(A⁴)/Tr(A²)².
inline double fourth_moment_d2_exact(const HomogeneousSum& z) {
    if (z.d() != 2) fail(ErrorKind::WrongOrder, "exact fourth moment implemented for d = 2 only");
    auto t = coefficient_traces(z);
    return 3.0 + 12.0 * t.tr4 / (t.tr2 * t.tr2);
}

// E[Z̃⁴] for Gaussian inputs by expanding Z⁴ over quadruples of ordered support
// tuples and applying E[X^m] = (m-1)!! per vertex. Cost |E_n|⁴.
inline double fourth_moment_wick(const HomogeneousSum& z, double cap = 1e8) {
    auto sup = support_of(z);
    double count = static_cast<double>(sup.size());
    if (count * count * count * count > cap)
        fail(ErrorKind::CapExceeded, "Wick enumeration needs " + std::to_string(count * count * count * count) + " quadruples");

    // compact vertex ids
    std::vector<int> id(z.n(), -1);
    int nv = 0;
    for (auto& t : sup.tuples)
        for (int v : t)
            if (id[v] < 0) id[v] = nv++;
    std::vector<double> coef;
    std::vector<std::vector<int>> tup;
    {
        // coefficient per ordered tuple from its sorted key
        for (auto& t : sup.tuples) {
            auto key = t;
            std::sort(key.begin(), key.end());
            auto it = std::lower_bound(z.terms().begin(), z.terms().end(), key,
                                       [](const Term& a, const std::vector<int>& k) { return a.verts < k; });
            coef.push_back(it->q);
            std::vector<int> c;
            for (int v : t) c.push_back(id[v]);
            tup.push_back(c);
        }
    }
    auto gauss_moment = [](int m) {
        if (m % 2) return 0.0;
        double r = 1;
        for (int i = m - 1; i > 1; i -= 2) r *= i;
        return r;
    };
    std::vector<int> cnt(nv, 0);
    auto expect = [&]() {
        double r = 1;
        for (int c : cnt) {
            if (c % 2) return 0.0;
            r *= gauss_moment(c);
        }
        return r;
    };
    auto add = [&](std::size_t i, int s) {
        for (int v : tup[i]) cnt[v] += s;
    };
    std::size_t m = tup.size();
    double second = 0;
    for (std::size_t a = 0; a < m; ++a) {
        add(a, 1);
        for (std::size_t b = 0; b < m; ++b) {
            add(b, 1);
            second += coef[a] * coef[b] * expect();
            add(b, -1);
        }
        add(a, -1);
    }
    double fourth = 0;
    for (std::size_t a = 0; a < m; ++a) {
        add(a, 1);
        for (std::size_t b = 0; b < m; ++b) {
            add(b, 1);
            for (std::size_t c = 0; c < m; ++c) {
                add(c, 1);
                double pc = coef[a] * coef[b] * coef[c];
                for (std::size_t e = 0; e < m; ++e) {
                    add(e, 1);
                    fourth += pc * coef[e] * expect();
                    add(e, -1);
                }
                add(c, -1);
            }
            add(b, -1);
        }
        add(a, -1);
    }
    return fourth / (second * second);
}

// ‖q̃ ⋆_r q̃‖² for r = 1..d-1, with q̃ = q/sqrt(d!‖q‖²) and
// (q̃ ⋆_r q̃)(s, t) = Σ_{a ∈ V^r} q̃(a, s) q̃(a, t), summed over all (s, t) including
// diagonal ones. Accumulations are capped at `cap`.
inline std::vector<double> contraction_norms(const HomogeneousSum& z, double cap = 1e7) {
    const int d = z.d();
    const double scale = 1.0 / std::sqrt(variance(z));
    const double n = z.n();
    std::vector<double> out;
    for (int r = 1; r < d; ++r) {
        int rest = d - r;
        if (std::log2(n) * std::max(r, 2 * rest) > 63)
            fail(ErrorKind::MemoryLimit, "tuple keys exceed 64 bits");
        struct Entry {
            std::uint64_t prefix;
            std::uint64_t suffix;
            double q;
        };
        std::vector<Entry> ent;
        for (auto& t : z.terms()) {
            auto p = t.verts;
            do {
                std::uint64_t a = 0, s = 0;
                for (int i = 0; i < r; ++i) a = a * z.n() + p[i];
                for (int i = r; i < d; ++i) s = s * z.n() + p[i];
                ent.push_back({a, s, t.q * scale});
            } while (std::next_permutation(p.begin(), p.end()));
        }
        std::sort(ent.begin(), ent.end(), [](const Entry& x, const Entry& y) {
            return x.prefix != y.prefix ? x.prefix < y.prefix : x.suffix < y.suffix;
        });
        double work = 0;
        for (std::size_t i = 0; i < ent.size();) {
            std::size_t j = i;
            while (j < ent.size() && ent[j].prefix == ent[i].prefix) ++j;
            work += static_cast<double>(j - i) * static_cast<double>(j - i);
            i = j;
        }
        if (work > cap)
            fail(ErrorKind::MemoryLimit, "contraction needs " + std::to_string(work) + " accumulations, cap " + std::to_string(cap));
        std::uint64_t shift = 1;
        for (int i = 0; i < rest; ++i) shift *= static_cast<std::uint64_t>(z.n());
        std::vector<std::pair<std::uint64_t, double>> acc;
        acc.reserve(static_cast<std::size_t>(work));
        for (std::size_t i = 0; i < ent.size();) {
            std::size_t j = i;
            while (j < ent.size() && ent[j].prefix == ent[i].prefix) ++j;
            for (std::size_t x = i; x < j; ++x)
                for (std::size_t y = i; y < j; ++y)
                    acc.emplace_back(ent[x].suffix * shift + ent[y].suffix, ent[x].q * ent[y].q);
            i = j;
        }
        std::sort(acc.begin(), acc.end(), [](auto& a, auto& b) { return a.first < b.first; });
        double norm = 0;
        for (std::size_t i = 0; i < acc.size();) {
            double s = 0;
            std::size_t j = i;
            while (j < acc.size() && acc[j].first == acc[i].first) s += acc[j++].second;
            norm += s * s;
            i = j;
        }
        out.push_back(norm);
    }
    return out;
}

struct SpectralCriteria {
    double max_eig_ratio;    // max|γ| / sqrt(Σγ²)
    double max_degree_ratio; // max_u Σ_v |q(u,v)| / sqrt(Σ_{u,v} q²)
    std::vector<double> chi_square_weights; // γ_j with Z̃ = Σ γ_j (ξ_j² - 1), by descending |γ|
};

inline SpectralCriteria spectral_criteria_d2(const HomogeneousSum& z) {
    if (z.d() != 2) fail(ErrorKind::WrongOrder, "spectral criteria need d = 2");
    auto a = coefficient_matrix(z);
    auto lam = symmetric_eigenvalues(a);
    double s2 = 0, mx = 0;
    for (double x : lam) {
        s2 += x * x;
        mx = std::max(mx, std::abs(x));
    }
    SpectralCriteria c;
    c.max_eig_ratio = mx / std::sqrt(s2);
    double dmax = 0;
    for (Eigen::Index u = 0; u < a.rows(); ++u) dmax = std::max(dmax, a.row(u).cwiseAbs().sum());
    c.max_degree_ratio = dmax / std::sqrt(a.squaredNorm());
    double norm = std::sqrt(2.0 * s2);
    for (double x : lam) c.chi_square_weights.push_back(x / norm);
    std::stable_sort(c.chi_square_weights.begin(), c.chi_square_weights.end(),
                     [](double x, double y) { return std::abs(x) > std::abs(y); });
    return c;
}

} // namespace chaosgraph
