#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/rng.hpp"

namespace chaosgraph {

inline VertexSet mask_set(std::uint32_t m) {
    VertexSet s;
    for (int v = 0; m; ++v, m >>= 1)
        if (m & 1u) s.push_back(v);
    return s;
}

// |J ∩ (A_1 × ... × A_d)|.
inline std::size_t rectangle_count(const Support& j, const std::vector<VertexSet>& a) {
    if (static_cast<int>(a.size()) != j.d) fail(ErrorKind::InvalidInput, "need one set per coordinate");
    std::vector<std::vector<char>> in;
    for (auto& s : a) in.push_back(membership(j.n, s));
    std::size_t c = 0;
    for (auto& t : j.tuples) {
        bool ok = true;
        for (int i = 0; i < j.d && ok; ++i) ok = in[i][t[i]];
        c += ok;
    }
    return c;
}

struct RectResult {
    double value = 0;
    std::size_t count = 0;
    std::vector<VertexSet> witness;
    bool exact = false;
};

inline double rect_ratio(std::size_t count, std::size_t max_size, double alpha) {
    return static_cast<double>(count) / std::pow(static_cast<double>(max_size), alpha);
}

inline int exact_rect_limit(int d) { return d == 2 ? 10 : d == 3 ? 7 : 0; }

// sup over nonempty A_1..A_d of |J ∩ ΠA_i| / max|A_i|^α by full enumeration with
// bitmask counting. Ties keep the lexicographically first witness.
inline RectResult rect_ratio_sup_exact(const Support& j, double alpha) {
    if (j.d != 2 && j.d != 3) fail(ErrorKind::TooLargeForExact, "exact search supports d = 2 or 3");
    if (j.n > exact_rect_limit(j.d))
        fail(ErrorKind::TooLargeForExact, "exact search limited to " + std::to_string(exact_rect_limit(j.d)) + " vertices");
    const int n = j.n;
    const std::uint32_t full = (1u << n) - 1;
    RectResult best;
    best.exact = true;
    best.value = -1;
    std::vector<std::uint32_t> masks(3, 0);
    auto consider = [&](std::size_t count, std::uint32_t m1, std::uint32_t m2, std::uint32_t m3) {
        int mx = std::max(std::popcount(m1), std::popcount(m2));
        if (j.d == 3) mx = std::max(mx, std::popcount(m3));
        double r = rect_ratio(count, mx, alpha);
        if (r > best.value) {
            best.value = r;
            best.count = count;
            masks = {m1, m2, m3};
        }
    };
    if (j.d == 2) {
        std::vector<std::uint32_t> row(n, 0);
        for (auto& t : j.tuples) row[t[0]] |= 1u << t[1];
        for (std::uint32_t a1 = 1; a1 <= full; ++a1)
            for (std::uint32_t a2 = 1; a2 <= full; ++a2) {
                std::size_t c = 0;
                for (std::uint32_t r = a1; r; r &= r - 1) c += std::popcount(row[std::countr_zero(r)] & a2);
                consider(c, a1, a2, 0);
            }
    } else {
        std::vector<std::uint32_t> cube(n * n, 0);
        for (auto& t : j.tuples) cube[t[0] * n + t[1]] |= 1u << t[2];
        std::vector<std::size_t> csum(full + 1);
        for (std::uint32_t a1 = 1; a1 <= full; ++a1) {
            for (std::uint32_t a3 = 1; a3 <= full; ++a3) {
                std::vector<std::size_t> r(n, 0);
                for (std::uint32_t x = a1; x; x &= x - 1) {
                    int u = std::countr_zero(x);
                    for (int v = 0; v < n; ++v) r[v] += std::popcount(cube[u * n + v] & a3);
                }
                csum[0] = 0; // counts for every a2 by low-bit recursion
                for (std::uint32_t a2 = 1; a2 <= full; ++a2) {
                    csum[a2] = csum[a2 & (a2 - 1)] + r[std::countr_zero(a2)];
                    consider(csum[a2], a1, a2, a3);
                }
            }
        }
    }
    for (int i = 0; i < j.d; ++i) best.witness.push_back(mask_set(masks[i]));
    return best;
}

namespace detail {

struct RectSearch {
    const Support& j;
    double alpha;
    std::vector<std::vector<std::vector<int>>> inc; // inc[i][v] = tuple ids with t_i = v

    RectSearch(const Support& s, double a) : j(s), alpha(a) {
        inc.assign(j.d, std::vector<std::vector<int>>(j.n));
        for (std::size_t t = 0; t < j.tuples.size(); ++t)
            for (int i = 0; i < j.d; ++i) inc[i][j.tuples[t][i]].push_back(static_cast<int>(t));
    }

    // Greedy best-improvement over single add/remove moves.
    RectResult climb(std::vector<std::vector<char>> in, int max_iters) const {
        const int d = j.d;
        std::vector<std::size_t> size(d, 0);
        for (int i = 0; i < d; ++i)
            for (char c : in[i]) size[i] += c;
        for (int i = 0; i < d; ++i)
            if (size[i] == 0) fail(ErrorKind::EmptySet, "start set is empty");
        auto full_count = [&]() {
            std::size_t c = 0;
            for (auto& t : j.tuples) {
                bool ok = true;
                for (int i = 0; i < d && ok; ++i) ok = in[i][t[i]];
                c += ok;
            }
            return c;
        };
        std::size_t count = full_count();
        auto maxsz = [&](int i, std::size_t si) {
            std::size_t m = si;
            for (int x = 0; x < d; ++x)
                if (x != i) m = std::max(m, size[x]);
            return m;
        };
        double cur = rect_ratio(count, maxsz(-1, 0), alpha);
        for (int it = 0; it < max_iters; ++it) {
            double best = cur;
            int bi = -1, bv = -1;
            std::size_t bcount = 0;
            for (int i = 0; i < d; ++i)
                for (int v = 0; v < j.n; ++v) {
                    bool adding = !in[i][v];
                    if (!adding && size[i] == 1) continue;
                    std::size_t delta = 0;
                    for (int t : inc[i][v]) {
                        bool ok = true;
                        const auto& tup = j.tuples[t];
                        for (int x = 0; x < d && ok; ++x)
                            if (x != i) ok = in[x][tup[x]];
                        delta += ok;
                    }
                    std::size_t c = adding ? count + delta : count - delta;
                    double r = rect_ratio(c, maxsz(i, adding ? size[i] + 1 : size[i] - 1), alpha);
                    if (r > best * (1 + 1e-12)) {
                        best = r;
                        bi = i;
                        bv = v;
                        bcount = c;
                    }
                }
            if (bi < 0) break;
            in[bi][bv] = !in[bi][bv];
            size[bi] += in[bi][bv] ? 1 : -1;
            count = bcount;
            cur = best;
        }
        RectResult r;
        r.value = cur;
        r.count = count;
        for (int i = 0; i < d; ++i) {
            VertexSet s;
            for (int v = 0; v < j.n; ++v)
                if (in[i][v]) s.push_back(v);
            r.witness.push_back(s);
        }
        return r;
    }
};

} // namespace detail

// Lower bound on the sup by multi-start local search. Starts: every seed set S
// (A_i = S for all i), the full vertex set, and `random_starts` starts grown from a
// random support tuple. Returns an achieved ratio with its witness.
inline RectResult rect_ratio_sup_heuristic(const Support& j, double alpha, const std::vector<VertexSet>& seeds = {},
                                           std::uint64_t seed = 0, int random_starts = 32, int max_iters = 500) {
    if (j.tuples.empty()) fail(ErrorKind::EmptySet, "support is empty");
    detail::RectSearch rs(j, alpha);
    std::vector<std::vector<std::vector<char>>> starts;
    auto uniform = [&](const VertexSet& s) {
        auto m = membership(j.n, s);
        return std::vector<std::vector<char>>(j.d, m);
    };
    for (auto& s : seeds)
        if (!s.empty()) starts.push_back(uniform(s));
    {
        VertexSet all(j.n);
        for (int v = 0; v < j.n; ++v) all[v] = v;
        starts.push_back(uniform(all));
    }
    Rng rng(seed);
    for (int s = 0; s < random_starts; ++s) {
        const auto& t = j.tuples[rng.below(j.tuples.size())];
        std::vector<std::vector<char>> in(j.d, std::vector<char>(j.n, 0));
        for (int i = 0; i < j.d; ++i) in[i][t[i]] = 1;
        starts.push_back(std::move(in));
    }
    RectResult best;
    best.value = -1;
    for (auto& st : starts) {
        auto r = rs.climb(st, max_iters);
        if (r.value > best.value) best = std::move(r);
    }
    return best;
}

struct LineFit {
    double slope = 0;
    double intercept = 0;
    std::vector<double> residuals;
};

inline LineFit ols(const std::vector<double>& x, const std::vector<double>& y) {
    std::size_t n = x.size();
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    LineFit f;
    f.slope = sxx > 0 ? sxy / sxx : 0;
    f.intercept = my - f.slope * mx;
    for (std::size_t i = 0; i < n; ++i) f.residuals.push_back(y[i] - f.intercept - f.slope * x[i]);
    return f;
}

struct CombDimMember {
    std::string name;
    Support support;
    std::vector<VertexSet> seeds; // structured starts for the heuristic search
};

struct CombDimRow {
    std::string name;
    int n_vertices;
    std::size_t support_size;
    double density_ratio; // |J|/|V|^α
    double rect_ratio;    // sup estimate
    bool rect_exact;
    std::vector<VertexSet> witness;
};

enum class CombDimVerdict { Consistent, Inconsistent, UndefinedDimensionEvidence };

inline const char* verdict_name(CombDimVerdict v) {
    switch (v) {
    case CombDimVerdict::Consistent: return "consistent";
    case CombDimVerdict::Inconsistent: return "inconsistent";
    case CombDimVerdict::UndefinedDimensionEvidence: return "undefined-dimension evidence";
    }
    return "?";
}

struct CombDimOptions {
    // growth exponents are log-log slopes against |V|
    double bounded_slope = 0.2;  // |slope| below this reads as bounded
    double excess_slope = 0.1;   // rect slope above density slope by this much reads as unbounded rectangles
    std::uint64_t seed = 0;
    int random_starts = 32;
    int max_iters = 500;
};

struct CombDimReport {
    double alpha_hat = 0;
    double alpha_intercept = 0;
    std::vector<double> fit_residuals;
    double alpha_used = 0;
    std::vector<CombDimRow> rows;
    double density_slope = 0;
    double rect_slope = 0;
    CombDimVerdict verdict = CombDimVerdict::Inconsistent;
};

inline CombDimReport combdim_family_report(const std::vector<CombDimMember>& family, std::optional<double> alpha = {},
                                           const CombDimOptions& opt = {}) {
    if (family.size() < 3) fail(ErrorKind::FamilyTooSmall, "need at least 3 family members");
    CombDimReport rep;
    std::vector<double> lx, ly;
    for (auto& m : family) {
        if (m.support.tuples.empty()) fail(ErrorKind::EmptySet, "member " + m.name + " has empty support");
        lx.push_back(std::log(static_cast<double>(m.support.n)));
        ly.push_back(std::log(static_cast<double>(m.support.size())));
    }
    auto fit = ols(lx, ly);
    rep.alpha_hat = fit.slope;
    rep.alpha_intercept = fit.intercept;
    rep.fit_residuals = fit.residuals;
    rep.alpha_used = alpha.value_or(fit.slope);
    std::vector<double> ld, lr;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& m = family[i];
        CombDimRow row;
        row.name = m.name;
        row.n_vertices = m.support.n;
        row.support_size = m.support.size();
        row.density_ratio = static_cast<double>(m.support.size()) / std::pow(static_cast<double>(m.support.n), rep.alpha_used);
        RectResult r = (m.support.d <= 3 && m.support.n <= exact_rect_limit(m.support.d))
                           ? rect_ratio_sup_exact(m.support, rep.alpha_used)
                           : rect_ratio_sup_heuristic(m.support, rep.alpha_used, m.seeds, member_seed(opt.seed, i),
                                                      opt.random_starts, opt.max_iters);
        row.rect_ratio = r.value;
        row.rect_exact = r.exact;
        row.witness = r.witness;
        ld.push_back(std::log(row.density_ratio));
        lr.push_back(std::log(row.rect_ratio));
        rep.rows.push_back(std::move(row));
    }
    rep.density_slope = ols(lx, ld).slope;
    rep.rect_slope = ols(lx, lr).slope;
    if (rep.rect_slope - rep.density_slope > opt.excess_slope)
        rep.verdict = CombDimVerdict::UndefinedDimensionEvidence;
    else if (std::abs(rep.density_slope) <= opt.bounded_slope && rep.rect_slope <= opt.bounded_slope)
        rep.verdict = CombDimVerdict::Consistent;
    else
        rep.verdict = CombDimVerdict::Inconsistent;
    return rep;
}

struct MaxDegreeResult {
    int max_degree;
    double threshold;
    bool ok;
};

// Δ against n^(α/2 - ε).
inline MaxDegreeResult max_degree_check(int max_degree, int n, double alpha, double eps) {
    if (!(alpha > 1 && alpha < 2)) fail(ErrorKind::InvalidAlpha, "alpha must lie in (1, 2)");
    if (!(eps > 0 && eps < std::min(alpha / 2, 1 - alpha / 2))) fail(ErrorKind::InvalidEpsilon, "epsilon out of range");
    double th = std::pow(static_cast<double>(n), alpha / 2 - eps);
    return {max_degree, th, max_degree <= th};
}

inline MaxDegreeResult max_degree_check(const Graph& g, double alpha, double eps) {
    return max_degree_check(g.max_degree(), g.n(), alpha, eps);
}

inline MaxDegreeResult max_degree_check(const Support& s, double alpha, double eps) {
    if (s.d != 2) fail(ErrorKind::WrongOrder, "degree check needs d = 2");
    std::vector<int> deg(s.n, 0);
    for (auto& t : s.tuples) ++deg[t[0]];
    int mx = deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
    return max_degree_check(mx, s.n, alpha, eps);
}

} // namespace chaosgraph
