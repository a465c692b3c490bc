#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "chaosgraph/error.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/parallel.hpp"
#include "chaosgraph/rng.hpp"

namespace chaosgraph {

enum class Distribution { Gaussian, Rademacher, Uniform, CenteredExponential };

inline Distribution parse_distribution(const std::string& s) {
    if (s == "gaussian") return Distribution::Gaussian;
    if (s == "rademacher") return Distribution::Rademacher;
    if (s == "uniform") return Distribution::Uniform;
    if (s == "centered_exponential") return Distribution::CenteredExponential;
    fail(ErrorKind::InvalidDistribution, "unknown distribution '" + s + "'");
}

inline const char* distribution_name(Distribution d) {
    switch (d) {
    case Distribution::Gaussian: return "gaussian";
    case Distribution::Rademacher: return "rademacher";
    case Distribution::Uniform: return "uniform";
    case Distribution::CenteredExponential: return "centered_exponential";
    }
    return "?";
}

// One standardized draw (mean 0, variance 1).
inline double draw(Rng& rng, Distribution d) {
    switch (d) {
    case Distribution::Gaussian: return rng.normal();
    case Distribution::Rademacher: return (rng.next() >> 63) ? 1.0 : -1.0;
    case Distribution::Uniform: return std::sqrt(3.0) * (2.0 * rng.uniform() - 1.0);
    case Distribution::CenteredExponential: return rng.exponential() - 1.0;
    }
    return 0;
}

constexpr std::size_t kSampleChunk = 256;

// Realizations of Z̃ = Z/sqrt(Var Z) with i.i.d. standardized inputs. Samples are
// produced in chunks of 256, chunk c drawing from Rng(chunk_seed(seed, c)) with
// inputs filled sample by sample in vertex order; output is independent of the
// number of threads.
inline std::vector<double> sample(const HomogeneousSum& z, Distribution dist, std::size_t n_samples, std::uint64_t seed) {
    const int d = z.d();
    const int n = z.n();
    const double scale = factorial(d) / std::sqrt(variance(z));
    std::vector<int> flat;
    std::vector<double> coef;
    flat.reserve(z.size() * d);
    for (auto& t : z.terms()) {
        flat.insert(flat.end(), t.verts.begin(), t.verts.end());
        coef.push_back(t.q * scale);
    }
    std::vector<double> out(n_samples);
    std::size_t chunks = (n_samples + kSampleChunk - 1) / kSampleChunk;
    const std::size_t B = kSampleChunk;
    parallel_for(chunks, [&](std::size_t c) {
        Rng rng(chunk_seed(seed, c));
        std::size_t nb = std::min(B, n_samples - c * B);
        std::vector<double> x(static_cast<std::size_t>(n) * B);
        for (std::size_t b = 0; b < nb; ++b)
            for (int v = 0; v < n; ++v) x[static_cast<std::size_t>(v) * B + b] = draw(rng, dist);
        std::vector<double> acc(B, 0.0), prod(B);
        for (std::size_t t = 0; t < coef.size(); ++t) {
            const int* vs = &flat[t * d];
            const double k = coef[t];
            const double* x0 = &x[static_cast<std::size_t>(vs[0]) * B];
            const double* x1 = &x[static_cast<std::size_t>(vs[1]) * B];
            if (d == 2) {
                for (std::size_t b = 0; b < B; ++b) acc[b] += k * x0[b] * x1[b];
                continue;
            }
            for (std::size_t b = 0; b < B; ++b) prod[b] = k * x0[b] * x1[b];
            for (int i = 2; i < d; ++i) {
                const double* xi = &x[static_cast<std::size_t>(vs[i]) * B];
                for (std::size_t b = 0; b < B; ++b) prod[b] *= xi[b];
            }
            for (std::size_t b = 0; b < B; ++b) acc[b] += prod[b];
        }
        std::copy(acc.begin(), acc.begin() + nb, out.begin() + c * B);
    });
    return out;
}

inline double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// sup_x |F_n(x) - Φ(x)|.
inline double ks_statistic(std::vector<double> xs) {
    if (xs.empty()) fail(ErrorKind::EmptySet, "no samples");
    std::sort(xs.begin(), xs.end());
    double n = static_cast<double>(xs.size()), d = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        double f = normal_cdf(xs[i]);
        d = std::max({d, (i + 1) / n - f, f - i / n});
    }
    return d;
}

struct MomentEstimate {
    int order;
    double value;
    double stderr_;
};

// Raw moments E[X^k], k = 1..up_to, with standard errors sd(X^k)/sqrt(n).
inline std::vector<MomentEstimate> empirical_moments(const std::vector<double>& xs, int up_to = 4) {
    if (xs.size() < 2) fail(ErrorKind::EmptySet, "need at least two samples");
    std::vector<MomentEstimate> out;
    double n = static_cast<double>(xs.size());
    for (int k = 1; k <= up_to; ++k) {
        double s = 0, s2 = 0;
        for (double x : xs) {
            double p = std::pow(x, k);
            s += p;
            s2 += p * p;
        }
        double mean = s / n;
        double var = std::max(0.0, (s2 - n * mean * mean) / (n - 1));
        out.push_back({k, mean, std::sqrt(var / n)});
    }
    return out;
}

struct CLTOptions {
    double contraction_threshold = 0.01;
    double ratio_threshold = 0.1;
    double contraction_cap = 1e7;
    std::size_t samples = 0; // 0 disables Monte Carlo
    std::uint64_t seed = 0;
    Distribution dist = Distribution::Gaussian;
};

struct CLTReport {
    int d = 0;
    double variance = 0;
    std::optional<double> fourth_moment_exact; // d = 2
    std::optional<MomentEstimate> fourth_moment_mc;
    std::optional<double> ks;
    std::vector<double> contraction_norms; // empty if over the cap
    std::string contraction_note;
    std::optional<double> max_eig_ratio;
    std::optional<double> max_degree_ratio;
    std::vector<double> chi_square_weights;
    bool contractions_small = false;
    bool eig_ratio_small = false;
    bool degree_ratio_small = false;
};

// Finite-n diagnostics: flags compare values with thresholds and say nothing
// about limits.
inline CLTReport clt_report(const HomogeneousSum& z, const CLTOptions& opt = {}) {
    CLTReport r;
    r.d = z.d();
    r.variance = variance(z);
    try {
        r.contraction_norms = contraction_norms(z, opt.contraction_cap);
        r.contractions_small = std::all_of(r.contraction_norms.begin(), r.contraction_norms.end(),
                                           [&](double x) { return x < opt.contraction_threshold; });
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::MemoryLimit) throw;
        r.contraction_note = e.what();
    }
    if (z.d() == 2) {
        r.fourth_moment_exact = fourth_moment_d2_exact(z);
        if (z.n() <= kMaxDenseVertices) {
            auto c = spectral_criteria_d2(z);
            r.max_eig_ratio = c.max_eig_ratio;
            r.max_degree_ratio = c.max_degree_ratio;
            r.chi_square_weights = std::move(c.chi_square_weights);
            r.eig_ratio_small = c.max_eig_ratio < opt.ratio_threshold;
            r.degree_ratio_small = c.max_degree_ratio < opt.ratio_threshold;
        }
        if (r.contraction_norms.empty()) {
            // ‖q̃⋆₁q̃‖² = Tr(A⁴)/(4 Tr(A²)²) without materializing the contraction
            auto t = coefficient_traces(z);
            r.contraction_norms = {t.tr4 / (4.0 * t.tr2 * t.tr2)};
            r.contractions_small = r.contraction_norms[0] < opt.contraction_threshold;
            r.contraction_note += " (trace formula used)";
        }
    }
    if (opt.samples > 0) {
        auto xs = sample(z, opt.dist, opt.samples, opt.seed);
        r.fourth_moment_mc = empirical_moments(xs, 4)[3];
        r.ks = ks_statistic(xs);
    }
    return r;
}

} // namespace chaosgraph
