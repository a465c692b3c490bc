#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"

namespace chaosgraph {

constexpr int kMaxDenseVertices = 4096;

enum class MatrixKind { Adjacency, NormalizedLaplacian };

inline const char* matrix_kind_name(MatrixKind k) {
    return k == MatrixKind::Adjacency ? "adjacency" : "normalized_laplacian";
}

struct EigenGroup {
    double value;
    int multiplicity;
};

struct SpectralReport {
    MatrixKind kind = MatrixKind::NormalizedLaplacian;
    std::vector<double> eigenvalues; // ascending
    std::vector<EigenGroup> groups;
    double tolerance = 0;

    // Multiplicity of the group within tolerance of value, 0 if none.
    int multiplicity_of(double value) const {
        for (auto& g : groups)
            if (std::abs(g.value - value) <= tolerance) return g.multiplicity;
        return 0;
    }
    // k-th smallest eigenvalue, 1-based.
    double mu(int k) const { return eigenvalues.at(static_cast<std::size_t>(k - 1)); }
};

// Groups ascending eigenvalues whose consecutive gaps are within
// 1e-8 * max(1, spectral radius). Group value is the member mean.
inline SpectralReport make_report(MatrixKind kind, std::vector<double> eigs, double rel_tol = 1e-8) {
    std::sort(eigs.begin(), eigs.end());
    SpectralReport r;
    r.kind = kind;
    double radius = 0;
    for (double x : eigs) radius = std::max(radius, std::abs(x));
    r.tolerance = rel_tol * std::max(1.0, radius);
    std::size_t i = 0;
    while (i < eigs.size()) {
        std::size_t j = i + 1;
        double sum = eigs[i];
        while (j < eigs.size() && eigs[j] - eigs[j - 1] <= r.tolerance) sum += eigs[j++];
        r.groups.push_back({sum / static_cast<double>(j - i), static_cast<int>(j - i)});
        i = j;
    }
    r.eigenvalues = std::move(eigs);
    return r;
}

inline void check_dense_size(Eigen::Index n) {
    if (n > kMaxDenseVertices)
        fail(ErrorKind::SizeLimitExceeded, "dense eigensolver limited to " + std::to_string(kMaxDenseVertices) + " vertices, got " + std::to_string(n));
}

struct SymmetricEigen {
    Eigen::VectorXd values;  // ascending
    Eigen::MatrixXd vectors; // columns; empty when not requested
};

// Eigen's tridiagonal QR can stall on highly degenerate integer matrices (rook graph
// adjacency, q >= 20). On failure retry on H·M·H for a fixed Householder reflection H,
// which has the same spectrum and eigenvectors H·v.
inline SymmetricEigen symmetric_eigen(const Eigen::MatrixXd& m, bool vectors) {
    check_dense_size(m.rows());
    int opt = vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, opt);
    if (es.info() == Eigen::Success) return {es.eigenvalues(), vectors ? es.eigenvectors() : Eigen::MatrixXd()};
    const Eigen::Index n = m.rows();
    Eigen::VectorXd p = Eigen::VectorXd::LinSpaced(n, 1.0, 2.0);
    p /= p.norm();
    Eigen::MatrixXd h = Eigen::MatrixXd::Identity(n, n) - 2.0 * p * p.transpose();
    Eigen::MatrixXd hm = h * m * h;
    es.compute(0.5 * (hm + hm.transpose()), opt);
    if (es.info() != Eigen::Success) fail(ErrorKind::NumericalFailure, "eigensolver did not converge");
    return {es.eigenvalues(), vectors ? Eigen::MatrixXd(h * es.eigenvectors()) : Eigen::MatrixXd()};
}

inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m) {
    auto ev = symmetric_eigen(m, false).values;
    return std::vector<double>(ev.data(), ev.data() + ev.size());
}

inline Eigen::MatrixXd adjacency_matrix(const Graph& g) {
    check_dense_size(g.n());
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n(), g.n());
    for (auto& [u, v] : g.edges()) a(u, v) = a(v, u) = 1.0;
    return a;
}

// I - D^{-1/2} A D^{-1/2} with D the row sums of A. Rows must have positive sums.
inline Eigen::MatrixXd normalized_laplacian(const Eigen::MatrixXd& a) {
    Eigen::VectorXd d = a.rowwise().sum();
    for (Eigen::Index i = 0; i < d.size(); ++i)
        if (!(d(i) > 0)) fail(ErrorKind::IsolatedVertex, "zero degree in Laplacian");
    Eigen::VectorXd s = d.cwiseSqrt().cwiseInverse();
    Eigen::MatrixXd l = -(s.asDiagonal() * a * s.asDiagonal());
    l.diagonal().array() += 1.0;
    return l;
}

inline SpectralReport laplacian_spectrum_of(const Eigen::MatrixXd& a) {
    return make_report(MatrixKind::NormalizedLaplacian, symmetric_eigenvalues(normalized_laplacian(a)));
}

inline SpectralReport normalized_laplacian_spectrum(const Graph& g) {
    return laplacian_spectrum_of(adjacency_matrix(g));
}

inline SpectralReport adjacency_spectrum(const Graph& g) {
    return make_report(MatrixKind::Adjacency, symmetric_eigenvalues(adjacency_matrix(g)));
}

} // namespace chaosgraph
