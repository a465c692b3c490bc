#include <gtest/gtest.h>

#include <random>

#include "chaosgraph/constructions.hpp"
#include "chaosgraph/homsum.hpp"
#include "oracles.hpp"

using namespace chaosgraph;

namespace {

using Terms = std::vector<std::pair<std::vector<int>, double>>;

Terms terms_of(const HomogeneousSum& z) {
    Terms t;
    for (auto& x : z.terms()) t.push_back({x.verts, x.q});
    return t;
}

HomogeneousSum random_sum(int d, int n, int m, std::mt19937_64& gen, bool unit = false) {
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::normal_distribution<double> w;
    std::set<std::vector<int>> seen;
    std::vector<Term> t;
    while (static_cast<int>(t.size()) < m) {
        std::vector<int> v(d);
        for (int& x : v) x = pick(gen);
        std::sort(v.begin(), v.end());
        if (std::adjacent_find(v.begin(), v.end()) != v.end() || !seen.insert(v).second) continue;
        t.push_back({v, unit ? 1.0 : w(gen)});
    }
    return HomogeneousSum::build(d, n, t);
}

HomogeneousSum k3() { return HomogeneousSum::from_graph(complete(3)); }

} // namespace

TEST(HomSum, BuildMergesAndValidates) {
    auto z = HomogeneousSum::build(2, 3, {{{1, 0}, 2.0}, {{0, 1}, 2.0}, {{1, 2}, 0.0}});
    EXPECT_EQ(z.size(), 1u);
    EXPECT_EQ(z.terms()[0].verts, (std::vector<int>{0, 1}));
    auto kind = [](auto&& f) {
        try {
            f();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::InvalidInput;
    };
    EXPECT_EQ(kind([] { HomogeneousSum::build(2, 3, {{{0, 1}, 1.0}, {{1, 0}, 2.0}}); }), ErrorKind::NonSymmetricCoefficients);
    EXPECT_EQ(kind([] { HomogeneousSum::build(2, 3, {{{1, 1}, 1.0}}); }), ErrorKind::DiagonalSupport);
    EXPECT_EQ(kind([] { HomogeneousSum::build(1, 3, {{{1}, 1.0}}); }), ErrorKind::WrongOrder);
}

TEST(HomSum, Variance) {
    EXPECT_DOUBLE_EQ(variance(k3()), 12.0);
    EXPECT_DOUBLE_EQ(k3().ordered_size(), 6.0);
    EXPECT_DOUBLE_EQ(variance(triangle_hypergraph(6)), 5760.0);
    auto grid = grid_sum(contiguous_layout(10, 0.9));
    EXPECT_EQ(grid.size(), 720u);        // unordered pairs 2n·C(9,2)
    EXPECT_DOUBLE_EQ(variance(grid), 2.0 * 1440); // d!·|E_n| with 1440 ordered pairs
}

TEST(HomSum, HypergraphConversion) {
    auto h = homsum_to_hypergraph(k3());
    EXPECT_EQ(h.edges().size(), 3u);
    EXPECT_DOUBLE_EQ(variance(k3()), 4.0 * h.total_weight());
    auto flipped = HomogeneousSum::build(2, 3, {{{0, 1}, -1.0}, {{1, 2}, 1.0}, {{0, 2}, 1.0}});
    auto h2 = homsum_to_hypergraph(flipped);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(h2.edges()[i].w, h.edges()[i].w);
}

TEST(Contraction, K3) {
    auto c = contraction_norms(k3());
    ASSERT_EQ(c.size(), 1u);
    EXPECT_NEAR(c[0], 0.125, 1e-15);
}

TEST(Contraction, SingleTuple) {
    // Dense-kernel oracle values: 1/8 for d = 2 and 1/108 for both r of d = 3.
    auto c2 = contraction_norms(HomogeneousSum::build(2, 2, {{{0, 1}, 3.0}}));
    EXPECT_NEAR(c2[0], 1.0 / 8.0, 1e-15);
    auto c3 = contraction_norms(HomogeneousSum::build(3, 3, {{{0, 1, 2}, 1.0}}));
    ASSERT_EQ(c3.size(), 2u);
    auto k = oracle::dense_kernel(3, 3, {{{0, 1, 2}, 1.0}});
    EXPECT_NEAR(c3[0], oracle::contraction_norm(3, 3, k, 1), 1e-15);
    EXPECT_NEAR(c3[1], oracle::contraction_norm(3, 3, k, 2), 1e-15);
    EXPECT_NEAR(c3[0], 1.0 / 108.0, 1e-15);
    EXPECT_NEAR(c3[1], 1.0 / 108.0, 1e-15);
}

TEST(Contraction, AgreesWithDenseOracle) {
    std::mt19937_64 gen(12);
    for (int t = 0; t < 20; ++t) {
        int d = 2 + t % 2, n = d == 2 ? 9 : 6;
        auto z = random_sum(d, n, 3 + t % 7, gen);
        auto k = oracle::dense_kernel(d, n, terms_of(z));
        auto c = contraction_norms(z);
        for (int r = 1; r < d; ++r) EXPECT_NEAR(c[r - 1], oracle::contraction_norm(d, n, k, r), 1e-12);
    }
}

TEST(Contraction, BlockSumsDecayAsOneOverN) {
    for (int d : {2, 3}) {
        auto a = contraction_norms(block_sum(10, d)), b = contraction_norms(block_sum(100, d));
        for (std::size_t r = 0; r < a.size(); ++r) EXPECT_NEAR(a[r] / b[r], 10.0, 1e-9);
    }
    EXPECT_NEAR(contraction_norms(block_sum(10, 2))[0], 1.0 / 80.0, 1e-15);
}

TEST(Contraction, CapRaisesMemoryLimit) {
    try {
        contraction_norms(HomogeneousSum::from_graph(complete(30)), 100);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::MemoryLimit);
    }
}

TEST(FourthMoment, KnownValues) {
    EXPECT_NEAR(fourth_moment_d2_exact(k3()), 9.0, 1e-12);
    EXPECT_NEAR(fourth_moment_wick(k3()), 9.0, 1e-12);
    auto single = HomogeneousSum::build(2, 2, {{{0, 1}, 1.0}});
    EXPECT_NEAR(fourth_moment_wick(single), 9.0, 1e-12);
    EXPECT_NEAR(fourth_moment_d2_exact(single), 9.0, 1e-12);
    // two independent unit-variance products Y_i with E[Y_i⁴] = 9: (9 + 9 + 6)/4
    EXPECT_NEAR(fourth_moment_wick(block_sum(2, 2)), 6.0, 1e-12);
    EXPECT_NEAR(fourth_moment_d2_exact(HomogeneousSum::from_graph(complete(50))), 14.525, 0.5);
}

TEST(FourthMoment, ExactFormulaMatchesWickAndOracle) {
    std::mt19937_64 gen(31);
    for (int t = 0; t < 40; ++t) {
        auto z = random_sum(2, 6, 1 + t % 4, gen, t % 2 == 0);
        ASSERT_LE(support_of(z).size(), 8u);
        double exact = fourth_moment_d2_exact(z);
        EXPECT_NEAR(exact, fourth_moment_wick(z), 1e-10);
        EXPECT_NEAR(exact, oracle::gaussian_fourth_moment(oracle::all_orderings(terms_of(z))), 1e-10);
    }
}

TEST(FourthMoment, WickOrderThree) {
    auto z = HomogeneousSum::build(3, 4, {{{0, 1, 2}, 1.0}});
    EXPECT_NEAR(fourth_moment_wick(z), 27.0, 1e-12);
    auto two = HomogeneousSum::build(3, 4, {{{0, 1, 2}, 1.0}, {{1, 2, 3}, -0.5}});
    EXPECT_NEAR(fourth_moment_wick(two, 1e6), oracle::gaussian_fourth_moment(oracle::all_orderings(terms_of(two))), 1e-10);
    EXPECT_THROW(fourth_moment_d2_exact(z), Error);
    EXPECT_THROW(fourth_moment_wick(HomogeneousSum::from_graph(complete(10)), 1e6), Error);
}

TEST(FourthMoment, TracesMatchDense) {
    std::mt19937_64 gen(2);
    for (int t = 0; t < 10; ++t) {
        auto z = random_sum(2, 15, 30, gen);
        auto a = coefficient_matrix(z);
        auto tr = coefficient_traces(z);
        EXPECT_NEAR(tr.tr2, (a * a).trace(), 1e-10);
        Eigen::MatrixXd a2 = a * a;
        EXPECT_NEAR(tr.tr4, (a2 * a2).trace(), 1e-9);
    }
}

TEST(SpectralCriteria, CompleteAndRook) {
    for (int n : {10, 30}) {
        auto c = spectral_criteria_d2(HomogeneousSum::from_graph(complete(n)));
        // max|λ| = n-1 against sqrt(n(n-1))
        EXPECT_NEAR(c.max_eig_ratio, (n - 1) / std::sqrt(n * (n - 1.0)), 1e-12);
    }
    double prev = 1;
    for (int q : {5, 10, 20}) {
        auto c = spectral_criteria_d2(HomogeneousSum::from_graph(rook(q, 2)));
        EXPECT_NEAR(c.max_eig_ratio, 2 * (q - 1) / std::sqrt(2.0 * q * q * (q - 1)), 1e-12);
        EXPECT_LT(c.max_eig_ratio, prev);
        prev = c.max_eig_ratio;
    }
    auto b = spectral_criteria_d2(HomogeneousSum::from_graph(complete_bipartite(20)));
    EXPECT_NEAR(b.chi_square_weights[0] * b.chi_square_weights[0] + b.chi_square_weights[1] * b.chi_square_weights[1], 0.5, 1e-12);
    EXPECT_NEAR(std::abs(b.chi_square_weights[0]), 0.5, 1e-12);
}

TEST(SpectralCriteria, ChiSquareWeightsNormalized) {
    std::mt19937_64 gen(6);
    auto z = random_sum(2, 12, 20, gen);
    auto c = spectral_criteria_d2(z);
    double s = 0;
    for (double g : c.chi_square_weights) s += g * g;
    EXPECT_NEAR(s, 0.5, 1e-12);
    for (std::size_t i = 1; i < c.chi_square_weights.size(); ++i)
        EXPECT_GE(std::abs(c.chi_square_weights[i - 1]), std::abs(c.chi_square_weights[i]));
}

TEST(ContractionProperty, MatchesAdjacencySpectrum) {
    std::mt19937_64 gen(44);
    for (int t = 0; t < 20; ++t) {
        int n = 5 + t % 8;
        auto z = random_sum(2, n, std::min(n * (n - 1) / 2, 4 + t), gen, true);
        auto lam = symmetric_eigenvalues(coefficient_matrix(z));
        double s4 = 0;
        for (double x : lam) s4 += x * x * x * x;
        double e = z.ordered_size();
        EXPECT_NEAR(contraction_norms(z)[0], s4 / (4 * e * e), 1e-10);
    }
}
