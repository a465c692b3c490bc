#include <gtest/gtest.h>

#include <cstdlib>

#include "chaosgraph/clt.hpp"
#include "chaosgraph/constructions.hpp"

using namespace chaosgraph;

TEST(Distribution, ParseAndName) {
    for (auto d : {Distribution::Gaussian, Distribution::Rademacher, Distribution::Uniform, Distribution::CenteredExponential})
        EXPECT_EQ(parse_distribution(distribution_name(d)), d);
    try {
        parse_distribution("cauchy");
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDistribution);
    }
}

TEST(Distribution, Standardized) {
    for (auto d : {Distribution::Gaussian, Distribution::Rademacher, Distribution::Uniform, Distribution::CenteredExponential}) {
        Rng r(77);
        std::vector<double> xs(200000);
        for (auto& x : xs) x = draw(r, d);
        auto m = empirical_moments(xs, 2);
        EXPECT_NEAR(m[0].value, 0.0, 4 * m[0].stderr_) << distribution_name(d);
        EXPECT_NEAR(m[1].value, 1.0, 4 * m[1].stderr_) << distribution_name(d);
    }
}

TEST(NormalCdf, ReferenceValues) {
    EXPECT_NEAR(normal_cdf(0.0), 0.5, 1e-15);
    EXPECT_NEAR(normal_cdf(1.0), 0.8413447460685429, 1e-13);
    EXPECT_NEAR(normal_cdf(-1.959963984540054), 0.025, 1e-13);
    EXPECT_NEAR(normal_cdf(-8.0), 6.22096057427178e-16, 1e-28);
}

TEST(Ks, HandComputed) {
    // sorted {0}: max(1 - 0.5, 0.5 - 0) = 0.5
    EXPECT_NEAR(ks_statistic({0.0}), 0.5, 1e-15);
    EXPECT_NEAR(ks_statistic({-1.0, 1.0}), std::max(0.5 - normal_cdf(-1.0), normal_cdf(1.0) - 0.5), 1e-15);
}

TEST(Moments, HandComputed) {
    auto m = empirical_moments({1.0, -1.0, 2.0, 0.0}, 4);
    EXPECT_DOUBLE_EQ(m[0].value, 0.5);
    EXPECT_DOUBLE_EQ(m[1].value, 1.5);
    EXPECT_DOUBLE_EQ(m[3].value, 4.5);
}

TEST(Sample, DeterministicAndThreadIndependent) {
    auto z = HomogeneousSum::from_graph(rook(6, 2));
    auto a = sample(z, Distribution::Gaussian, 1000, 5);
    auto b = sample(z, Distribution::Gaussian, 1000, 5);
    EXPECT_EQ(a, b);
    setenv("CHAOSGRAPH_THREADS", "1", 1);
    auto c = sample(z, Distribution::Gaussian, 1000, 5);
    unsetenv("CHAOSGRAPH_THREADS");
    EXPECT_EQ(a, c);
    auto d = sample(z, Distribution::Gaussian, 1000, 6);
    EXPECT_NE(a, d);
    // a prefix run reproduces the prefix
    auto e = sample(z, Distribution::Gaussian, 300, 5);
    EXPECT_TRUE(std::equal(e.begin(), e.end(), a.begin()));
}

TEST(Sample, FirstValueByHand) {
    // Single pair {0,1}: Z̃ = X_0 X_1 with X_0, X_1 the first two draws of chunk 0.
    auto z = HomogeneousSum::build(2, 2, {{{0, 1}, 1.0}});
    auto xs = sample(z, Distribution::Rademacher, 1, 9);
    Rng r(chunk_seed(9, 0));
    double x0 = draw(r, Distribution::Rademacher), x1 = draw(r, Distribution::Rademacher);
    EXPECT_DOUBLE_EQ(xs[0], x0 * x1);
}

TEST(SampleProperty, StandardizedOutput) {
    for (auto d : {Distribution::Gaussian, Distribution::Rademacher, Distribution::CenteredExponential}) {
        auto xs = sample(triangle_hypergraph(5), d, 40000, 3);
        auto m = empirical_moments(xs, 2);
        EXPECT_NEAR(m[0].value, 0.0, 4 * m[0].stderr_);
        EXPECT_NEAR(m[1].value, 1.0, 4 * m[1].stderr_);
    }
}

TEST(Sample, ProductLawIsNotGaussian) {
    auto xs = sample(HomogeneousSum::from_graph(complete_bipartite(20)), Distribution::Gaussian, 20000, 1);
    EXPECT_GE(ks_statistic(xs), 0.05);
}

TEST(Report, FieldsAndFallback) {
    CLTOptions opt;
    opt.samples = 2000;
    opt.seed = 4;
    auto r = clt_report(HomogeneousSum::from_graph(complete(3)), opt);
    EXPECT_DOUBLE_EQ(r.variance, 12.0);
    EXPECT_NEAR(*r.fourth_moment_exact, 9.0, 1e-12);
    EXPECT_NEAR(r.contraction_norms[0], 0.125, 1e-15);
    EXPECT_FALSE(r.contractions_small);
    EXPECT_TRUE(r.fourth_moment_mc.has_value());
    EXPECT_EQ(r.chi_square_weights.size(), 3u);

    opt.samples = 0;
    opt.contraction_cap = 10;
    auto f = clt_report(HomogeneousSum::from_graph(rook(8, 2)), opt);
    ASSERT_EQ(f.contraction_norms.size(), 1u);
    EXPECT_NE(f.contraction_note.find("trace formula"), std::string::npos);
    opt.contraction_cap = 1e7;
    auto g = clt_report(HomogeneousSum::from_graph(rook(8, 2)), opt);
    EXPECT_NEAR(f.contraction_norms[0], g.contraction_norms[0], 1e-14);

    auto t = clt_report(triangle_hypergraph(5), opt);
    EXPECT_FALSE(t.fourth_moment_exact.has_value());
    EXPECT_TRUE(t.chi_square_weights.empty());
    EXPECT_EQ(t.contraction_norms.size(), 2u);
}
