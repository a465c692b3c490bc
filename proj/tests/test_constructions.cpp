#include <gtest/gtest.h>

#include <map>

#include "chaosgraph/constructions.hpp"
#include "chaosgraph/spectrum.hpp"

using namespace chaosgraph;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error raised";
    return ErrorKind::InvalidInput;
}

bool regular(const Graph& g, int d) {
    for (int v = 0; v < g.n(); ++v)
        if (g.degree(v) != d) return false;
    return true;
}

FractionalPartition figure_a() {
    auto fp = FractionalPartition::from_one_based(3, 2, {{{1, 2}, {2, 2}}, {{2, 1}, {3, 1}}, {{3, 2}, {1, 1}}});
    EXPECT_EQ(fp.blocks, cyclic_partition_3x2().blocks);
    return fp;
}

} // namespace

TEST(Classical, Sizes) {
    auto q3 = hypercube(3);
    EXPECT_EQ(q3.n(), 8);
    EXPECT_EQ(q3.m(), 12u);
    EXPECT_TRUE(regular(q3, 3));
    auto r = rook(6, 2);
    EXPECT_EQ(r.n(), 36);
    EXPECT_EQ(r.m(), 180u);
    EXPECT_TRUE(regular(r, 10));
    auto b = complete_bipartite(3);
    EXPECT_EQ(b.n(), 6);
    EXPECT_EQ(b.m(), 9u);
    auto k = cartesian_product(complete(3), complete(3));
    EXPECT_EQ(k.n(), 9);
    EXPECT_TRUE(regular(k, 4));
}

TEST(Classical, ProductLabeling) {
    // (u, w) ↦ u·|V_h| + w
    auto g = cartesian_product(complete(2), cycle(4));
    EXPECT_TRUE(g.has_edge(0 * 4 + 1, 1 * 4 + 1));
    EXPECT_TRUE(g.has_edge(1 * 4 + 0, 1 * 4 + 3));
    EXPECT_FALSE(g.has_edge(0, 1 * 4 + 1));
}

TEST(Classical, SizeLimit) {
    EXPECT_EQ(kind_of([] { product_power(complete(100), 4); }), ErrorKind::SizeLimitExceeded);
}

TEST(RookVariant, Extremes) {
    auto g0 = rook_variant(4, 0);
    EXPECT_EQ(g0.component_count(), 4);
    auto sp = normalized_laplacian_spectrum(g0);
    for (int i = 1; i <= 4; ++i) EXPECT_NEAR(sp.mu(i), 0.0, 1e-10);
    EXPECT_EQ(rook_variant(6, 6).edges(), rook(6, 2).edges());
    EXPECT_EQ(rook_variant(6, 6, false).edges(), rook(6, 2).edges());
    EXPECT_EQ(kind_of([] { rook_variant(4, 5); }), ErrorKind::InvalidK);
}

TEST(RookVariant, OutArcsOfOneVertex) {
    // n = 5, k = 4, vertex (2,1) in 1-based coordinates: four horizontal arcs and three
    // vertical ones (targets with first coordinate 1, 3, 4).
    auto arcs = rook_variant_out_arcs(5, 4, 1, 0);
    std::vector<std::pair<int, int>> expect{{1, 1}, {1, 2}, {1, 3}, {1, 4}, {0, 0}, {2, 0}, {3, 0}};
    EXPECT_EQ(arcs, expect);
    auto g = rook_variant(5, 4);
    EXPECT_EQ(g.degree(1 * 5 + 0), 8);
    auto mutual = rook_variant(5, 4, false);
    EXPECT_EQ(mutual.degree(1 * 5 + 0), 7);
    EXPECT_EQ(mutual.degree(4 * 5 + 0), 4);
}

TEST(RookVariant, UnionOfLiteralArcs) {
    int n = 6, k = 3;
    std::set<std::pair<int, int>> uni, both;
    std::map<std::pair<int, int>, int> seen;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (auto [i, j] : rook_variant_out_arcs(n, k, a, b)) {
                int u = a * n + b, v = i * n + j;
                std::pair<int, int> key = std::minmax(u, v);
                uni.insert(key);
                if (++seen[key] == 2) both.insert(key);
            }
    auto g = rook_variant(n, k);
    std::set<std::pair<int, int>> got(g.edges().begin(), g.edges().end());
    EXPECT_EQ(got, uni);
    auto m = rook_variant(n, k, false);
    std::set<std::pair<int, int>> gotm(m.edges().begin(), m.edges().end());
    EXPECT_EQ(gotm, both);
}

TEST(Grid, FullBetaIsRook) {
    EXPECT_EQ(grid_family(contiguous_layout(7, 1.0)).edges(), rook(7, 2).edges());
}

TEST(Grid, Counts) {
    for (auto [n, beta] : std::vector<std::pair<int, double>>{{10, 0.9}, {20, 0.75}, {13, 0.6}}) {
        auto l = contiguous_layout(n, beta);
        int k = l.side();
        auto z = grid_sum(l);
        EXPECT_DOUBLE_EQ(z.ordered_size(), 2.0 * n * k * (k - 1));
        EXPECT_EQ(z.size(), static_cast<std::size_t>(n * k * (k - 1)));
    }
    EXPECT_EQ(grid_sum(contiguous_layout(10, 0.9)).size(), 720u);
    EXPECT_EQ(contiguous_layout(60, 0.9).side(), 54);
}

TEST(Grid, DropsUncovered) {
    auto l = contiguous_layout(8, 0.5);
    auto g = grid_family(l);
    // covered: x < 4 or y < 4
    EXPECT_EQ(g.n(), 64 - 16);
    EXPECT_THROW(Graph::build(64, grid_edges(l)), Error);
}

TEST(Grid, LayoutValidation) {
    auto l = contiguous_layout(6, 0.5);
    l.sv[2].pop_back();
    EXPECT_EQ(kind_of([&] { grid_edges(l); }), ErrorKind::LayoutSizeMismatch);
    auto m = contiguous_layout(6, 0.5);
    m.sh[1][0] = 2; // row 2, not row 1
    EXPECT_EQ(kind_of([&] { grid_edges(m); }), ErrorKind::LayoutSizeMismatch);
}

TEST(UnionWithIsolated, Spectrum) {
    auto g = union_with_isolated(6, 4);
    EXPECT_EQ(g.n(), 16 + 2 * 2 * 4);
    auto sp = normalized_laplacian_spectrum(g);
    EXPECT_EQ(sp.groups.size(), 3u);
    EXPECT_EQ(sp.multiplicity_of(0.0), 5);
    EXPECT_EQ(sp.multiplicity_of(2.0 / 3.0), 6);
    EXPECT_EQ(sp.multiplicity_of(4.0 / 3.0), 21);
}

TEST(UnionWithIsolated, ClosedFormAcrossParameters) {
    for (auto [n, m] : std::vector<std::pair<int, int>>{{5, 3}, {8, 4}, {9, 2}, {7, 7}}) {
        auto sp = normalized_laplacian_spectrum(union_with_isolated(n, m));
        double mm = m;
        EXPECT_EQ(sp.multiplicity_of(0.0), 1 + 2 * (n - m));
        EXPECT_EQ(sp.multiplicity_of(mm / (2 * (mm - 1))), 2 * (m - 1));
        EXPECT_EQ(sp.multiplicity_of(mm / (mm - 1)), (m - 1) * (m - 1) + 2 * (n - m) * (m - 1));
    }
    EXPECT_EQ(union_with_isolated(5, 5).edges(), rook(5, 2).edges());
    EXPECT_EQ(kind_of([] { union_with_isolated(5, 1); }), ErrorKind::InvalidM);
    EXPECT_EQ(kind_of([] { union_with_isolated(5, 6); }), ErrorKind::InvalidM);
}

TEST(FractionalPartition, Validation) {
    EXPECT_NO_THROW(figure_a().validate());
    auto disc = FractionalPartition::from_one_based(4, 2, {{{1, 1}, {2, 1}}, {{1, 2}, {2, 2}}, {{3, 1}, {4, 1}}, {{3, 2}, {4, 2}}});
    EXPECT_EQ(kind_of([&] { disc.validate(); }), ErrorKind::DisconnectedPartition);
    auto conn = FractionalPartition::from_one_based(4, 2, {{{1, 2}, {2, 2}}, {{2, 1}, {3, 1}}, {{3, 2}, {4, 2}}, {{1, 1}, {4, 1}}});
    EXPECT_NO_THROW(conn.validate());
    auto row = FractionalPartition::from_one_based(3, 2, {{{1, 1}, {1, 2}}, {{2, 1}, {3, 1}}, {{2, 2}, {3, 2}}});
    EXPECT_EQ(kind_of([&] { row.validate(); }), ErrorKind::RowCollision);
    auto size = FractionalPartition::from_one_based(3, 2, {{{1, 1}}, {{2, 1}, {3, 1}}, {{2, 2}, {3, 2}, {1, 2}}});
    EXPECT_EQ(kind_of([&] { size.validate(); }), ErrorKind::BlockSizeError);
}

TEST(FractionalProduct, TransitiveTriangles) {
    // Blocks of the figure partition force v1 = (z,x), v2 = (y,x), v3 = (y,z): one
    // transitive orientation per labeling, so n(n-1)(n-2) keys.
    for (int n : {5, 6}) {
        auto z = fractional_product(n, figure_a());
        EXPECT_EQ(z.n(), n * (n - 1));
        EXPECT_EQ(z.size(), static_cast<std::size_t>(n * (n - 1) * (n - 2)));
    }
}

TEST(FractionalProduct, InvariantUnderBlockRelabeling) {
    auto fp = figure_a();
    auto a = fractional_product(6, fp);
    std::swap(fp.blocks[0], fp.blocks[2]);
    auto b = fractional_product(6, fp);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.terms()[i].verts, b.terms()[i].verts);
}

TEST(Triangle, Counts) {
    for (int n : {5, 6}) {
        auto z = triangle_hypergraph(n);
        EXPECT_EQ(z.n(), n * (n - 1));
        EXPECT_DOUBLE_EQ(z.ordered_size(), 8.0 * n * (n - 1) * (n - 2));
    }
    // every pair of vertices in a hyperedge shares exactly one label; three labels in total
    auto z = triangle_hypergraph(5);
    auto verts = nondiagonal_tuples(5, 2);
    for (auto& t : z.terms()) {
        std::set<int> labels;
        for (int v : t.verts) labels.insert(verts[v].begin(), verts[v].end());
        EXPECT_EQ(labels.size(), 3u);
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j) {
                auto &p = verts[t.verts[i]], &q = verts[t.verts[j]];
                int shared = (p[0] == q[0]) + (p[0] == q[1]) + (p[1] == q[0]) + (p[1] == q[1]);
                EXPECT_EQ(shared, 1);
            }
    }
}

TEST(Rooklike, CountsAndWeights) {
    auto z = rooklike_hypergraph(6, 3);
    EXPECT_EQ(z.size(), 240u);
    for (auto& t : z.terms()) EXPECT_NEAR(t.q * t.q, 0.5, 1e-15);
}

TEST(RandomSupport, DeterministicAndSymmetric) {
    auto a = random_support(50, 1.5, 2, 7), b = random_support(50, 1.5, 2, 7), c = random_support(50, 1.5, 2, 8);
    EXPECT_EQ(a.tuples, b.tuples);
    EXPECT_NE(a.tuples, c.tuples);
    std::set<std::vector<int>> s(a.tuples.begin(), a.tuples.end());
    for (auto& t : a.tuples) {
        EXPECT_NE(t[0], t[1]);
        EXPECT_TRUE(s.count({t[1], t[0]}));
    }
    auto d3 = random_support(12, 2.0, 3, 1);
    for (auto& t : d3.tuples) EXPECT_TRUE(t[0] != t[1] && t[1] != t[2] && t[0] != t[2]);
    EXPECT_EQ(kind_of([] { random_support(10, 2.0, 2, 1); }), ErrorKind::InvalidAlpha);
    EXPECT_EQ(kind_of([] { random_support(10, 1.0, 2, 1); }), ErrorKind::InvalidAlpha);
}

TEST(RandomSupport, EdgeCountBinomial) {
    // Unordered pairs: C(n,2) trials with p = n^(α-2).
    int n = 200;
    double p = std::pow(n, -0.5), trials = n * (n - 1) / 2.0;
    double mean = trials * p, sd = std::sqrt(trials * p * (1 - p));
    int inside = 0;
    for (int s = 0; s < 10; ++s) {
        auto sup = random_support(n, 1.5, 2, s);
        double e = sup.size() / 2.0;
        inside += std::abs(e - mean) <= 4 * sd;
    }
    EXPECT_EQ(inside, 10);
}
