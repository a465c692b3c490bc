#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>

#include "chaosgraph/constructions.hpp"
#include "chaosgraph/io.hpp"

using namespace chaosgraph;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error thrown";
    return ErrorKind::InvalidInput;
}

} // namespace

TEST(Io, GraphRoundTrip) {
    auto g = rook_variant(4, 2);
    auto j = to_json(g);
    auto back = graph_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.n(), g.n());
    EXPECT_EQ(back.edges(), g.edges());
    EXPECT_EQ(j["type"], "graph");
}

TEST(Io, HypergraphRoundTrip) {
    auto h = homsum_to_hypergraph(triangle_hypergraph(5));
    auto back = hypergraph_from_json(json::parse(to_json(h).dump()));
    ASSERT_EQ(back.edges().size(), h.edges().size());
    for (std::size_t i = 0; i < h.edges().size(); ++i) {
        EXPECT_EQ(back.edges()[i].verts, h.edges()[i].verts);
        EXPECT_EQ(back.edges()[i].w, h.edges()[i].w);
    }
}

TEST(Io, HomsumRoundTripKeepsDoubles) {
    auto z = HomogeneousSum::build(3, 5, {{{0, 1, 2}, 0.1}, {{1, 3, 4}, 1.0 / 3}});
    auto back = homsum_from_json(json::parse(to_json(z).dump()));
    EXPECT_EQ(back.d(), 3);
    ASSERT_EQ(back.terms().size(), 2u);
    EXPECT_EQ(back.terms()[1].q, 1.0 / 3);
    EXPECT_EQ(variance(back), variance(z));
}

TEST(Io, PartitionAndSupport) {
    auto p = row_boxes(3);
    p.vprime = {0, 1, 2};
    auto back = partition_from_json(json::parse(to_json(p).dump()));
    EXPECT_EQ(back.blocks, p.blocks);
    EXPECT_EQ(back.vprime, p.vprime);
    auto s = support_of(cycle(5));
    auto sb = support_from_json(json::parse(to_json(s).dump()));
    EXPECT_EQ(sb.tuples, s.tuples);
    EXPECT_EQ(support_from_json(to_json(cycle(5))).tuples, s.tuples);
    EXPECT_EQ(support_from_json(to_json(HomogeneousSum::from_graph(cycle(5)))).tuples, s.tuples);
}

TEST(Io, SpectrumCsv) {
    auto rep = normalized_laplacian_spectrum(complete(4));
    auto csv = spectrum_csv(rep);
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "value,multiplicity");
    std::getline(in, line);
    EXPECT_EQ(line.substr(line.find(',')), ",1");
    EXPECT_NEAR(std::stod(line), 0.0, 1e-12);
    std::getline(in, line);
    EXPECT_EQ(line.substr(line.find(',')), ",3");
    EXPECT_NEAR(std::stod(line), 4.0 / 3, 1e-12);
    EXPECT_FALSE(std::getline(in, line));

    std::istringstream all(spectrum_csv(rep, true));
    std::getline(all, line);
    EXPECT_EQ(line, "index,eigenvalue,group_value,multiplicity");
    int rows = 0;
    while (std::getline(all, line)) ++rows;
    EXPECT_EQ(rows, 4);
    EXPECT_EQ(fmt17(0.1), "0.10000000000000001");
    EXPECT_EQ(std::stod(fmt17(1.0 / 3)), 1.0 / 3);
}

TEST(Io, Errors) {
    EXPECT_EQ(kind_of([] { graph_from_json(json{{"type", "graph"}, {"n", 3}}); }), ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { graph_from_json(json{{"type", "homsum"}, {"n", 3}, {"edges", json::array()}}); }),
              ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { graph_from_json(json::parse(R"({"type":"graph","n":3,"edges":[[0,1,2]]})")); }),
              ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { graph_from_json(json::parse(R"({"type":"graph","n":"x","edges":[]})")); }),
              ErrorKind::InvalidInput);
    EXPECT_EQ(kind_of([] { graph_from_json(json::parse(R"({"type":"graph","n":3,"edges":[[0,0],[1,2]]})")); }),
              ErrorKind::LoopEdge);
    EXPECT_EQ(kind_of([] { support_from_json(json::parse(R"({"type":"support","d":2,"n":3,"tuples":[[0,5]]})")); }),
              ErrorKind::LabelOutOfRange);
    EXPECT_EQ(kind_of([] { read_json("/nonexistent/file.json"); }), ErrorKind::InvalidInput);
}

TEST(Io, FileRoundTrip) {
    auto dir = std::filesystem::temp_directory_path() / "chaosgraph_io_test";
    std::filesystem::create_directories(dir);
    auto path = (dir / "g.json").string();
    write_json(path, to_json(cycle(7)));
    EXPECT_EQ(graph_from_json(read_json(path)).m(), 7);
    write_text(path, "{not json");
    EXPECT_EQ(kind_of([&] { read_json(path); }), ErrorKind::InvalidInput);
    std::filesystem::remove_all(dir);
}
