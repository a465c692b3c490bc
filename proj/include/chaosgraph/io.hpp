#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "chaosgraph/error.hpp"
#include "chaosgraph/graph.hpp"
#include "chaosgraph/homsum.hpp"
#include "chaosgraph/hypergraph.hpp"
#include "chaosgraph/reducibility.hpp"
#include "chaosgraph/spectrum.hpp"

namespace chaosgraph {

using json = nlohmann::json;

inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline json to_json(const Graph& g) {
    json e = json::array();
    for (auto& [u, v] : g.edges()) e.push_back({u, v});
    return {{"type", "graph"}, {"n", g.n()}, {"edges", e}};
}

inline json to_json(const WeightedHypergraph& h) {
    json e = json::array();
    for (auto& x : h.edges()) e.push_back({{"verts", x.verts}, {"w", x.w}});
    return {{"type", "hypergraph"}, {"n", h.n()}, {"edges", e}};
}

inline json to_json(const HomogeneousSum& z) {
    json t = json::array();
    for (auto& x : z.terms()) t.push_back({{"verts", x.verts}, {"q", x.q}});
    return {{"type", "homsum"}, {"d", z.d()}, {"n", z.n()}, {"terms", t}};
}

inline json to_json(const Partition& p) {
    json j = {{"type", "partition"}, {"blocks", p.blocks}};
    if (!p.vprime.empty()) j["vprime"] = p.vprime;
    return j;
}

inline json to_json(const Support& s) {
    return {{"type", "support"}, {"d", s.d}, {"n", s.n}, {"tuples", s.tuples}};
}

inline json to_json(const SpectralReport& r) {
    json g = json::array();
    for (auto& x : r.groups) g.push_back({{"value", x.value}, {"multiplicity", x.multiplicity}});
    return {{"matrix_kind", matrix_kind_name(r.kind)}, {"eigenvalues", r.eigenvalues}, {"groups", g}, {"tolerance", r.tolerance}};
}

// One row per eigenvalue group; per_eigenvalue lists every eigenvalue with its group.
inline std::string spectrum_csv(const SpectralReport& r, bool per_eigenvalue = false) {
    std::ostringstream os;
    if (!per_eigenvalue) {
        os << "value,multiplicity\n";
        for (auto& g : r.groups) os << fmt17(g.value) << ',' << g.multiplicity << '\n';
        return os.str();
    }
    os << "index,eigenvalue,group_value,multiplicity\n";
    std::size_t i = 0;
    for (auto& g : r.groups)
        for (int k = 0; k < g.multiplicity; ++k, ++i)
            os << i << ',' << fmt17(r.eigenvalues[i]) << ',' << fmt17(g.value) << ',' << g.multiplicity << '\n';
    return os.str();
}

namespace detail {

template <class T>
T field(const json& j, const char* key) {
    if (!j.contains(key)) fail(ErrorKind::InvalidInput, std::string("missing field '") + key + "'");
    try {
        return j.at(key).get<T>();
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("bad field '") + key + "': " + e.what());
    }
}

inline void expect_type(const json& j, const char* type) {
    if (field<std::string>(j, "type") != type)
        fail(ErrorKind::InvalidInput, std::string("expected type '") + type + "'");
}

} // namespace detail

inline Graph graph_from_json(const json& j, bool drop_isolated = false) {
    detail::expect_type(j, "graph");
    auto raw = detail::field<std::vector<std::vector<int>>>(j, "edges");
    std::vector<Edge> e;
    for (auto& x : raw) {
        if (x.size() != 2) fail(ErrorKind::InvalidInput, "edge must have two endpoints");
        e.emplace_back(x[0], x[1]);
    }
    return Graph::build(detail::field<int>(j, "n"), std::move(e), drop_isolated);
}

inline WeightedHypergraph hypergraph_from_json(const json& j, bool drop_isolated = false) {
    detail::expect_type(j, "hypergraph");
    std::vector<Hyperedge> e;
    for (auto& x : detail::field<json>(j, "edges"))
        e.push_back({detail::field<std::vector<int>>(x, "verts"), detail::field<double>(x, "w")});
    return WeightedHypergraph::build(detail::field<int>(j, "n"), std::move(e), drop_isolated);
}

inline HomogeneousSum homsum_from_json(const json& j) {
    detail::expect_type(j, "homsum");
    std::vector<Term> t;
    for (auto& x : detail::field<json>(j, "terms"))
        t.push_back({detail::field<std::vector<int>>(x, "verts"), detail::field<double>(x, "q")});
    return HomogeneousSum::build(detail::field<int>(j, "d"), detail::field<int>(j, "n"), std::move(t));
}

inline Partition partition_from_json(const json& j) {
    detail::expect_type(j, "partition");
    Partition p;
    p.blocks = detail::field<std::vector<VertexSet>>(j, "blocks");
    if (j.contains("vprime")) p.vprime = detail::field<std::vector<int>>(j, "vprime");
    return p;
}

inline Support support_from_json(const json& j) {
    if (detail::field<std::string>(j, "type") == "homsum") return support_of(homsum_from_json(j));
    if (detail::field<std::string>(j, "type") == "graph") return support_of(graph_from_json(j));
    detail::expect_type(j, "support");
    Support s;
    s.d = detail::field<int>(j, "d");
    s.n = detail::field<int>(j, "n");
    s.tuples = detail::field<std::vector<std::vector<int>>>(j, "tuples");
    for (auto& t : s.tuples) {
        if (static_cast<int>(t.size()) != s.d) fail(ErrorKind::InvalidInput, "tuple length differs from d");
        for (int v : t)
            if (v < 0 || v >= s.n) fail(ErrorKind::LabelOutOfRange, "tuple vertex out of range");
    }
    s.normalize();
    return s;
}

inline json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidInput, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidInput, path + ": " + e.what());
    }
}

inline void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) fail(ErrorKind::InvalidInput, "cannot write " + path);
    out << text;
}

inline void write_json(const std::string& path, const json& j) { write_text(path, j.dump(1) + "\n"); }

} // namespace chaosgraph
