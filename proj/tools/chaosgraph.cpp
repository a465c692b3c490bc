#include <cmath>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chaosgraph/chaosgraph.hpp"

using namespace chaosgraph;
namespace fs = std::filesystem;

namespace {

struct Options {
    // build
    std::string family;
    std::vector<int> n, q, m, k, d;
    std::vector<double> beta, alpha;
    bool intersection = false;
    // shared
    std::vector<std::string> inputs;
    std::string out;
    std::string format = "json";
    std::optional<std::uint64_t> seed;
    int kk = 2;
    int exact_limit = 12;
    bool require_exact = false;
    std::string matrix = "laplacian";
    bool per_eigenvalue = false;
    // reduce
    std::string partition;
    std::string named;
    int hh = 1;
    int squares = 2;
    std::optional<double> grid_beta;
    // clt
    std::size_t samples = 0;
    std::string dist = "gaussian";
    double contraction_cap = 1e7;
    // combdim
    std::optional<double> dim_alpha;
    bool row_seeds = false;
    int random_starts = 32;
    // certify
    double threshold = 1e-3;
};

json envelope(const std::string& command, const json& params, json result) {
    return {{"tool", "chaosgraph"}, {"version", CHAOSGRAPH_VERSION}, {"command", command}, {"params", params},
            {"result", std::move(result)}};
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty())
        std::cout << text;
    else
        write_text(o.out, text);
}

void emit_json(const Options& o, const json& j) { emit(o, j.dump(1) + "\n"); }

json load(const std::string& path) { return read_json(path); }

std::string type_of(const json& j) { return detail::field<std::string>(j, "type"); }

CutStructure cut_of(const json& j) {
    auto t = type_of(j);
    if (t == "graph") return CutStructure::from_graph(graph_from_json(j));
    if (t == "hypergraph") return hypergraph_from_json(j).cut();
    if (t == "homsum") return homsum_to_hypergraph(homsum_from_json(j), true).cut();
    fail(ErrorKind::InvalidInput, "expected a graph, hypergraph or homsum, got '" + t + "'");
}

HomogeneousSum homsum_of(const json& j) {
    auto t = type_of(j);
    if (t == "graph") return HomogeneousSum::from_graph(graph_from_json(j));
    if (t == "homsum") return homsum_from_json(j);
    fail(ErrorKind::InvalidInput, "expected a graph or homsum, got '" + t + "'");
}

SpectralReport spectrum_of(const json& j, const std::string& matrix) {
    bool adj = matrix == "adjacency";
    if (!adj && matrix != "laplacian") fail(ErrorKind::InvalidInput, "matrix must be 'laplacian' or 'adjacency'");
    auto t = type_of(j);
    if (t == "graph") {
        auto g = graph_from_json(j);
        return adj ? adjacency_spectrum(g) : normalized_laplacian_spectrum(g);
    }
    WeightedHypergraph h = t == "hypergraph" ? hypergraph_from_json(j) : homsum_to_hypergraph(homsum_of(j), true);
    return adj ? hyper_adjacency_spectrum(h) : hyper_laplacian_spectrum(h);
}

int exact_sqrt(int n, const char* what) {
    int s = static_cast<int>(std::lround(std::sqrt(static_cast<double>(n))));
    if (s * s != n) fail(ErrorKind::InvalidInput, std::string(what) + " needs a square vertex count");
    return s;
}

// ---- build ----

struct Member {
    std::string name;
    json params;
    json object;
};

template <class T>
T single(const std::vector<T>& v, const char* flag) {
    if (v.empty()) fail(ErrorKind::InvalidInput, std::string("missing --") + flag);
    return v.front();
}

std::vector<Member> build_members(const Options& o) {
    const auto& f = o.family;
    std::vector<Member> out;
    auto ns = o.n;
    if (ns.empty() && !o.q.empty()) ns = o.q;
    if (ns.empty()) fail(ErrorKind::InvalidInput, "missing --n (or --q)");
    for (int n : ns) {
        Member mem;
        mem.name = f + "_" + std::to_string(n);
        mem.params = {{"family", f}, {"n", n}};
        if (f == "complete") {
            mem.object = to_json(complete(n));
        } else if (f == "complete-bipartite") {
            mem.object = to_json(complete_bipartite(n));
        } else if (f == "cycle") {
            mem.object = to_json(cycle(n));
        } else if (f == "hypercube") {
            mem.object = to_json(hypercube(n));
        } else if (f == "rook") {
            int m = o.m.empty() ? 2 : o.m.front();
            mem.params["q"] = n;
            mem.params["m"] = m;
            mem.object = to_json(rook(n, m));
        } else if (f == "rook-variant") {
            int k = o.k.empty() ? static_cast<int>(std::floor(std::pow(n, 0.9))) : o.k.front();
            mem.params["k"] = k;
            mem.params["intersection"] = o.intersection;
            mem.object = to_json(rook_variant(n, k, !o.intersection));
        } else if (f == "grid") {
            double beta = single(o.beta, "beta");
            mem.params["beta"] = beta;
            mem.object = to_json(grid_sum(contiguous_layout(n, beta)));
        } else if (f == "union-isolated") {
            int m = o.m.empty() ? n / 2 : o.m.front();
            mem.params["m"] = m;
            mem.object = to_json(union_with_isolated(n, m));
        } else if (f == "triangle-hypergraph") {
            mem.object = to_json(triangle_hypergraph(n));
        } else if (f == "rooklike") {
            int d = single(o.d, "d");
            mem.params["d"] = d;
            mem.object = to_json(rooklike_hypergraph(n, d));
        } else if (f == "block-sum") {
            int d = single(o.d, "d");
            mem.params["d"] = d;
            mem.object = to_json(block_sum(n, d));
        } else if (f == "fractional") {
            mem.params["partition"] = "cyclic-3x2";
            mem.object = to_json(fractional_product(n, cyclic_partition_3x2()));
        } else if (f == "random") {
            if (!o.seed) fail(ErrorKind::InvalidInput, "random family needs --seed");
            double alpha = single(o.alpha, "alpha");
            int d = o.d.empty() ? 2 : o.d.front();
            mem.params["alpha"] = alpha;
            mem.params["d"] = d;
            mem.params["seed"] = *o.seed;
            mem.object = to_json(random_support(n, alpha, d, *o.seed));
        } else {
            fail(ErrorKind::InvalidInput, "unknown family '" + f + "'");
        }
        out.push_back(std::move(mem));
    }
    return out;
}

int cmd_build(const Options& o) {
    auto members = build_members(o);
    if (members.size() == 1) {
        emit_json(o, members[0].object);
        return 0;
    }
    if (o.out.empty()) fail(ErrorKind::InvalidInput, "several members need --out DIR");
    fs::create_directories(o.out);
    json index = {{"tool", "chaosgraph"}, {"version", CHAOSGRAPH_VERSION}, {"family", o.family}, {"members", json::array()}};
    for (auto& m : members) {
        std::string file = m.name + ".json";
        write_json((fs::path(o.out) / file).string(), m.object);
        index["members"].push_back({{"file", file}, {"params", m.params}});
    }
    write_json((fs::path(o.out) / "index.json").string(), index);
    return 0;
}

// Inputs may name files or family directories with an index.json.
std::vector<std::pair<std::string, json>> expand_inputs(const std::vector<std::string>& inputs) {
    std::vector<std::pair<std::string, json>> out;
    for (auto& in : inputs) {
        if (fs::is_directory(in)) {
            auto index = load((fs::path(in) / "index.json").string());
            for (auto& m : detail::field<json>(index, "members")) {
                auto file = detail::field<std::string>(m, "file");
                out.emplace_back(file, load((fs::path(in) / file).string()));
            }
        } else {
            out.emplace_back(fs::path(in).filename().string(), load(in));
        }
    }
    return out;
}

// ---- spectrum ----

int cmd_spectrum(const Options& o, const json& params) {
    auto rep = spectrum_of(load(o.inputs.at(0)), o.matrix);
    if (o.format == "csv")
        emit(o, spectrum_csv(rep, o.per_eigenvalue));
    else
        emit_json(o, envelope("spectrum", params, to_json(rep)));
    return 0;
}

// ---- cheeger ----

int cmd_cheeger(const Options& o, const json& params) {
    auto cs = cut_of(load(o.inputs.at(0)));
    auto rep = cheeger_check(cs, o.kk, o.exact_limit, o.require_exact);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "k,mu_k,phi_k,exact,factor,bound,ok,hard_ratio\n";
        for (auto& r : rep.rows)
            os << r.k << ',' << fmt17(r.mu_k) << ',' << fmt17(r.phi_k) << ',' << r.exact << ',' << fmt17(r.factor) << ','
               << fmt17(r.bound) << ',' << r.ok << ',' << fmt17(r.hard_ratio) << '\n';
        emit(o, os.str());
        return 0;
    }
    json rows = json::array();
    for (auto& r : rep.rows)
        rows.push_back({{"k", r.k}, {"mu_k", r.mu_k}, {"phi_k", r.phi_k}, {"phi_k_exact", r.exact}, {"factor", r.factor},
                        {"bound", r.bound}, {"ok", r.ok}, {"hard_ratio", r.hard_ratio}});
    json res = {{"rows", rows}, {"all_ok", rep.all_ok()}, {"rank", cs.rank}, {"corank", cs.corank}};
    if (rep.tilde_checked) {
        res["phi_tilde2"] = rep.phi_tilde2;
        res["sqrt_2mu2"] = rep.sqrt_2mu2;
        res["tilde_ok"] = rep.tilde_ok;
    }
    emit_json(o, envelope("cheeger", params, res));
    return 0;
}

// ---- reduce ----

Partition named_partition(const Options& o, const HomogeneousSum& z) {
    const auto& nm = o.named;
    if (nm == "hypercube-boxes") {
        int dim = 0;
        while ((1 << dim) < z.n()) ++dim;
        if ((1 << dim) != z.n()) fail(ErrorKind::InvalidInput, "hypercube boxes need 2^n vertices");
        return hypercube_boxes(dim, o.hh);
    }
    if (nm == "rows") return row_boxes(exact_sqrt(z.n(), "rows"));
    if (nm == "columns") return column_boxes(exact_sqrt(z.n(), "columns"));
    if (nm == "squares") return square_boxes(exact_sqrt(z.n(), "squares"), o.squares);
    if (nm == "components") {
        std::vector<std::vector<int>> e;
        for (auto& t : z.terms()) e.push_back(t.verts);
        auto comp = detail::edge_components(CutStructure::make(z.n(), e, std::vector<double>(e.size(), 1.0)));
        Partition p;
        p.blocks.resize(*std::max_element(comp.begin(), comp.end()) + 1);
        for (int v = 0; v < z.n(); ++v) p.blocks[comp[v]].push_back(v);
        return p;
    }
    fail(ErrorKind::InvalidInput, "unknown named reduction '" + nm + "'");
}

int cmd_reduce(const Options& o, const json& params) {
    auto z = homsum_of(load(o.inputs.at(0)));
    if (o.partition.empty() == o.named.empty()) fail(ErrorKind::InvalidInput, "give exactly one of --partition, --named");
    Partition p = o.partition.empty() ? named_partition(o, z) : partition_from_json(load(o.partition));
    auto rep = evaluate_partition(z, p);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "block,sigma2,vol,phi\n";
        for (auto& b : rep.per_block) os << b.id << ',' << fmt17(b.sigma2) << ',' << fmt17(b.vol) << ',' << fmt17(b.phi) << '\n';
        emit(o, os.str());
        return 0;
    }
    json blocks = json::array();
    for (auto& b : rep.per_block) blocks.push_back({{"id", b.id}, {"sigma2", b.sigma2}, {"vol", b.vol}, {"phi", b.phi}});
    json res = {{"m", rep.m},
                {"variance", rep.variance},
                {"captured", rep.captured_fraction},
                {"max_box", rep.max_box_fraction},
                {"restricted_gap", 1.0 - rep.captured_fraction},
                {"covers", rep.covers},
                {"per_block", blocks}};
    if (o.grid_beta) {
        int side = exact_sqrt(z.n(), "grid bound");
        auto g = grid_bound_check(z, side, *o.grid_beta, {{o.named.empty() ? "partition" : o.named, p}});
        res["grid_bound"] = {{"in_scope", g.in_scope}, {"capture_threshold", g.capture_threshold},
                             {"box_threshold", g.box_threshold}, {"all_ok", g.all_ok}};
        if (!g.rows.empty())
            res["grid_bound"]["candidate"] = {{"captured", g.rows[0].captured}, {"max_box", g.rows[0].max_box},
                                              {"precondition", g.rows[0].precondition}, {"ok", g.rows[0].ok}};
    }
    emit_json(o, envelope("reduce", params, res));
    return 0;
}

// ---- clt ----

int cmd_clt(const Options& o, const json& params) {
    auto z = homsum_of(load(o.inputs.at(0)));
    CLTOptions opt;
    opt.samples = o.samples;
    opt.dist = parse_distribution(o.dist);
    opt.contraction_cap = o.contraction_cap;
    if (o.samples > 0) {
        if (!o.seed) fail(ErrorKind::InvalidInput, "Monte Carlo needs --seed");
        opt.seed = *o.seed;
    }
    auto r = clt_report(z, opt);
    json res = {{"d", r.d}, {"variance", r.variance}, {"contraction_norms", r.contraction_norms},
                {"contractions_small", r.contractions_small}};
    if (!r.contraction_note.empty()) res["contraction_note"] = r.contraction_note;
    if (r.fourth_moment_exact) res["fourth_moment_exact"] = *r.fourth_moment_exact;
    if (r.max_eig_ratio) {
        res["max_eig_ratio"] = *r.max_eig_ratio;
        res["max_degree_ratio"] = *r.max_degree_ratio;
        res["eig_ratio_small"] = r.eig_ratio_small;
        res["degree_ratio_small"] = r.degree_ratio_small;
        std::vector<double> top(r.chi_square_weights.begin(),
                                r.chi_square_weights.begin() + std::min<std::size_t>(10, r.chi_square_weights.size()));
        res["chi_square_weights_top"] = top;
    }
    if (r.fourth_moment_mc) {
        res["fourth_moment_mc"] = json{{"value", r.fourth_moment_mc->value}, {"stderr", r.fourth_moment_mc->stderr_}};
        res["ks"] = *r.ks;
    }
    if (o.format == "csv") {
        std::ostringstream os;
        os << "metric,value\n";
        for (auto& [key, v] : res.items())
            if (v.is_number()) os << key << ',' << fmt17(v.get<double>()) << '\n';
        emit(o, os.str());
        return 0;
    }
    emit_json(o, envelope("clt", params, res));
    return 0;
}

// ---- combdim ----

int cmd_combdim(const Options& o, const json& params) {
    std::vector<CombDimMember> fam;
    for (auto& [name, j] : expand_inputs(o.inputs)) {
        CombDimMember m{name, support_from_json(j), {}};
        if (o.row_seeds) {
            int side = exact_sqrt(m.support.n, "row seeds");
            m.seeds.push_back(row_boxes(side).blocks[0]);
            m.seeds.push_back(column_boxes(side).blocks[0]);
        }
        fam.push_back(std::move(m));
    }
    CombDimOptions opt;
    opt.seed = o.seed.value_or(0);
    opt.random_starts = o.random_starts;
    auto rep = combdim_family_report(fam, o.dim_alpha, opt);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "name,n_vertices,support_size,density_ratio,rect_ratio,rect_exact\n";
        for (auto& r : rep.rows)
            os << r.name << ',' << r.n_vertices << ',' << r.support_size << ',' << fmt17(r.density_ratio) << ','
               << fmt17(r.rect_ratio) << ',' << r.rect_exact << '\n';
        emit(o, os.str());
        return 0;
    }
    json rows = json::array();
    for (auto& r : rep.rows)
        rows.push_back({{"name", r.name}, {"n_vertices", r.n_vertices}, {"support_size", r.support_size},
                        {"density_ratio", r.density_ratio}, {"rect_ratio", r.rect_ratio}, {"rect_exact", r.rect_exact},
                        {"witness", r.witness}});
    json res = {{"alpha_hat", rep.alpha_hat},         {"alpha_intercept", rep.alpha_intercept},
                {"fit_residuals", rep.fit_residuals}, {"alpha_used", rep.alpha_used},
                {"density_slope", rep.density_slope}, {"rect_slope", rep.rect_slope},
                {"verdict", verdict_name(rep.verdict)}, {"rows", rows}};
    emit_json(o, envelope("combdim", params, res));
    return 0;
}

// ---- certify ----

int cmd_certify(const Options& o, const json& params) {
    std::vector<std::pair<std::string, SpectralReport>> fam;
    for (auto& [name, j] : expand_inputs(o.inputs)) fam.emplace_back(name, spectrum_of(j, "laplacian"));
    auto c = spectral_certificate(fam, o.kk, o.threshold);
    if (o.format == "csv") {
        std::ostringstream os;
        os << "member,n_vertices,mu_k\n";
        for (auto& r : c.rows) os << r.member << ',' << r.n_vertices << ',' << fmt17(r.mu_k) << '\n';
        emit(o, os.str());
        return 0;
    }
    json rows = json::array();
    for (auto& r : c.rows) rows.push_back({{"member", r.member}, {"n_vertices", r.n_vertices}, {"mu_k", r.mu_k}});
    json res = {{"k", c.k}, {"threshold", c.threshold}, {"proxy", c.proxy}, {"granted", c.granted}, {"label", c.label},
                {"rows", rows}};
    emit_json(o, envelope("certify", params, res));
    return 0;
}

void print_error(const std::string& kind, const std::string& msg) {
    std::cerr << json{{"error", {{"kind", kind}, {"message", msg}}}}.dump() << '\n';
}

// Echo of every option that was given on the command line.
json echo(CLI::App* sub) {
    json p = json::object();
    for (auto* opt : sub->get_options()) {
        // the output path is not part of the computation, so equal runs compare equal
        if (opt->count() == 0 || opt->get_name() == "--help" || opt->get_name() == "--out") continue;
        auto res = opt->results();
        std::string key = opt->get_name();
        while (!key.empty() && key.front() == '-') key.erase(key.begin());
        if (res.size() == 1)
            p[key] = res[0];
        else
            p[key] = res;
    }
    return p;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    CLI::App app{"Spectral and combinatorial diagnostics for homogeneous sums on graphs and hypergraphs"};
    app.set_version_flag("--version", CHAOSGRAPH_VERSION);
    app.require_subcommand(1);

    auto add_out = [&](CLI::App* s, bool csv) {
        s->add_option("--out", o.out, "output path (stdout if omitted)");
        if (csv) s->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    };

    auto* build = app.add_subcommand("build", "generate a family member (or several, into a directory)");
    build->add_option("--family", o.family,
                      "complete, complete-bipartite, cycle, hypercube, rook, rook-variant, grid, union-isolated, "
                      "triangle-hypergraph, rooklike, block-sum, fractional, random")
        ->required();
    build->add_option("--n", o.n, "size parameter; a list builds a family")->delimiter(',');
    build->add_option("--q", o.q, "rook side")->delimiter(',');
    build->add_option("--m", o.m, "rook dimension or union clique size");
    build->add_option("--k", o.k, "rook variant parameter");
    build->add_option("--d", o.d, "order");
    build->add_option("--beta", o.beta, "grid fraction");
    build->add_option("--alpha", o.alpha, "random support exponent");
    build->add_option("--seed", o.seed, "seed for random families");
    build->add_flag("--intersection", o.intersection, "rook variant keeps only mutual arcs");
    add_out(build, false);

    auto* spec = app.add_subcommand("spectrum", "normalized Laplacian or adjacency spectrum");
    spec->add_option("input", o.inputs)->required()->expected(1);
    spec->add_option("--matrix", o.matrix, "laplacian or adjacency");
    spec->add_flag("--per-eigenvalue", o.per_eigenvalue, "CSV lists every eigenvalue");
    add_out(spec, true);

    auto* cheeger = app.add_subcommand("cheeger", "check mu_k <= factor * phi_k for k = 2..K");
    cheeger->add_option("input", o.inputs)->required()->expected(1);
    cheeger->add_option("--k", o.kk, "largest k");
    cheeger->add_option("--exact-limit", o.exact_limit, "vertex limit for exhaustive phi_k");
    cheeger->add_flag("--require-exact", o.require_exact, "fail instead of using sweep bounds");
    add_out(cheeger, true);

    auto* reduce = app.add_subcommand("reduce", "variance captured by a box system");
    reduce->set_help_flag("--help", "print this help and exit"); // --h is taken by hypercube boxes
    reduce->add_option("input", o.inputs)->required()->expected(1);
    reduce->add_option("--partition", o.partition, "partition JSON");
    reduce->add_option("--named", o.named, "hypercube-boxes, rows, columns, squares, components");
    reduce->add_option("--h", o.hh, "fixed coordinates for hypercube boxes");
    reduce->add_option("--squares", o.squares, "squares per side");
    reduce->add_option("--beta", o.grid_beta, "also run the grid box bound at this beta");
    add_out(reduce, true);

    auto* clt = app.add_subcommand("clt", "fourth moment, contractions, spectral criteria, Monte Carlo");
    clt->add_option("input", o.inputs)->required()->expected(1);
    clt->add_option("--samples", o.samples, "Monte Carlo samples (0 = none)");
    clt->add_option("--seed", o.seed, "Monte Carlo seed");
    clt->add_option("--dist", o.dist, "gaussian, rademacher, uniform, exponential");
    clt->add_option("--contraction-cap", o.contraction_cap, "work cap for contraction norms");
    add_out(clt, true);

    auto* comb = app.add_subcommand("combdim", "density and rectangle ratios across a family");
    comb->add_option("inputs", o.inputs, "support files or family directories")->required();
    comb->add_option("--alpha", o.dim_alpha, "fixed exponent (fitted if omitted)");
    comb->add_option("--seed", o.seed, "seed for the rectangle search");
    comb->add_option("--starts", o.random_starts, "random starts for the rectangle search");
    comb->add_flag("--row-seeds", o.row_seeds, "seed the search with a row and a column of [s]^2");
    add_out(comb, true);

    auto* cert = app.add_subcommand("certify", "spectral irreducibility certificate for a family");
    cert->add_option("inputs", o.inputs, "member files or family directories")->required();
    cert->add_option("--k", o.kk, "eigenvalue index");
    cert->add_option("--threshold", o.threshold, "minimum mu_k");
    add_out(cert, true);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("UsageError", e.what());
        return 2;
    }

    try {
        if (*build) return cmd_build(o);
        CLI::App* sub = app.get_subcommands().front();
        json params = echo(sub);
        if (*spec) return cmd_spectrum(o, params);
        if (*cheeger) return cmd_cheeger(o, params);
        if (*reduce) return cmd_reduce(o, params);
        if (*clt) return cmd_clt(o, params);
        if (*comb) return cmd_combdim(o, params);
        if (*cert) return cmd_certify(o, params);
    } catch (const Error& e) {
        print_error(kind_name(e.kind()), e.what());
        return exit_code(e.kind());
    } catch (const std::exception& e) {
        print_error("InvalidInput", e.what());
        return 2;
    }
    return 0;
}
