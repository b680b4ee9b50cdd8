#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "ufg/ufg.hpp"

namespace fs = std::filesystem;
using namespace ufg;

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

/// Output directory plus the manifest that names every file written into it.
struct Run {
    std::string out_dir = ".";
    bool record_time = false;
    Manifest manifest{""};
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();

    void write(const std::string& name, const std::string& bytes) {
        fs::create_directories(out_dir);
        std::ofstream out(fs::path(out_dir) / name, std::ios::binary);
        if (!out) throw Error("cannot write '" + name + "'");
        out << bytes;
        manifest.output(name);
    }

    void finish() {
        if (record_time)
            manifest.wall_time(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
        fs::create_directories(out_dir);
        std::ofstream(fs::path(out_dir) / "manifest.json", std::ios::binary) << manifest.dump();
    }
};

Rational rational_arg(const std::string& s) { return parse_rational(s); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream in(s);
    for (std::string part; std::getline(in, part, sep);)
        if (!part.empty()) out.push_back(part);
    return out;
}

std::string padded(std::size_t i, std::size_t width = 4) {
    std::string s = std::to_string(i);
    return std::string(s.size() < width ? width - s.size() : 0, '0') + s;
}

FoldingBasis parse_basis(std::uint32_t n, const std::string& text) {
    FoldingBasis b{n, {}};
    for (const auto& item : split(text, ',')) {
        auto parts = split(item, ':');
        if (parts.size() != 2) throw Error("basis entries look like h:b");
        b.pairs.emplace_back(static_cast<std::uint32_t>(std::stoul(parts[0])), static_cast<std::uint8_t>(std::stoul(parts[1]) & 1U));
    }
    return b;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal factor graphs: constructions, gap-amplifying reductions and long-code tools"};
    app.require_subcommand(1);
    Run run;
    std::uint64_t seed = 0;
    auto common = [&](CLI::App* sub) {
        sub->add_option("--out", run.out_dir, "Output directory")->capture_default_str();
        sub->add_flag("--record-time", run.record_time, "Write wall time into the manifest (breaks byte-identity)");
    };
    auto seeded = [&](CLI::App* sub) { sub->add_option("--seed", seed, "Global 64-bit seed")->capture_default_str(); };

    // build-universal
    auto* bu = app.add_subcommand("build-universal", "Emit a universal factor graph");
    std::string kind = "poly";
    std::uint32_t n = 2, m = 2;
    bu->add_option("--kind", kind)->check(CLI::IsMember({"poly", "circuit"}))->capture_default_str();
    bu->add_option("-n", n, "Variables")->capture_default_str();
    bu->add_option("-m", m, "Clauses (circuit kind)")->capture_default_str();
    common(bu);

    // embed
    auto* em = app.add_subcommand("embed", "Polarity template placing a 3CNF on the poly-universal graph");
    std::string source;
    std::uint32_t universal_n = 0;
    em->add_option("--universal-n", universal_n, "Size of the universal graph (default: the formula's n)");
    em->add_option("source", source)->required();
    common(em);

    // instantiate
    auto* in = app.add_subcommand("instantiate", "Instantiate a circuit template with a 3CNF");
    std::string template_path;
    in->add_option("--template", template_path)->required();
    in->add_option("--source", source)->required();
    common(in);

    // sparsify
    auto* sp = app.add_subcommand("sparsify", "Split a 3CNF into sparse formulas whose disjunction is equisatisfiable");
    std::string epsilon = "3/10";
    sp->add_option("--epsilon", epsilon)->capture_default_str();
    sp->add_option("source", source)->required();
    common(sp);

    // amplify
    auto* am = app.add_subcommand("amplify", "Iterate the gap-doubling reduction");
    std::uint32_t rounds = 1, t = 1, d = 3;
    std::string mode = "sample:64";
    bool emit_hypergraph = false;
    am->add_option("--rounds", rounds)->capture_default_str();
    am->add_option("--t", t)->capture_default_str();
    am->add_option("--d", d, "Base expander degree")->capture_default_str();
    am->add_option("--mode", mode, "exhaustive or sample:N")->capture_default_str();
    am->add_flag("--emit-hypergraph", emit_hypergraph, "Also write each round's rank-4 hypergraph as JSON");
    am->add_option("source", source)->required();
    common(am);
    seeded(am);

    // fold
    auto* fo = app.add_subcommand("fold", "Folded virtual table of a stored long-code table");
    std::string input, basis_spec;
    std::int64_t point = -1;
    fo->add_option("--input", input, "Stored table blob");
    fo->add_option("--point", point, "Start from the long code of this point instead");
    fo->add_option("-n", n, "Domain bits when --point is used")->capture_default_str();
    fo->add_option("--basis", basis_spec, "Folding pairs h:b,h:b (truth-table ids)");
    common(fo);

    // verify-longcode
    auto* vl = app.add_subcommand("verify-longcode", "Linearity and long-code distances of a table");
    std::string delta = "1/4";
    vl->add_option("--input", input)->required();
    vl->add_option("--delta", delta)->capture_default_str();
    common(vl);

    // build-verifier
    auto* bv = app.add_subcommand("build-verifier", "Inner-verifier 3CNF for a 1-restricted rank <= 4 hypergraph");
    std::uint32_t samples = 8;
    bv->add_option("--input", input, "Hypergraph JSON")->required();
    bv->add_option("--samples", samples)->capture_default_str();
    common(bv);
    seeded(bv);

    // eksat
    auto* ek = app.add_subcommand("eksat", "max-E3SAT to max-EkSAT mixture");
    std::uint32_t k = 4;
    std::string gamma = "1/16";
    bool do_unweight = false, tight = false;
    ek->add_option("--k", k)->capture_default_str();
    ek->add_option("--gamma", gamma)->capture_default_str();
    ek->add_option("--epsilon", epsilon)->capture_default_str();
    ek->add_flag("--unweight", do_unweight);
    ek->add_flag("--tight", tight, "Require 2^q >= (1-eps)/eps (1/(8 gamma) - 1)");
    ek->add_option("source", source)->required();
    common(ek);

    // reduce
    auto* re = app.add_subcommand("reduce", "Run the 3SAT -> NAE4 -> NAE3 -> 2LIN chain");
    std::string chain = "3sat,nae4,nae3,lin2";
    re->add_option("--chain", chain)->capture_default_str();
    re->add_option("source", source)->required();
    common(re);

    // unsat
    auto* un = app.add_subcommand("unsat", "Exact UNSAT by enumeration (cap from UFG_ORACLE_CAP)");
    un->add_option("source", source, "CNF file or hypergraph .json")->required();
    common(un);

    // suite
    auto* su = app.add_subcommand("suite", "Factor-graph-preservation suite");
    std::string pass = "all";
    std::size_t trials = 16;
    su->add_option("--pass", pass, "Pass name or 'all' (negative controls run only by name)")->capture_default_str();
    su->add_option("--trials", trials)->capture_default_str();
    common(su);
    seeded(su);

    CLI11_PARSE(app, argc, argv);

    try {
        const std::string name = app.get_subcommands().front()->get_name();
        run.manifest = Manifest(name);
        int status = 0;

        if (name == "build-universal") {
            run.manifest.param("kind", kind).param("n", n);
            if (kind == "poly") {
                auto u = build_poly_universal(n);
                run.write("universal.fgraph", emit_fgraph(u.fg));
                run.manifest.set("variables", u.fg.n).set("clauses", u.fg.slots.size());
            } else {
                run.manifest.param("m", m);
                auto c = build_consistency_circuit(n, m);
                auto tp = circuit_to_3cnf(c);
                run.write("template.json", template_to_json(tp).dump(1) + "\n");
                run.write("universal.fgraph", emit_fgraph(tp.fg));
                run.manifest.set("wires", c.wire_count).set("variables", tp.fg.n).set("clauses", tp.fg.slots.size());
            }
        } else if (name == "embed") {
            auto f = parse_cnf(read_file(source));
            auto u = build_poly_universal(universal_n ? universal_n : f.n);
            auto tp = embed_poly(u, f);
            run.manifest.param("source", source).param("universal_n", u.n);
            run.write("universal.fgraph", emit_fgraph(u.fg));
            run.write("embed.template", emit_template(tp, &u.fg));
            run.write("embedded.cnf", emit_cnf(apply_polarities(u.fg, tp)));
        } else if (name == "instantiate") {
            auto tp = template_from_json(nlohmann::json::parse(read_file(template_path)));
            auto f = parse_cnf(read_file(source));
            run.manifest.param("template", template_path).param("source", source);
            auto out = instantiate(tp, f);
            run.write("instance.cnf", emit_cnf(out));
            run.manifest.set("variables", out.n).set("clauses", out.clauses.size());
        } else if (name == "sparsify") {
            auto f = parse_cnf(read_file(source));
            SparsifyParams p;
            p.epsilon = rational_arg(epsilon);
            auto r = sparsify(f, p);
            run.manifest.param("source", source).param("epsilon", r.params.epsilon).set("alpha", r.params.alpha);
            run.manifest.set("theta", r.params.theta).set("branches", r.branches.size());
            std::size_t widest = 0;
            for (std::size_t i = 0; i < r.branches.size(); ++i) {
                widest = std::max(widest, r.branches[i].clauses.size());
                run.write("branch_" + padded(i) + ".cnf", emit_cnf(r.branches[i]));
            }
            const double eps = to_double(r.params.epsilon);
            run.manifest.set("max_branch_clauses", widest)
                .set("branch_bound_log2", std::pow(double(f.n), 1.0 - eps))
                .set("clause_bound_per_variable", r.params.alpha);
        } else if (name == "amplify") {
            auto f = parse_cnf(read_file(source));
            FgprParams p;
            p.d = d;
            p.t = t;
            p.seed = seed;
            if (mode == "exhaustive") {
                p.exhaustive = true;
            } else if (mode.rfind("sample:", 0) == 0) {
                p.walk_samples = p.tuple_samples = std::stoull(mode.substr(7));
            } else {
                throw Error("mode must be 'exhaustive' or 'sample:N'");
            }
            run.manifest.param("source", source).param("rounds", rounds).param("t", t).param("d", d).mode(mode).seed("global", seed);
            auto res = amplify(f, rounds, p);
            nlohmann::ordered_json rows = nlohmann::ordered_json::array();
            CnfFormula cur = f;
            // Gap-doubling factor 2 against the cap xi = 1/(2 delta); bookkeeping only.
            const Rational factor = 2, xi = make_rational(1, 4);
            for (std::size_t i = 0; i < res.rounds.size(); ++i) {
                const auto& r = res.rounds[i];
                nlohmann::ordered_json row;
                row["round"] = i;
                row["seeds"] = {{"round", res.round_seeds[i]},
                                {"regularize", r.seed_regularize},
                                {"expanderize", r.seed_expander},
                                {"power", r.seed_walks},
                                {"alphabet", r.seed_tuples}};
                nlohmann::ordered_json sizes = nlohmann::ordered_json::array();
                for (const auto& s : stage_sizes(cur, r)) sizes.push_back({{"stage", s.stage}, {"vertices", s.vertices}, {"constraints", s.constraints}});
                row["sizes"] = sizes;
                row["expander_certificate"] = to_string(r.expanded.expander.eta);
                row["null_walks"] = r.powered.null_walks;
                row["unsat_in"] = to_json_value(r.unsat_in);
                row["unsat_out"] = to_json_value(r.unsat_out);
                if (r.unsat_in) row["claimed_unsat_floor"] = to_string(factor * std::min(*r.unsat_in, xi));
                if (r.unsat_in && r.unsat_out && *r.unsat_in > 0) row["measured_ratio"] = to_string(*r.unsat_out / *r.unsat_in);
                rows.push_back(row);
                if (emit_hypergraph) run.write("round_" + padded(i, 2) + "_alphabet.json", hypergraph_to_json(r.reduced.graph).dump() + "\n");
                cur = r.formula.formula;
            }
            run.manifest.set("rounds", rows);
            run.write("amplified.cnf", emit_cnf(res.output));
        } else if (name == "fold") {
            LongCodeBlob b;
            if (!input.empty()) {
                b = parse_blob(read_file(input));
            } else if (point >= 0) {
                b = LongCodeBlob{n, {}, encode_long_code(n, static_cast<std::uint32_t>(point)).table};
            } else {
                throw Error("fold needs --input or --point");
            }
            auto basis = parse_basis(b.n, basis_spec);
            Folding folding(basis);
            run.manifest.param("input", input).param("point", point).param("n", b.n).param("basis", basis_spec);
            LongCodeBlob out{b.n, basis.pairs, fold_table(b.table, folding)};
            run.write("folded.blob", emit_blob(out));
            run.manifest.set("representatives", folding.representatives().size());
        } else if (name == "verify-longcode") {
            auto b = parse_blob(read_file(input));
            const Rational dl = rational_arg(delta);
            run.manifest.param("input", input).param("delta", dl);
            const auto failure = linearity_failure(b.table);
            const auto [near_affine, dist_affine] = nearest_in_code(b.table, folded_affine_code(b.n));
            std::vector<std::vector<std::uint8_t>> lc;
            for (const auto& w : all_long_codes(b.n)) lc.push_back(w.table);
            const auto [near_lc, dist_lc] = nearest_in_code(b.table, lc);
            nlohmann::ordered_json rep;
            rep["n"] = b.n;
            rep["linearity_failure"] = to_string(failure);
            rep["distance_to_folded_affine"] = to_string(dist_affine);
            rep["delta_bound"] = to_string(delta_lower_bound(dist_affine));
            rep["failure_meets_bound"] = failure >= delta_lower_bound(dist_affine);
            rep["distance_to_long_code"] = to_string(dist_lc);
            rep["long_codes_within_half_minus_delta"] = long_codes_within(b.table, b.n, make_rational(1, 2) - dl);
            run.write("longcode_report.json", rep.dump(2) + "\n");
            std::cout << rep.dump(2) << "\n";
        } else if (name == "build-verifier") {
            auto h = hypergraph_from_json(nlohmann::json::parse(read_file(input)));
            VerifierParams p;
            p.seed = seed;
            p.samples = samples;
            auto r = build_verifier_formula(h, p);
            std::size_t sampled = 0, dependent = 0;
            for (auto s : r.sampled) sampled += s;
            for (auto s : r.dependent) dependent += s;
            run.manifest.param("input", input).param("samples", samples).seed("global", seed);
            run.manifest.mode(sampled ? "sample" : "exhaustive")
                .set("sampled_constraints", sampled)
                .set("dependent_constraints", dependent)
                .set("test_counts", r.test_counts)
                .set("variables", r.formula.n)
                .set("clauses", r.formula.clauses.size());
            run.write("verifier.cnf", emit_cnf(r.formula));
        } else if (name == "eksat") {
            auto f = parse_cnf(read_file(source));
            EkSatParams p;
            p.k = k;
            p.gamma = rational_arg(gamma);
            p.epsilon = rational_arg(epsilon);
            p.require_tight = tight;
            auto r = eksat_reduce(f, p);
            run.manifest.param("source", source).param("k", k).param("gamma", p.gamma).param("epsilon", p.epsilon).param("unweight", do_unweight);
            run.manifest.set("total_weight", r.formula.total_weight());
            if (do_unweight) {
                auto u = unweight(r, p.gamma);
                run.manifest.set("gamma_used", u.gamma_used).set("copies", u.copies);
                run.write("eksat.cnf", emit_cnf(u.formula));
            } else {
                run.write("eksat.cnf", emit_cnf(r.formula));
            }
        } else if (name == "reduce") {
            auto f = parse_cnf(read_file(source));
            run.manifest.param("source", source).param("chain", chain);
            auto out = run_chain(f, split(chain, ','));
            run.write("reduced.cnf", emit_cnf(out));
        } else if (name == "unsat") {
            run.manifest.param("source", source).set("oracle_cap", oracle_cap());
            const std::string text = read_file(source);
            Rational u = fs::path(source).extension() == ".json" ? brute_force_unsat(hypergraph_from_json(nlohmann::json::parse(text)))
                                                                 : brute_force_unsat(parse_cnf(text));
            run.manifest.set("unsat", u);
            std::cout << "UNSAT " << to_string(u) << "\n";
        } else if (name == "suite") {
            run.manifest.param("pass", pass).param("trials", trials).seed("global", seed);
            std::vector<SuitePass> passes;
            for (auto& p : suite_registry())
                if ((pass == "all" && p.name != "broken-leak") || p.name == pass) passes.push_back(p);
            if (passes.empty()) throw Error("unknown pass '" + pass + "'");
            std::string report;
            nlohmann::ordered_json results = nlohmann::ordered_json::object();
            for (const auto& p : passes) {
                auto r = run_fgpr_suite(p, trials, seed);
                report += r.text();
                results[p.name] = r.passed();
                if (!r.passed()) status = 1;
            }
            run.manifest.set("results", results);
            run.write("suite_report.txt", report);
            std::cout << report;
        }
        run.finish();
        return status;
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 2;
    }
}
