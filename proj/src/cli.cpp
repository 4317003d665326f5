#include "ctxlab/cli.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <random>
#include <sstream>

#include <CLI11.hpp>

#include "ctxlab/contextuality.hpp"
#include "ctxlab/homotopy.hpp"
#include "ctxlab/json_io.hpp"
#include "ctxlab/logiccat.hpp"

namespace ctxlab {

namespace {

using nlohmann::ordered_json;

ordered_json labeling_json(const Scenario& sc, const OutcomeLabeling& phi) {
    ordered_json j = ordered_json::object();
    for (int v = 0; v < sc.num_vertices(); ++v) j[sc.vertex_id(v)] = phi[v];
    return j;
}

ordered_json circle_json(const Scenario& sc, const Circle& c) {
    ordered_json j = ordered_json::array();
    for (const Step& s : c.steps()) {
        ordered_json js;
        js["edge"] = sc.edge(s.edge).id;
        js["forward"] = s.forward;
        j.push_back(js);
    }
    return j;
}

ordered_json witness_json(const Scenario& sc, const NCWitness& w) {
    ordered_json j = ordered_json::array();
    for (const auto& [phi, s] : w.weights) {
        ordered_json jw;
        jw["labeling"] = labeling_json(sc, phi);
        jw["weight"] = s.to_string();
        j.push_back(jw);
    }
    return j;
}

ordered_json classify_json(const Scenario& sc, const ClassifyReport& r) {
    ordered_json j;
    j["deterministic"] = r.deterministic;
    j["vertex"] = r.vertex ? ordered_json(*r.vertex) : ordered_json(nullptr);
    j["contextual"] = r.contextual ? ordered_json(*r.contextual) : ordered_json(nullptr);
    j["strongly_contextual"] = r.strongly_contextual;
    j["support_example"] =
        r.support_example ? labeling_json(sc, *r.support_example) : ordered_json(nullptr);
    j["sc_circle"] = r.sc_circle ? circle_json(sc, *r.sc_circle) : ordered_json(nullptr);
    j["nc_witness"] = r.nc_witness ? witness_json(sc, *r.nc_witness) : ordered_json(nullptr);
    return j;
}

const char* op_name(ReductionStep::Op op) {
    switch (op) {
        case ReductionStep::Op::drop_boundary_extendable: return "drop_boundary_extendable";
        case ReductionStep::Op::normalize_antidiagonal: return "normalize_antidiagonal";
        case ReductionStep::Op::collapse_diagonal: return "collapse_diagonal";
        case ReductionStep::Op::drop_identity_loop: return "drop_identity_loop";
        case ReductionStep::Op::antidiagonal_loop: return "antidiagonal_loop";
        case ReductionStep::Op::endomorphism_pair: return "endomorphism_pair";
        case ReductionStep::Op::nonempty_support: return "nonempty_support";
    }
    return "?";
}

ordered_json reduction_json(const ReductionTrace& t) {
    ordered_json j;
    j["steps"] = ordered_json::array();
    for (const auto& s : t.steps) {
        ordered_json js;
        js["op"] = op_name(s.op);
        if (!s.edge.empty()) js["edge"] = s.edge;
        if (!s.vertex.empty()) js["vertex"] = s.vertex;
        j["steps"].push_back(js);
    }
    j["strongly_contextual"] = t.strongly_contextual;
    return j;
}

ordered_json category_json(const LogicalCategory& cat) {
    ordered_json j;
    j["objects"] = cat.objects();
    j["hom"] = ordered_json::array();
    for (int x = 0; x < cat.num_objects(); ++x)
        for (int y = 0; y < cat.num_objects(); ++y) {
            ordered_json h;
            h["from"] = cat.objects()[x];
            h["to"] = cat.objects()[y];
            h["matrices"] = ordered_json::array();
            for (const BoolMatrix& m : cat.hom(x, y)) {
                ordered_json jm;
                jm["rows"] = m.rows();
                if (!m.name().empty()) jm["name"] = m.name();
                h["matrices"].push_back(jm);
            }
            j["hom"].push_back(h);
        }
    j["support"] = ordered_json::array();
    for (const auto& phi : category_support(cat)) {
        ordered_json jl = ordered_json::object();
        for (int v = 0; v < cat.num_objects(); ++v) jl[cat.objects()[v]] = phi[v];
        j["support"].push_back(jl);
    }
    return j;
}

ordered_json homotopy_json(const SimpDist& p) {
    const Scenario& sc = p.scenario();
    const NerveLabeling phi = nerve_labeling_of(p);
    ordered_json j;
    j["nerve_labels"] = ordered_json::object();
    for (int e = 0; e < sc.num_edges(); ++e) j["nerve_labels"][sc.edge(e).id] = phi[e];
    const NullHomotopy nh = is_null_homotopic(sc, phi);
    j["null_homotopic"] = nh.null_homotopic;
    if (nh.potential) {
        ordered_json jp = ordered_json::object();
        for (int v = 0; v < sc.num_vertices(); ++v) jp[sc.vertex_id(v)] = (*nh.potential)[v];
        j["potential"] = jp;
    } else {
        j["potential"] = nullptr;
    }
    return j;
}

ordered_json analyze_one(const std::string& path, long cap, bool with_category) {
    const SimpDist p = load_dist_file(path);
    const Scenario& sc = p.scenario();
    const auto t0 = std::chrono::steady_clock::now();

    ordered_json j;
    j["input"] = path;
    j["digest"] = fnv1a_digest(canonical_text(dist_to_json(p)));
    j["d"] = sc.d();
    j["kind"] = kind_name(p.kind());
    j["vertices"] = sc.num_vertices();
    j["edges"] = sc.num_edges();
    j["cap"] = cap;
    j["classify"] = classify_json(sc, classify(p, cap));
    if (p.kind() == Kind::boolean && sc.d() == 2) j["reduction"] = reduction_json(reduce_and_decide(p));
    if (p.is_deterministic()) j["homotopy"] = homotopy_json(p);
    if (with_category) {
        const SimpDist q = p.kind() == Kind::boolean ? p : boolean_projection(p);
        j["category"] = category_json(build_category(q));
    }
    const auto t1 = std::chrono::steady_clock::now();
    j["elapsed_ms"] =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    return j;
}

std::shared_ptr<const Scenario> cycle_scenario(int n, int d) {
    if (n < 1) throw ParseError("cycle length must be at least 1");
    std::vector<std::string> vs;
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (int i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
    for (int i = 0; i < n; ++i)
        es.emplace_back("e" + std::to_string(i), "v" + std::to_string(i),
                        "v" + std::to_string((i + 1) % n));
    return std::make_shared<Scenario>(d, std::move(vs), std::move(es));
}

std::vector<int> parse_int_list(const std::string& csv) {
    std::vector<int> r;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        try {
            size_t used = 0;
            const int v = std::stoi(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            r.push_back(v);
        } catch (const std::exception&) {
            throw ParseError("not an integer list: " + csv);
        }
    }
    return r;
}

std::set<std::string> parse_id_set(const std::string& csv) {
    std::set<std::string> r;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) r.insert(tok);
    return r;
}

// The full cycle of a circle scenario, as a forward walk; requires a single
// basis circle covering every edge.
Circle full_circle(const Scenario& sc) {
    const auto basis = cycle_basis(sc);
    if (basis.size() != 1 || basis[0].length() != sc.num_edges())
        throw err_not_subcomplex("the scenario is not a single circle");
    return basis[0];
}

// Entrywise convex combination v p + (1 - v) q of two distributions on one
// scenario; consistency is preserved linearly.
SimpDist convex_combo(const SimpDist& p, const SimpDist& q, const Scalar& v) {
    const Scalar one_minus = Scalar::rational(BigRat(1) - v.value());
    const Scenario& sc = p.scenario();
    std::vector<Dist> mats;
    for (int e = 0; e < sc.num_edges(); ++e) {
        Dist m(Kind::rational, sc.d());
        for (auto& [x, s] : p.matrix(e).weights()) m.accumulate(x, s * v);
        for (auto& [x, s] : q.matrix(e).weights()) m.accumulate(x, s * one_minus);
        mats.push_back(std::move(m));
    }
    std::map<int, Dist> iso;
    for (auto& [vtx, m] : p.isolated_marginals()) {
        Dist r(Kind::rational, sc.d());
        for (auto& [x, s] : m.weights()) r.accumulate(x, s * v);
        for (auto& [x, s] : q.isolated_marginals().at(vtx).weights()) r.accumulate(x, s * one_minus);
        iso.emplace(vtx, std::move(r));
    }
    return {p.scenario_ptr(), Kind::rational, std::move(mats), std::move(iso)};
}

SimpDist generate_random(std::shared_ptr<const Scenario> sc, uint64_t seed, long max_den) {
    std::mt19937_64 rng(seed);
    auto rnd = [&](long n) { return static_cast<long>(rng() % static_cast<uint64_t>(n)); };
    const int n = sc->num_vertices(), d = sc->d();

    // A mixture of deterministic labelings with bounded random weights.
    const int k = 1 + static_cast<int>(rnd(4));
    std::vector<std::pair<OutcomeLabeling, long>> parts;
    long total = 0;
    for (int i = 0; i < k; ++i) {
        OutcomeLabeling phi(n);
        for (int v = 0; v < n; ++v) phi[v] = static_cast<int>(rnd(d));
        parts.emplace_back(phi, 1 + rnd(max_den));
        total += parts.back().second;
    }
    NCWitness w;
    for (auto& [phi, a] : parts) w.weights.emplace_back(phi, Scalar::rational(a, total));
    const SimpDist mix = deterministic_mixture(sc, w);
    if (sc->num_edges() == 0) return mix;

    // Blend with a gluing-section image of random edge labels; for labels
    // with a nonvanishing circle invariant this side is itself strongly
    // contextual, so the family covers both verdicts.
    std::map<std::string, Dist> q;
    for (const auto& e : sc->edges())
        q.emplace(e.id, Dist::delta(Kind::rational, d, Outcome{static_cast<int>(rnd(d))}));
    const SimpDist tee = section_T(sc, q);
    const long a = 1 + rnd(max_den), b = 1 + rnd(max_den);
    return convex_combo(tee, mix, Scalar::rational(a, a + b));
}

struct ClassifyFlags {
    bool det, sc;
    std::optional<bool> vtx, ctx;
    bool operator==(const ClassifyFlags&) const = default;
};
ClassifyFlags flags_of(const ClassifyReport& r) {
    return {r.deterministic, r.strongly_contextual, r.vertex, r.contextual};
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact deciders for distributions on edge scenarios"};
    app.require_subcommand(1);

    std::string input, batch, out_path, scenario_path, labels_csv, minus_csv, labels_file;
    long cap = default_labeling_cap, max_den = 4;
    int cycle_n = 4, d = 2;
    uint64_t seed = 0;
    bool verbose = false, with_category = false;
    std::string gen_kind, collapse_edge_id;

    auto* analyze = app.add_subcommand("analyze", "classify a distribution file");
    analyze->add_option("input", input, "distribution JSON file");
    analyze->add_option("--cap", cap, "labeling cap for the mixture test");
    analyze->add_flag("--category", with_category, "include the logical category");
    analyze->add_option("--batch", batch, "analyze every .json file in a directory");
    analyze->add_flag("--verbose", verbose, "human summary on stderr");

    auto* generate = app.add_subcommand("generate", "write a distribution file");
    generate->add_option("kind", gen_kind, "pr-box | deterministic | section-t | random")
        ->required();
    generate->add_option("--out", out_path, "output file (default: stdout)");
    generate->add_option("--scenario", scenario_path, "scenario JSON file");
    generate->add_option("--cycle", cycle_n, "use a cycle scenario of this length");
    generate->add_option("--d", d, "outcome modulus for built-in scenarios");
    generate->add_option("--labels", labels_csv, "comma-separated outcome labels");
    generate->add_option("--minus", minus_csv, "comma-separated antidiagonal edge ids");
    generate->add_option("--seed", seed, "random seed");
    generate->add_option("--max-den", max_den, "bound on random weight parts");
    generate->add_flag("--verbose", verbose, "human summary on stderr");

    auto* face = app.add_subcommand("face", "face structure of a deterministic fiber");
    face->add_option("scenario", input, "scenario JSON file")->required();
    face->add_option("labels", labels_file, "labels JSON file {\"labels\": {edge-id: int}}")
        ->required();
    face->add_flag("--verbose", verbose, "human summary on stderr");

    auto* collapse = app.add_subcommand("collapse", "collapse an edge and transport");
    collapse->add_option("input", input, "distribution JSON file")->required();
    collapse->add_option("edge", collapse_edge_id, "edge id to collapse")->required();
    collapse->add_option("--out", out_path, "write <out>.scenario.json and <out>.dist.json");
    collapse->add_option("--cap", cap, "labeling cap for the mixture test");
    collapse->add_flag("--verbose", verbose, "human summary on stderr");

    auto* category = app.add_subcommand("category", "logical category of a distribution");
    category->add_option("input", input, "distribution JSON file")->required();
    category->add_flag("--verbose", verbose, "human summary on stderr");

    std::vector<const char*> argv{"ctxlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(analyze)) {
            if (batch.empty() && input.empty())
                throw ParseError("analyze needs an input file or --batch DIR");
            if (!batch.empty()) {
                std::vector<std::string> files;
                for (const auto& entry : std::filesystem::directory_iterator(batch))
                    if (entry.path().extension() == ".json") files.push_back(entry.path().string());
                std::sort(files.begin(), files.end());
                ordered_json arr = ordered_json::array();
                int worst = 0;
                for (const auto& f : files) {
                    try {
                        arr.push_back(analyze_one(f, cap, with_category));
                    } catch (const std::exception& e) {
                        ordered_json jf;
                        jf["input"] = f;
                        jf["error"] = e.what();
                        arr.push_back(jf);
                        const int cls = dynamic_cast<const CapExceeded*>(&e)          ? 4
                                        : dynamic_cast<const PreconditionError*>(&e) ? 3
                                                                                     : 2;
                        worst = std::max(worst, cls);
                    }
                }
                out << canonical_text(arr);
                return worst;
            }
            const ordered_json j = analyze_one(input, cap, with_category);
            out << canonical_text(j);
            if (verbose)
                err << input << ": SC=" << j["classify"]["strongly_contextual"].dump()
                    << " contextual=" << j["classify"]["contextual"].dump() << "\n";
            return 0;
        }

        if (app.got_subcommand(generate)) {
            std::shared_ptr<const Scenario> sc;
            if (!scenario_path.empty())
                sc = std::make_shared<Scenario>(load_scenario_file(scenario_path));
            else
                sc = cycle_scenario(cycle_n, d);

            SimpDist p = [&]() -> SimpDist {
                if (gen_kind == "pr-box") {
                    const Circle c = full_circle(*sc);
                    std::set<std::string> minus = parse_id_set(minus_csv);
                    if (minus.empty()) minus.insert(sc->edge(c.steps().back().edge).id);
                    return pr_box(sc, c, minus);
                }
                if (gen_kind == "deterministic") {
                    const std::vector<int> labels = parse_int_list(labels_csv);
                    if (static_cast<int>(labels.size()) != sc->num_vertices())
                        throw ParseError("--labels must list one value per vertex");
                    return deterministic(sc, labels, Kind::rational);
                }
                if (gen_kind == "section-t") {
                    const std::vector<int> labels = parse_int_list(labels_csv);
                    if (static_cast<int>(labels.size()) != sc->num_edges())
                        throw ParseError("--labels must list one value per edge");
                    std::map<std::string, Dist> q;
                    for (int e = 0; e < sc->num_edges(); ++e)
                        q.emplace(sc->edge(e).id,
                                  Dist::delta(Kind::rational, sc->d(), Outcome{labels[e]}));
                    return section_T(sc, q);
                }
                if (gen_kind == "random") return generate_random(sc, seed, max_den);
                throw ParseError("unknown generate kind: " + gen_kind);
            }();

            const std::string text = canonical_text(dist_to_json(p));
            if (out_path.empty()) {
                out << text;
            } else {
                write_text_file(out_path, text);
                ordered_json j;
                j["written"] = out_path;
                j["kind"] = gen_kind;
                j["digest"] = fnv1a_digest(text);
                if (gen_kind == "random") j["seed"] = seed;
                out << canonical_text(j);
            }
            if (verbose) err << "generated " << gen_kind << " (seed=" << seed << ")\n";
            return 0;
        }

        if (app.got_subcommand(face)) {
            const Scenario sc = load_scenario_file(input);
            if (!is_connected(sc)) throw err_not_connected("the face report needs a connected scenario");
            const nlohmann::json jl = load_json_file(labels_file);
            if (!jl.contains("labels") || !jl.at("labels").is_object())
                throw ParseError(labels_file + ": expected {\"labels\": {edge-id: int}}");
            NerveLabeling phi(sc.num_edges(), 0);
            for (auto it = jl.at("labels").begin(); it != jl.at("labels").end(); ++it) {
                if (!it.value().is_number_integer())
                    throw ParseError("label for edge \"" + it.key() + "\" must be an integer");
                phi[sc.edge_index(it.key())] =
                    ((it.value().get<int>() % sc.d()) + sc.d()) % sc.d();
            }

            const FaceStructure fs = face_structure(sc, phi);
            const NullHomotopy nh = is_null_homotopic(sc, phi);
            ordered_json j;
            j["input"] = input;
            j["labels"] = ordered_json::object();
            for (int e = 0; e < sc.num_edges(); ++e) j["labels"][sc.edge(e).id] = phi[e];
            j["subgroup_generator"] = fs.subgroup_generator;
            j["subgroup_order"] = fs.subgroup_order;
            j["orbits"] = fs.orbits;
            j["dimension"] = fs.dimension;
            j["null_homotopic"] = nh.null_homotopic;
            if (nh.potential) {
                ordered_json jp = ordered_json::object();
                for (int v = 0; v < sc.num_vertices(); ++v) jp[sc.vertex_id(v)] = (*nh.potential)[v];
                j["potential"] = jp;
            } else {
                j["potential"] = nullptr;
            }
            j["unique_sc_vertex"] = nullptr;
            if (!nh.null_homotopic && fs.subgroup_order == sc.d()) {
                try {
                    j["unique_sc_vertex"] =
                        dist_to_json(unique_sc_vertex(sc, phi));
                } catch (const PreconditionError&) {
                    // non-prime d: the face is still a point set we do not report
                }
            }
            out << canonical_text(j);
            if (verbose) err << "face dimension " << fs.dimension << "\n";
            return 0;
        }

        if (app.got_subcommand(collapse)) {
            const SimpDist p = load_dist_file(input);
            const CollapseMap cm = ctxlab::collapse_edge(p.scenario(), collapse_edge_id);
            const SimpDist q = transport_collapse(cm, p);

            const ClassifyReport ra = classify(p, cap), rb = classify(q, cap);
            const bool equal = flags_of(ra) == flags_of(rb);
            ordered_json j;
            j["input"] = input;
            j["collapsed_edge"] = collapse_edge_id;
            j["scenario"] = scenario_to_json(q.scenario());
            j["distribution"] = dist_to_json(q);
            j["flags_equal"] = equal;
            j["classify_source"] = classify_json(p.scenario(), ra);
            j["classify_collapsed"] = classify_json(q.scenario(), rb);
            if (!out_path.empty()) {
                write_text_file(out_path + ".scenario.json", canonical_text(scenario_to_json(q.scenario())));
                write_text_file(out_path + ".dist.json", canonical_text(dist_to_json(q)));
            }
            out << canonical_text(j);
            if (verbose) err << "collapsed " << collapse_edge_id << ", flags_equal=" << equal << "\n";
            if (!equal) {
                err << "classification changed across the collapse\n";
                return 3;
            }
            return 0;
        }

        if (app.got_subcommand(category)) {
            const SimpDist p = load_dist_file(input);
            const SimpDist q = p.kind() == Kind::boolean ? p : boolean_projection(p);
            out << canonical_text(category_json(build_category(q)));
            return 0;
        }
    } catch (const CapExceeded& e) {
        err << e.what() << "\n";
        return 4;
    } catch (const ParseError& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        err << e.what() << "\n";
        return 3;
    }
    return 0;
}

}  // namespace ctxlab
