#include "ctxlab/json_io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

namespace ctxlab {

using nlohmann::json;
using nlohmann::ordered_json;

nlohmann::ordered_json scenario_to_json(const Scenario& sc) {
    ordered_json j;
    j["d"] = sc.d();
    j["vertices"] = sc.vertex_ids();
    j["edges"] = ordered_json::array();
    for (const auto& e : sc.edges()) {
        ordered_json je;
        je["id"] = e.id;
        je["source"] = sc.vertex_id(e.source);
        je["target"] = sc.vertex_id(e.target);
        j["edges"].push_back(je);
    }
    return j;
}

namespace {

const json& field(const json& j, const char* name) {
    if (!j.is_object() || !j.contains(name))
        throw ParseError(std::string("missing field \"") + name + "\"");
    return j.at(name);
}

int int_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_number_integer()) throw ParseError(std::string("field \"") + name + "\" must be an integer");
    return v.get<int>();
}

std::string str_field(const json& j, const char* name) {
    const json& v = field(j, name);
    if (!v.is_string()) throw ParseError(std::string("field \"") + name + "\" must be a string");
    return v.get<std::string>();
}

Scalar parse_entry(const json& v, Kind kind) {
    if (kind == Kind::boolean) {
        if (v.is_number_integer() && (v.get<int>() == 0 || v.get<int>() == 1))
            return Scalar::boolean(v.get<int>() == 1);
        throw ParseError("boolean entries must be 0 or 1");
    }
    if (v.is_string()) return Scalar::parse_rational(v.get<std::string>());
    if (v.is_number_integer() && v.get<long>() >= 0) return Scalar::rational(v.get<long>(), 1);
    throw ParseError("rational entries must be \"num/den\" strings");
}

ordered_json entry_to_json(const Scalar& s) {
    if (s.kind() == Kind::boolean) return ordered_json(s.is_zero() ? 0 : 1);
    return ordered_json(s.to_string());
}

Dist parse_matrix(const json& rows, Kind kind, int d) {
    if (!rows.is_array() || static_cast<int>(rows.size()) != d)
        throw ParseError("edge matrix must have d rows");
    Dist m(kind, d);
    for (int a = 0; a < d; ++a) {
        if (!rows[a].is_array() || static_cast<int>(rows[a].size()) != d)
            throw ParseError("edge matrix row must have d entries");
        for (int b = 0; b < d; ++b) m.accumulate(Outcome{a, b}, parse_entry(rows[a][b], kind));
    }
    return m;
}

ordered_json matrix_to_json(const Dist& m, int d) {
    ordered_json rows = ordered_json::array();
    for (int a = 0; a < d; ++a) {
        ordered_json row = ordered_json::array();
        for (int b = 0; b < d; ++b) row.push_back(entry_to_json(m.at(Outcome{a, b})));
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

Scenario scenario_from_json(const json& j) {
    const int d = int_field(j, "d");
    const json& jv = field(j, "vertices");
    if (!jv.is_array()) throw ParseError("\"vertices\" must be an array of ids");
    std::vector<std::string> vertices;
    for (const auto& v : jv) {
        if (!v.is_string()) throw ParseError("vertex ids must be strings");
        vertices.push_back(v.get<std::string>());
    }
    const json& je = field(j, "edges");
    if (!je.is_array()) throw ParseError("\"edges\" must be an array");
    std::vector<std::tuple<std::string, std::string, std::string>> edges;
    for (const auto& e : je)
        edges.emplace_back(str_field(e, "id"), str_field(e, "source"), str_field(e, "target"));
    try {
        return {d, std::move(vertices), std::move(edges)};
    } catch (const PreconditionError& err) {
        throw ParseError(std::string("invalid scenario: ") + err.what());
    }
}

ordered_json dist_to_json(const SimpDist& p) {
    const Scenario& sc = p.scenario();
    ordered_json j;
    j["scenario"] = scenario_to_json(sc);
    j["kind"] = kind_name(p.kind());
    j["edges"] = ordered_json::object();
    for (const auto& e : sc.edges())
        j["edges"][e.id] = matrix_to_json(p.matrix(sc.edge_index(e.id)), sc.d());
    if (!p.isolated_marginals().empty()) {
        j["vertices"] = ordered_json::object();
        for (const auto& [v, m] : p.isolated_marginals()) {
            ordered_json row = ordered_json::array();
            for (int a = 0; a < sc.d(); ++a) row.push_back(entry_to_json(m.at(Outcome{a})));
            j["vertices"][sc.vertex_id(v)] = row;
        }
    }
    return j;
}

SimpDist dist_from_json(const json& j, const std::string& base_dir) {
    const json& sref = field(j, "scenario");
    std::shared_ptr<const Scenario> sc;
    if (sref.is_string()) {
        const auto path = std::filesystem::path(base_dir) / sref.get<std::string>();
        sc = std::make_shared<Scenario>(scenario_from_json(load_json_file(path.string())));
    } else {
        sc = std::make_shared<Scenario>(scenario_from_json(sref));
    }

    const std::string kind_str = str_field(j, "kind");
    Kind kind;
    if (kind_str == "rational") kind = Kind::rational;
    else if (kind_str == "boolean") kind = Kind::boolean;
    else throw ParseError("kind must be \"rational\" or \"boolean\"");

    const json& je = field(j, "edges");
    if (!je.is_object()) throw ParseError("\"edges\" must map edge ids to matrices");
    std::vector<Dist> mats;
    for (const auto& e : sc->edges()) {
        if (!je.contains(e.id)) throw ParseError("missing matrix for edge \"" + e.id + "\"");
        mats.push_back(parse_matrix(je.at(e.id), kind, sc->d()));
    }
    if (je.size() != static_cast<size_t>(sc->num_edges()))
        throw ParseError("\"edges\" mentions an edge id not in the scenario");

    std::map<int, Dist> iso;
    if (j.contains("vertices")) {
        const json& jm = j.at("vertices");
        if (!jm.is_object()) throw ParseError("\"vertices\" must map vertex ids to entry arrays");
        for (auto it = jm.begin(); it != jm.end(); ++it) {
            int v;
            try {
                v = sc->vertex_index(it.key());
            } catch (const PreconditionError&) {
                throw ParseError("unknown vertex id \"" + it.key() + "\" in \"vertices\"");
            }
            if (!it.value().is_array() || static_cast<int>(it.value().size()) != sc->d())
                throw ParseError("vertex marginal must have d entries");
            Dist m(kind, sc->d());
            for (int a = 0; a < sc->d(); ++a) m.accumulate(Outcome{a}, parse_entry(it.value()[a], kind));
            iso.emplace(v, std::move(m));
        }
    }
    try {
        return {std::move(sc), kind, std::move(mats), std::move(iso)};
    } catch (const PreconditionError& err) {
        throw ParseError(std::string("invalid distribution: ") + err.what());
    }
}

std::string canonical_text(const ordered_json& j) { return j.dump(2) + "\n"; }

std::string fnv1a_digest(const std::string& text) {
    uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

Scenario load_scenario_file(const std::string& path) {
    const json j = load_json_file(path);
    try {
        return scenario_from_json(j);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

SimpDist load_dist_file(const std::string& path) {
    const json j = load_json_file(path);
    try {
        return dist_from_json(j, std::filesystem::path(path).parent_path().string());
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    out << text;
}

}  // namespace ctxlab
