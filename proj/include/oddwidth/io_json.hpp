#pragma once

#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "decomposition.hpp"
#include "ip_pipeline.hpp"

namespace oddwidth {

using nlohmann::json;

// Decomposition file:
//   {"nodes": [...], "edges": [[a,b],...], "bags": {"t": [...]},
//    "apex": {"t": [...]}, "root": t}
// Missing apex entries mean an empty apex set; "root" is optional.
inline json to_json(const OcpTreeDecomposition& d0) {
    OcpTreeDecomposition d = d0;
    d.canonicalize();
    json j;
    j["nodes"] = d.nodes;
    j["edges"] = json::array();
    for (auto [a, b] : d.edges) j["edges"].push_back({a, b});
    j["bags"] = json::object();
    j["apex"] = json::object();
    for (int t : d.nodes) {
        j["bags"][std::to_string(t)] = d.bag(t);
        j["apex"][std::to_string(t)] = d.apex.count(t) ? d.alpha(t) : VertexSet{};
    }
    if (d.root) j["root"] = *d.root;
    return j;
}

inline OcpTreeDecomposition decomposition_from_json(const json& j) {
    auto fail = [](const std::string& m) { return InvalidInput("parse-error", "decomposition: " + m); };
    try {
        if (!j.is_object()) throw fail("expected a JSON object");
        OcpTreeDecomposition d;
        for (const auto& t : j.at("nodes")) d.nodes.push_back(t.get<int>());
        for (const auto& e : j.at("edges")) {
            if (!e.is_array() || e.size() != 2) throw fail("edges must be pairs");
            d.add_edge(e[0].get<int>(), e[1].get<int>());
        }
        std::map<int, int> known;
        for (int t : d.nodes) ++known[t];
        for (auto& [t, c] : known)
            if (c > 1) throw fail("node " + std::to_string(t) + " listed twice");
        for (const auto& [key, val] : j.at("bags").items()) {
            int t = std::stoi(key);
            if (!known.count(t)) throw fail("bag for unknown node " + key);
            d.bags[t] = normalized(val.get<VertexSet>());
        }
        if (j.contains("apex"))
            for (const auto& [key, val] : j.at("apex").items()) {
                int t = std::stoi(key);
                if (!known.count(t)) throw fail("apex set for unknown node " + key);
                d.apex[t] = normalized(val.get<VertexSet>());
            }
        for (int t : d.nodes) {
            if (!d.bags.count(t)) throw fail("node " + std::to_string(t) + " has no bag");
            d.apex[t];
        }
        if (j.contains("root") && !j.at("root").is_null()) {
            d.root = j.at("root").get<int>();
            if (!known.count(*d.root)) throw fail("root is not a node");
        }
        d.canonicalize();
        return d;
    } catch (const json::exception& e) {
        throw fail(e.what());
    } catch (const std::invalid_argument&) {
        throw fail("node keys must be integers");
    } catch (const std::out_of_range&) {
        throw fail("node key out of range");
    }
}

inline OcpTreeDecomposition read_decomposition(std::istream& in) {
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput("parse-error", std::string("decomposition: ") + e.what());
    }
    return decomposition_from_json(j);
}

inline void write_decomposition(std::ostream& out, const OcpTreeDecomposition& d) { out << to_json(d).dump(2) << '\n'; }

// ---------------------------------------------------------------------------
// Reduction trace. Rationals and big integers are written as strings.

namespace detail {

template <class T>
json str_list(const std::vector<T>& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

} // namespace detail

inline json to_json(const ReductionTrace& t) {
    json j;
    j["input"] = {{"columns", t.columns}, {"rows", t.rows}};
    j["fold"] = {{"bound_rows", t.fold.bound_rows},
                 {"constant_rows", t.fold.constant_rows},
                 {"row_source", t.fold.row_source},
                 {"infeasible", t.fold.infeasible},
                 {"reason", t.fold.reason}};
    j["window"] = {{"zero_objective", t.window.zero_objective},
                   {"lp_status", to_string(t.window.lp_status)},
                   {"xbar", detail::str_list(t.window.xbar)},
                   {"ocp", t.window.ocp},
                   {"subdet_bound", t.window.subdet_bound.get_str()},
                   {"hadamard", t.window.hadamard.get_str()},
                   {"delta_hat", t.window.delta_hat.get_str()},
                   {"radius", t.window.radius.get_str()},
                   {"lo", detail::str_list(t.window.lo)},
                   {"hi", detail::str_list(t.window.hi)}};
    j["zero_objective_rerun"] = t.zero_objective_rerun;
    json fresh = json::array();
    for (const auto& f : t.positive.fresh)
        fresh.push_back({{"column", f.column}, {"kind", f.kind}, {"row", f.row}, {"partner", f.partner}});
    json merged = json::array();
    for (auto [a, b] : t.positive.merged_rows) merged.push_back({a, b});
    j["positive"] = {{"original_columns", t.positive.original_columns},
                     {"fresh", fresh},
                     {"row_source", t.positive.row_source},
                     {"merged_rows", merged}};
    j["penalty"] = {{"mu", t.penalty.mu.get_str()},
                    {"wbar", detail::str_list(t.penalty.wbar)},
                    {"eq_rows", t.penalty.eq_rows}};
    json fixed = json::array();
    for (const auto& f : t.round.fixed) fixed.push_back({{"column", f.column}, {"value", f.value}, {"reason", f.reason}});
    json edges = json::array();
    for (auto [u, v] : t.round.mwis.graph.edges()) edges.push_back({u, v});
    j["round"] = {{"infeasible", t.round.infeasible},
                  {"reason", t.round.reason},
                  {"xstar", detail::str_list(t.round.xstar)},
                  {"half_integral", t.round.half_integral},
                  {"shift", detail::str_list(t.round.shift)},
                  {"fixed", fixed},
                  {"dropped_rows", t.round.dropped_rows},
                  {"free_columns", t.round.free_columns},
                  {"graph_edges", edges},
                  {"weights", t.round.mwis.weight}};
    j["mwis"] = {{"backend", t.mwis.backend}, {"value", t.mwis.result.value}, {"witness", t.mwis.result.witness}};
    j["lifted"] = detail::str_list(t.lifted);
    j["equality_guard_passed"] = t.equality_guard_passed;
    j["last_stage"] = t.last_stage;
    return j;
}

} // namespace oddwidth
