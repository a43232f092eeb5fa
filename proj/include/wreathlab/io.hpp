#pragma once

#include <nlohmann/json.hpp>

#include <string>

#include "wreathlab/chain.hpp"
#include "wreathlab/cycle_index.hpp"
#include "wreathlab/harness.hpp"
#include "wreathlab/limit_laws.hpp"

namespace wreathlab {

using json = nlohmann::ordered_json;

/// {"degree": m, "terms": [{"exponents": {"i": e_i,...}, "num": "...",
/// "den": "..."}]} with decimal-string integers, terms in canonical order.
inline json cycle_index_to_json(const CycleIndexPoly& z) {
    json terms = json::array();
    for (const auto& [mono, coeff] : z.terms()) {
        json exponents = json::object();
        for (auto [i, e] : mono.entries()) exponents[std::to_string(i)] = e;
        terms.push_back({{"exponents", std::move(exponents)},
                         {"num", coeff.get_num().get_str()},
                         {"den", coeff.get_den().get_str()}});
    }
    return json{{"degree", z.degree()}, {"terms", std::move(terms)}};
}

inline CycleIndexPoly cycle_index_from_json(const json& j) {
    CycleIndexPoly::Terms terms;
    for (const auto& t : j.at("terms")) {
        std::vector<Partition::Entry> entries;
        for (const auto& [key, value] : t.at("exponents").items())
            entries.push_back({std::stoi(key), value.get<int>()});
        terms.emplace(Partition::from_mults(std::move(entries)),
                      make_rat(Int(t.at("num").get<std::string>()),
                               Int(t.at("den").get<std::string>())));
    }
    return CycleIndexPoly(j.at("degree").get<long long>(), std::move(terms));
}

inline json compound_spec_to_json(const RationalCompoundSpec& spec) {
    json atoms = json::array();
    for (const auto& atom : spec.atoms) {
        json coeffs = json::object();
        for (auto [i, c] : atom.coeffs) coeffs[std::to_string(i)] = c;
        atoms.push_back({{"l", atom.spacing},
                         {"lambda", atom.block_type.to_string()},
                         {"rate_num", atom.rate.get_num().get_str()},
                         {"rate_den", atom.rate.get_den().get_str()},
                         {"coeffs", std::move(coeffs)}});
    }
    return json{{"truncation", spec.truncation}, {"atoms", std::move(atoms)}};
}

inline json compound_spec_to_json(const RealCompoundSpec& spec) {
    json atoms = json::array();
    for (const auto& atom : spec.atoms) {
        json coeffs = json::object();
        for (auto [i, c] : atom.coeffs) coeffs[std::to_string(i)] = c;
        atoms.push_back({{"l", atom.spacing},
                         {"lambda", atom.block_type.to_string()},
                         {"rate", atom.rate},
                         {"coeffs", std::move(coeffs)}});
    }
    return json{{"truncation", spec.truncation}, {"atoms", std::move(atoms)}};
}

inline json bound_report_to_json(const BoundReport& r) {
    json params = json::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    json out{{"experiment", r.experiment}, {"params", std::move(params)}};
    if (r.has_bound)
        out["bound"] = r.bound;
    else
        out["bound"] = nullptr;
    out["empirical_tv"] = r.empirical_tv;
    out["mc_error"] = r.mc_err;
    out["pass"] = r.pass;
    out["seed"] = r.seed;
    out["runtime_ms"] = r.runtime_ms;
    return out;
}

/// CSV with a header row of partition strings and exact "num/den" entries.
inline std::string lumped_matrix_to_csv(const LumpedMatrix& m) {
    std::string out = "state";
    for (const auto& s : m.states) out += "," + s.to_string();
    out += "\n";
    for (std::size_t r = 0; r < m.states.size(); ++r) {
        out += m.states[r].to_string();
        for (const auto& entry : m.entries[r]) out += "," + rat_to_string(entry);
        out += "\n";
    }
    return out;
}

}  // namespace wreathlab
