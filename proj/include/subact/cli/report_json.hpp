#pragma once

#include "json.hpp"

#include "subact/subact.hpp"

namespace subact::cli {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

inline json set_json(const IndexSet& s) { return json(std::vector<Index>(s.begin(), s.end())); }

inline json exhaustiveness_json(const Exhaustiveness& e) {
  json j;
  j["mode"] = e.exhaustive ? "exhaustive" : "sampled";
  if (!e.exhaustive) {
    j["samples"] = e.samples;
    j["seed"] = e.seed;
  }
  return j;
}

inline json to_json(const CheckReport& r) {
  json j;
  j["statement_id"] = r.statement_id;
  j["theorem"] = r.theorem;
  j["hypotheses_hold"] = r.hypotheses_hold;
  j["conclusion_holds"] = r.conclusion_holds;
  j["violated"] = r.violated();
  json w = json::object();
  for (const auto& [k, v] : r.witnesses) w[k] = set_json(v);
  j["witnesses"] = w;
  json vals = json::object();
  for (const auto& [k, v] : r.values) vals[k] = v;
  j["values"] = vals;
  if (r.counterexample) {
    json c = json::object();
    for (const auto& [k, v] : *r.counterexample) c[k] = v;
    j["counterexample"] = c;
  }
  j["exhaustiveness"] = exhaustiveness_json(r.exhaustiveness);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline json to_json(const MinimizationResult& r) {
  json j;
  j["min"] = to_string(r.min_value);
  j["fragment_count"] = r.fragment_count;
  json frags = json::array();
  for (const auto& f : r.fragments) frags.push_back(set_json(f));
  j["fragments"] = frags;
  j["fragments_truncated"] = r.fragments_truncated;
  json atoms = json::array();
  for (const auto& a : r.atoms) atoms.push_back(set_json(a));
  j["atoms"] = atoms;
  j["atom_size"] = r.atom_size;
  return j;
}

inline json to_json(const LatticeMinimization& r) {
  json j;
  j["min"] = to_string(r.min_value);
  j["fragment_count"] = r.fragments.size();
  json frags = json::array();
  for (const auto& f : r.fragments) frags.push_back(f.to_string());
  j["fragments"] = frags;
  json atoms = json::array();
  for (const auto& a : r.atoms) atoms.push_back(a.to_string());
  j["atoms"] = atoms;
  j["atom_dim"] = r.atom_dim;
  j["atoms_pairwise_trivial"] = atoms_pairwise_trivial(r);
  return j;
}

inline json to_json(const MuResult& r) {
  json j;
  j["mu"] = to_string(r.mu);
  j["witness"] = set_json(r.witness);
  j["dinkelbach"] = to_string(r.dinkelbach);
  j["dinkelbach_iterations"] = r.dinkelbach_iterations;
  if (r.exhaustive) j["exhaustive"] = to_string(*r.exhaustive);
  return j;
}

inline json to_json(const SubmodularVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["mode"] = v.exhaustive ? "exhaustive" : "sampled";
  j["checked"] = v.checked;
  if (!v.exhaustive) j["seed"] = v.seed;
  if (v.counterexample) {
    const auto& [A1, A2, s] = *v.counterexample;
    j["counterexample"] = {{"A1", set_json(A1)}, {"A2", set_json(A2)}, {"s", s}};
  }
  return j;
}

inline json to_json(const InvarianceVerdict& v) {
  json j;
  j["holds"] = v.holds;
  j["mode"] = v.exhaustive ? "exhaustive" : "sampled";
  j["checked"] = v.checked;
  if (!v.exhaustive) j["seed"] = v.seed;
  if (v.counterexample) j["counterexample"] = {{"g", v.counterexample->first}, {"S", set_json(v.counterexample->second)}};
  return j;
}

}  // namespace subact::cli
