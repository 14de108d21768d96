#pragma once

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "subact/cli/report_json.hpp"

namespace subact::cli {

/// A named set of a scenario: group elements, points of X, or a subspace.
struct NamedSet {
  enum class Kind { elements, points, subspace };
  Kind kind = Kind::elements;
  IndexSet members;
  std::optional<Subspace> space;
};

inline const char* kind_name(NamedSet::Kind k) {
  switch (k) {
    case NamedSet::Kind::elements: return "group elements";
    case NamedSet::Kind::points: return "points";
    case NamedSet::Kind::subspace: return "subspace";
  }
  return "?";
}

struct Scenario {
  json source;
  GroupPtr group;
  ActionPtr action;
  std::optional<Representation> rep;
  std::map<std::string, NamedSet> sets;
  std::map<std::string, Rational> params;
  json tasks = json::array();
  std::uint64_t seed = Caps{}.seed;
  Caps caps;
};

namespace detail {

inline void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ValidationError(where + ": expected an object");
}

inline void require_keys(const json& j, std::initializer_list<std::string_view> allowed, const std::string& where) {
  require_object(j, where);
  for (const auto& [key, _] : j.items())
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ValidationError(where + ": unknown key '" + key + "'");
}

inline const json& field(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) throw ValidationError(where + ": missing key '" + key + "'");
  return j.at(key);
}

inline std::uint64_t unsigned_field(const json& j, const std::string& key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_number_unsigned()) throw ValidationError(where + "." + key + ": expected a nonnegative integer");
  return v.get<std::uint64_t>();
}

inline std::string string_field(const json& j, const std::string& key, const std::string& where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw ValidationError(where + "." + key + ": expected a string");
  return v.get<std::string>();
}

inline std::size_t line_of(std::string_view text, std::size_t byte) {
  return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())), '\n'));
}

inline GroupPtr parse_group(const json& j, const Caps& caps, const std::string& where) {
  require_object(j, where);
  const std::string type = string_field(j, "type", where);
  if (type == "symmetric" || type == "alternating" || type == "cyclic" || type == "dihedral") {
    require_keys(j, {"type", "n"}, where);
    const auto n = static_cast<std::size_t>(unsigned_field(j, "n", where));
    if (type == "symmetric") return groups::symmetric(n, caps);
    if (type == "alternating") return groups::alternating(n, caps);
    if (type == "cyclic") return groups::cyclic(n, caps);
    return groups::dihedral(n, caps);
  }
  if (type == "affine_gl1") {
    require_keys(j, {"type", "p"}, where);
    return groups::affine_gl1(static_cast<std::size_t>(unsigned_field(j, "p", where)), caps);
  }
  if (type == "direct_product") {
    require_keys(j, {"type", "factors"}, where);
    const json& f = field(j, "factors", where);
    if (!f.is_array() || f.size() < 2) throw ValidationError(where + ".factors: expected at least two groups");
    GroupPtr acc = parse_group(f[0], caps, where + ".factors[0]");
    for (std::size_t i = 1; i < f.size(); ++i)
      acc = groups::direct_product(*acc, *parse_group(f[i], caps, where + ".factors[" + std::to_string(i) + "]"), caps);
    return acc;
  }
  if (type == "from_generators") {
    require_keys(j, {"type", "degree", "generators"}, where);
    const auto degree = static_cast<std::size_t>(unsigned_field(j, "degree", where));
    const json& gens = field(j, "generators", where);
    if (!gens.is_array() || gens.empty()) throw ValidationError(where + ".generators: expected a nonempty array");
    std::vector<Permutation> perms;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string w = where + ".generators[" + std::to_string(i) + "]";
      if (gens[i].is_string()) perms.push_back(Permutation::from_cycles(degree, gens[i].get<std::string>()));
      else if (gens[i].is_array()) perms.push_back(Permutation::from_images(gens[i].get<std::vector<Index>>()));
      else throw ValidationError(w + ": expected an image array or a cycle string");
      if (perms.back().degree() != degree) throw ValidationError(w + ": degree differs from " + std::to_string(degree));
    }
    return groups::from_generators(perms, caps);
  }
  throw ValidationError(where + ".type: unknown group type '" + type + "'");
}

inline Index parse_element(const FiniteGroup& G, const json& e, const std::string& where) {
  Permutation p = Permutation::identity(G.degree());
  if (e.is_string()) p = Permutation::from_cycles(G.degree(), e.get<std::string>());
  else if (e.is_array()) p = Permutation::from_images(e.get<std::vector<Index>>());
  else throw ValidationError(where + ": expected an image array or a cycle string");
  auto idx = G.index_of(p);
  if (!idx) throw ValidationError(where + ": " + p.to_cycles() + " is not an element of the group");
  return *idx;
}

inline IndexSet parse_elements(const FiniteGroup& G, const json& arr, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array of elements");
  std::vector<Index> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_element(G, arr[i], where + "[" + std::to_string(i) + "]"));
  return make_set(std::move(out));
}

inline IndexSet parse_points(const json& arr, std::size_t domain, const std::string& where) {
  if (!arr.is_array()) throw ValidationError(where + ": expected an array of points");
  std::vector<Index> out;
  for (const auto& x : arr) {
    if (!x.is_number_unsigned() || x.get<std::uint64_t>() >= domain)
      throw ValidationError(where + ": point " + x.dump() + " is not in {0.." + std::to_string(domain - 1) + "}");
    out.push_back(x.get<Index>());
  }
  return make_set(std::move(out));
}

inline ActionPtr parse_action(const json& j, const GroupPtr& G, const std::map<std::string, NamedSet>& sets,
                              const Caps& caps, const std::string& where) {
  require_object(j, where);
  const std::string type = string_field(j, "type", where);
  if (type == "natural" || type == "affine_line" || type == "left_translation" || type == "conjugation") {
    require_keys(j, {"type"}, where);
    if (type == "left_translation") return actions::left_translation(G, caps);
    if (type == "conjugation") return actions::conjugation(G, caps);
    return actions::natural(G, caps);
  }
  if (type == "trivial") {
    require_keys(j, {"type", "n"}, where);
    return actions::trivial(G, static_cast<std::size_t>(unsigned_field(j, "n", where)), caps);
  }
  if (type == "coset_action") {
    require_keys(j, {"type", "subgroup"}, where);
    const std::string name = string_field(j, "subgroup", where);
    auto it = sets.find(name);
    if (it == sets.end()) throw ValidationError(where + ".subgroup: unknown set '" + name + "'");
    if (it->second.kind != NamedSet::Kind::elements)
      throw ValidationError(where + ".subgroup: set '" + name + "' is not a set of group elements");
    return actions::coset_action(G, Subgroup::verified(G, it->second.members), caps);
  }
  if (type == "diagonal_product" || type == "disjoint_union") {
    require_keys(j, {"type", "left", "right"}, where);
    auto a = parse_action(field(j, "left", where), G, sets, caps, where + ".left");
    auto b = parse_action(field(j, "right", where), G, sets, caps, where + ".right");
    return type == "diagonal_product" ? actions::diagonal_product(*a, *b, caps) : actions::disjoint_union(*a, *b, caps);
  }
  throw ValidationError(where + ".type: unknown action type '" + type + "'");
}

inline Representation parse_representation(const json& j, const GroupPtr& G, const ActionPtr& action,
                                           const std::string& where) {
  require_object(j, where);
  const std::string type = string_field(j, "type", where);
  const auto p = static_cast<std::uint32_t>(unsigned_field(j, "p", where));
  if (type == "permutation_matrices") {
    require_keys(j, {"type", "p"}, where);
    return Representation::permutation_matrices(*action, p);
  }
  if (type == "matrices") {
    require_keys(j, {"type", "p", "dim", "generators"}, where);
    const auto dim = static_cast<std::size_t>(unsigned_field(j, "dim", where));
    const json& gens = field(j, "generators", where);
    if (!gens.is_array()) throw ValidationError(where + ".generators: expected an array of matrices");
    std::vector<FpMatrix> mats;
    for (const auto& m : gens) mats.emplace_back(p, m.get<std::vector<Vector>>());
    return Representation::from_generator_images(G, p, dim, mats);
  }
  throw ValidationError(where + ".type: unknown representation type '" + type + "'");
}

}  // namespace detail

/// Applies "name=value,..." overrides, e.g. from the SUBACT_CAPS variable.
inline void apply_cap_overrides(Caps& caps, std::string_view spec) {
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    const std::string_view item = spec.substr(0, comma);
    spec = comma == std::string_view::npos ? std::string_view{} : spec.substr(comma + 1);
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) throw ValidationError("cap override '" + std::string(item) + "' is not name=value");
    const std::string name(item.substr(0, eq)), value(item.substr(eq + 1));
    std::uint64_t v = 0;
    try {
      std::size_t used = 0;
      v = std::stoull(value, &used, 0);
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      throw ValidationError("cap override '" + name + "' has a non-integer value '" + value + "'");
    }
    if (v == 0 && name != "seed") throw ValidationError("cap '" + name + "' must be positive");
    if (!caps.set(name, v)) throw ValidationError("unknown cap '" + name + "'");
  }
}

namespace detail {

inline const std::set<std::string>& task_ids() {
  static const std::set<std::string> ids{"orbits", "profile", "mu", "minimize", "core", "submodular",
                                         "kneser", "murphy", "small_growth", "freiman", "ruzsa", "hamidoune",
                                         "petridis", "tao_doubling", "taod", "fragment_bounds"};
  return ids;
}

}  // namespace detail

/// Parses and validates a scenario. Every set and parameter reference in
/// the task list must resolve. `env_caps` is applied after the scenario's
/// own caps.
inline Scenario parse_scenario(std::string_view text, std::string_view env_caps = {}) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError("line " + std::to_string(detail::line_of(text, e.byte)) + ": " + e.what());
  }
  detail::require_keys(j, {"comment", "group", "action", "representation", "sets", "params", "tasks", "seed", "caps"},
                       "scenario");
  Scenario s;
  s.source = j;
  if (j.contains("seed")) {
    if (!j["seed"].is_number_unsigned()) throw ValidationError("scenario.seed: expected a nonnegative integer");
    s.seed = j["seed"].get<std::uint64_t>();
  }
  s.caps.seed = s.seed;
  if (j.contains("caps")) {
    detail::require_object(j["caps"], "scenario.caps");
    for (const auto& [name, v] : j["caps"].items()) {
      if (!v.is_number_unsigned() || v.get<std::uint64_t>() == 0)
        throw ValidationError("scenario.caps." + name + ": expected a positive integer");
      if (name == "seed" || !s.caps.set(name, v.get<std::uint64_t>()))
        throw ValidationError("scenario.caps: unknown cap '" + name + "'");
    }
  }
  apply_cap_overrides(s.caps, env_caps);

  s.group = detail::parse_group(detail::field(j, "group", "scenario"), s.caps, "scenario.group");
  const FiniteGroup& G = *s.group;

  // Element sets come first so that coset actions can refer to them.
  const json sets = j.contains("sets") ? j["sets"] : json::object();
  detail::require_object(sets, "scenario.sets");
  std::vector<std::string> deferred;
  for (const auto& [name, spec] : sets.items()) {
    const std::string where = "scenario.sets." + name;
    detail::require_object(spec, where);
    if (spec.size() != 1) throw ValidationError(where + ": expected exactly one of elements, maps_into, generated_by, all, points, vectors");
    const auto& [key, value] = *spec.items().begin();
    NamedSet ns;
    if (key == "elements") {
      ns.members = detail::parse_elements(G, value, where + ".elements");
    } else if (key == "generated_by") {
      ns.members = generated_subgroup(s.group, detail::parse_elements(G, value, where + ".generated_by")).members();
    } else if (key == "all") {
      if (value != true) throw ValidationError(where + ".all: expected true");
      ns.members = G.all();
    } else if (key == "maps_into" || key == "points" || key == "vectors") {
      deferred.push_back(name);
      continue;
    } else {
      throw ValidationError(where + ": unknown set kind '" + key + "'");
    }
    s.sets[name] = std::move(ns);
  }

  s.action = detail::parse_action(j.contains("action") ? j["action"] : json{{"type", "natural"}}, s.group, s.sets,
                                  s.caps, "scenario.action");
  if (j.contains("representation"))
    s.rep = detail::parse_representation(j["representation"], s.group, s.action, "scenario.representation");

  for (const auto& name : deferred) {
    const std::string where = "scenario.sets." + name;
    const auto& [key, value] = *sets[name].items().begin();
    NamedSet ns;
    if (key == "points") {
      ns.kind = NamedSet::Kind::points;
      ns.members = detail::parse_points(value, s.action->domain_size(), where + ".points");
    } else if (key == "maps_into") {
      detail::require_keys(value, {"from", "into"}, where + ".maps_into");
      const IndexSet from = detail::parse_points(detail::field(value, "from", where), s.action->domain_size(), where + ".maps_into.from");
      const IndexSet into = detail::parse_points(detail::field(value, "into", where), s.action->domain_size(), where + ".maps_into.into");
      for (Index g = 0; g < G.order(); ++g)
        if (is_subset(s.action->image(g, from), into)) ns.members.push_back(g);
    } else {
      if (!s.rep) throw ValidationError(where + ": vectors need a representation");
      ns.kind = NamedSet::Kind::subspace;
      if (!value.is_array()) throw ValidationError(where + ".vectors: expected an array of vectors");
      ns.space = Subspace::span(s.rep->p(), s.rep->dim(), value.get<std::vector<Vector>>());
    }
    s.sets[name] = std::move(ns);
  }

  const json params = j.contains("params") ? j["params"] : json::object();
  detail::require_object(params, "scenario.params");
  for (const auto& [name, v] : params.items()) {
    if (!v.is_string()) throw ValidationError("scenario.params." + name + ": rationals are written as \"p/q\" strings");
    try {
      s.params[name] = parse_rational(v.get<std::string>());
    } catch (const ValidationError& e) {
      throw ValidationError("scenario.params." + name + ": " + e.what());
    }
  }

  s.tasks = detail::field(j, "tasks", "scenario");
  if (!s.tasks.is_array()) throw ValidationError("scenario.tasks: expected an array");
  return s;
}

/// Executes the tasks of a scenario in order.
class ScenarioRunner {
 public:
  explicit ScenarioRunner(const Scenario& s) : s_(s) {}

  /// Checks every task without running it; raises on the first problem.
  void validate() const {
    for (std::size_t i = 0; i < s_.tasks.size(); ++i) dispatch(s_.tasks[i], "scenario.tasks[" + std::to_string(i) + "]", false);
  }

  json run_task(std::size_t i) const { return dispatch(s_.tasks[i], "scenario.tasks[" + std::to_string(i) + "]", true); }

 private:
  const NamedSet& set_ref(const json& task, const std::string& key, NamedSet::Kind kind, const std::string& where) const {
    const std::string name = detail::string_field(task, key, where);
    auto it = s_.sets.find(name);
    if (it == s_.sets.end()) throw ValidationError(where + "." + key + ": unknown set '" + name + "'");
    if (it->second.kind != kind)
      throw ValidationError(where + "." + key + ": set '" + name + "' holds " + kind_name(it->second.kind) + ", expected " +
                            kind_name(kind));
    return it->second;
  }

  /// Y is a point set for actions and a subspace for representations.
  bool linear(const json& task, const std::string& key, const std::string& where) const {
    const std::string name = detail::string_field(task, key, where);
    auto it = s_.sets.find(name);
    if (it == s_.sets.end()) throw ValidationError(where + "." + key + ": unknown set '" + name + "'");
    return it->second.kind == NamedSet::Kind::subspace;
  }

  Rational rational_ref(const json& task, const std::string& key, const std::string& where,
                        std::optional<Rational> fallback = std::nullopt) const {
    if (!task.contains(key)) {
      if (fallback) return *fallback;
      throw ValidationError(where + ": missing key '" + key + "'");
    }
    const json& v = task.at(key);
    if (!v.is_string()) throw ValidationError(where + "." + key + ": rationals are written as \"p/q\" strings");
    const std::string text = v.get<std::string>();
    if (auto it = s_.params.find(text); it != s_.params.end()) return it->second;
    if (!text.empty() && (std::isalpha(static_cast<unsigned char>(text[0])) || text[0] == '_'))
      throw ValidationError(where + "." + key + ": unknown parameter '" + text + "'");
    try {
      return parse_rational(text);
    } catch (const ValidationError& e) {
      throw ValidationError(where + "." + key + ": " + e.what());
    }
  }

  const Representation& rep(const std::string& where) const {
    if (!s_.rep) throw ValidationError(where + ": this task needs a representation");
    return *s_.rep;
  }

  struct BuiltFunction {
    SetFunction f;
    bool on_group;  // ground set G (left translation) rather than X
  };

  BuiltFunction set_function(const json& f, const std::string& where) const {
    detail::require_object(f, where);
    const std::string type = detail::string_field(f, "type", where);
    if (type == "cut") {
      detail::require_keys(f, {"type"}, where);
      return {functions::cut(s_.action), false};
    }
    if (type == "cardinality") {
      detail::require_keys(f, {"type", "ground"}, where);
      const std::string ground = f.value("ground", std::string("points"));
      if (ground != "points" && ground != "elements") throw ValidationError(where + ".ground: expected points or elements");
      const bool on_group = ground == "elements";
      return {functions::cardinality(on_group ? s_.group->order() : s_.action->domain_size()), on_group};
    }
    if (type == "c_Y") {
      detail::require_keys(f, {"type", "Y", "lambda"}, where);
      return {functions::c_Y(s_.action, set_ref(f, "Y", NamedSet::Kind::points, where).members, rational_ref(f, "lambda", where)),
              true};
    }
    if (type == "d_A") {
      detail::require_keys(f, {"type", "A", "lambda"}, where);
      return {functions::d_A(s_.action, set_ref(f, "A", NamedSet::Kind::elements, where).members, rational_ref(f, "lambda", where)),
              false};
    }
    if (type == "gamma_W") {
      detail::require_keys(f, {"type", "W", "lambda"}, where);
      return {functions::gamma_W(rep(where), *set_ref(f, "W", NamedSet::Kind::subspace, where).space, rational_ref(f, "lambda", where)),
              true};
    }
    if (type == "combine") {
      detail::require_keys(f, {"type", "f", "g", "lambda", "mu"}, where);
      BuiltFunction a = set_function(detail::field(f, "f", where), where + ".f");
      BuiltFunction b = set_function(detail::field(f, "g", where), where + ".g");
      if (a.on_group != b.on_group) throw ValidationError(where + ": f and g live on different ground sets");
      return {combine(a.f, b.f, rational_ref(f, "lambda", where), rational_ref(f, "mu", where)), a.on_group};
    }
    throw ValidationError(where + ".type: unknown function type '" + type + "'");
  }

  ActionPtr ground_action(const BuiltFunction& b) const {
    return b.on_group ? actions::left_translation(s_.group, s_.caps) : s_.action;
  }

  json dispatch(const json& task, const std::string& where, bool execute) const {
    detail::require_object(task, where);
    const std::string id = detail::string_field(task, "task", where);
    if (!detail::task_ids().contains(id)) throw ValidationError(where + ".task: unknown task '" + id + "'");
    const Caps& caps = s_.caps;
    json out;
    out["task"] = id;

    if (id == "orbits") {
      detail::require_keys(task, {"task"}, where);
      if (!execute) return out;
      OrbitDecomposition od = orbit_decomposition(*s_.action);
      json orbits = json::array();
      for (const auto& o : od.orbits) orbits.push_back(set_json(o));
      out["orbits"] = orbits;
      return out;
    }
    if (id == "profile") {
      detail::require_keys(task, {"task"}, where);
      if (!execute) return out;
      const ActionProfile p = action_profile(*s_.action);
      out["group_order"] = s_.group->order();
      out["domain_size"] = s_.action->domain_size();
      out["faithful"] = p.faithful;
      out["free"] = p.free;
      out["transitive"] = p.transitive;
      out["abelian"] = s_.group->is_abelian();
      return out;
    }
    if (id == "mu") {
      detail::require_keys(task, {"task", "Y", "W"}, where);
      const bool lin = task.contains("W");
      if (lin) {
        const Subspace& W = *set_ref(task, "W", NamedSet::Kind::subspace, where).space;
        if (!execute) return out;
        out["result"] = to_json(linear_mu(rep(where), W, caps));
      } else {
        const IndexSet& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
        if (!execute) return out;
        out["result"] = to_json(mu_ratio(s_.action, Y, caps));
      }
      return out;
    }
    if (id == "minimize" || id == "core" || id == "submodular") {
      detail::require_keys(task, {"task", "function"}, where);
      const json& fj = detail::field(task, "function", where);
      if (fj.is_object() && fj.value("type", std::string()) == "delta_A") {
        if (id != "minimize" && id != "submodular") throw ValidationError(where + ": delta_A supports minimize and submodular only");
        detail::require_keys(fj, {"type", "A", "lambda"}, where + ".function");
        const Representation& R = rep(where);
        const auto f = functions::delta_A(R, set_ref(fj, "A", NamedSet::Kind::elements, where + ".function").members,
                                          rational_ref(fj, "lambda", where + ".function"));
        if (!execute) return out;
        out["function"] = f.label;
        if (id == "minimize") {
          out["result"] = to_json(minimize_on_lattice(f, R.p(), R.dim(), caps));
        } else {
          auto v = check_lattice_submodular(f, enumerate_subspaces(R.p(), R.dim(), caps));
          out["result"] = {{"holds", v.holds}, {"mode", "exhaustive"}, {"checked", v.checked}};
          if (v.counterexample)
            out["result"]["counterexample"] = {{"U", v.counterexample->first.to_string()}, {"W", v.counterexample->second.to_string()}};
        }
        return out;
      }
      const BuiltFunction built = set_function(fj, where + ".function");
      const SetFunction& f = built.f;
      if (!execute) return out;
      out["function"] = f.label();
      if (id == "minimize") {
        out["result"] = to_json(minimize_nonempty(f, caps));
      } else if (id == "core") {
        const Core core = core_set(f, *ground_action(built), caps);
        out["result"] = {{"core", set_json(core.points)}};
      } else {
        out["result"] = {{"submodular", to_json(check_submodular(f, caps))},
                         {"invariance", to_json(check_invariance(f, *ground_action(built), caps))}};
      }
      return out;
    }

    CheckReport r;
    if (id == "kneser") {
      detail::require_keys(task, {"task", "A", "Y"}, where);
      const auto& A = set_ref(task, "A", NamedSet::Kind::elements, where).members;
      const auto& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
      if (!execute) return out;
      r = kneser_check(*s_.action, A, Y);
    } else if (id == "murphy" || id == "small_growth" || id == "freiman" || id == "petridis" || id == "taod") {
      const bool needs_alpha = id != "murphy";
      if (id == "taod") detail::require_keys(task, {"task", "A", "Y", "alpha", "n_max"}, where);
      else if (needs_alpha) detail::require_keys(task, {"task", "A", "Y", "alpha"}, where);
      else detail::require_keys(task, {"task", "A", "Y"}, where);
      const auto& A = set_ref(task, "A", NamedSet::Kind::elements, where).members;
      const Rational alpha = needs_alpha ? rational_ref(task, "alpha", where) : Rational(1);
      const std::size_t n_max = task.contains("n_max") ? static_cast<std::size_t>(detail::unsigned_field(task, "n_max", where)) : 5;
      if (linear(task, "Y", where)) {
        const Subspace& W = *set_ref(task, "Y", NamedSet::Kind::subspace, where).space;
        const Representation& R = rep(where);
        if (!execute) return out;
        if (id == "murphy") r = check_murphy_prop(R, A, W);
        else if (id == "small_growth") r = check_small_growth(R, A, W, alpha);
        else if (id == "freiman") r = check_freiman(R, A, W, alpha);
        else if (id == "petridis") r = find_petridis_witness(R, A, W, alpha, caps);
        else r = find_taod_witness(R, A, W, alpha, caps, n_max);
      } else {
        const auto& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
        if (!execute) return out;
        if (id == "murphy") r = check_murphy_prop(*s_.action, A, Y);
        else if (id == "small_growth") r = check_small_growth(*s_.action, A, Y, alpha);
        else if (id == "freiman") r = check_freiman(*s_.action, A, Y, alpha);
        else if (id == "petridis") r = find_petridis_witness(*s_.action, A, Y, alpha, caps);
        else r = find_taod_witness(*s_.action, A, Y, alpha, caps, n_max);
      }
    } else if (id == "ruzsa") {
      detail::require_keys(task, {"task", "A", "B", "Y"}, where);
      const auto& A = set_ref(task, "A", NamedSet::Kind::elements, where).members;
      const auto& B = set_ref(task, "B", NamedSet::Kind::elements, where).members;
      const auto& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
      if (!execute) return out;
      r = check_ruzsa_triple(*s_.action, A, B, Y);
    } else if (id == "hamidoune") {
      detail::require_keys(task, {"task", "Y", "lambda", "A0"}, where);
      const Rational lambda = rational_ref(task, "lambda", where);
      if (linear(task, "Y", where)) {
        if (task.contains("A0")) throw ValidationError(where + ".A0: only supported for set actions");
        const Subspace& W = *set_ref(task, "Y", NamedSet::Kind::subspace, where).space;
        const Representation& R = rep(where);
        if (!execute) return out;
        r = check_hamidoune(R, W, lambda, caps);
      } else {
        const auto& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
        std::optional<IndexSet> A0;
        if (task.contains("A0")) A0 = set_ref(task, "A0", NamedSet::Kind::elements, where).members;
        if (!execute) return out;
        r = check_hamidoune(s_.action, Y, lambda, caps, A0);
      }
    } else if (id == "tao_doubling") {
      detail::require_keys(task, {"task", "A", "Y", "eps"}, where);
      const auto& A = set_ref(task, "A", NamedSet::Kind::elements, where).members;
      const auto& Y = set_ref(task, "Y", NamedSet::Kind::points, where).members;
      const Rational eps = rational_ref(task, "eps", where);
      if (!execute) return out;
      r = check_tao_small_doubling(s_.action, A, Y, eps, caps);
    } else {  // fragment_bounds
      detail::require_keys(task, {"task", "A", "lambda", "mu"}, where);
      const auto& A = set_ref(task, "A", NamedSet::Kind::elements, where).members;
      const Rational lambda = rational_ref(task, "lambda", where);
      const Rational mu = rational_ref(task, "mu", where, Rational(1));
      if (!execute) return out;
      r = check_fragment_bounds(s_.action, A, lambda, mu, caps);
    }
    out["report"] = to_json(r);
    return out;
  }

  const Scenario& s_;
};

struct RunOutcome {
  json report;
  bool violation = false;
  std::vector<json> counterexamples;  // replayable scenarios, one per violated task
};

/// Runs every task; the report is deterministic apart from the "timing" key.
inline RunOutcome run(const Scenario& s) {
  ScenarioRunner runner(s);
  runner.validate();
  RunOutcome outcome;
  json results = json::array();
  json timing = json::array();
  for (std::size_t i = 0; i < s.tasks.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    json result = runner.run_task(i);
    timing.push_back(std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count());
    if (result.contains("report") && result["report"]["violated"].get<bool>()) {
      outcome.violation = true;
      json replay = s.source;
      replay["tasks"] = json::array({s.tasks[i]});
      replay["comment"] = "counterexample: " + result["report"].value("counterexample", json::object()).dump();
      outcome.counterexamples.push_back(replay);
    }
    results.push_back(std::move(result));
  }
  outcome.report["version"] = kVersion;
  outcome.report["scenario"] = s.source;
  outcome.report["seed"] = s.seed;
  outcome.report["results"] = results;
  outcome.report["timing"] = {{"task_ms", timing}};
  return outcome;
}

}  // namespace subact::cli
