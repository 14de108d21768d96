#pragma once

#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "subact/cli/scenario.hpp"

namespace subact::cli {

struct SearchOptions {
  std::string family;
  std::string predicate;
  std::size_t budget = 100;
  std::uint64_t seed = Caps{}.seed;
  std::uint64_t cursor = 0;  // first instance index; resume a search by passing the next cursor
};

struct SearchOutcome {
  json report;
  bool violation = false;
};

inline const std::set<std::string>& search_predicates() {
  static const std::set<std::string> ids{"kneser", "kneser_trivial_stabilizer", "murphy", "small_growth", "freiman",
                                         "ruzsa", "hamidoune", "petridis", "tao_doubling", "taod", "fragment_bounds"};
  return ids;
}

inline const std::set<std::string>& search_families() {
  static const std::set<std::string> ids{"symmetric_natural", "alternating_natural", "dihedral_natural", "affine_line",
                                         "cyclic_translation", "cyclic_product"};
  return ids;
}

namespace detail {

inline json element_json(const FiniteGroup& G, Index g) { return json(G.element(g).images()); }

inline json elements_json(const FiniteGroup& G, const IndexSet& S) {
  json arr = json::array();
  for (Index g : S) arr.push_back(element_json(G, g));
  return arr;
}

inline std::string q_string(const Rational& r) { return to_string(r); }

/// Group and action of one instance; an optional ":k" suffix on the family
/// fixes the size parameter.
inline std::pair<json, json> family_instance(const std::string& family, Rng& rng) {
  std::string name = family;
  std::optional<std::uint64_t> fixed;
  if (auto colon = family.find(':'); colon != std::string::npos) {
    name = family.substr(0, colon);
    try {
      fixed = std::stoull(family.substr(colon + 1));
    } catch (const std::exception&) {
      throw ValidationError("family '" + family + "': the size after ':' must be an integer");
    }
  }
  if (!search_families().contains(name)) throw ValidationError("unknown family '" + family + "'");
  auto pick = [&](std::uint64_t lo, std::uint64_t hi) {
    if (fixed) {
      if (*fixed < lo || *fixed > hi)
        throw ValidationError("family '" + name + "' supports sizes " + std::to_string(lo) + ".." + std::to_string(hi));
      return *fixed;
    }
    return rng.between(lo, hi);
  };
  if (name == "symmetric_natural") return {{{"type", "symmetric"}, {"n", pick(3, 5)}}, {{"type", "natural"}}};
  if (name == "alternating_natural") return {{{"type", "alternating"}, {"n", pick(4, 5)}}, {{"type", "natural"}}};
  if (name == "dihedral_natural") return {{{"type", "dihedral"}, {"n", pick(3, 7)}}, {{"type", "natural"}}};
  if (name == "affine_line") {
    // p <= 7 admits no set with trivial stabilizer: every k-set orbit is smaller than |G| = p(p-1)
    static constexpr std::uint64_t primes[] = {5, 7, 11, 13};
    const std::uint64_t p = fixed ? *fixed : primes[rng.below(4)];
    if (std::find(std::begin(primes), std::end(primes), p) == std::end(primes))
      throw ValidationError("family 'affine_line' supports p in {5, 7, 11, 13}");
    return {{{"type", "affine_gl1"}, {"p", p}}, {{"type", "affine_line"}}};
  }
  if (name == "cyclic_translation") return {{{"type", "cyclic"}, {"n", pick(2, 12)}}, {{"type", "left_translation"}}};
  // cyclic_product: C_m x C_n on m + n points
  const std::uint64_t m = fixed ? pick(2, 4) : rng.between(2, 4);
  const std::uint64_t n = rng.between(2, 4);
  json factors = json::array();
  factors.push_back({{"type", "cyclic"}, {"n", m}});
  factors.push_back({{"type", "cyclic"}, {"n", n}});
  json group = {{"type", "direct_product"}, {"factors", factors}};
  return {group, {{"type", "natural"}}};
}

/// Builds a replayable scenario for one instance of the predicate.
inline json make_instance(const SearchOptions& opt, std::uint64_t cursor) {
  Rng rng(opt.seed, cursor);
  auto [group_json, action_json] = family_instance(opt.family, rng);
  json probe = {{"group", group_json}, {"action", action_json}, {"tasks", json::array()}};
  const Scenario base = parse_scenario(probe.dump());
  const FiniteGroup& G = *base.group;
  const GroupAction& X = *base.action;
  const auto nG = static_cast<Index>(G.order());
  const auto nX = static_cast<Index>(X.domain_size());
  const std::string& pred = opt.predicate;

  IndexSet Y = rng.nonempty_subset(nX, std::min<Index>(nX, 4));
  IndexSet A = rng.nonempty_subset(nG, std::min<Index>(nG, 6));
  IndexSet B = rng.nonempty_subset(nG, std::min<Index>(nG, 4));
  const Rational grid[] = {Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};

  if ((pred == "murphy" || pred == "small_growth" || pred == "freiman") && rng.coin()) {
    // subsets of a coset g G_Y make the growth hypotheses likely
    const IndexSet stab = set_stabilizer(X, Y).members();
    const Index g = static_cast<Index>(rng.below(nG));
    IndexSet coset = product_set(G, {g}, stab);
    A = rng.nonempty_subset_of(coset, static_cast<Index>(coset.size()));
  }
  if (pred == "kneser" && Y.size() < nX && rng.coin()) {
    // A = {g : g.Y ⊆ Z} for a target Z ⊋ Y, the shape that breaks the inequality
    IndexSet Z = Y;
    const IndexSet rest = set_difference(range_set(nX), Y);
    Z = set_union(Z, rng.nonempty_subset_of(rest, static_cast<Index>(rest.size())));
    A.clear();
    for (Index g = 0; g < nG; ++g)
      if (is_subset(X.image(g, Y), Z)) A.push_back(g);
  }
  if (pred == "tao_doubling") {
    A = rng.subset_of_size(nG, static_cast<Index>(rng.between(std::min<std::uint64_t>(Y.size(), nG), std::min<Index>(nG, 8))));
    if (rng.coin()) A = G.all();
  }

  json sets = json::object();
  sets["A"] = {{"elements", elements_json(G, A)}};
  sets["B"] = {{"elements", elements_json(G, B)}};
  sets["Y"] = {{"points", set_json(Y)}};
  json params = json::object();
  json task = {{"task", pred == "kneser_trivial_stabilizer" ? "kneser" : pred}};

  if (pred == "kneser" || pred == "kneser_trivial_stabilizer" || pred == "murphy") {
    task["A"] = "A";
    task["Y"] = "Y";
  } else if (pred == "small_growth" || pred == "freiman") {
    task["A"] = "A";
    task["Y"] = "Y";
    params["alpha"] = q_string(grid[rng.below(4)]);
    task["alpha"] = "alpha";
  } else if (pred == "ruzsa") {
    task["A"] = "A";
    task["B"] = "B";
    task["Y"] = "Y";
  } else if (pred == "hamidoune") {
    const Rational mu = mu_ratio(base.action, Y, base.caps).mu;
    const Rational t[] = {Rational(0), Rational(1, 4), Rational(1, 2), Rational(3, 4), Rational(1)};
    params["lambda"] = q_string(mu * t[rng.below(5)]);
    task["Y"] = "Y";
    task["lambda"] = "lambda";
    task["A0"] = "A";
  } else if (pred == "petridis") {
    const Rational ratio(static_cast<std::int64_t>(act_set(X, A, Y).size()), static_cast<std::int64_t>(A.size()));
    params["alpha"] = q_string(ratio + (rng.coin() ? Rational(0) : Rational(1, 2)));
    task["A"] = "A";
    task["Y"] = "Y";
    task["alpha"] = "alpha";
  } else if (pred == "taod") {
    const Rational ratio(static_cast<std::int64_t>(act_set(X, A, Y).size()), static_cast<std::int64_t>(Y.size()));
    params["alpha"] = q_string(ratio + (rng.coin() ? Rational(0) : Rational(1, 2)));
    task["A"] = "A";
    task["Y"] = "Y";
    task["alpha"] = "alpha";
    task["n_max"] = 5;
  } else if (pred == "tao_doubling") {
    const Rational eps[] = {Rational(1, 4), Rational(1, 2), Rational(1), Rational(3, 2)};
    params["eps"] = q_string(eps[rng.below(4)]);
    task["A"] = "A";
    task["Y"] = "Y";
    task["eps"] = "eps";
  } else {  // fragment_bounds
    const Rational lambdas[] = {Rational(0), Rational(1, static_cast<std::int64_t>(A.size() + 1)), Rational(1, 2),
                                Rational(3, 4), Rational(1),
                                Rational(static_cast<std::int64_t>(nX - std::min<std::size_t>(nX, A.size())),
                                         static_cast<std::int64_t>(nX - std::min<std::size_t>(nX, A.size()) + 1))};
    const Rational mus[] = {Rational(1, 2), Rational(3, 4), Rational(1)};
    params["lambda"] = q_string(lambdas[rng.below(6)]);
    params["mu"] = q_string(mus[rng.below(3)]);
    task["A"] = "A";
    task["lambda"] = "lambda";
    task["mu"] = "mu";
  }
  json scenario = {{"group", group_json}, {"action", action_json}, {"sets", sets}};
  if (!params.empty()) scenario["params"] = params;
  scenario["tasks"] = json::array({task});
  scenario["seed"] = opt.seed;
  return scenario;
}

}  // namespace detail

/// Streams instances cursor, cursor+1, ... and records each one whose
/// hypotheses hold (kneser: each failure of the inequality; the trivial
/// stabilizer predicate: each instance showing the pattern).
inline SearchOutcome search(const SearchOptions& opt, std::string_view env_caps = {}) {
  if (!search_predicates().contains(opt.predicate)) throw ValidationError("unknown predicate '" + opt.predicate + "'");
  {
    Rng probe(opt.seed, opt.cursor);
    detail::family_instance(opt.family, probe);  // validates the family name
  }
  if (opt.predicate == "taod" && opt.family.rfind("cyclic_", 0) != 0)
    throw ValidationError("predicate 'taod' needs an Abelian family (cyclic_translation or cyclic_product)");
  SearchOutcome out;
  json instances = json::array();
  std::size_t hyp = 0, concl_false = 0, violations = 0, findings = 0;
  for (std::uint64_t c = opt.cursor; c < opt.cursor + opt.budget; ++c) {
    json scenario = detail::make_instance(opt, c);
    const Scenario s = parse_scenario(scenario.dump(), env_caps);
    const json report = ScenarioRunner(s).run_task(0)["report"];
    const bool h = report["hypotheses_hold"].get<bool>(), k = report["conclusion_holds"].get<bool>();
    const bool v = report["violated"].get<bool>();
    hyp += h;
    concl_false += h && !k;
    violations += v;
    bool record = h;
    if (opt.predicate == "kneser") record = !k;
    if (opt.predicate == "kneser_trivial_stabilizer") record = report["values"]["trivial_stabilizer_pattern"] == "true";
    findings += record;
    if (record) instances.push_back({{"cursor", c}, {"scenario", scenario}, {"report", report}});
  }
  out.violation = violations > 0;
  out.report["version"] = kVersion;
  out.report["family"] = opt.family;
  out.report["predicate"] = opt.predicate;
  out.report["seed"] = opt.seed;
  out.report["cursor_start"] = opt.cursor;
  out.report["budget"] = opt.budget;
  out.report["next_cursor"] = opt.cursor + opt.budget;
  out.report["summary"] = {{"evaluated", opt.budget},
                           {"hypotheses_hold", hyp},
                           {"conclusion_false_under_hypotheses", concl_false},
                           {"violations", violations},
                           {"recorded", findings}};
  out.report["instances"] = instances;
  return out;
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

/// Flattens a run or search report into CSV, one row per check.
inline std::string report_csv(const json& report) {
  std::ostringstream os;
  os << "row,statement_id,hypotheses_hold,conclusion_holds,violated,mode,samples,seed\n";
  auto row = [&](const std::string& id, const json& r) {
    const json& ex = r["exhaustiveness"];
    os << csv_escape(id) << ',' << r["statement_id"].get<std::string>() << ',' << r["hypotheses_hold"] << ','
       << r["conclusion_holds"] << ',' << r["violated"] << ',' << ex["mode"].get<std::string>() << ','
       << (ex.contains("samples") ? ex["samples"].dump() : "") << ',' << (ex.contains("seed") ? ex["seed"].dump() : "")
       << '\n';
  };
  if (report.contains("results")) {
    for (std::size_t i = 0; i < report["results"].size(); ++i) {
      const json& res = report["results"][i];
      if (res.contains("report")) row("task " + std::to_string(i), res["report"]);
    }
  } else if (report.contains("instances")) {
    for (const auto& inst : report["instances"]) row("cursor " + inst["cursor"].dump(), inst["report"]);
  } else {
    throw ValidationError("report: input is neither a run nor a search report");
  }
  return os.str();
}

}  // namespace subact::cli
