#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "subact/linear.hpp"
#include "subact/minimize.hpp"
#include "subact/random.hpp"

namespace subact {

struct Exhaustiveness {
  bool exhaustive = true;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
};

/// Outcome of one statement checker on one instance. Sets are stored in
/// `witnesses`; scalars and subspaces are stored as text in `values`.
struct CheckReport {
  std::string statement_id;
  bool hypotheses_hold = false;
  bool conclusion_holds = false;
  bool theorem = true;  // false for statements expected to fail (kneser)
  std::map<std::string, IndexSet> witnesses;
  std::map<std::string, std::string> values;
  std::optional<std::map<std::string, std::string>> counterexample;
  Exhaustiveness exhaustiveness;
  std::string note;

  bool violated() const noexcept { return theorem && hypotheses_hold && !conclusion_holds; }
};

namespace detail {

inline Rational q(std::size_t n) { return Rational(static_cast<std::int64_t>(n)); }
inline std::string str(std::size_t n) { return std::to_string(n); }
inline std::string str(bool b) { return b ? "true" : "false"; }

/// Calls visit(C) for every nonempty C ⊆ G when |G| <= exhaustive_order,
/// otherwise for caps.sample_trials random nonempty subsets followed by
/// every subgroup when |G| is within the subgroup enumeration cap.
/// visit returns false to stop early.
inline Exhaustiveness for_subsets_of_group(const GroupPtr& G, std::size_t exhaustive_order, const Caps& caps,
                                           const std::function<bool(const IndexSet&)>& visit) {
  const std::size_t n = G->order();
  Exhaustiveness ex;
  if (n <= exhaustive_order && n < 64) {
    const Mask last = (Mask{1} << n) - 1;
    for (Mask m = 1;; ++m) {
      if (!visit(from_mask(m))) break;
      if (m == last) break;
    }
    return ex;
  }
  ex.exhaustive = false;
  ex.samples = caps.sample_trials;
  ex.seed = caps.seed;
  Rng rng(caps.seed);
  for (std::size_t t = 0; t < caps.sample_trials; ++t)
    if (!visit(rng.nonempty_subset(static_cast<Index>(n), static_cast<Index>(n)))) return ex;
  if (n <= caps.subgroup_enum_order)
    for (const auto& H : enumerate_subgroups(G, caps))
      if (!visit(H.members())) return ex;
  return ex;
}

/// argmin over nonempty subsets S of pool of num(S)/|S|; ties go to the
/// smaller set, then to the lexicographically smaller one.
inline std::pair<IndexSet, Rational> argmin_ratio(const IndexSet& pool, const Caps& caps,
                                                  const std::function<std::int64_t(const IndexSet&)>& num) {
  require_cap("exhaustive_minimize", caps.exhaustive_minimize, pool.size());
  if (pool.empty()) throw DomainError("argmin over the subsets of an empty set");
  IndexSet best;
  Rational best_ratio;
  const Mask last = (Mask{1} << pool.size()) - 1;
  for (Mask m = 1;; ++m) {
    IndexSet S;
    for (Mask b = m; b; b &= b - 1) S.push_back(pool[static_cast<std::size_t>(std::countr_zero(b))]);
    const Rational r(num(S), static_cast<std::int64_t>(S.size()));
    if (best.empty() || r < best_ratio || (r == best_ratio && (S.size() < best.size() || (S.size() == best.size() && S < best)))) {
      best = S;
      best_ratio = r;
    }
    if (m == last) break;
  }
  return {best, best_ratio};
}

inline IndexSet power(const FiniteGroup& G, const IndexSet& A, std::size_t n) {
  IndexSet out = A;
  for (std::size_t i = 1; i < n; ++i) out = product_set(G, out, A);
  return out;
}

inline void add_orbits(CheckReport& r, const GroupAction& action, const IndexSet& H, const IndexSet& Y) {
  IndexSet left = Y;
  std::size_t i = 0;
  while (!left.empty()) {
    IndexSet orbit = act_set(action, H, {left.front()});
    r.witnesses["orbit_" + str(i++)] = orbit;
    left = set_difference(left, orbit);
  }
}

}  // namespace detail

/// Elements sigma of S_n with sigma({0..k-1}) ⊆ {0..l-1}.
inline IndexSet kneser_example_set(const FiniteGroup& Sn, std::size_t k, std::size_t l) {
  IndexSet A;
  for (Index g = 0; g < Sn.order(); ++g) {
    bool inside = true;
    for (Index y = 0; y < k && inside; ++y) inside = Sn.element(g)(y) < l;
    if (inside) A.push_back(g);
  }
  return A;
}

/// |G_{AY}| + |AY| >= |A| + |Y| together with the variant
/// |G_{AY}| + |AY| >= |G_{AY}Y| + |G_{AY}A| and the pattern
/// |AY| < |A| + |Y| with trivial G_{AY}. Not a theorem.
inline CheckReport kneser_check(const GroupAction& action, const IndexSet& A, const IndexSet& Y) {
  if (A.empty() || Y.empty()) throw DomainError("kneser_check needs nonempty A and Y");
  using detail::str;
  CheckReport r;
  r.statement_id = "kneser";
  r.theorem = false;
  r.hypotheses_hold = true;
  const IndexSet AY = act_set(action, A, Y);
  const Subgroup stab = set_stabilizer(action, AY);
  const std::size_t lhs = stab.order() + AY.size(), rhs = A.size() + Y.size();
  r.conclusion_holds = lhs >= rhs;
  const IndexSet stabY = act_set(action, stab.members(), Y);
  const IndexSet stabA = product_set(action.G(), stab.members(), A);
  const std::size_t variant_rhs = stabY.size() + stabA.size();
  r.witnesses["AY"] = AY;
  r.witnesses["stabilizer_AY"] = stab.members();
  r.values["|A|"] = str(A.size());
  r.values["|Y|"] = str(Y.size());
  r.values["|AY|"] = str(AY.size());
  r.values["|G_AY|"] = str(stab.order());
  r.values["lhs"] = str(lhs);
  r.values["rhs"] = str(rhs);
  r.values["|G_AY Y|"] = str(stabY.size());
  r.values["|G_AY A|"] = str(stabA.size());
  r.values["variant_holds"] = str(lhs >= variant_rhs);
  r.values["trivial_stabilizer_pattern"] = str(AY.size() < rhs && stab.order() == 1);
  return r;
}

/// |A.Y| = |Y| implies <A^-1 A> ⊆ G_Y; Y splits into <A^-1 A>-orbits.
inline CheckReport check_murphy_prop(const GroupAction& action, const IndexSet& A, const IndexSet& Y) {
  if (A.empty() || Y.empty()) throw DomainError("murphy needs nonempty A and Y");
  CheckReport r;
  r.statement_id = "murphy";
  const IndexSet AY = act_set(action, A, Y);
  r.values["|AY|"] = detail::str(AY.size());
  r.values["|Y|"] = detail::str(Y.size());
  r.hypotheses_hold = AY.size() == Y.size();
  const Subgroup H = generated_subgroup(action.group(), product_set(action.G(), inverse_set(action.G(), A), A));
  const Subgroup stab = set_stabilizer(action, Y);
  r.witnesses["H"] = H.members();
  r.witnesses["G_Y"] = stab.members();
  r.conclusion_holds = is_subset(H.members(), stab.members());
  if (r.hypotheses_hold && r.conclusion_holds) detail::add_orbits(r, action, H.members(), Y);
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"Y", format_set(Y)}};
  return r;
}

inline CheckReport check_murphy_prop(const Representation& rep, const IndexSet& A, const Subspace& W) {
  if (A.empty() || W.is_zero()) throw DomainError("murphy needs nonempty A and W != {0}");
  const auto& G = *rep.group();
  CheckReport r;
  r.statement_id = "murphy";
  const std::size_t dim_AW = act_subspace(rep, A, W).dim();
  r.values["dim(AW)"] = detail::str(dim_AW);
  r.values["dim(W)"] = detail::str(W.dim());
  r.hypotheses_hold = dim_AW == W.dim();
  const Subgroup H = generated_subgroup(rep.group(), product_set(G, inverse_set(G, A), A));
  const Subgroup stab = subspace_stabilizer(rep, W);
  r.witnesses["H"] = H.members();
  r.witnesses["G_W"] = stab.members();
  r.conclusion_holds = is_subset(H.members(), stab.members());
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"W", W.to_string()}};
  return r;
}

namespace detail {
inline void require_alpha(const Rational& alpha, bool closed_at_zero = false) {
  if ((closed_at_zero ? alpha < Rational(0) : alpha <= Rational(0)) || alpha > Rational(1))
    throw DomainError("alpha must lie in " + std::string(closed_at_zero ? "[0,1]" : "(0,1]") + ", got " + to_string(alpha));
}
}  // namespace detail

/// |A.Y| <= (2 - alpha)|Y| implies A^-1 A ⊆ Sym_alpha(Y).
inline CheckReport check_small_growth(const GroupAction& action, const IndexSet& A, const IndexSet& Y,
                                      const Rational& alpha) {
  detail::require_alpha(alpha);
  if (A.empty() || Y.empty()) throw DomainError("small_growth needs nonempty A and Y");
  CheckReport r;
  r.statement_id = "small_growth";
  const IndexSet AY = act_set(action, A, Y);
  r.hypotheses_hold = detail::q(AY.size()) <= (Rational(2) - alpha) * detail::q(Y.size());
  const IndexSet AinvA = product_set(action.G(), inverse_set(action.G(), A), A);
  const IndexSet sym = symmetry_set(action, Y, alpha);
  r.conclusion_holds = is_subset(AinvA, sym);
  r.values["|AY|"] = detail::str(AY.size());
  r.values["|Y|"] = detail::str(Y.size());
  r.values["alpha"] = to_string(alpha);
  r.witnesses["A^-1A"] = AinvA;
  r.witnesses["Sym_alpha"] = sym;
  if (r.violated())
    r.counterexample = {{"A", format_set(A)}, {"Y", format_set(Y)}, {"alpha", to_string(alpha)},
                        {"outside", format_set(set_difference(AinvA, sym))}};
  return r;
}

inline CheckReport check_small_growth(const Representation& rep, const IndexSet& A, const Subspace& W,
                                      const Rational& alpha) {
  detail::require_alpha(alpha);
  if (A.empty() || W.is_zero()) throw DomainError("small_growth needs nonempty A and W != {0}");
  const auto& G = *rep.group();
  CheckReport r;
  r.statement_id = "small_growth";
  const std::size_t dim_AW = act_subspace(rep, A, W).dim();
  r.hypotheses_hold = detail::q(dim_AW) <= (Rational(2) - alpha) * detail::q(W.dim());
  const IndexSet AinvA = product_set(G, inverse_set(G, A), A);
  const IndexSet sym = subspace_symmetry_sets(rep, W, alpha).first;
  r.conclusion_holds = is_subset(AinvA, sym);
  r.values["dim(AW)"] = detail::str(dim_AW);
  r.values["dim(W)"] = detail::str(W.dim());
  r.witnesses["A^-1A"] = AinvA;
  r.witnesses["Sym_alpha"] = sym;
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"W", W.to_string()}, {"alpha", to_string(alpha)}};
  return r;
}

/// The 3/2 statements. Each sub-claim is checked when its own hypothesis
/// holds; the report fails if any applicable sub-claim fails:
///   prop:       |A^-1.Y| <= (3-alpha)/2 |Y|  =>  (AA^-1)^2, AA^-1 ⊆ Sym_alpha(Y)
///   corollary:  additionally alpha < 1 and Sym_alpha(Y) ⊆ AA^-1  =>  AA^-1 is a subgroup
///   remark_1:   left translation, Y = A, |A^-1 A| < 3/2 |A|  =>  AA^-1 is a subgroup
///   remark_2:   |A.Y| < 3/2 |Y|  =>  (A^-1 A)^2 ⊆ Gamma_Y
inline CheckReport check_freiman(const GroupAction& action, const IndexSet& A, const IndexSet& Y,
                                 const Rational& alpha) {
  detail::require_alpha(alpha);
  if (A.empty() || Y.empty()) throw DomainError("freiman needs nonempty A and Y");
  using detail::q;
  using detail::str;
  const auto& G = action.G();
  CheckReport r;
  r.statement_id = "freiman";
  r.conclusion_holds = true;
  auto claim = [&](const std::string& name, bool hyp, bool concl) {
    r.values[name + ".hypothesis"] = str(hyp);
    if (!hyp) return;
    r.hypotheses_hold = true;
    r.values[name + ".conclusion"] = str(concl);
    if (!concl) {
      r.conclusion_holds = false;
      if (!r.counterexample)
        r.counterexample = {{"claim", name}, {"A", format_set(A)}, {"Y", format_set(Y)}, {"alpha", to_string(alpha)}};
    }
  };

  const IndexSet Ainv = inverse_set(G, A);
  const IndexSet AAinv = product_set(G, A, Ainv);
  const IndexSet AAinv2 = product_set(G, AAinv, AAinv);
  const IndexSet sym = symmetry_set(action, Y, alpha);
  const std::size_t AinvY = act_set(action, Ainv, Y).size();
  const bool prop_hyp = q(AinvY) <= (Rational(3) - alpha) / 2 * q(Y.size());
  r.witnesses["AA^-1"] = AAinv;
  r.witnesses["Sym_alpha"] = sym;
  r.values["|A^-1 Y|"] = str(AinvY);
  r.values["|Y|"] = str(Y.size());
  claim("prop", prop_hyp, is_subset(AAinv2, sym) && is_subset(AAinv, sym));
  claim("corollary", prop_hyp && alpha < Rational(1) && is_subset(sym, AAinv), is_subgroup(G, AAinv));

  const bool translation_on_A = action.kind() == "left_translation" && Y == A;
  const std::size_t AinvA = product_set(G, Ainv, A).size();
  claim("remark_1", translation_on_A && 2 * AinvA < 3 * A.size(), is_subgroup(G, AAinv));

  const IndexSet AinvA_set = product_set(G, Ainv, A);
  const std::size_t AY = act_set(action, A, Y).size();
  claim("remark_2", 2 * AY < 3 * Y.size(),
        is_subset(product_set(G, AinvA_set, AinvA_set), weak_stabilizer(action, Y)));
  return r;
}

inline CheckReport check_freiman(const Representation& rep, const IndexSet& A, const Subspace& W,
                                 const Rational& alpha) {
  detail::require_alpha(alpha);
  if (A.empty() || W.is_zero()) throw DomainError("freiman needs nonempty A and W != {0}");
  const auto& G = *rep.group();
  CheckReport r;
  r.statement_id = "freiman";
  const IndexSet Ainv = inverse_set(G, A);
  const IndexSet AAinv = product_set(G, A, Ainv);
  const IndexSet AAinv2 = product_set(G, AAinv, AAinv);
  const IndexSet sym = subspace_symmetry_sets(rep, W, alpha).first;
  const std::size_t dim_AinvW = act_subspace(rep, Ainv, W).dim();
  r.hypotheses_hold = detail::q(dim_AinvW) <= (Rational(3) - alpha) / 2 * detail::q(W.dim());
  r.conclusion_holds = is_subset(AAinv2, sym);
  r.values["dim(A^-1 W)"] = detail::str(dim_AinvW);
  r.values["dim(W)"] = detail::str(W.dim());
  r.witnesses["(AA^-1)^2"] = AAinv2;
  r.witnesses["Sym_alpha"] = sym;
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"W", W.to_string()}, {"alpha", to_string(alpha)}};
  return r;
}

/// |AB.Y|^2 <= |AB| |B.Y| max_b |Ab.Y|, and with |A.Y| in place of the
/// maximum when A and B commute elementwise.
inline CheckReport check_ruzsa_triple(const GroupAction& action, const IndexSet& A, const IndexSet& B,
                                      const IndexSet& Y) {
  if (A.empty() || B.empty() || Y.empty()) throw DomainError("ruzsa needs nonempty A, B and Y");
  using detail::str;
  const auto& G = action.G();
  CheckReport r;
  r.statement_id = "ruzsa";
  r.hypotheses_hold = true;
  const IndexSet AB = product_set(G, A, B);
  const auto ABY = static_cast<std::int64_t>(act_set(action, AB, Y).size());
  const auto BY = static_cast<std::int64_t>(act_set(action, B, Y).size());
  std::int64_t max_AbY = 0;
  for (Index b : B)
    max_AbY = std::max(max_AbY, static_cast<std::int64_t>(act_set(action, product_set(G, A, {b}), Y).size()));
  const auto nAB = static_cast<std::int64_t>(AB.size());
  r.conclusion_holds = ABY * ABY <= nAB * BY * max_AbY;
  bool commuting = true;
  for (Index a : A)
    for (Index b : B) commuting = commuting && G.commute(a, b);
  r.values["|ABY|"] = str(static_cast<std::size_t>(ABY));
  r.values["|AB|"] = str(AB.size());
  r.values["|BY|"] = str(static_cast<std::size_t>(BY));
  r.values["max_b|AbY|"] = str(static_cast<std::size_t>(max_AbY));
  r.values["commuting"] = str(commuting);
  if (commuting) {
    const auto AY = static_cast<std::int64_t>(act_set(action, A, Y).size());
    const bool commuting_holds = ABY * ABY <= nAB * BY * AY;
    r.values["commuting_form_holds"] = str(commuting_holds);
    r.conclusion_holds = r.conclusion_holds && commuting_holds;
  }
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"B", format_set(B)}, {"Y", format_set(Y)}};
  return r;
}

/// For lambda in [0, mu]: a subgroup H ⊇ G_Y with
/// c_Y(A) >= c_Y(H) >= |Y| - lambda |H| for every nonempty A. H is the
/// identity atom of c_Y for lambda > 0 and G_Y at lambda = 0. When A0 is
/// given (and lambda > 0), also checks
/// lambda max{|A| : A.Y = A0.Y} + |Y| <= lambda |H| + |A0.Y|, where the
/// maximum is |{g : g.Y ⊆ A0.Y}|.
inline CheckReport check_hamidoune(const ActionPtr& action, const IndexSet& Y, const Rational& lambda,
                                   const Caps& caps = {}, const std::optional<IndexSet>& A0 = std::nullopt) {
  if (Y.empty()) throw DomainError("hamidoune needs a nonempty Y");
  using detail::q;
  using detail::str;
  const auto& G = action->group();
  const MuResult mu = mu_ratio(action, Y, caps);
  if (lambda < Rational(0) || lambda > mu.mu)
    throw DomainError("hamidoune needs lambda in [0, mu] = [0, " + to_string(mu.mu) + "], got " + to_string(lambda));
  CheckReport r;
  r.statement_id = "hamidoune";
  r.hypotheses_hold = true;
  const Subgroup stab = set_stabilizer(*action, Y);
  const Subgroup H = lambda == Rational(0)
                         ? stab
                         : atom_identity(functions::c_Y(action, Y, lambda), G, caps, AtomOptions{false});
  auto c = [&](const IndexSet& A) { return q(act_set(*action, A, Y).size()) - lambda * q(A.size()); };
  const Rational cH = c(H.members());
  bool all_above = true;
  IndexSet below;
  r.exhaustiveness = detail::for_subsets_of_group(G, caps.hamidoune_exhaustive_order, caps, [&](const IndexSet& A) {
    if (c(A) < cH) {
      all_above = false;
      below = A;
      return false;
    }
    return true;
  });
  const bool contains_stab = is_subset(stab.members(), H.members());
  const bool lower = cH >= q(Y.size()) - lambda * q(H.order());
  r.conclusion_holds = contains_stab && all_above && lower;
  r.witnesses["H"] = H.members();
  r.witnesses["G_Y"] = stab.members();
  r.values["mu"] = to_string(mu.mu);
  r.values["lambda"] = to_string(lambda);
  r.values["c_Y(H)"] = to_string(cH);
  r.values["|Y|-lambda|H|"] = to_string(q(Y.size()) - lambda * q(H.order()));
  r.values["G_Y_in_H"] = str(contains_stab);
  if (A0 && lambda > Rational(0)) {
    const IndexSet A0Y = act_set(*action, *A0, Y);
    std::size_t max_size = 0;
    for (Index g = 0; g < G->order(); ++g)
      if (is_subset(action->image(g, Y), A0Y)) ++max_size;
    const bool corollary = lambda * q(max_size) + q(Y.size()) <= lambda * q(H.order()) + q(A0Y.size());
    r.values["corollary.max|A|"] = str(max_size);
    r.values["corollary.holds"] = str(corollary);
    r.conclusion_holds = r.conclusion_holds && corollary;
  }
  if (r.violated()) {
    r.counterexample = {{"Y", format_set(Y)}, {"lambda", to_string(lambda)}};
    if (!all_above) (*r.counterexample)["A"] = format_set(below);
  }
  return r;
}

/// mu for a representation: min over nonempty A of dim(A.W)/|A|, through
/// the subgroups and, for |G| <= caps.mu_exhaustive_order, by enumeration.
inline MuResult linear_mu(const Representation& rep, const Subspace& W, const Caps& caps = {}) {
  if (W.is_zero()) throw DomainError("linear_mu needs W != {0}");
  const auto& G = rep.group();
  MuResult out;
  bool have = false;
  for (const auto& H : enumerate_subgroups(G, caps)) {
    const Rational r(static_cast<std::int64_t>(act_subspace(rep, H.members(), W).dim()),
                     static_cast<std::int64_t>(H.order()));
    if (!have || r < out.mu) {
      have = true;
      out.mu = r;
      out.witness = H.members();
    }
  }
  out.dinkelbach = out.mu;
  if (G->order() <= caps.mu_exhaustive_order) {
    const auto f = functions::gamma_W(rep, W, Rational(0));
    Rational best = out.mu;
    const Mask last = (Mask{1} << G->order()) - 1;
    for (Mask m = 1;; ++m) {
      const Rational r(f.numerator(m), std::popcount(m));
      if (r < best) best = r;
      if (m == last) break;
    }
    out.exhaustive = best;
    if (best != out.mu)
      throw InvariantError("linear_mu: subgroup route gives " + to_string(out.mu) + " but enumeration gives " +
                           to_string(best));
  }
  return out;
}

/// Linear form: dim(A.W) >= lambda|A| + dim(H.W) - lambda|H| >= lambda|A| + dim W - lambda|H|.
inline CheckReport check_hamidoune(const Representation& rep, const Subspace& W, const Rational& lambda,
                                   const Caps& caps = {}) {
  using detail::q;
  const auto& G = rep.group();
  const MuResult mu = linear_mu(rep, W, caps);
  if (lambda < Rational(0) || lambda > mu.mu)
    throw DomainError("hamidoune needs lambda in [0, mu] = [0, " + to_string(mu.mu) + "], got " + to_string(lambda));
  CheckReport r;
  r.statement_id = "hamidoune";
  r.hypotheses_hold = true;
  const Subgroup stab = subspace_stabilizer(rep, W);
  const Subgroup H = lambda == Rational(0)
                         ? stab
                         : atom_identity(functions::gamma_W(rep, W, lambda), G, caps, AtomOptions{false});
  auto gamma = [&](const IndexSet& A) { return q(act_subspace(rep, A, W).dim()) - lambda * q(A.size()); };
  const Rational gH = gamma(H.members());
  bool all_above = true;
  IndexSet below;
  r.exhaustiveness = detail::for_subsets_of_group(G, caps.hamidoune_exhaustive_order, caps, [&](const IndexSet& A) {
    if (gamma(A) < gH) {
      all_above = false;
      below = A;
      return false;
    }
    return true;
  });
  const bool contains_stab = is_subset(stab.members(), H.members());
  const bool lower = gH >= q(W.dim()) - lambda * q(H.order());
  r.conclusion_holds = contains_stab && all_above && lower;
  r.witnesses["H"] = H.members();
  r.witnesses["G_W"] = stab.members();
  r.values["mu"] = to_string(mu.mu);
  r.values["lambda"] = to_string(lambda);
  r.values["gamma(H)"] = to_string(gH);
  if (r.violated()) {
    r.counterexample = {{"W", W.to_string()}, {"lambda", to_string(lambda)}};
    if (!all_above) (*r.counterexample)["A"] = format_set(below);
  }
  return r;
}

/// |A.Y| <= alpha|A| gives B ⊆ A with |CB.Y| <= alpha|CB| for every C ⊆ G.
/// B minimises |C.Y|/|C| over the nonempty C ⊆ A.
inline CheckReport find_petridis_witness(const GroupAction& action, const IndexSet& A, const IndexSet& Y,
                                         const Rational& alpha, const Caps& caps = {}) {
  if (A.empty() || Y.empty()) throw DomainError("petridis needs nonempty A and Y");
  using detail::q;
  const auto& G = action.G();
  CheckReport r;
  r.statement_id = "petridis";
  const std::size_t AY = act_set(action, A, Y).size();
  r.hypotheses_hold = q(AY) <= alpha * q(A.size());
  r.values["|AY|"] = detail::str(AY);
  r.values["alpha"] = to_string(alpha);
  if (!r.hypotheses_hold) return r;
  auto [B, ratio] = detail::argmin_ratio(
      A, caps, [&](const IndexSet& C) { return static_cast<std::int64_t>(act_set(action, C, Y).size()); });
  r.witnesses["B"] = B;
  r.values["ratio(B)"] = to_string(ratio);
  bool holds = ratio <= alpha;
  IndexSet bad;
  r.exhaustiveness = detail::for_subsets_of_group(action.group(), caps.petridis_exhaustive_order, caps, [&](const IndexSet& C) {
    const IndexSet CB = product_set(G, C, B);
    if (q(act_set(action, CB, Y).size()) > alpha * q(CB.size())) {
      holds = false;
      bad = C;
      return false;
    }
    return true;
  });
  r.conclusion_holds = holds;
  if (r.violated())
    r.counterexample = {{"A", format_set(A)}, {"Y", format_set(Y)}, {"alpha", to_string(alpha)},
                        {"B", format_set(B)}, {"C", format_set(bad)}};
  return r;
}

inline CheckReport find_petridis_witness(const Representation& rep, const IndexSet& A, const Subspace& W,
                                         const Rational& alpha, const Caps& caps = {}) {
  if (A.empty() || W.is_zero()) throw DomainError("petridis needs nonempty A and W != {0}");
  using detail::q;
  const auto& G = *rep.group();
  CheckReport r;
  r.statement_id = "petridis";
  const std::size_t dim_AW = act_subspace(rep, A, W).dim();
  r.hypotheses_hold = q(dim_AW) <= alpha * q(A.size());
  r.values["dim(AW)"] = detail::str(dim_AW);
  r.values["alpha"] = to_string(alpha);
  if (!r.hypotheses_hold) return r;
  auto [B, ratio] = detail::argmin_ratio(
      A, caps, [&](const IndexSet& C) { return static_cast<std::int64_t>(act_subspace(rep, C, W).dim()); });
  r.witnesses["B"] = B;
  r.values["ratio(B)"] = to_string(ratio);
  bool holds = ratio <= alpha;
  IndexSet bad;
  r.exhaustiveness = detail::for_subsets_of_group(rep.group(), caps.petridis_exhaustive_order, caps, [&](const IndexSet& C) {
    const IndexSet CB = product_set(G, C, B);
    if (q(act_subspace(rep, CB, W).dim()) > alpha * q(CB.size())) {
      holds = false;
      bad = C;
      return false;
    }
    return true;
  });
  r.conclusion_holds = holds;
  if (r.violated())
    r.counterexample = {{"A", format_set(A)}, {"W", W.to_string()}, {"alpha", to_string(alpha)},
                        {"B", format_set(B)}, {"C", format_set(bad)}};
  return r;
}

/// Hypotheses |A| >= |Y| and |A.Y| <= (2 - eps) mu |Y|. With
/// lambda = mu(1 - eps/2) and H the identity atom of c_Y: Y ⊆ H.Y,
/// |H| <= (2/eps - 1)|Y| and |H.Y| <= mu (2/eps - 1)|Y|.
inline CheckReport check_tao_small_doubling(const ActionPtr& action, const IndexSet& A, const IndexSet& Y,
                                            const Rational& eps, const Caps& caps = {}) {
  if (A.empty() || Y.empty()) throw DomainError("tao_doubling needs nonempty A and Y");
  if (eps <= Rational(0)) throw DomainError("tao_doubling needs eps > 0, got " + to_string(eps));
  using detail::q;
  CheckReport r;
  r.statement_id = "tao_doubling";
  const MuResult mu = mu_ratio(action, Y, caps);
  const std::size_t AY = act_set(*action, A, Y).size();
  r.values["mu"] = to_string(mu.mu);
  r.values["|AY|"] = detail::str(AY);
  std::string failed;
  if (A.size() < Y.size()) failed = "|A| >= |Y|";
  else if (q(AY) > (Rational(2) - eps) * mu.mu * q(Y.size())) failed = "|A.Y| <= (2-eps) mu |Y|";
  if (!failed.empty()) {
    r.values["failed_clause"] = failed;
    return r;
  }
  r.hypotheses_hold = true;
  const Rational lambda = mu.mu * (Rational(1) - eps / 2);
  const Subgroup H = atom_identity(functions::c_Y(action, Y, lambda), action->group(), caps, AtomOptions{false});
  const IndexSet HY = act_set(*action, H.members(), Y);
  const Rational bound = Rational(2) / eps - Rational(1);
  const bool covers = is_subset(Y, HY);
  const bool order_bound = q(H.order()) <= bound * q(Y.size());
  const bool image_bound = q(HY.size()) <= mu.mu * bound * q(Y.size());
  const bool orbit_union = act_set(*action, H.members(), HY) == HY;
  r.conclusion_holds = covers && order_bound && image_bound && orbit_union;
  r.witnesses["H"] = H.members();
  r.witnesses["HY"] = HY;
  r.values["lambda"] = to_string(lambda);
  r.values["|H|"] = detail::str(H.order());
  r.values["(2/eps-1)|Y|"] = to_string(bound * q(Y.size()));
  if (r.violated()) r.counterexample = {{"A", format_set(A)}, {"Y", format_set(Y)}, {"eps", to_string(eps)}};
  return r;
}

/// G Abelian and |A.Y| <= alpha|Y| give Z ⊆ Y with |AC.Z| <= alpha|C.Z|
/// for every C ⊆ G and |A^n.Z| <= alpha^n |Z| for n = 1..n_max. Z
/// minimises |A.S|/|S| over the nonempty S ⊆ Y.
inline CheckReport find_taod_witness(const GroupAction& action, const IndexSet& A, const IndexSet& Y,
                                     const Rational& alpha, const Caps& caps = {}, std::size_t n_max = 5) {
  if (!action.G().is_abelian()) throw DomainError("taod requires G Abelian (d_A is only G-invariant then)");
  if (A.empty() || Y.empty()) throw DomainError("taod needs nonempty A and Y");
  using detail::q;
  const auto& G = action.G();
  CheckReport r;
  r.statement_id = "taod";
  const std::size_t AY = act_set(action, A, Y).size();
  r.hypotheses_hold = q(AY) <= alpha * q(Y.size());
  r.values["|AY|"] = detail::str(AY);
  r.values["alpha"] = to_string(alpha);
  if (!r.hypotheses_hold) return r;
  auto [Z, ratio] = detail::argmin_ratio(
      Y, caps, [&](const IndexSet& S) { return static_cast<std::int64_t>(act_set(action, A, S).size()); });
  r.witnesses["Z"] = Z;
  r.values["ratio(Z)"] = to_string(ratio);
  bool holds = ratio <= alpha;
  IndexSet bad;
  r.exhaustiveness = detail::for_subsets_of_group(action.group(), caps.petridis_exhaustive_order, caps, [&](const IndexSet& C) {
    const IndexSet CZ = act_set(action, C, Z);
    if (q(act_set(action, A, CZ).size()) > alpha * q(CZ.size())) {
      holds = false;
      bad = C;
      return false;
    }
    return true;
  });
  bool powers = true;
  Rational alpha_n(1);
  IndexSet An = A;
  for (std::size_t n = 1; n <= n_max; ++n) {
    alpha_n *= alpha;
    if (n > 1) An = product_set(G, An, A);
    const std::size_t AnZ = act_set(action, An, Z).size();
    r.values["|A^" + detail::str(n) + "Z|"] = detail::str(AnZ);
    powers = powers && q(AnZ) <= alpha_n * q(Z.size());
  }
  r.values["power_corollary"] = detail::str(powers);
  r.conclusion_holds = holds && powers;
  if (r.violated()) {
    r.counterexample = {{"A", format_set(A)}, {"Y", format_set(Y)}, {"alpha", to_string(alpha)}, {"Z", format_set(Z)}};
    if (!bad.empty()) (*r.counterexample)["C"] = format_set(bad);
  }
  return r;
}

inline CheckReport find_taod_witness(const Representation& rep, const IndexSet& A, const Subspace& W,
                                     const Rational& alpha, const Caps& caps = {}, std::size_t n_max = 5) {
  if (!rep.group()->is_abelian()) throw DomainError("taod requires G Abelian (delta_A is only G-invariant then)");
  if (A.empty() || W.is_zero()) throw DomainError("taod needs nonempty A and W != {0}");
  using detail::q;
  const auto& G = *rep.group();
  CheckReport r;
  r.statement_id = "taod";
  const std::size_t dim_AW = act_subspace(rep, A, W).dim();
  r.hypotheses_hold = q(dim_AW) <= alpha * q(W.dim());
  r.values["dim(AW)"] = detail::str(dim_AW);
  r.values["alpha"] = to_string(alpha);
  if (!r.hypotheses_hold) return r;
  // subspaces_of is ordered by dimension then basis, so the first strict
  // minimum is the tie-broken argmin
  std::optional<Subspace> Z;
  Rational ratio;
  for (const auto& S : subspaces_of(W, caps)) {
    if (S.is_zero()) continue;
    const Rational v(static_cast<std::int64_t>(act_subspace(rep, A, S).dim()), static_cast<std::int64_t>(S.dim()));
    if (!Z || v < ratio) {
      Z = S;
      ratio = v;
    }
  }
  r.values["Z"] = Z->to_string();
  r.values["ratio(Z)"] = to_string(ratio);
  bool holds = ratio <= alpha;
  IndexSet bad;
  r.exhaustiveness = detail::for_subsets_of_group(rep.group(), caps.petridis_exhaustive_order, caps, [&](const IndexSet& C) {
    const Subspace CZ = act_subspace(rep, C, *Z);
    if (q(act_subspace(rep, A, CZ).dim()) > alpha * q(CZ.dim())) {
      holds = false;
      bad = C;
      return false;
    }
    return true;
  });
  bool powers = true;
  Rational alpha_n(1);
  IndexSet An = A;
  for (std::size_t n = 1; n <= n_max; ++n) {
    alpha_n *= alpha;
    if (n > 1) An = product_set(G, An, A);
    const std::size_t dim_AnZ = act_subspace(rep, An, *Z).dim();
    r.values["dim(A^" + detail::str(n) + "Z)"] = detail::str(dim_AnZ);
    powers = powers && q(dim_AnZ) <= alpha_n * q(Z->dim());
  }
  r.values["power_corollary"] = detail::str(powers);
  r.conclusion_holds = holds && powers;
  if (r.violated()) {
    r.counterexample = {{"A", format_set(A)}, {"W", W.to_string()}, {"alpha", to_string(alpha)}, {"Z", Z->to_string()}};
    if (!bad.empty()) (*r.counterexample)["C"] = format_set(bad);
  }
  return r;
}

/// Fragment sizes of d_A.
///   part 1: lambda < 1/|A|  =>  every fragment has |Y| <= |A|
///   part 2: free action, |X| >= |A|, mu_param <= 1, 0 < lambda <= 1,
///           |X| - mu_param|A| > 0 and lambda >= (|X|-|A|)/(|X|-mu_param|A|)
///           =>  every fragment has |Y| >= mu_param |A|
inline CheckReport check_fragment_bounds(const ActionPtr& action, const IndexSet& A, const Rational& lambda,
                                         const Rational& mu_param, const Caps& caps = {}) {
  if (A.empty()) throw DomainError("fragment_bounds needs a nonempty A");
  if (lambda < Rational(0)) throw DomainError("fragment_bounds needs lambda >= 0, got " + to_string(lambda));
  using detail::q;
  using detail::str;
  const std::size_t nX = action->domain_size(), nA = A.size();
  CheckReport r;
  r.statement_id = "fragment_bounds";
  const bool part1 = lambda * q(nA) < Rational(1);
  const Rational denom = q(nX) - mu_param * q(nA);
  const bool part2 = action_profile(*action).free && nX >= nA && mu_param <= Rational(1) && lambda > Rational(0) &&
                     lambda <= Rational(1) && denom > Rational(0) && lambda >= (q(nX) - q(nA)) / denom;
  r.values["part1.hypothesis"] = str(part1);
  r.values["part2.hypothesis"] = str(part2);
  r.hypotheses_hold = part1 || part2;
  if (!r.hypotheses_hold) return r;

  const SetFunction f = functions::d_A(action, A, lambda);
  require_cap("exhaustive_minimize", caps.exhaustive_minimize, nX);
  std::int64_t best = 0;
  std::size_t smallest = 0, largest = 0, count = 0;
  const Mask last = f.full();
  for (Mask m = 1;; ++m) {
    const std::int64_t v = f.numerator(m);
    const auto size = static_cast<std::size_t>(std::popcount(m));
    if (count == 0 || v < best) {
      best = v;
      smallest = largest = size;
      count = 0;
    }
    if (v == best) {
      ++count;
      smallest = std::min(smallest, size);
      largest = std::max(largest, size);
    }
    if (m == last) break;
  }
  r.values["min"] = to_string(Rational(best, f.denominator()));
  r.values["fragment_count"] = str(count);
  r.values["smallest_fragment"] = str(smallest);
  r.values["largest_fragment"] = str(largest);
  r.conclusion_holds = true;
  if (part1) {
    const bool ok = largest <= nA;
    r.values["part1.conclusion"] = str(ok);
    r.conclusion_holds = r.conclusion_holds && ok;
  }
  if (part2) {
    const bool ok = q(smallest) >= mu_param * q(nA);
    r.values["part2.conclusion"] = str(ok);
    r.conclusion_holds = r.conclusion_holds && ok;
  }
  if (r.violated())
    r.counterexample = {{"A", format_set(A)}, {"lambda", to_string(lambda)}, {"mu", to_string(mu_param)}};
  return r;
}

}  // namespace subact
