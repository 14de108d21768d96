#pragma once

#include <algorithm>
#include <bit>
#include <optional>
#include <vector>

#include "subact/set_function.hpp"

namespace subact {

/// Minimum of f over nonempty subsets together with its fragments and atoms.
struct MinimizationResult {
  Rational min_value;
  std::vector<IndexSet> fragments;   // in ascending mask order, at most caps.fragment_list
  std::size_t fragment_count = 0;    // exact
  bool fragments_truncated = false;
  std::vector<IndexSet> atoms;       // all of them, ascending mask order
  std::size_t atom_size = 0;
};

/// Exhaustive minimisation over the nonempty subsets, enumerated as masks
/// in ascending order. The empty set is never a candidate.
inline MinimizationResult minimize_nonempty(const SetFunction& f, const Caps& caps = {}) {
  const std::size_t n = f.ground_size();
  require_cap("exhaustive_minimize", caps.exhaustive_minimize, n,
              "use the subgroup-restricted path (mu_ratio / atom_identity) for larger groups");
  if (n == 0) throw DomainError("minimize_nonempty needs a nonempty ground set");

  std::int64_t best = 0;
  bool have = false;
  std::vector<Mask> fragments;
  std::size_t count = 0;
  std::vector<Mask> atoms;
  int atom_size = 0;
  const Mask last = f.full();
  for (Mask s = 1;; ++s) {
    const std::int64_t v = f.numerator(s);
    if (!have || v < best) {
      have = true;
      best = v;
      fragments.clear();
      atoms.clear();
      count = 0;
      atom_size = std::popcount(s);
    }
    if (v == best) {
      ++count;
      if (fragments.size() < caps.fragment_list) fragments.push_back(s);
      const int size = std::popcount(s);
      if (size < atom_size) {
        atoms.clear();
        atom_size = size;
      }
      if (size == atom_size) atoms.push_back(s);
    }
    if (s == last) break;
  }

  MinimizationResult r;
  r.min_value = Rational(best, f.denominator());
  r.fragment_count = count;
  r.fragments_truncated = count > fragments.size();
  for (Mask m : fragments) r.fragments.push_back(from_mask(m));
  for (Mask m : atoms) r.atoms.push_back(from_mask(m));
  r.atom_size = static_cast<std::size_t>(atom_size);
  return r;
}

/// Disjoint union of the atoms of a G-invariant f on the subsets of X.
struct Core {
  IndexSet points;
};

inline Core core_set(const SetFunction& f, const GroupAction& action, const Caps& caps = {}) {
  InvarianceVerdict inv = check_invariance(f, action, caps);
  if (!inv.holds)
    throw DomainError("core_set: '" + f.label() + "' is not G-invariant (g=" +
                      std::to_string(inv.counterexample->first) + ", S=" + format_set(inv.counterexample->second) + ")");
  MinimizationResult r = minimize_nonempty(f, caps);
  Core core;
  for (const auto& atom : r.atoms) {
    if (!disjoint(core.points, atom))
      throw InvariantError("core_set: atoms of '" + f.label() + "' overlap");
    core.points = set_union(core.points, atom);
  }
  for (Index g = 0; g < action.G().order(); ++g)
    if (action.image(g, core.points) != core.points)
      throw InvariantError("core_set: core is not stable under element " + std::to_string(g));
  return core;
}

namespace detail {

/// min over subgroups H of f(H); for a G-invariant submodular f on P(G) this
/// is the minimum over all nonempty subsets since every atom is a coset of a
/// subgroup atom. Returns (value numerator, smallest subgroup attaining it).
template <class Eval>
std::pair<std::int64_t, IndexSet> min_over_subgroups(const std::vector<Subgroup>& subgroups, Eval&& eval) {
  std::int64_t best = 0;
  const Subgroup* arg = nullptr;
  for (const auto& H : subgroups) {
    const std::int64_t v = eval(H.members());
    if (arg == nullptr || v < best) {
      best = v;
      arg = &H;
    }
  }
  return {best, arg->members()};
}

}  // namespace detail

struct AtomOptions {
  bool verify_hypotheses = true;  // check invariance and submodularity first
};

/// The unique atom containing the identity of a G-invariant submodular f on
/// P(G), returned as a verified subgroup. Exhaustive when |G| is within
/// caps.exhaustive_minimize (and then every atom is checked to be a left
/// coset of it), subgroup-restricted above.
inline Subgroup atom_identity(const SetFunction& f, const GroupPtr& G, const Caps& caps = {},
                              AtomOptions options = {}) {
  if (f.ground_size() != G->order()) throw StructuralError("atom_identity: f must live on P(G)");
  if (options.verify_hypotheses) {
    auto translation = actions::left_translation(G, caps);
    InvarianceVerdict inv = check_invariance(f, *translation, caps);
    if (!inv.holds) throw DomainError("atom_identity: '" + f.label() + "' is not G-invariant");
    SubmodularVerdict sub = check_submodular(f, caps);
    if (!sub.holds) throw DomainError("atom_identity: '" + f.label() + "' is not submodular");
  }
  if (G->order() <= caps.exhaustive_minimize) {
    MinimizationResult r = minimize_nonempty(f, caps);
    const IndexSet* identity_atom = nullptr;
    for (const auto& atom : r.atoms)
      if (contains(atom, FiniteGroup::identity())) {
        if (identity_atom != nullptr) throw InvariantError("atom_identity: two atoms contain the identity");
        identity_atom = &atom;
      }
    if (identity_atom == nullptr) throw InvariantError("atom_identity: no atom contains the identity");
    Subgroup H = Subgroup::verified(G, *identity_atom);
    CosetDecomposition cd = left_cosets(G, H);
    for (const auto& atom : r.atoms)
      if (cd.coset(cd.coset_of[atom.front()]) != atom)
        throw InvariantError("atom_identity: atom " + format_set(atom) + " is not a left coset");
    return H;
  }
  auto subgroups = enumerate_subgroups(G, caps);
  auto [best, members] =
      detail::min_over_subgroups(subgroups, [&](const IndexSet& H) { return f.numerator(to_mask(H)); });
  return Subgroup::verified(G, members);
}

/// mu = min over nonempty A of |A.Y| / |A|, with the routes that computed it.
struct MuResult {
  Rational mu;
  IndexSet witness;            // smallest subgroup attaining mu
  Rational dinkelbach;
  std::size_t dinkelbach_iterations = 0;
  std::optional<Rational> exhaustive;
};

namespace detail {

/// Exhaustive min of |A.Y|/|A| by depth-first include/exclude with point
/// coverage counters.
inline Rational exhaustive_ratio(const GroupAction& action, const IndexSet& Y) {
  const std::size_t n = action.G().order();
  std::vector<IndexSet> images(n);
  for (Index g = 0; g < n; ++g) images[g] = action.image(g, Y);
  std::vector<int> cover(action.domain_size(), 0);
  std::int64_t covered = 0, size = 0;
  Rational best(static_cast<std::int64_t>(Y.size()), 1);
  auto visit = [&](auto&& self, Index g) -> void {
    if (g == n) {
      if (size > 0) {
        Rational r(covered, size);
        if (r < best) best = r;
      }
      return;
    }
    self(self, g + 1);
    for (Index x : images[g])
      if (cover[x]++ == 0) ++covered;
    ++size;
    self(self, g + 1);
    --size;
    for (Index x : images[g])
      if (--cover[x] == 0) --covered;
  };
  visit(visit, 0);
  return best;
}

}  // namespace detail

/// Computes mu through the subgroup restriction, checks it with a
/// Dinkelbach iteration on c_Y and, for |G| <= caps.mu_exhaustive_order,
/// with exhaustive enumeration. Disagreement raises InvariantError.
inline MuResult mu_ratio(const ActionPtr& action, const IndexSet& Y, const Caps& caps = {}) {
  if (Y.empty()) throw DomainError("mu_ratio needs a nonempty Y");
  const auto& G = action->group();
  auto subgroups = enumerate_subgroups(G, caps);
  auto hy = [&](const IndexSet& H) { return static_cast<std::int64_t>(act_set(*action, H, Y).size()); };

  MuResult out;
  bool have = false;
  for (const auto& H : subgroups) {
    Rational r(hy(H.members()), static_cast<std::int64_t>(H.order()));
    if (!have || r < out.mu) {
      have = true;
      out.mu = r;
      out.witness = H.members();
    }
  }

  // Dinkelbach: lambda <- ratio of a minimiser of |A.Y| - lambda |A| until the minimum is 0.
  IndexSet current = G->all();
  Rational lambda(hy(current), static_cast<std::int64_t>(current.size()));
  const bool exhaustive_inner = G->order() <= caps.exhaustive_minimize;
  for (;;) {
    ++out.dinkelbach_iterations;
    Rational minimum;
    IndexSet argmin;
    if (exhaustive_inner) {
      MinimizationResult r = minimize_nonempty(functions::c_Y(action, Y, lambda), caps);
      minimum = r.min_value;
      argmin = r.atoms.front();
    } else {
      auto [v, members] = detail::min_over_subgroups(subgroups, [&](const IndexSet& H) {
        return lambda.denominator() * hy(H) - lambda.numerator() * static_cast<std::int64_t>(H.size());
      });
      minimum = Rational(v, lambda.denominator());
      argmin = std::move(members);
    }
    if (minimum == Rational(0)) break;
    if (minimum > Rational(0)) throw InvariantError("mu_ratio: Dinkelbach minimum became positive");
    lambda = Rational(hy(argmin), static_cast<std::int64_t>(argmin.size()));
  }
  out.dinkelbach = lambda;
  if (out.dinkelbach != out.mu)
    throw InvariantError("mu_ratio: subgroup route gives " + to_string(out.mu) + " but Dinkelbach gives " +
                         to_string(out.dinkelbach));
  if (G->order() <= caps.mu_exhaustive_order) {
    out.exhaustive = detail::exhaustive_ratio(*action, Y);
    if (*out.exhaustive != out.mu)
      throw InvariantError("mu_ratio: subgroup route gives " + to_string(out.mu) + " but enumeration gives " +
                           to_string(*out.exhaustive));
  }
  return out;
}

}  // namespace subact
