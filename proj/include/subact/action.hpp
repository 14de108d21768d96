#pragma once

#include <memory>
#include <string>
#include <vector>

#include "subact/group.hpp"
#include "subact/rational.hpp"

namespace subact {

/// A left action of a finite group on {0..domain_size-1}, materialised as a
/// |G| x |X| table and verified at construction.
class GroupAction {
 public:
  /// Verifies e.x = x, bijectivity of every row and (gh).x = g.(h.x).
  GroupAction(GroupPtr group, std::size_t domain_size, std::vector<Index> table,
              std::string kind = "table", const Caps& caps = {})
      : group_(std::move(group)), domain_size_(domain_size), table_(std::move(table)), kind_(std::move(kind)) {
    const std::size_t n = group_->order();
    require_cap("act_table_entries", caps.act_table_entries, n * domain_size_);
    if (table_.size() != n * domain_size_)
      throw StructuralError("action table has " + std::to_string(table_.size()) + " entries, expected " +
                            std::to_string(n * domain_size_));
    verify();
  }

  const GroupPtr& group() const noexcept { return group_; }
  const FiniteGroup& G() const noexcept { return *group_; }
  std::size_t domain_size() const noexcept { return domain_size_; }
  const std::string& kind() const noexcept { return kind_; }
  const std::vector<Index>& table() const noexcept { return table_; }

  Index act(Index g, Index x) const { return table_[static_cast<std::size_t>(g) * domain_size_ + x]; }

  /// g.Y
  IndexSet image(Index g, const IndexSet& Y) const {
    std::vector<Index> out;
    out.reserve(Y.size());
    for (Index y : Y) out.push_back(act(g, y));
    return make_set(std::move(out));
  }

 private:
  void verify() const {
    const auto& G = *group_;
    const std::size_t n = G.order();
    for (std::size_t x = 0; x < domain_size_; ++x)
      if (act(FiniteGroup::identity(), static_cast<Index>(x)) != x)
        throw InvariantError("identity does not act trivially on point " + std::to_string(x));
    std::vector<char> seen(domain_size_);
    for (Index g = 0; g < n; ++g) {
      std::fill(seen.begin(), seen.end(), 0);
      for (Index x = 0; x < domain_size_; ++x) {
        Index y = act(g, x);
        if (y >= domain_size_ || seen[y])
          throw InvariantError("element " + std::to_string(g) + " does not act bijectively");
        seen[y] = 1;
      }
    }
    // Checking (sg).x = s.(g.x) for generators s and all g implies the full
    // law by induction on word length; the full |G|^2 |X| scan is used when small.
    const bool full = n * n * domain_size_ <= 10'000'000;
    std::vector<Index> left;
    if (full) left = G.all();
    else left = G.generators();
    for (Index s : left)
      for (Index g = 0; g < n; ++g) {
        Index sg = G.mul(s, g);
        for (Index x = 0; x < domain_size_; ++x)
          if (act(sg, x) != act(s, act(g, x)))
            throw InvariantError("action law (gh).x = g.(h.x) fails for g=" + std::to_string(s) +
                                 ", h=" + std::to_string(g) + ", x=" + std::to_string(x));
      }
  }

  GroupPtr group_;
  std::size_t domain_size_;
  std::vector<Index> table_;
  std::string kind_;
};

using ActionPtr = std::shared_ptr<const GroupAction>;

namespace actions {

/// G acting on {0..degree-1} through its permutations.
inline ActionPtr natural(const GroupPtr& G, const Caps& caps = {}) {
  const std::size_t n = G->order(), d = G->degree();
  std::vector<Index> t(n * d);
  for (Index g = 0; g < n; ++g)
    for (Index x = 0; x < d; ++x) t[g * d + x] = G->element(g)(x);
  return std::make_shared<GroupAction>(G, d, std::move(t), "natural", caps);
}

/// G acting on itself by g.h = gh.
inline ActionPtr left_translation(const GroupPtr& G, const Caps& caps = {}) {
  const std::size_t n = G->order();
  require_cap("act_table_entries", caps.act_table_entries, n * n);
  std::vector<Index> t(n * n);
  for (Index g = 0; g < n; ++g)
    for (Index h = 0; h < n; ++h) t[g * n + h] = G->mul(g, h);
  return std::make_shared<GroupAction>(G, n, std::move(t), "left_translation", caps);
}

/// G acting on itself by g.h = g h g^-1.
inline ActionPtr conjugation(const GroupPtr& G, const Caps& caps = {}) {
  const std::size_t n = G->order();
  require_cap("act_table_entries", caps.act_table_entries, n * n);
  std::vector<Index> t(n * n);
  for (Index g = 0; g < n; ++g)
    for (Index h = 0; h < n; ++h) t[g * n + h] = G->mul(G->mul(g, h), G->inv(g));
  return std::make_shared<GroupAction>(G, n, std::move(t), "conjugation", caps);
}

/// G acting on the left cosets of H; coset i is the one whose smallest
/// element is the i-th representative of left_cosets(G, H).
inline ActionPtr coset_action(const GroupPtr& G, const Subgroup& H, const Caps& caps = {}) {
  CosetDecomposition cd = left_cosets(G, H);
  const std::size_t n = G->order(), m = cd.count();
  std::vector<Index> t(n * m);
  for (Index g = 0; g < n; ++g)
    for (Index c = 0; c < m; ++c) t[g * m + c] = cd.coset_of[G->mul(g, cd.representatives[c])];
  return std::make_shared<GroupAction>(G, m, std::move(t), "coset_action", caps);
}

/// Every element fixes every one of the n points.
inline ActionPtr trivial(const GroupPtr& G, std::size_t n, const Caps& caps = {}) {
  std::vector<Index> t(G->order() * n);
  for (std::size_t g = 0; g < G->order(); ++g)
    for (std::size_t x = 0; x < n; ++x) t[g * n + x] = static_cast<Index>(x);
  return std::make_shared<GroupAction>(G, n, std::move(t), "trivial", caps);
}

/// Diagonal action on X1 x X2; the pair (x1, x2) is point x1 * |X2| + x2.
inline ActionPtr diagonal_product(const GroupAction& a, const GroupAction& b, const Caps& caps = {}) {
  if (a.group() != b.group()) throw StructuralError("product action needs both actions of the same group");
  const std::size_t n = a.G().order(), m1 = a.domain_size(), m2 = b.domain_size();
  std::vector<Index> t(n * m1 * m2);
  for (Index g = 0; g < n; ++g)
    for (Index x = 0; x < m1; ++x)
      for (Index y = 0; y < m2; ++y)
        t[(g * m1 + x) * m2 + y] = static_cast<Index>(a.act(g, x) * m2 + b.act(g, y));
  return std::make_shared<GroupAction>(a.group(), m1 * m2, std::move(t), "diagonal_product", caps);
}

/// Action on X1 followed by X2 (points of X2 shifted by |X1|).
inline ActionPtr disjoint_union(const GroupAction& a, const GroupAction& b, const Caps& caps = {}) {
  if (a.group() != b.group()) throw StructuralError("union action needs both actions of the same group");
  const std::size_t n = a.G().order(), m1 = a.domain_size(), m2 = b.domain_size(), m = m1 + m2;
  std::vector<Index> t(n * m);
  for (Index g = 0; g < n; ++g) {
    for (Index x = 0; x < m1; ++x) t[g * m + x] = a.act(g, x);
    for (Index y = 0; y < m2; ++y) t[g * m + m1 + y] = static_cast<Index>(m1 + b.act(g, y));
  }
  return std::make_shared<GroupAction>(a.group(), m, std::move(t), "disjoint_union", caps);
}

}  // namespace actions

/// A.Y = {a.y : a in A, y in Y}.
inline IndexSet act_set(const GroupAction& action, const IndexSet& A, const IndexSet& Y) {
  std::vector<char> mark(action.domain_size(), 0);
  for (Index a : A)
    for (Index y : Y) mark[action.act(a, y)] = 1;
  IndexSet out;
  for (Index x = 0; x < mark.size(); ++x)
    if (mark[x]) out.push_back(x);
  return out;
}

struct OrbitDecomposition {
  IndexSet representatives;        // smallest point of each orbit, ascending
  std::vector<Index> orbit_of;     // point -> orbit position
  std::vector<IndexSet> orbits;

  std::size_t count() const noexcept { return orbits.size(); }
};

inline OrbitDecomposition orbit_decomposition(const GroupAction& action) {
  constexpr Index unset = ~Index{0};
  OrbitDecomposition od;
  od.orbit_of.assign(action.domain_size(), unset);
  for (Index x = 0; x < action.domain_size(); ++x) {
    if (od.orbit_of[x] != unset) continue;
    auto id = static_cast<Index>(od.orbits.size());
    IndexSet orbit = act_set(action, action.G().all(), {x});
    for (Index y : orbit) od.orbit_of[y] = id;
    od.representatives.push_back(x);
    od.orbits.push_back(std::move(orbit));
  }
  return od;
}

/// G_x
inline Subgroup point_stabilizer(const GroupAction& action, Index x) {
  IndexSet members;
  for (Index g = 0; g < action.G().order(); ++g)
    if (action.act(g, x) == x) members.push_back(g);
  return Subgroup::verified(action.group(), std::move(members));
}

/// G_Y = {g : g.Y = Y}, by scanning G.
inline Subgroup set_stabilizer(const GroupAction& action, const IndexSet& Y) {
  IndexSet members;
  for (Index g = 0; g < action.G().order(); ++g)
    if (action.image(g, Y) == Y) members.push_back(g);
  return Subgroup::verified(action.group(), std::move(members));
}

/// |g.Y ∩ Y|
inline std::size_t overlap(const GroupAction& action, Index g, const IndexSet& Y) {
  std::size_t count = 0;
  for (Index y : Y)
    if (contains(Y, action.act(g, y))) ++count;
  return count;
}

/// Sym_alpha(Y) = {g : |g.Y ∩ Y| >= alpha |Y|}, compared exactly.
inline IndexSet symmetry_set(const GroupAction& action, const IndexSet& Y, const Rational& alpha) {
  if (Y.empty()) throw DomainError("symmetry_set needs a nonempty Y");
  if (alpha < Rational(0) || alpha > Rational(1)) throw DomainError("symmetry_set needs alpha in [0,1], got " + to_string(alpha));
  IndexSet out;
  for (Index g = 0; g < action.G().order(); ++g)
    if (Rational(static_cast<std::int64_t>(overlap(action, g, Y))) >= alpha * static_cast<std::int64_t>(Y.size()))
      out.push_back(g);
  return out;
}

/// Gamma_Y = {g : g.Y ∩ Y nonempty}.
inline IndexSet weak_stabilizer(const GroupAction& action, const IndexSet& Y) {
  if (Y.empty()) throw DomainError("weak_stabilizer needs a nonempty Y");
  IndexSet out;
  for (Index g = 0; g < action.G().order(); ++g)
    if (overlap(action, g, Y) > 0) out.push_back(g);
  return out;
}

/// Smallest positive value of |g.Y ∩ Y| / |Y|; Gamma_Y = Sym at this ratio.
inline Rational min_overlap_ratio(const GroupAction& action, const IndexSet& Y) {
  if (Y.empty()) throw DomainError("min_overlap_ratio needs a nonempty Y");
  std::size_t best = Y.size();
  for (Index g = 0; g < action.G().order(); ++g) {
    std::size_t o = overlap(action, g, Y);
    if (o > 0 && o < best) best = o;
  }
  return Rational(static_cast<std::int64_t>(best), static_cast<std::int64_t>(Y.size()));
}

/// Per-orbit data of the orbit decomposition bounds.
struct OrbitTerm {
  Index representative = 0;         // x_i
  std::size_t stabilizer_order = 0; // |G_{x_i}|
  IndexSet Y_part;                  // Y ∩ O_{x_i}
  IndexSet B;                       // coset representatives g[i] with g[i].x_i in Y_i
  std::size_t product_size = 0;     // |A B_i|
  std::size_t coset_count = 0;      // |A B_i|_i = |A.Y_i|
};

struct OrbitBounds {
  Rational lower;                 // sum |A B_i| / |G_{x_i}|
  std::size_t exact = 0;          // |A.Y|
  std::size_t upper = 0;          // sum |A B_i|
  std::size_t coset_count_sum = 0;
  std::vector<OrbitTerm> terms;
};

/// Reduces |A.Y| to product sets A B_i in G through the orbit maps
/// G/G_{x_i} -> O_{x_i}.
inline OrbitBounds orbit_reduction_bounds(const GroupAction& action, const IndexSet& A, const IndexSet& Y) {
  if (A.empty() || Y.empty()) throw DomainError("orbit_reduction_bounds needs nonempty A and Y");
  const auto& G = action.G();
  OrbitDecomposition od = orbit_decomposition(action);
  OrbitBounds out;
  out.lower = 0;
  for (std::size_t i = 0; i < od.count(); ++i) {
    OrbitTerm term;
    term.representative = od.representatives[i];
    term.Y_part = set_intersection(Y, od.orbits[i]);
    Subgroup stab = point_stabilizer(action, term.representative);
    term.stabilizer_order = stab.order();
    if (!term.Y_part.empty()) {
      CosetDecomposition cd = left_cosets(action.group(), stab);
      for (Index rep : cd.representatives)
        if (contains(term.Y_part, action.act(rep, term.representative))) term.B.push_back(rep);
      IndexSet AB = product_set(G, A, term.B);
      term.product_size = AB.size();
      term.coset_count = act_set(action, AB, {term.representative}).size();
    }
    out.lower += Rational(static_cast<std::int64_t>(term.product_size),
                          static_cast<std::int64_t>(term.stabilizer_order));
    out.upper += term.product_size;
    out.coset_count_sum += term.coset_count;
    out.terms.push_back(std::move(term));
  }
  out.exact = act_set(action, A, Y).size();
  return out;
}

struct ActionProfile {
  bool faithful = false;
  bool free = false;
  bool transitive = false;
};

inline ActionProfile action_profile(const GroupAction& action) {
  const auto& G = action.G();
  ActionProfile p;
  p.faithful = true;
  p.free = true;
  for (Index g = 1; g < G.order(); ++g) {
    bool moves_any = false;
    for (Index x = 0; x < action.domain_size(); ++x) {
      if (action.act(g, x) != x) moves_any = true;
      else p.free = false;
    }
    if (!moves_any) p.faithful = false;
  }
  p.transitive = action.domain_size() > 0 && orbit_decomposition(action).count() == 1;
  return p;
}

}  // namespace subact
