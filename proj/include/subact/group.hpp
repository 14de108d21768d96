#pragma once

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "subact/caps.hpp"
#include "subact/errors.hpp"
#include "subact/index_set.hpp"
#include "subact/permutation.hpp"

namespace subact {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite permutation group, fully enumerated. Elements are identified by
/// their position in the breadth-first closure order; element 0 is the
/// identity.
class FiniteGroup {
 public:
  /// Breadth-first closure of the generators, processed in input order.
  static GroupPtr closure_from_generators(const std::vector<Permutation>& gens,
                                          const Caps& caps = {}) {
    if (gens.empty()) throw DomainError("closure_from_generators needs at least one generator");
    const std::size_t degree = gens.front().degree();
    for (const auto& g : gens)
      if (g.degree() != degree)
        throw StructuralError("generators have inconsistent degrees " + std::to_string(degree) +
                              " and " + std::to_string(g.degree()));

    auto group = std::shared_ptr<FiniteGroup>(new FiniteGroup());
    group->degree_ = degree;
    group->add(Permutation::identity(degree));
    for (std::size_t head = 0; head < group->elements_.size(); ++head) {
      for (const auto& s : gens) {
        Permutation next = compose(s, group->elements_[head]);
        if (!group->index_.contains(next)) {
          group->add(std::move(next));
          require_cap("closure_order", caps.closure_order, group->elements_.size());
        }
      }
    }
    for (const auto& s : gens) group->generators_.push_back(group->index_.at(s));
    group->finish(caps);
    return group;
  }

  std::size_t order() const noexcept { return elements_.size(); }
  std::size_t degree() const noexcept { return degree_; }
  static constexpr Index identity() noexcept { return 0; }
  const Permutation& element(Index i) const { return elements_.at(i); }
  const std::vector<Permutation>& elements() const noexcept { return elements_; }
  const std::vector<Index>& generators() const noexcept { return generators_; }
  bool has_mul_table() const noexcept { return !mul_table_.empty(); }

  std::optional<Index> index_of(const Permutation& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Index mul(Index g, Index h) const {
    if (!mul_table_.empty()) return mul_table_[static_cast<std::size_t>(g) * order() + h];
    return index_.at(compose(elements_[g], elements_[h]));
  }

  Index inv(Index g) const { return inv_table_[g]; }

  bool commute(Index g, Index h) const { return mul(g, h) == mul(h, g); }

  bool is_abelian() const {
    for (Index a : generators_)
      for (Index b : generators_)
        if (!commute(a, b)) return false;
    return true;
  }

  IndexSet all() const { return range_set(static_cast<Index>(order())); }

 private:
  FiniteGroup() = default;

  void add(Permutation p) {
    index_.emplace(p, static_cast<Index>(elements_.size()));
    elements_.push_back(std::move(p));
  }

  void finish(const Caps& caps) {
    const std::size_t n = order();
    inv_table_.resize(n);
    for (std::size_t i = 0; i < n; ++i) inv_table_[i] = index_.at(elements_[i].inverse());
    if (n <= caps.mul_table_order) {
      mul_table_.resize(n * n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          mul_table_[i * n + j] = index_.at(compose(elements_[i], elements_[j]));
    }
  }

  std::size_t degree_ = 0;
  std::vector<Permutation> elements_;
  std::unordered_map<Permutation, Index, PermutationHash> index_;
  std::vector<Index> generators_;
  std::vector<Index> mul_table_;
  std::vector<Index> inv_table_;
};

/// {a^-1 : a in A}.
inline IndexSet inverse_set(const FiniteGroup& G, const IndexSet& A) {
  std::vector<Index> out;
  out.reserve(A.size());
  for (Index a : A) out.push_back(G.inv(a));
  return make_set(std::move(out));
}

/// {ab : a in A, b in B}.
inline IndexSet product_set(const FiniteGroup& G, const IndexSet& A, const IndexSet& B) {
  std::vector<char> mark(G.order(), 0);
  for (Index a : A)
    for (Index b : B) mark[G.mul(a, b)] = 1;
  IndexSet out;
  for (Index i = 0; i < mark.size(); ++i)
    if (mark[i]) out.push_back(i);
  return out;
}

/// True when S contains the identity and is closed under products and
/// inverses (checked on every pair).
inline bool is_subgroup(const FiniteGroup& G, const IndexSet& S) {
  if (!contains(S, FiniteGroup::identity())) return false;
  std::vector<char> in(G.order(), 0);
  for (Index s : S) in[s] = 1;
  for (Index a : S) {
    if (!in[G.inv(a)]) return false;
    for (Index b : S)
      if (!in[G.mul(a, b)]) return false;
  }
  return true;
}

/// A verified subgroup of a FiniteGroup.
class Subgroup {
 public:
  /// Checks closure exhaustively; throws InvariantError otherwise.
  static Subgroup verified(GroupPtr parent, IndexSet members) {
    members = make_set(std::move(members));
    for (Index m : members)
      if (m >= parent->order()) throw DomainError("element index out of range");
    if (!is_subgroup(*parent, members))
      throw InvariantError("set " + format_set(members) + " is not a subgroup");
    return Subgroup(std::move(parent), std::move(members));
  }

  const GroupPtr& parent() const noexcept { return parent_; }
  const IndexSet& members() const noexcept { return members_; }
  std::size_t order() const noexcept { return members_.size(); }
  bool contains(Index g) const { return subact::contains(members_, g); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.parent_ == b.parent_ && a.members_ == b.members_;
  }

 private:
  friend Subgroup generated_subgroup(const GroupPtr&, const IndexSet&);
  friend std::vector<Subgroup> enumerate_subgroups(const GroupPtr&, const Caps&);
  Subgroup(GroupPtr parent, IndexSet members) : parent_(std::move(parent)), members_(std::move(members)) {}

  GroupPtr parent_;
  IndexSet members_;
};

namespace detail {

/// Closure of {e} under left multiplication by the generators.
inline IndexSet close_under(const FiniteGroup& G, const IndexSet& seed, const IndexSet& gens) {
  std::vector<char> in(G.order(), 0);
  std::vector<Index> queue;
  auto push = [&](Index x) {
    if (!in[x]) {
      in[x] = 1;
      queue.push_back(x);
    }
  };
  push(FiniteGroup::identity());
  for (Index s : seed) push(s);
  for (std::size_t head = 0; head < queue.size(); ++head)
    for (Index s : gens) push(G.mul(s, queue[head]));
  return make_set(std::move(queue));
}

}  // namespace detail

/// Smallest subgroup containing S; the trivial subgroup when S is empty.
inline Subgroup generated_subgroup(const GroupPtr& G, const IndexSet& S) {
  for (Index s : S)
    if (s >= G->order()) throw DomainError("element index out of range");
  return Subgroup(G, detail::close_under(*G, {}, S));
}

/// Every subgroup exactly once, ordered by order and then by member list.
/// A subgroup K is reached from a smaller enumerated subgroup H < K by
/// adjoining one element of K \ H, so extending every known subgroup by
/// every outside element reaches the whole lattice.
inline std::vector<Subgroup> enumerate_subgroups(const GroupPtr& G, const Caps& caps = {}) {
  require_cap("subgroup_enum_order", caps.subgroup_enum_order, G->order());
  struct Found {
    IndexSet members;
    IndexSet gens;
  };
  std::vector<Found> found;
  std::set<IndexSet> seen;
  found.push_back({IndexSet{FiniteGroup::identity()}, {}});
  seen.insert(found.front().members);
  for (std::size_t head = 0; head < found.size(); ++head) {
    std::vector<char> in(G->order(), 0);
    for (Index m : found[head].members) in[m] = 1;
    for (Index g = 0; g < G->order(); ++g) {
      if (in[g]) continue;
      IndexSet gens = found[head].gens;
      gens.push_back(g);
      IndexSet closed = detail::close_under(*G, {}, gens);
      if (seen.insert(closed).second) found.push_back({std::move(closed), std::move(gens)});
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(Subgroup(G, std::move(f.members)));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.members() < b.members();
  });
  return out;
}

/// Partition of G into left cosets gH.
struct CosetDecomposition {
  Subgroup subgroup;
  IndexSet representatives;       // smallest element of each coset, ascending
  std::vector<Index> coset_of;    // element -> position in representatives

  std::size_t count() const noexcept { return representatives.size(); }

  IndexSet coset(std::size_t i) const {
    IndexSet out;
    for (Index g = 0; g < coset_of.size(); ++g)
      if (coset_of[g] == i) out.push_back(g);
    return out;
  }
};

inline CosetDecomposition left_cosets(const GroupPtr& G, const Subgroup& H) {
  if (H.parent() != G || !is_subgroup(*G, H.members()))
    throw InvariantError("left_cosets requires a subgroup of the given group");
  constexpr Index unset = ~Index{0};
  std::vector<Index> coset_of(G->order(), unset);
  IndexSet reps;
  for (Index g = 0; g < G->order(); ++g) {
    if (coset_of[g] != unset) continue;
    auto id = static_cast<Index>(reps.size());
    reps.push_back(g);
    for (Index h : H.members()) coset_of[G->mul(g, h)] = id;
  }
  return CosetDecomposition{H, std::move(reps), std::move(coset_of)};
}

}  // namespace subact
