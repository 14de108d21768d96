#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "subact/subact.hpp"

namespace subact::testing {

inline Index idx(const FiniteGroup& G, const std::string& cycles) {
  auto i = G.index_of(Permutation::from_cycles(G.degree(), cycles));
  if (!i) throw std::runtime_error("element " + cycles + " not in group");
  return *i;
}

inline IndexSet elems(const FiniteGroup& G, std::initializer_list<const char*> cycles) {
  IndexSet out;
  for (const char* c : cycles) out.push_back(idx(G, c));
  return make_set(std::move(out));
}

namespace oracle {

using Images = std::vector<Index>;

inline Images compose(const Images& g, const Images& h) {
  Images out(g.size());
  for (std::size_t x = 0; x < g.size(); ++x) out[x] = g[h[x]];
  return out;
}

/// Closure by repeated products of everything found so far.
inline std::set<Images> closure(const std::vector<Images>& gens) {
  std::set<Images> found(gens.begin(), gens.end());
  Images id(gens.front().size());
  for (std::size_t i = 0; i < id.size(); ++i) id[i] = static_cast<Index>(i);
  found.insert(id);
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<Images> cur(found.begin(), found.end());
    for (const auto& a : cur)
      for (const auto& b : cur)
        grew |= found.insert(compose(a, b)).second;
  }
  return found;
}

/// Subgroups as closed subsets, found by testing every subset of G (|G| <= 16).
inline std::size_t count_subgroups(const FiniteGroup& G) {
  const std::size_t n = G.order();
  std::size_t count = 0;
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    if (!(m & 1)) continue;
    bool closed = true;
    for (Mask a = m; a && closed; a &= a - 1)
      for (Mask b = m; b && closed; b &= b - 1) {
        const Index x = static_cast<Index>(std::countr_zero(a)), y = static_cast<Index>(std::countr_zero(b));
        const auto p = G.index_of(compose(G.element(x), G.element(y).inverse()));
        closed = (m >> *p) & 1;
      }
    count += closed;
  }
  return count;
}

inline IndexSet act_set(const GroupAction& X, const IndexSet& A, const IndexSet& Y) {
  std::set<Index> out;
  for (Index a : A)
    for (Index y : Y) out.insert(X.act(a, y));
  return {out.begin(), out.end()};
}

/// |E_Y| with E_Y = {(g, y) in G x Y : g.y not in Y}, counted pair by pair.
inline std::int64_t cut_literal(const GroupAction& X, const IndexSet& Y) {
  std::int64_t count = 0;
  for (Index g = 0; g < X.G().order(); ++g)
    for (Index y : Y)
      if (!contains(Y, X.act(g, y))) ++count;
  return count;
}

/// f(A) + f(B) >= f(A u B) + f(A n B) over all pairs.
inline bool submodular_pairwise(const std::function<Rational(Mask)>& f, std::size_t n) {
  const Mask full = (n == 64) ? ~Mask{0} : (Mask{1} << n) - 1;
  std::vector<Rational> v(full + 1);
  for (Mask s = 0; s <= full; ++s) v[s] = f(s);
  for (Mask a = 0; a <= full; ++a)
    for (Mask b = a; b <= full; ++b)
      if (v[a] + v[b] < v[a | b] + v[a & b]) return false;
  return true;
}

struct MinOracle {
  Rational min;
  std::set<IndexSet> fragments;
  std::set<IndexSet> atoms;
};

/// Minimization scanning masks from the full set downwards.
inline MinOracle minimize_reverse(const std::function<Rational(Mask)>& f, std::size_t n) {
  MinOracle out;
  bool have = false;
  for (Mask s = (Mask{1} << n) - 1; s >= 1; --s) {
    const Rational v = f(s);
    if (!have || v < out.min) {
      out.min = v;
      out.fragments.clear();
      have = true;
    }
    if (v == out.min) out.fragments.insert(from_mask(s));
  }
  std::size_t smallest = n + 1;
  for (const auto& fr : out.fragments) smallest = std::min(smallest, fr.size());
  for (const auto& fr : out.fragments)
    if (fr.size() == smallest) out.atoms.insert(fr);
  return out;
}

/// min over nonempty A of |A.Y| / |A|, all subsets of G.
inline Rational mu_bruteforce(const GroupAction& X, const IndexSet& Y) {
  const std::size_t n = X.G().order();
  Rational best(static_cast<std::int64_t>(Y.size()));
  for (Mask m = 1; m < (Mask{1} << n); ++m) {
    const IndexSet A = from_mask(m);
    const Rational r(static_cast<std::int64_t>(oracle::act_set(X, A, Y).size()), static_cast<std::int64_t>(A.size()));
    best = std::min(best, r);
  }
  return best;
}

/// Vectors of F_p^d as integers in base p.
inline std::vector<std::uint32_t> digits(std::uint64_t code, std::uint32_t p, std::size_t d) {
  std::vector<std::uint32_t> v(d);
  for (std::size_t i = 0; i < d; ++i, code /= p) v[i] = static_cast<std::uint32_t>(code % p);
  return v;
}

/// Every vector of a subspace, by testing membership of all p^d vectors.
inline std::set<std::vector<std::uint32_t>> members(const Subspace& W) {
  std::set<std::vector<std::uint32_t>> out;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < W.ambient_dim(); ++i) total *= W.p();
  for (std::uint64_t c = 0; c < total; ++c) {
    auto v = digits(c, W.p(), W.ambient_dim());
    if (W.contains(v)) out.insert(v);
  }
  return out;
}

inline std::size_t log_p(std::size_t size, std::uint32_t p) {
  std::size_t d = 0;
  for (; size > 1; size /= p) ++d;
  return d;
}

inline std::uint64_t factorial(std::uint64_t n) { return n <= 1 ? 1 : n * factorial(n - 1); }

}  // namespace oracle
}  // namespace subact::testing
