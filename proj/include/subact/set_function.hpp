#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subact/action.hpp"
#include "subact/random.hpp"
#include "subact/rational.hpp"

namespace subact {

/// A function on the subsets of {0..ground_size-1} (ground_size <= 64).
/// Values are numerator(S) / denominator with a fixed positive denominator,
/// so comparisons between values are integer comparisons.
class SetFunction {
 public:
  using Numerator = std::function<std::int64_t(Mask)>;

  SetFunction(std::size_t ground_size, std::int64_t denominator, Numerator numerator, std::string label)
      : ground_size_(ground_size), denominator_(denominator), numerator_(std::move(numerator)), label_(std::move(label)) {
    require_cap("set_function_ground", 64, ground_size_, "subsets are stored as 64-bit masks");
    if (denominator_ <= 0) throw DomainError("set function denominator must be positive");
  }

  std::size_t ground_size() const noexcept { return ground_size_; }
  std::int64_t denominator() const noexcept { return denominator_; }
  const std::string& label() const noexcept { return label_; }
  Mask full() const noexcept { return ground_size_ == 64 ? ~Mask{0} : (Mask{1} << ground_size_) - 1; }

  std::int64_t numerator(Mask s) const { return numerator_(s); }
  Rational operator()(Mask s) const { return Rational(numerator_(s), denominator_); }
  Rational operator()(const IndexSet& s) const { return (*this)(to_mask(s)); }

 private:
  std::size_t ground_size_;
  std::int64_t denominator_;
  Numerator numerator_;
  std::string label_;
};

namespace detail {

/// Bitmask images g.Y for every g, split into 64-bit words.
struct ImageMasks {
  std::size_t words = 1;
  std::vector<Mask> bits;  // |G| * words

  ImageMasks(const GroupAction& action, const IndexSet& Y) : words((action.domain_size() + 63) / 64) {
    if (words == 0) words = 1;
    bits.assign(action.G().order() * words, 0);
    for (Index g = 0; g < action.G().order(); ++g)
      for (Index y : Y) {
        Index x = action.act(g, y);
        bits[g * words + x / 64] |= Mask{1} << (x % 64);
      }
  }

  /// |A.Y| for A given as a mask over G.
  std::int64_t union_size(Mask A) const {
    if (words == 1) {
      Mask acc = 0;
      for (Mask m = A; m; m &= m - 1) acc |= bits[static_cast<std::size_t>(std::countr_zero(m))];
      return std::popcount(acc);
    }
    std::vector<Mask> acc(words, 0);
    for (Mask m = A; m; m &= m - 1) {
      const std::size_t g = static_cast<std::size_t>(std::countr_zero(m));
      for (std::size_t w = 0; w < words; ++w) acc[w] |= bits[g * words + w];
    }
    std::int64_t total = 0;
    for (Mask w : acc) total += std::popcount(w);
    return total;
  }
};

inline void require_nonnegative(const Rational& r, const char* what) {
  if (r < Rational(0)) throw DomainError(std::string(what) + " must be >= 0, got " + to_string(r));
}

}  // namespace detail

namespace functions {

/// S -> |S|
inline SetFunction cardinality(std::size_t n) {
  return SetFunction(n, 1, [](Mask s) { return static_cast<std::int64_t>(std::popcount(s)); }, "cardinality");
}

/// Y -> |E_Y|, E_Y = {(g, y) in G x Y : g.y not in Y}. Uses
/// |E_Y| = sum_{y in Y} |G_y| |O_y \ Y|.
inline SetFunction cut(const ActionPtr& action) {
  const std::size_t n = action->domain_size();
  require_cap("set_function_ground", 64, n);
  OrbitDecomposition od = orbit_decomposition(*action);
  std::vector<Mask> orbit_mask(n);
  std::vector<std::int64_t> stab(n);
  const auto order = static_cast<std::int64_t>(action->G().order());
  for (Index y = 0; y < n; ++y) {
    const IndexSet& orbit = od.orbits[od.orbit_of[y]];
    orbit_mask[y] = to_mask(orbit);
    stab[y] = order / static_cast<std::int64_t>(orbit.size());
  }
  return SetFunction(
      n, 1,
      [orbit_mask = std::move(orbit_mask), stab = std::move(stab)](Mask Y) {
        std::int64_t total = 0;
        for (Mask m = Y; m; m &= m - 1) {
          auto y = static_cast<std::size_t>(std::countr_zero(m));
          total += stab[y] * std::popcount(orbit_mask[y] & ~Y);
        }
        return total;
      },
      "cut");
}

/// A -> |A.Y| - lambda |A| on the subsets of G.
inline SetFunction c_Y(const ActionPtr& action, const IndexSet& Y, const Rational& lambda) {
  detail::require_nonnegative(lambda, "lambda");
  const std::size_t n = action->G().order();
  require_cap("set_function_ground", 64, n);
  auto images = std::make_shared<detail::ImageMasks>(*action, Y);
  const std::int64_t num = lambda.numerator(), den = lambda.denominator();
  return SetFunction(
      n, den,
      [images, num, den](Mask A) { return den * images->union_size(A) - num * std::popcount(A); },
      "c_Y(lambda=" + to_string(lambda) + ")");
}

/// Y -> |A.Y| - lambda |Y| on the subsets of X.
inline SetFunction d_A(const ActionPtr& action, const IndexSet& A, const Rational& lambda) {
  detail::require_nonnegative(lambda, "lambda");
  if (A.empty()) throw DomainError("d_A needs a nonempty A");
  const std::size_t n = action->domain_size();
  require_cap("set_function_ground", 64, n);
  std::vector<Mask> images(n);  // A.{y}
  for (Index y = 0; y < n; ++y) images[y] = to_mask(act_set(*action, A, {y}));
  const std::int64_t num = lambda.numerator(), den = lambda.denominator();
  return SetFunction(
      n, den,
      [images = std::move(images), num, den](Mask Y) {
        Mask acc = 0;
        for (Mask m = Y; m; m &= m - 1) acc |= images[static_cast<std::size_t>(std::countr_zero(m))];
        return den * std::popcount(acc) - num * std::popcount(Y);
      },
      "d_A(lambda=" + to_string(lambda) + ")");
}

}  // namespace functions

/// lambda f + mu g, for nonnegative weights.
inline SetFunction combine(const SetFunction& f, const SetFunction& g, const Rational& lambda, const Rational& mu) {
  if (lambda < Rational(0) || mu < Rational(0))
    throw DomainError("combine needs nonnegative weights, got " + to_string(lambda) + " and " + to_string(mu));
  if (f.ground_size() != g.ground_size()) throw StructuralError("combine needs equal ground sets");
  // value = (a nf)/(b df) + (c ng)/(d dg) over the common denominator L
  const std::int64_t bf = lambda.denominator() * f.denominator();
  const std::int64_t dg = mu.denominator() * g.denominator();
  const std::int64_t L = std::lcm(bf, dg);
  const std::int64_t wf = lambda.numerator() * (L / bf);
  const std::int64_t wg = mu.numerator() * (L / dg);
  return SetFunction(
      f.ground_size(), L, [f, g, wf, wg](Mask s) { return wf * f.numerator(s) + wg * g.numerator(s); },
      to_string(lambda) + "*" + f.label() + "+" + to_string(mu) + "*" + g.label());
}

/// True when u(A ∪ B) + u(A ∩ B) = u(A) + u(B) on every checked pair;
/// exhaustive up to 10 ground items, sampled above.
inline bool is_modular(const SetFunction& u, const Caps& caps = {}) {
  const std::size_t n = u.ground_size();
  auto holds = [&](Mask a, Mask b) {
    return u.numerator(a | b) + u.numerator(a & b) == u.numerator(a) + u.numerator(b);
  };
  if (n <= 10) {
    for (Mask a = 0; a <= u.full(); ++a)
      for (Mask b = 0; b <= u.full(); ++b)
        if (!holds(a, b)) return false;
    return true;
  }
  Rng rng(caps.seed);
  for (std::size_t t = 0; t < caps.sample_trials; ++t)
    if (!holds(rng.mask(static_cast<unsigned>(n)), rng.mask(static_cast<unsigned>(n)))) return false;
  return true;
}

/// f - lambda u for a modular u.
inline SetFunction subtract_modular(const SetFunction& f, const SetFunction& u, const Rational& lambda,
                                    const Caps& caps = {}) {
  if (f.ground_size() != u.ground_size()) throw StructuralError("subtract_modular needs equal ground sets");
  if (!is_modular(u, caps)) throw DomainError("subtract_modular: '" + u.label() + "' is not modular");
  const std::int64_t bf = f.denominator();
  const std::int64_t du = lambda.denominator() * u.denominator();
  const std::int64_t L = std::lcm(bf, du);
  const std::int64_t wf = L / bf;
  const std::int64_t wu = lambda.numerator() * (L / du);
  return SetFunction(
      f.ground_size(), L, [f, u, wf, wu](Mask s) { return wf * f.numerator(s) - wu * u.numerator(s); },
      f.label() + "-" + to_string(lambda) + "*" + u.label());
}

/// Outcome of a property check over subsets.
struct SubmodularVerdict {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  // first violation: f(A1+s) - f(A1) < f(A2+s) - f(A2) with A1 ⊆ A2, s ∉ A2
  std::optional<std::tuple<IndexSet, IndexSet, Index>> counterexample;
};

/// Diminishing-returns check: f(A1 ∪ {s}) - f(A1) >= f(A2 ∪ {s}) - f(A2)
/// for all A1 ⊆ A2 and s ∉ A2. Exhaustive up to caps.exhaustive_submodular
/// ground items, randomized triples above.
inline SubmodularVerdict check_submodular(const SetFunction& f, const Caps& caps = {}) {
  const std::size_t n = f.ground_size();
  SubmodularVerdict v;
  if (n <= caps.exhaustive_submodular) {
    const std::size_t total = std::size_t{1} << n;
    std::vector<std::int64_t> val(total);
    for (std::size_t s = 0; s < total; ++s) val[s] = f.numerator(s);
    for (Mask A2 = 0; A2 < total; ++A2) {
      const Mask outside = f.full() & ~A2;
      for (Mask A1 = A2;; A1 = (A1 - 1) & A2) {
        for (Mask rest = outside; rest; rest &= rest - 1) {
          const Mask s = rest & (~rest + 1);
          ++v.checked;
          if (val[A1 | s] - val[A1] < val[A2 | s] - val[A2]) {
            v.holds = false;
            v.counterexample = {from_mask(A1), from_mask(A2), static_cast<Index>(std::countr_zero(s))};
            return v;
          }
        }
        if (A1 == 0) break;
      }
    }
    return v;
  }
  v.exhaustive = false;
  v.seed = caps.seed;
  Rng rng(caps.seed);
  for (std::size_t t = 0; t < caps.sample_trials; ++t) {
    const Mask A2 = rng.mask(static_cast<unsigned>(n));
    const Mask A1 = A2 & rng.mask(static_cast<unsigned>(n));
    const Mask outside = f.full() & ~A2;
    if (outside == 0) continue;
    Index pick = static_cast<Index>(rng.below(static_cast<std::uint64_t>(std::popcount(outside))));
    Mask rest = outside;
    for (Index k = 0; k < pick; ++k) rest &= rest - 1;
    const Mask s = rest & (~rest + 1);
    ++v.checked;
    if (f.numerator(A1 | s) - f.numerator(A1) < f.numerator(A2 | s) - f.numerator(A2)) {
      v.holds = false;
      v.counterexample = {from_mask(A1), from_mask(A2), static_cast<Index>(std::countr_zero(s))};
      return v;
    }
  }
  return v;
}

struct InvarianceVerdict {
  bool holds = true;
  bool exhaustive = true;
  std::size_t checked = 0;
  std::uint64_t seed = 0;
  std::optional<std::pair<Index, IndexSet>> counterexample;  // (g, S) with f(g.S) != f(S)
};

/// g.S as a mask, for an action on the ground set of a set function.
inline Mask act_mask(const GroupAction& action, Index g, Mask S) {
  Mask out = 0;
  for (Mask m = S; m; m &= m - 1) out |= Mask{1} << action.act(g, static_cast<Index>(std::countr_zero(m)));
  return out;
}

/// f(g.S) = f(S) for every g and every (or sampled) S. The action must be on
/// the ground set of f: pass the left translation action for functions on P(G).
inline InvarianceVerdict check_invariance(const SetFunction& f, const GroupAction& action, const Caps& caps = {}) {
  if (action.domain_size() != f.ground_size())
    throw StructuralError("check_invariance: action domain and ground set differ in size");
  const std::size_t n = f.ground_size();
  InvarianceVerdict v;
  auto test = [&](Index g, Mask S) {
    ++v.checked;
    if (f.numerator(act_mask(action, g, S)) != f.numerator(S)) {
      v.holds = false;
      v.counterexample = {g, from_mask(S)};
      return false;
    }
    return true;
  };
  if (n <= caps.exhaustive_submodular) {
    for (Index g = 0; g < action.G().order(); ++g)
      for (Mask S = 0; S <= f.full(); ++S)
        if (!test(g, S)) return v;
    return v;
  }
  v.exhaustive = false;
  v.seed = caps.seed;
  Rng rng(caps.seed);
  for (std::size_t t = 0; t < caps.sample_trials; ++t)
    for (Index g = 0; g < action.G().order(); ++g)
      if (!test(g, rng.mask(static_cast<unsigned>(n)))) return v;
  return v;
}

}  // namespace subact
