#pragma once

#include <string>
#include <vector>

#include "subact/group.hpp"

namespace subact::groups {

inline Permutation cycle_on(std::size_t degree, std::size_t offset, std::size_t length) {
  std::vector<Index> img(degree);
  for (std::size_t i = 0; i < degree; ++i) img[i] = static_cast<Index>(i);
  for (std::size_t i = 0; i < length; ++i)
    img[offset + i] = static_cast<Index>(offset + (i + 1) % length);
  return Permutation::from_images(std::move(img));
}

/// S_n acting on {0..n-1}.
inline GroupPtr symmetric(std::size_t n, const Caps& caps = {}) {
  if (n == 0) throw DomainError("symmetric group needs n >= 1");
  if (n == 1) return FiniteGroup::closure_from_generators({Permutation::identity(1)}, caps);
  return FiniteGroup::closure_from_generators(
      {Permutation::from_cycles(n, "(0 1)"), cycle_on(n, 0, n)}, caps);
}

/// A_n, generated by the 3-cycles (0 1 k).
inline GroupPtr alternating(std::size_t n, const Caps& caps = {}) {
  if (n < 3) return FiniteGroup::closure_from_generators({Permutation::identity(std::max<std::size_t>(n, 1))}, caps);
  std::vector<Permutation> gens;
  for (std::size_t k = 2; k < n; ++k)
    gens.push_back(Permutation::from_cycles(n, "(0 1 " + std::to_string(k) + ")"));
  return FiniteGroup::closure_from_generators(gens, caps);
}

/// C_n acting regularly on {0..n-1} by rotation.
inline GroupPtr cyclic(std::size_t n, const Caps& caps = {}) {
  if (n == 0) throw DomainError("cyclic group needs n >= 1");
  return FiniteGroup::closure_from_generators({cycle_on(n, 0, n)}, caps);
}

/// Symmetries of the regular n-gon on its n vertices (order 2n).
inline GroupPtr dihedral(std::size_t n, const Caps& caps = {}) {
  if (n < 3) throw DomainError("dihedral group needs n >= 3");
  std::vector<Index> refl(n);
  for (std::size_t x = 0; x < n; ++x) refl[x] = static_cast<Index>((n - x) % n);
  return FiniteGroup::closure_from_generators(
      {cycle_on(n, 0, n), Permutation::from_images(std::move(refl))}, caps);
}

inline bool is_prime(std::size_t p) {
  if (p < 2) return false;
  for (std::size_t d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

/// The map x -> a x + b on F_p as a permutation of {0..p-1}.
inline Permutation affine_map(std::size_t p, std::size_t a, std::size_t b) {
  if (a % p == 0) throw DomainError("affine map needs a invertible mod p");
  std::vector<Index> img(p);
  for (std::size_t x = 0; x < p; ++x) img[x] = static_cast<Index>((a * x + b) % p);
  return Permutation::from_images(std::move(img));
}

/// Affine group {x -> a x + b : a in F_p^*, b in F_p} on the p points of the line.
inline GroupPtr affine_gl1(std::size_t p, const Caps& caps = {}) {
  if (!is_prime(p)) throw DomainError("affine_gl1 needs a prime, got " + std::to_string(p));
  if (p == 2) return FiniteGroup::closure_from_generators({affine_map(2, 1, 1)}, caps);
  std::size_t root = 2;
  for (; root < p; ++root) {
    std::size_t x = 1, ord = 0;
    do {
      x = x * root % p;
      ++ord;
    } while (x != 1);
    if (ord == p - 1) break;
  }
  return FiniteGroup::closure_from_generators({affine_map(p, 1, 1), affine_map(p, root, 0)}, caps);
}

/// G x H acting on the disjoint union of their point sets.
inline GroupPtr direct_product(const FiniteGroup& G, const FiniteGroup& H, const Caps& caps = {}) {
  const std::size_t dg = G.degree(), dh = H.degree();
  std::vector<Permutation> gens;
  auto embed = [&](const Permutation& p, std::size_t offset) {
    std::vector<Index> img(dg + dh);
    for (std::size_t i = 0; i < dg + dh; ++i) img[i] = static_cast<Index>(i);
    for (std::size_t i = 0; i < p.degree(); ++i)
      img[offset + i] = static_cast<Index>(offset + p(static_cast<Index>(i)));
    return Permutation::from_images(std::move(img));
  };
  for (Index g : G.generators()) gens.push_back(embed(G.element(g), 0));
  for (Index h : H.generators()) gens.push_back(embed(H.element(h), dg));
  return FiniteGroup::closure_from_generators(gens, caps);
}

inline GroupPtr from_generators(const std::vector<Permutation>& gens, const Caps& caps = {}) {
  return FiniteGroup::closure_from_generators(gens, caps);
}

}  // namespace subact::groups
