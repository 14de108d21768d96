#include <gtest/gtest.h>

#include "support.hpp"

namespace subact {
namespace {

namespace oracle = testing::oracle;

Subspace random_subspace(Rng& rng, std::uint32_t p, std::size_t d) {
  std::vector<Vector> rows(rng.below(d + 1));
  for (auto& r : rows) {
    r.resize(d);
    for (auto& x : r) x = static_cast<std::uint32_t>(rng.below(p));
  }
  return Subspace::span(p, d, rows);
}

TEST(FiniteField, Arithmetic) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u})
    for (std::uint32_t a = 1; a < p; ++a) EXPECT_EQ(fp::mul(a, fp::inv(a, p), p), 1u);
  EXPECT_EQ(fp::sub(1, 3, 5), 3u);
  EXPECT_THROW(fp::require_prime(4), DomainError);
}

TEST(FpMatrix, RankAndProduct) {
  const FpMatrix a(3, {{1, 2}, {2, 1}});
  EXPECT_EQ(a.rank(), 1u);  // second row is twice the first mod 3
  const FpMatrix b(5, {{1, 2}, {3, 4}});
  EXPECT_TRUE(b.invertible());
  EXPECT_EQ(b * FpMatrix::identity(5, 2), b);
  EXPECT_EQ((b * b).apply({1, 0}), b.apply(b.apply({1, 0})));
}

TEST(Subspace, CanonicalForm) {
  const auto U = Subspace::span(3, 3, {{1, 2, 0}, {2, 1, 0}, {0, 0, 0}});
  EXPECT_EQ(U.dim(), 1u);
  EXPECT_EQ(U, Subspace::span(3, 3, {{2, 1, 0}}));
  EXPECT_TRUE(U.contains(Vector{2, 1, 0}));
  EXPECT_FALSE(U.contains(Vector{1, 1, 0}));
  EXPECT_EQ(Subspace::full(2, 3).dim(), 3u);
  EXPECT_TRUE(Subspace::zero(2, 3).is_zero());
}

TEST(Subspace, SumAndIntersectionExamples) {
  const auto U = Subspace::span(5, 3, {{1, 1, 0}, {0, 1, 4}});
  EXPECT_EQ(sum(U, U), U);
  EXPECT_EQ(intersection(U, U), U);
  const auto e1 = Subspace::span(2, 2, {{1, 0}});
  const auto e2 = Subspace::span(2, 2, {{0, 1}});
  EXPECT_EQ(sum(e1, e2), Subspace::full(2, 2));
  EXPECT_TRUE(intersection(e1, e2).is_zero());
  EXPECT_THROW(sum(e1, Subspace::full(3, 2)), StructuralError);
  EXPECT_THROW(intersection(e1, Subspace::full(2, 3)), StructuralError);
}

TEST(Subspace, IntersectionMatchesVectorEnumeration) {
  Rng rng(67);
  for (int t = 0; t < 200; ++t) {
    const auto U = random_subspace(rng, 3, 4);
    const auto W = random_subspace(rng, 3, 4);
    const auto mu = oracle::members(U), mw = oracle::members(W);
    std::set<std::vector<std::uint32_t>> common;
    std::set_intersection(mu.begin(), mu.end(), mw.begin(), mw.end(), std::inserter(common, common.begin()));
    const auto I = intersection(U, W);
    EXPECT_EQ(oracle::members(I), common);
    EXPECT_EQ(I.dim(), oracle::log_p(common.size(), 3));
    // Grassmann identity, both sides from independent routes
    EXPECT_EQ(sum(U, W).dim() + I.dim(), U.dim() + W.dim());
    EXPECT_EQ(oracle::log_p(mu.size(), 3), U.dim());
  }
}

TEST(Subspace, GrassmannOnAllPairsOfF2Fourth) {
  const auto all = enumerate_subspaces(2, 4);
  ASSERT_EQ(all.size(), 67u);
  for (const auto& U : all)
    for (const auto& W : all) ASSERT_EQ(sum(U, W).dim() + intersection(U, W).dim(), U.dim() + W.dim());
}

TEST(EnumerateSubspaces, Counts) {
  EXPECT_EQ(enumerate_subspaces(2, 2).size(), 5u);
  EXPECT_EQ(subspace_count(2, 4), 67u);
  EXPECT_EQ(subspace_count(3, 2), 6u);
  EXPECT_EQ(enumerate_subspaces(3, 3).size(), subspace_count(3, 3));
  const auto all = enumerate_subspaces(3, 3);
  EXPECT_EQ(std::set<Subspace>(all.begin(), all.end()).size(), all.size());
  Caps caps;
  caps.subspace_count = 10;
  EXPECT_THROW(enumerate_subspaces(2, 4, caps), CapacityError);
  const auto plane = Subspace::span(2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
  EXPECT_EQ(subspaces_of(plane).size(), 5u);
}

TEST(Representation, HomomorphismLaw) {
  const auto S3 = groups::symmetric(3);
  const auto rep = Representation::permutation_matrices(*actions::natural(S3), 5);
  for (Index g = 0; g < 6; ++g)
    for (Index h = 0; h < 6; ++h) EXPECT_EQ(rep.image(S3->mul(g, h)), rep.image(g) * rep.image(h));
  EXPECT_EQ(rep.image(0), FpMatrix::identity(5, 3));
  const auto shift = representations::cyclic_shift(4, 3);
  EXPECT_EQ(shift.group()->order(), 4u);
  EXPECT_EQ(shift.act(1, {1, 0, 0, 0}), (Vector{0, 1, 0, 0}));
}

TEST(Representation, RejectsNonHomomorphism) {
  const auto C3 = groups::cyclic(3);
  // an involution cannot be the image of an element of order 3
  EXPECT_THROW(Representation::from_generator_images(C3, 2, 2, {FpMatrix(2, {{0, 1}, {1, 0}})}), InvariantError);
  EXPECT_THROW(Representation::from_generator_images(C3, 2, 2, {FpMatrix(2, {{1, 1}, {1, 1}})}), InvariantError);
}

TEST(ActSubspace, Examples) {
  const auto rep = representations::swap(3);
  const auto W = Subspace::span(3, 2, {{1, 0}});
  EXPECT_EQ(act_subspace(rep, {0}, W), W);
  EXPECT_EQ(act_subspace(rep, {0, 1}, W), Subspace::full(3, 2));
  EXPECT_EQ(act_subspace(rep, {0, 1}, Subspace::full(3, 2)), Subspace::full(3, 2));
  EXPECT_EQ(act_subspace(rep, {1}, W).dim(), W.dim());
  EXPECT_THROW(act_subspace(rep, {}, W), DomainError);
}

TEST(SymmetrySets, Examples) {
  const auto rep = representations::swap(3);
  const auto W = Subspace::span(3, 2, {{1, 0}});
  EXPECT_EQ(subspace_symmetry_sets(rep, W, Rational(0)).first, (IndexSet{0, 1}));
  EXPECT_EQ(subspace_symmetry_sets(rep, W, Rational(1)).first, IndexSet{0});
  EXPECT_EQ(subspace_symmetry_sets(rep, W, Rational(1)).second, IndexSet{0});
  EXPECT_EQ(subspace_symmetry_sets(rep, Subspace::full(3, 2), Rational(1)).first, (IndexSet{0, 1}));
  EXPECT_THROW(subspace_symmetry_sets(rep, Subspace::zero(3, 2), Rational(1)), DomainError);
}

TEST(SymmetrySets, InverseClosedAndContainIdentity) {
  const auto S3 = groups::symmetric(3);
  const auto rep = Representation::permutation_matrices(*actions::natural(S3), 2);
  for (const auto& W : enumerate_subspaces(2, 3)) {
    if (W.is_zero()) continue;
    for (const Rational& a : {Rational(1, 3), Rational(1, 2), Rational(1)}) {
      const auto [sym, gamma] = subspace_symmetry_sets(rep, W, a);
      EXPECT_TRUE(contains(sym, 0));
      EXPECT_TRUE(contains(gamma, 0));
      EXPECT_EQ(inverse_set(*S3, sym), sym);
      EXPECT_EQ(inverse_set(*S3, gamma), gamma);
    }
    EXPECT_EQ(subspace_symmetry_sets(rep, W, Rational(1)).first, subspace_stabilizer(rep, W).members());
  }
}

TEST(GammaW, SubmodularAndInvariant) {
  const auto rep = representations::swap(2);
  const auto W = Subspace::span(2, 2, {{1, 0}});
  const auto G = rep.group();
  for (const Rational& l : {Rational(0), Rational(1, 2), Rational(1), Rational(2)}) {
    const auto f = functions::gamma_W(rep, W, l);
    EXPECT_EQ(f(Mask{0}), Rational(0));
    EXPECT_TRUE(check_submodular(f).holds);
    EXPECT_TRUE(oracle::submodular_pairwise([&f](Mask s) { return f(s); }, 2));
    EXPECT_TRUE(check_invariance(f, *actions::left_translation(G)).holds);
  }
  const auto S3 = groups::symmetric(3);
  const auto rep3 = Representation::permutation_matrices(*actions::natural(S3), 3);
  const auto f = functions::gamma_W(rep3, Subspace::span(3, 3, {{1, 2, 0}}), Rational(1, 3));
  EXPECT_TRUE(check_submodular(f).holds);
  EXPECT_TRUE(check_invariance(f, *actions::left_translation(S3)).holds);
}

TEST(DeltaA, ValuesAndSubmodularity) {
  const auto rep = representations::swap(2);
  const auto id = functions::delta_A(rep, {0}, Rational(1));
  EXPECT_EQ(id(Subspace::full(2, 2)), Rational(0));
  const auto lattice = enumerate_subspaces(2, 2);
  for (const Rational& l : {Rational(0), Rational(1, 2), Rational(1)})
    EXPECT_TRUE(check_lattice_submodular(functions::delta_A(rep, {0, 1}, l), lattice).holds);
  const auto shift = representations::cyclic_shift(3, 2);
  EXPECT_TRUE(check_lattice_submodular(functions::delta_A(shift, {0, 1}, Rational(1, 2)), enumerate_subspaces(2, 3)).holds);
}

TEST(LatticeMinimize, DimensionAtomsAreLines) {
  const auto r = minimize_on_lattice(functions::dimension(), 3, 2);
  EXPECT_EQ(r.min_value, Rational(1));
  EXPECT_EQ(r.atoms.size(), 4u);
  EXPECT_EQ(r.atom_dim, 1u);
  EXPECT_TRUE(atoms_pairwise_trivial(r));
}

TEST(LatticeMinimize, SwapDeltaAtoms) {
  const auto rep = representations::swap(2);
  const auto r = minimize_on_lattice(functions::delta_A(rep, {0, 1}, Rational(1, 2)), 2, 2);
  EXPECT_EQ(r.min_value, Rational(1, 2));
  ASSERT_EQ(r.atoms.size(), 1u);
  EXPECT_EQ(r.atoms[0], Subspace::span(2, 2, {{1, 1}}));
  EXPECT_TRUE(atoms_pairwise_trivial(r));
}

TEST(LatticeMinimize, AtomsMeetTriviallyOnRandomInstances) {
  Rng rng(71);
  const auto S3 = groups::symmetric(3);
  const auto rep = Representation::permutation_matrices(*actions::natural(S3), 2);
  for (int t = 0; t < 20; ++t) {
    const IndexSet A = rng.nonempty_subset(6, 3);
    const Rational l(static_cast<std::int64_t>(rng.below(5)), 4);
    EXPECT_TRUE(atoms_pairwise_trivial(minimize_on_lattice(functions::delta_A(rep, A, l), 2, 3)));
  }
}

}  // namespace
}  // namespace subact
