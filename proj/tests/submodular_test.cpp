#include <gtest/gtest.h>

#include "support.hpp"

namespace subact {
namespace {

using testing::elems;
using testing::idx;
namespace oracle = testing::oracle;

std::function<Rational(Mask)> eval(const SetFunction& f) {
  return [&f](Mask s) { return f(s); };
}

// unions of any nonempty selection of the given orbits
std::set<IndexSet> orbit_unions(const std::vector<IndexSet>& orbits) {
  std::set<IndexSet> out;
  for (Mask pick = 1; pick < (Mask{1} << orbits.size()); ++pick) {
    IndexSet u;
    for (Mask m = pick; m; m &= m - 1) u = set_union(u, orbits[std::countr_zero(m)]);
    out.insert(u);
  }
  return out;
}

// <sigma> with sigma = (0 1 2)(3 4) acting on 6 points
ActionPtr cycle_type_321() {
  return actions::natural(groups::from_generators({Permutation::from_cycles(6, "(0 1 2)(3 4)")}));
}

TEST(CutFunction, MatchesLiteralEdgeCount) {
  const std::vector<ActionPtr> pool = {actions::natural(groups::symmetric(4)), actions::natural(groups::dihedral(5)),
                                       actions::conjugation(groups::symmetric(3)), cycle_type_321()};
  for (const auto& X : pool) {
    const auto f = functions::cut(X);
    for (Mask s = 0; s <= f.full(); ++s) ASSERT_EQ(f(s), Rational(oracle::cut_literal(*X, from_mask(s))));
    EXPECT_EQ(f(Mask{0}), Rational(0));
    EXPECT_EQ(f(f.full()), Rational(0));
  }
}

TEST(CheckSubmodular, CutAndCardinality) {
  const auto X = actions::natural(groups::dihedral(6));
  const auto cut = functions::cut(X);
  const auto v = check_submodular(cut);
  EXPECT_TRUE(v.holds);
  EXPECT_TRUE(v.exhaustive);
  EXPECT_TRUE(oracle::submodular_pairwise(eval(cut), 6));
  EXPECT_TRUE(check_submodular(functions::cardinality(9)).holds);
}

TEST(CheckSubmodular, NegatedCoverageHasWitness) {
  const auto S5 = groups::symmetric(5);
  const auto X = actions::natural(S5);
  const IndexSet A = generated_subgroup(S5, elems(*S5, {"(2 3)", "(2 3 4)"})).members();
  const auto cover = functions::d_A(X, A, Rational(0));
  const SetFunction neg(5, 1, [cover](Mask s) { return -cover.numerator(s); }, "-|A.Y|");
  const auto v = check_submodular(neg);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.counterexample);
  const auto& [A1, A2, s] = *v.counterexample;
  EXPECT_TRUE(is_subset(A1, A2));
  EXPECT_FALSE(contains(A2, s));
  const Mask m1 = to_mask(A1), m2 = to_mask(A2), bit = Mask{1} << s;
  EXPECT_LT(neg(m1 | bit) - neg(m1), neg(m2 | bit) - neg(m2));
  EXPECT_FALSE(oracle::submodular_pairwise(eval(neg), 5));
}

TEST(CheckSubmodular, SampledAboveCapReportsSeed) {
  Caps caps;
  caps.exhaustive_submodular = 4;
  caps.sample_trials = 500;
  const auto v = check_submodular(functions::cut(actions::natural(groups::dihedral(6))), caps);
  EXPECT_TRUE(v.holds);
  EXPECT_FALSE(v.exhaustive);
  EXPECT_EQ(v.seed, caps.seed);
  EXPECT_LE(v.checked, 500u);
  EXPECT_GT(v.checked, 400u);
}

TEST(CheckSubmodular, AgreesWithPairwiseFormOnRandomFunctions) {
  Rng rng(41);
  for (int t = 0; t < 60; ++t) {
    std::vector<std::int64_t> table(1 << 5);
    for (auto& x : table) x = static_cast<std::int64_t>(rng.below(6));
    const SetFunction f(5, 1, [table](Mask s) { return table[s]; }, "table");
    EXPECT_EQ(check_submodular(f).holds, oracle::submodular_pairwise(eval(f), 5));
  }
}

TEST(CheckInvariance, CYIsInvariant) {
  const auto S4 = groups::symmetric(4);
  const auto X = actions::natural(S4);
  Caps caps;
  caps.sample_trials = 300;
  for (const Rational& l : {Rational(0), Rational(1, 6), Rational(1, 2)}) {
    const auto v = check_invariance(functions::c_Y(X, {0, 1}, l), *actions::left_translation(S4), caps);
    EXPECT_TRUE(v.holds);
  }
}

TEST(CheckInvariance, DAIsInvariantForAbelianGroups) {
  const auto G = groups::direct_product(*groups::cyclic(2), *groups::cyclic(4));
  const auto X = actions::natural(G);
  Rng rng(43);
  for (int t = 0; t < 10; ++t) {
    const auto f = functions::d_A(X, rng.nonempty_subset(8, 3), Rational(1, 2));
    EXPECT_TRUE(check_invariance(f, *X).holds);
  }
}

TEST(CheckInvariance, DAViolationInS5) {
  const auto S5 = groups::symmetric(5);
  const auto X = actions::natural(S5);
  // A permutes the points {2,3,4}, Y = {0,1}, g = (0 4)(1 3)
  const IndexSet A = generated_subgroup(S5, elems(*S5, {"(2 3)", "(2 3 4)"})).members();
  ASSERT_EQ(A.size(), 6u);
  const IndexSet Y = {0, 1};
  const Index g = idx(*S5, "(0 4)(1 3)");
  EXPECT_EQ(act_set(*X, A, Y).size(), 2u);
  EXPECT_EQ(X->image(g, Y), (IndexSet{3, 4}));
  EXPECT_EQ(act_set(*X, A, X->image(g, Y)), (IndexSet{2, 3, 4}));
  const auto f = functions::d_A(X, A, Rational(1, 2));
  EXPECT_NE(f(Y), f(X->image(g, Y)));
  const auto v = check_invariance(f, *X);
  ASSERT_FALSE(v.holds);
  const auto& [h, S] = *v.counterexample;
  EXPECT_NE(f(X->image(h, S)), f(S));
}

TEST(Combine, Examples) {
  const auto X = actions::natural(groups::dihedral(5));
  const auto cut = functions::cut(X);
  const auto same = combine(cut, cut, Rational(1), Rational(0));
  const auto twice = combine(cut, cut, Rational(1), Rational(1));
  for (Mask s = 0; s <= cut.full(); ++s) {
    EXPECT_EQ(same(s), cut(s));
    EXPECT_EQ(twice(s), Rational(2) * cut(s));
    EXPECT_GE(twice(s), Rational(0));
  }
  EXPECT_TRUE(check_submodular(twice).holds);
  EXPECT_THROW(combine(cut, cut, Rational(-1), Rational(1)), DomainError);
  const auto mixed = combine(cut, functions::d_A(X, {0, 1}, Rational(1, 3)), Rational(2, 5), Rational(3, 7));
  EXPECT_TRUE(check_submodular(mixed).holds);
  EXPECT_EQ(mixed(Mask{3}), Rational(2, 5) * cut(Mask{3}) + Rational(3, 7) * functions::d_A(X, {0, 1}, Rational(1, 3))(Mask{3}));
}

TEST(SubtractModular, CutMinusCardinality) {
  const auto X = actions::natural(groups::symmetric(4));
  const auto f = subtract_modular(functions::cut(X), functions::cardinality(4), Rational(1));
  EXPECT_TRUE(check_submodular(f).holds);
  EXPECT_EQ(f(Mask{1}), functions::cut(X)(Mask{1}) - Rational(1));
  EXPECT_THROW(subtract_modular(functions::cut(X), functions::cut(X), Rational(1)), DomainError);
}

TEST(Minimize, CutFragmentsAreOrbitUnions) {
  const auto X = cycle_type_321();
  const auto od = orbit_decomposition(*X);
  const auto f = functions::cut(X);
  const auto r = minimize_nonempty(f);
  EXPECT_EQ(r.min_value, Rational(0));
  EXPECT_EQ(std::set<IndexSet>(r.fragments.begin(), r.fragments.end()), orbit_unions(od.orbits));
  EXPECT_EQ(r.atoms, (std::vector<IndexSet>{{5}}));
  EXPECT_EQ(r.atom_size, 1u);
  const auto o = oracle::minimize_reverse(eval(f), 6);
  EXPECT_EQ(o.min, r.min_value);
  EXPECT_EQ(o.atoms, std::set<IndexSet>(r.atoms.begin(), r.atoms.end()));
}

TEST(Minimize, DAFragmentsWithSigmaSubgroup) {
  const auto X = cycle_type_321();
  const IndexSet A = X->G().all();
  const auto od = orbit_decomposition(*X);
  for (const Rational& l : {Rational(1, 4), Rational(1, 2), Rational(3, 4)}) {
    const auto r = minimize_nonempty(functions::d_A(X, A, l));
    EXPECT_EQ(r.fragments, (std::vector<IndexSet>{{5}}));
    EXPECT_EQ(r.atoms, r.fragments);
  }
  const auto r = minimize_nonempty(functions::d_A(X, A, Rational(1)));
  EXPECT_EQ(std::set<IndexSet>(r.fragments.begin(), r.fragments.end()), orbit_unions(od.orbits));
}

TEST(Minimize, FragmentListTruncatesButCountsExactly) {
  Caps caps;
  caps.fragment_list = 3;
  const auto r = minimize_nonempty(functions::cut(cycle_type_321()), caps);
  EXPECT_EQ(r.fragment_count, 7u);
  EXPECT_EQ(r.fragments.size(), 3u);
  EXPECT_TRUE(r.fragments_truncated);
  Caps tight;
  tight.exhaustive_minimize = 4;
  EXPECT_THROW(minimize_nonempty(functions::cut(cycle_type_321()), tight), CapacityError);
}

TEST(Minimize, AgreesWithReverseEnumeration) {
  Rng rng(47);
  const auto G = groups::dihedral(4);
  const auto X = actions::natural(G);
  for (int t = 0; t < 40; ++t) {
    const Rational l(static_cast<std::int64_t>(rng.below(5)), 4);
    const auto f = combine(functions::cut(X), functions::d_A(X, rng.nonempty_subset(8, 3), l), Rational(1, 3), Rational(1));
    const auto r = minimize_nonempty(f);
    const auto o = oracle::minimize_reverse(eval(f), 4);
    EXPECT_EQ(r.min_value, o.min);
    EXPECT_EQ(std::set<IndexSet>(r.fragments.begin(), r.fragments.end()), o.fragments);
    EXPECT_EQ(std::set<IndexSet>(r.atoms.begin(), r.atoms.end()), o.atoms);
  }
}

TEST(Core, Examples) {
  const auto X = cycle_type_321();
  EXPECT_EQ(core_set(functions::cut(X), *X).points, IndexSet{5});
  const auto nat = actions::natural(groups::cyclic(4));
  EXPECT_EQ(core_set(functions::d_A(nat, {0, 1}, Rational(1, 2)), *nat).points, range_set(4));
  // the only atom {0} is fixed by the point stabilizer of 0
  const auto fix = groups::from_generators({Permutation::from_cycles(4, "(1 2 3)")});
  const auto fx = actions::natural(fix);
  EXPECT_EQ(core_set(functions::cut(fx), *fx).points, IndexSet{0});
}

TEST(Core, NonInvariantFunctionRejected) {
  const auto S5 = groups::symmetric(5);
  const auto X = actions::natural(S5);
  const IndexSet A = generated_subgroup(S5, elems(*S5, {"(2 3)", "(2 3 4)"})).members();
  Caps caps;
  caps.sample_trials = 200;
  EXPECT_THROW(core_set(functions::d_A(X, A, Rational(1, 2)), *X, caps), DomainError);
}

TEST(AtomIdentity, StabilizerAtLambdaZero) {
  const auto S4 = groups::symmetric(4);
  const auto X = actions::natural(S4);
  const IndexSet Y = {0, 1};
  const auto f = functions::c_Y(X, Y, Rational(0));
  const IndexSet GY = set_stabilizer(*X, Y).members();
  EXPECT_EQ(f(GY), minimize_nonempty(f).min_value);
  EXPECT_EQ(f(GY), Rational(2));
}

TEST(AtomIdentity, ReturnsSubgroupWhoseCosetsAreTheAtoms) {
  const std::vector<ActionPtr> pool = {actions::natural(groups::symmetric(4)), actions::natural(groups::dihedral(6)),
                                       actions::conjugation(groups::symmetric(3)), cycle_type_321()};
  for (const auto& X : pool) {
    const auto G = X->group();
    const IndexSet Y = {0};
    const Rational mu = mu_ratio(X, Y).mu;
    for (const Rational& l : {mu / Rational(2), mu}) {
      const auto f = functions::c_Y(X, Y, l);
      const Subgroup H = atom_identity(f, G);
      EXPECT_TRUE(is_subgroup(*G, H.members()));
      EXPECT_TRUE(is_subset(set_stabilizer(*X, Y).members(), H.members()));
      const auto r = minimize_nonempty(f);
      IndexSet covered;
      for (const auto& atom : r.atoms) {
        EXPECT_EQ(atom, product_set(*G, {atom.front()}, H.members()));
        EXPECT_TRUE(disjoint(covered, atom));
        covered = set_union(covered, atom);
      }
      EXPECT_EQ(covered, G->all());
    }
  }
}

TEST(AtomIdentity, PrimeCyclicWithSingletonsOptimal) {
  const auto C7 = groups::cyclic(7);
  const auto f = functions::c_Y(actions::left_translation(C7), {0}, Rational(1, 2));
  EXPECT_EQ(atom_identity(f, C7).members(), IndexSet{0});
}

TEST(AtomIdentity, RejectsNonInvariant) {
  const auto C4 = groups::cyclic(4);
  const SetFunction f(4, 1, [](Mask s) { return static_cast<std::int64_t>(std::popcount(s)) + ((s & 1) ? 0 : 3); }, "skew");
  EXPECT_THROW(atom_identity(f, C4), DomainError);
}

TEST(MuRatio, NaturalSymmetricGroups) {
  for (std::size_t n = 3; n <= 5; ++n) {
    const auto X = actions::natural(groups::symmetric(n));
    for (std::size_t k = 1; k < n; ++k) {
      const IndexSet Y = range_set(static_cast<Index>(k));
      const auto r = mu_ratio(X, Y);
      EXPECT_EQ(r.mu, Rational(1, static_cast<std::int64_t>(oracle::factorial(n - 1))));
      EXPECT_EQ(r.dinkelbach, r.mu);
    }
  }
}

TEST(MuRatio, FreeActionsAtLeastOne) {
  for (const auto& G : {groups::cyclic(6), groups::dihedral(4), groups::symmetric(3)}) {
    const auto X = actions::left_translation(G);
    Rng rng(53);
    for (int t = 0; t < 5; ++t) EXPECT_GE(mu_ratio(X, rng.nonempty_subset(static_cast<Index>(G->order()), 3)).mu, Rational(1));
  }
}

TEST(MuRatio, ConjugationCentralSet) {
  const auto D4 = groups::dihedral(4);
  const auto X = actions::conjugation(D4);
  IndexSet center;
  for (Index g = 0; g < 8; ++g) {
    bool central = true;
    for (Index h = 0; h < 8; ++h) central &= D4->commute(g, h);
    if (central) center.push_back(g);
  }
  ASSERT_EQ(center.size(), 2u);
  for (const IndexSet& Y : {IndexSet{center[0]}, IndexSet{center[1]}, center}) {
    const auto r = mu_ratio(X, Y);
    EXPECT_EQ(r.mu, Rational(static_cast<std::int64_t>(Y.size()), 8));
    ASSERT_TRUE(r.exhaustive);
    EXPECT_EQ(*r.exhaustive, r.mu);
  }
}

TEST(MuRatio, AgreesWithBruteForce) {
  Rng rng(59);
  const std::vector<ActionPtr> pool = {actions::natural(groups::symmetric(3)), actions::natural(groups::dihedral(5)),
                                       actions::natural(groups::affine_gl1(5)), actions::conjugation(groups::dihedral(4)),
                                       cycle_type_321()};
  for (const auto& X : pool) {
    for (int t = 0; t < 4; ++t) {
      const IndexSet Y = rng.nonempty_subset(static_cast<Index>(X->domain_size()), 3);
      const auto r = mu_ratio(X, Y);
      EXPECT_EQ(r.mu, oracle::mu_bruteforce(*X, Y));
      EXPECT_EQ(Rational(static_cast<std::int64_t>(act_set(*X, r.witness, Y).size()),
                         static_cast<std::int64_t>(r.witness.size())),
                r.mu);
    }
  }
}

TEST(AtomLaws, RandomInvariantInstances) {
  Rng rng(61);
  const auto S3 = groups::symmetric(3);
  const auto D5 = groups::dihedral(5);
  const std::vector<ActionPtr> pool = {actions::natural(groups::symmetric(4)), actions::natural(D5),
                                       actions::coset_action(S3, generated_subgroup(S3, {1})),
                                       actions::disjoint_union(*actions::natural(D5), *actions::natural(D5)), cycle_type_321()};
  for (int t = 0; t < 40; ++t) {
    const auto& X = pool[t % pool.size()];
    const auto G = X->group();
    const IndexSet Y = rng.nonempty_subset(static_cast<Index>(X->domain_size()), 3);
    const Rational mu = mu_ratio(X, Y).mu;
    const Rational lambda = mu * Rational(static_cast<std::int64_t>(rng.below(4) + 1), 4);
    // c_Y lower bound
    const auto cY = functions::c_Y(X, Y, lambda);
    for (int s = 0; s < 20; ++s) {
      const IndexSet A = rng.nonempty_subset(static_cast<Index>(G->order()), 6);
      EXPECT_GE(cY(A), (mu - lambda) * Rational(static_cast<std::int64_t>(A.size())));
    }
    // atoms on X: disjoint, permuted by G, and parametrised by cosets on transitive actions
    const auto f = functions::cut(X);
    if (X->domain_size() > 24) continue;
    const auto r = minimize_nonempty(f);
    std::set<IndexSet> atoms(r.atoms.begin(), r.atoms.end());
    for (const auto& a : r.atoms)
      for (const auto& b : r.atoms) EXPECT_TRUE(a == b || disjoint(a, b));
    for (Index g = 0; g < G->order(); ++g)
      for (const auto& a : r.atoms) EXPECT_TRUE(atoms.contains(X->image(g, a)));
    for (const auto& a : r.atoms) {
      const Subgroup stab = set_stabilizer(*X, a);
      const Subgroup fix = point_stabilizer(*X, a.front());
      EXPECT_TRUE(is_subset(fix.members(), stab.members()));
      for (const auto& orbit : orbit_decomposition(*X).orbits) {
        const std::size_t meet = set_intersection(orbit, a).size();
        if (meet > 0 && contains(orbit, a.front())) {
          EXPECT_EQ(meet, stab.order() / fix.order());
        }
      }
    }
  }
}

}  // namespace
}  // namespace subact
