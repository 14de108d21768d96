#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "subact/action.hpp"
#include "subact/groups.hpp"
#include "subact/set_function.hpp"

namespace subact {

using Vector = std::vector<std::uint32_t>;

namespace fp {

inline std::uint32_t add(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + b) % p; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b, std::uint32_t p) { return (a + p - b) % p; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b, std::uint32_t p) {
  return static_cast<std::uint32_t>(std::uint64_t{a} * b % p);
}
inline std::uint32_t inv(std::uint32_t a, std::uint32_t p) {
  if (a % p == 0) throw DomainError("zero has no inverse mod " + std::to_string(p));
  std::uint32_t r = 1, base = a % p, e = p - 2;
  while (e) {
    if (e & 1) r = mul(r, base, p);
    base = mul(base, base, p);
    e >>= 1;
  }
  return r;
}

inline void require_prime(std::uint32_t p) {
  if (p < 2) throw DomainError("modulus must be prime");
  for (std::uint32_t d = 2; d * d <= p; ++d)
    if (p % d == 0) throw DomainError("modulus " + std::to_string(p) + " is not prime");
}

/// Reduced row echelon form of the given rows; zero rows are dropped.
inline std::vector<Vector> rref(std::vector<Vector> rows, std::uint32_t p, std::size_t cols,
                                std::vector<std::size_t>* pivots = nullptr) {
  std::size_t r = 0;
  std::vector<std::size_t> piv;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] % p == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const std::uint32_t s = inv(rows[r][c], p);
    for (auto& x : rows[r]) x = mul(x, s, p);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const std::uint32_t factor = rows[i][c];
      for (std::size_t j = 0; j < cols; ++j) rows[i][j] = sub(rows[i][j], mul(factor, rows[r][j], p), p);
    }
    piv.push_back(c);
    ++r;
  }
  rows.resize(r);
  if (pivots) *pivots = std::move(piv);
  return rows;
}

/// Basis of {x in F_p^cols : rows . x = 0}.
inline std::vector<Vector> nullspace(const std::vector<Vector>& rows, std::uint32_t p, std::size_t cols) {
  std::vector<std::size_t> pivots;
  auto R = rref(rows, p, cols, &pivots);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<Vector> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vector x(cols, 0);
    x[free] = 1;
    for (std::size_t i = 0; i < R.size(); ++i) x[pivots[i]] = sub(0, R[i][free], p);
    basis.push_back(std::move(x));
  }
  return basis;
}

}  // namespace fp

/// Dense matrix over F_p.
class FpMatrix {
 public:
  FpMatrix(std::uint32_t p, std::size_t rows, std::size_t cols)
      : p_(p), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  FpMatrix(std::uint32_t p, std::vector<Vector> rows) : p_(p), rows_(rows.size()), cols_(rows.empty() ? 0 : rows[0].size()) {
    for (auto& r : rows) {
      if (r.size() != cols_) throw StructuralError("ragged matrix rows");
      for (auto x : r) data_.push_back(x % p);
    }
  }

  static FpMatrix identity(std::uint32_t p, std::size_t n) {
    FpMatrix m(p, n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
  }

  std::uint32_t p() const noexcept { return p_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::uint32_t& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  std::uint32_t at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector row(std::size_t i) const { return Vector(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_); }

  Vector apply(const Vector& v) const {
    if (v.size() != cols_) throw StructuralError("matrix-vector dimension mismatch");
    Vector out(rows_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols_; ++j) acc += std::uint64_t{at(i, j)} * v[j];
      out[i] = static_cast<std::uint32_t>(acc % p_);
    }
    return out;
  }

  std::size_t rank() const {
    std::vector<Vector> r;
    for (std::size_t i = 0; i < rows_; ++i) r.push_back(row(i));
    return fp::rref(std::move(r), p_, cols_).size();
  }

  bool invertible() const { return rows_ == cols_ && rank() == rows_; }

  friend FpMatrix operator*(const FpMatrix& a, const FpMatrix& b) {
    if (a.p_ != b.p_ || a.cols_ != b.rows_) throw StructuralError("matrix product shape or modulus mismatch");
    FpMatrix out(a.p_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) acc += std::uint64_t{a.at(i, k)} * b.at(k, j);
        out.at(i, j) = static_cast<std::uint32_t>(acc % a.p_);
      }
    return out;
  }

  friend bool operator==(const FpMatrix&, const FpMatrix&) = default;

 private:
  std::uint32_t p_;
  std::size_t rows_, cols_;
  std::vector<std::uint32_t> data_;
};

/// Subspace of F_p^d held by its reduced row echelon basis, which is unique,
/// so equality of subspaces is equality of bases.
class Subspace {
 public:
  Subspace(std::uint32_t p, std::size_t ambient_dim) : p_(p), d_(ambient_dim) {}

  static Subspace span(std::uint32_t p, std::size_t d, std::vector<Vector> vectors) {
    for (auto& v : vectors) {
      if (v.size() != d) throw StructuralError("vector length " + std::to_string(v.size()) + " != ambient dimension " + std::to_string(d));
      for (auto& x : v) x %= p;
    }
    Subspace s(p, d);
    s.basis_ = fp::rref(std::move(vectors), p, d);
    return s;
  }

  static Subspace zero(std::uint32_t p, std::size_t d) { return Subspace(p, d); }

  static Subspace full(std::uint32_t p, std::size_t d) {
    std::vector<Vector> rows;
    for (std::size_t i = 0; i < d; ++i) {
      Vector e(d, 0);
      e[i] = 1;
      rows.push_back(std::move(e));
    }
    return span(p, d, std::move(rows));
  }

  std::uint32_t p() const noexcept { return p_; }
  std::size_t ambient_dim() const noexcept { return d_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<Vector>& basis() const noexcept { return basis_; }

  bool contains(const Vector& v) const {
    auto rows = basis_;
    rows.push_back(v);
    return fp::rref(std::move(rows), p_, d_).size() == basis_.size();
  }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  std::string to_string() const {
    std::string out = "[";
    for (std::size_t i = 0; i < basis_.size(); ++i) {
      out += i ? ",[" : "[";
      for (std::size_t j = 0; j < d_; ++j) out += (j ? "," : "") + std::to_string(basis_[i][j]);
      out += "]";
    }
    return out + "]";
  }

  friend bool operator==(const Subspace&, const Subspace&) = default;

  /// Dimension first, then basis entries.
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.dim() != b.dim()) return a.dim() < b.dim();
    return a.basis_ < b.basis_;
  }

 private:
  std::uint32_t p_;
  std::size_t d_;
  std::vector<Vector> basis_;
};

namespace detail {
inline void require_compatible(const Subspace& U, const Subspace& W) {
  if (U.p() != W.p() || U.ambient_dim() != W.ambient_dim())
    throw StructuralError("subspaces live in different spaces (p=" + std::to_string(U.p()) + ", d=" +
                          std::to_string(U.ambient_dim()) + " vs p=" + std::to_string(W.p()) + ", d=" +
                          std::to_string(W.ambient_dim()) + ")");
}
}  // namespace detail

inline Subspace sum(const Subspace& U, const Subspace& W) {
  detail::require_compatible(U, W);
  auto rows = U.basis();
  rows.insert(rows.end(), W.basis().begin(), W.basis().end());
  return Subspace::span(U.p(), U.ambient_dim(), std::move(rows));
}

/// U ∩ W from the kernel of the stacked bases: (c, e) with
/// sum c_i u_i + sum e_j w_j = 0 gives sum c_i u_i in U ∩ W.
inline Subspace intersection(const Subspace& U, const Subspace& W) {
  detail::require_compatible(U, W);
  const std::uint32_t p = U.p();
  const std::size_t d = U.ambient_dim(), k = U.dim(), m = W.dim();
  if (k == 0 || m == 0) return Subspace::zero(p, d);
  std::vector<Vector> transposed(d, Vector(k + m, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < d; ++j) transposed[j][i] = U.basis()[i][j];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < d; ++j) transposed[j][k + i] = W.basis()[i][j];
  std::vector<Vector> vectors;
  for (const auto& c : fp::nullspace(transposed, p, k + m)) {
    Vector v(d, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < d; ++j) v[j] = fp::add(v[j], fp::mul(c[i], U.basis()[i][j], p), p);
    vectors.push_back(std::move(v));
  }
  return Subspace::span(p, d, std::move(vectors));
}

/// A homomorphism G -> GL_d(F_p), with one matrix per group element.
class Representation {
 public:
  /// Extends the generator images (in the order of G->generators()) along
  /// the group and verifies image(gh) = image(g) image(h) for all g, h.
  static Representation from_generator_images(GroupPtr G, std::uint32_t p, std::size_t dim,
                                               const std::vector<FpMatrix>& gen_images) {
    fp::require_prime(p);
    if (gen_images.size() != G->generators().size())
      throw StructuralError("representation needs one matrix per group generator (" +
                            std::to_string(G->generators().size()) + "), got " + std::to_string(gen_images.size()));
    for (const auto& m : gen_images)
      if (m.p() != p || m.rows() != dim || m.cols() != dim || !m.invertible())
        throw InvariantError("generator image is not an invertible " + std::to_string(dim) + "x" + std::to_string(dim) +
                             " matrix over F_" + std::to_string(p));
    std::vector<std::optional<FpMatrix>> images(G->order());
    images[FiniteGroup::identity()] = FpMatrix::identity(p, dim);
    std::vector<Index> queue{FiniteGroup::identity()};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Index h = queue[head];
      for (std::size_t s = 0; s < gen_images.size(); ++s) {
        const Index sh = G->mul(G->generators()[s], h);
        if (!images[sh]) {
          images[sh] = gen_images[s] * *images[h];
          queue.push_back(sh);
        }
      }
    }
    Representation rep(std::move(G), p, dim);
    for (auto& m : images) rep.images_.push_back(std::move(*m));
    rep.verify();
    return rep;
  }

  /// Permutation matrices of an action: e_x -> e_{g.x}.
  static Representation permutation_matrices(const GroupAction& action, std::uint32_t p) {
    fp::require_prime(p);
    const std::size_t d = action.domain_size();
    Representation rep(action.group(), p, d);
    for (Index g = 0; g < action.G().order(); ++g) {
      FpMatrix m(p, d, d);
      for (Index x = 0; x < d; ++x) m.at(action.act(g, x), x) = 1;
      rep.images_.push_back(std::move(m));
    }
    rep.verify();
    return rep;
  }

  const GroupPtr& group() const noexcept { return group_; }
  std::uint32_t p() const noexcept { return p_; }
  std::size_t dim() const noexcept { return dim_; }
  const FpMatrix& image(Index g) const { return images_.at(g); }

  Vector act(Index g, const Vector& v) const { return images_.at(g).apply(v); }

  /// g.W
  Subspace image(Index g, const Subspace& W) const {
    std::vector<Vector> rows;
    for (const auto& v : W.basis()) rows.push_back(act(g, v));
    return Subspace::span(p_, dim_, std::move(rows));
  }

 private:
  Representation(GroupPtr G, std::uint32_t p, std::size_t dim) : group_(std::move(G)), p_(p), dim_(dim) {}

  void verify() const {
    const auto& G = *group_;
    if (!(images_[FiniteGroup::identity()] == FpMatrix::identity(p_, dim_)))
      throw InvariantError("representation does not send the identity to the identity matrix");
    for (Index g = 0; g < G.order(); ++g)
      for (Index h = 0; h < G.order(); ++h)
        if (!(images_[G.mul(g, h)] == images_[g] * images_[h]))
          throw InvariantError("representation law fails for g=" + std::to_string(g) + ", h=" + std::to_string(h));
  }

  GroupPtr group_;
  std::uint32_t p_;
  std::size_t dim_;
  std::vector<FpMatrix> images_;
};

namespace representations {

/// C_2 swapping the two coordinates of F_p^2.
inline Representation swap(std::uint32_t p) {
  auto G = groups::cyclic(2);
  return Representation::from_generator_images(G, p, 2, {FpMatrix(p, {{0, 1}, {1, 0}})});
}

/// C_n cyclically shifting the coordinates of F_p^n.
inline Representation cyclic_shift(std::size_t n, std::uint32_t p) {
  auto G = groups::cyclic(n);
  FpMatrix shift(p, n, n);
  for (std::size_t i = 0; i < n; ++i) shift.at((i + 1) % n, i) = 1;
  return Representation::from_generator_images(G, p, n, {shift});
}

}  // namespace representations

/// A.W = <a.v : a in A, v in W>.
inline Subspace act_subspace(const Representation& rep, const IndexSet& A, const Subspace& W) {
  if (A.empty()) throw DomainError("act_subspace needs a nonempty A");
  std::vector<Vector> rows;
  for (Index a : A)
    for (const auto& v : W.basis()) rows.push_back(rep.act(a, v));
  return Subspace::span(rep.p(), rep.dim(), std::move(rows));
}

/// G_W = {g : g.W = W}.
inline Subgroup subspace_stabilizer(const Representation& rep, const Subspace& W) {
  IndexSet members;
  for (Index g = 0; g < rep.group()->order(); ++g)
    if (rep.image(g, W) == W) members.push_back(g);
  return Subgroup::verified(rep.group(), std::move(members));
}

/// Sym_alpha(W) = {g : dim(g.W ∩ W) >= alpha dim W} and
/// Gamma_W = {g : g.W ∩ W != 0}.
inline std::pair<IndexSet, IndexSet> subspace_symmetry_sets(const Representation& rep, const Subspace& W,
                                                            const Rational& alpha) {
  if (W.is_zero()) throw DomainError("subspace_symmetry_sets needs W != {0}");
  IndexSet sym, gamma;
  for (Index g = 0; g < rep.group()->order(); ++g) {
    const auto common = static_cast<std::int64_t>(intersection(rep.image(g, W), W).dim());
    if (Rational(common) >= alpha * static_cast<std::int64_t>(W.dim())) sym.push_back(g);
    if (common > 0) gamma.push_back(g);
  }
  return {std::move(sym), std::move(gamma)};
}

namespace functions {

/// A -> dim(A.W) - lambda |A| on the subsets of G (dim of the empty span is 0).
inline SetFunction gamma_W(const Representation& rep, const Subspace& W, const Rational& lambda) {
  const std::size_t n = rep.group()->order();
  require_cap("set_function_ground", 64, n);
  auto images = std::make_shared<std::vector<Subspace>>();
  for (Index g = 0; g < n; ++g) images->push_back(rep.image(g, W));
  const std::uint32_t p = rep.p();
  const std::size_t d = rep.dim();
  const std::int64_t num = lambda.numerator(), den = lambda.denominator();
  return SetFunction(
      n, den,
      [images, p, d, num, den](Mask A) {
        std::vector<Vector> rows;
        for (Mask m = A; m; m &= m - 1) {
          const auto& b = (*images)[static_cast<std::size_t>(std::countr_zero(m))].basis();
          rows.insert(rows.end(), b.begin(), b.end());
        }
        const auto dim = static_cast<std::int64_t>(fp::rref(std::move(rows), p, d).size());
        return den * dim - num * std::popcount(A);
      },
      "gamma_W(lambda=" + to_string(lambda) + ")");
}

}  // namespace functions

/// A function on the subspace lattice of F_p^d.
struct LatticeFunction {
  std::function<Rational(const Subspace&)> evaluate;
  std::string label;

  Rational operator()(const Subspace& W) const { return evaluate(W); }
};

namespace functions {

/// Y -> dim(A.Y) - lambda dim(Y) on subspaces.
inline LatticeFunction delta_A(const Representation& rep, const IndexSet& A, const Rational& lambda) {
  if (A.empty()) throw DomainError("delta_A needs a nonempty A");
  return LatticeFunction{
      [rep, A, lambda](const Subspace& Y) {
        return Rational(static_cast<std::int64_t>(act_subspace(rep, A, Y).dim())) -
               lambda * static_cast<std::int64_t>(Y.dim());
      },
      "delta_A(lambda=" + to_string(lambda) + ")"};
}

inline LatticeFunction dimension() {
  return LatticeFunction{[](const Subspace& Y) { return Rational(static_cast<std::int64_t>(Y.dim())); }, "dim"};
}

}  // namespace functions

/// Number of subspaces of F_p^d: sum over k of the Gaussian binomials.
inline std::size_t subspace_count(std::uint32_t p, std::size_t d) {
  // [d choose k]_p by the recurrence [d,k] = [d-1,k-1] + p^k [d-1,k]
  std::vector<std::vector<std::uint64_t>> g(d + 1, std::vector<std::uint64_t>(d + 1, 0));
  for (std::size_t n = 0; n <= d; ++n) {
    g[n][0] = 1;
    std::uint64_t pk = 1;
    for (std::size_t k = 1; k <= n; ++k) {
      pk *= p;
      g[n][k] = g[n - 1][k - 1] + (k <= n - 1 ? pk * g[n - 1][k] : 0);
    }
  }
  std::uint64_t total = 0;
  for (std::size_t k = 0; k <= d; ++k) total += g[d][k];
  return static_cast<std::size_t>(total);
}

/// Every subspace of F_p^d, by dimension and then basis entries.
inline std::vector<Subspace> enumerate_subspaces(std::uint32_t p, std::size_t d, const Caps& caps = {}) {
  fp::require_prime(p);
  require_cap("subspace_count", caps.subspace_count, subspace_count(p, d));
  std::vector<Subspace> out;
  for (std::size_t k = 0; k <= d; ++k) {
    std::vector<char> choose(d, 0);
    std::fill(choose.begin(), choose.begin() + static_cast<std::ptrdiff_t>(k), 1);
    do {
      std::vector<std::size_t> pivots;
      for (std::size_t c = 0; c < d; ++c)
        if (choose[c]) pivots.push_back(c);
      // free slots: row i, column c > pivot_i that is not a pivot
      std::vector<std::pair<std::size_t, std::size_t>> free;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t c = pivots[i] + 1; c < d; ++c)
          if (!choose[c]) free.emplace_back(i, c);
      std::vector<std::uint32_t> digits(free.size(), 0);
      for (;;) {
        std::vector<Vector> rows(k, Vector(d, 0));
        for (std::size_t i = 0; i < k; ++i) rows[i][pivots[i]] = 1;
        for (std::size_t f = 0; f < free.size(); ++f) rows[free[f].first][free[f].second] = digits[f];
        out.push_back(Subspace::span(p, d, std::move(rows)));
        std::size_t pos = 0;
        while (pos < digits.size() && ++digits[pos] == p) digits[pos++] = 0;
        if (pos == digits.size()) break;
      }
    } while (std::prev_permutation(choose.begin(), choose.end()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Every subspace of W, as subspaces of the ambient space.
inline std::vector<Subspace> subspaces_of(const Subspace& W, const Caps& caps = {}) {
  std::vector<Subspace> out;
  for (const auto& S : enumerate_subspaces(W.p(), W.dim(), caps)) {
    std::vector<Vector> rows;
    for (const auto& coords : S.basis()) {
      Vector v(W.ambient_dim(), 0);
      for (std::size_t i = 0; i < coords.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) v[j] = fp::add(v[j], fp::mul(coords[i], W.basis()[i][j], W.p()), W.p());
      rows.push_back(std::move(v));
    }
    out.push_back(Subspace::span(W.p(), W.ambient_dim(), std::move(rows)));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum over nonzero subspaces, fragments and atoms (minimal dimension).
struct LatticeMinimization {
  Rational min_value;
  std::vector<Subspace> fragments;
  std::vector<Subspace> atoms;
  std::size_t atom_dim = 0;
};

inline LatticeMinimization minimize_on_lattice(const LatticeFunction& f, std::uint32_t p, std::size_t d,
                                               const Caps& caps = {}) {
  LatticeMinimization r;
  bool have = false;
  for (const auto& W : enumerate_subspaces(p, d, caps)) {
    if (W.is_zero()) continue;
    const Rational v = f(W);
    if (!have || v < r.min_value) {
      have = true;
      r.min_value = v;
      r.fragments.clear();
    }
    if (v == r.min_value) r.fragments.push_back(W);
  }
  if (!have) throw DomainError("minimize_on_lattice needs d >= 1");
  r.atom_dim = r.fragments.front().dim();  // enumeration is by dimension
  for (const auto& W : r.fragments)
    if (W.dim() == r.atom_dim) r.atoms.push_back(W);
  return r;
}

/// Distinct atoms meet only in {0}.
inline bool atoms_pairwise_trivial(const LatticeMinimization& r) {
  for (std::size_t i = 0; i < r.atoms.size(); ++i)
    for (std::size_t j = i + 1; j < r.atoms.size(); ++j)
      if (!intersection(r.atoms[i], r.atoms[j]).is_zero()) return false;
  return true;
}

struct LatticeSubmodularVerdict {
  bool holds = true;
  std::size_t checked = 0;
  std::optional<std::pair<Subspace, Subspace>> counterexample;
};

/// f(U ∩ W) + f(U + W) <= f(U) + f(W) over all pairs of the given subspaces.
inline LatticeSubmodularVerdict check_lattice_submodular(const LatticeFunction& f, const std::vector<Subspace>& lattice) {
  LatticeSubmodularVerdict v;
  std::vector<Rational> values;
  values.reserve(lattice.size());
  for (const auto& W : lattice) values.push_back(f(W));
  for (std::size_t i = 0; i < lattice.size(); ++i)
    for (std::size_t j = i + 1; j < lattice.size(); ++j) {
      ++v.checked;
      if (f(intersection(lattice[i], lattice[j])) + f(sum(lattice[i], lattice[j])) > values[i] + values[j]) {
        v.holds = false;
        v.counterexample = {lattice[i], lattice[j]};
        return v;
      }
    }
  return v;
}

}  // namespace subact
