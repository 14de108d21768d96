#pragma once

#include <cctype>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "subact/errors.hpp"
#include "subact/index_set.hpp"

namespace subact {

/// Bijection of {0, ..., degree-1}, stored as its image list.
class Permutation {
 public:
  Permutation() = default;

  static Permutation identity(std::size_t degree) {
    Permutation p;
    p.images_.resize(degree);
    for (std::size_t i = 0; i < degree; ++i) p.images_[i] = static_cast<Index>(i);
    return p;
  }

  static Permutation from_images(std::vector<Index> images) {
    std::vector<char> seen(images.size(), 0);
    for (Index x : images) {
      if (x >= images.size() || seen[x])
        throw StructuralError("image list is not a bijection of {0.." +
                              std::to_string(images.size()) + "-1}");
      seen[x] = 1;
    }
    Permutation p;
    p.images_ = std::move(images);
    return p;
  }

  /// Parses 0-based cycle notation such as "(0 1)(2 3 4)"; "()" is the identity.
  static Permutation from_cycles(std::size_t degree, std::string_view text) {
    Permutation p = identity(degree);
    std::vector<Index> cycle;
    bool open = false;
    std::size_t i = 0;
    auto close_cycle = [&] {
      for (std::size_t k = 0; k < cycle.size(); ++k) {
        if (cycle[k] >= degree)
          throw StructuralError("cycle point " + std::to_string(cycle[k]) + " exceeds degree " +
                                std::to_string(degree));
        p.images_[cycle[k]] = cycle[(k + 1) % cycle.size()];
      }
      cycle.clear();
    };
    while (i < text.size()) {
      char c = text[i];
      if (c == '(') {
        if (open) throw StructuralError("nested '(' in cycle notation");
        open = true;
        ++i;
      } else if (c == ')') {
        if (!open) throw StructuralError("unbalanced ')' in cycle notation");
        open = false;
        close_cycle();
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        if (!open) throw StructuralError("point outside a cycle in '" + std::string(text) + "'");
        Index v = 0;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])))
          v = v * 10 + static_cast<Index>(text[i++] - '0');
        cycle.push_back(v);
      } else if (c == ' ' || c == ',') {
        ++i;
      } else {
        throw StructuralError("unexpected character in cycle notation '" + std::string(text) + "'");
      }
    }
    if (open) throw StructuralError("unterminated cycle in '" + std::string(text) + "'");
    return from_images(std::move(p.images_));
  }

  std::size_t degree() const noexcept { return images_.size(); }
  Index operator()(Index x) const { return images_[x]; }
  const std::vector<Index>& images() const noexcept { return images_; }

  bool is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
      if (images_[i] != i) return false;
    return true;
  }

  Permutation inverse() const {
    Permutation p;
    p.images_.resize(images_.size());
    for (std::size_t i = 0; i < images_.size(); ++i) p.images_[images_[i]] = static_cast<Index>(i);
    return p;
  }

  /// 0-based disjoint cycle form, fixed points omitted; "()" for the identity.
  std::string to_cycles() const {
    std::string out;
    std::vector<char> done(images_.size(), 0);
    for (std::size_t s = 0; s < images_.size(); ++s) {
      if (done[s] || images_[s] == s) continue;
      out += "(";
      std::size_t x = s;
      bool first = true;
      while (!done[x]) {
        done[x] = 1;
        if (!first) out += " ";
        out += std::to_string(x);
        first = false;
        x = images_[x];
      }
      out += ")";
    }
    return out.empty() ? "()" : out;
  }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Index> images_;
};

/// x -> g(h(x)).
inline Permutation compose(const Permutation& g, const Permutation& h) {
  if (g.degree() != h.degree())
    throw StructuralError("cannot compose permutations of degree " + std::to_string(g.degree()) +
                          " and " + std::to_string(h.degree()));
  std::vector<Index> out(g.degree());
  for (std::size_t x = 0; x < out.size(); ++x) out[x] = g(h(static_cast<Index>(x)));
  return Permutation::from_images(std::move(out));
}

struct PermutationHash {
  std::size_t operator()(const Permutation& p) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (Index x : p.images()) {
      h ^= x;
      h *= 1099511628211ULL;
    }
    return h;
  }
};

}  // namespace subact
