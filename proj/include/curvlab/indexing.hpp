#pragma once

#include <array>
#include <utility>
#include <vector>

#include "curvlab/core.hpp"

namespace curvlab {

/// Position of the pair (i, j), i < j, in the lexicographic list of pairs of {0..n-1}.
constexpr int pair_position(int i, int j, int n) {
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

/// Lexicographic basis e_i ^ e_j (i < j) of the two-forms.
class TwoFormIndexing {
 public:
  explicit TwoFormIndexing(int n) : n_(n), pos_(static_cast<std::size_t>(n * n), -1) {
    if (n < 2) throw DimensionError("two-form indexing requires n >= 2");
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        pos_[static_cast<std::size_t>(i * n + j)] = static_cast<int>(pairs_.size());
        pos_[static_cast<std::size_t>(j * n + i)] = static_cast<int>(pairs_.size());
        pairs_.emplace_back(i, j);
      }
    }
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }
  std::pair<int, int> pair(int a) const { return pairs_.at(static_cast<std::size_t>(a)); }

  /// Position of {i, j}, unordered; -1 when i == j.
  int position(int i, int j) const { return pos_[static_cast<std::size_t>(i * n_ + j)]; }
  /// +1 if i < j, -1 if i > j, 0 on the diagonal.
  static int sign(int i, int j) { return i < j ? 1 : (i > j ? -1 : 0); }

 private:
  int n_;
  std::vector<int> pos_;
  std::vector<std::pair<int, int>> pairs_;
};

/// Lexicographic basis of three-forms e_i ^ e_j ^ e_k, i < j < k.
class ThreeFormIndexing {
 public:
  explicit ThreeFormIndexing(int n) : n_(n), pos_(static_cast<std::size_t>(n * n * n), -1) {
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        for (int k = j + 1; k < n; ++k) {
          const int p = static_cast<int>(triples_.size());
          triples_.push_back({i, j, k});
          const std::array<std::array<int, 3>, 6> perms{{{i, j, k}, {j, k, i}, {k, i, j},
                                                         {j, i, k}, {i, k, j}, {k, j, i}}};
          for (const auto& t : perms) pos_[index(t[0], t[1], t[2])] = p;
        }
  }

  int n() const { return n_; }
  int size() const { return static_cast<int>(triples_.size()); }
  const std::array<int, 3>& triple(int t) const { return triples_.at(static_cast<std::size_t>(t)); }
  /// Position of the unordered triple; -1 if any two indices coincide.
  int position(int i, int j, int k) const { return pos_[index(i, j, k)]; }
  /// Sign of the permutation sorting (i, j, k); 0 if indices repeat.
  static int sign(int i, int j, int k) {
    if (i == j || j == k || i == k) return 0;
    int s = 1;
    if (i > j) s = -s;
    if (j > k) s = -s;
    if (i > k) s = -s;
    return s;
  }

 private:
  std::size_t index(int i, int j, int k) const {
    return static_cast<std::size_t>((i * n_ + j) * n_ + k);
  }
  int n_;
  std::vector<int> pos_;
  std::vector<std::array<int, 3>> triples_;
};

}  // namespace curvlab
