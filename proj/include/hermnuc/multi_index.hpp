#pragma once

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace hermnuc {

/// Spectral index nu in N_0^n.
class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> entries);
  MultiIndex(std::initializer_list<int> entries);

  /// The index (0, ..., 0) in dimension n.
  static MultiIndex zero(int dimension);

  int dimension() const noexcept { return static_cast<int>(entries_.size()); }
  int degree() const noexcept { return degree_; }
  int operator[](int axis) const { return entries_[static_cast<std::size_t>(axis)]; }
  const std::vector<int>& entries() const noexcept { return entries_; }

  std::string to_string() const;

  friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
  /// Graded lexicographic: by degree, then lexicographically by entries.
  friend bool operator<(const MultiIndex& a, const MultiIndex& b);

 private:
  std::vector<int> entries_;
  int degree_ = 0;
};

struct MultiIndexHash {
  std::size_t operator()(const MultiIndex& nu) const noexcept;
};

/// Number of multi-indices with |nu| <= N in dimension n, i.e. C(N+n, n).
std::size_t simplex_size(int dimension, int cutoff);

/// All nu with |nu| == degree, in ascending lexicographic order.
std::vector<MultiIndex> degree_shell(int dimension, int degree);

/// All nu with |nu| <= cutoff in graded lexicographic order.
std::vector<MultiIndex> enumerate_graded(int dimension, int cutoff);

/// The truncated index set {|nu| <= N} with O(1) position lookup.
class IndexSet {
 public:
  IndexSet(int dimension, int cutoff);

  int dimension() const noexcept { return dimension_; }
  int cutoff() const noexcept { return cutoff_; }
  std::size_t size() const noexcept { return indices_.size(); }
  const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
  const std::vector<MultiIndex>& indices() const noexcept { return indices_; }
  auto begin() const noexcept { return indices_.begin(); }
  auto end() const noexcept { return indices_.end(); }

  std::optional<std::size_t> position(const MultiIndex& nu) const;

 private:
  int dimension_;
  int cutoff_;
  std::vector<MultiIndex> indices_;
  std::unordered_map<MultiIndex, std::size_t, MultiIndexHash> lookup_;
};

using IndexSetPtr = std::shared_ptr<const IndexSet>;

}  // namespace hermnuc
