#include "hermnuc/multi_index.hpp"

#include <algorithm>
#include <numeric>

#include "hermnuc/errors.hpp"

namespace hermnuc {

MultiIndex::MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw InvalidArgument("multi-index must have dimension >= 1");
  for (int e : entries_) {
    if (e < 0) throw InvalidArgument("multi-index entries must be non-negative");
  }
  degree_ = std::accumulate(entries_.begin(), entries_.end(), 0);
}

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::vector<int>(entries)) {}

MultiIndex MultiIndex::zero(int dimension) {
  if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
  return MultiIndex(std::vector<int>(static_cast<std::size_t>(dimension), 0));
}

std::string MultiIndex::to_string() const {
  std::string out = "(";
  for (std::size_t j = 0; j < entries_.size(); ++j) {
    if (j) out += ",";
    out += std::to_string(entries_[j]);
  }
  return out + ")";
}

bool operator<(const MultiIndex& a, const MultiIndex& b) {
  if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
  return a.entries_ < b.entries_;
}

std::size_t MultiIndexHash::operator()(const MultiIndex& nu) const noexcept {
  std::size_t h = 1469598103934665603ull;
  for (int e : nu.entries()) {
    h ^= static_cast<std::size_t>(e) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

std::size_t simplex_size(int dimension, int cutoff) {
  if (dimension < 1 || cutoff < 0) return 0;
  // C(N+n, n) computed incrementally; exact at every step.
  std::size_t result = 1;
  for (int j = 1; j <= dimension; ++j) {
    result = result * static_cast<std::size_t>(cutoff + j) / static_cast<std::size_t>(j);
  }
  return result;
}

namespace {

void fill_shell(int remaining, std::size_t axis, std::vector<int>& current,
                std::vector<MultiIndex>& out) {
  if (axis + 1 == current.size()) {
    current[axis] = remaining;
    out.emplace_back(current);
    return;
  }
  for (int v = 0; v <= remaining; ++v) {
    current[axis] = v;
    fill_shell(remaining - v, axis + 1, current, out);
  }
}

}  // namespace

std::vector<MultiIndex> degree_shell(int dimension, int degree) {
  if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
  std::vector<MultiIndex> out;
  if (degree < 0) return out;
  std::vector<int> current(static_cast<std::size_t>(dimension), 0);
  fill_shell(degree, 0, current, out);
  return out;
}

std::vector<MultiIndex> enumerate_graded(int dimension, int cutoff) {
  if (dimension < 1) throw InvalidArgument("dimension must be >= 1");
  if (cutoff < 0) throw InvalidArgument("degree cutoff must be >= 0");
  std::vector<MultiIndex> out;
  out.reserve(simplex_size(dimension, cutoff));
  for (int d = 0; d <= cutoff; ++d) {
    auto shell = degree_shell(dimension, d);
    std::move(shell.begin(), shell.end(), std::back_inserter(out));
  }
  return out;
}

IndexSet::IndexSet(int dimension, int cutoff)
    : dimension_(dimension), cutoff_(cutoff), indices_(enumerate_graded(dimension, cutoff)) {
  lookup_.reserve(indices_.size());
  for (std::size_t i = 0; i < indices_.size(); ++i) lookup_.emplace(indices_[i], i);
}

std::optional<std::size_t> IndexSet::position(const MultiIndex& nu) const {
  auto it = lookup_.find(nu);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

}  // namespace hermnuc
