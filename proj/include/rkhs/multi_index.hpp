#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace rkhs {

class MultiIndex {
 public:
  MultiIndex() = default;
  explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
  MultiIndex(std::initializer_list<int> e) : entries_(e) {}
  explicit MultiIndex(std::vector<int> e) : entries_(std::move(e)) {}

  static MultiIndex unit(std::size_t n, std::size_t i) {
    MultiIndex e(n);
    e.entries_[i] = 1;
    return e;
  }

  std::size_t size() const { return entries_.size(); }
  int operator[](std::size_t i) const { return entries_[i]; }
  int& operator[](std::size_t i) { return entries_[i]; }
  const std::vector<int>& entries() const { return entries_; }

  int total() const {
    int t = 0;
    for (int v : entries_) t += v;
    return t;
  }

  MultiIndex operator+(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.entries_[i] += o.entries_[i];
    return r;
  }

  // True when o - *this is a nonnegative multi-index.
  bool divides(const MultiIndex& o) const {
    for (std::size_t i = 0; i < size(); ++i)
      if (entries_[i] > o.entries_[i]) return false;
    return true;
  }

  MultiIndex minus(const MultiIndex& o) const {
    MultiIndex r = *this;
    for (std::size_t i = 0; i < size(); ++i) r.entries_[i] -= o.entries_[i];
    return r;
  }

  /// Plain lexicographic order on the entries.
  auto operator<=>(const MultiIndex&) const = default;

  std::string str() const;

 private:
  std::vector<int> entries_;
};

/// Graded lexicographic order: total degree first, then lexicographic.
struct GradedLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    const int ta = a.total(), tb = b.total();
    if (ta != tb) return ta < tb;
    return a < b;
  }
};

/// All multi-indices of length n with |alpha| <= D in graded-lex order.
std::vector<MultiIndex> enumerate_indices(int n, int D);

/// Indices with |alpha| == d, lexicographic.
std::vector<MultiIndex> homogeneous_indices(int n, int d);

/// alpha! = prod alpha_i!
double factorial_product(const MultiIndex& a);

/// |alpha|! / alpha!  (multinomial coefficient) as a double.
double multinomial(const MultiIndex& a);

/// C(n + D, n) as an integer.
std::size_t count_indices(int n, int D);

}  // namespace rkhs
