#pragma once

#include <span>
#include <vector>

#include "ivr/errors.hpp"

namespace ivr {

// Closed interval of 1-based positions [start, end], start <= end.
struct Interval {
  int start = 1;
  int end = 1;

  int length() const { return end - start + 1; }
  bool operator==(const Interval&) const = default;
};

// Ordered list of intervals. covers(T) checks that they tile [1, T] exactly.
struct Partition {
  std::vector<Interval> intervals;

  int size() const { return static_cast<int>(intervals.size()); }
  bool covers(int horizon) const;
  bool operator==(const Partition&) const = default;
};

// A played sequence: values in [-1, 1], enforced once at construction.
// Code downstream takes std::span<const double> and does not re-check the
// range, so unbounded real-valued series can still reach the same algorithms.
class Sequence {
 public:
  Sequence() = default;
  explicit Sequence(std::vector<double> values);

  static Sequence from_bits(const std::vector<int>& bits);

  int length() const { return static_cast<int>(values_.size()); }
  double operator[](int i) const { return values_[i]; }  // 0-based
  const std::vector<double>& values() const { return values_; }
  operator std::span<const double>() const { return values_; }

 private:
  std::vector<double> values_;
};

// Cumulative sums c[0] = 0, c[i] = c[i-1] + v[i]; heights in O(1).
struct PrefixSums {
  std::vector<double> c;

  int horizon() const { return static_cast<int>(c.size()) - 1; }
  double height(Interval iv) const;
};

PrefixSums build_prefix_sums(std::span<const double> values);

double height(const PrefixSums& sums, Interval iv);

bool is_power_of_two(int n);

// True when iv has dyadic length 2^l and its start sits on a 2^l grid point.
// horizon must be a power of two.
bool is_aligned(Interval iv, int horizon);

// Splits iv into the unique minimal chain of aligned intervals, left to
// right, each piece the largest aligned interval that starts at the current
// position and fits. Piece sizes rise to a single maximum and then fall,
// which keeps sum(sqrt(len)) <= sqrt(2)/(sqrt(2)-1) * sqrt(|iv|).
Partition aligned_decompose(Interval iv, int horizon);

}  // namespace ivr
