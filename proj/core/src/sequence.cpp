#include "ivr/sequence.hpp"

#include <bit>
#include <cmath>
#include <string>

namespace ivr {

bool Partition::covers(int horizon) const {
  if (horizon == 0) return intervals.empty();
  if (intervals.empty()) return false;
  int expect = 1;
  for (const Interval& iv : intervals) {
    if (iv.start != expect || iv.end < iv.start) return false;
    expect = iv.end + 1;
  }
  return expect == horizon + 1;
}

Sequence::Sequence(std::vector<double> values) : values_(std::move(values)) {
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const double v = values_[i];
    if (!(v >= -1.0 && v <= 1.0)) {
      throw validation_error("sequence value at position " + std::to_string(i + 1) +
                             " is outside [-1, 1]: " + std::to_string(v));
    }
  }
}

Sequence Sequence::from_bits(const std::vector<int>& bits) {
  std::vector<double> values;
  values.reserve(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] != 1 && bits[i] != -1) {
      throw validation_error("bit at position " + std::to_string(i + 1) + " must be +1 or -1");
    }
    values.push_back(static_cast<double>(bits[i]));
  }
  return Sequence(std::move(values));
}

double PrefixSums::height(Interval iv) const {
  const int n = horizon();
  if (iv.start < 1 || iv.end > n || iv.start > iv.end) {
    throw validation_error("interval [" + std::to_string(iv.start) + ", " +
                           std::to_string(iv.end) + "] is not inside [1, " + std::to_string(n) +
                           "]");
  }
  return c[iv.end] - c[iv.start - 1];
}

PrefixSums build_prefix_sums(std::span<const double> values) {
  PrefixSums sums;
  sums.c.resize(values.size() + 1);
  sums.c[0] = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) sums.c[i + 1] = sums.c[i] + values[i];
  return sums;
}

double height(const PrefixSums& sums, Interval iv) { return sums.height(iv); }

bool is_power_of_two(int n) { return n > 0 && std::has_single_bit(static_cast<unsigned>(n)); }

static void require_dyadic_horizon(int horizon) {
  if (!is_power_of_two(horizon)) {
    throw validation_error("horizon must be a power of two, got " + std::to_string(horizon));
  }
}

static void require_inside(Interval iv, int horizon) {
  if (iv.start < 1 || iv.end > horizon || iv.start > iv.end) {
    throw validation_error("interval [" + std::to_string(iv.start) + ", " +
                           std::to_string(iv.end) + "] is not inside [1, " +
                           std::to_string(horizon) + "]");
  }
}

bool is_aligned(Interval iv, int horizon) {
  require_dyadic_horizon(horizon);
  require_inside(iv, horizon);
  const int len = iv.length();
  return is_power_of_two(len) && (iv.start - 1) % len == 0;
}

Partition aligned_decompose(Interval iv, int horizon) {
  require_dyadic_horizon(horizon);
  require_inside(iv, horizon);
  Partition out;
  int p = iv.start;
  while (p <= iv.end) {
    const int remaining = iv.end - p + 1;
    // Largest aligned length that starts at p and fits.
    int len = 1;
    while (len * 2 <= remaining && (p - 1) % (len * 2) == 0) len *= 2;
    out.intervals.push_back({p, p + len - 1});
    p += len;
  }
  return out;
}

}  // namespace ivr
