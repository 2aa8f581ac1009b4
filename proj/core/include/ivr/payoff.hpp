#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "ivr/sequence.hpp"

namespace ivr {

// Penalty scale. Finite and >= 0; zero is allowed as the degenerate
// no-penalty case, calibration only ever produces positive values.
struct Alpha {
  double value;

  explicit Alpha(double v) : value(v) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw validation_error("alpha must be finite and >= 0");
    }
  }
};

// Ratio sqrt(2)/(sqrt(2)-1): penalty inflation that survives refining an
// arbitrary interval into its aligned decomposition.
inline constexpr double kAlignedPenaltyFactor = 3.4142135623730949;

struct DpStats {
  // Table-cell reads performed by the split scan (two per candidate split).
  std::uint64_t split_reads = 0;
};

// Dense triangular table of best partition values over all [i, j].
class PayoffTable {
 public:
  PayoffTable() = default;

  int horizon() const { return n_; }
  bool empty() const { return n_ == 0; }

  // 1-based, requires 1 <= i <= j <= horizon().
  double at(int i, int j) const;

  const DpStats& stats() const { return stats_; }

 private:
  friend PayoffTable make_payoff_table(int, std::vector<double>, DpStats);
  int n_ = 0;
  std::vector<double> cells_;  // row-major: row i holds j = i..n
  DpStats stats_;
};

struct PayoffResult {
  double value = 0.0;
  Partition partition;
  PayoffTable table;
};

// Best value of sum(|height(X_i)| - alpha * sqrt(|X_i|)) over all partitions,
// with one maximizing partition and the full interval table. Ties prefer a
// single interval, then fewer intervals, then the leftmost split.
PayoffResult payoff_dp(std::span<const double> values, Alpha alpha);

// Value-only fast path; same recurrence, no backtracking state.
double payoff_value(std::span<const double> values, Alpha alpha);

// Value plus best-partition values of every suffix [m..T] (0-based m,
// entry m of the result; entry T is 0 for the empty suffix).
std::vector<double> payoff_suffix_values(std::span<const double> values, Alpha alpha);

// Independent check: enumerates all 2^(T-1) partitions. Refuses T > 20.
double payoff_bruteforce_oracle(std::span<const double> values, Alpha alpha);

struct AlignedPayoffResult {
  double value = 0.0;
  Partition partition;
};

// Same objective restricted to partitions into aligned intervals.
// Horizon must be a power of two (or zero).
AlignedPayoffResult aligned_payoff_dp(std::span<const double> values, Alpha alpha);
double aligned_payoff_value(std::span<const double> values, Alpha alpha);

// Value of one fixed partition; validates that it tiles [1, T].
double payoff_of_partition(std::span<const double> values, const Partition& partition,
                           Alpha alpha);

}  // namespace ivr
