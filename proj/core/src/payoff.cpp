#include "ivr/payoff.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace ivr {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> sqrt_table(int n) {
  std::vector<double> sq(n + 1);
  for (int k = 0; k <= n; ++k) sq[k] = std::sqrt(static_cast<double>(k));
  return sq;
}

// Scratch for the value-only paths; reused across calls to keep the hot
// loops allocation-free.
struct ValueScratch {
  std::vector<double> c, sq, rows, cols;
  std::vector<int> row_base, col_base;
};

thread_local ValueScratch tl_scratch;

// Fills scratch.rows with the full triangular table (row i holds best values
// of [i, i+m] for m = 0..n-1-i) and returns the whole-sequence value.
//
// The split scan reads the left factors from a row-major copy and the right
// factors from a column-major copy, so both streams are contiguous; four max
// accumulators break the dependence chain (max is exactly associative, this
// does not change the result).
double value_table(std::span<const double> values, double alpha, ValueScratch& s) {
  const int n = static_cast<int>(values.size());
  if (n == 0) return 0.0;

  s.c.resize(n + 1);
  s.c[0] = 0.0;
  for (int i = 0; i < n; ++i) s.c[i + 1] = s.c[i] + values[i];
  s.sq.resize(n + 1);
  for (int k = 0; k <= n; ++k) s.sq[k] = std::sqrt(static_cast<double>(k));

  s.row_base.resize(n);
  s.col_base.resize(n);
  int acc = 0;
  for (int i = 0; i < n; ++i) {
    s.row_base[i] = acc;
    acc += n - i;
  }
  acc = 0;
  for (int j = 0; j < n; ++j) {
    s.col_base[j] = acc;
    acc += j + 1;
  }
  const std::size_t tri = static_cast<std::size_t>(n) * (n + 1) / 2;
  s.rows.resize(tri);
  s.cols.resize(tri);

  for (int d = 0; d < n; ++d) {
    const double pen = alpha * s.sq[d + 1];
    for (int i = 0; i + d < n; ++i) {
      const int j = i + d;
      const double single = std::fabs(s.c[j + 1] - s.c[i]) - pen;
      const double* L = s.rows.data() + s.row_base[i];
      const double* R = s.cols.data() + s.col_base[j] + i + 1;
      double b0 = single, b1 = kNegInf, b2 = kNegInf, b3 = kNegInf;
      int m = 0;
      for (; m + 4 <= d; m += 4) {
        b0 = std::max(b0, L[m] + R[m]);
        b1 = std::max(b1, L[m + 1] + R[m + 1]);
        b2 = std::max(b2, L[m + 2] + R[m + 2]);
        b3 = std::max(b3, L[m + 3] + R[m + 3]);
      }
      for (; m < d; ++m) b0 = std::max(b0, L[m] + R[m]);
      const double best = std::max(std::max(b0, b1), std::max(b2, b3));
      s.rows[s.row_base[i] + d] = best;
      s.cols[s.col_base[j] + i] = best;
    }
  }
  return s.rows[s.row_base[0] + n - 1];
}

}  // namespace

PayoffTable make_payoff_table(int n, std::vector<double> cells, DpStats stats);

PayoffTable make_payoff_table(int n, std::vector<double> cells, DpStats stats) {
  PayoffTable t;
  t.n_ = n;
  t.cells_ = std::move(cells);
  t.stats_ = stats;
  return t;
}

double PayoffTable::at(int i, int j) const {
  if (i < 1 || j > n_ || i > j) {
    throw validation_error("table index (" + std::to_string(i) + ", " + std::to_string(j) +
                           ") outside 1 <= i <= j <= " + std::to_string(n_));
  }
  // Row r (0-based) starts at r*n - r*(r-1)/2 and holds columns r..n-1.
  const int r = i - 1;
  const std::size_t base = static_cast<std::size_t>(r) * n_ - static_cast<std::size_t>(r) * (r - 1) / 2;
  return cells_[base + (j - i)];
}

PayoffResult payoff_dp(std::span<const double> values, Alpha alpha) {
  const int n = static_cast<int>(values.size());
  PayoffResult out;
  if (n == 0) {
    out.table = make_payoff_table(0, {}, {});
    return out;
  }

  std::vector<double> c(n + 1);
  c[0] = 0.0;
  for (int i = 0; i < n; ++i) c[i + 1] = c[i] + values[i];
  const std::vector<double> sq = sqrt_table(n);

  // cells/split/cnt are row-major triangular: row i holds j = i..n-1.
  std::vector<std::size_t> base(n);
  std::size_t acc = 0;
  for (int i = 0; i < n; ++i) {
    base[i] = acc;
    acc += static_cast<std::size_t>(n - i);
  }
  std::vector<double> cells(acc);
  std::vector<int> split(acc);  // -1 = kept whole; else last index of the left part
  std::vector<int> cnt(acc);   // fewest intervals among maximizing partitions
  DpStats stats;

  auto idx = [&](int i, int j) { return base[i] + static_cast<std::size_t>(j - i); };

  for (int d = 0; d < n; ++d) {
    for (int i = 0; i + d < n; ++i) {
      const int j = i + d;
      double best = std::fabs(c[j + 1] - c[i]) - alpha.value * sq[d + 1];
      int best_split = -1;
      int best_cnt = 1;
      for (int k = i; k < j; ++k) {
        stats.split_reads += 2;
        const double cand = cells[idx(i, k)] + cells[idx(k + 1, j)];
        if (cand > best) {
          best = cand;
          best_split = k;
          best_cnt = cnt[idx(i, k)] + cnt[idx(k + 1, j)];
        } else if (cand == best && best_split != -1) {
          const int cand_cnt = cnt[idx(i, k)] + cnt[idx(k + 1, j)];
          if (cand_cnt < best_cnt) {
            best_split = k;
            best_cnt = cand_cnt;
          }
        }
      }
      cells[idx(i, j)] = best;
      split[idx(i, j)] = best_split;
      cnt[idx(i, j)] = best_cnt;
    }
  }

  // Iterative backtrack, leftmost-first.
  std::vector<std::pair<int, int>> stack{{0, n - 1}};
  while (!stack.empty()) {
    auto [i, j] = stack.back();
    stack.pop_back();
    const int k = split[idx(i, j)];
    if (k < 0) {
      out.partition.intervals.push_back({i + 1, j + 1});
    } else {
      // Right first so the left half is processed (and emitted) first.
      stack.emplace_back(k + 1, j);
      stack.emplace_back(i, k);
    }
  }

  out.value = cells[idx(0, n - 1)];
  out.table = make_payoff_table(n, std::move(cells), stats);
  return out;
}

double payoff_value(std::span<const double> values, Alpha alpha) {
  return value_table(values, alpha.value, tl_scratch);
}

std::vector<double> payoff_suffix_values(std::span<const double> values, Alpha alpha) {
  const int n = static_cast<int>(values.size());
  std::vector<double> out(n + 1, 0.0);
  if (n == 0) return out;
  ValueScratch& s = tl_scratch;
  value_table(values, alpha.value, s);
  for (int m = 0; m < n; ++m) out[m] = s.rows[s.row_base[m] + (n - 1 - m)];
  return out;
}

double payoff_bruteforce_oracle(std::span<const double> values, Alpha alpha) {
  const int n = static_cast<int>(values.size());
  if (n > 20) {
    throw validation_error("brute-force oracle refuses sequences longer than 20, got " +
                           std::to_string(n));
  }
  if (n == 0) return 0.0;

  std::vector<double> c(n + 1);
  c[0] = 0.0;
  for (int i = 0; i < n; ++i) c[i + 1] = c[i] + values[i];
  const std::vector<double> sq = sqrt_table(n);

  double best = kNegInf;
  const std::uint32_t masks = 1u << (n - 1);  // bit p set = boundary after position p
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    double total = 0.0;
    int start = 0;
    for (int p = 0; p < n - 1; ++p) {
      if (mask & (1u << p)) {
        total += std::fabs(c[p + 1] - c[start]) - alpha.value * sq[p + 1 - start];
        start = p + 1;
      }
    }
    total += std::fabs(c[n] - c[start]) - alpha.value * sq[n - start];
    best = std::max(best, total);
  }
  return best;
}

AlignedPayoffResult aligned_payoff_dp(std::span<const double> values, Alpha alpha) {
  const int n = static_cast<int>(values.size());
  AlignedPayoffResult out;
  if (n == 0) return out;
  if (!is_power_of_two(n)) {
    throw validation_error("aligned payoff needs a power-of-two length, got " +
                           std::to_string(n));
  }

  std::vector<double> c(n + 1);
  c[0] = 0.0;
  for (int i = 0; i < n; ++i) c[i + 1] = c[i] + values[i];
  const std::vector<double> sq = sqrt_table(n);

  // One value per node of the dyadic tree; level l has n >> l blocks.
  std::vector<std::vector<double>> val;
  std::vector<std::vector<bool>> whole;
  int levels = 0;
  while ((1 << levels) <= n) ++levels;  // n = 2^(levels-1)
  val.resize(levels);
  whole.resize(levels);
  for (int l = 0; l < levels; ++l) {
    const int size = 1 << l;
    const int blocks = n / size;
    val[l].resize(blocks);
    whole[l].resize(blocks);
    for (int b = 0; b < blocks; ++b) {
      const int lo = b * size;  // 0-based start
      const double single = std::fabs(c[lo + size] - c[lo]) - alpha.value * sq[size];
      if (l == 0) {
        val[l][b] = single;
        whole[l][b] = true;
      } else {
        const double split = val[l - 1][2 * b] + val[l - 1][2 * b + 1];
        whole[l][b] = single >= split;
        val[l][b] = whole[l][b] ? single : split;
      }
    }
  }

  std::vector<std::pair<int, int>> stack{{levels - 1, 0}};
  while (!stack.empty()) {
    auto [l, b] = stack.back();
    stack.pop_back();
    if (whole[l][b]) {
      const int size = 1 << l;
      out.partition.intervals.push_back({b * size + 1, (b + 1) * size});
    } else {
      stack.emplace_back(l - 1, 2 * b + 1);
      stack.emplace_back(l - 1, 2 * b);
    }
  }

  out.value = val[levels - 1][0];
  return out;
}

double aligned_payoff_value(std::span<const double> values, Alpha alpha) {
  const int n = static_cast<int>(values.size());
  if (n == 0) return 0.0;
  if (!is_power_of_two(n)) {
    throw validation_error("aligned payoff needs a power-of-two length, got " +
                           std::to_string(n));
  }
  std::vector<double>& c = tl_scratch.c;
  c.resize(n + 1);
  c[0] = 0.0;
  for (int i = 0; i < n; ++i) c[i + 1] = c[i] + values[i];

  // prev/cur hold one tree level each; no per-node bookkeeping.
  std::vector<double>& prev = tl_scratch.rows;
  std::vector<double>& cur = tl_scratch.cols;
  prev.resize(n);
  for (int i = 0; i < n; ++i) prev[i] = std::fabs(values[i]) - alpha.value;
  int size = 2;
  while (size <= n) {
    const int blocks = n / size;
    const double pen = alpha.value * std::sqrt(static_cast<double>(size));
    cur.resize(blocks);
    for (int b = 0; b < blocks; ++b) {
      const double single = std::fabs(c[(b + 1) * size] - c[b * size]) - pen;
      cur[b] = std::max(single, prev[2 * b] + prev[2 * b + 1]);
    }
    std::swap(prev, cur);
    size *= 2;
  }
  return prev[0];
}

double payoff_of_partition(std::span<const double> values, const Partition& partition,
                           Alpha alpha) {
  const int n = static_cast<int>(values.size());
  if (!partition.covers(n)) {
    throw validation_error("partition does not tile [1, " + std::to_string(n) + "]");
  }
  const PrefixSums sums = build_prefix_sums(values);
  double total = 0.0;
  for (const Interval& iv : partition.intervals) {
    total += std::fabs(sums.height(iv)) - alpha.value * std::sqrt(static_cast<double>(iv.length()));
  }
  return total;
}

}  // namespace ivr
