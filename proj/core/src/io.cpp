#include "ivr/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

namespace ivr {

namespace {

bool parse_double(std::string_view token, double& out) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  if (token.front() == '+') token.remove_prefix(1);  // from_chars rejects a leading plus
  if (token.empty()) return false;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

bool parse_long(std::string_view token, long& out) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), last, out);
  return ec == std::errc() && ptr == last;
}

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, comma - start));
    start = comma + 1;
  }
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename Fn>
void for_each_data_line(std::istream& in, bool skip_header, Fn&& fn) {
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (skip_header && row == 1) continue;
    fn(row, std::string_view(line));
  }
}

std::ifstream open_for_read(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw validation_error("cannot open " + path.string());
  return in;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw validation_error("cannot write " + path.string());
  return out;
}

std::vector<double> read_series(std::istream& in, bool check_range) {
  std::vector<double> values;
  std::string line;
  long row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    // Allow comments and blank separators in hand-written files.
    std::string_view sv(line);
    if (sv.find_first_not_of(" \t") == std::string_view::npos) continue;
    if (sv[sv.find_first_not_of(" \t")] == '#') continue;
    double v = 0.0;
    if (!parse_double(sv, v)) {
      throw validation_error("line " + std::to_string(row) + ": not a number: " + line);
    }
    if (check_range && !(v >= -1.0 && v <= 1.0)) {
      throw validation_error("line " + std::to_string(row) + ": value outside [-1, 1]: " + line);
    }
    values.push_back(v);
  }
  return values;
}

}  // namespace

Sequence read_sequence(std::istream& in) { return Sequence(read_series(in, true)); }

Sequence read_sequence_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_sequence(in);
}

void write_sequence(std::ostream& out, std::span<const double> values) {
  for (double v : values) out << format_value(v) << '\n';
}

void write_sequence_file(const std::filesystem::path& path, std::span<const double> values) {
  auto out = open_for_write(path);
  write_sequence(out, values);
}

std::vector<double> read_real_series(std::istream& in) { return read_series(in, false); }

std::vector<double> read_real_series_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_real_series(in);
}

void write_prediction_log(std::ostream& out, const GameResult& result) {
  out << "step,observed_bit,prediction,cumulative_payoff,clamped\n";
  for (const StepRecord& r : result.log) {
    out << r.step << ',' << format_value(r.observed) << ',' << format_value(r.prediction) << ','
        << format_value(r.cumulative) << ',' << (r.clamped ? 1 : 0) << '\n';
  }
}

void write_prediction_log_file(const std::filesystem::path& path, const GameResult& result) {
  auto out = open_for_write(path);
  write_prediction_log(out, result);
}

GameResult read_prediction_log(std::istream& in) {
  GameResult result;
  for_each_data_line(in, true, [&](long row, std::string_view line) {
    const auto fields = split_csv(line);
    if (fields.size() != 5) {
      throw validation_error("row " + std::to_string(row) + ": expected 5 columns, got " +
                             std::to_string(fields.size()));
    }
    StepRecord r;
    long step = 0, clamped = 0;
    if (!parse_long(fields[0], step) || !parse_double(fields[1], r.observed) ||
        !parse_double(fields[2], r.prediction) || !parse_double(fields[3], r.cumulative) ||
        !parse_long(fields[4], clamped) || (clamped != 0 && clamped != 1)) {
      throw validation_error("row " + std::to_string(row) + ": malformed log row");
    }
    r.step = static_cast<int>(step);
    r.clamped = clamped == 1;
    if (r.step != static_cast<int>(result.log.size()) + 1) {
      throw validation_error("row " + std::to_string(row) + ": steps must run 1..T in order");
    }
    result.log.push_back(r);
    result.payoff = r.cumulative;
    if (r.clamped) ++result.clamp_events;
  });
  return result;
}

GameResult read_prediction_log_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_prediction_log(in);
}

ExpertsInstance read_experts_csv(std::istream& in) {
  std::vector<double> b1, b2;
  for_each_data_line(in, true, [&](long row, std::string_view line) {
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw validation_error("row " + std::to_string(row) + ": expected t,b1,b2");
    }
    double v1 = 0.0, v2 = 0.0;
    long t = 0;
    if (!parse_long(fields[0], t) || !parse_double(fields[1], v1) ||
        !parse_double(fields[2], v2)) {
      throw validation_error("row " + std::to_string(row) + ": malformed experts row");
    }
    if (!(v1 >= 0.0 && v1 <= 1.0) || !(v2 >= 0.0 && v2 <= 1.0)) {
      throw validation_error("row " + std::to_string(row) + ": payoffs must lie in [0, 1]");
    }
    b1.push_back(v1);
    b2.push_back(v2);
  });
  return make_experts_instance(std::move(b1), std::move(b2));
}

ExpertsInstance read_experts_csv_file(const std::filesystem::path& path) {
  auto in = open_for_read(path);
  return read_experts_csv(in);
}

void write_experts_csv(std::ostream& out, const ExpertsInstance& instance) {
  out << "t,b1,b2\n";
  for (int i = 0; i < instance.length(); ++i) {
    out << (i + 1) << ',' << format_value(instance.expert1[i]) << ','
        << format_value(instance.expert2[i]) << '\n';
  }
}

void write_policy_csv(std::ostream& out, const ArmPolicy& policy) {
  out << "t,p1,p2\n";
  for (int i = 0; i < policy.length(); ++i) {
    out << (i + 1) << ',' << format_value(policy.arm1[i]) << ',' << format_value(policy.arm2[i])
        << '\n';
  }
}

void write_policy_csv_file(const std::filesystem::path& path, const ArmPolicy& policy) {
  auto out = open_for_write(path);
  write_policy_csv(out, policy);
}

ArmPolicy read_policy_csv(std::istream& in) {
  ArmPolicy policy;
  for_each_data_line(in, true, [&](long row, std::string_view line) {
    const auto fields = split_csv(line);
    if (fields.size() != 3) {
      throw validation_error("row " + std::to_string(row) + ": expected t,p1,p2");
    }
    double p1 = 0.0, p2 = 0.0;
    long t = 0;
    if (!parse_long(fields[0], t) || !parse_double(fields[1], p1) ||
        !parse_double(fields[2], p2)) {
      throw validation_error("row " + std::to_string(row) + ": malformed policy row");
    }
    if (!(p1 >= 0.0 && p2 >= 0.0) || std::fabs(p1 + p2 - 1.0) > 1e-9) {
      throw validation_error("row " + std::to_string(row) + ": p1,p2 must be a probability pair");
    }
    policy.arm1.push_back(p1);
    policy.arm2.push_back(p2);
  });
  return policy;
}

}  // namespace ivr
