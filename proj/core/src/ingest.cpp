#include "ivr/ingest.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <string>

namespace ivr {

namespace {

// Strict full-token parse; leading/trailing spaces tolerated.
bool parse_double(std::string_view token, double& out) {
  while (!token.empty() && (token.front() == ' ' || token.front() == '\t')) {
    token.remove_prefix(1);
  }
  while (!token.empty() && (token.back() == ' ' || token.back() == '\t' || token.back() == '\r')) {
    token.remove_suffix(1);
  }
  if (token.empty()) return false;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last && std::isfinite(out);
}

}  // namespace

PriceIngestResult ingest_prices(std::istream& in) {
  std::string line;
  long row = 0;
  bool header_seen = false;
  std::vector<double> prices;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (!header_seen) {
      // First non-blank row must be a header (e.g. "timestamp,price"); a
      // numeric price field here means the header was forgotten, and skipping
      // it would silently drop a data point.
      header_seen = true;
      const std::size_t comma = line.find(',');
      const std::string_view price_field = comma == std::string::npos
                                               ? std::string_view(line)
                                               : std::string_view(line).substr(comma + 1);
      double probe = 0.0;
      if (parse_double(price_field, probe)) {
        throw validation_error("row " + std::to_string(row) +
                               ": expected a header row, found numeric data");
      }
      continue;
    }
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos) {
      throw validation_error("row " + std::to_string(row) + ": expected timestamp,price");
    }
    double price = 0.0;
    if (!parse_double(std::string_view(line).substr(comma + 1), price)) {
      throw validation_error("row " + std::to_string(row) + ": malformed price");
    }
    if (!(price > 0.0)) {
      throw validation_error("row " + std::to_string(row) + ": price must be > 0, got " +
                             std::to_string(price));
    }
    prices.push_back(price);
  }
  if (prices.size() < 2) {
    throw validation_error("need at least 2 prices to form a return, got " +
                           std::to_string(prices.size()));
  }

  PriceIngestResult result;
  result.raw_returns.reserve(prices.size() - 1);
  std::vector<double> bits, clipped;
  bits.reserve(prices.size() - 1);
  clipped.reserve(prices.size() - 1);
  for (std::size_t i = 1; i < prices.size(); ++i) {
    const double r = prices[i] / prices[i - 1] - 1.0;
    result.raw_returns.push_back(r);
    bits.push_back(r > 0.0 ? 1.0 : (r < 0.0 ? -1.0 : 0.0));
    double c = r;
    if (c > 1.0) {
      c = 1.0;
      ++result.clip_events;
    } else if (c < -1.0) {
      c = -1.0;
      ++result.clip_events;
    }
    clipped.push_back(c);
  }
  result.bits = Sequence(std::move(bits));
  result.returns = Sequence(std::move(clipped));
  return result;
}

PriceIngestResult ingest_prices(const std::filesystem::path& csv_path) {
  std::ifstream in(csv_path);
  if (!in) throw validation_error("cannot open " + csv_path.string());
  return ingest_prices(in);
}

}  // namespace ivr
