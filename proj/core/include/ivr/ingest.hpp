#pragma once

#include <filesystem>
#include <istream>
#include <vector>

#include "ivr/sequence.hpp"

namespace ivr {

// Price series -> sign bits and clipped simple returns. A flat step (zero
// return) maps to bit 0. N prices yield N-1 steps.
struct PriceIngestResult {
  Sequence bits;                    // sign of each return: +1, -1, or 0
  Sequence returns;                 // simple returns clipped into [-1, 1]
  std::vector<double> raw_returns;  // unclipped
  long clip_events = 0;
};

// CSV with a header row and columns timestamp,price. Errors carry the 1-based
// row number: non-positive or malformed prices, rows with missing fields,
// fewer than two data rows.
PriceIngestResult ingest_prices(const std::filesystem::path& csv_path);
PriceIngestResult ingest_prices(std::istream& in);

}  // namespace ivr
