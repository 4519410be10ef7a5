#pragma once

#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "leslie/dynamics.hpp"
#include "leslie/experiments.hpp"

namespace leslie {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits, enough to parse back to the same double.
std::string format_double(double x);
/// Strict parse of a whole token; throws IoError.
double parse_double(const std::string& s);

/// Writes `bytes` next to `path` and renames it into place.
void write_file_atomic(const std::string& path, const std::string& bytes);

/// Snapshot layout: the magic line "ELSNAP1", text header lines
/// (dim, n, h, bc, time), a "data" line, then the planes vx vy vz dx dy dz p as
/// little-endian doubles in grid index order.
std::string encode_snapshot(const State& s);
State decode_snapshot(const std::string& bytes);
void write_snapshot(const State& s, const std::string& path);
/// Throws IoError on bad magic, malformed header, truncation, trailing bytes or
/// non-finite values.
State read_snapshot(const std::string& path);

/// One line of a trace file. Columns E, W, K and bound are zero for runs
/// without a reference trajectory.
struct CsvRow {
  double t = 0.0;
  double kinetic = 0.0, elastic = 0.0, penalty = 0.0, total = 0.0;
  double diss_mu1 = 0.0, diss_mu4 = 0.0, diss_dir = 0.0, diss_q = 0.0;
  double cross_term = 0.0;
  double E = 0.0, W = 0.0, K = 0.0, bound = 0.0;
  double residual_energy = 0.0;
  friend bool operator==(const CsvRow&, const CsvRow&) = default;
};

extern const char* const csv_header;

std::vector<CsvRow> rows_from_energy(std::span<const EnergySample> trace);
std::vector<CsvRow> rows_from_comparison(const ComparisonReport& rep);

void write_csv(std::ostream& os, std::span<const CsvRow> rows);
std::string format_csv(std::span<const CsvRow> rows);
void write_csv_file(const std::string& path, std::span<const CsvRow> rows);
/// Throws IoError on a wrong header or malformed line.
std::vector<CsvRow> read_csv(std::istream& is);

}  // namespace leslie
