#include "leslie/io.hpp"

#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace leslie {

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, r.ptr);
}

double parse_double(const std::string& s) {
  double x = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty())
    throw IoError("malformed number '" + s + "'");
  return x;
}

void write_file_atomic(const std::string& path, const std::string& bytes) {
  const std::filesystem::path target(path);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open '" + tmp.string() + "' for writing");
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    f.flush();
    if (!f) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, target, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw IoError("cannot move snapshot into '" + path + "': " + ec.message());
  }
}

namespace {

constexpr const char* magic = "ELSNAP1";

void put_le(std::string& out, double x) {
  std::uint64_t u = std::bit_cast<std::uint64_t>(x);
  for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((u >> (8 * b)) & 0xffu));
}

double get_le(const char* p) {
  std::uint64_t u = 0;
  for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(static_cast<unsigned char>(p[b])) << (8 * b);
  return std::bit_cast<double>(u);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(const std::string& s) {
  int x = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) throw IoError("malformed integer '" + s + "'");
  return x;
}

}  // namespace

std::string encode_snapshot(const State& s) {
  const Grid& g = s.grid();
  if (!(s.v.grid == g) || !(s.p.grid == g)) throw IoError("snapshot fields live on different grids");
  std::string out;
  out += magic;
  out += "\ndim " + std::to_string(g.dim);
  out += "\nn " + std::to_string(g.n[0]) + " " + std::to_string(g.n[1]) + " " + std::to_string(g.n[2]);
  out += "\nh " + format_double(g.h[0]) + " " + format_double(g.h[1]) + " " + format_double(g.h[2]);
  out += "\nbc " + to_string(g.bc);
  out += "\ntime " + format_double(s.t);
  out += "\ndata\n";
  out.reserve(out.size() + 7 * 8 * g.size());
  for (int c = 0; c < 3; ++c)
    for (const auto& x : s.v.values) put_le(out, x[c]);
  for (int c = 0; c < 3; ++c)
    for (const auto& x : s.d.values) put_le(out, x[c]);
  for (double x : s.p.values) put_le(out, x);
  return out;
}

State decode_snapshot(const std::string& bytes) {
  std::size_t pos = 0;
  auto next_line = [&]() {
    const auto nl = bytes.find('\n', pos);
    if (nl == std::string::npos || nl - pos > 256) throw IoError("snapshot header truncated or malformed");
    std::string line = bytes.substr(pos, nl - pos);
    pos = nl + 1;
    return line;
  };
  if (bytes.compare(0, std::strlen(magic), magic) != 0 || next_line() != magic)
    throw IoError("not a snapshot file (bad magic)");

  auto field = [&](const char* key, std::size_t count) {
    const auto parts = split(next_line(), ' ');
    if (parts.size() != count + 1 || parts[0] != key)
      throw IoError(std::string("snapshot header: expected '") + key + "' line");
    return std::vector<std::string>(parts.begin() + 1, parts.end());
  };
  Grid g;
  g.dim = parse_int(field("dim", 1)[0]);
  const auto ns = field("n", 3);
  const auto hs = field("h", 3);
  for (std::size_t a = 0; a < 3; ++a) {
    g.n[a] = parse_int(ns[a]);
    try {
      g.h[a] = parse_double(hs[a]);
    } catch (const IoError&) {
      throw IoError("snapshot header: malformed spacing");
    }
  }
  try {
    g.bc = boundary_from_string(field("bc", 1)[0]);
    g.check();
  } catch (const std::invalid_argument& e) {
    throw IoError(std::string("snapshot header: ") + e.what());
  }
  State s;
  s.t = parse_double(field("time", 1)[0]);
  if (next_line() != "data") throw IoError("snapshot header: expected 'data' line");

  const std::size_t n = g.size();
  const std::size_t need = 7 * 8 * n;
  const std::size_t have = bytes.size() - pos;
  if (have < need)
    throw IoError("snapshot truncated: " + std::to_string(have) + " of " + std::to_string(need) + " data bytes");
  if (have > need) throw IoError("snapshot has " + std::to_string(have - need) + " trailing bytes");

  s.v = VectorField(g);
  s.d = VectorField(g);
  s.p = ScalarField(g);
  const char* p = bytes.data() + pos;
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i, p += 8) s.v[i][c] = get_le(p);
  for (int c = 0; c < 3; ++c)
    for (std::size_t i = 0; i < n; ++i, p += 8) s.d[i][c] = get_le(p);
  for (std::size_t i = 0; i < n; ++i, p += 8) s.p[i] = get_le(p);
  if (!std::isfinite(s.t) || !all_finite(s.v) || !all_finite(s.d) || !all_finite(s.p))
    throw IoError("snapshot contains non-finite values");
  return s;
}

void write_snapshot(const State& s, const std::string& path) { write_file_atomic(path, encode_snapshot(s)); }

State read_snapshot(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open snapshot '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  try {
    return decode_snapshot(ss.str());
  } catch (const IoError& e) {
    throw IoError(path + ": " + e.what());
  }
}

const char* const csv_header =
    "t,kinetic,elastic,penalty,total,diss_mu1,diss_mu4,diss_dir,diss_q,cross_term,E,W,K,bound,residual_energy";

namespace {

CsvRow row_from_sample(const EnergySample& s) {
  CsvRow r;
  r.t = s.t;
  r.kinetic = s.energy.kinetic;
  r.elastic = s.energy.elastic;
  r.penalty = s.energy.penalty;
  r.total = s.energy.total();
  r.diss_mu1 = s.diss.mu1;
  r.diss_mu4 = s.diss.mu4;
  r.diss_dir = s.diss.directional;
  r.diss_q = s.diss.q;
  r.cross_term = s.cross;
  return r;
}

double* column(CsvRow& r, int c) {
  double* cols[] = {&r.t,        &r.kinetic,  &r.elastic,  &r.penalty, &r.total,
                    &r.diss_mu1, &r.diss_mu4, &r.diss_dir, &r.diss_q,  &r.cross_term,
                    &r.E,        &r.W,        &r.K,        &r.bound,   &r.residual_energy};
  return cols[c];
}

constexpr int n_columns = 15;

}  // namespace

std::vector<CsvRow> rows_from_energy(std::span<const EnergySample> trace) {
  const auto res = energy_inequality_residual(trace);
  std::vector<CsvRow> rows;
  rows.reserve(trace.size());
  for (std::size_t k = 0; k < trace.size(); ++k) {
    rows.push_back(row_from_sample(trace[k]));
    rows.back().residual_energy = res[k];
  }
  return rows;
}

std::vector<CsvRow> rows_from_comparison(const ComparisonReport& rep) {
  std::vector<EnergySample> pert;
  pert.reserve(rep.trace.size());
  for (const auto& s : rep.trace) pert.push_back(s.perturbed);
  std::vector<CsvRow> rows = rows_from_energy(pert);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    rows[k].E = rep.trace[k].E;
    rows[k].W = rep.trace[k].W;
    rows[k].K = rep.trace[k].K;
    rows[k].bound = rep.trace[k].bound;
  }
  return rows;
}

void write_csv(std::ostream& os, std::span<const CsvRow> rows) {
  os << csv_header << '\n';
  for (CsvRow r : rows) {
    for (int c = 0; c < n_columns; ++c) os << (c ? "," : "") << format_double(*column(r, c));
    os << '\n';
  }
}

std::string format_csv(std::span<const CsvRow> rows) {
  std::ostringstream os;
  write_csv(os, rows);
  return os.str();
}

void write_csv_file(const std::string& path, std::span<const CsvRow> rows) {
  write_file_atomic(path, format_csv(rows));
}

std::vector<CsvRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != csv_header) throw IoError("trace CSV: unexpected header");
  std::vector<CsvRow> rows;
  int lineno = 1;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto parts = split(line, ',');
    if (static_cast<int>(parts.size()) != n_columns)
      throw IoError("trace CSV line " + std::to_string(lineno) + ": expected 15 columns");
    CsvRow r;
    for (int c = 0; c < n_columns; ++c) {
      try {
        *column(r, c) = parse_double(parts[static_cast<std::size_t>(c)]);
      } catch (const IoError& e) {
        throw IoError("trace CSV line " + std::to_string(lineno) + ": " + e.what());
      }
    }
    rows.push_back(r);
  }
  return rows;
}

}  // namespace leslie
