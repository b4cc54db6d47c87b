#pragma once

// Serialization of sweep reports: one JSON object per cell (JSONL) and a
// one-line CSV summary. Files are written to a temporary name and renamed.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>

#include <json.hpp>

#include "pellfib/sweeps.hpp"

namespace pellfib {

inline std::string cell_jsonl(const std::string& sweep, const SweepCell& c) {
  nlohmann::ordered_json j;
  j["sweep"] = sweep;
  j["k"] = c.k;
  j["m1"] = c.m1;
  j["eps"] = c.eps;
  j["stat"] = to_decimal(c.stat);
  j["status"] = c.ok ? "ok" : "failed";
  j["detail"] = c.detail;
  return j.dump();
}

inline std::string report_jsonl(const SweepReport& r) {
  std::string out;
  for (const auto& c : r.cells) {
    out += cell_jsonl(r.name, c);
    out += '\n';
  }
  return out;
}

inline const char* kCsvHeader = "sweep,grid,stat,cells,failures,seconds\n";

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + "\"";
}

inline std::string report_csv_line(const SweepReport& r) {
  std::ostringstream os;
  os << csv_field(r.name) << ',' << csv_field(r.grid) << ',' << to_decimal(r.stat) << ',' << r.cell_count << ','
     << r.failures << ',' << std::fixed << std::setprecision(3) << r.seconds << '\n';
  return os.str();
}

/// Writes `content` to `path` through a temporary file in the same
/// directory, so readers never see a partial file.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    f << content;
    f.flush();
    if (!f) throw std::runtime_error("write to " + tmp.string() + " failed");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp);
    throw std::runtime_error("cannot rename " + tmp.string() + " to " + path.string() + ": " + ec.message());
  }
}

/// `<prefix>.csv` always, `<prefix>.jsonl` when audit records are present.
inline void emit_report(const SweepReport& r, const std::filesystem::path& prefix, bool audit) {
  std::filesystem::path csv = prefix, jsonl = prefix;
  csv += ".csv";
  jsonl += ".jsonl";
  if (audit) write_atomic(jsonl, report_jsonl(r));
  write_atomic(csv, std::string(kCsvHeader) + (r.cell_count > 0 ? report_csv_line(r) : std::string()));
}

}  // namespace pellfib
