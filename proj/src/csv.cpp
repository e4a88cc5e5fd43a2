#include "relaxsim/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "relaxsim/errors.hpp"

namespace relaxsim {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_snapshots_csv(std::ostream& os, const SnapshotSeries& series, const MetaList& meta) {
  const Grid1D& g = series.grid;
  os << "# meta cells=" << g.cells << "\n";
  os << "# meta dx=" << format_double(g.dx) << "\n";
  os << "# meta x0=" << format_double(g.x0) << "\n";
  os << "# meta boundary=" << to_string(g.boundary) << "\n";
  os << "# meta components=" << series.n_components << "\n";
  for (const auto& [k, v] : meta) os << "# meta " << k << "=" << v << "\n";
  os << "x";
  for (int c = 0; c < series.n_components; ++c) os << ",comp_" << c;
  os << "\n";
  for (const Snapshot& s : series.snapshots) {
    os << "# t=" << format_double(s.t) << "\n";
    for (int i = 0; i < g.cells; ++i) {
      os << format_double(g.center(i));
      for (int c = 0; c < series.n_components; ++c) os << "," << format_double(s.cells[i][c]);
      os << "\n";
    }
  }
}

void write_snapshots_csv(const std::string& path, const SnapshotSeries& series, const MetaList& meta) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  write_snapshots_csv(os, series, meta);
  if (!os) throw ConfigError("failed writing '" + path + "'");
}

const std::string* CsvSeries::find(const std::string& key) const {
  for (const auto& [k, v] : meta) {
    if (k == key) return &v;
  }
  return nullptr;
}

namespace {

double parse_number(const std::string& text, int line_no) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw ConfigError("line " + std::to_string(line_no) + ": '" + text + "' is not a number");
  }
  return v;
}

}  // namespace

CsvSeries read_snapshots_csv(std::istream& is) {
  CsvSeries out;
  std::string line;
  int line_no = 0;
  bool header_seen = false;
  std::vector<double> xs;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.rfind("# meta ", 0) == 0) {
      const std::string kv = line.substr(7);
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("line " + std::to_string(line_no) + ": meta line without '='");
      out.meta.emplace_back(kv.substr(0, eq), kv.substr(eq + 1));
      continue;
    }
    if (line.rfind("# t=", 0) == 0) {
      if (!header_seen) throw ConfigError("line " + std::to_string(line_no) + ": snapshot before the header");
      out.series.snapshots.push_back({parse_number(line.substr(4), line_no), {}});
      continue;
    }
    if (line[0] == '#') continue;
    if (!header_seen) {
      if (line.rfind("x", 0) != 0) throw ConfigError("line " + std::to_string(line_no) + ": expected the x,comp_* header");
      header_seen = true;
      int commas = 0;
      for (char ch : line) commas += ch == ',';
      out.series.n_components = commas;
      continue;
    }
    if (out.series.snapshots.empty()) throw ConfigError("line " + std::to_string(line_no) + ": data before '# t='");
    std::stringstream ss(line);
    std::string cell;
    std::vector<double> values;
    while (std::getline(ss, cell, ',')) values.push_back(parse_number(cell, line_no));
    if (static_cast<int>(values.size()) != out.series.n_components + 1) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected " +
                        std::to_string(out.series.n_components + 1) + " columns");
    }
    Vec u(out.series.n_components);
    for (int c = 0; c < out.series.n_components; ++c) u[c] = values[c + 1];
    out.series.snapshots.back().cells.push_back(u);
    if (out.series.snapshots.size() == 1) xs.push_back(values[0]);
  }
  if (!header_seen) throw ConfigError("no header line found");

  Grid1D& g = out.series.grid;
  if (const auto* v = out.find("cells")) g.cells = std::atoi(v->c_str());
  if (const auto* v = out.find("dx")) g.dx = parse_number(*v, 0);
  if (const auto* v = out.find("x0")) g.x0 = parse_number(*v, 0);
  if (const auto* v = out.find("boundary")) g.boundary = parse_boundary(*v);
  if (g.cells == 0) g.cells = static_cast<int>(xs.size());
  if (g.dx == 0.0 && xs.size() >= 2) {
    g.dx = xs[1] - xs[0];
    g.x0 = xs[0] - 0.5 * g.dx;
  }
  for (const Snapshot& s : out.series.snapshots) {
    if (static_cast<int>(s.cells.size()) != g.cells) {
      throw ConfigError("snapshot at t=" + format_double(s.t) + " has " + std::to_string(s.cells.size()) +
                        " rows, expected " + std::to_string(g.cells));
    }
  }
  return out;
}

CsvSeries read_snapshots_csv(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw ConfigError("cannot open '" + path + "'");
  return read_snapshots_csv(is);
}

void write_trace_csv(const std::string& path, const std::vector<std::pair<double, double>>& trace,
                     const std::string& value_name) {
  std::ofstream os(path);
  if (!os) throw ConfigError("cannot open '" + path + "' for writing");
  os << "t," << value_name << "\n";
  for (const auto& [t, v] : trace) os << format_double(t) << "," << format_double(v) << "\n";
}

}  // namespace relaxsim
