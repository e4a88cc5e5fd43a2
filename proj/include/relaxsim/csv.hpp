#pragma once

// Snapshot CSV:
//   # meta key=value        (grid and run metadata, one per line)
//   x,comp_0,...,comp_{K-1}
//   # t=<time>             (one block per snapshot)
//   <x>,<values...>
// Numbers are printed with 17 significant digits so reading reproduces them
// exactly.

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "relaxsim/scheme.hpp"

namespace relaxsim {

using MetaList = std::vector<std::pair<std::string, std::string>>;

std::string format_double(double v);

void write_snapshots_csv(std::ostream& os, const SnapshotSeries& series, const MetaList& meta = {});
void write_snapshots_csv(const std::string& path, const SnapshotSeries& series, const MetaList& meta = {});

struct CsvSeries {
  MetaList meta;  // as read, including the grid keys
  SnapshotSeries series;

  const std::string* find(const std::string& key) const;
};

//! ConfigError on malformed input.
CsvSeries read_snapshots_csv(std::istream& is);
CsvSeries read_snapshots_csv(const std::string& path);

//! Two-column trace, e.g. header "t,S" for entropy.
void write_trace_csv(const std::string& path, const std::vector<std::pair<double, double>>& trace,
                     const std::string& value_name);

}  // namespace relaxsim
