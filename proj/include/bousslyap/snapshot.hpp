#pragma once

#include <string>
#include <vector>

#include "bousslyap/grid.hpp"
#include "bousslyap/matrix.hpp"

namespace bousslyap {

/// Field CSV format: one header line
///   # t=<t> J=<J> h=<h> L0=<L0> L1=<L1>
/// then J+1 lines of J+1 comma-separated values, row j (x index) by column m
/// (y index). At 17 significant digits the round trip is lossless for every
/// finite double.
void write_snapshot(const Field& field, double t, const GridSpec& grid,
                    const std::string& path, int precision = 17);

struct SnapshotMeta {
  double t = 0.0;
  int J = 0;
  double h = 0.0;
  double L0 = 0.0;
  double L1 = 0.0;
};

struct Snapshot {
  Field field;
  SnapshotMeta meta;
};

Snapshot read_snapshot(const std::string& path);

struct NormsRow {
  int n = 0;
  double t = 0.0;
  double norm_u = 0.0;
  double norm_v = 0.0;
};

/// CSV with header "n,t,normU,normV".
void write_norms_csv(const std::string& path,
                     const std::vector<NormsRow>& rows);

}  // namespace bousslyap
