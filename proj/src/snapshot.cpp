#include "bousslyap/snapshot.hpp"

#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>

#include "bousslyap/errors.hpp"

namespace bousslyap {
namespace {

std::string format_double(double v, int precision) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

double parse_double(const std::string& token, const std::string& path,
                    std::size_t line_no) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0')
    throw ValidationError("snapshot '" + path + "': line " +
                          std::to_string(line_no) + ": bad number '" + token +
                          "'");
  return v;
}

}  // namespace

void write_snapshot(const Field& field, double t, const GridSpec& grid,
                    const std::string& path, int precision) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "# t=" << format_double(t, precision) << " J=" << grid.J
      << " h=" << format_double(grid.h, precision)
      << " L0=" << format_double(grid.L0, precision)
      << " L1=" << format_double(grid.L1, precision) << "\n";
  const std::size_t n = field.side();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t m = 0; m < n; ++m) {
      if (m > 0) out << ',';
      out << format_double(field(j, m), precision);
    }
    out << '\n';
  }
  if (!out) throw IoError("write failure on '" + path + "'");
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open snapshot '" + path + "'");
  std::string line;
  if (!std::getline(in, line))
    throw ValidationError("snapshot '" + path + "': empty file");

  Snapshot snap;
  int consumed = -1;
  const int matched =
      std::sscanf(line.c_str(), "# t=%lf J=%d h=%lf L0=%lf L1=%lf%n",
                  &snap.meta.t, &snap.meta.J, &snap.meta.h, &snap.meta.L0,
                  &snap.meta.L1, &consumed);
  if (matched != 5 || consumed < 0 ||
      static_cast<std::size_t>(consumed) != line.size())
    throw ValidationError("snapshot '" + path +
                          "': line 1: unrecognized header '" + line + "'");
  if (snap.meta.J < 0)
    throw ValidationError("snapshot '" + path + "': header J is negative");

  const std::size_t n = static_cast<std::size_t>(snap.meta.J) + 1;
  snap.field = Field(n);
  std::size_t rows = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() && in.eof()) break;
    if (rows >= n)
      throw ValidationError("snapshot '" + path + "': line " +
                            std::to_string(line_no) +
                            ": more rows than header J=" +
                            std::to_string(snap.meta.J) + " admits");
    std::stringstream ss(line);
    std::string token;
    std::size_t cols = 0;
    while (std::getline(ss, token, ',')) {
      if (cols >= n)
        throw ValidationError("snapshot '" + path + "': line " +
                              std::to_string(line_no) +
                              ": more columns than header admits");
      snap.field(rows, cols) = parse_double(token, path, line_no);
      ++cols;
    }
    if (cols != n)
      throw ValidationError(
          "snapshot '" + path + "': line " + std::to_string(line_no) +
          ": expected " + std::to_string(n) + " values, got " +
          std::to_string(cols));
    ++rows;
  }
  if (rows != n)
    throw ValidationError("snapshot '" + path + "': expected " +
                          std::to_string(n) + " data rows, got " +
                          std::to_string(rows));
  return snap;
}

void write_norms_csv(const std::string& path,
                     const std::vector<NormsRow>& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << "n,t,normU,normV\n";
  for (const auto& row : rows) {
    out << row.n << ',' << format_double(row.t, 17) << ','
        << format_double(row.norm_u, 17) << ','
        << format_double(row.norm_v, 17) << '\n';
  }
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace bousslyap
