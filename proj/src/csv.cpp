#include "magfb/csv.hpp"

#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "magfb/errors.hpp"

namespace magfb {

namespace {

void write_1d_rows(std::ostream& os, const std::string& axis, const PointResult& p) {
  const bool ok = p.status == PointStatus::ok;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    os << axis << ',' << pair_label(kPairs[k]) << ',';
    if (ok) {
      const CorrelationReport& r = (*p.reports)[k];
      os << format_number(r.e_n) << ',' << format_number(r.s_ab) << ','
         << format_number(r.s_ba) << ',' << format_number(r.s_asym) << ','
         << to_string(r.classification);
    } else {
      os << ",,,,";
    }
    os << ',' << (p.stability.stable ? "true" : "false") << '\n';
  }
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  writer(out);
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

void write_point_csv(std::ostream& os, const PointResult& point) {
  os << kHeader1D << '\n';
  write_1d_rows(os, "", point);
}

void write_sweep_csv(std::ostream& os, const SweepResult& result) {
  if (result.axes.size() == 1) {
    os << kHeader1D << '\n';
    const AxisSpec& ax = result.axes[0];
    for (int i = 0; i < ax.points; ++i) {
      write_1d_rows(os, format_number(ax.display_value(i)), result.records[result.index(i)]);
    }
    return;
  }

  os << kHeader2D << '\n';
  const AxisSpec& ax = result.axes[0];
  const AxisSpec& ay = result.axes[1];
  for (int i = 0; i < ax.points; ++i) {
    const std::string x = format_number(ax.display_value(i));
    for (int j = 0; j < ay.points; ++j) {
      const std::string y = format_number(ay.display_value(j));
      const PointResult& p = result.records[result.index(i, j)];
      const bool ok = p.status == PointStatus::ok;
      const char* stable = p.stability.stable ? "true" : "false";
      for (std::size_t k = 0; k < kPairs.size(); ++k) {
        const std::string prefix = x + ',' + y + ',' + pair_label(kPairs[k]) + ',';
        if (ok) {
          const CorrelationReport& r = (*p.reports)[k];
          os << prefix << "E_N," << format_number(r.e_n) << '\n'
             << prefix << "S_AtoB," << format_number(r.s_ab) << '\n'
             << prefix << "S_BtoA," << format_number(r.s_ba) << '\n'
             << prefix << "S_asym," << format_number(r.s_asym) << '\n'
             << prefix << "stable," << stable << '\n';
        } else {
          os << prefix << "E_N,\n"
             << prefix << "S_AtoB,\n"
             << prefix << "S_BtoA,\n"
             << prefix << "S_asym,\n"
             << prefix << "stable," << stable << '\n';
        }
      }
    }
  }
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& os) { write_sweep_csv(os, result); });
}

void emit_csv(const PointResult& point, const std::filesystem::path& path) {
  write_file(path, [&](std::ostream& os) { write_point_csv(os, point); });
}

std::vector<std::vector<std::string>> read_csv(std::istream& is) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = line.find(',', start);
      fields.push_back(line.substr(start, comma - start));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    rows.push_back(std::move(fields));
  }
  return rows;
}

}  // namespace magfb
