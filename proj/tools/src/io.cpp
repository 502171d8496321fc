#include "io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "config.hpp"

namespace bubble::cli {

namespace {

struct Column {
  const char* name;
  double DiagnosticsRecord::*field;
};

// Serialized column order. D_nodal stays in memory only.
const std::vector<Column>& columns() {
  static const std::vector<Column> cols = {
      {"t", &DiagnosticsRecord::t},
      {"R", &DiagnosticsRecord::R},
      {"dR_dt", &DiagnosticsRecord::dR_dt},
      {"E0", &DiagnosticsRecord::E0},
      {"D", &DiagnosticsRecord::D},
      {"cumD", &DiagnosticsRecord::cumD},
      {"E1", &DiagnosticsRecord::E1},
      {"E2_varA", &DiagnosticsRecord::E2_varA},
      {"E2_varB", &DiagnosticsRecord::E2_varB},
      {"E3", &DiagnosticsRecord::E3},
      {"Q", &DiagnosticsRecord::Q},
      {"Hint", &DiagnosticsRecord::Hint},
      {"P", &DiagnosticsRecord::P},
      {"rho_min", &DiagnosticsRecord::rho_min},
      {"rho_max", &DiagnosticsRecord::rho_max},
      {"energy_residual", &DiagnosticsRecord::energy_residual},
      {"boundary_density", &DiagnosticsRecord::boundary_density},
  };
  return cols;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) {
    if (!cell.empty() && cell.back() == '\r') cell.pop_back();
    out.push_back(cell);
  }
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& cell, const std::string& path, int line_no) {
  double value = 0.0;
  const auto [end, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
  if (cell.empty() || ec != std::errc() || end != cell.data() + cell.size()) {
    throw InputError(path + ":" + std::to_string(line_no) + ": not a number: '" + cell + "'");
  }
  return value;
}

// Reads a numeric CSV with a header row into named columns.
std::map<std::string, std::vector<double>> read_csv(const std::string& path,
                                                    const std::vector<std::string>& required) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::string line;
  if (!std::getline(in, line)) throw InputError(path + ": empty file");
  const auto header = split_csv(line);
  std::map<std::string, std::vector<double>> data;
  for (const auto& name : header) {
    if (name.empty() || !data.emplace(name, std::vector<double>{}).second) {
      throw InputError(path + ": malformed header");
    }
  }
  for (const auto& name : required) {
    if (!data.count(name)) throw InputError(path + ": missing column '" + name + "'");
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) {
      throw InputError(path + ":" + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields");
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
      data[header[i]].push_back(parse_cell(cells[i], path, line_no));
    }
  }
  return data;
}

}  // namespace

const std::string& timeseries_header() {
  static const std::string header = [] {
    std::string h;
    for (const auto& c : columns()) {
      if (!h.empty()) h += ',';
      h += c.name;
    }
    return h;
  }();
  return header;
}

std::string format_time(double t) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), t);
  return std::string(buf, res.ptr);
}

std::string format_number(double value, int precision) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
  return buf;
}

void write_timeseries(const std::string& path, const std::vector<DiagnosticsRecord>& records,
                      int precision) {
  auto out = open_out(path);
  out << timeseries_header() << '\n';
  for (const auto& rec : records) {
    bool first = true;
    for (const auto& c : columns()) {
      if (!first) out << ',';
      out << format_number(rec.*(c.field), precision);
      first = false;
    }
    out << '\n';
  }
}

std::vector<DiagnosticsRecord> read_timeseries(const std::string& path,
                                               const std::vector<std::string>& required) {
  const auto data = read_csv(path, required);
  const std::size_t rows = data.begin()->second.size();
  std::vector<DiagnosticsRecord> records(rows);
  for (const auto& c : columns()) {
    const auto it = data.find(c.name);
    if (it == data.end()) continue;
    for (std::size_t i = 0; i < rows; ++i) records[i].*(c.field) = it->second[i];
  }
  return records;
}

void write_history(const std::string& path, const std::vector<HistoryPoint>& history, int precision) {
  auto out = open_out(path);
  out << "t,R\n";
  for (const auto& p : history) {
    out << format_number(p.t, precision) << ',' << format_number(p.R, precision) << '\n';
  }
}

std::vector<HistoryPoint> read_history(const std::string& path) {
  const auto data = read_csv(path, {"t", "R"});
  const auto& t = data.at("t");
  const auto& R = data.at("R");
  if (t.empty()) throw InputError(path + ": no history rows");
  std::vector<HistoryPoint> out;
  for (std::size_t i = 0; i < t.size(); ++i) out.push_back({t[i], R[i]});
  return out;
}

void write_snapshot(const std::string& path, const State& state, const Grid& grid, int precision) {
  const Geometry geo = radii(state, grid);
  auto out = open_out(path);
  out << "x,r,u,rho\n";
  auto num = [&](double v) { return format_number(v, precision); };
  for (int j = 0; j <= grid.cells(); ++j) {
    out << num(grid.node(j)) << ',' << num(geo.r[j]) << ',' << num(state.u[j]) << ",nan\n";
    if (j < grid.cells()) out << num(grid.center(j)) << ",nan,nan," << num(state.rho(j)) << '\n';
  }
}

void write_truncation_table(const std::string& path, const std::vector<TruncationRow>& rows,
                            int precision) {
  auto out = open_out(path);
  out << "k_lo,k_hi,u_diff,v_diff,R_diff,return_time,pre_return_diff\n";
  auto num = [&](double v) { return format_number(v, precision); };
  for (const auto& r : rows) {
    out << num(r.k_lo) << ',' << num(r.k_hi) << ',' << num(r.u_diff) << ',' << num(r.v_diff) << ','
        << num(r.R_diff) << ',' << num(r.return_time) << ',' << num(r.pre_return_diff) << '\n';
  }
}

void write_refinement_table(const std::string& path, const std::vector<RefinementRow>& rows,
                            int precision) {
  auto out = open_out(path);
  out << "cells,dx,err_u,err_rho,err_R,order_u,order_rho,order_R\n";
  auto num = [&](double v) { return format_number(v, precision); };
  for (const auto& r : rows) {
    out << r.cells << ',' << num(r.dx) << ',' << num(r.err_u) << ',' << num(r.err_rho) << ','
        << num(r.err_R) << ',' << num(r.order_u) << ',' << num(r.order_rho) << ',' << num(r.order_R)
        << '\n';
  }
}

}  // namespace bubble::cli
