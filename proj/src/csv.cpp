#include "kfuse/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace kfuse {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(',', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      break;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return out;
}

double parse_cell(const std::string& cell, std::size_t row, const std::string& col) {
  const auto loc = " at row " + std::to_string(row) + ", column " + col;
  if (cell.empty()) throw std::runtime_error("missing value" + loc);
  double v = 0.0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw std::runtime_error("non-numeric cell '" + cell + "'" + loc);
  }
  return v;
}

bool is_integral_value(double v) {
  return std::isfinite(v) && v == std::trunc(v);
}

}  // namespace

Dataset read_csv(const std::string& path, const std::string& response_col,
                 ResponseKind kind) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split_line(line);
  const std::size_t ncol = header.size();
  if (ncol < 2) throw std::runtime_error("need a response and at least one covariate");

  std::size_t resp_idx = ncol;
  for (std::size_t c = 0; c < ncol; ++c) {
    if (header[c] == response_col) {
      resp_idx = c;
      break;
    }
  }
  if (resp_idx == ncol) {
    // fall back to a 1-based column index
    std::size_t v = 0;
    const auto res = std::from_chars(
        response_col.data(), response_col.data() + response_col.size(), v);
    if (res.ec == std::errc() && res.ptr == response_col.data() + response_col.size() &&
        v >= 1 && v <= ncol) {
      resp_idx = v - 1;
    } else {
      throw std::runtime_error("unknown response column: " + response_col);
    }
  }

  std::vector<std::vector<double>> rows;
  std::size_t row_no = 0;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() && in.peek() == std::char_traits<char>::eof()) break;
    ++row_no;
    const auto cells = split_line(line);
    if (cells.size() != ncol) {
      throw std::runtime_error("ragged row " + std::to_string(row_no) + ": expected " +
                               std::to_string(ncol) + " cells, got " +
                               std::to_string(cells.size()));
    }
    std::vector<double> vals(ncol);
    for (std::size_t c = 0; c < ncol; ++c) {
      vals[c] = parse_cell(cells[c], row_no, header[c]);
    }
    rows.push_back(std::move(vals));
  }
  const std::size_t n = rows.size();
  if (n < 2) throw std::runtime_error("need at least 2 data rows");

  Dataset ds;
  ds.resp.kind = kind;
  ds.resp.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = rows[i][resp_idx];
    if (kind == ResponseKind::count && (!is_integral_value(v) || v < 0.0)) {
      throw std::runtime_error("count response must be non-negative integers (row " +
                               std::to_string(i + 1) + ")");
    }
    if (kind == ResponseKind::categorical && (!is_integral_value(v) || v < 1.0)) {
      throw std::runtime_error("categorical levels must be 1..G (row " +
                               std::to_string(i + 1) + ")");
    }
    ds.resp.values[i] = v;
  }
  if (kind == ResponseKind::categorical) {
    ds.resp.levels = static_cast<int>(
        *std::max_element(ds.resp.values.begin(), ds.resp.values.end()));
  }
  ds.resp.validate();

  ds.x = Matrix(n, ncol - 1);
  std::size_t out_col = 0;
  for (std::size_t c = 0; c < ncol; ++c) {
    if (c == resp_idx) continue;
    auto col = ds.x.col(out_col++);
    for (std::size_t i = 0; i < n; ++i) col[i] = rows[i][c];
  }
  ds.label = path;
  return ds;
}

void write_dataset_csv(const Dataset& ds, const std::string& path,
                       const std::string& model_id, std::uint64_t seed) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "y";
  for (std::size_t j = 1; j <= ds.x.cols; ++j) out << ",x" << j;
  out << "\n";
  for (std::size_t i = 0; i < ds.x.rows; ++i) {
    out << format_double(ds.resp.values[i]);
    for (std::size_t j = 0; j < ds.x.cols; ++j) {
      out << ',' << format_double(ds.x(i, j));
    }
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);

  nlohmann::json meta;
  meta["model"] = model_id;
  meta["seed"] = seed;
  meta["n"] = ds.x.rows;
  meta["p"] = ds.x.cols;
  meta["response_kind"] = to_string(ds.resp.kind);
  if (ds.resp.kind == ResponseKind::categorical) meta["levels"] = ds.resp.levels;
  meta["truth"] = ds.truth;
  meta["label"] = ds.label;
  std::ofstream mout(path + ".meta.json");
  if (!mout) throw std::runtime_error("cannot write " + path + ".meta.json");
  mout << meta.dump(2) << "\n";
}

void write_screen_csv(const std::vector<ScreeningResult>& results,
                      const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "variable,method,statistic,rank,selected\n";
  for (const auto& res : results) {
    for (std::size_t pos = 0; pos < res.scores.size(); ++pos) {
      const auto& s = res.scores[pos];
      const bool sel = pos < res.selected.size();
      out << s.index << ',' << res.method_label << ',' << format_double(s.score)
          << ',' << (pos + 1) << ',' << (sel ? 1 : 0) << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace kfuse
