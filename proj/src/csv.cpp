#include "ics/csv.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace ics::io {

namespace {

std::vector<std::string> split_line(const std::string& line, char delim) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, delim)) {
    // trim surrounding whitespace
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? std::string()
                                           : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == delim) cells.emplace_back();
  return cells;
}

bool parse_number(const std::string& s, double& out) {
  if (s.empty()) return false;
  char* end = nullptr;
  out = std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::vector<std::string> default_var_names(Index p) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(p));
  for (Index j = 0; j < p; ++j) {
    names.push_back("var_" + std::to_string(j + 1));
  }
  return names;
}

Dataset read_dataset(const std::string& path, const DatasetOptions& opts) {
  std::ifstream in(path);
  if (!in) throw ShapeError("cannot open dataset file: " + path);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> header_cells;
  std::string line;
  std::size_t line_no = 0;
  bool header_consumed = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) {
      continue;
    }
    std::vector<std::string> cells = split_line(line, opts.delimiter);
    std::vector<double> values(cells.size());
    bool all_numeric = true;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_number(cells[c], values[c])) {
        all_numeric = false;
        break;
      }
    }
    if (rows.empty() && !header_consumed) {
      const bool treat_as_header =
          opts.header == HeaderMode::kYes ||
          (opts.header == HeaderMode::kAuto && !all_numeric);
      if (treat_as_header) {
        header_cells = std::move(cells);
        header_consumed = true;
        continue;
      }
    }
    if (!all_numeric) {
      throw ShapeError(path + ":" + std::to_string(line_no) +
                       ": non-numeric cell in data row");
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw ShapeError(path + ":" + std::to_string(line_no) +
                       ": ragged row (expected " +
                       std::to_string(rows.front().size()) + " cells, got " +
                       std::to_string(values.size()) + ")");
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ShapeError(path + ": no data rows");

  const Index nrows = static_cast<Index>(rows.size());
  const Index ncols = static_cast<Index>(rows.front().size());
  Matrix m(nrows, ncols);
  for (Index i = 0; i < nrows; ++i) {
    for (Index j = 0; j < ncols; ++j) {
      m(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }

  Dataset ds;
  if (opts.orientation == Orientation::kObsRows) {
    ds.x = m.transpose();
  } else {
    ds.x = std::move(m);
  }
  if (ds.x.cols() < 2) {
    throw ShapeError(path + ": need at least 2 observations");
  }
  require_finite(ds.x, path.c_str());

  if (!header_cells.empty()) {
    if (opts.orientation == Orientation::kObsRows) {
      ds.var_names = std::move(header_cells);
    }
    // vars-as-rows files carry observation labels in the header; variable
    // names are synthesized below.
  }
  if (ds.var_names.size() != static_cast<std::size_t>(ds.x.rows())) {
    ds.var_names = default_var_names(ds.x.rows());
  }
  return ds;
}

void write_dataset(const std::string& path, const Eigen::Ref<const Matrix>& x,
                   const DatasetOptions& opts,
                   const std::vector<std::string>& var_names) {
  std::ofstream out(path);
  if (!out) throw ShapeError("cannot write dataset file: " + path);
  const char d = opts.delimiter;
  std::vector<std::string> names =
      var_names.empty() ? default_var_names(x.rows()) : var_names;

  if (opts.orientation == Orientation::kObsRows) {
    for (std::size_t j = 0; j < names.size(); ++j) {
      if (j) out << d;
      out << names[j];
    }
    out << '\n';
    for (Index i = 0; i < x.cols(); ++i) {
      for (Index j = 0; j < x.rows(); ++j) {
        if (j) out << d;
        out << format_double(x(j, i));
      }
      out << '\n';
    }
  } else {
    for (Index j = 0; j < x.rows(); ++j) {
      out << names[static_cast<std::size_t>(j)];
      for (Index i = 0; i < x.cols(); ++i) {
        out << d << format_double(x(j, i));
      }
      out << '\n';
    }
  }
}

void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Matrix>& m,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw ShapeError("cannot write file: " + path);
  if (!header.empty()) {
    for (std::size_t j = 0; j < header.size(); ++j) {
      if (j) out << ',';
      out << header[j];
    }
    out << '\n';
  }
  for (Index i = 0; i < m.rows(); ++i) {
    for (Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

}  // namespace ics::io
