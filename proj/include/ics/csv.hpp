#ifndef ICS_CSV_HPP
#define ICS_CSV_HPP

#include <string>
#include <vector>

#include "ics/matrix.hpp"

namespace ics::io {

enum class Orientation { kObsRows, kVarsRows };
enum class HeaderMode { kAuto, kYes, kNo };

struct DatasetOptions {
  Orientation orientation = Orientation::kObsRows;
  HeaderMode header = HeaderMode::kAuto;
  char delimiter = ',';
};

struct Dataset {
  Matrix x;  ///< p x n, variables are rows regardless of file orientation
  std::vector<std::string> var_names;
};

/// Parses a delimited numeric file into the internal p x n layout.
/// Ragged rows, non-numeric cells and non-finite values are rejected.
Dataset read_dataset(const std::string& path, const DatasetOptions& opts);

/// Writes p x n data in the requested orientation, one header row of
/// variable names, 17-significant-digit decimals (lossless round-trip).
void write_dataset(const std::string& path, const Eigen::Ref<const Matrix>& x,
                   const DatasetOptions& opts,
                   const std::vector<std::string>& var_names);

/// 17-significant-digit decimal rendering used for every CSV number.
std::string format_double(double v);

/// Plain rectangular CSV with an optional header row.
void write_matrix_csv(const std::string& path,
                      const Eigen::Ref<const Matrix>& m,
                      const std::vector<std::string>& header);

std::vector<std::string> default_var_names(Index p);

}  // namespace ics::io

#endif  // ICS_CSV_HPP
