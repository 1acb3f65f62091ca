#pragma once

#include <filesystem>
#include <iosfwd>
#include <string_view>

#include "nppe/types.hpp"

namespace nppe {

/// Csv: one sample per line, comma separated, optional non-numeric header line;
/// written with 17 significant digits.
///
/// Binary ("PEMB"): 4 magic bytes "PEMB", u32 rows, u32 cols, then rows * cols
/// little-endian IEEE-754 doubles in column-major order. rows/cols are the
/// in-memory DataMatrix shape (dimension x samples), so each sample is contiguous.
enum class MatrixFormat { Csv, Binary };

/// ".csv" selects Csv; ".pemb" and ".bin" select Binary.
MatrixFormat format_from_path(const std::filesystem::path& path);

DataMatrix read_csv(std::istream& in);
void write_csv(std::ostream& out, const DataMatrix& m);

DataMatrix read_binary(std::istream& in);
void write_binary(std::ostream& out, const DataMatrix& m);

DataMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format);
DataMatrix load_matrix(const std::filesystem::path& path);
void save_matrix(const std::filesystem::path& path, MatrixFormat format, const DataMatrix& m);
void save_matrix(const std::filesystem::path& path, const DataMatrix& m);

/// "%.17g".
std::string format_double(double value);

}  // namespace nppe
