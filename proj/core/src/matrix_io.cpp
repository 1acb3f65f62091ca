#include "nppe/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "nppe/error.hpp"

namespace nppe {

namespace {

constexpr std::array<char, 4> kMagic = {'P', 'E', 'M', 'B'};

static_assert(std::endian::native == std::endian::little,
              "PEMB I/O assumes a little-endian host");

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  if (field.front() == '+') field.remove_prefix(1);
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, out);
  return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::uint32_t checked_u32(Index v, const char* what) {
  if (v < 0 || v > static_cast<Index>(UINT32_MAX)) {
    throw Error(ErrorCode::ShapeError, std::string(what) + " does not fit in u32");
  }
  return static_cast<std::uint32_t>(v);
}

}  // namespace

std::string format_double(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

MatrixFormat format_from_path(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".csv") return MatrixFormat::Csv;
  if (ext == ".pemb" || ext == ".bin") return MatrixFormat::Binary;
  throw Error(ErrorCode::InvalidArgument,
              "cannot infer matrix format from '" + path.string() + "' (use .csv or .pemb)");
}

DataMatrix read_csv(std::istream& in) {
  std::vector<double> values;
  std::size_t width = 0;
  std::size_t rows = 0;
  std::size_t line_no = 0;
  std::string line;
  bool saw_content = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim(line);
    if (view.empty()) continue;
    const auto fields = split_fields(view);

    std::vector<double> parsed(fields.size());
    std::size_t bad = fields.size();
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (!parse_double(fields[f], parsed[f])) {
        bad = f;
        break;
      }
    }
    if (bad != fields.size()) {
      if (!saw_content) {
        saw_content = true;  // header line
        width = fields.size();
        continue;
      }
      const auto offset = static_cast<std::size_t>(fields[bad].data() - view.data()) + 1;
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ", column " +
                                             std::to_string(offset) + ": '" +
                                             std::string(trim(fields[bad])) +
                                             "' is not a number");
    }
    if (rows == 0 && width == 0) width = fields.size();
    saw_content = true;
    if (fields.size() != width) {
      throw Error(ErrorCode::ShapeError, "line " + std::to_string(line_no) + ": expected " +
                                             std::to_string(width) + " fields, found " +
                                             std::to_string(fields.size()));
    }
    values.insert(values.end(), parsed.begin(), parsed.end());
    ++rows;
  }
  if (rows == 0) throw Error(ErrorCode::EmptyInput, "CSV input holds no samples");

  DataMatrix m(static_cast<Index>(width), static_cast<Index>(rows));
  std::memcpy(m.data(), values.data(), values.size() * sizeof(double));
  return m;
}

void write_csv(std::ostream& out, const DataMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i) out << ',';
      out << format_double(m(i, j));
    }
    out << '\n';
  }
}

DataMatrix read_binary(std::istream& in) {
  std::array<char, 4> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw Error(ErrorCode::ParseError, "offset 0: missing PEMB magic");
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  in.read(reinterpret_cast<char*>(&rows), sizeof rows);
  in.read(reinterpret_cast<char*>(&cols), sizeof cols);
  if (!in) throw Error(ErrorCode::ParseError, "offset 4: truncated PEMB header");
  DataMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
  const auto bytes = static_cast<std::streamsize>(m.size() * sizeof(double));
  in.read(reinterpret_cast<char*>(m.data()), bytes);
  if (in.gcount() != bytes) {
    throw Error(ErrorCode::ParseError, "offset " + std::to_string(12 + in.gcount()) +
                                           ": PEMB payload shorter than " +
                                           std::to_string(rows) + " x " + std::to_string(cols));
  }
  return m;
}

void write_binary(std::ostream& out, const DataMatrix& m) {
  const std::uint32_t rows = checked_u32(m.rows(), "row count");
  const std::uint32_t cols = checked_u32(m.cols(), "column count");
  out.write(kMagic.data(), kMagic.size());
  out.write(reinterpret_cast<const char*>(&rows), sizeof rows);
  out.write(reinterpret_cast<const char*>(&cols), sizeof cols);
  out.write(reinterpret_cast<const char*>(m.data()),
            static_cast<std::streamsize>(m.size() * sizeof(double)));
}

DataMatrix load_matrix(const std::filesystem::path& path, MatrixFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  try {
    return format == MatrixFormat::Csv ? read_csv(in) : read_binary(in);
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

DataMatrix load_matrix(const std::filesystem::path& path) {
  return load_matrix(path, format_from_path(path));
}

void save_matrix(const std::filesystem::path& path, MatrixFormat format, const DataMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  if (format == MatrixFormat::Csv) {
    write_csv(out, m);
  } else {
    write_binary(out, m);
  }
  if (!out) throw Error(ErrorCode::IoError, "failed writing " + path.string());
}

void save_matrix(const std::filesystem::path& path, const DataMatrix& m) {
  save_matrix(path, format_from_path(path), m);
}

}  // namespace nppe
