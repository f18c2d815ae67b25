#include "jawkit/transform_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "jawkit/error.hpp"
#include "jawkit/io_util.hpp"
#include "jawkit/log.hpp"

namespace jawkit {

namespace {

constexpr double kReaderDriftWarn = 1e-4;

RigidTransform decode_matrix16(const double* m) {
  for (int col = 0; col < 3; ++col) {
    if (m[12 + col] != 0.0) {
      throw Error(ErrorCode::parse_error, "bottom row of matrix is not (0 0 0 1)");
    }
  }
  if (m[15] != 1.0) {
    throw Error(ErrorCode::parse_error, "bottom row of matrix is not (0 0 0 1)");
  }
  Mat3 r;
  // clang-format off
  r << m[0], m[1], m[2],
       m[4], m[5], m[6],
       m[8], m[9], m[10];
  // clang-format on
  const Vec3 t(m[3], m[7], m[11]);
  const double drift = rotation_drift(r);
  if (r.determinant() < 0.0) {
    throw Error(ErrorCode::invalid_rotation,
                "matrix rotation block has negative determinant");
  }
  if (drift > kReaderDriftWarn) {
    log_warn("rotation block drift ", drift,
             " exceeds 1e-4; projecting to the nearest rotation");
  }
  return RigidTransform(r, t);  // projects when drift > 1e-9
}

}  // namespace

std::array<double, 16> transform_to_row(const RigidTransform& t) {
  std::array<double, 16> row{};
  const Mat4 m = t.matrix();
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) row[static_cast<size_t>(4 * i + j)] = m(i, j);
  return row;
}

RigidTransform transform_from_row(std::span<const double, 16> row) {
  return decode_matrix16(row.data());
}

nlohmann::json transform_to_json(const RigidTransform& t) {
  const auto row = transform_to_row(t);
  return nlohmann::json{{"matrix", row}};
}

RigidTransform transform_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("matrix") || !j["matrix"].is_array() ||
      j["matrix"].size() != 16) {
    throw Error(ErrorCode::parse_error,
                "transform JSON requires a \"matrix\" array of 16 numbers");
  }
  std::array<double, 16> row{};
  for (size_t i = 0; i < 16; ++i) {
    if (!j["matrix"][i].is_number()) {
      throw Error(ErrorCode::parse_error, "matrix entries must be numbers");
    }
    row[i] = j["matrix"][i].get<double>();
  }
  return transform_from_row(row);
}

void save_transform_json(const std::filesystem::path& path, const RigidTransform& t) {
  write_text_file(path, transform_to_json(t).dump(2) + "\n");
}

RigidTransform load_transform_json(const std::filesystem::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(read_text_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, path.string() + ": " + e.what());
  }
  return transform_from_json(j);
}

std::string transform_to_csv_line(const RigidTransform& t) {
  const auto row = transform_to_row(t);
  std::string line;
  for (size_t i = 0; i < row.size(); ++i) {
    if (i) line += ',';
    line += format_double(row[i]);
  }
  return line;
}

RigidTransform transform_from_csv_fields(std::span<const std::string> fields,
                                         const std::string& context) {
  if (fields.size() != 16) {
    throw Error(ErrorCode::parse_error,
                context + ": expected 16 matrix fields, got " +
                    std::to_string(fields.size()));
  }
  std::array<double, 16> row{};
  for (size_t i = 0; i < 16; ++i) row[i] = parse_double_field(fields[i], context);
  return transform_from_row(row);
}

}  // namespace jawkit
