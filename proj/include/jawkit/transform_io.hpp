#ifndef JAWKIT_TRANSFORM_IO_HPP
#define JAWKIT_TRANSFORM_IO_HPP

#include <array>
#include <filesystem>
#include <span>

#include <nlohmann/json_fwd.hpp>

#include "jawkit/se3.hpp"

namespace jawkit {

/// Row-major 4x4 flattening used by both the JSON and CSV encodings.
std::array<double, 16> transform_to_row(const RigidTransform& t);

/// Decodes 16 row-major entries. The rotation block is validated: drift up
/// to 1e-4 is projected silently, beyond 1e-4 it is projected with a
/// warning; a negative determinant raises invalid_rotation and a bottom row
/// other than (0 0 0 1) raises parse_error.
RigidTransform transform_from_row(std::span<const double, 16> row);

nlohmann::json transform_to_json(const RigidTransform& t);
RigidTransform transform_from_json(const nlohmann::json& j);

void save_transform_json(const std::filesystem::path& path, const RigidTransform& t);
RigidTransform load_transform_json(const std::filesystem::path& path);

/// CSV: one transform per line, 16 comma-separated row-major entries.
std::string transform_to_csv_line(const RigidTransform& t);
RigidTransform transform_from_csv_fields(std::span<const std::string> fields,
                                         const std::string& context);

}  // namespace jawkit

#endif  // JAWKIT_TRANSFORM_IO_HPP
