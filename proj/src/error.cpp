#include "jawkit/error.hpp"

namespace jawkit {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error: return "parse_error";
    case ErrorCode::unsupported_format: return "unsupported_format";
    case ErrorCode::io_error: return "io_error";
    case ErrorCode::invalid_config: return "invalid_config";
    case ErrorCode::degenerate_geometry: return "degenerate_geometry";
    case ErrorCode::no_correspondences: return "no_correspondences";
    case ErrorCode::no_convergence: return "no_convergence";
    case ErrorCode::theta_near_pi: return "theta_near_pi";
    case ErrorCode::singular_covariance: return "singular_covariance";
    case ErrorCode::non_psd_covariance: return "non_psd_covariance";
    case ErrorCode::empty_input: return "empty_input";
    case ErrorCode::empty_map: return "empty_map";
    case ErrorCode::missing_edge: return "missing_edge";
    case ErrorCode::resolution_too_coarse: return "resolution_too_coarse";
    case ErrorCode::invalid_rotation: return "invalid_rotation";
    case ErrorCode::duplicate_edge: return "duplicate_edge";
    case ErrorCode::spanning_cycle: return "spanning_cycle";
    case ErrorCode::unknown_frame: return "unknown_frame";
    case ErrorCode::disconnected_frames: return "disconnected_frames";
    case ErrorCode::vertex_set_mismatch: return "vertex_set_mismatch";
  }
  return "unknown_error";
}

int error_exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::parse_error:
    case ErrorCode::unsupported_format:
    case ErrorCode::io_error:
    case ErrorCode::invalid_config:
      return 1;
    case ErrorCode::degenerate_geometry:
    case ErrorCode::no_correspondences:
    case ErrorCode::no_convergence:
    case ErrorCode::theta_near_pi:
    case ErrorCode::singular_covariance:
    case ErrorCode::non_psd_covariance:
    case ErrorCode::empty_input:
    case ErrorCode::empty_map:
    case ErrorCode::missing_edge:
    case ErrorCode::resolution_too_coarse:
    case ErrorCode::invalid_rotation:
      return 2;
    case ErrorCode::duplicate_edge:
    case ErrorCode::spanning_cycle:
    case ErrorCode::unknown_frame:
    case ErrorCode::disconnected_frames:
    case ErrorCode::vertex_set_mismatch:
      return 3;
  }
  return 1;
}

}  // namespace jawkit
