#ifndef JAWKIT_ERROR_HPP
#define JAWKIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace jawkit {

enum class ErrorCode {
  // I/O and configuration
  parse_error,
  unsupported_format,
  io_error,
  invalid_config,
  // numerical / convergence
  degenerate_geometry,
  no_correspondences,
  no_convergence,
  theta_near_pi,
  singular_covariance,
  non_psd_covariance,
  empty_input,
  empty_map,
  missing_edge,
  resolution_too_coarse,
  invalid_rotation,
  // data contract
  duplicate_edge,
  spanning_cycle,
  unknown_frame,
  disconnected_frames,
  vertex_set_mismatch,
};

const char* error_code_name(ErrorCode code);

/// CLI exit-code category: 1 = I/O/config, 2 = numerical/convergence,
/// 3 = data contract.
int error_exit_code(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace jawkit

#endif  // JAWKIT_ERROR_HPP
