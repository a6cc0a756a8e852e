#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>

namespace spectral {

using Complex = std::complex<double>;

enum class ErrorCode {
  invalid_interval,
  invalid_order,
  nonfinite_value,
  pole_outside,
  unsupported_order,
  bad_sequence,
  origin_outside,
  omega_outside,
  singular_shift,
  enclosure_ambiguous,
  order_cap,
  radius_too_small,
  not_unitary,
  invalid_params,
  on_slit,
  regime_unsupported,
  spectral_point,
  no_discrete_spectrum,
  not_double_zero,
  x_outside_g,
  support_violation,
  contour_hits_spectrum,
  missing_data,
  config_invalid,
  io_error,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_interval: return "invalid_interval";
    case ErrorCode::invalid_order: return "invalid_order";
    case ErrorCode::nonfinite_value: return "nonfinite_value";
    case ErrorCode::pole_outside: return "pole_outside";
    case ErrorCode::unsupported_order: return "unsupported_order";
    case ErrorCode::bad_sequence: return "bad_sequence";
    case ErrorCode::origin_outside: return "origin_outside";
    case ErrorCode::omega_outside: return "omega_outside";
    case ErrorCode::singular_shift: return "singular_shift";
    case ErrorCode::enclosure_ambiguous: return "enclosure_ambiguous";
    case ErrorCode::order_cap: return "order_cap";
    case ErrorCode::radius_too_small: return "radius_too_small";
    case ErrorCode::not_unitary: return "not_unitary";
    case ErrorCode::invalid_params: return "invalid_params";
    case ErrorCode::on_slit: return "on_slit";
    case ErrorCode::regime_unsupported: return "regime_unsupported";
    case ErrorCode::spectral_point: return "spectral_point";
    case ErrorCode::no_discrete_spectrum: return "no_discrete_spectrum";
    case ErrorCode::not_double_zero: return "not_double_zero";
    case ErrorCode::x_outside_g: return "x_outside_G";
    case ErrorCode::support_violation: return "support_violation";
    case ErrorCode::contour_hits_spectrum: return "contour_hits_spectrum";
    case ErrorCode::missing_data: return "missing_data";
    case ErrorCode::config_invalid: return "config_invalid";
    case ErrorCode::io_error: return "io_error";
  }
  return "unknown";
}

}  // namespace spectral
