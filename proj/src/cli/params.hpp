#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spectral/cli.hpp"
#include "spectral/cmatrix.hpp"
#include "spectral/krein.hpp"

namespace spectral::cli::detail {

/// Reads one JSON object, remembering which keys were consumed so that
/// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string pointer, std::string source);

  bool has(const std::string& key) const;
  const Json& raw(const std::string& key);
  double number(const std::string& key, std::optional<double> fallback = std::nullopt);
  int integer(const std::string& key, std::optional<int> fallback, int min_value);
  std::string string(const std::string& key, std::optional<std::string> fallback = std::nullopt);
  std::vector<double> numbers(const std::string& key, std::optional<std::vector<double>> fallback = std::nullopt);
  void done() const;

  std::string pointer(const std::string& key) const { return pointer_ + "/" + key; }
  [[noreturn]] void fail(const std::string& key, const std::string& message) const;
  const std::string& source() const { return source_; }

 private:
  const Json& j_;
  std::string pointer_;
  std::string source_;
  std::vector<std::string> seen_;
};

[[noreturn]] void fail_at(const std::string& source, const std::string& pointer, const std::string& message);

struct KreinParams {
  double c = 2.0;
  double kappa = 0.0;
  Json kappa_input;  // the number or the kappa_star/kappa_one token as given
  krein::BumpSpec bump;
  int n = 256;
  std::vector<int> n_sequence{32, 64, 128, 256};
  double phi_a = 1.2, phi_b = 1.8;  // smearing bump, inside (1, c)
  double r_big = 0.0;               // 0: 3 c
  std::uint64_t seed = 1;
};

struct MatrixParams {
  CMatrix a;
  Json a_input;
  int contour_points = 256;
  std::uint64_t seed = 1;
  std::optional<CMatrix> extension;
  Json extension_input;
};

struct UnitaryParams {
  CMatrix u;
  Json u_input;
  std::string u_key;
  std::vector<std::pair<int, Complex>> fourier{{0, 1.0}, {1, 0.5}, {-2, Complex(0.0, 0.25)}};
  int L = 0;  // 0: the degree of the Fourier polynomial
};

struct DistcoreParams {
  std::vector<double> plemelj_u;
  std::vector<double> product_u;
};

/// Parse and validate; `normalized` receives the parameters with defaults.
KreinParams parse_krein(const Json& j, const std::string& source, Json& normalized);
MatrixParams parse_matrix(const Json& j, const std::string& source, Json& normalized);
UnitaryParams parse_unitary(const Json& j, const std::string& source, Json& normalized);
DistcoreParams parse_distcore(const Json& j, const std::string& source, Json& normalized);

std::vector<double> dyadic(int j0, int j1);

}  // namespace spectral::cli::detail
