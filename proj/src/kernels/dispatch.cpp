#include <atomic>
#include <cstdlib>
#include <string>

#include "spectral/kernels.hpp"

namespace spectral::kernels {

namespace {

Isa detect() {
  const char* env = std::getenv("SPECTRAL_DIST_SIMD");
  const std::string choice = env ? env : "auto";
  if (choice == "scalar") return Isa::scalar;
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<int>& selected() {
  static std::atomic<int> isa{static_cast<int>(detect())};
  return isa;
}

}  // namespace

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() { return static_cast<Isa>(selected().load(std::memory_order_relaxed)); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  selected().store(static_cast<int>(isa), std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

double weighted_sum(std::span<const double> w, std::span<const double> v) {
  return active_isa() == Isa::avx2 ? avx2::weighted_sum(w, v) : scalar::weighted_sum(w, v);
}

std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power) {
  return active_isa() == Isa::avx2 ? avx2::cauchy_sum(nodes, a_re, a_im, z, power)
                                   : scalar::cauchy_sum(nodes, a_re, a_im, z, power);
}

double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta) {
  return active_isa() == Isa::avx2 ? avx2::pv_sum(nodes, w, v, pole, v_pole, slope, delta)
                                   : scalar::pv_sum(nodes, w, v, pole, v_pole, slope, delta);
}

}  // namespace spectral::kernels
