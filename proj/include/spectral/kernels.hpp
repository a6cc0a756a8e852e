#pragma once

// Data-parallel inner loops shared by the quadrature, the matrix contour code
// and the rank-one model. Each kernel has a scalar reference implementation and
// an AVX2 implementation; the active one is chosen once at runtime.
//
// Both variants evaluate the same arithmetic graph: terms are computed with the
// same sequence of IEEE operations (no FMA) and reduced with the same blocked
// pairwise scheme (4 lanes x 16 terms per leaf, leaves combined pairwise). The
// results are therefore bit-identical across variants, run after run.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace spectral::kernels {

enum class Isa { scalar, avx2 };

/// Instruction set used by the dispatching entry points below. Resolved on
/// first use from the CPU and the SPECTRAL_DIST_SIMD environment variable
/// ("scalar", "avx2" or "auto").
Isa active_isa();
void force_isa(Isa isa);
bool avx2_available();
std::string_view isa_name(Isa isa);

/// Sum_j w_j * v_j.
double weighted_sum(std::span<const double> w, std::span<const double> v);

/// Sum_j (a_re_j + i a_im_j) / (z - x_j)^power for power 1 or 2.
std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power = 1);

/// Sum_j w_j * q_j with q_j = (v_j - v_pole)/(x_j - pole), replaced by `slope`
/// when |x_j - pole| < delta. This is the singularity-subtracted principal
/// value sum.
double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta);

namespace scalar {
double weighted_sum(std::span<const double> w, std::span<const double> v);
std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power);
double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta);
}  // namespace scalar

namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> v);
std::complex<double> cauchy_sum(std::span<const double> nodes, std::span<const double> a_re,
                                std::span<const double> a_im, std::complex<double> z,
                                int power);
double pv_sum(std::span<const double> nodes, std::span<const double> w,
              std::span<const double> v, double pole, double v_pole, double slope,
              double delta);
}  // namespace avx2

/// Number of terms reduced sequentially per lane in one leaf.
inline constexpr std::size_t kLanes = 4;
inline constexpr std::size_t kLeaf = 64;

}  // namespace spectral::kernels
