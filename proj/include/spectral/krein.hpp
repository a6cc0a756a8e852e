#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "spectral/error.hpp"
#include "spectral/testfn.hpp"

namespace spectral::krein {

/// Base profile g0 = P(t) s^-m exp(-beta/s) on (1, c).
struct BumpSpec {
  std::vector<double> p{1.0};
  int m = 0;
  double beta = 1.0;
};

/// H = Omega + |g><h| on G = (-c,-1) u (1,c), g = kappa g0 extended evenly,
/// h = -g on (1,c) and +g on (-c,-1). Discretised on a Gauss grid of (1,c)
/// mirrored onto (-c,-1): node i and node size()-1-i are negatives of each
/// other. All pairings are bilinear with the grid weights.
class KreinModel {
 public:
  static KreinModel build(double c, double kappa, const BumpSpec& g0 = {}, int n = 256);

  double c() const { return c_; }
  double kappa() const { return kappa_; }
  const BumpSpec& profile() const { return spec_; }
  int n() const { return n_; }
  std::size_t size() const { return nodes_.size(); }
  std::size_t mirror(std::size_t i) const { return size() - 1 - i; }

  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<double>& weights() const { return weights_; }
  const std::vector<double>& g() const { return g_; }
  const std::vector<double>& h() const { return h_; }

  /// g0 on (1,c) only, and the full g, h and g h as test functions.
  const TestFn1D& g0_fn() const { return g0_; }
  const TestFn1D& g_fn() const { return gfn_; }
  const TestFn1D& h_fn() const { return hfn_; }
  const TestFn1D& gh_fn() const { return ghfn_; }

  /// Boundary data on the nodes: C1, C2 = g h, N = (C1^2 + pi^2 C2^2)^-1/2,
  /// and the derivatives of C1 and N.
  const std::vector<double>& c1() const { return c1_; }
  const std::vector<double>& dc1() const { return dc1_; }
  const std::vector<double>& c2() const { return c2_; }
  const std::vector<double>& norm() const { return norm_; }
  const std::vector<double>& dnorm() const { return dnorm_; }

 private:
  double c_ = 2.0, kappa_ = 0.0;
  BumpSpec spec_;
  int n_ = 0;
  std::vector<double> nodes_, weights_, g_, h_;
  TestFn1D g0_, gfn_, hfn_, ghfn_;
  std::vector<double> c1_, dc1_, c2_, norm_, dnorm_;
};

/// Values and first derivatives of a function on the model nodes.
struct Sampled {
  std::vector<double> v, dv;
};

Sampled sample(const KreinModel& m, const TestFn1D& f);
Sampled operator*(const Sampled& a, const Sampled& b);

/// T[v](y) = PV integral over G of v(x)/(y - x), at every node y. The pole
/// term uses v'(y); other nodes enter as difference quotients.
std::vector<double> hilbert(const KreinModel& m, const Sampled& f);

/// I0 = integral 2 g0^2 / y and I1 = integral 2 y g0^2/(y^2 - 1) over (1,c).
double integral_i0(double c, const BumpSpec& g0);
double integral_i1(double c, const BumpSpec& g0);
/// C(0) = 0 at kappa* = I0^-1/2; C(1) = 0 at kappa1 = I1^-1/2 < kappa*.
double kappa_star(double c, const BumpSpec& g0 = {});
double kappa_one(double c, const BumpSpec& g0 = {});

enum class Regime { imaginary_pair, real_pair, double_zero, none };
std::string_view to_string(Regime r);

struct Zero {
  Complex location;
  int multiplicity = 1;
};

struct CharFunction {
  Regime regime = Regime::none;
  std::vector<Zero> zeros;
  double c_at_0 = 1.0;
  double c_at_1 = 1.0;
};

/// Distance below which z counts as lying on a slit.
inline constexpr double kSlitTol = 1e-12;

/// C(z) = 1 + integral over (1,c) of 2 y g^2/(z^2 - y^2), Gauss panels graded
/// towards the nearest slit point. Throws on_slit.
Complex char_eval(const KreinModel& m, Complex z);
/// C_N(z) = 1 - sum_j w_j g_j h_j/(z - w_j), the grid version.
Complex char_discrete(const KreinModel& m, Complex z);
Complex char_discrete_derivative(const KreinModel& m, Complex z);

struct BoundaryValues {
  double c1 = 1.0;
  double c2 = 0.0;
};

/// C(x +- i0) = c1 +- i pi c2, by PV quadrature of g h.
BoundaryValues char_boundary(const KreinModel& m, double x);

/// Regimes by the signs of C(0) and C(1). kappa = 0 gives regime none; the
/// case C(0) > 0, C(1) >= 0 with kappa > 0 throws regime_unsupported.
CharFunction find_zeros(const KreinModel& m);
/// As find_zeros, but reports the undiscussed case as regime none.
CharFunction classify(const KreinModel& m);

/// H f on the grid.
std::vector<Complex> apply_h(const KreinModel& m, const std::vector<Complex>& f);
/// Krein's formula with C_N. Throws spectral_point on a slit or a zero of C_N.
std::vector<Complex> resolvent_apply(const KreinModel& m, Complex z, const std::vector<Complex>& f);

/// scale |u><v| with <v|f> = sum_j w_j v_j f_j.
struct RankOne {
  std::vector<Complex> u, v;
  Complex scale = 1.0;
};
using LowRank = std::vector<RankOne>;

std::vector<Complex> apply(const KreinModel& m, const LowRank& op, const std::vector<Complex>& f);
/// f^T op (the operator acting to the left), as a grid vector.
std::vector<Complex> apply_left(const KreinModel& m, const LowRank& op, const std::vector<Complex>& f);
Complex trace(const KreinModel& m, const LowRank& op);
LowRank compose(const KreinModel& m, const LowRank& a, const LowRank& b);
/// Frobenius norm of the operator on L2(G).
double op_norm(const KreinModel& m, const LowRank& op);
Complex pairing(const KreinModel& m, const std::vector<Complex>& a, const std::vector<Complex>& b);

struct JordanData {
  LowRank a;
  LowRank p;
};

struct DiscreteSpectrum {
  Regime regime = Regime::none;
  std::vector<Complex> points;       // continuum zeros
  std::vector<Complex> grid_points;  // the matching zeros of C_N
  std::vector<LowRank> residues;     // one per point
  std::optional<JordanData> jordan;
};

/// r = R(z)|g><h|R(z) / <h|R(z)^2|g> at each grid zero. Throws
/// no_discrete_spectrum unless the regime is a pair.
DiscreteSpectrum residues(const KreinModel& m, const CharFunction& cf);
/// a and p at the origin. Throws not_double_zero.
DiscreteSpectrum double_zero_data(const KreinModel& m, const CharFunction& cf);
/// residues, double_zero_data, or an empty spectrum.
DiscreteSpectrum discrete_spectrum(const KreinModel& m, const CharFunction& cf);
/// The part of the identity carried by the discrete spectrum.
std::vector<Complex> discrete_apply(const KreinModel& m, const DiscreteSpectrum& ds,
                                    const std::vector<Complex>& f);

/// <f1|mu(x)|f2> from the delta + (A C2 A' + A C1 B' + B C1 A' - pi^2 B C2 B')
/// / (C1^2 + pi^2 C2^2) decomposition, and the factorised form
/// <f1|alpha_x><alpha'_x|f2>. Profiles are real.
struct MuPairing {
  double value = 0.0;
  double factorized = 0.0;
  double defect = 0.0;
};
MuPairing mu_apply(const KreinModel& m, double x, const TestFn1D& f1, const TestFn1D& f2);

/// <f|alpha_x> and <alpha'_x|f> at a single x in G by PV quadrature.
double alpha_pairing(const KreinModel& m, double x, const TestFn1D& f);
double alpha_prime_pairing(const KreinModel& m, double x, const TestFn1D& f);

/// x -> <f|alpha_x> and x -> <alpha'_x|f> on the nodes, with derivatives.
Sampled pair_alpha(const KreinModel& m, const TestFn1D& f);
Sampled pair_alpha_prime(const KreinModel& m, const TestFn1D& f);

enum class Side { right, left };

/// Integral of c(x) alpha_x (right) or c(x) alpha'_x (left) over x, as a grid vector.
std::vector<double> smear(const KreinModel& m, const Sampled& c, Side side);
/// smear of a test function supported in G. Throws support_violation.
std::vector<double> eigenfunction_smear(const KreinModel& m, const TestFn1D& phi, Side side);

struct GramResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double defect = 0.0;
};
/// <smear(phi1, left), smear(phi2, right)> against the integral of phi1 phi2;
/// defect relative to max(|rhs|, ||phi1|| ||phi2||).
GramResult orthogonality_gram(const KreinModel& m, const TestFn1D& phi1, const TestFn1D& phi2);

struct CompletenessResult {
  std::vector<Complex> contour;   // (1/2 pi i) contour integral of R(z) f
  std::vector<Complex> spectral;  // discrete part plus integral of alpha_x <alpha'_x|f>
  double contour_defect = 0.0;
  double spectral_defect = 0.0;
  double defect = 0.0;
};
CompletenessResult completeness_apply(const KreinModel& m, const CharFunction& cf,
                                      const TestFn1D& f, double r_big, int n_points = 256);

struct NonnormalityResult {
  double comm_norm = 0.0;           // ||H H* - H* H||_F
  double h_norm = 0.0;              // ||H||_F
  double s_identity_defect = 0.0;   // corrected identities, relative
  double naive_identity_defect = 0.0;
};
NonnormalityResult nonnormality_check(const KreinModel& m);

/// Relative defects of J R(z) J = -R(-z) (J f(w) = f(-w)) and of
/// K R(z) K = R(conj z)* (K = sign of w), tested on the given vectors.
struct SymmetryResult {
  double reflection_defect = 0.0;
  double sign_defect = 0.0;
  double naive_defect = 0.0;  // J R(z) J = R(conj z)*
};
SymmetryResult symmetry_check(const KreinModel& m, Complex z, const std::vector<std::vector<Complex>>& vs);

struct CrosscheckRow {
  int n = 0;
  std::vector<Complex> zeros;
  double gap = 0.0;
};
/// Zeros of C_N near each continuum zero for every n in the sequence.
std::vector<CrosscheckRow> discrete_crosscheck(const KreinModel& m, const CharFunction& cf,
                                               const std::vector<int>& n_sequence);

}  // namespace spectral::krein
