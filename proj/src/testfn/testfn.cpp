#include "spectral/testfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jet.hpp"
#include "spectral/quad.hpp"

namespace spectral {

namespace testfn_detail {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
// exp(x) underflows to zero below this.
constexpr double kExpFloor = -745.0;
}  // namespace

struct Node {
  virtual ~Node() = default;
  virtual Jet jet(double x, int order) const = 0;
  virtual double value(double x) const { return jet(x, 0).c[0]; }
  virtual std::pair<double, double> support() const = 0;
  // Points where the function is not analytic (support ends, plateau corners).
  virtual void breaks(std::vector<double>& out) const = 0;
};

using NodePtr = std::shared_ptr<const Node>;

struct Zero final : Node {
  Jet jet(double, int order) const override { return Jet::constant(order, 0.0); }
  double value(double) const override { return 0.0; }
  std::pair<double, double> support() const override { return {0.0, 0.0}; }
  void breaks(std::vector<double>&) const override {}
};

double horner(const std::vector<double>& p, double t) {
  double r = 0.0;
  for (std::size_t i = p.size(); i-- > 0;) r = r * t + p[i];
  return r;
}

std::vector<double> poly_mul(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<double> r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

std::vector<double> poly_add(std::vector<double> a, const std::vector<double>& b) {
  if (b.size() > a.size()) a.resize(b.size(), 0.0);
  for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
  return a;
}

std::vector<double> poly_scale(std::vector<double> a, double s) {
  for (auto& v : a) v *= s;
  return a;
}

struct RationalBump final : Node {
  double a, b, beta;
  std::vector<double> p;  // coefficients of P(t)
  int m;

  RationalBump(double a_, double b_, double beta_, std::vector<double> p_, int m_)
      : a(a_), b(b_), beta(beta_), p(std::move(p_)), m(m_) {}

  double alpha() const { return 2.0 / (b - a); }

  double value(double x) const override {
    if (!(x > a && x < b)) return 0.0;
    const double t = (2.0 * x - a - b) / (b - a);
    const double s = 1.0 - t * t;
    if (!(s > 0.0)) return 0.0;
    const double e = -beta / s - m * std::log(s);
    if (e < kExpFloor) return 0.0;
    return horner(p, t) * std::exp(e);
  }

  Jet jet(double x, int order) const override {
    if (!(x > a && x < b)) return Jet::constant(order, 0.0);
    const double t0 = (2.0 * x - a - b) / (b - a);
    const double s0 = 1.0 - t0 * t0;
    if (!(s0 > 0.0) || -beta / s0 - m * std::log(s0) < kExpFloor)
      return Jet::constant(order, 0.0);
    const Jet t = Jet::variable(order, t0, alpha());
    const Jet s = Jet::constant(order, 1.0) - t * t;
    const Jet e = exp((-beta) * recip(s) - static_cast<double>(m) * log(s));
    Jet poly = Jet::constant(order, p.empty() ? 0.0 : p.back());
    for (std::size_t i = p.size(); i-- > 1;) poly = poly * t + Jet::constant(order, p[i - 1]);
    return poly * e;
  }

  std::pair<double, double> support() const override { return {a, b}; }
  void breaks(std::vector<double>& out) const override {
    out.push_back(a);
    out.push_back(b);
  }

  // d/dx [P s^-m e^{-beta/s}] = alpha (P' s^2 + 2 m t P s - 2 beta t P) s^-(m+2) e^{-beta/s}
  std::shared_ptr<RationalBump> derivative() const {
    std::vector<double> dp;
    for (std::size_t i = 1; i < p.size(); ++i) dp.push_back(i * p[i]);
    const std::vector<double> s{1.0, 0.0, -1.0};
    const std::vector<double> t{0.0, 1.0};
    std::vector<double> q = poly_mul(dp, poly_mul(s, s));
    q = poly_add(q, poly_scale(poly_mul(poly_mul(t, p), s), 2.0 * m));
    q = poly_add(q, poly_scale(poly_mul(t, p), -2.0 * beta));
    q = poly_scale(q, alpha());
    while (!q.empty() && q.back() == 0.0) q.pop_back();
    return std::make_shared<RationalBump>(a, b, beta, q, m + 2);
  }
};

struct Plateau final : Node {
  double a, c, d, b;

  Plateau(double a_, double c_, double d_, double b_) : a(a_), c(c_), d(d_), b(b_) {}

  static double step(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    const double e0 = -1.0 / u;
    const double e1 = -1.0 / (1.0 - u);
    const double p = e0 < kExpFloor ? 0.0 : std::exp(e0);
    const double q = e1 < kExpFloor ? 0.0 : std::exp(e1);
    return p / (p + q);
  }

  static Jet step_jet(double u0, double du, int order) {
    if (u0 <= 0.0) return Jet::constant(order, 0.0);
    if (u0 >= 1.0) return Jet::constant(order, 1.0);
    const Jet u = Jet::variable(order, u0, du);
    const Jet one = Jet::constant(order, 1.0);
    auto e = [&](const Jet& v) {
      if (-1.0 / v.c[0] < kExpFloor) return Jet::constant(order, 0.0);
      return exp((-1.0) * recip(v));
    };
    const Jet p = e(u);
    const Jet q = e(one - u);
    return p * recip(p + q);
  }

  double value(double x) const override {
    return step((x - a) / (c - a)) * step((b - x) / (b - d));
  }

  Jet jet(double x, int order) const override {
    if (!(x > a && x < b)) return Jet::constant(order, 0.0);
    return step_jet((x - a) / (c - a), 1.0 / (c - a), order) *
           step_jet((b - x) / (b - d), -1.0 / (b - d), order);
  }

  std::pair<double, double> support() const override { return {a, b}; }
  void breaks(std::vector<double>& out) const override { out.insert(out.end(), {a, c, d, b}); }
};

struct Polynomial final : Node {
  std::vector<double> coeffs;
  explicit Polynomial(std::vector<double> c) : coeffs(std::move(c)) {}
  double value(double x) const override { return horner(coeffs, x); }
  Jet jet(double x, int order) const override {
    const Jet v = Jet::variable(order, x, 1.0);
    Jet r = Jet::constant(order, coeffs.empty() ? 0.0 : coeffs.back());
    for (std::size_t i = coeffs.size(); i-- > 1;) r = r * v + Jet::constant(order, coeffs[i - 1]);
    return r;
  }
  std::pair<double, double> support() const override { return {-kInf, kInf}; }
  void breaks(std::vector<double>&) const override {}
};

struct Sum final : Node {
  std::vector<NodePtr> parts;
  explicit Sum(std::vector<NodePtr> p) : parts(std::move(p)) {}
  double value(double x) const override {
    double s = 0.0;
    for (const auto& n : parts) s += n->value(x);
    return s;
  }
  Jet jet(double x, int order) const override {
    Jet s = Jet::constant(order, 0.0);
    for (const auto& n : parts) s = s + n->jet(x, order);
    return s;
  }
  std::pair<double, double> support() const override {
    double lo = kInf;
    double hi = -kInf;
    for (const auto& n : parts) {
      const auto [a, b] = n->support();
      if (a >= b) continue;
      lo = std::min(lo, a);
      hi = std::max(hi, b);
    }
    if (lo > hi) return {0.0, 0.0};
    return {lo, hi};
  }
  void breaks(std::vector<double>& out) const override {
    for (const auto& n : parts) n->breaks(out);
  }
};

struct Product final : Node {
  NodePtr left, right;
  Product(NodePtr l, NodePtr r) : left(std::move(l)), right(std::move(r)) {}
  double value(double x) const override {
    const auto [a, b] = support();
    if (!(x >= a && x <= b)) return 0.0;
    const double l = left->value(x);
    return l == 0.0 ? 0.0 : l * right->value(x);
  }
  Jet jet(double x, int order) const override {
    const auto [a, b] = support();
    if (!(x >= a && x <= b)) return Jet::constant(order, 0.0);
    const Jet l = left->jet(x, order);
    if (l.is_zero()) return l;
    return l * right->jet(x, order);
  }
  std::pair<double, double> support() const override {
    const auto [a1, b1] = left->support();
    const auto [a2, b2] = right->support();
    const double lo = std::max(a1, a2);
    const double hi = std::min(b1, b2);
    if (!(lo < hi)) return {0.0, 0.0};
    return {lo, hi};
  }
  void breaks(std::vector<double>& out) const override {
    left->breaks(out);
    right->breaks(out);
  }
};

struct Scaled final : Node {
  double s;
  NodePtr inner;
  Scaled(double s_, NodePtr n) : s(s_), inner(std::move(n)) {}
  double value(double x) const override { return s * inner->value(x); }
  Jet jet(double x, int order) const override { return s * inner->jet(x, order); }
  std::pair<double, double> support() const override { return inner->support(); }
  void breaks(std::vector<double>& out) const override { inner->breaks(out); }
};

struct Derived final : Node {
  NodePtr inner;
  int k;
  Derived(NodePtr n, int k_) : inner(std::move(n)), k(k_) {}
  Jet jet(double x, int order) const override {
    if (order + k > kJetMax)
      throw Error(ErrorCode::unsupported_order, "derivative order exceeds jet capacity");
    const Jet full = inner->jet(x, order + k);
    Jet r;
    r.order = order;
    for (int j = 0; j <= order; ++j) {
      double f = 1.0;
      for (int i = j + 1; i <= j + k; ++i) f *= i;
      r.c[j] = full.c[j + k] * f;
    }
    return r;
  }
  std::pair<double, double> support() const override { return inner->support(); }
  void breaks(std::vector<double>& out) const override { inner->breaks(out); }
};

// Low orders of a bare bump use the closed form: plain function evaluation
// instead of Taylor arithmetic, with no measurable loss of accuracy.
constexpr int kClosedFormMaxOrder = 2;

NodePtr differentiate(const NodePtr& n, int k) {
  if (k == 0) return n;
  if (auto rb = std::dynamic_pointer_cast<const RationalBump>(n); rb && k <= kClosedFormMaxOrder) {
    std::shared_ptr<const RationalBump> cur = rb;
    for (int i = 0; i < k; ++i) cur = cur->derivative();
    return cur;
  }
  if (auto sum = std::dynamic_pointer_cast<const Sum>(n)) {
    std::vector<NodePtr> parts;
    for (const auto& p : sum->parts) parts.push_back(differentiate(p, k));
    return std::make_shared<Sum>(std::move(parts));
  }
  if (auto sc = std::dynamic_pointer_cast<const Scaled>(n)) {
    return std::make_shared<Scaled>(sc->s, differentiate(sc->inner, k));
  }
  if (std::dynamic_pointer_cast<const Zero>(n)) return n;
  if (auto d = std::dynamic_pointer_cast<const Derived>(n)) {
    return std::make_shared<Derived>(d->inner, d->k + k);
  }
  return std::make_shared<Derived>(n, k);
}

}  // namespace testfn_detail

using namespace testfn_detail;

TestFn1D::TestFn1D() : node_(std::make_shared<Zero>()) {}
TestFn1D::TestFn1D(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

TestFn1D TestFn1D::bump(double a, double b) { return rational_bump(a, b, {1.0}, 0, 1.0); }

TestFn1D TestFn1D::rational_bump(double a, double b, std::vector<double> p, int m, double beta) {
  if (!(a < b) || !std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::invalid_interval, "bump needs a < b");
  if (!(beta > 0.0) || m < 0) throw Error(ErrorCode::invalid_params, "bump needs beta > 0, m >= 0");
  return TestFn1D(std::make_shared<RationalBump>(a, b, beta, std::move(p), m));
}

TestFn1D TestFn1D::plateau(double a, double c, double d, double b) {
  if (!(a < c && c <= d && d < b)) throw Error(ErrorCode::invalid_interval, "need a < c <= d < b");
  return TestFn1D(std::make_shared<Plateau>(a, c, d, b));
}

TestFn1D TestFn1D::polynomial(std::vector<double> coeffs) {
  return TestFn1D(std::make_shared<Polynomial>(std::move(coeffs)));
}

double TestFn1D::operator()(double x) const { return node_->value(x); }

std::vector<double> TestFn1D::taylor(double x, int order) const {
  if (order < 0 || order > kJetMax)
    throw Error(ErrorCode::unsupported_order, "taylor order out of range");
  const Jet j = node_->jet(x, order);
  return std::vector<double>(j.c.begin(), j.c.begin() + order + 1);
}

double TestFn1D::derivative_at(double x, int k) const {
  if (k < 0) throw Error(ErrorCode::invalid_order, "negative derivative order");
  const Jet j = node_->jet(x, k);
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return j.c[k] * f;
}

std::pair<double, double> TestFn1D::support() const { return node_->support(); }

std::vector<double> TestFn1D::breakpoints() const {
  const auto [a, b] = support();
  std::vector<double> raw;
  node_->breaks(raw);
  std::vector<double> out;
  for (double x : raw)
    if (x >= a && x <= b) out.push_back(x);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double integrate_line(const TestFn1D& f, int n) {
  if (f.is_zero()) return 0.0;
  const auto br = f.breakpoints();
  if (br.size() < 2) throw Error(ErrorCode::invalid_interval, "integrate_line needs a compact support");
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < br.size(); ++i)
    total += quad::integrate([&](double x) { return f(x); }, quad::gauss_grid(br[i], br[i + 1], n));
  return total;
}

bool TestFn1D::is_zero() const {
  if (std::dynamic_pointer_cast<const Zero>(node_)) return true;
  const auto [a, b] = support();
  return !(a < b);
}

TestFn1D TestFn1D::derivative(int k) const {
  if (k < 0) throw Error(ErrorCode::invalid_order, "negative derivative order");
  if (k > kMaxDerivativeOrder) throw Error(ErrorCode::unsupported_order, "derivative order too high");
  return TestFn1D(differentiate(node_, k));
}

TestFn1D TestFn1D::closed_form_derivative(int k) const {
  auto rb = std::dynamic_pointer_cast<const RationalBump>(node_);
  if (!rb) throw Error(ErrorCode::invalid_params, "closed form needs a single rational bump");
  if (k < 0) throw Error(ErrorCode::invalid_order, "negative derivative order");
  std::shared_ptr<const RationalBump> cur = rb;
  for (int i = 0; i < k; ++i) cur = cur->derivative();
  return TestFn1D(cur);
}

TestFn1D TestFn1D::times_x() const { return *this * polynomial({0.0, 1.0}); }

TestFn1D TestFn1D::operator+(const TestFn1D& o) const {
  return TestFn1D(std::make_shared<Sum>(std::vector<NodePtr>{node_, o.node_}));
}

TestFn1D TestFn1D::operator-(const TestFn1D& o) const { return *this + (-1.0) * o; }

TestFn1D TestFn1D::operator*(const TestFn1D& o) const {
  if (is_zero() || o.is_zero()) return TestFn1D();
  return TestFn1D(std::make_shared<Product>(node_, o.node_));
}

TestFn1D operator*(double s, const TestFn1D& f) {
  return TestFn1D(std::make_shared<Scaled>(s, f.node_));
}

TestFn1D bump(double a, double b) { return TestFn1D::bump(a, b); }

TestFn1D derivative(const TestFn1D& f, int k) { return f.derivative(k); }

double norm_m(const TestFn1D& f, int m) {
  if (m < 0) throw Error(ErrorCode::invalid_order, "m must be >= 0");
  if (f.is_zero()) return 0.0;
  const auto [a, b] = f.support();
  if (!std::isfinite(a) || !std::isfinite(b))
    throw Error(ErrorCode::invalid_interval, "norm_m needs a compact support");
  constexpr int kSamples = 4096;
  double best = 0.0;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = a + (b - a) * i / kSamples;
    const auto c = f.taylor(x, m);
    double fact = 1.0;
    for (int k = 0; k <= m; ++k) {
      if (k > 1) fact *= k;
      best = std::max(best, std::fabs(c[k] * fact));
    }
  }
  return best;
}

}  // namespace spectral
