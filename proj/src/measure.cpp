#include "kmrep/measure.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <string>

namespace kmrep {

QuadratureOptions QuadratureOptions::defaults() {
  QuadratureOptions opts;
  if (const char* env = std::getenv("KM_MAX_PANELS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end && *end == '\0' && v >= 1 && v <= 60) opts.max_depth = static_cast<int>(v);
  }
  return opts;
}

namespace {

// 15-point Gauss-Legendre rule on [-1, 1], nodes by Newton iteration on P_15.
struct GLRule {
  std::array<double, 15> x{};
  std::array<double, 15> w{};
};

const GLRule& gl15() {
  static const GLRule rule = [] {
    GLRule r;
    constexpr int n = 15;
    for (int k = 0; k < n; ++k) {
      double xi = std::cos(M_PI * (k + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int iter = 0; iter < 100; ++iter) {
        double p0 = 1.0, p1 = xi;
        for (int j = 2; j <= n; ++j) {
          const double p2 = ((2.0 * j - 1.0) * xi * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (xi * p1 - p0) / (xi * xi - 1.0);
        const double step = p1 / dp;
        xi -= step;
        if (std::fabs(step) < 1e-16) break;
      }
      r.x[k] = xi;
      r.w[k] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
    return r;
  }();
  return rule;
}

// Adaptive bisection shared by scalar and matrix integrands. `F` maps the
// quadrature variable to the full integrand value (pullback included).
template <class V, class Traits, class F>
struct Adaptive {
  const F& f;
  const QuadratureOptions& opts;
  V value;
  double err_estimate = 0.0;
  double scale = 0.0;  // accumulated integral of |f|, for relative reporting

  Adaptive(const F& fn, const QuadratureOptions& o, V zero) : f(fn), opts(o), value(zero) {}

  V panel(double a, double b, double* abs_panel) {
    const GLRule& rule = gl15();
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    V acc = Traits::zero(value);
    double abs_acc = 0.0;
    for (int k = 0; k < 15; ++k) {
      V fx = f(c + h * rule.x[k]);
      Traits::axpy(acc, h * rule.w[k], fx);
      abs_acc += std::fabs(h * rule.w[k]) * Traits::norm(fx);
    }
    if (abs_panel) *abs_panel = abs_acc;
    return acc;
  }

  void refine(double a, double b, const V& whole, int depth, double tol) {
    const double m = 0.5 * (a + b);
    double abs_l = 0.0, abs_r = 0.0;
    V left = panel(a, m, &abs_l);
    V right = panel(m, b, &abs_r);
    V sum = left;
    Traits::axpy(sum, 1.0, right);
    V diff = sum;
    Traits::axpy(diff, -1.0, whole);
    const double delta = Traits::norm(diff);
    if ((delta <= tol && std::isfinite(delta)) || depth >= opts.max_depth) {
      Traits::axpy(value, 1.0, sum);
      err_estimate += std::isfinite(delta) ? delta : 1.0 / 0.0;
      scale += abs_l + abs_r;
      return;
    }
    refine(a, m, left, depth + 1, 0.5 * tol);
    refine(m, b, right, depth + 1, 0.5 * tol);
  }

  void run(double a, double b) {
    V whole = panel(a, b, nullptr);
    refine(a, b, whole, 0, opts.target_abs_err);
  }
};

struct ScalarTraits {
  static double zero(const double&) { return 0.0; }
  static void axpy(double& acc, double s, const double& v) { acc += s * v; }
  static double norm(const double& v) { return std::fabs(v); }
};

struct MatrixTraits {
  static DenseMatrix zero(const DenseMatrix& like) {
    return DenseMatrix(like.rows(), like.cols());
  }
  static void axpy(DenseMatrix& acc, double s, const DenseMatrix& v) { acc += v * s; }
  static double norm(const DenseMatrix& v) { return v.max_abs(); }
};

template <class V, class Traits, class F>
V integrate_adaptive(const F& f, double a, double b, const QuadratureOptions& opts, V zero,
                     const char* what) {
  Adaptive<V, Traits, F> engine(f, opts, zero);
  engine.run(a, b);
  const bool finite = std::isfinite(engine.err_estimate) && std::isfinite(engine.scale) &&
                      std::isfinite(Traits::norm(engine.value));
  if (!finite || engine.err_estimate > opts.fail_threshold * (1.0 + engine.scale)) {
    throw QuadratureError(std::string(what) + ": quadrature did not converge, error estimate " +
                              std::to_string(engine.err_estimate) + " (scale " +
                              std::to_string(engine.scale) + ")",
                          engine.err_estimate);
  }
  return engine.value;
}

}  // namespace

ContinuousPart ContinuousPart::plain(double a, double b, std::function<double(double)> density) {
  ContinuousPart part;
  part.a = a;
  part.b = b;
  part.density = density;
  part.t0 = a;
  part.t1 = b;
  part.pullback = [density](double t) { return std::make_pair(t, density(t)); };
  return part;
}

ContinuousPart ContinuousPart::trig_edge(double a, double b, std::function<double(double)> density,
                                         std::function<double(double)> theta_form) {
  ContinuousPart part;
  part.a = a;
  part.b = b;
  part.density = std::move(density);
  part.t0 = -M_PI / 2.0;
  part.t1 = M_PI / 2.0;
  const double c = 0.5 * (a + b);
  const double h = 0.5 * (b - a);
  part.pullback = [c, h, tf = std::move(theta_form)](double theta) {
    return std::make_pair(c + h * std::sin(theta), tf(theta));
  };
  return part;
}

void SpectralMeasure::validate() const {
  for (const Atom& atom : atoms) {
    if (!(atom.mass > 0.0)) throw std::invalid_argument("SpectralMeasure: atom mass must be > 0");
    if (atom.location < -1.0 - 1e-12 || atom.location > 1.0 + 1e-12)
      throw std::invalid_argument("SpectralMeasure: atom outside [-1, 1]");
    for (const Atom& other : atoms)
      if (&atom != &other && atom.location == other.location)
        throw std::invalid_argument("SpectralMeasure: duplicate atom locations");
  }
  if (continuous && !(continuous->a < continuous->b))
    throw std::invalid_argument("SpectralMeasure: empty support interval");
}

bool SpectralMeasure::has_atom_at(double x, double tol) const {
  return atom_mass_at(x, tol) > 0.0;
}

double SpectralMeasure::atom_mass_at(double x, double tol) const {
  for (const Atom& atom : atoms)
    if (std::fabs(atom.location - x) <= tol) return atom.mass;
  return 0.0;
}

void DiscreteMeasure::validate() const {
  if (nodes.size() != weights.size() || nodes.empty())
    throw std::invalid_argument("DiscreteMeasure: nodes/weights size mismatch");
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!(weights[i] > 0.0)) throw std::invalid_argument("DiscreteMeasure: weights must be > 0");
    for (size_t j = i + 1; j < nodes.size(); ++j)
      if (nodes[i] == nodes[j]) throw std::invalid_argument("DiscreteMeasure: duplicate nodes");
  }
}

bool DiscreteMeasure::has_atom_at(double x, double tol) const {
  return atom_mass_at(x, tol) > 0.0;
}

double DiscreteMeasure::atom_mass_at(double x, double tol) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (std::fabs(nodes[i] - x) <= tol) return weights[i];
  return 0.0;
}

MatrixWeight MatrixWeight::plain(int dim, double a, double b,
                                 std::function<DenseMatrix(double)> w) {
  MatrixWeight weight;
  weight.dim = dim;
  weight.a = a;
  weight.b = b;
  weight.weight = w;
  weight.t0 = a;
  weight.t1 = b;
  weight.pullback = [w](double t) { return std::make_pair(t, w(t)); };
  return weight;
}

double inner_product(const DiscreteMeasure& measure, const ScalarFn& f, const ScalarFn& g) {
  double acc = 0.0;
  for (size_t k = 0; k < measure.nodes.size(); ++k)
    acc += measure.weights[k] * f(measure.nodes[k]) * g(measure.nodes[k]);
  return acc;
}

double inner_product(const SpectralMeasure& measure, const ScalarFn& f, const ScalarFn& g,
                     const QuadratureOptions& opts) {
  double acc = 0.0;
  if (measure.continuous) {
    const ContinuousPart& part = *measure.continuous;
    auto integrand = [&](double t) {
      const auto [x, w] = part.pullback(t);
      return f(x) * g(x) * w;
    };
    acc += integrate_adaptive<double, ScalarTraits>(integrand, part.t0, part.t1, opts, 0.0,
                                                    "inner_product");
  }
  for (const Atom& atom : measure.atoms) acc += atom.mass * f(atom.location) * g(atom.location);
  return acc;
}

double inner_product(const ScalarMeasure& measure, const ScalarFn& f, const ScalarFn& g,
                     const QuadratureOptions& opts) {
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DiscreteMeasure>)
          return inner_product(m, f, g);
        else
          return inner_product(m, f, g, opts);
      },
      measure);
}

DenseMatrix matrix_inner_product(const MatrixWeight& weight, const MatrixFn& P, const MatrixFn& Q,
                                 const QuadratureOptions& opts) {
  const DenseMatrix zero(weight.dim, weight.dim);
  auto integrand = [&](double t) {
    const auto [x, w] = weight.pullback(t);
    return P(x) * w * Q(x).transpose();
  };
  return integrate_adaptive<DenseMatrix, MatrixTraits>(integrand, weight.t0, weight.t1, opts, zero,
                                                       "matrix_inner_product");
}

double stieltjes(const DiscreteMeasure& measure, double x) {
  double acc = 0.0;
  for (size_t k = 0; k < measure.nodes.size(); ++k) {
    if (x == measure.nodes[k])
      throw std::domain_error("stieltjes: x coincides with a measure node");
    acc += measure.weights[k] / (x - measure.nodes[k]);
  }
  return acc;
}

double stieltjes(const SpectralMeasure& measure, double x, const QuadratureOptions& opts) {
  if (measure.continuous && x >= measure.continuous->a && x <= measure.continuous->b)
    throw std::domain_error("stieltjes: x inside the continuous support");
  for (const Atom& atom : measure.atoms)
    if (x == atom.location) throw std::domain_error("stieltjes: x coincides with an atom");
  auto one = [](double) { return 1.0; };
  auto kernel = [x](double lam) { return 1.0 / (x - lam); };
  return inner_product(measure, kernel, one, opts);
}

double stieltjes(const ScalarMeasure& measure, double x, const QuadratureOptions& opts) {
  return std::visit(
      [&](const auto& m) {
        if constexpr (std::is_same_v<std::decay_t<decltype(m)>, DiscreteMeasure>)
          return stieltjes(m, x);
        else
          return stieltjes(m, x, opts);
      },
      measure);
}

double total_mass(const ScalarMeasure& measure, const QuadratureOptions& opts) {
  auto one = [](double) { return 1.0; };
  return inner_product(measure, one, one, opts);
}

double atom_mass_at(const ScalarMeasure& measure, double x, double tol) {
  return std::visit([&](const auto& m) { return m.atom_mass_at(x, tol); }, measure);
}

}  // namespace kmrep
