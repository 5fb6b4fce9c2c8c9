#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <variant>
#include <vector>

#include "kmrep/matrix.hpp"

namespace kmrep {

/// Quadrature settings. Panel refinement stops at `target_abs_err` or
/// `max_depth` bisection levels, whichever comes first; an accumulated
/// estimate above fail_threshold * (1 + integrand scale) raises
/// QuadratureError instead of being silently accepted.
struct QuadratureOptions {
  double target_abs_err = 1e-12;
  double fail_threshold = 1e-10;
  int max_depth = 20;

  /// Defaults, with max_depth overridden by the KM_MAX_PANELS environment
  /// variable when set.
  static QuadratureOptions defaults();
};

class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& msg, double estimate)
      : std::runtime_error(msg), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

/// Absolutely continuous piece of a measure on [a, b]. Quadrature never
/// samples `density` directly; it integrates through the pullback
/// t in [t0, t1] -> (x(t), density(x(t)) * x'(t)), which built-in measures
/// choose so that square-root or Jacobi-type endpoint factors cancel
/// analytically.
struct ContinuousPart {
  double a = 0.0;
  double b = 0.0;
  std::function<double(double)> density;

  double t0 = 0.0;
  double t1 = 0.0;
  std::function<std::pair<double, double>(double)> pullback;

  /// No substitution: t = x.
  static ContinuousPart plain(double a, double b, std::function<double(double)> density);

  /// x = c + h sin(theta) on theta in [-pi/2, pi/2]; `theta_form` must return
  /// density(x(theta)) * h cos(theta) in a cancellation-free form.
  static ContinuousPart trig_edge(double a, double b, std::function<double(double)> density,
                                  std::function<double(double)> theta_form);
};

/// Continuous density plus finitely many atoms, supported in [-1, 1].
struct SpectralMeasure {
  std::optional<ContinuousPart> continuous;
  std::vector<Atom> atoms;

  void validate() const;
  bool has_atom_at(double x, double tol = 1e-9) const;
  double atom_mass_at(double x, double tol = 1e-9) const;
};

/// Finite-support measure (finite chains); all sums are exact, no quadrature.
struct DiscreteMeasure {
  std::vector<double> nodes;
  std::vector<double> weights;

  void validate() const;
  bool has_atom_at(double x, double tol = 1e-9) const;
  double atom_mass_at(double x, double tol = 1e-9) const;
};

using ScalarMeasure = std::variant<DiscreteMeasure, SpectralMeasure>;

/// d x d matrix density W(x) on [a, b], Hermitian positive semidefinite at
/// every evaluated point. Same pullback contract as ContinuousPart, with the
/// jacobian folded into the returned matrix.
struct MatrixWeight {
  int dim = 0;
  double a = 0.0;
  double b = 0.0;
  std::function<DenseMatrix(double)> weight;

  double t0 = 0.0;
  double t1 = 0.0;
  std::function<std::pair<double, DenseMatrix>(double)> pullback;

  static MatrixWeight plain(int dim, double a, double b, std::function<DenseMatrix(double)> w);
};

using ScalarFn = std::function<double(double)>;
using MatrixFn = std::function<DenseMatrix(double)>;

/// integral of f * g against the measure (exact node sum for discrete
/// measures, quadrature plus exact atom sum otherwise).
double inner_product(const DiscreteMeasure& measure, const ScalarFn& f, const ScalarFn& g);
double inner_product(const SpectralMeasure& measure, const ScalarFn& f, const ScalarFn& g,
                     const QuadratureOptions& opts = QuadratureOptions::defaults());
double inner_product(const ScalarMeasure& measure, const ScalarFn& f, const ScalarFn& g,
                     const QuadratureOptions& opts = QuadratureOptions::defaults());

/// integral of P(x) W(x) Q(x)^T dx, entrywise quadrature.
DenseMatrix matrix_inner_product(const MatrixWeight& weight, const MatrixFn& P, const MatrixFn& Q,
                                 const QuadratureOptions& opts = QuadratureOptions::defaults());

/// Cauchy transform: integral of dpsi(lambda) / (x - lambda) for x strictly
/// outside support and atoms (std::domain_error otherwise).
double stieltjes(const DiscreteMeasure& measure, double x);
double stieltjes(const SpectralMeasure& measure, double x,
                 const QuadratureOptions& opts = QuadratureOptions::defaults());
double stieltjes(const ScalarMeasure& measure, double x,
                 const QuadratureOptions& opts = QuadratureOptions::defaults());

/// Total mass (density integral plus atom masses).
double total_mass(const ScalarMeasure& measure,
                  const QuadratureOptions& opts = QuadratureOptions::defaults());

double atom_mass_at(const ScalarMeasure& measure, double x, double tol = 1e-9);

}  // namespace kmrep
