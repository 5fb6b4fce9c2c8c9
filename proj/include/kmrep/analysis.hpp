#pragma once

#include <cstdint>
#include <vector>

#include "kmrep/km.hpp"

namespace kmrep {

/// U_i(z) = sum_n z^n (P^n)_{ii}, evaluated in closed form through the
/// measure as pi_i * integral of Q_i(x)^2 / (1 - z x) dpsi(x). Requires
/// |z| < 1 (std::domain_error otherwise).
double u_series(const KMSystem& sys, std::int64_t state, double z);

/// F(z) = 1 - 1/U(z), the first-return generating function.
double f_series(const KMSystem& sys, std::int64_t state, double z);

/// lim_{z->1-} F(z): 1 exactly when U(1) diverges (recurrence). U(1) diverges
/// iff the measure carries an atom at x = 1 or the density integral of
/// Q_i^2/(1-x) fails to converge.
double return_probability(const KMSystem& sys, std::int64_t state);

/// Expected first-return time F'(1) for a recurrent state, computed by atom
/// extraction: with an atom of mass m1 at x = 1,
/// F'(1) = 1 / (pi_i m1 Q_i(1)^2); +infinity when recurrent with no atom at 1
/// (null recurrence). Never computed by numerical differentiation near z = 1.
/// Throws std::domain_error for transient states (use return_probability).
double expected_return_time(const KMSystem& sys, std::int64_t state);

/// Transparency diagnostic: the ill-conditioned quotient F'(z) = U'(z)/U(z)^2
/// evaluated at z = 1 - 1e-3 by quadrature.
double expected_return_time_diagnostic(const KMSystem& sys, std::int64_t state,
                                       double z = 1.0 - 1e-3);

struct Classification {
  bool limit_exists = false;   // no atom at x = -1
  double limit_value = 0.0;    // pi_i * (mass at 1) * Q_i(1)^2 when the limit exists
  double even_limit = 0.0;     // accumulation point along even n
  double odd_limit = 0.0;      // accumulation point along odd n
};

/// Limiting behaviour of (P^n)_{ii} via the atoms at +-1.
Classification classify(const KMSystem& sys, std::int64_t state);

/// First-return probabilities f_1..f_order recovered by series division of
/// F(z) = 1 - 1/U(z) from the KM coefficients u_n = (P^n)_{ii}. Intended for
/// cross-checks; order is capped at 64.
std::vector<double> first_return_series(const KMSystem& sys, std::int64_t state,
                                        std::int64_t order);

}  // namespace kmrep
