#pragma once

#include <vector>

#include "logvoa/rational.hpp"

namespace logvoa {

/// Truncated q-expansion with a global rational exponent shift:
///   q^{offset} * sum_n coeffs[n] q^n.
struct QSeries {
  Rational offset;
  std::vector<Rational> coeffs;
};

/// Central charge of the rank-one Heisenberg VOA with conformal vector
/// shifted by the parameter a:  c = 1 - 12 a^2.
Rational central_charge(const Rational& a);

/// Lowest conformal weight of the Fock module with h(0)-eigenvalue
/// lambda:  lambda^2/2 - a*lambda.
Rational lowest_weight(const Rational& lambda, const Rational& a);

/// The contragredient of the lambda-module is the (2a - lambda)-module;
/// both must have the same lowest weight. Returns whether they do
/// (always true; exposed as an executable identity).
bool contragredient_weight_identity(const Rational& lambda, const Rational& a);

/// Number of integer partitions of n, by Euler's pentagonal recurrence.
Rational partition_count(long n);

/// q-expansion of 1/eta through level N: offset -1/24 and coefficients
/// p(0), ..., p(N).
QSeries eta_inverse_series(long n_max);

}  // namespace logvoa
