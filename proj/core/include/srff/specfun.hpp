#pragma once

// Real-valued special functions backing the analytic kernel profiles:
// gamma, log-beta, modified Bessel K, and the Kummer / Tricomi confluent
// hypergeometric functions. Everything here is a pure function of its
// arguments and safe to call concurrently.

#include <stdexcept>

namespace srff::specfun {

enum class SfStatus {
    ok,
    underflow_to_zero,   // result below the double range, value is exactly 0
    overflow_saturated,  // result above the double range, value is +inf
    domain_error,        // arguments outside the supported domain
};

struct SpecFunResult {
    double value = 0.0;
    SfStatus status = SfStatus::ok;

    bool ok() const { return status == SfStatus::ok; }
};

// Gamma function for x > 0. Saturates to +inf above the double overflow
// threshold (x ~ 171.62). Throws std::domain_error for x <= 0 or non-finite x.
double gamma_fn(double x);

// log B(a,b) for a,b > 0, computed through log-gamma so large shape
// parameters do not overflow. Throws std::domain_error on invalid input.
double log_beta(double a, double b);

// Modified Bessel function of the second kind K_nu(x), nu in (0, 200], x > 0.
//
// Uses Temme's series for x <= 2 and a Steed-type continued fraction for
// x > 2, both at the fractional order mu = nu - round(nu), followed by the
// stable upward recurrence in the order. The crossover at x = 2 is the
// classical one for this pair of expansions; both sides are validated against
// the arbitrary-precision fixtures in tests/fixtures.
SpecFunResult bessel_k(double nu, double x);

// log K_nu(x) on the same domain, finite even where K_nu itself over- or
// underflows. Used by the Matern-type kernel profile, whose prefactor must
// be combined with K_nu in log space.
double log_bessel_k(double nu, double x);

// Kummer confluent hypergeometric M(a,b,z) restricted to the completely
// monotone regime b > a > 0, z <= 0, where the value lies in (0, 1].
//
// Evaluated through the Kummer transformation M(a,b,z) = e^z M(b-a,b,-z):
// the transformed series has positive terms only, so there is no
// cancellation for large |z|. The running sum is rescaled when it approaches
// the overflow threshold, which keeps the series usable for arbitrarily
// negative z.
SpecFunResult kummer_m(double a, double b, double z);

// Tricomi confluent hypergeometric U(a,b,z) for a > 0, z >= 0 (z = 0 only
// for b < 1, where U(a,b,0) = Gamma(1-b)/Gamma(a-b+1)).
//
// Evaluated from the Laplace-type integral
//   U(a,b,z) = 1/Gamma(a) Int_0^inf e^{-zt} t^{a-1} (1+t)^{b-a-1} dt,
// split at t = 1 and mapped onto (0,1) twice, then integrated with
// tanh-sinh quadrature in log space. The integral representation is valid
// for every real b, so non-positive integer b (where the usual reflection
// through M degenerates) needs no special casing.
SpecFunResult tricomi_u(double a, double b, double z);

// log U(a,b,z) on the same domain; finite where U underflows.
double log_tricomi_u(double a, double b, double z);

}  // namespace srff::specfun
