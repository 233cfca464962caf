#pragma once

// Exact primal/dual certificate that the factor-revealing LP for the PFCT-U
// packing algorithm has value 6/5.
//
//   max r  s.t.  z - (x3 + x4 + x5 + x6) = 1               (alpha)
//                3x3 + 4x4 + 5x5 + 6x6 - z <= 0            (beta)
//                r - (z - 3/4 x3) <= 0                     (y3)
//                r - (z - 3/5 (x3 + x4)) <= 0              (y4)
//                r - (z - 1/2 (x3 + x4 + x5)) <= 0         (y5)
//                x3, x4, x5, x6, z >= 0

#include "fct/rational.hpp"

#include <array>
#include <string>
#include <vector>

namespace fct {

struct LpCertificate {
  struct Primal {
    Rational x3, x4, x5, x6, z, r;
  } primal;
  struct Dual {
    Rational alpha, beta, y3, y4, y5;
  } dual;
  Rational value;
};

inline LpCertificate nominal_certificate() {
  auto q = [](std::int64_t num, std::int64_t den = 1) { return make_rational(num, den); };
  return {{q(4, 15), q(1, 15), q(1, 15), q(0), q(7, 5), q(6, 5)},
          {q(6, 5), q(1, 5), q(4, 15), q(1, 3), q(2, 5)},
          q(6, 5)};
}

/// Every failed check, in order. Empty iff the certificate proves the LP
/// value equals cert.value.
inline std::vector<std::string> check_certificate(const LpCertificate& cert) {
  std::vector<std::string> failures;
  const auto& [x3, x4, x5, x6, z, r] = cert.primal;
  const auto& [alpha, beta, y3, y4, y5] = cert.dual;
  auto require = [&](bool ok, std::string what) {
    if (!ok) failures.push_back(std::move(what));
  };

  // Primal feasibility.
  require(z - (x3 + x4 + x5 + x6) == 1, "primal: z - (x3+x4+x5+x6) = 1 violated");
  require(3 * x3 + 4 * x4 + 5 * x5 + 6 * x6 - z <= 0, "primal: 3x3+4x4+5x5+6x6 - z <= 0 violated");
  require(r - (z - make_rational(3, 4) * x3) <= 0, "primal: r <= z - 3/4 x3 violated");
  require(r - (z - make_rational(3, 5) * (x3 + x4)) <= 0, "primal: r <= z - 3/5 (x3+x4) violated");
  require(r - (z - make_rational(1, 2) * (x3 + x4 + x5)) <= 0,
          "primal: r <= z - 1/2 (x3+x4+x5) violated");
  for (const auto& [v, name] : std::array<std::pair<Rational, const char*>, 5>{
           {{x3, "x3"}, {x4, "x4"}, {x5, "x5"}, {x6, "x6"}, {z, "z"}}})
    require(v >= 0, std::string("primal: ") + name + " >= 0 violated");

  // Dual feasibility: the inequality multipliers are nonnegative.
  for (const auto& [v, name] : std::array<std::pair<Rational, const char*>, 4>{
           {{beta, "beta"}, {y3, "y3"}, {y4, "y4"}, {y5, "y5"}}})
    require(v >= 0, std::string("dual: ") + name + " >= 0 violated");

  // r <= Σ y_k (z - ...) needs Σ y_k = 1 as the coefficient of r. The right
  // side must then be dominated, coefficient by coefficient on the
  // nonnegative variables, by alpha (z - Σ x) - beta (z - Σ k x_k), which is
  // at most alpha on the feasible region.
  const Rational r_coeff = y3 + y4 + y5;
  require(r_coeff == 1, "dual: coefficient of r is " + to_string(r_coeff) + ", expected 1");
  struct Coeff {
    const char* name;
    Rational combined, bound;
  };
  const std::array<Coeff, 5> coeffs{{
      {"z", y3 + y4 + y5, alpha - beta},
      {"x3", -(make_rational(3, 4) * y3 + make_rational(3, 5) * y4 + make_rational(1, 2) * y5),
       -alpha + 3 * beta},
      {"x4", -(make_rational(3, 5) * y4 + make_rational(1, 2) * y5), -alpha + 4 * beta},
      {"x5", -(make_rational(1, 2) * y5), -alpha + 5 * beta},
      {"x6", Rational(0), -alpha + 6 * beta},
  }};
  for (const auto& c : coeffs)
    require(c.combined <= c.bound, std::string("dual: coefficient of ") + c.name + " is " +
                                       to_string(c.combined) + ", exceeds " + to_string(c.bound));

  require(r == cert.value, "primal objective " + to_string(r) + " != " + to_string(cert.value));
  require(alpha == cert.value, "dual bound " + to_string(alpha) + " != " + to_string(cert.value));
  return failures;
}

/// Builds the nominal certificate and checks it; throws if any check fails.
inline LpCertificate verify_factor_revealing_certificate() {
  LpCertificate cert = nominal_certificate();
  auto failures = check_certificate(cert);
  if (!failures.empty()) throw Error("certificate invalid: " + failures.front());
  return cert;
}

}  // namespace fct
