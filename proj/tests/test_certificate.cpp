#include "fct/lp_certificate.hpp"

#include <gtest/gtest.h>

using namespace fct;

namespace {

bool mentions(const std::vector<std::string>& failures, const std::string& text) {
  for (const auto& f : failures)
    if (f.find(text) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Certificate, NominalValues) {
  const LpCertificate cert = verify_factor_revealing_certificate();
  EXPECT_EQ(cert.value, make_rational(6, 5));
  EXPECT_EQ(cert.primal.x3, make_rational(4, 15));
  EXPECT_EQ(cert.primal.x4, make_rational(1, 15));
  EXPECT_EQ(cert.primal.x5, make_rational(1, 15));
  EXPECT_EQ(cert.primal.x6, 0);
  EXPECT_EQ(cert.primal.z, make_rational(7, 5));
  EXPECT_EQ(cert.primal.r, make_rational(6, 5));
  EXPECT_EQ(cert.dual.alpha, make_rational(6, 5));
  EXPECT_EQ(cert.dual.beta, make_rational(1, 5));
  EXPECT_EQ(cert.dual.y3, make_rational(4, 15));
  EXPECT_EQ(cert.dual.y4, make_rational(1, 3));
  EXPECT_EQ(cert.dual.y5, make_rational(2, 5));
  EXPECT_TRUE(check_certificate(cert).empty());
}

TEST(Certificate, NominalPrimalIsTight) {
  // Each r constraint holds with equality at the nominal point.
  const auto& p = nominal_certificate().primal;
  EXPECT_EQ(p.z - make_rational(3, 4) * p.x3, p.r);
  EXPECT_EQ(p.z - make_rational(3, 5) * (p.x3 + p.x4), p.r);
  EXPECT_EQ(p.z - make_rational(1, 2) * (p.x3 + p.x4 + p.x5), p.r);
  EXPECT_EQ(3 * p.x3 + 4 * p.x4 + 5 * p.x5 + 6 * p.x6, p.z);
}

TEST(Certificate, PerturbedPrimal) {
  LpCertificate cert = nominal_certificate();
  cert.primal.x3 = make_rational(1, 3);
  const auto failures = check_certificate(cert);
  EXPECT_TRUE(mentions(failures, "3x3+4x4+5x5+6x6 - z <= 0"));
}

TEST(Certificate, PerturbedDualSum) {
  LpCertificate cert = nominal_certificate();
  cert.dual.y5 = make_rational(3, 10);  // y3 + y4 + y5 = 9/10
  const auto failures = check_certificate(cert);
  EXPECT_TRUE(mentions(failures, "coefficient of r is 9/10"));
}

TEST(Certificate, WrongValue) {
  LpCertificate cert = nominal_certificate();
  cert.value = make_rational(5, 4);
  EXPECT_EQ(check_certificate(cert).size(), 2u);
}

TEST(Certificate, NegativeMultiplier) {
  LpCertificate cert = nominal_certificate();
  cert.dual.beta = make_rational(-1, 5);
  EXPECT_TRUE(mentions(check_certificate(cert), "beta >= 0"));
}
