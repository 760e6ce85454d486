#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracle/dd.hpp"
#include "oracle/oracle.hpp"

using oracle::Dd;

// Sanity for the double-double layer itself: if these identities hold to
// ~1e-30 the oracle values downstream are trustworthy far below the
// 1e-12 tolerances they back.

namespace {

double rel_err(const Dd& value, const Dd& reference) {
  const Dd diff = value - reference;
  return std::abs(diff.to_double()) / std::abs(reference.to_double());
}

}  // namespace

TEST_CASE("dd arithmetic identities") {
  const Dd two(2.0);
  const Dd r = oracle::dd_sqrt(two);
  CHECK(rel_err(r * r, two) < 1e-30);

  const Dd third = Dd(1.0) / Dd(3.0);
  CHECK(rel_err(third * Dd(3.0), Dd(1.0)) < 1e-30);

  // (1/3 computed in dd) carries ~32 digits: 3 * (1/3) - 1 is tiny.
  const Dd resid = third * Dd(3.0) - Dd(1.0);
  CHECK(std::abs(resid.to_double()) < 1e-31);
}

TEST_CASE("dd exp/log/pow") {
  const Dd x(1.2345);
  CHECK(rel_err(oracle::dd_log(oracle::dd_exp(x)), x) < 1e-29);
  CHECK(rel_err(oracle::dd_exp(oracle::dd_log(x)), x) < 1e-29);
  CHECK(rel_err(oracle::dd_pow(Dd(2.0), Dd(10.0)), Dd(1024.0)) < 1e-29);
  CHECK(rel_err(oracle::dd_pow_int(Dd(3.0), 7), Dd(2187.0)) < 1e-30);
  // exp(ln 2) against the stored constant
  CHECK(rel_err(oracle::dd_exp(oracle::dd_ln2), Dd(2.0)) < 1e-30);
}

TEST_CASE("dd sin") {
  // sin(pi/6) = 1/2, sin(pi/2) = 1, sin(pi/4) = sqrt(2)/2
  CHECK(rel_err(oracle::dd_sin(oracle::dd_pi / Dd(6.0)), Dd(0.5)) < 1e-29);
  CHECK(rel_err(oracle::dd_sin(oracle::dd_pi / Dd(2.0)), Dd(1.0)) < 1e-29);
  CHECK(rel_err(oracle::dd_sin(oracle::dd_pi / Dd(4.0)),
                oracle::dd_sqrt(Dd(2.0)) / Dd(2.0)) < 1e-29);
  // symmetry across pi/2
  CHECK(rel_err(oracle::dd_sin(oracle::dd_pi * Dd(2.0) / Dd(3.0)),
                oracle::dd_sin(oracle::dd_pi / Dd(3.0))) < 1e-29);
}

TEST_CASE("oracle closed forms at a hand-checked point") {
  const oracle::Params P{2, 1.5, 2.0, 3.0};
  CHECK(rel_err(oracle::o_sigma(P), Dd(2.0)) < 1e-30);
  CHECK(rel_err(oracle::o_a_max(P), Dd(1.0) / Dd(3.0)) < 1e-30);
  CHECK(rel_err(oracle::o_delta(P), Dd(1.0) / Dd(6.0)) < 1e-30);
  CHECK(rel_err(oracle::o_p_star(P), Dd(6.0)) < 1e-30);
  // omega_2 = pi, omega_3 = 4 pi / 3
  CHECK(rel_err(oracle::o_unit_ball_volume(2), oracle::dd_pi) < 1e-30);
  CHECK(rel_err(oracle::o_unit_ball_volume(3),
                Dd(4.0) * oracle::dd_pi / Dd(3.0)) < 1e-30);
  // pi_2 = pi
  CHECK(rel_err(oracle::o_pi_p(2.0), oracle::dd_pi) < 1e-29);
  // distortion sum at a_max: 1/9 + 1 + 1/9 = 11/9
  CHECK(rel_err(oracle::o_distortion_sum(P, oracle::o_a_max(P)), Dd(11.0) / Dd(9.0)) < 1e-29);
  // optimal weight at x_n = 1/2: 3 (1/2)^3
  CHECK(rel_err(oracle::o_weight_optimal(P, Dd(0.5)), Dd(0.375)) < 1e-29);
  CHECK(rel_err(oracle::o_weight_family(P, oracle::o_a_max(P), Dd(0.5)), Dd(0.375)) < 1e-29);
}

TEST_CASE("oracle convex Poincare constant, p=q reduction") {
  // n=2, p=q: delta=0, d=sqrt(2), |Omega|=1/2 gives 2 sqrt(2 pi).
  const oracle::Params P{2, 1.5, 1.5, 3.0};
  const Dd value = oracle::o_poincare_convex(P, oracle::dd_sqrt(Dd(2.0)), Dd(0.5));
  const Dd expected = Dd(2.0) * oracle::dd_sqrt(Dd(2.0) * oracle::dd_pi);
  CHECK(rel_err(value, expected) < 1e-29);
}
