// Brute-force completeness oracle vs the analytic construction.

#include <doctest.h>

#include "perqw/attractors.hpp"

using namespace perqw;

TEST_CASE("two-particle dimension tables") {
  SUBCASE("line N=3: (21, 10, 10, 2)") {
    const auto r = brute_force_attractor_space(Topology::line(3), 2);
    CHECK(r.dimensions.at("1") == 21);
    CHECK(r.dimensions.at("i") == 10);
    CHECK(r.dimensions.at("-i") == 10);
    CHECK(r.dimensions.at("-1") == 2);
    CHECK(r.spectrum_checked);
    CHECK(r.worst_stray_modulus_gap < 1e-8);
  }

  SUBCASE("circle N=3: 3 attractors, all at eigenvalue 1") {
    const auto r = brute_force_attractor_space(Topology::circle(3), 2);
    CHECK(r.dimensions.at("1") == 3);
    CHECK(r.dimensions.at("i") == 0);
    CHECK(r.dimensions.at("-i") == 0);
    CHECK(r.dimensions.at("-1") == 0);
  }
}

TEST_CASE("one-particle dimension tables") {
  SUBCASE("line N=4: total 5") {
    const auto r = brute_force_attractor_space(Topology::line(4), 1);
    CHECK(r.dimensions.at("1") == 3);
    CHECK(r.dimensions.at("i") == 1);
    CHECK(r.dimensions.at("-i") == 1);
    CHECK(r.dimensions.at("-1") == 0);
  }

  SUBCASE("circle N=5: identity only") {
    const auto r = brute_force_attractor_space(Topology::circle(5), 1);
    CHECK(r.dimensions.at("1") == 1);
    CHECK(r.dimensions.at("i") == 0);
  }
}

TEST_CASE("span equality between oracle and analytic bases (line N=3)") {
  const Topology t = Topology::line(3);
  const AttractorBasis analytic = orthonormal_basis(t);
  const auto oracle = brute_force_attractor_space(t, 2);

  // project each oracle element onto the analytic basis and back
  std::vector<const Matrix*> aflat;
  for (const auto& [lambda, ops] : analytic.sectors)
    for (const auto& a : ops) aflat.push_back(&a.op);

  for (const auto& [key, ops] : oracle.bases) {
    for (const Matrix& x : ops) {
      Matrix res = x;
      for (const Matrix* b : aflat) res -= hs_inner(*b, x) * (*b);
      CHECK(hs_norm(res) < 1e-8);
    }
  }

  // and the reverse direction
  std::vector<Matrix> oflat;
  for (const auto& [key, ops] : oracle.bases)
    for (const Matrix& x : ops) oflat.push_back(x);
  for (const Matrix* a : aflat) {
    Matrix res = *a;
    // oracle sector bases are orthonormal within sectors and orthogonal
    // across them (distinct eigenvalue sectors)
    for (const Matrix& b : oflat) res -= hs_inner(b, *a) * b;
    CHECK(hs_norm(res) < 1e-8);
  }
}

TEST_CASE("oracle guard") {
  CHECK_THROWS_AS(brute_force_attractor_space(Topology::line(5), 2), GuardError);
  CHECK_THROWS_AS(brute_force_attractor_space(Topology::line(30), 1), GuardError);
}
