#include <doctest.h>

#include <algorithm>

#include <Eigen/Eigenvalues>

#include "perqw/attractors.hpp"
#include "perqw/channel.hpp"
#include "perqw/operators.hpp"

using namespace perqw;

namespace {
const double kEps = 1e-12;
}

TEST_CASE("hadamard block") {
  const Matrix h = hadamard();
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(h(0, 0) - s) < kEps);
  CHECK(std::abs(h(0, 1) - s) < kEps);
  CHECK(std::abs(h(1, 0) - s) < kEps);
  CHECK(std::abs(h(1, 1) + s) < kEps);
}

TEST_CASE("coin operator is block diagonal with identical H blocks") {
  const Topology t = Topology::line(2);
  const Matrix c = build_coin(t);
  CHECK(max_abs(c.block(0, 0, 2, 2) - hadamard()) < kEps);
  CHECK(max_abs(c.block(2, 2, 2, 2) - hadamard()) < kEps);
  CHECK(max_abs(c.block(0, 2, 2, 2)) < kEps);

  const Topology t5 = Topology::line(5);
  CHECK(unitarity_residual(build_coin(t5)) < kEps);
}

TEST_CASE("reflection operator") {
  const Matrix r = local_reflection();
  CHECK(std::abs(r(0, 1) - 1.0) < kEps);
  CHECK(std::abs(r(1, 0) - 1.0) < kEps);

  const Topology t = Topology::line(4);
  const Matrix rr = build_reflection(t);
  CHECK(max_abs(rr * rr - Matrix::Identity(8, 8)) < kEps);  // involution

  // RH block
  const Matrix rh = r * hadamard();
  const double s = 1.0 / std::sqrt(2.0);
  Matrix expect(2, 2);
  expect << s, -s, s, s;
  CHECK(max_abs(rh - expect) < kEps);
}

TEST_CASE("empty configuration shift equals the global reflection") {
  for (auto t : {Topology::line(3), Topology::circle(4)}) {
    CHECK(max_abs(build_shift(t, EdgeConfig::empty()) - build_reflection(t)) == 0.0);
  }
}

TEST_CASE("full configuration line N=2 mapping") {
  const Topology t = Topology::line(2);
  const Matrix s = build_shift(t, EdgeConfig::full(t.edge_count()));
  auto ket = [&](int site, Coin c) {
    Vector v = Vector::Zero(4);
    v(flat_index(site, c)) = 1;
    return v;
  };
  CHECK(max_abs(Matrix(s * ket(0, Coin::R) - ket(1, Coin::R))) < kEps);
  CHECK(max_abs(Matrix(s * ket(1, Coin::L) - ket(0, Coin::L))) < kEps);
  CHECK(max_abs(Matrix(s * ket(1, Coin::R) - ket(1, Coin::L))) < kEps);  // boundary reflection
  CHECK(max_abs(Matrix(s * ket(0, Coin::L) - ket(0, Coin::R))) < kEps);
}

TEST_CASE("full configuration circle N=3 wraps periodically") {
  const Topology t = Topology::circle(3);
  const Matrix s = build_shift(t, EdgeConfig::full(t.edge_count()));
  CHECK(std::abs(s(flat_index(0, Coin::R), flat_index(2, Coin::R)) - 1.0) < kEps);
  CHECK(std::abs(s(flat_index(2, Coin::L), flat_index(0, Coin::L)) - 1.0) < kEps);
}

TEST_CASE("shift is a 0/1 matrix with one entry per row and column") {
  for (auto t : {Topology::line(4), Topology::circle(5)}) {
    for (auto k : enumerate_configs(t)) {
      const Matrix s = build_shift(t, k);
      for (int i = 0; i < s.rows(); ++i) {
        double row = 0, col = 0;
        for (int j = 0; j < s.cols(); ++j) {
          const double vr = std::abs(s(i, j)), vc = std::abs(s(j, i));
          CHECK((vr < kEps || std::abs(vr - 1) < kEps));
          row += vr;
          col += vc;
        }
        CHECK(std::abs(row - 1) < kEps);
        CHECK(std::abs(col - 1) < kEps);
      }
    }
  }
}

TEST_CASE("circle shift with the wrap edge removed equals the line shift") {
  for (int n = 2; n <= 6; ++n) {
    const Topology circle = Topology::circle(n);
    const Topology line = Topology::line(n);
    for (auto k : enumerate_configs(line)) {
      CHECK(max_abs(build_shift(circle, k) - build_shift(line, k)) == 0.0);
    }
  }
}

TEST_CASE("step unitaries are unitary for every configuration") {
  const Topology t = Topology::line(3);
  for (auto k : enumerate_configs(t)) CHECK(unitarity_residual(step_unitary(t, k)) < kEps);
}

TEST_CASE("empty-config step has RH blocks with eigenvalues (1 +- i)/sqrt(2)") {
  const Topology t = Topology::line(3);
  const Matrix u = step_unitary(t, EdgeConfig::empty());
  CHECK(max_abs(u - build_reflection(t) * build_coin(t)) < kEps);

  Eigen::ComplexEigenSolver<Matrix> es(local_reflection() * hadamard());
  std::vector<cxd> ev = {es.eigenvalues()(0), es.eigenvalues()(1)};
  std::sort(ev.begin(), ev.end(), [](cxd a, cxd b) { return a.imag() < b.imag(); });
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(ev[0] - cxd(s, -s)) < kEps);
  CHECK(std::abs(ev[1] - cxd(s, s)) < kEps);
}

TEST_CASE("two-particle unitary") {
  const Topology t = Topology::line(2);
  const Matrix u = step_unitary(t, EdgeConfig::full(t.edge_count()));
  const Matrix u2 = two_particle_unitary(u);
  CHECK(u2.rows() == t.dim2());
  CHECK(unitarity_residual(u2) < kEps);
}

TEST_CASE("SWAP commutes with every two-particle step unitary") {
  const Topology t = Topology::line(3);
  const Matrix w = swap_operator(t);
  for (auto k : enumerate_configs(t)) {
    const Matrix u2 = two_particle_unitary(step_unitary(t, k));
    CHECK(max_abs(w * u2 - u2 * w) < kEps);
  }
}

TEST_CASE("factored two-particle conjugation matches the dense product") {
  const Topology t = Topology::line(3);
  const Matrix u = step_unitary(t, EdgeConfig{0b01});
  const Matrix u2 = two_particle_unitary(u);
  std::srand(11);
  const Matrix x = Matrix::Random(t.dim2(), t.dim2());
  CHECK(max_abs(conjugate_two_particle(u, x) - u2 * x * u2.adjoint()) < 1e-13);

  std::srand(12);
  Vector psi = Vector::Random(t.dim2());
  psi.normalize();
  CHECK((apply_two_particle(u, psi) - u2 * psi).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("rejected inputs") {
  CHECK_THROWS_AS(Topology::line(1), InvalidInput);
  CHECK_THROWS_AS(Topology::circle(1), InvalidInput);
  const Topology t = Topology::line(3);
  CHECK_THROWS_AS(build_shift(t, EdgeConfig{0b100}), InvalidInput);  // line N=3 has 2 edges
}
