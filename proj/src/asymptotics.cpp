#include "perqw/asymptotics.hpp"

#include <cmath>

namespace perqw {

namespace {

cxd ip(cxd x, cxd y) { return std::conj(x) * y; }  // <x> y with conjugation on the left

}  // namespace

BellCoinState::BellCoinState(cxd a_, cxd b_, cxd c_, cxd d_) : a(a_), b(b_), c(c_), d(d_) {
  const double n = std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d);
  if (std::abs(n - 1.0) > 1e-12)
    throw InvalidInput("Bell amplitudes must satisfy the normalization condition");
}

Vector BellCoinState::computational() const {
  const double s = 1.0 / std::sqrt(2.0);
  Vector v(4);  // (LL, LR, RL, RR)
  v(0) = s * (c + d);
  v(1) = s * (a + b);
  v(2) = s * (a - b);
  v(3) = s * (c - d);
  return v;
}

BellCoinState BellCoinState::from_bqphi(double b, double q, double phi) {
  const double rest = 1.0 - b * b - q * q;
  if (b < 0 || q < 0 || rest < -1e-12) throw InvalidInput("require b, q >= 0 and b^2 + q^2 <= 1");
  const cxd c = std::polar(std::sqrt(std::max(rest, 0.0)), phi);
  return BellCoinState(q, b, c, 0.0);
}

Matrix project_asymptotic(const Matrix& rho0, const AttractorBasis& basis, long n) {
  if (basis.total() == 0) throw InvalidInput("empty attractor basis");
  // Verify orthonormality before trusting the expansion.
  std::vector<const Attractor*> flat;
  for (const auto& [lambda, ops] : basis.sectors)
    for (const auto& a : ops) flat.push_back(&a);
  if (flat[0]->op.rows() != rho0.rows()) throw InvalidInput("state / basis dimension mismatch");
  for (size_t i = 0; i < flat.size(); ++i)
    for (size_t j = i; j < flat.size(); ++j) {
      const double dev = std::abs(hs_inner(flat[i]->op, flat[j]->op) - (i == j ? cxd(1) : cxd(0)));
      if (dev > kOrthoTol) throw InvalidInput("attractor basis is not orthonormal");
    }

  Matrix out = Matrix::Zero(rho0.rows(), rho0.cols());
  const int e = static_cast<int>(((n % 4) + 4) % 4);  // eigenvalues are 4th roots of unity
  for (const auto& a : flat) {
    cxd phase(1, 0);
    for (int k = 0; k < e; ++k) phase *= a->eigenvalue;
    out += phase * hs_inner(a->op, rho0) * a->op;
  }
  return out;
}

Vector localized_bell_state(const Topology& t, int x, int y, const BellCoinState& coin) {
  if (x < 0 || x >= t.n_sites || y < 0 || y >= t.n_sites) throw InvalidInput("site out of range");
  const Vector chi = coin.computational();
  Vector v = Vector::Zero(t.dim2());
  int k = 0;
  for (Coin c1 : {Coin::L, Coin::R})
    for (Coin c2 : {Coin::L, Coin::R}) v(flat_index2(t, x, c1, y, c2)) = chi(k++);
  return v;
}

std::array<double, 3> circle_steady_coefficients(int n_sites, const BellCoinState& coin) {
  const double n = n_sites;
  const double b2 = std::norm(coin.b), c2 = std::norm(coin.c);
  const double den = 2.0 * n * (2.0 * n * n + n - 1.0);
  return {(n + b2 - c2) / den, (n - c2 - (2.0 * n + 1.0) * b2) / den,
          ((2.0 * n + 1.0) * c2 + b2 - 1.0) / den};
}

Matrix circle_steady_state(int n_sites, const BellCoinState& coin, bool same_site) {
  if (n_sites < 2) throw InvalidInput("need at least 2 sites");
  if (n_sites % 4 == 0)
    throw InvalidInput("circle length divisible by 4 has the full attractor set; use project_asymptotic");
  const Topology t = Topology::circle(n_sites);
  const Matrix id = Matrix::Identity(t.dim2(), t.dim2());
  const Matrix w = swap_operator(t);
  const Matrix f = f_operator(t);
  if (!same_site) {
    const double n = n_sites;
    return ((2.0 * n + 1.0) * id - w - f) / (4.0 * n * (2.0 * n * n + n - 1.0));
  }
  const auto c = circle_steady_coefficients(n_sites, coin);
  return c[0] * id + c[1] * w + c[2] * f;
}

Eigen::MatrixXd position_distribution(const Matrix& rho, const Topology& t) {
  if (rho.rows() != t.dim2()) throw InvalidInput("two-particle state expected");
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(t.n_sites, t.n_sites);
  for (int x = 0; x < t.n_sites; ++x)
    for (int y = 0; y < t.n_sites; ++y) {
      double s = 0;
      for (Coin i : {Coin::L, Coin::R})
        for (Coin j : {Coin::L, Coin::R}) {
          const int k = flat_index2(t, x, i, y, j);
          s += rho(k, k).real();
        }
      w(x, y) = s;
    }
  return w;
}

Matrix reduced_coin_state(const Matrix& rho, const Topology& t) {
  if (rho.rows() != t.dim2()) throw InvalidInput("two-particle state expected");
  Matrix out = Matrix::Zero(4, 4);
  const std::array<Coin, 2> coins = {Coin::L, Coin::R};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) {
          cxd s(0, 0);
          for (int x = 0; x < t.n_sites; ++x)
            for (int y = 0; y < t.n_sites; ++y)
              s += rho(flat_index2(t, x, coins[i], y, coins[j]), flat_index2(t, x, coins[k], y, coins[l]));
          out(2 * i + j, 2 * k + l) = s;
        }
  return out;
}

Matrix circle_reduced_coin_closed_form(int n_sites, const BellCoinState& coin) {
  const double n = n_sites;
  const double b2 = std::norm(coin.b), c2 = std::norm(coin.c);
  // r1 as printed carries a 2N^2 leading term which breaks Tr=1; the
  // trace-consistent leading term is N^2 (adjudicated by the projection oracle).
  const double r1 = (n * n + n - 1.0) + n * (c2 - b2);
  const double r2 = (2.0 * n + 1.0) * c2 + b2 - 1.0;
  const double r3 = n * (n + b2 - c2);
  const double r4 = n - (2.0 * n + 1.0) * b2 - c2;
  Matrix m(4, 4);
  m << r1, 0, 0, r2,
      0, r3, r4, 0,
      0, r4, r3, 0,
      r2, 0, 0, r1;
  return m / (2.0 * (2.0 * n * n + n - 1.0));
}

AsymptoticCycle line4_coin_cycle(const BellCoinState& coin) {
  const cxd b = coin.b, c = coin.c;
  const double b2 = std::norm(b), c2 = std::norm(c);
  const double z1 = 1.0 - 0.5 * (b2 - c2);
  const double z2 = (2.0 - b2 - 7.0 * c2) / 6.0;
  const double z3 = 1.0 + 0.5 * (b2 - c2);
  const double z4 = (2.0 - 7.0 * b2 - c2) / 6.0;
  const cxd f = (b - c) * std::conj(b + c);
  const cxd g = ip(c, b) + ip(b, c);  // b conj(c) + conj(b) c, real
  const cxd u1 = 2.0 / 3.0 - 4.0 / 3.0 * (b2 + c2) + g;
  const cxd u2 = 2.0 / 3.0 - 4.0 / 3.0 * (b2 + c2) - g;
  const cxd bc = ip(b, c);   // conj(b) c
  const cxd cb = ip(c, b);   // b conj(c)

  AsymptoticCycle cyc;
  cyc.period = 4;
  cyc.states.resize(4, Matrix(4, 4));
  cyc.states[0] << z1, bc, -bc, -z2,
      cb, z3, z4, cb,
      -cb, z4, z3, -cb,
      -z2, bc, -bc, z1;
  cyc.states[0] /= 4.0;
  cyc.states[1] << 2.0 - g, -f, f, -u1,
      -std::conj(f), 2.0 + g, u2, -std::conj(f),
      std::conj(f), u2, 2.0 + g, std::conj(f),
      -u1, -f, f, 2.0 - g;
  cyc.states[1] /= 8.0;
  cyc.states[2] << z3, -cb, cb, -z4,
      -bc, z1, z2, -bc,
      bc, z2, z1, bc,
      -z4, -cb, cb, z3;
  cyc.states[2] /= 4.0;
  cyc.states[3] << 2.0 + g, std::conj(f), -std::conj(f), -u2,
      f, 2.0 - g, u1, f,
      -f, u1, 2.0 - g, -f,
      -u2, std::conj(f), -std::conj(f), 2.0 + g;
  cyc.states[3] /= 8.0;
  return cyc;
}

AsymptoticCycle line4_position_cycle(const BellCoinState& coin) {
  const cxd b = coin.b, c = coin.c, d = coin.d;
  const double b2 = std::norm(b), c2 = std::norm(c), d2 = std::norm(d);
  const double cd = (ip(c, d) + ip(d, c)).real();
  const double bc = (ip(b, c) + ip(c, b)).real();
  const double bd = (ip(b, d) + ip(d, b)).real();

  const double x1 = 294 + 3 * b2 + 49 * c2 + 24 * d2 + 52 * cd;
  const double x2 = 306 - 3 * b2 - 49 * c2 - 24 * d2 - 52 * cd;
  const double x3 = 3 * (58 + b2 + 3 * c2 + 8 * d2 + 4 * cd);
  const double x4 = 3 * (62 - b2 - 3 * c2 - 8 * d2 - 4 * cd);
  const double y1 = 234 + 3 * b2 + 29 * c2 + 24 * d2 - 10 * bc - 20 * bd + 32 * cd;
  const double y2 = 246 - 3 * b2 - 29 * c2 - 24 * d2 + 10 * bc + 20 * bd - 32 * cd;
  const double y3 = 234 + 3 * b2 + 29 * c2 + 24 * d2 + 10 * bc + 20 * bd + 32 * cd;
  const double y4 = 246 - 3 * b2 - 29 * c2 - 24 * d2 - 10 * bc - 20 * bd - 32 * cd;

  auto even = [](double p1, double p2, double p3, double p4) {
    Matrix m(4, 4);
    m << p1, p2, p3, p4,
        p3, p4, p1, p2,
        p2, p1, p4, p3,
        p4, p3, p2, p1;
    return Matrix(m / 3840.0);
  };
  auto odd = [&even](double p1, double p2, double p3, double p4) {
    return even(p3, p4, p1, p2);  // rows 1/2 and 3/4 swap against the even pattern
  };

  AsymptoticCycle cyc;
  cyc.period = 4;
  cyc.states = {even(x1, x2, x3, x4), even(y1, y2, y3, y4), odd(x1, x2, x3, x4), odd(y1, y2, y3, y4)};
  return cyc;
}

}  // namespace perqw
