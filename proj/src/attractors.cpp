#include "perqw/attractors.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "perqw/channel.hpp"

namespace perqw {

namespace {

const cxd kI(0.0, 1.0);

Vector coin_plus() {
  Vector v(2);
  v << kI / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

Vector coin_minus() {
  Vector v(2);
  v << -kI / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

Vector kron_vec(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

// phi_alpha = (1/sqrt N) sum_s phase^s |s, coin>. The shift conditions tie the
// position phase to the coin: |+> requires phase +i, |-> requires phase -i.
Vector chiral_state(const Topology& t, cxd phase, const Vector& coin) {
  Vector v = Vector::Zero(t.dim1());
  cxd amp = 1.0 / std::sqrt(static_cast<double>(t.n_sites));
  for (int s = 0; s < t.n_sites; ++s) {
    v.segment(2 * s, 2) = amp * coin;
    amp *= phase;
  }
  return v;
}

bool has_chiral_states(const Topology& t) { return !t.is_circle() || t.length_multiple_of_4(); }

cxd lambda_plus() { return cxd(1.0, 1.0) / std::sqrt(2.0); }
cxd lambda_minus() { return cxd(1.0, -1.0) / std::sqrt(2.0); }

}  // namespace

std::string eigenvalue_key(cxd lambda) {
  if (std::abs(lambda - cxd(1, 0)) < 1e-9) return "1";
  if (std::abs(lambda - cxd(0, 1)) < 1e-9) return "i";
  if (std::abs(lambda - cxd(0, -1)) < 1e-9) return "-i";
  if (std::abs(lambda - cxd(-1, 0)) < 1e-9) return "-1";
  throw InvalidInput("eigenvalue is not one of {1, i, -i, -1}");
}

std::map<std::string, int> AttractorBasis::sector_sizes() const {
  std::map<std::string, int> out;
  for (const auto& [lambda, ops] : sectors)
    if (!ops.empty()) out[eigenvalue_key(lambda)] = static_cast<int>(ops.size());
  return out;
}

std::vector<CommonEigenstate> common_eigenstates_1p(const Topology& t) {
  if (!has_chiral_states(t)) return {};
  return {{chiral_state(t, kI, coin_plus()), lambda_plus(), "phi+"},
          {chiral_state(t, -kI, coin_minus()), lambda_minus(), "phi-"}};
}

Vector phi_w_vector(const Topology& t) {
  Vector v = Vector::Zero(t.dim2());
  const double amp = 1.0 / std::sqrt(2.0 * t.n_sites);
  for (int s = 0; s < t.n_sites; ++s)
    for (Coin c : {Coin::L, Coin::R}) v(flat_index2(t, s, c, s, c)) = amp;
  return v;
}

std::vector<CommonEigenstate> common_eigenstates_2p(const Topology& t) {
  const Vector pw = phi_w_vector(t);
  if (!has_chiral_states(t)) return {{pw, cxd(1, 0), "Phi_w"}};

  const Vector fp = chiral_state(t, kI, coin_plus());
  const Vector fm = chiral_state(t, -kI, coin_minus());
  const Vector ppm = kron_vec(fp, fm);
  const Vector pmp = kron_vec(fm, fp);

  // Phi_w' = sqrt(N/(N-1)) [Phi_w - (Phi+- + Phi-+)/sqrt(2N)]
  Vector pwp = pw - ppm * (ppm.dot(pw)) - pmp * (pmp.dot(pw));
  pwp /= pwp.norm();

  return {{kron_vec(fp, fp), kI, "Phi++"},
          {kron_vec(fm, fm), -kI, "Phi--"},
          {ppm, cxd(1, 0), "Phi+-"},
          {pmp, cxd(1, 0), "Phi-+"},
          {pwp, cxd(1, 0), "Phi_w'"}};
}

std::vector<Attractor> build_p_attractors(const Topology& t) {
  const auto ces = common_eigenstates_2p(t);
  std::vector<Attractor> out;
  out.reserve(ces.size() * ces.size());
  for (const auto& a : ces)
    for (const auto& b : ces)
      out.push_back({a.vector * b.vector.adjoint(), a.eigenvalue * std::conj(b.eigenvalue),
                     "p(" + a.label + "," + b.label + ")"});
  return out;
}

Matrix swap_operator(const Topology& t) {
  const int d1 = t.dim1();
  Matrix w = Matrix::Zero(t.dim2(), t.dim2());
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) w(j * d1 + i, i * d1 + j) = 1;
  return w;
}

Matrix f_operator(const Topology& t) {
  const Vector pw = phi_w_vector(t);
  return 2.0 * t.n_sites * (pw * pw.adjoint());
}

std::vector<Attractor> build_non_p_attractors(const Topology& t) {
  const Matrix w = swap_operator(t);
  const Matrix id2 = Matrix::Identity(t.dim2(), t.dim2());
  std::vector<Attractor> base;
  if (has_chiral_states(t)) {
    const Vector fp = chiral_state(t, kI, coin_plus());
    const Vector fm = chiral_state(t, -kI, coin_minus());
    const Matrix id1 = Matrix::Identity(t.dim1(), t.dim1());
    const Matrix proj_p = fp * fp.adjoint();
    const Matrix proj_m = fm * fm.adjoint();
    const Matrix mp = fm * fp.adjoint();  // eigenvalue lambda_- conj(lambda_+) = -i
    const Matrix pm = fp * fm.adjoint();  // eigenvalue +i
    base = {{kron(id1, proj_p), 1, "non-p(1)"}, {kron(id1, proj_m), 1, "non-p(2)"},
            {kron(proj_p, id1), 1, "non-p(3)"}, {kron(proj_m, id1), 1, "non-p(4)"},
            {id2, 1, "non-p(5)"},               {kron(id1, pm), kI, "non-p(6)"},
            {kron(pm, id1), kI, "non-p(7)"},    {kron(id1, mp), -kI, "non-p(8)"},
            {kron(mp, id1), -kI, "non-p(9)"}};
  } else {
    base = {{id2, 1, "non-p(1)"}, {w, 1, "non-p(2)"}};
    return base;
  }
  std::vector<Attractor> out = base;
  for (const auto& a : base) out.push_back({w * a.op, a.eigenvalue, "W*" + a.provenance});
  return out;
}

AttractorBasis orthonormal_basis(const Topology& t) {
  std::vector<Attractor> all = build_p_attractors(t);
  for (auto& a : build_non_p_attractors(t)) all.push_back(std::move(a));

  const std::array<cxd, 4> lambdas = {cxd(1, 0), cxd(0, 1), cxd(0, -1), cxd(-1, 0)};
  AttractorBasis basis;
  for (cxd lambda : lambdas) {
    std::vector<Attractor> sector;
    for (const auto& a : all) {
      if (std::abs(a.eigenvalue - lambda) > 1e-9) continue;
      Matrix v = a.op;
      for (int pass = 0; pass < 2; ++pass)  // modified GS with one reorthogonalization
        for (const auto& b : sector) v -= hs_inner(b.op, v) * b.op;
      const double n = hs_norm(v);
      if (n < 1e-10) continue;  // linearly dependent member (expected: Phi_w-overlaps, W*I vs I products)
      sector.push_back({v / n, lambda, a.provenance});
    }
    basis.sectors.emplace_back(lambda, std::move(sector));
  }

  // Global Gram check, across sectors as well.
  std::vector<const Matrix*> flat;
  for (const auto& [lambda, ops] : basis.sectors)
    for (const auto& a : ops) flat.push_back(&a.op);
  for (size_t i = 0; i < flat.size(); ++i)
    for (size_t j = i; j < flat.size(); ++j) {
      const cxd g = hs_inner(*flat[i], *flat[j]);
      const double dev = std::abs(g - (i == j ? cxd(1, 0) : cxd(0, 0)));
      if (dev > kOrthoTol)
        throw CheckFailure("orthonormal basis Gram deviation " + std::to_string(dev));
    }
  return basis;
}

namespace {

double residual_impl(const Matrix& x, cxd lambda, const Topology& t, int particles) {
  const int d = particles == 1 ? t.dim1() : t.dim2();
  if (x.rows() != d || x.cols() != d) throw InvalidInput("operator dimension mismatch");
  const auto configs = enumerate_configs(t);
  double worst = 0;
#pragma omp parallel for schedule(dynamic) reduction(max : worst)
  for (int i = 0; i < static_cast<int>(configs.size()); ++i) {
    const Matrix u = step_unitary(t, configs[i]);
    const Matrix lhs = particles == 1 ? conjugate_single(u, x) : conjugate_two_particle(u, x);
    worst = std::max(worst, max_abs(lhs - lambda * x));
  }
  return worst;
}

}  // namespace

double attractor_residual(const Matrix& x, cxd lambda, const Topology& t) {
  return residual_impl(x, lambda, t, 2);
}

double attractor_residual_1p(const Matrix& x, cxd lambda, const Topology& t) {
  return residual_impl(x, lambda, t, 1);
}

Matrix coin_block(cxd lambda, const std::vector<cxd>& params) {
  Matrix b(4, 4);
  const std::string key = eigenvalue_key(lambda);
  if (key == "1") {
    if (params.size() != 6) throw InvalidInput("lambda=1 block takes 6 parameters");
    const cxd a = params[0], bb = params[1], c = params[2], d = params[3], e = params[4], f = params[5];
    b << a, -bb, -c, d,
        -e, f, a - d - f, -bb - c - e,
        bb + c + e, a - d - f, f, e,
        d, c, bb, a;
  } else if (key == "i") {
    if (params.size() != 4) throw InvalidInput("lambda=i block takes 4 parameters");
    const cxd a = params[0], bb = params[1], c = params[2], d = params[3];
    b << -d, a, bb, -kI * a - kI * bb - d,
        c, -kI * a - kI * c - d, -kI * bb - kI * c - d, -a - bb - c + 2.0 * kI * d,
        -a - bb - c + 2.0 * kI * d, kI * bb + kI * c + d, kI * a + kI * c + d, c,
        kI * a + kI * bb + d, bb, a, d;
  } else if (key == "-i") {
    if (params.size() != 4) throw InvalidInput("lambda=-i block takes 4 parameters");
    const cxd a = params[0], bb = params[1], c = params[2], d = params[3];
    b << -d, a, bb, kI * a + kI * bb - d,
        c, kI * a + kI * c - d, kI * bb + kI * c - d, -a - bb - c - 2.0 * kI * d,
        -a - bb - c - 2.0 * kI * d, -kI * bb - kI * c + d, -kI * a - kI * c + d, c,
        -kI * a - kI * bb + d, bb, a, d;
  } else {
    if (params.size() != 2) throw InvalidInput("lambda=-1 block takes 2 parameters");
    const cxd a = params[0], bb = params[1];
    b << a, -bb, -bb, -a,
        -bb, -a, -a, bb,
        -bb, -a, -a, bb,
        -a, bb, bb, a;
  }
  return b;
}

namespace {

// Shift-condition machinery. Each register alias-pairs (s, R) <-> (s-1, L);
// registers whose R-form position labels coincide flip together. For a group
// of k coinciding registers the 2^k flip patterns split into complement
// classes {pattern, ~pattern}; a chain is one class choice per group, and all
// chain members must carry equal matrix elements.
struct RegisterAlias {
  int site;
  Coin coin;
};

RegisterAlias alias_form(const Topology& t, int r_site, bool l_form) {
  if (!l_form) return {r_site, Coin::R};
  return {(r_site - 1 + t.n_sites) % t.n_sites, Coin::L};
}

}  // namespace

double check_shift_conditions(const Matrix& x, const Topology& t) {
  if (x.rows() != t.dim2() || x.cols() != t.dim2()) throw InvalidInput("operator is not two-particle");
  const int n = t.n_sites;
  const int lo = t.is_circle() ? 0 : 1;

  double worst = 0;
  std::array<int, 4> idx;
  for (idx[0] = lo; idx[0] < n; ++idx[0])
    for (idx[1] = lo; idx[1] < n; ++idx[1])
      for (idx[2] = lo; idx[2] < n; ++idx[2])
        for (idx[3] = lo; idx[3] < n; ++idx[3]) {
          // group registers by coinciding position label
          std::array<int, 4> group{};
          std::array<int, 4> group_head{};
          int n_groups = 0;
          for (int r = 0; r < 4; ++r) {
            int g = -1;
            for (int q = 0; q < r; ++q)
              if (idx[q] == idx[r]) { g = group[q]; break; }
            if (g < 0) { g = n_groups++; group_head[g] = r; }
            group[r] = g;
          }
          // enumerate chains: per group, a class is {pattern, ~pattern} over
          // its registers; fix the head register's flip to 0 to pick one
          // representative pattern, then both pattern and complement are
          // members of the same chain.
          std::array<int, 4> gsize{};
          for (int r = 0; r < 4; ++r) gsize[group[r]]++;
          int n_class_bits = 0;
          for (int g = 0; g < n_groups; ++g) n_class_bits += gsize[g] - 1;

          for (int cls = 0; cls < (1 << n_class_bits); ++cls) {
            // pattern for class representative: head register flip 0, other
            // registers of the group take bits from cls
            std::array<int, 4> rep{};
            int bit = 0;
            for (int r = 0; r < 4; ++r) {
              if (r == group_head[group[r]]) rep[r] = 0;
              else rep[r] = (cls >> bit++) & 1;
            }
            // chain members: per group either rep or complement
            cxd first(0, 0);
            bool have_first = false;
            for (int flips = 0; flips < (1 << n_groups); ++flips) {
              std::array<RegisterAlias, 4> regs;
              for (int r = 0; r < 4; ++r) {
                const bool l_form = ((rep[r] ^ ((flips >> group[r]) & 1)) != 0);
                regs[r] = alias_form(t, idx[r], l_form);
              }
              const int row = flat_index2(t, regs[0].site, regs[0].coin, regs[1].site, regs[1].coin);
              const int col = flat_index2(t, regs[2].site, regs[2].coin, regs[3].site, regs[3].coin);
              const cxd v = x(row, col);
              if (!have_first) { first = v; have_first = true; }
              else worst = std::max(worst, std::abs(v - first));
            }
          }
        }
  return worst;
}

double coin_condition_residual(const Vector& v, cxd alpha, const Topology& t, int particles) {
  Matrix rc = build_reflection(t) * build_coin(t);
  if (particles == 2) rc = two_particle_unitary(rc);
  if (v.size() != rc.rows()) throw InvalidInput("state dimension mismatch");
  return (rc * v - alpha * v).cwiseAbs().maxCoeff();
}

double shift_condition_residual(const Vector& v, const Topology& t, int particles) {
  const auto configs = enumerate_configs(t);
  double worst = 0;
  Vector ref;
  for (size_t i = 0; i < configs.size(); ++i) {
    Matrix s_dag = build_shift(t, configs[i]).adjoint();
    if (particles == 2) s_dag = two_particle_unitary(s_dag);
    if (v.size() != s_dag.rows()) throw InvalidInput("state dimension mismatch");
    const Vector w = s_dag * v;
    if (i == 0) ref = w;
    else worst = std::max(worst, (w - ref).cwiseAbs().maxCoeff());
  }
  return worst;
}

namespace {

// Orthonormal kernel of the stacked constraints (U_K . U_K^dag - lambda) on a
// subspace basis, reduced one configuration at a time. The first config's
// kernel comes directly from its eigendecomposition (pairs mu_a conj(mu_b)
// close to lambda); every further config shrinks the span via an SVD.
std::vector<Matrix> common_kernel(const std::vector<Matrix>& us, cxd lambda, int d, int particles) {
  Eigen::ComplexEigenSolver<Matrix> es(us[0]);
  const auto& mu = es.eigenvalues();
  const auto& vecs = es.eigenvectors();
  const int m = static_cast<int>(mu.size());

  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      if (std::abs(mu(a) * std::conj(mu(b)) - lambda) < 1e-8) pairs.emplace_back(a, b);
  if (pairs.empty()) return {};

  // Basis matrix B: columns are vec(|a><b|); orthonormalize through an SVD so
  // near-dependent eigenvector pairs (degenerate spectra) cannot inflate the span.
  Matrix b(d * d, pairs.size());
  for (size_t p = 0; p < pairs.size(); ++p) {
    const Matrix op = vecs.col(pairs[p].first) * vecs.col(pairs[p].second).adjoint();
    b.col(p) = Eigen::Map<const Vector>(op.data(), d * d);
  }
  Eigen::JacobiSVD<Matrix> init_svd(b, Eigen::ComputeThinU);
  const auto& isv = init_svd.singularValues();
  int init_rank = 0;
  for (Eigen::Index i = 0; i < isv.size(); ++i)
    if (isv(i) > kRankCutoff * isv(0)) ++init_rank;
  Matrix q = init_svd.matrixU().leftCols(init_rank);

  for (size_t ci = 1; ci < us.size(); ++ci) {
    const int k = static_cast<int>(q.cols());
    if (k == 0) break;
    Matrix constraint(d * d, k);
    for (int j = 0; j < k; ++j) {
      Eigen::Map<const Matrix> xj(q.col(j).data(), d, d);
      const Matrix r = (particles == 2 ? conjugate_two_particle(us[ci], xj) : conjugate_single(us[ci], xj)) -
                       lambda * Matrix(xj);
      constraint.col(j) = Eigen::Map<const Vector>(r.data(), d * d);
    }
    Eigen::JacobiSVD<Matrix> svd(constraint, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double cut = kRankCutoff * std::max(sv.size() ? sv(0) : 0.0, 1e-300);
    int rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i)
      if (sv(i) > cut) ++rank;
    const int nullity = k - rank;
    if (nullity == 0) return {};
    q = q * svd.matrixV().rightCols(nullity);
  }

  std::vector<Matrix> out;
  for (Eigen::Index j = 0; j < q.cols(); ++j)
    out.emplace_back(Eigen::Map<const Matrix>(q.col(j).data(), d, d));
  return out;
}

}  // namespace

OracleResult brute_force_attractor_space(const Topology& t, int particles) {
  if ((particles == 2 && t.n_sites > kOracle2pMaxSites) ||
      (particles == 1 && t.n_sites > kOracle1pMaxSites))
    throw GuardError("oracle size guard exceeded for " + t.name());

  const int d = particles == 1 ? t.dim1() : t.dim2();
  std::vector<Matrix> us = all_step_unitaries(t);
  // Seed the kernel reduction with the full configuration: its step unitary
  // has the least-degenerate spectrum, which keeps the initial span small.
  std::rotate(us.begin(), us.end() - 1, us.end());
  if (particles == 2)
    for (auto& u : us) u = two_particle_unitary(u);

  OracleResult res;
  const std::array<cxd, 4> lambdas = {cxd(1, 0), cxd(0, 1), cxd(0, -1), cxd(-1, 0)};
  for (cxd lambda : lambdas) {
    auto kernel = common_kernel(us, lambda, d, particles);
    res.dimensions[eigenvalue_key(lambda)] = static_cast<int>(kernel.size());
    res.bases[eigenvalue_key(lambda)] = std::move(kernel);
  }

  // For small two-particle cases, confirm the candidate set is complete: the
  // dense channel matrix must have no unit-modulus eigenvalues away from
  // {1, i, -i, -1}.
  if (particles == 2 && t.n_sites <= 3) {
    const Matrix super = build_superoperator(t, PercolationModel::uniform(t, 0.5), particles);
    Eigen::ComplexEigenSolver<Matrix> es(super, /*computeEigenvectors=*/false);
    double worst = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      const cxd mu = es.eigenvalues()(i);
      if (std::abs(1.0 - std::abs(mu)) >= 1e-8) continue;  // interior of the disc
      double gap = 1e9;
      for (cxd lambda : lambdas) gap = std::min(gap, std::abs(mu - lambda));
      worst = std::max(worst, gap > 1e-8 ? std::abs(1.0 - std::abs(mu)) + gap : 0.0);
    }
    res.spectrum_checked = true;
    res.worst_stray_modulus_gap = worst;
  }
  return res;
}

}  // namespace perqw
