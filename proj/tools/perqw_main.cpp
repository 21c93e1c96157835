// Command-line front end: attractor construction and verification, exact and
// Monte-Carlo channel evolution, asymptotic-state reports, entanglement
// diagnostics. Every invocation writes a manifest with the resolved flags so
// runs can be replayed exactly.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "perqw/asymptotics.hpp"
#include "perqw/attractors.hpp"
#include "perqw/channel.hpp"
#include "perqw/entanglement.hpp"
#include "perqw/io.hpp"

namespace {

using namespace perqw;
using nlohmann::json;

constexpr const char* kVersion = "perqw 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitGuard = 3;

struct GlobalOpts {
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "json";
};

Topology make_topology(const std::string& kind, int n) {
  if (kind == "line") return Topology::line(n);
  if (kind == "circle") return Topology::circle(n);
  throw InvalidInput("topology must be line or circle");
}

PercolationModel make_model(const Topology& t, double p, const std::string& p_list) {
  if (p_list.empty()) return PercolationModel::uniform(t, p);
  std::vector<double> probs;
  std::stringstream ss(p_list);
  std::string tok;
  while (std::getline(ss, tok, ',')) probs.push_back(std::stod(tok));
  if (static_cast<int>(probs.size()) != t.edge_count())
    throw InvalidInput("--p-list needs one probability per edge");
  return PercolationModel::per_edge(std::move(probs));
}

class ManifestWriter {
 public:
  ManifestWriter(std::string command, const GlobalOpts& g) : command_(std::move(command)), start_(clock_::now()) {
    manifest_["command"] = command_;
    manifest_["seed"] = g.seed;
    manifest_["version"] = kVersion;
  }
  json& flags() { return manifest_["flags"]; }
  json& extra() { return manifest_["results"]; }
  void write(const std::string& dir) {
    manifest_["duration_seconds"] =
        std::chrono::duration<double>(clock_::now() - start_).count();
    std::filesystem::create_directories(dir);
    write_text_file(dir + "/" + command_ + ".manifest.json", manifest_.dump(2) + "\n");
  }

 private:
  using clock_ = std::chrono::steady_clock;
  std::string command_;
  clock_::time_point start_;
  json manifest_;
};

// ---------------------------------------------------------------------------

int cmd_attractors(const GlobalOpts& g, const std::string& topo, int n, const std::string& check,
                   const std::string& out_name) {
  ManifestWriter mf("attractors", g);
  mf.flags() = {{"topology", topo}, {"n", n}, {"check", check}, {"out", out_name}};
  const Topology t = make_topology(topo, n);

  const AttractorBasis basis = orthonormal_basis(t);
  const auto sizes = basis.sector_sizes();
  json sizes_json;
  for (const auto& [k, v] : sizes) sizes_json[k] = v;
  std::cout << "attractor sectors for " << t.name() << ": " << sizes_json.dump() << "\n";

  bool ok = true;
  if (check == "residual" || check == "all") {
    double worst = 0;
    for (const auto& [lambda, ops] : basis.sectors)
      for (const auto& a : ops) worst = std::max(worst, attractor_residual(a.op, lambda, t));
    std::cout << "max attractor residual over configurations: " << format_double(worst) << "\n";
    mf.extra()["max_residual"] = worst;
    ok = ok && worst < kResidualTol;
  }
  if (check == "shift" || check == "all") {
    double worst = 0;
    for (const auto& [lambda, ops] : basis.sectors)
      for (const auto& a : ops) worst = std::max(worst, check_shift_conditions(a.op, t));
    std::cout << "max shift-condition violation: " << format_double(worst) << "\n";
    mf.extra()["max_shift_violation"] = worst;
    ok = ok && worst < kResidualTol;
  }
  if (check == "oracle" || check == "all") {
    const OracleResult oracle = brute_force_attractor_space(t, 2);
    json dims;
    for (const auto& [k, v] : oracle.dimensions)
      if (v > 0) dims[k] = v;
    std::cout << "brute-force dimension table: " << dims.dump() << "\n";
    mf.extra()["oracle_dimensions"] = dims;
    for (const auto& [k, v] : oracle.dimensions) {
      const int analytic = sizes.count(k) ? sizes.at(k) : 0;
      if (analytic != v) {
        std::cout << "MISMATCH at eigenvalue " << k << ": analytic " << analytic << " vs oracle " << v << "\n";
        ok = false;
      }
    }
    if (oracle.spectrum_checked) {
      std::cout << "dense spectrum check: stray unit-modulus gap " << format_double(oracle.worst_stray_modulus_gap)
                << "\n";
      ok = ok && oracle.worst_stray_modulus_gap < 1e-8;
    }
  }

  std::filesystem::create_directories(g.out_dir);
  write_text_file(g.out_dir + "/" + out_name, basis_to_json(basis).dump() + "\n");
  mf.extra()["basis_file"] = out_name;
  mf.extra()["ok"] = ok;
  mf.write(g.out_dir);
  std::cout << (ok ? "all requested checks passed" : "CHECK FAILURE") << "\n";
  return ok ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------

AttractorBasis basis_for(const Topology& t, int particles) {
  if (particles == 2) return orthonormal_basis(t);
  // One-particle basis from the completeness oracle (orthonormal kernels).
  const OracleResult oracle = brute_force_attractor_space(t, 1);
  AttractorBasis basis;
  for (const auto& [key, ops] : oracle.bases) {
    const cxd lambda = key == "1" ? cxd(1, 0) : key == "i" ? cxd(0, 1) : key == "-i" ? cxd(0, -1) : cxd(-1, 0);
    std::vector<Attractor> sector;
    for (const auto& op : ops) sector.push_back({op, lambda, "oracle"});
    basis.sectors.emplace_back(lambda, std::move(sector));
  }
  return basis;
}

int cmd_evolve(const GlobalOpts& g, const std::string& topo, int n, int particles, int steps, double p,
               const std::string& p_list, const std::string& init, const std::string& mode,
               std::uint64_t trajectories, const std::string& out_name, bool series) {
  ManifestWriter mf("evolve", g);
  mf.flags() = {{"topology", topo}, {"n", n},       {"particles", particles},
                {"steps", steps},   {"p", p},       {"p_list", p_list},
                {"init", init},     {"mode", mode}, {"trajectories", trajectories},
                {"out", out_name},  {"series", series}};
  const Topology t = make_topology(topo, n);
  const PercolationModel model = make_model(t, p, p_list);
  const Vector psi0 = parse_init_state(init, t, particles);
  const Matrix rho0 = psi0 * psi0.adjoint();

  Matrix rho_t;
  if (mode == "exact") {
    if (!series) {
      rho_t = evolve(rho0, t, model, particles, steps);
    } else {
      const AttractorBasis basis = basis_for(t, particles);
      std::ostringstream csv;
      csv << "t,hs_distance_to_cycle\n";
      long mixing_step = -1;
      rho_t = rho0;
      for (int s = 0; s <= steps; ++s) {
        const double dist = hs_distance(rho_t, project_asymptotic(rho0, basis, s));
        csv << s << "," << format_double(dist) << "\n";
        if (mixing_step < 0 && dist < 1e-6) mixing_step = s;
        if (s < steps) rho_t = apply_channel(rho_t, t, model, particles);
      }
      std::filesystem::create_directories(g.out_dir);
      write_text_file(g.out_dir + "/series.csv", csv.str());
      mf.extra()["empirical_mixing_step"] = mixing_step;  // first step below 1e-6; no threshold attached
      std::cout << "empirical mixing step (HS distance < 1e-6): " << mixing_step << "\n";
    }
  } else if (mode == "mc") {
    rho_t = trajectory_average(psi0, t, model, particles, steps, g.seed, trajectories);
  } else {
    throw InvalidInput("mode must be exact or mc");
  }

  std::filesystem::create_directories(g.out_dir);
  write_text_file(g.out_dir + "/" + out_name, operator_to_json(rho_t).dump() + "\n");
  const DensityCheck chk = check_density_matrix(rho_t);
  mf.extra()["trace_dev"] = chk.trace_dev;
  mf.extra()["hermiticity"] = chk.hermiticity;
  mf.write(g.out_dir);
  std::cout << "wrote " << g.out_dir << "/" << out_name << "\n";
  return chk.ok(1e-9, 1e-9) ? kExitOk : kExitCheckFailure;
}

// ---------------------------------------------------------------------------

int cmd_asymptotic(const GlobalOpts& g, const std::string& topo, int n, const std::string& init,
                   const std::string& phase, const std::string& emit) {
  ManifestWriter mf("asymptotic", g);
  mf.flags() = {{"topology", topo}, {"n", n}, {"init", init}, {"phase", phase}, {"emit", emit}};
  const Topology t = make_topology(topo, n);
  const Vector psi0 = parse_init_state(init, t, 2);
  const Matrix rho0 = psi0 * psi0.adjoint();
  const AttractorBasis basis = orthonormal_basis(t);

  std::vector<int> phases;
  if (phase == "all") phases = {0, 1, 2, 3};
  else phases = {std::stoi(phase)};

  std::filesystem::create_directories(g.out_dir);
  std::ostringstream csv;
  json out_json = json::array();
  if (emit == "positions") csv << "phase,x,y,w\n";
  if (emit == "coins") csv << "phase,row,col,re,im\n";

  for (int k : phases) {
    const Matrix rho = project_asymptotic(rho0, basis, k);
    if (emit == "state") {
      out_json.push_back({{"phase", k}, {"state", operator_to_json(rho)}});
    } else if (emit == "positions") {
      const Eigen::MatrixXd w = position_distribution(rho, t);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
          csv << k << "," << x << "," << y << "," << format_double(w(x, y)) << "\n";
          out_json.push_back({{"phase", k}, {"x", x}, {"y", y}, {"w", w(x, y)}});
        }
    } else if (emit == "coins") {
      const Matrix rc = reduced_coin_state(rho, t);
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
          csv << k << "," << r << "," << c << "," << format_double(rc(r, c).real()) << ","
              << format_double(rc(r, c).imag()) << "\n";
          out_json.push_back({{"phase", k}, {"row", r}, {"col", c}, {"re", rc(r, c).real()}, {"im", rc(r, c).imag()}});
        }
    } else {
      throw InvalidInput("emit must be state, positions or coins");
    }
  }

  const std::string stem = g.out_dir + "/asymptotic_" + emit;
  if (g.format == "csv" && emit != "state") write_text_file(stem + ".csv", csv.str());
  else write_text_file(stem + ".json", out_json.dump(2) + "\n");
  mf.write(g.out_dir);
  std::cout << "wrote " << stem << (g.format == "csv" && emit != "state" ? ".csv" : ".json") << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_entanglement(const GlobalOpts& g, const std::string& input, const std::string& split,
                     const std::string& emit) {
  ManifestWriter mf("entanglement", g);
  mf.flags() = {{"input", input}, {"split", split}, {"emit", emit}};

  std::ifstream f(input);
  if (!f) throw InvalidInput("cannot read " + input);
  json j;
  f >> j;
  Matrix rho = operator_from_json(j);

  int d1 = 0, d2 = 0;
  if (split == "particles") {
    const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rho.rows()))));
    if (d * d != rho.rows()) throw InvalidInput("state dimension is not a perfect square");
    d1 = d2 = d;
  } else if (split == "coins") {
    if (rho.rows() != 4) {
      // reduce a full two-particle state to its coin pair first
      const int d = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rho.rows()))));
      if (d * d != rho.rows() || d % 2 != 0) throw InvalidInput("cannot infer coin split from dimension");
      rho = reduced_coin_state(rho, Topology::line(d / 2));
    }
    d1 = d2 = 2;
  } else {
    throw InvalidInput("split must be coins or particles");
  }

  json out;
  if (emit == "pt-spectrum") {
    const PTSpectrum s = pt_spectrum(rho, d1, d2);
    out = {{"eigenvalues", s.eigenvalues}, {"is_ppt", s.is_ppt}, {"negativity", s.negativity}};
  } else if (emit == "negativity") {
    out = {{"negativity", negativity(rho, d1, d2)}};
  } else if (emit == "concurrence") {
    if (rho.rows() != 4) throw InvalidInput("concurrence needs a two-qubit (coin) state");
    out = {{"concurrence", concurrence(rho)}};
  } else {
    throw InvalidInput("emit must be pt-spectrum, negativity or concurrence");
  }

  std::filesystem::create_directories(g.out_dir);
  write_text_file(g.out_dir + "/entanglement.json", out.dump(2) + "\n");
  std::cout << out.dump(2) << "\n";
  mf.write(g.out_dir);
  return kExitOk;
}

// ---------------------------------------------------------------------------

int cmd_report(const GlobalOpts& g, int figure, const std::string& init, double q, bool check_claims);

// Figure-style data products and the claim-adjudication report.
int cmd_report(const GlobalOpts& g, int figure, const std::string& init, double q, bool check_claims) {
  ManifestWriter mf("report", g);
  mf.flags() = {{"figure", figure}, {"init", init}, {"q", q}, {"check_claims", check_claims}};
  std::filesystem::create_directories(g.out_dir);
  bool ok = true;

  if (figure == 1) {
    // concurrence surface over (b, phi) at fixed q, with the NPT classifier
    std::ostringstream csv;
    csv << "b,phi,concurrence,npt\n";
    const int grid = 50;
    for (int i = 0; i < grid; ++i)
      for (int j = 0; j < grid; ++j) {
        const double b = (i + 0.5) / grid * std::sqrt(std::max(1.0 - q * q, 0.0));
        const double phi = (j + 0.5) / grid * 2.0 * M_PI;
        csv << format_double(b) << "," << format_double(phi) << ","
            << format_double(concurrence_closed_form(b, q, phi)) << "," << (npt_region(b, q, phi) ? 1 : 0)
            << "\n";
      }
    write_text_file(g.out_dir + "/figure1_concurrence.csv", csv.str());
    std::cout << "wrote figure1_concurrence.csv\n";
  }

  if (figure == 2) {
    const Topology t = Topology::line(4);
    const Vector psi0 = parse_init_state(init, t, 2);
    // closed-form cycle needs Bell amplitudes; recover them from the coin part
    // at (0,0), order (LL, LR, RL, RR)
    Vector chi(4);
    chi << psi0(flat_index2(t, 0, Coin::L, 0, Coin::L)), psi0(flat_index2(t, 0, Coin::L, 0, Coin::R)),
        psi0(flat_index2(t, 0, Coin::R, 0, Coin::L)), psi0(flat_index2(t, 0, Coin::R, 0, Coin::R));
    const double s = 1.0 / std::sqrt(2.0);
    const BellCoinState bell(s * (chi(1) + chi(2)), s * (chi(1) - chi(2)), s * (chi(0) + chi(3)),
                             s * (chi(0) - chi(3)));
    const AsymptoticCycle cyc = line4_position_cycle(bell);
    std::ostringstream csv;
    csv << "phase,x,y,w\n";
    for (int k = 0; k < 4; ++k)
      for (int x = 0; x < 4; ++x)
        for (int y = 0; y < 4; ++y)
          csv << k << "," << x << "," << y << "," << format_double(cyc.states[k](x, y).real()) << "\n";
    write_text_file(g.out_dir + "/figure2_positions.csv", csv.str());
    const double odd_gap = max_abs(cyc.states[1] - cyc.states[3]);
    mf.extra()["odd_phase_gap"] = odd_gap;
    std::cout << "wrote figure2_positions.csv (odd-phase gap " << format_double(odd_gap) << ")\n";
  }

  if (figure == 0 && !check_claims) {
    // default bundle: circle steady-state coefficients + PT spectra sweep
    std::ostringstream csv;
    csv << "N,b2,c2,coef1,coef2,coef3,pt_lambda1,pt_lambda2,pt_lambda3\n";
    for (int n : {3, 5, 6, 7}) {
      for (double b2 = 0.0; b2 <= 1.0001; b2 += 0.25)
        for (double c2 = 0.0; b2 + c2 <= 1.0001; c2 += 0.25) {
          const double a = std::sqrt(std::max(1.0 - b2 - c2, 0.0));
          const BellCoinState coin(a, std::sqrt(b2), std::sqrt(c2), 0.0);
          const auto c = circle_steady_coefficients(n, coin);
          const double l1 = (1 - 2 * b2) / (2.0 * n);
          const double l2 = (1 - 2 * c2) / (2.0 * n * (2 * n - 1));
          const double l3 = (n - 1 + 2 * b2 + 2 * n * c2) / (2.0 * n * (2 * n - 1) * (n + 1));
          csv << n << "," << format_double(b2) << "," << format_double(c2) << "," << format_double(c[0]) << ","
              << format_double(c[1]) << "," << format_double(c[2]) << "," << format_double(l1) << ","
              << format_double(l2) << "," << format_double(l3) << "\n";
        }
    }
    write_text_file(g.out_dir + "/circle_steady_sweep.csv", csv.str());

    // length-4 coin-cycle matrices for the requested initial coin
    const Topology t = Topology::line(4);
    const Vector psi0 = parse_init_state(init, t, 2);
    Vector chi(4);
    chi << psi0(flat_index2(t, 0, Coin::L, 0, Coin::L)), psi0(flat_index2(t, 0, Coin::L, 0, Coin::R)),
        psi0(flat_index2(t, 0, Coin::R, 0, Coin::L)), psi0(flat_index2(t, 0, Coin::R, 0, Coin::R));
    const double s = 1.0 / std::sqrt(2.0);
    const BellCoinState bell(s * (chi(1) + chi(2)), s * (chi(1) - chi(2)), s * (chi(0) + chi(3)),
                             s * (chi(0) - chi(3)));
    const AsymptoticCycle cyc = line4_coin_cycle(bell);
    std::ostringstream ccsv;
    ccsv << "phase,row,col,re,im\n";
    for (int k = 0; k < 4; ++k)
      for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
          ccsv << k << "," << r << "," << c << "," << format_double(cyc.states[k](r, c).real()) << ","
               << format_double(cyc.states[k](r, c).imag()) << "\n";
    write_text_file(g.out_dir + "/line4_coin_cycle.csv", ccsv.str());
    std::cout << "wrote circle_steady_sweep.csv, line4_coin_cycle.csv\n";
  }

  if (check_claims) {
    std::ostringstream rep;
    rep << "claim adjudication report (projection oracle vs closed forms)\n";
    rep << "==============================================================\n\n";

    for (int n : {3, 5}) {
      const Topology t = Topology::circle(n);
      const AttractorBasis basis = orthonormal_basis(t);
      const BellCoinState singlet(0, 1, 0, 0);

      // same-site singlet
      const Vector psi_same = localized_bell_state(t, 0, 0, singlet);
      const Matrix rho_same = project_asymptotic(psi_same * psi_same.adjoint(), basis, 0);
      const Matrix closed_same = circle_steady_state(n, singlet, true);
      const double dev_same = max_abs(rho_same - closed_same);
      rep << "circle N=" << n << ", same-site singlet: |oracle - printed c1/c2/c3 form|_max = "
          << format_double(dev_same) << (dev_same < 1e-10 ? "  [OK]" : "  [ASSERTION FAILED]") << "\n";
      ok = ok && dev_same < 1e-10;

      // distinct-site
      const Vector psi_diff = localized_bell_state(t, 0, 1, singlet);
      const Matrix rho_diff = project_asymptotic(psi_diff * psi_diff.adjoint(), basis, 0);
      const Matrix closed_diff = circle_steady_state(n, singlet, false);
      const double dev_diff = max_abs(rho_diff - closed_diff);
      rep << "circle N=" << n << ", distinct-site:     |oracle - printed (2N+1,-1,-1) form|_max = "
          << format_double(dev_diff) << (dev_diff < 1e-10 ? "  [OK]" : "  [ASSERTION FAILED]") << "\n";
      ok = ok && dev_diff < 1e-10;

      // PT minimum eigenvalue vs the lambda1 formula at b=1
      const PTSpectrum sp = pt_spectrum(rho_same, t.dim1(), t.dim1());
      const double l1 = (1.0 - 2.0) / (2.0 * n);
      const double dev_l1 = std::abs(sp.eigenvalues.front() - l1);
      rep << "circle N=" << n << ", PT min eigenvalue: oracle " << format_double(sp.eigenvalues.front())
          << " vs formula (1-2|b|^2)/2N = " << format_double(l1)
          << (dev_l1 < 1e-10 ? "  [OK]" : "  [ASSERTION FAILED]") << "\n";
      ok = ok && dev_l1 < 1e-10;

      // non-asserted prose claims
      rep << "  prose claim 'PT eigenvalues >= 0 for all inputs': " << (sp.is_ppt ? "HOLDS" : "FAILS")
          << " at b=1 (min = " << format_double(sp.eigenvalues.front()) << ")\n";
      const double claim_gap = max_abs(rho_same - rho_diff);
      rep << "  prose claim 'distinct-site state equals the b=1 same-site state': max gap "
          << format_double(claim_gap) << " => " << (claim_gap < 1e-10 ? "HOLDS" : "FAILS") << "\n\n";
    }

    {
      // reduced-coin closed form: printed vs trace-consistent leading term
      const int n = 5;
      const Topology t = Topology::circle(n);
      const AttractorBasis basis = orthonormal_basis(t);
      const BellCoinState coin(std::sqrt(0.3), std::sqrt(0.3), std::sqrt(0.4), 0.0);
      const Vector psi = localized_bell_state(t, 0, 0, coin);
      const Matrix rc = reduced_coin_state(project_asymptotic(psi * psi.adjoint(), basis, 0), t);
      const Matrix closed = circle_reduced_coin_closed_form(n, coin);
      const double b2 = 0.3, c2 = 0.4;
      const double r1_printed = (2.0 * n * n + n - 1) + n * (c2 - b2);
      const double r1_used = (1.0 * n * n + n - 1) + n * (c2 - b2);
      rep << "reduced-coin closed form (circle N=5): |oracle - trace-consistent form|_max = "
          << format_double(max_abs(rc - closed)) << "\n";
      rep << "  printed leading diagonal term gives Tr = "
          << format_double((2 * r1_printed + 2 * n * (n + b2 - c2)) / (2 * (2.0 * n * n + n - 1)))
          << " (trace-consistent term " << format_double(r1_used) << " vs printed " << format_double(r1_printed)
          << ")\n\n";
    }

    {
      // length-4 closed-form cycles vs the projection oracle
      const Topology t = Topology::line(4);
      const AttractorBasis basis = orthonormal_basis(t);
      rep << "length-4 closed-form cycle tables vs projection oracle (|.|_max over phases):\n";
      const std::vector<std::pair<std::string, BellCoinState>> cases = {
          {"psi+ (a=1)", BellCoinState(1, 0, 0, 0)},
          {"psi- (b=1)", BellCoinState(0, 1, 0, 0)},
          {"phi+ (c=1)", BellCoinState(0, 0, 1, 0)},
          {"LL", BellCoinState(0, 0, std::sqrt(0.5), std::sqrt(0.5))},
          {"mixed (b,q,phi)=(.5,.4,1.)", BellCoinState::from_bqphi(0.5, 0.4, 1.0)}};
      for (const auto& [name, coin] : cases) {
        const Vector psi = localized_bell_state(t, 0, 0, coin);
        const Matrix rho0 = psi * psi.adjoint();
        const AsymptoticCycle cc = line4_coin_cycle(coin);
        const AsymptoticCycle pc = line4_position_cycle(coin);
        double dev_c = 0, dev_p = 0;
        for (int k = 0; k < 4; ++k) {
          const Matrix rho = project_asymptotic(rho0, basis, k);
          dev_c = std::max(dev_c, max_abs(reduced_coin_state(rho, t) - cc.states[k]));
          dev_p = std::max(dev_p, max_abs(position_distribution(rho, t).cast<cxd>() - pc.states[k]));
        }
        rep << "  " << name << ": coin-table dev " << format_double(dev_c) << ", position-table dev "
            << format_double(dev_p) << "\n";
      }
      rep << "  (reported, not asserted: the closed-form tables are transcribed verbatim;\n"
             "   the projection, which agrees with direct channel iteration to ~1e-14, is\n"
             "   the authoritative asymptotics. Note the position tables are asymmetric in\n"
             "   (x,y) while any same-site initial state keeps w(x,y) = w(y,x) exactly.)\n";
    }

    write_text_file(g.out_dir + "/check_claims.txt", rep.str());
    std::cout << rep.str();
  }

  mf.extra()["ok"] = ok;
  mf.write(g.out_dir);
  return ok ? kExitOk : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"percolated quantum walk toolkit"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  GlobalOpts g;
  app.add_option("--seed", g.seed, "master seed for stochastic modes");
  app.add_option("--out", g.out_dir, "output directory");
  app.add_option("--format", g.format, "json|csv")->check(CLI::IsMember({"json", "csv"}));

  // attractors
  auto* sc_attr = app.add_subcommand("attractors", "construct and verify the attractor basis");
  std::string topo = "line", check = "all", out_name = "basis.json";
  int n = 4;
  sc_attr->add_option("--topology", topo)->check(CLI::IsMember({"line", "circle"}))->required();
  sc_attr->add_option("--n", n)->required();
  sc_attr->add_option("--check", check)->check(CLI::IsMember({"residual", "shift", "oracle", "all"}));
  sc_attr->add_option("--out-name", out_name, "basis output filename");

  // evolve
  auto* sc_ev = app.add_subcommand("evolve", "exact or Monte-Carlo channel evolution");
  std::string ev_topo = "line", ev_init = "LL", ev_mode = "exact", ev_plist, ev_out = "state.json";
  int ev_n = 4, ev_particles = 2, ev_steps = 1;
  double ev_p = 0.5;
  std::uint64_t ev_traj = 1000;
  bool ev_series = false;
  sc_ev->add_option("--topology", ev_topo)->check(CLI::IsMember({"line", "circle"}))->required();
  sc_ev->add_option("--n", ev_n)->required();
  sc_ev->add_option("--particles", ev_particles)->check(CLI::IsMember({1, 2}));
  sc_ev->add_option("--steps", ev_steps)->required();
  sc_ev->add_option("--p", ev_p, "uniform break probability");
  sc_ev->add_option("--p-list", ev_plist, "per-edge break probabilities, comma separated");
  sc_ev->add_option("--init", ev_init)->required();
  sc_ev->add_option("--mode", ev_mode)->check(CLI::IsMember({"exact", "mc"}));
  sc_ev->add_option("--trajectories", ev_traj);
  sc_ev->add_option("--out-name", ev_out, "state output filename");
  sc_ev->add_flag("--series", ev_series, "also write per-step HS distance to the asymptotic cycle");

  // asymptotic
  auto* sc_as = app.add_subcommand("asymptotic", "asymptotic states from the attractor projection");
  std::string as_topo = "line", as_init = "LL", as_phase = "all", as_emit = "state";
  int as_n = 4;
  sc_as->add_option("--topology", as_topo)->check(CLI::IsMember({"line", "circle"}))->required();
  sc_as->add_option("--n", as_n)->required();
  sc_as->add_option("--init", as_init)->required();
  sc_as->add_option("--phase", as_phase)->check(CLI::IsMember({"0", "1", "2", "3", "all"}));
  sc_as->add_option("--emit", as_emit)->check(CLI::IsMember({"state", "positions", "coins"}));

  // entanglement
  auto* sc_en = app.add_subcommand("entanglement", "partial-transpose diagnostics of a stored state");
  std::string en_input, en_split = "particles", en_emit = "pt-spectrum";
  sc_en->add_option("--input", en_input)->required();
  sc_en->add_option("--split", en_split)->check(CLI::IsMember({"coins", "particles"}));
  sc_en->add_option("--emit", en_emit)->check(CLI::IsMember({"pt-spectrum", "negativity", "concurrence"}));

  // report
  auto* sc_rep = app.add_subcommand("report", "figure data and the claim-adjudication report");
  int rep_figure = 0;
  std::string rep_init = "LL";
  double rep_q = 0.0;
  bool rep_claims = false;
  sc_rep->add_option("--figure", rep_figure)->check(CLI::IsMember({0, 1, 2}));
  sc_rep->add_option("--init", rep_init);
  sc_rep->add_option("--q", rep_q);
  sc_rep->add_flag("--check-claims", rep_claims);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*sc_attr) return cmd_attractors(g, topo, n, check, out_name);
    if (*sc_ev)
      return cmd_evolve(g, ev_topo, ev_n, ev_particles, ev_steps, ev_p, ev_plist, ev_init, ev_mode, ev_traj,
                        ev_out, ev_series);
    if (*sc_as) return cmd_asymptotic(g, as_topo, as_n, as_init, as_phase, as_emit);
    if (*sc_en) return cmd_entanglement(g, en_input, en_split, en_emit);
    if (*sc_rep) return cmd_report(g, rep_figure, rep_init, rep_q, rep_claims);
  } catch (const GuardError& e) {
    std::cerr << "guard violation: " << e.what() << "\n";
    return kExitGuard;
  } catch (const InvalidInput& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CheckFailure& e) {
    std::cerr << "check failure: " << e.what() << "\n";
    return kExitCheckFailure;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCheckFailure;
  }
  return kExitUsage;
}
