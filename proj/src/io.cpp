#include "perqw/io.hpp"

#include <cstdio>
#include <fstream>

#include <nlohmann/json.hpp>

namespace perqw {

using nlohmann::json;

json operator_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return json{{"dim", m.rows()}, {"rows", std::move(rows)}};
}

Matrix operator_from_json(const json& j) {
  const int d = j.at("dim").get<int>();
  const auto& rows = j.at("rows");
  if (static_cast<int>(rows.size()) != d) throw InvalidInput("operator JSON: row count != dim");
  Matrix m(d, d);
  for (int i = 0; i < d; ++i) {
    if (static_cast<int>(rows[i].size()) != d) throw InvalidInput("operator JSON: ragged rows");
    for (int jj = 0; jj < d; ++jj)
      m(i, jj) = cxd(rows[i][jj][0].get<double>(), rows[i][jj][1].get<double>());
  }
  return m;
}

json basis_to_json(const AttractorBasis& basis) {
  json out = json::array();
  for (const auto& [lambda, ops] : basis.sectors)
    for (const auto& a : ops)
      out.push_back({{"eigenvalue", {lambda.real(), lambda.imag()}},
                     {"provenance", a.provenance},
                     {"operator", operator_to_json(a.op)}});
  return out;
}

cxd parse_complex(const std::string& s) {
  if (s.empty()) throw InvalidInput("empty amplitude");
  // forms: "1.5", "-2j", "0.5+0.5j", "1-0.25j"
  std::string body = s;
  bool has_j = body.back() == 'j' || body.back() == 'J';
  if (!has_j) {
    size_t pos = 0;
    const double re = std::stod(body, &pos);
    if (pos != body.size()) throw InvalidInput("bad amplitude: " + s);
    return {re, 0.0};
  }
  body.pop_back();
  // split at the last +/- that is not an exponent sign and not leading
  size_t split = std::string::npos;
  for (size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      const std::string im = body.empty() || body == "+" || body == "-" ? body + "1" : body;
      return {0.0, std::stod(im)};
    }
    const double re = std::stod(body.substr(0, split));
    std::string im_str = body.substr(split);
    if (im_str == "+" || im_str == "-") im_str += "1";
    return {re, std::stod(im_str)};
  } catch (const std::exception&) {
    throw InvalidInput("bad amplitude: " + s);
  }
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  size_t start = 0;
  while (true) {
    const size_t p = s.find(sep, start);
    out.push_back(s.substr(start, p - start));
    if (p == std::string::npos) break;
    start = p + 1;
  }
  return out;
}

Coin parse_coin(const std::string& s) {
  if (s == "L" || s == "l") return Coin::L;
  if (s == "R" || s == "r") return Coin::R;
  throw InvalidInput("coin must be L or R, got '" + s + "'");
}

}  // namespace

Vector parse_init_state(const std::string& spec, const Topology& t, int particles) {
  if (spec.rfind("bell:", 0) == 0) {
    if (particles != 2) throw InvalidInput("bell: initial states are two-particle");
    const auto sections = split(spec.substr(5), ':');
    const auto amps = split(sections[0], ',');
    if (amps.size() != 4) throw InvalidInput("bell: takes 4 amplitudes a,b,c,d");
    cxd a = parse_complex(amps[0]), b = parse_complex(amps[1]), c = parse_complex(amps[2]),
        d = parse_complex(amps[3]);
    const double n = std::sqrt(std::norm(a) + std::norm(b) + std::norm(c) + std::norm(d));
    if (n == 0.0) throw InvalidInput("bell: zero state");
    int x = 0, y = 0;
    if (sections.size() > 1) {
      const auto xy = split(sections[1], ',');
      if (xy.size() != 2) throw InvalidInput("bell: site suffix is x,y");
      x = std::stoi(xy[0]);
      y = std::stoi(xy[1]);
    }
    return localized_bell_state(t, x, y, BellCoinState(a / n, b / n, c / n, d / n));
  }
  if (spec.rfind("basis:", 0) == 0) {
    const auto f = split(spec.substr(6), ',');
    if (particles == 1) {
      if (f.size() != 2) throw InvalidInput("basis: takes x,c for one particle");
      Vector v = Vector::Zero(t.dim1());
      v(flat_index(std::stoi(f[0]), parse_coin(f[1]))) = 1.0;
      return v;
    }
    if (f.size() != 4) throw InvalidInput("basis: takes x,i,y,j for two particles");
    Vector v = Vector::Zero(t.dim2());
    v(flat_index2(t, std::stoi(f[0]), parse_coin(f[1]), std::stoi(f[2]), parse_coin(f[3]))) = 1.0;
    return v;
  }
  if (particles == 2 && spec.size() == 2) {
    Vector v = Vector::Zero(t.dim2());
    v(flat_index2(t, 0, parse_coin(spec.substr(0, 1)), 0, parse_coin(spec.substr(1, 1)))) = 1.0;
    return v;
  }
  if (particles == 1 && spec.size() == 1) {
    Vector v = Vector::Zero(t.dim1());
    v(flat_index(0, parse_coin(spec))) = 1.0;
    return v;
  }
  throw InvalidInput("unrecognized initial state '" + spec + "'");
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << content;
}

}  // namespace perqw
