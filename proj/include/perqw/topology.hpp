#ifndef PERQW_TOPOLOGY_HPP
#define PERQW_TOPOLOGY_HPP

#include <string>
#include <utility>
#include <vector>

#include "perqw/types.hpp"

namespace perqw {

enum class Coin : int { L = 0, R = 1 };

/// Finite line or circle of N sites. A line of N sites has N-1 edges
/// e_i = (i, i+1); a circle additionally has the wrap edge e_{N-1} = (N-1, 0).
struct Topology {
  enum class Kind { Line, Circle };

  Kind kind;
  int n_sites;

  Topology(Kind k, int n) : kind(k), n_sites(n) {
    if (n < 2) throw InvalidInput("topology needs at least 2 sites");
  }

  static Topology line(int n) { return Topology(Kind::Line, n); }
  static Topology circle(int n) { return Topology(Kind::Circle, n); }

  int edge_count() const { return kind == Kind::Line ? n_sites - 1 : n_sites; }

  // Edge e_i connects site i to site (i+1) mod N.
  std::pair<int, int> edge(int i) const {
    if (i < 0 || i >= edge_count()) throw InvalidInput("edge index out of range");
    return {i, (i + 1) % n_sites};
  }

  /// Single-particle Hilbert-space dimension 2N.
  int dim1() const { return 2 * n_sites; }
  /// Two-particle dimension (2N)^2.
  int dim2() const { return dim1() * dim1(); }

  bool is_circle() const { return kind == Kind::Circle; }
  bool length_multiple_of_4() const { return n_sites % 4 == 0; }

  std::string name() const {
    return (is_circle() ? "circle" : "line") + std::string("-") + std::to_string(n_sites);
  }

  bool operator==(const Topology& o) const { return kind == o.kind && n_sites == o.n_sites; }
};

// Basis convention: position-major, coin L before R.
inline int flat_index(int site, Coin c) { return 2 * site + static_cast<int>(c); }

// Two-particle index is particle-1-major: (2N)*idx1 + idx2.
inline int flat_index2(const Topology& t, int s1, Coin c1, int s2, Coin c2) {
  return t.dim1() * flat_index(s1, c1) + flat_index(s2, c2);
}

}  // namespace perqw

#endif
