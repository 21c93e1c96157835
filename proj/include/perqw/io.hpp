#ifndef PERQW_IO_HPP
#define PERQW_IO_HPP

#include <string>

#include <nlohmann/json_fwd.hpp>

#include "perqw/asymptotics.hpp"
#include "perqw/attractors.hpp"
#include "perqw/types.hpp"

namespace perqw {

// Operator JSON form: {"dim": d, "rows": [[[re,im], ...], ...]}, row-major.
nlohmann::json operator_to_json(const Matrix& m);
Matrix operator_from_json(const nlohmann::json& j);

nlohmann::json basis_to_json(const AttractorBasis& basis);

/// Parse one amplitude written as `re`, `imj`, or `re+imj` (e.g. "0.5-0.5j").
cxd parse_complex(const std::string& s);

struct InitSpec {
  bool two_sites = false;
  int x = 0, y = 0;
  Vector coin;  // dim 2 (one particle) or 4 (two particles, LL..RR order)
};

/// Initial-state mini-language:
///   bell:a,b,c,d[:x,y]  two-particle Bell coin amplitudes at sites (x,y), default (0,0)
///   basis:x,i[,y,j]     computational basis ket, i/j in {L,R}
///   LL | LR | RL | RR   two-particle coin shorthand at sites (0,0)
///   L | R               one-particle coin at site 0
Vector parse_init_state(const std::string& spec, const Topology& t, int particles);

std::string format_double(double v);  // 17 significant digits
void write_text_file(const std::string& path, const std::string& content);

}  // namespace perqw

#endif
