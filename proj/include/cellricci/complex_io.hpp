#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "cellricci/complex.hpp"

namespace cellricci {

// Line-oriented text format, one directive per line, '#' starts a comment:
//
//   cell <id> <dim>
//   face <tau-id> <sigma-id> <+1|-1>
//
// Cells may be declared after the faces that mention them. Errors carry the
// offending line number (ParseError).

CellComplex parse_complex(std::string_view text);
CellComplex read_complex(std::istream& in);

/// Canonical serialization: cells by (dim, id), then faces by (tau, sigma).
std::string serialize_complex(const CellComplex& complex);
void write_complex(std::ostream& out, const CellComplex& complex);

}  // namespace cellricci
