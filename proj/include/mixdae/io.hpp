#pragma once

#include <optional>
#include <string>

#include "mixdae/matrix.hpp"
#include "mixdae/msalg.hpp"
#include "mixdae/relax.hpp"

namespace mixdae::io {

// Parses the canonical JSON problem format. Rows all tagged "Q"/"T" load as
// an LM matrix; any "mixed" row makes the whole matrix mixed. Throws
// ErrorKind::ParseError on malformed or inconsistent input.
DaeSystem parse_problem(const std::string &json_text);

// Canonical serialization: keys in schema order, entries in column order,
// degrees ascending. serialize(parse(serialize(d))) == serialize(d).
std::string serialize_problem(const DaeSystem &d);

// Display helpers shared by the text emitter and the fixtures.
std::string deriv_display(const std::string &name, int order);
std::string dummy_display(int column, int deriv); // z{column+1}_{deriv}
std::string var_display(const DaeSystem &d, const msalg::VarRef &v);
std::string rhs_display(const DaeSystem &d, const FormalRhs &rhs);
std::string equation_display(const DaeSystem &d, const msalg::ReducedEquation &eq);
std::string reduced_text(const DaeSystem &d, const msalg::ReducedDae &r);

} // namespace mixdae::io
