#pragma once

// Text form of field elements.
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := base ('^' ['-'] int)?
//   base   := int | 's' | 't' | 'z' | '(' expr ')'
//
// In arena R the variable is s and t means s^p; in arena C the variable is
// t.  z is the canonical generator of the constants field (only when that
// field is not prime).  Integers are read mod the characteristic.

#include "galembed/arena.hpp"

#include <string>

namespace galembed {

FieldElement parse_element(const std::string& text, const Arena& arena);

// Canonical rendering, e.g. "2*(s+3)*(s+6)^-1"; parse_element inverts it.
std::string render(const FieldElement& x, const Arena& arena);
std::string render_poly(const Poly& p, const GaloisField& F, char var);
std::string render_constant(GaloisField::Elem c, const GaloisField& F);

}  // namespace galembed
