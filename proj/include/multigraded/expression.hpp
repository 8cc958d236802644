#pragma once

#include <string>
#include <string_view>

#include "multigraded/polynomial.hpp"

namespace mg {

/// Parses the polynomial grammar
///
///   expr    := term (('+' | '-') term)*
///   term    := unary ('*' unary)*
///   unary   := ('+' | '-') unary | power
///   power   := primary ('^' integer)?
///   primary := integer ('/' integer)? | identifier | '(' expr ')'
///
/// Identifiers are chart generator names ([A-Za-z_] followed by letters,
/// digits or '_'; UTF-8 bytes are accepted as letters). Whitespace is
/// ignored. Positions in ParseError are reported relative to `line` and
/// `column` so that manifest payloads point into the manifest.
GradedPolynomial parse_polynomial(std::string_view text, const ChartPtr& chart, int line = 1,
                                  int column = 1);

/// Canonical text form; terms in ascending canonical-monomial order, zero
/// renders as "0". parse_polynomial(render(f)) == f.
std::string render(const GradedPolynomial& f);

std::string render_rational(const Rational& q);

}  // namespace mg
