#pragma once

#include <iosfwd>
#include <string>
#include <string_view>

#include "sopml/fo_formula.hpp"
#include "sopml/formula.hpp"
#include "sopml/kripke.hpp"

namespace sopml {

// All parsers throw ParseError; printers emit text the matching parser reads back
// to a structurally equal value.
Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

Inequality parse_inequality(std::string_view text);
std::string print_inequality(const Inequality& i);

Complex parse_complex(std::string_view text);
std::string print_complex(const Complex& c);

FoFormula parse_fo(std::string_view text);
std::string print_fo(const FoFormula& f);

// {"worlds": [...], "edges": [[a, b], ...]}; throws InputError.
KripkeFrame parse_frame_json(std::string_view text);
std::string print_frame_json(const KripkeFrame& f);

// Identifier rules shared with the generators: lowercase initial letter, then
// letters, digits or underscores.
bool is_formula_identifier(std::string_view name);
bool is_individual_identifier(std::string_view name);
bool is_predicate_identifier(std::string_view name);

// Concrete syntax, as printed above.
std::ostream& operator<<(std::ostream& out, const Formula& f);
std::ostream& operator<<(std::ostream& out, const Inequality& i);
std::ostream& operator<<(std::ostream& out, const Complex& c);
std::ostream& operator<<(std::ostream& out, const FoFormula& f);

}  // namespace sopml
