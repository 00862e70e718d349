#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "sopml/alba.hpp"
#include "sopml/fo_formula.hpp"
#include "sopml/formula.hpp"
#include "sopml/kripke.hpp"

namespace sopml {

// Propositional variable p becomes the predicate P; nominals keep their names as
// individual variables.
std::string predicate_name(const std::string& prop);

// Translation with bound individual variables x0, x1, ... drawn left to right,
// skipping the names in `reserved`.
class StandardTranslation {
 public:
  explicit StandardTranslation(std::set<std::string> reserved = {});
  FoFormula formula(const Formula& f, const std::string& x);
  FoFormula complex(const Complex& c);

 private:
  std::string fresh();
  std::set<std::string> reserved_;
  int counter_ = 0;
};

FoFormula st_formula(const Formula& f, const std::string& x);
FoFormula st_complex(const Complex& c);

struct FoAssignment {
  std::map<std::string, std::size_t> individuals;
  std::map<std::string, WorldSet> predicates;
};

// Throws UnassignedSymbol for free variables without a value.
bool fo_eval(const KripkeFrame& f, const FoFormula& phi, const FoAssignment& env = {});

struct EquivalenceReport {
  bool equivalent = true;
  std::size_t frames_checked = 0;
  std::optional<KripkeFrame> witness;
};

EquivalenceReport equiv_on_frames(const FoFormula& a, const FoFormula& b, std::size_t max_size);

struct Correspondence {
  SahlqvistDerivation derivation;
  AlbaResult reduction;
  FoFormula sentence;
};

// Throws Rejected if phi is not Π_n-Sahlqvist.
Correspondence correspond_full(const Formula& phi);
FoFormula correspond(const Formula& phi);

}  // namespace sopml
