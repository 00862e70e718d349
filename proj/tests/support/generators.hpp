#pragma once

// Hand-rolled random generators for property tests. Every generator draws from
// a caller-owned std::mt19937 so each test fixes its own seed.

#include <cstddef>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "reference.hpp"
#include "sopml/alba.hpp"
#include "sopml/fo_formula.hpp"
#include "sopml/formula.hpp"
#include "sopml/kripke.hpp"

namespace gen {

using Rng = std::mt19937;

int uniform(Rng& rng, int lo, int hi);  // inclusive
bool chance(Rng& rng, double p);
template <typename T>
const T& pick(Rng& rng, const std::vector<T>& xs) {
  return xs[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(xs.size()) - 1))];
}

struct FormulaSpec {
  std::vector<std::string> props{"p", "q", "r"};
  std::vector<std::string> noms{"i", "j"};
  int depth = 3;
  int prop_quantifiers = 1;  // at most this many propositional binders
  bool nominal_quantifiers = true;
  bool backward = true;
  bool l = true;
};

sopml::Formula formula(Rng& rng, const FormulaSpec& spec);
// Meta-connectives nested up to `depth`; inequality sides drawn with `spec`.
sopml::Complex complex(Rng& rng, const FormulaSpec& spec, int depth);
sopml::Inequality inequality(Rng& rng, const FormulaSpec& spec);

// Random first-order formula; free individuals come from x, y, z and free
// predicates from P, Q.
sopml::FoFormula fo(Rng& rng, int depth);

sopml::KripkeFrame frame(Rng& rng, std::size_t worlds, double edge_chance = 0.4);
ref::Env env(Rng& rng, std::size_t worlds, const sopml::Symbols& symbols);

struct SahlqvistSpec {
  int level = 2;          // upper bound on n
  int modal_depth = 4;
  int bunch = 3;          // variables per bunch
};

// Random Π_n-Sahlqvist formula with n <= spec.level.
sopml::Formula sahlqvist(Rng& rng, const SahlqvistSpec& spec);

struct Instance {
  sopml::Complex complex;
  sopml::Path locus;
};

// A candidate redex for the rule, possibly inside a context. Some candidates
// violate a side condition; callers keep the ones apply_rule accepts.
Instance rule_candidate(Rng& rng, sopml::Rule rule);

}  // namespace gen
