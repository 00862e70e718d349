#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sopml/alba.hpp"
#include "sopml/fo_formula.hpp"
#include "sopml/formula.hpp"

namespace sopml {

// Inference rule  |- F(x̄, r̄) -> chi  /  |- G(x̄) -> chi  with r̄ fresh. The
// parameters x̄ are the variables of G plus any listed explicitly; every other
// variable of F is fresh.
struct Pi2Rule {
  enum class Kind { Gabbay, NonXi, General };
  Kind kind;
  Formula F;
  Formula G;
  std::vector<std::string> params;
  std::optional<Formula> xi;  // NonXi only

  static Pi2Rule gabbay();
  static Pi2Rule non_xi(Formula xi);
  static Pi2Rule general(Formula F, Formula G, std::vector<std::string> params = {});

  // Parameter variables in binding order, then the fresh ones.
  std::vector<std::string> parameters() const;
  std::vector<std::string> fresh_variables() const;
};

std::string_view pi2_kind_name(Pi2Rule::Kind k);

// {"kind": "gabbay" | "nonxi" | "pi2", "xi": ..., "F": ..., "G": ..., "params": [...]}.
// Throws InputError or ParseError.
Pi2Rule parse_rule_json(const std::string& text);

// !p̄. !q. (!r̄. l(F, q) -> l(G, q))
Formula rule_to_formula(const Pi2Rule& r);

struct Pi2Result {
  Formula formula;
  AlbaResult reduction;
  FoFormula sentence;
};

// Throws Rejected when F, xi or G fall outside the supported fragment.
Pi2Result rule_correspondent_full(const Pi2Rule& r);
FoFormula rule_correspondent(const Pi2Rule& r);

}  // namespace sopml
