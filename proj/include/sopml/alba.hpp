#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sopml/formula.hpp"
#include "sopml/fragment.hpp"

namespace sopml {

enum class Rule {
  SplNom,       // i <= a & b            ~>  i <= a && i <= b
  SepNom,       // i <= a -> b           ~>  i <= a => i <= b
  QuantNom,     // i <= !q. a            ~>  !q. i <= a
  ApproxNom,    // i <= <>a              ~>  ?j. (j <= a && i <= <>j)
  ResBox,       // a <= []b              ~>  <^>a <= b
  ResOr,        // a <= b | c            ~>  a & ~b <= c
  ResOrRight,   // a <= c | b            ~>  a & ~b <= c
  Splitting,    // a <= b & c            ~>  a <= b && a <= c
  ScopeAnd,     // ... && ?j. C && ...   ~>  ?j. (... && C && ...)
  ScopeImp,     // (?j. C) => D          ~>  !j. (C => D)
  ExPQ,         // !q. !p. C             ~>  !p. !q. C
  ExPI,         // !@i. !p. C            ~>  !p. !@i. C
  ExIP,         // !p. !@i. C            ~>  !@i. !p. C
  ExJI,         // !@i. !@j. C           ~>  !@j. !@i. C
  SplQuantP,    // !p̄. (C => D1 && D2)   ~>  !p̄. (C => D1) && !p̄. (C => D2)
  SplQuantI,    // same with a nominal block, possibly empty
  Ackermann,    // !q. (psi <= q && ... => ...)  ~>  minimal valuation substituted
  Packing,      // !@i. (a1 <= b1 && ... => a <= b)  ~>  ?@i. (l(a1, b1) & ... & a) <= b
  ConjFlatten,  // nested meta-conjunctions spliced, singletons unwrapped
  ConjComm,     // swaps the first two conjuncts
  TopUnit,      // a <= true             ~>  (&&)
  BotNeg,       // a <= false            ~>  a <= ~true
  LNom,         // i <= l(a, b)          ~>  a <= b
  VacNom,       // !@i. C, i not free    ~>  C
  ApproxIneq,   // a <= b                ~>  !@k. (k <= a => k <= b)
  ApproxTop,    // true <= b             ~>  !@k. k <= b
  NegImp,       // a <= ~(b -> c)        ~>  a <= b & ~c
  NegL,         // l(@j, ~a)             ~>  ~l(@j, a), everywhere in the inequality
  Local,        // !r̄. !@j. (j <= ~xi => C)  ~>  !@j. (j <= ~LOCAL => C)
};

std::string_view rule_name(Rule r);
std::optional<Rule> rule_from_name(std::string_view name);
const std::vector<Rule>& all_rules();

struct RuleStep {
  Rule rule;
  Path locus;
  std::string fresh;  // nominal introduced by the step, if any
  Complex before;
  Complex after;
};

struct AlbaResult {
  Complex initial;
  Complex output;
  std::vector<RuleStep> trace;
};

// Rewrites the subterm at `locus`. Rules introducing a nominal use `fresh` when
// given (it must not occur in c) and fresh_nominal of all nominals in c otherwise.
// Throws RuleError naming the rule and the failed condition.
Complex apply_rule(const Complex& c, Rule rule, const Path& locus,
                   const std::optional<std::string>& fresh = std::nullopt);

// !p̄. !@i0. (i0 <= A => i0 <= POS)
Complex first_approximation(const SahlqvistDerivation& d);

// Standalone reductions; `i` names the nominal on the left of the starting inequality.
AlbaResult reduce_antecedent(const std::string& i, const AntecedentNode& d);
AlbaResult reduce_pia(const Formula& psi, const PiaNode& d);
AlbaResult reduce_universal(const std::string& i, const AntecedentNode& quantified);

// Throws Rejected if the formula is not Π_n-Sahlqvist.
AlbaResult run(const Formula& phi);
AlbaResult run(const SahlqvistDerivation& d);

// Re-applies the steps of a trace starting from `initial`.
Complex replay(const Complex& initial, const std::vector<RuleStep>& trace);

// JSON array of {rule, locus, before, after[, fresh]}.
std::string trace_json(const std::vector<RuleStep>& trace, int indent = -1);

// Local correspondent of !r̄. xi at nominal i: a pure formula L with
// i <= !r̄. xi equivalent to i <= L. Throws Rejected if xi does not reduce to a
// single pure inequality.
Formula local_correspondent(const Formula& closed_xi, const std::string& i,
                            FreshSupply& supply);

}  // namespace sopml
