#pragma once

// Rewriting state and derivation-directed reduction steps shared by the ALBA
// driver and the Π2-rule driver.

#include <functional>
#include <vector>

#include "sopml/alba.hpp"

namespace sopml::detail {

class Rewriter {
 public:
  explicit Rewriter(Complex initial);
  Rewriter(Complex initial, FreshSupply supply);

  const Complex& state() const { return state_; }
  const Complex& at(const Path& p) const { return subterm(state_, p); }
  std::vector<RuleStep>& trace() { return trace_; }
  FreshSupply& supply() { return supply_; }

  // Applies a step the driver expects to succeed; a RuleError becomes an InternalFault.
  void apply(Rule r, const Path& p);
  // Applies a step whose side conditions depend on the input; RuleError propagates.
  void apply_checked(Rule r, const Path& p);

 private:
  Complex state_;
  FreshSupply supply_;
  std::vector<RuleStep> trace_;
};

Path down(Path p, std::size_t n);

void normalize(Rewriter& rw, Path p);
void reduce_ant(Rewriter& rw, const Path& at, const AntecedentNode& d);
void reduce_pia_at(Rewriter& rw, const Path& at, const PiaNode& d);

// Node at `at`: a block of m universal variables, optionally one universal
// nominal, then (nom <= A => C). Reduces the antecedent, turns its existential
// nominals into universals above the block and eliminates the block with
// Ackermann, innermost variable first. Returns the number of nominal binders
// now heading `at`.
std::size_t eliminate(Rewriter& rw, const Path& at, std::size_t m, bool nominal_binder,
                      const AntecedentNode& ant,
                      const std::function<void(const Path&)>& reduce_consequent,
                      bool checked = false);

// Packs the `noms` nominal binders heading `at` into the left-hand side,
// innermost first.
void pack(Rewriter& rw, const Path& at, std::size_t noms);

}  // namespace sopml::detail
