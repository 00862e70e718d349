#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sopml {

enum class FoOp : std::uint8_t {
  Rel,
  Eq,
  Pred,
  Verum,
  Falsum,
  Not,
  And,
  Or,
  Implies,
  ForallInd,
  ExistsInd,
  ForallPred,
  ExistsPred,
};

// First-order formula over one binary relation R, equality and monadic
// predicates, with monadic second-order quantifiers.
class FoFormula {
 public:
  static FoFormula rel(std::string x, std::string y);
  static FoFormula eq(std::string x, std::string y);
  static FoFormula pred(std::string p, std::string x);
  static FoFormula verum();
  static FoFormula falsum();
  static FoFormula neg(FoFormula a);
  static FoFormula conj(FoFormula a, FoFormula b);
  static FoFormula disj(FoFormula a, FoFormula b);
  static FoFormula implies(FoFormula a, FoFormula b);
  static FoFormula forall_ind(std::string x, FoFormula body);
  static FoFormula exists_ind(std::string x, FoFormula body);
  static FoFormula forall_pred(std::string p, FoFormula body);
  static FoFormula exists_pred(std::string p, FoFormula body);
  static FoFormula binary(FoOp op, FoFormula a, FoFormula b);
  static FoFormula quantifier(FoOp op, std::string name, FoFormula body);

  FoOp op() const;
  bool is(FoOp op) const { return this->op() == op; }
  // Predicate symbol of Pred, binder name of quantifiers.
  const std::string& name() const;
  // Argument variables: both of Rel/Eq, the single one of Pred in x().
  const std::string& x() const;
  const std::string& y() const;
  const FoFormula& lhs() const;
  const FoFormula& rhs() const;
  const FoFormula& body() const { return lhs(); }

  friend bool operator==(const FoFormula& a, const FoFormula& b);
  friend bool operator!=(const FoFormula& a, const FoFormula& b) { return !(a == b); }

 private:
  struct Node;
  explicit FoFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

bool is_binary(FoOp op);
bool is_quantifier(FoOp op);
bool binds_pred(FoOp op);

struct FoSymbols {
  std::set<std::string> individuals;
  std::set<std::string> predicates;
};

FoSymbols fo_free_symbols(const FoFormula& f);
// True iff no predicate atom and no predicate quantifier occurs.
bool is_first_order(const FoFormula& f);

}  // namespace sopml
