#include "sopml/fo_formula.hpp"

#include <algorithm>
#include <stdexcept>

namespace sopml {

struct FoFormula::Node {
  FoOp op;
  std::string name;
  std::string x;
  std::string y;
  std::vector<FoFormula> kids;
};

bool is_binary(FoOp op) { return op == FoOp::And || op == FoOp::Or || op == FoOp::Implies; }

bool is_quantifier(FoOp op) {
  return op == FoOp::ForallInd || op == FoOp::ExistsInd || binds_pred(op);
}

bool binds_pred(FoOp op) { return op == FoOp::ForallPred || op == FoOp::ExistsPred; }

FoFormula FoFormula::rel(std::string x, std::string y) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Rel, {}, std::move(x), std::move(y), {}}));
}

FoFormula FoFormula::eq(std::string x, std::string y) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Eq, {}, std::move(x), std::move(y), {}}));
}

FoFormula FoFormula::pred(std::string p, std::string x) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Pred, std::move(p), std::move(x), {}, {}}));
}

FoFormula FoFormula::verum() {
  static const FoFormula f(std::make_shared<const Node>(Node{FoOp::Verum, {}, {}, {}, {}}));
  return f;
}

FoFormula FoFormula::falsum() {
  static const FoFormula f(std::make_shared<const Node>(Node{FoOp::Falsum, {}, {}, {}, {}}));
  return f;
}

FoFormula FoFormula::neg(FoFormula a) {
  return FoFormula(std::make_shared<const Node>(Node{FoOp::Not, {}, {}, {}, {std::move(a)}}));
}

FoFormula FoFormula::binary(FoOp op, FoFormula a, FoFormula b) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary connective");
  return FoFormula(
      std::make_shared<const Node>(Node{op, {}, {}, {}, {std::move(a), std::move(b)}}));
}

FoFormula FoFormula::quantifier(FoOp op, std::string name, FoFormula body) {
  if (!is_quantifier(op)) throw std::invalid_argument("not a quantifier");
  return FoFormula(
      std::make_shared<const Node>(Node{op, std::move(name), {}, {}, {std::move(body)}}));
}

FoFormula FoFormula::conj(FoFormula a, FoFormula b) {
  return binary(FoOp::And, std::move(a), std::move(b));
}
FoFormula FoFormula::disj(FoFormula a, FoFormula b) {
  return binary(FoOp::Or, std::move(a), std::move(b));
}
FoFormula FoFormula::implies(FoFormula a, FoFormula b) {
  return binary(FoOp::Implies, std::move(a), std::move(b));
}
FoFormula FoFormula::forall_ind(std::string x, FoFormula body) {
  return quantifier(FoOp::ForallInd, std::move(x), std::move(body));
}
FoFormula FoFormula::exists_ind(std::string x, FoFormula body) {
  return quantifier(FoOp::ExistsInd, std::move(x), std::move(body));
}
FoFormula FoFormula::forall_pred(std::string p, FoFormula body) {
  return quantifier(FoOp::ForallPred, std::move(p), std::move(body));
}
FoFormula FoFormula::exists_pred(std::string p, FoFormula body) {
  return quantifier(FoOp::ExistsPred, std::move(p), std::move(body));
}

FoOp FoFormula::op() const { return node_->op; }
const std::string& FoFormula::name() const { return node_->name; }
const std::string& FoFormula::x() const { return node_->x; }
const std::string& FoFormula::y() const { return node_->y; }

const FoFormula& FoFormula::lhs() const {
  if (node_->kids.empty()) throw std::logic_error("first-order node has no children");
  return node_->kids[0];
}

const FoFormula& FoFormula::rhs() const {
  if (node_->kids.size() < 2) throw std::logic_error("first-order node has no right child");
  return node_->kids[1];
}

bool operator==(const FoFormula& a, const FoFormula& b) {
  if (a.node_ == b.node_) return true;
  const auto& s = *a.node_;
  const auto& t = *b.node_;
  return s.op == t.op && s.name == t.name && s.x == t.x && s.y == t.y && s.kids == t.kids;
}

namespace {

struct FoFreeCollector {
  FoSymbols out;
  std::vector<std::string> inds;
  std::vector<std::string> preds;

  static bool has(const std::vector<std::string>& v, const std::string& n) {
    return std::find(v.begin(), v.end(), n) != v.end();
  }

  void ind(const std::string& x) {
    if (!has(inds, x)) out.individuals.insert(x);
  }

  void walk(const FoFormula& f) {
    switch (f.op()) {
      case FoOp::Rel:
      case FoOp::Eq:
        ind(f.x());
        ind(f.y());
        return;
      case FoOp::Pred:
        if (!has(preds, f.name())) out.predicates.insert(f.name());
        ind(f.x());
        return;
      case FoOp::Verum:
      case FoOp::Falsum:
        return;
      case FoOp::ForallInd:
      case FoOp::ExistsInd:
        inds.push_back(f.name());
        walk(f.body());
        inds.pop_back();
        return;
      case FoOp::ForallPred:
      case FoOp::ExistsPred:
        preds.push_back(f.name());
        walk(f.body());
        preds.pop_back();
        return;
      case FoOp::Not:
        walk(f.lhs());
        return;
      default:
        walk(f.lhs());
        walk(f.rhs());
    }
  }
};

}  // namespace

FoSymbols fo_free_symbols(const FoFormula& f) {
  FoFreeCollector c;
  c.walk(f);
  return c.out;
}

bool is_first_order(const FoFormula& f) {
  switch (f.op()) {
    case FoOp::Pred:
    case FoOp::ForallPred:
    case FoOp::ExistsPred:
      return false;
    case FoOp::Rel:
    case FoOp::Eq:
    case FoOp::Verum:
    case FoOp::Falsum:
      return true;
    case FoOp::Not:
    case FoOp::ForallInd:
    case FoOp::ExistsInd:
      return is_first_order(f.lhs());
    default:
      return is_first_order(f.lhs()) && is_first_order(f.rhs());
  }
}

}  // namespace sopml
