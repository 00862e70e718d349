#include "sopml/first_order.hpp"

#include <cctype>
#include <utility>
#include <vector>

#include "sopml/error.hpp"

namespace sopml {

std::string predicate_name(const std::string& prop) {
  std::string out = prop;
  if (!out.empty()) out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
  return out;
}

StandardTranslation::StandardTranslation(std::set<std::string> reserved)
    : reserved_(std::move(reserved)) {}

std::string StandardTranslation::fresh() {
  while (true) {
    std::string name = "x" + std::to_string(counter_++);
    if (reserved_.count(name) == 0) return name;
  }
}

FoFormula StandardTranslation::formula(const Formula& f, const std::string& x) {
  switch (f.op()) {
    case Op::Prop:
      return FoFormula::pred(predicate_name(f.name()), x);
    case Op::Nom:
      return FoFormula::eq(x, f.name());
    case Op::Bot:
      return FoFormula::falsum();
    case Op::Top:
      return FoFormula::verum();
    case Op::Not:
      return FoFormula::neg(formula(f.lhs(), x));
    case Op::And: {
      FoFormula a = formula(f.lhs(), x);
      return FoFormula::conj(std::move(a), formula(f.rhs(), x));
    }
    case Op::Or: {
      FoFormula a = formula(f.lhs(), x);
      return FoFormula::disj(std::move(a), formula(f.rhs(), x));
    }
    case Op::Implies: {
      FoFormula a = formula(f.lhs(), x);
      return FoFormula::implies(std::move(a), formula(f.rhs(), x));
    }
    case Op::Box:
    case Op::BackBox: {
      std::string y = fresh();
      FoFormula r = f.is(Op::Box) ? FoFormula::rel(x, y) : FoFormula::rel(y, x);
      return FoFormula::forall_ind(y, FoFormula::implies(std::move(r), formula(f.lhs(), y)));
    }
    case Op::Dia:
    case Op::BackDia: {
      std::string y = fresh();
      FoFormula r = f.is(Op::Dia) ? FoFormula::rel(x, y) : FoFormula::rel(y, x);
      return FoFormula::exists_ind(y, FoFormula::conj(std::move(r), formula(f.lhs(), y)));
    }
    case Op::ForallProp:
      return FoFormula::forall_pred(predicate_name(f.name()), formula(f.body(), x));
    case Op::ExistsProp:
      return FoFormula::exists_pred(predicate_name(f.name()), formula(f.body(), x));
    case Op::ForallNom:
      return FoFormula::forall_ind(f.name(), formula(f.body(), x));
    case Op::ExistsNom:
      return FoFormula::exists_ind(f.name(), formula(f.body(), x));
    case Op::L: {
      std::string y = fresh();
      FoFormula a = formula(f.lhs(), y);
      return FoFormula::forall_ind(y, FoFormula::implies(std::move(a), formula(f.rhs(), y)));
    }
  }
  throw InternalFault("unknown formula operator");
}

FoFormula StandardTranslation::complex(const Complex& c) {
  switch (c.kind()) {
    case CKind::Ineq: {
      std::string y = fresh();
      FoFormula a = formula(c.lhs(), y);
      return FoFormula::forall_ind(y, FoFormula::implies(std::move(a), formula(c.rhs(), y)));
    }
    case CKind::Conj: {
      if (c.items().empty()) return FoFormula::verum();
      FoFormula acc = complex(c.item(0));
      for (std::size_t k = 1; k < c.items().size(); ++k) {
        acc = FoFormula::conj(std::move(acc), complex(c.item(k)));
      }
      return acc;
    }
    case CKind::Implies: {
      FoFormula a = complex(c.item(0));
      return FoFormula::implies(std::move(a), complex(c.item(1)));
    }
    case CKind::ForallProp:
      return FoFormula::forall_pred(predicate_name(c.name()), complex(c.body()));
    case CKind::ExistsProp:
      return FoFormula::exists_pred(predicate_name(c.name()), complex(c.body()));
    case CKind::ForallNom:
      return FoFormula::forall_ind(c.name(), complex(c.body()));
    case CKind::ExistsNom:
      return FoFormula::exists_ind(c.name(), complex(c.body()));
  }
  throw InternalFault("unknown complex inequality kind");
}

FoFormula st_formula(const Formula& f, const std::string& x) {
  std::set<std::string> reserved = all_nominals(f);
  if (reserved.count(x) > 0) throw InputError("translation variable '" + x + "' names a nominal");
  reserved.insert(x);
  return StandardTranslation(std::move(reserved)).formula(f, x);
}

FoFormula st_complex(const Complex& c) {
  return StandardTranslation(all_nominals(c)).complex(c);
}

namespace {

// Slot-compiled evaluator; individual slots hold a world index, predicate slots
// a world set.
class FoMachine {
 public:
  struct Node {
    FoOp op;
    int a = -1;
    int b = -1;
    int s = -1;
    int t = -1;
  };

  FoMachine(const KripkeFrame& f, const FoFormula& phi, const FoAssignment& env)
      : frame_(f), all_(f.all()) {
    root_ = compile(phi);
    values_.assign(static_cast<std::size_t>(slots_), 0);
    for (const auto& [name, slot] : free_inds_) {
      auto it = env.individuals.find(name);
      if (it == env.individuals.end()) throw UnassignedSymbol(name);
      if (it->second >= f.size()) throw InputError("individual '" + name + "' names a missing world");
      values_[static_cast<std::size_t>(slot)] = it->second;
    }
    for (const auto& [name, slot] : free_preds_) {
      auto it = env.predicates.find(name);
      if (it == env.predicates.end()) throw UnassignedSymbol(name);
      values_[static_cast<std::size_t>(slot)] = it->second & all_;
    }
  }

  bool run() { return eval(root_); }

 private:
  int lookup(bool ind, const std::string& name) {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->ind == ind && it->name == name) return it->slot;
    }
    auto& table = ind ? free_inds_ : free_preds_;
    for (const auto& [n, s] : table) {
      if (n == name) return s;
    }
    table.emplace_back(name, slots_);
    return slots_++;
  }

  int compile(const FoFormula& f) {
    Node n{f.op()};
    switch (f.op()) {
      case FoOp::Rel:
      case FoOp::Eq:
        n.s = lookup(true, f.x());
        n.t = lookup(true, f.y());
        break;
      case FoOp::Pred:
        n.s = lookup(false, f.name());
        n.t = lookup(true, f.x());
        break;
      case FoOp::Verum:
      case FoOp::Falsum:
        break;
      case FoOp::Not:
        n.a = compile(f.lhs());
        break;
      case FoOp::And:
      case FoOp::Or:
      case FoOp::Implies:
        n.a = compile(f.lhs());
        n.b = compile(f.rhs());
        break;
      default:
        n.s = slots_++;
        scope_.push_back({!binds_pred(f.op()), f.name(), n.s});
        n.a = compile(f.body());
        scope_.pop_back();
    }
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  std::uint64_t& val(int s) { return values_[static_cast<std::size_t>(s)]; }

  bool eval(int idx) {
    const Node& n = nodes_[static_cast<std::size_t>(idx)];
    switch (n.op) {
      case FoOp::Rel:
        return frame_.related(val(n.s), val(n.t));
      case FoOp::Eq:
        return val(n.s) == val(n.t);
      case FoOp::Pred:
        return contains(val(n.s), val(n.t));
      case FoOp::Verum:
        return true;
      case FoOp::Falsum:
        return false;
      case FoOp::Not:
        return !eval(n.a);
      case FoOp::And:
        return eval(n.a) && eval(n.b);
      case FoOp::Or:
        return eval(n.a) || eval(n.b);
      case FoOp::Implies:
        return !eval(n.a) || eval(n.b);
      case FoOp::ForallInd:
      case FoOp::ExistsInd: {
        bool universal = n.op == FoOp::ForallInd;
        std::uint64_t saved = val(n.s);
        bool result = universal;
        for (std::size_t w = 0; w < frame_.size(); ++w) {
          val(n.s) = w;
          if (eval(n.a) != universal) {
            result = !universal;
            break;
          }
        }
        val(n.s) = saved;
        return result;
      }
      case FoOp::ForallPred:
      case FoOp::ExistsPred: {
        bool universal = n.op == FoOp::ForallPred;
        std::uint64_t saved = val(n.s);
        bool result = universal;
        for (WorldSet x = 0;; ++x) {
          val(n.s) = x;
          if (eval(n.a) != universal) {
            result = !universal;
            break;
          }
          if (x == all_) break;
        }
        val(n.s) = saved;
        return result;
      }
    }
    throw InternalFault("unknown first-order operator");
  }

  struct Binding {
    bool ind;
    std::string name;
    int slot;
  };

  const KripkeFrame& frame_;
  WorldSet all_;
  std::vector<Node> nodes_;
  std::vector<Binding> scope_;
  std::vector<std::pair<std::string, int>> free_inds_;
  std::vector<std::pair<std::string, int>> free_preds_;
  std::vector<std::uint64_t> values_;
  int slots_ = 0;
  int root_ = -1;
};

}  // namespace

bool fo_eval(const KripkeFrame& f, const FoFormula& phi, const FoAssignment& env) {
  return FoMachine(f, phi, env).run();
}

EquivalenceReport equiv_on_frames(const FoFormula& a, const FoFormula& b, std::size_t max_size) {
  EquivalenceReport report;
  for_each_frame(max_size, [&](const KripkeFrame& f) {
    ++report.frames_checked;
    if (fo_eval(f, a) != fo_eval(f, b)) {
      report.equivalent = false;
      report.witness = f;
      return false;
    }
    return true;
  });
  return report;
}

Correspondence correspond_full(const Formula& phi) {
  auto v = classify_sahlqvist(phi);
  if (!v) {
    const auto& r = v.rejection();
    throw Rejected(r.code, "not a Sahlqvist formula: " + r.reason);
  }
  AlbaResult reduction = run(v.value());
  if (!is_pure(reduction.output)) throw InternalFault("reduction output is not pure");
  FoFormula sentence = st_complex(reduction.output);
  if (!is_first_order(sentence)) throw InternalFault("translation is not first-order");
  return Correspondence{v.value(), std::move(reduction), std::move(sentence)};
}

FoFormula correspond(const Formula& phi) { return correspond_full(phi).sentence; }

}  // namespace sopml
