#include "sopml/fragment.hpp"

#include <algorithm>
#include <sstream>

#include "sopml/syntax.hpp"

namespace sopml {

namespace {

using AntPtr = std::shared_ptr<const AntecedentNode>;
using PiaPtr = std::shared_ptr<const PiaNode>;

constexpr int kUnbounded = -1;

Rejection reject(const Formula& at, std::string code, std::string reason) {
  return Rejection{at, std::move(code), std::move(reason)};
}

std::string quote(const Formula& f) { return "'" + print_formula(f) + "'"; }

Rejection foreign(const Formula& at) {
  return reject(at, "foreign-variable",
                "variable " + quote(at) + " is not in the bunch allowed here");
}

// Maximal prefix of universal propositional quantifiers.
std::pair<std::vector<std::string>, Formula> strip_forall_prop(const Formula& f) {
  std::vector<std::string> names;
  const Formula* cur = &f;
  while (cur->is(Op::ForallProp)) {
    names.push_back(cur->name());
    cur = &cur->body();
  }
  return {names, *cur};
}

std::optional<Rejection> check_binders(const Formula& at, const std::vector<std::string>& names,
                                       const VarSet& context) {
  for (std::size_t k = 0; k < names.size(); ++k) {
    if (std::find(names.begin() + static_cast<long>(k) + 1, names.end(), names[k]) != names.end()) {
      return reject(at, "duplicate-binder", "variable '" + names[k] + "' is bound twice");
    }
    if (context.count(names[k]) > 0) {
      return reject(at, "bunch-overlap",
                    "inner variable '" + names[k] + "' shadows an outer variable");
    }
  }
  return std::nullopt;
}

int level_of(const AntPtr& a) { return a->level; }

Verdict<AntPtr> antecedent(const Formula& f, const VarSet& vars, int max_level) {
  auto node = std::make_shared<AntecedentNode>(AntecedentNode{.kind = AntecedentNode::Kind::Top, .formula = f});
  switch (f.op()) {
    case Op::Prop:
    case Op::Box: {
      const Formula* core = &f;
      int depth = 0;
      while (core->is(Op::Box)) {
        core = &core->lhs();
        ++depth;
      }
      if (!core->is(Op::Prop)) {
        return reject(f, "box-over-non-atom",
                      quote(f) + " is neither a boxed atom nor another antecedent clause");
      }
      if (vars.count(core->name()) == 0) return foreign(*core);
      node->kind = AntecedentNode::Kind::BoxedAtom;
      node->box_depth = depth;
      node->var = core->name();
      return AntPtr(node);
    }
    case Op::Bot:
      node->kind = AntecedentNode::Kind::Bottom;
      return AntPtr(node);
    case Op::Top:
      node->kind = AntecedentNode::Kind::Top;
      return AntPtr(node);
    case Op::Not: {
      auto pos = classify_pos(f.lhs(), vars);
      if (!pos) return pos.rejection();
      node->kind = AntecedentNode::Kind::NegPos;
      node->pos = pos.value();
      return AntPtr(node);
    }
    case Op::And: {
      auto a = antecedent(f.lhs(), vars, max_level);
      if (!a) return a;
      auto b = antecedent(f.rhs(), vars, max_level);
      if (!b) return b;
      node->kind = AntecedentNode::Kind::Conj;
      node->lhs = a.value();
      node->rhs = b.value();
      node->level = std::max(level_of(node->lhs), level_of(node->rhs));
      return AntPtr(node);
    }
    case Op::Dia: {
      auto a = antecedent(f.lhs(), vars, max_level);
      if (!a) return a;
      node->kind = AntecedentNode::Kind::Dia;
      node->lhs = a.value();
      node->level = node->lhs->level;
      return AntPtr(node);
    }
    case Op::ForallProp: {
      if (max_level != kUnbounded && max_level <= 1) {
        return reject(f, "level-exceeded", quote(f) + " needs a higher level of the hierarchy");
      }
      auto [bound, body] = strip_forall_prop(f);
      if (!body.is(Op::Implies)) {
        return reject(f, "not-antecedent",
                      "quantified antecedent " + quote(f) + " is not of the form !q. (A -> B)");
      }
      if (auto r = check_binders(f, bound, vars)) return *r;
      VarSet inner(bound.begin(), bound.end());
      auto a = antecedent(body.lhs(), inner, max_level == kUnbounded ? kUnbounded : max_level - 1);
      if (!a) return a;
      auto pia = classify_pia(body.rhs(), inner, vars);
      if (!pia) return pia.rejection();
      node->kind = AntecedentNode::Kind::Quantified;
      node->bound = bound;
      node->lhs = a.value();
      node->pia = pia.value();
      node->level = node->lhs->level + 1;
      return AntPtr(node);
    }
    default:
      return reject(f, "not-antecedent", quote(f) + " is not a Sahlqvist antecedent");
  }
}

Verdict<SahlqvistDerivation> sahlqvist(const Formula& f, int max_level) {
  auto [vars, body] = strip_forall_prop(f);
  if (!body.is(Op::Implies)) {
    return reject(f, "not-universal-implication",
                  "expected a universally quantified implication !p. (A -> POS)");
  }
  if (auto r = check_binders(f, vars, {})) return *r;
  VarSet var_set(vars.begin(), vars.end());
  for (const auto& p : free_symbols(body).props) {
    if (var_set.count(p) == 0) {
      return reject(f, "unbound-variable", "variable '" + p + "' is not bound by the prefix");
    }
  }
  auto ant = antecedent(body.lhs(), var_set, max_level);
  if (!ant) return ant.rejection();
  auto pos = classify_pos(body.rhs(), var_set);
  if (!pos) return pos.rejection();
  return SahlqvistDerivation{f, vars, ant.value(), pos.value(), ant.value()->level};
}

}  // namespace

Verdict<PosNode> classify_pos(const Formula& f, const VarSet& vars) {
  switch (f.op()) {
    case Op::Prop:
      if (vars.count(f.name()) == 0) return foreign(f);
      return PosNode{f};
    case Op::Bot:
    case Op::Top:
      return PosNode{f};
    case Op::And:
    case Op::Or: {
      auto a = classify_pos(f.lhs(), vars);
      if (!a) return a;
      auto b = classify_pos(f.rhs(), vars);
      if (!b) return b;
      return PosNode{f};
    }
    case Op::Box:
    case Op::Dia: {
      auto a = classify_pos(f.lhs(), vars);
      if (!a) return a;
      return PosNode{f};
    }
    case Op::Not:
      return reject(f, "negation-in-pos", "negation " + quote(f) + " in a positive formula");
    case Op::ForallProp:
    case Op::ExistsProp:
      return reject(f, "quantifier-in-pos",
                    "propositional quantifier " + quote(f) + " in a positive formula");
    default:
      return reject(f, "not-pos", quote(f) + " is not a positive formula");
  }
}

Verdict<AntPtr> classify_sahl1(const Formula& f, const VarSet& vars) {
  return antecedent(f, vars, 1);
}

Verdict<AntPtr> classify_antecedent(const Formula& f, const VarSet& vars) {
  return antecedent(f, vars, kUnbounded);
}

Verdict<PiaPtr> classify_pia(const Formula& f, const VarSet& q_vars, const VarSet& p_vars) {
  auto node = std::make_shared<PiaNode>(PiaNode{.kind = PiaNode::Kind::Atom, .formula = f});
  switch (f.op()) {
    case Op::Prop:
      if (p_vars.count(f.name()) == 0) return foreign(f);
      node->kind = PiaNode::Kind::Atom;
      node->var = f.name();
      return PiaPtr(node);
    case Op::Box: {
      auto a = classify_pia(f.lhs(), q_vars, p_vars);
      if (!a) return a;
      node->kind = PiaNode::Kind::Box;
      node->lhs = a.value();
      return PiaPtr(node);
    }
    case Op::And: {
      auto a = classify_pia(f.lhs(), q_vars, p_vars);
      if (!a) return a;
      auto b = classify_pia(f.rhs(), q_vars, p_vars);
      if (!b) return b;
      node->kind = PiaNode::Kind::Conj;
      node->lhs = a.value();
      node->rhs = b.value();
      return PiaPtr(node);
    }
    case Op::Or: {
      auto pos = classify_pos(f.lhs(), q_vars);
      auto pia = pos ? classify_pia(f.rhs(), q_vars, p_vars) : Verdict<PiaPtr>(pos.rejection());
      if (pia) {
        node->pos_on_left = true;
      } else {
        auto pos2 = classify_pos(f.rhs(), q_vars);
        auto pia2 = pos2 ? classify_pia(f.lhs(), q_vars, p_vars) : Verdict<PiaPtr>(pos2.rejection());
        if (!pia2) return pia.rejection();
        pos = pos2;
        pia = pia2;
        node->pos_on_left = false;
      }
      node->kind = PiaNode::Kind::OrPos;
      node->pos = pos.value();
      node->lhs = pia.value();
      return PiaPtr(node);
    }
    default:
      return reject(f, "not-pia", quote(f) + " is not a PIA formula");
  }
}

Verdict<SahlqvistDerivation> classify_sahlqvist(const Formula& f) {
  return sahlqvist(f, kUnbounded);
}

bool is_sahlqvist_at(const Formula& f, int level) {
  return level >= 1 && sahlqvist(f, level).accepted();
}

// ---------------------------------------------------------------------------
// Verifier. Deliberately shares no code with the classifier above.

namespace {

bool pos_ok(const Formula& f, const VarSet& vars) {
  switch (f.op()) {
    case Op::Prop:
      return vars.count(f.name()) > 0;
    case Op::Bot:
    case Op::Top:
      return true;
    case Op::And:
    case Op::Or:
      return pos_ok(f.lhs(), vars) && pos_ok(f.rhs(), vars);
    case Op::Box:
    case Op::Dia:
      return pos_ok(f.lhs(), vars);
    default:
      return false;
  }
}

bool pia_ok(const PiaNode& n, const Formula& f, const VarSet& q, const VarSet& p) {
  if (!(n.formula == f)) return false;
  switch (n.kind) {
    case PiaNode::Kind::Atom:
      return f.is(Op::Prop) && f.name() == n.var && p.count(n.var) > 0;
    case PiaNode::Kind::Box:
      return f.is(Op::Box) && n.lhs && pia_ok(*n.lhs, f.lhs(), q, p);
    case PiaNode::Kind::Conj:
      return f.is(Op::And) && n.lhs && n.rhs && pia_ok(*n.lhs, f.lhs(), q, p) &&
             pia_ok(*n.rhs, f.rhs(), q, p);
    case PiaNode::Kind::OrPos: {
      if (!f.is(Op::Or) || !n.pos || !n.lhs) return false;
      const Formula& pos_side = n.pos_on_left ? f.lhs() : f.rhs();
      const Formula& pia_side = n.pos_on_left ? f.rhs() : f.lhs();
      return n.pos->formula == pos_side && pos_ok(pos_side, q) && pia_ok(*n.lhs, pia_side, q, p);
    }
  }
  return false;
}

bool ant_ok(const AntecedentNode& n, const Formula& f, const VarSet& vars) {
  if (!(n.formula == f)) return false;
  switch (n.kind) {
    case AntecedentNode::Kind::BoxedAtom: {
      Formula core = f;
      for (int k = 0; k < n.box_depth; ++k) {
        if (!core.is(Op::Box)) return false;
        core = core.lhs();
      }
      return n.level == 1 && core.is(Op::Prop) && core.name() == n.var && vars.count(n.var) > 0;
    }
    case AntecedentNode::Kind::Bottom:
      return n.level == 1 && f.is(Op::Bot);
    case AntecedentNode::Kind::Top:
      return n.level == 1 && f.is(Op::Top);
    case AntecedentNode::Kind::NegPos:
      return n.level == 1 && f.is(Op::Not) && n.pos && n.pos->formula == f.lhs() &&
             pos_ok(f.lhs(), vars);
    case AntecedentNode::Kind::Conj:
      return f.is(Op::And) && n.lhs && n.rhs && ant_ok(*n.lhs, f.lhs(), vars) &&
             ant_ok(*n.rhs, f.rhs(), vars) && n.level == std::max(n.lhs->level, n.rhs->level);
    case AntecedentNode::Kind::Dia:
      return f.is(Op::Dia) && n.lhs && ant_ok(*n.lhs, f.lhs(), vars) && n.level == n.lhs->level;
    case AntecedentNode::Kind::Quantified: {
      if (n.bound.empty() || !n.lhs || !n.pia) return false;
      Formula cur = f;
      for (const auto& q : n.bound) {
        if (!cur.is(Op::ForallProp) || cur.name() != q || vars.count(q) > 0) return false;
        cur = cur.body();
      }
      if (!cur.is(Op::Implies)) return false;
      VarSet inner(n.bound.begin(), n.bound.end());
      if (inner.size() != n.bound.size()) return false;
      return ant_ok(*n.lhs, cur.lhs(), inner) && pia_ok(*n.pia, cur.rhs(), inner, vars) &&
             n.level == n.lhs->level + 1;
    }
  }
  return false;
}

void outline_pos(std::ostringstream& out, const Formula& f, int indent) {
  out << std::string(static_cast<std::size_t>(indent), ' ') << "POS " << print_formula(f) << '\n';
}

void outline_pia(std::ostringstream& out, const PiaNode& n, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (n.kind) {
    case PiaNode::Kind::Atom:
      out << pad << "PIA atom " << n.var << '\n';
      return;
    case PiaNode::Kind::Box:
      out << pad << "PIA box\n";
      outline_pia(out, *n.lhs, indent + 2);
      return;
    case PiaNode::Kind::Conj:
      out << pad << "PIA conjunction\n";
      outline_pia(out, *n.lhs, indent + 2);
      outline_pia(out, *n.rhs, indent + 2);
      return;
    case PiaNode::Kind::OrPos:
      out << pad << "PIA disjunction with POS on the " << (n.pos_on_left ? "left" : "right")
          << '\n';
      outline_pos(out, n.pos->formula, indent + 2);
      outline_pia(out, *n.lhs, indent + 2);
      return;
  }
}

void outline_ant(std::ostringstream& out, const AntecedentNode& n, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  switch (n.kind) {
    case AntecedentNode::Kind::BoxedAtom:
      out << pad << "boxed atom " << n.var << " (depth " << n.box_depth << ")\n";
      return;
    case AntecedentNode::Kind::Bottom:
      out << pad << "false\n";
      return;
    case AntecedentNode::Kind::Top:
      out << pad << "true\n";
      return;
    case AntecedentNode::Kind::NegPos:
      out << pad << "negated POS " << print_formula(n.pos->formula) << '\n';
      return;
    case AntecedentNode::Kind::Conj:
      out << pad << "conjunction (Sahl_" << n.level << ")\n";
      outline_ant(out, *n.lhs, indent + 2);
      outline_ant(out, *n.rhs, indent + 2);
      return;
    case AntecedentNode::Kind::Dia:
      out << pad << "diamond (Sahl_" << n.level << ")\n";
      outline_ant(out, *n.lhs, indent + 2);
      return;
    case AntecedentNode::Kind::Quantified: {
      out << pad << "quantified over";
      for (const auto& q : n.bound) out << ' ' << q;
      out << " (Sahl_" << n.level << ")\n";
      outline_ant(out, *n.lhs, indent + 2);
      outline_pia(out, *n.pia, indent + 2);
      return;
    }
  }
}

}  // namespace

bool verify_derivation(const SahlqvistDerivation& d) {
  if (!d.antecedent) return false;
  Formula cur = d.formula;
  for (const auto& p : d.vars) {
    if (!cur.is(Op::ForallProp) || cur.name() != p) return false;
    cur = cur.body();
  }
  if (!cur.is(Op::Implies)) return false;
  VarSet vars(d.vars.begin(), d.vars.end());
  if (vars.size() != d.vars.size()) return false;
  for (const auto& p : free_symbols(cur).props) {
    if (vars.count(p) == 0) return false;
  }
  return ant_ok(*d.antecedent, cur.lhs(), vars) && d.consequent.formula == cur.rhs() &&
         pos_ok(cur.rhs(), vars) && d.level == d.antecedent->level;
}

std::string describe(const SahlqvistDerivation& d) {
  std::ostringstream out;
  out << "Pi_" << d.level << "-Sahlqvist\n";
  out << "  variables:";
  for (const auto& p : d.vars) out << ' ' << p;
  out << "\n  antecedent\n";
  outline_ant(out, *d.antecedent, 4);
  out << "  consequent\n";
  outline_pos(out, d.consequent.formula, 4);
  return out.str();
}

}  // namespace sopml
