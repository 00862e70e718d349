#include "sopml/alba.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <utility>

#include "json.hpp"
#include "sopml/error.hpp"
#include "sopml/syntax.hpp"
#include "driver.hpp"

namespace sopml {

namespace {

struct RuleInfo {
  Rule rule;
  const char* name;
};

constexpr std::array<RuleInfo, 29> kRules = {{
    {Rule::SplNom, "spl-nom"},
    {Rule::SepNom, "sep-nom"},
    {Rule::QuantNom, "quant-nom"},
    {Rule::ApproxNom, "approx-nom"},
    {Rule::ResBox, "res-box"},
    {Rule::ResOr, "res-or"},
    {Rule::ResOrRight, "res-or-right"},
    {Rule::Splitting, "splitting"},
    {Rule::ScopeAnd, "scope-and"},
    {Rule::ScopeImp, "scope-imp"},
    {Rule::ExPQ, "ex-pq"},
    {Rule::ExPI, "ex-pi"},
    {Rule::ExIP, "ex-ip"},
    {Rule::ExJI, "ex-ji"},
    {Rule::SplQuantP, "spl-quant-p"},
    {Rule::SplQuantI, "spl-quant-i"},
    {Rule::Ackermann, "ackermann"},
    {Rule::Packing, "packing"},
    {Rule::ConjFlatten, "conj-flatten"},
    {Rule::ConjComm, "conj-comm"},
    {Rule::TopUnit, "top-unit"},
    {Rule::BotNeg, "bot-neg"},
    {Rule::LNom, "l-nom"},
    {Rule::VacNom, "vac-nom"},
    {Rule::ApproxIneq, "approx-ineq"},
    {Rule::ApproxTop, "approx-top"},
    {Rule::NegImp, "neg-imp"},
    {Rule::NegL, "neg-l"},
    {Rule::Local, "local"},
}};

bool introduces_nominal(Rule r) {
  return r == Rule::ApproxNom || r == Rule::ApproxIneq || r == Rule::ApproxTop;
}

[[noreturn]] void fail(Rule r, const std::string& condition) {
  throw RuleError(std::string(rule_name(r)), condition);
}

const Inequality& need_ineq(Rule r, const Complex& t) {
  if (!t.is(CKind::Ineq)) fail(r, "locus is not an inequality");
  return t.inequality();
}

void need_nominal_lhs(Rule r, const Inequality& i) {
  if (!i.lhs.is(Op::Nom)) fail(r, "left-hand side is not a nominal");
}

void need_rhs(Rule r, const Inequality& i, Op op, const char* what) {
  if (!i.rhs.is(op)) fail(r, std::string("right-hand side is not ") + what);
}

Complex swap_binders(Rule r, const Complex& t, CKind outer, CKind inner) {
  if (!t.is(outer) || !t.body().is(inner)) fail(r, "locus does not match the exchanged binders");
  const Complex& in = t.body();
  return Complex::quantifier(inner, in.name(), Complex::quantifier(outer, t.name(), in.body()));
}

std::vector<Complex> premise_list(Rule r, const Complex& c) {
  std::vector<Complex> out;
  if (c.is(CKind::Ineq)) {
    out.push_back(c);
  } else if (c.is(CKind::Conj)) {
    for (const auto& x : c.items()) {
      if (!x.is(CKind::Ineq)) fail(r, "premises must be inequalities");
      out.push_back(x);
    }
  } else {
    fail(r, "premises must be inequalities");
  }
  return out;
}

Complex conj_or_single(std::vector<Complex> items) {
  if (items.size() == 1) return std::move(items.front());
  return Complex::conj(std::move(items));
}

bool pos_or_absent(Polarity p) { return p == Polarity::Positive || p == Polarity::Absent; }
bool neg_or_absent(Polarity p) { return p == Polarity::Negative || p == Polarity::Absent; }

Complex ackermann(const Complex& t) {
  const Rule r = Rule::Ackermann;
  if (!t.is(CKind::ForallProp)) fail(r, "locus is not a universal propositional quantifier");
  const std::string& q = t.name();
  const Complex& body = t.body();
  std::vector<Complex> premises;
  Complex conclusion = body;
  if (body.is(CKind::Implies)) {
    premises = premise_list(r, body.item(0));
    conclusion = body.item(1);
  }
  std::vector<Complex> conclusions = premise_list(r, conclusion);

  std::vector<Formula> lower;
  std::vector<Complex> residual;
  for (const auto& p : premises) {
    const Inequality& i = p.inequality();
    if (i.rhs.is(Op::Prop) && i.rhs.name() == q && free_symbols(i.lhs).props.count(q) == 0) {
      lower.push_back(i.lhs);
      continue;
    }
    if (!pos_or_absent(polarity(i.lhs, q)) || !neg_or_absent(polarity(i.rhs, q))) {
      fail(r, "premise '" + print_inequality(i) + "' is not positive on the left and negative " +
                  "on the right in " + q);
    }
    residual.push_back(p);
  }
  for (const auto& c : conclusions) {
    const Inequality& i = c.inequality();
    if (!neg_or_absent(polarity(i.lhs, q)) || !pos_or_absent(polarity(i.rhs, q))) {
      fail(r, "conclusion '" + print_inequality(i) + "' is not negative on the left and " +
                  "positive on the right in " + q);
    }
  }
  Formula join = big_or(lower);
  try {
    for (auto& x : residual) x = substitute(x, q, join);
    conclusion = substitute(conclusion, q, join);
  } catch (const CaptureError& e) {
    fail(r, std::string("minimal valuation would be captured: ") + e.what());
  }
  if (residual.empty()) return conclusion;
  return Complex::implies(conj_or_single(std::move(residual)), conclusion);
}

Complex packing(const Complex& t) {
  const Rule r = Rule::Packing;
  std::optional<std::string> binder;
  const Complex* x = &t;
  if (t.is(CKind::ForallNom)) {
    binder = t.name();
    x = &t.body();
  }
  std::vector<Complex> premises;
  const Complex* concl = x;
  if (x->is(CKind::Implies)) {
    premises = premise_list(r, x->item(0));
    concl = &x->item(1);
  } else if (!binder || !x->is(CKind::Ineq)) {
    fail(r, "locus is neither a nominal quantifier nor an implication");
  }
  if (!concl->is(CKind::Ineq)) fail(r, "conclusion is not a single inequality");
  const Inequality& c = concl->inequality();
  if (binder && free_symbols(c.rhs).noms.count(*binder) > 0) {
    fail(r, "packed nominal occurs in the right-hand side");
  }
  std::vector<Formula> parts;
  for (const auto& p : premises) parts.push_back(Formula::l(p.lhs(), p.rhs()));
  parts.push_back(c.lhs);
  Formula lhs = big_and(parts);
  if (binder) lhs = Formula::exists_nom(*binder, lhs);
  return Complex::ineq(lhs, c.rhs);
}

Complex split_quant(Rule r, const Complex& t, CKind binder) {
  std::vector<std::string> names;
  const Complex* cur = &t;
  while (cur->is(binder)) {
    names.push_back(cur->name());
    cur = &cur->body();
  }
  if (binder == CKind::ForallProp && names.empty()) {
    fail(r, "locus is not a universal propositional quantifier");
  }
  auto wrap = [&](Complex c) {
    for (auto it = names.rbegin(); it != names.rend(); ++it) {
      c = Complex::quantifier(binder, *it, std::move(c));
    }
    return c;
  };
  const Complex* consequent = cur->is(CKind::Implies) ? &cur->item(1) : cur;
  if (!consequent->is(CKind::Conj) || consequent->items().size() < 2) {
    fail(r, "consequent is not a meta-conjunction of at least two members");
  }
  std::vector<Complex> out;
  for (const auto& d : consequent->items()) {
    out.push_back(wrap(cur->is(CKind::Implies) ? Complex::implies(cur->item(0), d) : d));
  }
  return Complex::conj(std::move(out));
}

void flatten_into(const Complex& c, std::vector<Complex>& out) {
  for (const auto& x : c.items()) {
    if (x.is(CKind::Conj)) {
      flatten_into(x, out);
    } else {
      out.push_back(x);
    }
  }
}

Formula push_neg_l(const Formula& f, bool& changed) {
  switch (f.op()) {
    case Op::Prop:
    case Op::Nom:
    case Op::Bot:
    case Op::Top:
      return f;
    default:
      break;
  }
  if (f.is(Op::L) && f.lhs().is(Op::Nom) && f.rhs().is(Op::Not)) {
    changed = true;
    return Formula::neg(Formula::l(f.lhs(), push_neg_l(f.rhs().lhs(), changed)));
  }
  if (is_quantifier(f.op())) return Formula::quantifier(f.op(), f.name(), push_neg_l(f.body(), changed));
  if (is_binary(f.op())) {
    return Formula::binary(f.op(), push_neg_l(f.lhs(), changed), push_neg_l(f.rhs(), changed));
  }
  return Formula::unary(f.op(), push_neg_l(f.lhs(), changed));
}

Complex local_rule(const Complex& whole, const Complex& t) {
  const Rule r = Rule::Local;
  std::vector<std::string> bound;
  const Complex* cur = &t;
  while (cur->is(CKind::ForallProp)) {
    bound.push_back(cur->name());
    cur = &cur->body();
  }
  if (!cur->is(CKind::ForallNom)) fail(r, "expected a nominal quantifier under the variable block");
  const std::string& j = cur->name();
  const Complex& imp = cur->body();
  if (!imp.is(CKind::Implies) || !imp.item(0).is(CKind::Ineq)) {
    fail(r, "expected an implication with a single inequality premise");
  }
  const Inequality& prem = imp.item(0).inequality();
  if (!prem.lhs.is(Op::Nom) || prem.lhs.name() != j || !prem.rhs.is(Op::Not)) {
    fail(r, "premise is not of the form j <= ~xi");
  }
  const Complex& rest = imp.item(1);
  Symbols rest_free = free_symbols(rest);
  for (const auto& v : bound) {
    if (rest_free.props.count(v) > 0) fail(r, "variable " + v + " occurs in the conclusion");
  }
  Formula xi = prem.rhs.lhs();
  for (const auto& v : free_symbols(xi).props) {
    if (std::find(bound.begin(), bound.end(), v) == bound.end()) {
      fail(r, "variable " + v + " of xi is not bound by the block");
    }
  }
  if (free_symbols(xi).noms.count(j) > 0) fail(r, "xi mentions the bound nominal");
  Formula closed = xi;
  for (auto it = bound.rbegin(); it != bound.rend(); ++it) closed = Formula::forall_prop(*it, closed);
  FreshSupply supply(all_nominals(whole));
  std::optional<Formula> local;
  try {
    local = local_correspondent(closed, j, supply);
  } catch (const Rejected& e) {
    fail(r, e.what());
  }
  return Complex::forall_nom(j, Complex::implies(Complex::ineq(Formula::nom(j), Formula::neg(*local)), rest));
}

Complex rewrite(const Complex& whole, const Complex& t, Rule r, const std::string& fresh) {
  switch (r) {
    case Rule::SplNom: {
      const auto& i = need_ineq(r, t);
      need_nominal_lhs(r, i);
      need_rhs(r, i, Op::And, "a conjunction");
      return Complex::conj(Complex::ineq(i.lhs, i.rhs.lhs()), Complex::ineq(i.lhs, i.rhs.rhs()));
    }
    case Rule::SepNom: {
      const auto& i = need_ineq(r, t);
      need_nominal_lhs(r, i);
      need_rhs(r, i, Op::Implies, "an implication");
      return Complex::implies(Complex::ineq(i.lhs, i.rhs.lhs()), Complex::ineq(i.lhs, i.rhs.rhs()));
    }
    case Rule::QuantNom: {
      const auto& i = need_ineq(r, t);
      need_nominal_lhs(r, i);
      need_rhs(r, i, Op::ForallProp, "a universal propositional quantifier");
      return Complex::forall_prop(i.rhs.name(), Complex::ineq(i.lhs, i.rhs.body()));
    }
    case Rule::ApproxNom: {
      const auto& i = need_ineq(r, t);
      need_nominal_lhs(r, i);
      need_rhs(r, i, Op::Dia, "a diamond");
      Formula j = Formula::nom(fresh);
      return Complex::exists_nom(
          fresh, Complex::conj(Complex::ineq(j, i.rhs.lhs()), Complex::ineq(i.lhs, Formula::dia(j))));
    }
    case Rule::ResBox: {
      const auto& i = need_ineq(r, t);
      need_rhs(r, i, Op::Box, "a box");
      return Complex::ineq(Formula::back_dia(i.lhs), i.rhs.lhs());
    }
    case Rule::ResOr:
    case Rule::ResOrRight: {
      const auto& i = need_ineq(r, t);
      need_rhs(r, i, Op::Or, "a disjunction");
      const Formula& moved = r == Rule::ResOr ? i.rhs.lhs() : i.rhs.rhs();
      const Formula& kept = r == Rule::ResOr ? i.rhs.rhs() : i.rhs.lhs();
      return Complex::ineq(Formula::conj(i.lhs, Formula::neg(moved)), kept);
    }
    case Rule::Splitting: {
      const auto& i = need_ineq(r, t);
      need_rhs(r, i, Op::And, "a conjunction");
      return Complex::conj(Complex::ineq(i.lhs, i.rhs.lhs()), Complex::ineq(i.lhs, i.rhs.rhs()));
    }
    case Rule::ScopeAnd: {
      if (!t.is(CKind::Conj)) fail(r, "locus is not a meta-conjunction");
      const auto& items = t.items();
      auto it = std::find_if(items.begin(), items.end(),
                             [](const Complex& x) { return x.is(CKind::ExistsNom); });
      if (it == items.end()) fail(r, "no member is a nominal existential");
      const std::string& j = it->name();
      std::vector<Complex> out;
      for (auto k = items.begin(); k != items.end(); ++k) {
        if (k == it) {
          out.push_back(k->body());
        } else {
          if (free_symbols(*k).noms.count(j) > 0) fail(r, "another member has j free");
          out.push_back(*k);
        }
      }
      return Complex::exists_nom(j, Complex::conj(std::move(out)));
    }
    case Rule::ScopeImp: {
      if (!t.is(CKind::Implies) || !t.item(0).is(CKind::ExistsNom)) {
        fail(r, "locus is not an implication with an existential premise");
      }
      const std::string& j = t.item(0).name();
      if (free_symbols(t.item(1)).noms.count(j) > 0) fail(r, "conclusion has j free");
      return Complex::forall_nom(j, Complex::implies(t.item(0).body(), t.item(1)));
    }
    case Rule::ExPQ:
      return swap_binders(r, t, CKind::ForallProp, CKind::ForallProp);
    case Rule::ExPI:
      return swap_binders(r, t, CKind::ForallNom, CKind::ForallProp);
    case Rule::ExIP:
      return swap_binders(r, t, CKind::ForallProp, CKind::ForallNom);
    case Rule::ExJI:
      return swap_binders(r, t, CKind::ForallNom, CKind::ForallNom);
    case Rule::SplQuantP:
      return split_quant(r, t, CKind::ForallProp);
    case Rule::SplQuantI:
      return split_quant(r, t, CKind::ForallNom);
    case Rule::Ackermann:
      return ackermann(t);
    case Rule::Packing:
      return packing(t);
    case Rule::ConjFlatten: {
      if (!t.is(CKind::Conj)) fail(r, "locus is not a meta-conjunction");
      bool nested = std::any_of(t.items().begin(), t.items().end(),
                                [](const Complex& x) { return x.is(CKind::Conj); });
      if (!nested && t.items().size() != 1) fail(r, "nothing to flatten");
      std::vector<Complex> out;
      flatten_into(t, out);
      if (out.size() == 1) return out.front();
      return Complex::conj(std::move(out));
    }
    case Rule::ConjComm: {
      if (!t.is(CKind::Conj) || t.items().size() < 2) fail(r, "fewer than two conjuncts");
      std::vector<Complex> out = t.items();
      std::swap(out[0], out[1]);
      return Complex::conj(std::move(out));
    }
    case Rule::TopUnit: {
      const auto& i = need_ineq(r, t);
      need_rhs(r, i, Op::Top, "true");
      return Complex::truth();
    }
    case Rule::BotNeg: {
      const auto& i = need_ineq(r, t);
      need_rhs(r, i, Op::Bot, "false");
      return Complex::ineq(i.lhs, Formula::neg(Formula::top()));
    }
    case Rule::LNom: {
      const auto& i = need_ineq(r, t);
      need_nominal_lhs(r, i);
      need_rhs(r, i, Op::L, "an l-formula");
      return Complex::ineq(i.rhs.lhs(), i.rhs.rhs());
    }
    case Rule::VacNom: {
      if (!t.is(CKind::ForallNom)) fail(r, "locus is not a universal nominal quantifier");
      if (free_symbols(t.body()).noms.count(t.name()) > 0) fail(r, "quantifier is not vacuous");
      return t.body();
    }
    case Rule::ApproxIneq: {
      const auto& i = need_ineq(r, t);
      Formula k = Formula::nom(fresh);
      return Complex::forall_nom(fresh,
                                 Complex::implies(Complex::ineq(k, i.lhs), Complex::ineq(k, i.rhs)));
    }
    case Rule::ApproxTop: {
      const auto& i = need_ineq(r, t);
      if (!i.lhs.is(Op::Top)) fail(r, "left-hand side is not true");
      return Complex::forall_nom(fresh, Complex::ineq(Formula::nom(fresh), i.rhs));
    }
    case Rule::NegImp: {
      const auto& i = need_ineq(r, t);
      if (!i.rhs.is(Op::Not) || !i.rhs.lhs().is(Op::Implies)) {
        fail(r, "right-hand side is not a negated implication");
      }
      const Formula& imp = i.rhs.lhs();
      return Complex::ineq(i.lhs, Formula::conj(imp.lhs(), Formula::neg(imp.rhs())));
    }
    case Rule::NegL: {
      const auto& i = need_ineq(r, t);
      bool changed = false;
      Formula lhs = push_neg_l(i.lhs, changed);
      Formula rhs = push_neg_l(i.rhs, changed);
      if (!changed) fail(r, "no subformula l(@j, ~a)");
      return Complex::ineq(lhs, rhs);
    }
    case Rule::Local:
      return local_rule(whole, t);
  }
  fail(r, "unknown rule");
}

}  // namespace

std::string_view rule_name(Rule r) {
  for (const auto& info : kRules) {
    if (info.rule == r) return info.name;
  }
  return "?";
}

std::optional<Rule> rule_from_name(std::string_view name) {
  for (const auto& info : kRules) {
    if (name == info.name) return info.rule;
  }
  return std::nullopt;
}

const std::vector<Rule>& all_rules() {
  static const std::vector<Rule> rules = [] {
    std::vector<Rule> out;
    for (const auto& info : kRules) out.push_back(info.rule);
    return out;
  }();
  return rules;
}

Complex apply_rule(const Complex& c, Rule rule, const Path& locus,
                   const std::optional<std::string>& fresh) {
  const Complex* target = nullptr;
  try {
    target = &subterm(c, locus);
  } catch (const std::out_of_range&) {
    fail(rule, "locus does not address a subterm");
  }
  std::string name;
  if (introduces_nominal(rule)) {
    std::set<std::string> used = all_nominals(c);
    if (fresh) {
      if (used.count(*fresh) > 0) fail(rule, "nominal " + *fresh + " is not fresh");
      name = *fresh;
    } else {
      name = fresh_nominal(used);
    }
  }
  return replace_at(c, locus, rewrite(c, *target, rule, name));
}

// ---------------------------------------------------------------------------
// Driver

namespace detail {

Rewriter::Rewriter(Complex initial)
    : state_(std::move(initial)), supply_(all_nominals(state_)) {}

Rewriter::Rewriter(Complex initial, FreshSupply supply)
    : state_(std::move(initial)), supply_(std::move(supply)) {
  supply_.reserve(all_nominals(state_));
}

void Rewriter::apply(Rule r, const Path& p) {
  try {
    apply_checked(r, p);
  } catch (const RuleError& e) {
    throw InternalFault(std::string("driver step failed: ") + e.what());
  }
}

void Rewriter::apply_checked(Rule r, const Path& p) {
  std::optional<std::string> fresh;
  if (introduces_nominal(r)) fresh = supply_.next();
  Complex after = apply_rule(state_, r, p, fresh);
  supply_.reserve(all_nominals(after));
  trace_.push_back(RuleStep{r, p, fresh.value_or(""), state_, after});
  state_ = std::move(after);
}

Path down(Path p, std::size_t n) {
  p.insert(p.end(), n, 0);
  return p;
}

void normalize(Rewriter& rw, Path p) {
  while (true) {
    const Complex& n = rw.at(p);
    if (n.is(CKind::ExistsNom)) {
      p.push_back(0);
      continue;
    }
    if (!n.is(CKind::Conj)) return;
    const auto& items = n.items();
    auto is_exists = [](const Complex& x) { return x.is(CKind::ExistsNom); };
    if (std::any_of(items.begin(), items.end(), is_exists)) {
      rw.apply(Rule::ScopeAnd, p);
      p.push_back(0);
      continue;
    }
    auto is_conj = [](const Complex& x) { return x.is(CKind::Conj); };
    if (std::any_of(items.begin(), items.end(), is_conj) || items.size() == 1) {
      rw.apply(Rule::ConjFlatten, p);
    }
    return;
  }
}

void reduce_pia_at(Rewriter& rw, const Path& at, const PiaNode& d) {
  switch (d.kind) {
    case PiaNode::Kind::Atom:
      return;
    case PiaNode::Kind::Box:
      rw.apply(Rule::ResBox, at);
      reduce_pia_at(rw, at, *d.lhs);
      return;
    case PiaNode::Kind::Conj:
      rw.apply(Rule::Splitting, at);
      reduce_pia_at(rw, child(at, 0), *d.lhs);
      reduce_pia_at(rw, child(at, 1), *d.rhs);
      normalize(rw, at);
      return;
    case PiaNode::Kind::OrPos:
      rw.apply(d.pos_on_left ? Rule::ResOr : Rule::ResOrRight, at);
      reduce_pia_at(rw, at, *d.lhs);
      return;
  }
}

std::size_t eliminate(Rewriter& rw, const Path& at, std::size_t m, bool nominal_binder,
                      const AntecedentNode& ant,
                      const std::function<void(const Path&)>& reduce_consequent, bool checked) {
  Path imp = down(at, m + (nominal_binder ? 1 : 0));
  reduce_ant(rw, child(imp, 0), ant);
  if (reduce_consequent) reduce_consequent(child(imp, 1));
  std::size_t k = 0;
  while (rw.at(child(imp, 0)).is(CKind::ExistsNom)) {
    rw.apply(Rule::ScopeImp, imp);
    imp.push_back(0);
    ++k;
  }
  std::size_t noms = k + (nominal_binder ? 1 : 0);
  for (std::size_t t = 0; t < noms; ++t) {
    for (std::size_t d = m + t; d-- > t;) rw.apply(Rule::ExIP, down(at, d));
  }
  for (std::size_t s = m; s-- > 0;) {
    if (checked) {
      rw.apply_checked(Rule::Ackermann, down(at, noms + s));
    } else {
      rw.apply(Rule::Ackermann, down(at, noms + s));
    }
  }
  return noms;
}

void pack(Rewriter& rw, const Path& at, std::size_t noms) {
  for (std::size_t s = noms; s-- > 0;) rw.apply(Rule::Packing, down(at, s));
  if (noms == 0 && rw.at(at).is(CKind::Implies)) rw.apply(Rule::Packing, at);
}

namespace {

void reduce_quantified(Rewriter& rw, const Path& at, const AntecedentNode& d) {
  const std::size_t m = d.bound.size();
  for (std::size_t k = 0; k < m; ++k) rw.apply(Rule::QuantNom, down(at, k));
  rw.apply(Rule::SepNom, down(at, m));
  std::size_t k = eliminate(rw, at, m, false, *d.lhs,
                            [&](const Path& p) { reduce_pia_at(rw, p, *d.pia); });
  const Complex& body = rw.at(down(at, k));
  const Complex& concl = body.is(CKind::Implies) ? body.item(1) : body;
  if (concl.is(CKind::Conj) && concl.items().size() >= 2) {
    std::size_t n = concl.items().size();
    if (k > 0 || body.is(CKind::Implies)) rw.apply(Rule::SplQuantI, at);
    for (std::size_t t = 0; t < n; ++t) pack(rw, child(at, t), k);
  } else {
    pack(rw, at, k);
  }
}

}  // namespace

void reduce_ant(Rewriter& rw, const Path& at, const AntecedentNode& d) {
  switch (d.kind) {
    case AntecedentNode::Kind::BoxedAtom:
      for (int k = 0; k < d.box_depth; ++k) rw.apply(Rule::ResBox, at);
      return;
    case AntecedentNode::Kind::Top:
      rw.apply(Rule::TopUnit, at);
      return;
    case AntecedentNode::Kind::Bottom:
      rw.apply(Rule::BotNeg, at);
      return;
    case AntecedentNode::Kind::NegPos:
      return;
    case AntecedentNode::Kind::Conj:
      rw.apply(Rule::SplNom, at);
      reduce_ant(rw, child(at, 0), *d.lhs);
      reduce_ant(rw, child(at, 1), *d.rhs);
      normalize(rw, at);
      return;
    case AntecedentNode::Kind::Dia:
      rw.apply(Rule::ApproxNom, at);
      reduce_ant(rw, child(child(at, 0), 0), *d.lhs);
      normalize(rw, at);
      return;
    case AntecedentNode::Kind::Quantified:
      reduce_quantified(rw, at, d);
      return;
  }
}

}  // namespace detail

namespace {

using detail::Rewriter;
using detail::down;
using detail::eliminate;

AlbaResult finish(Rewriter& rw, Complex initial) {
  return AlbaResult{std::move(initial), rw.state(), std::move(rw.trace())};
}

}  // namespace

Complex first_approximation(const SahlqvistDerivation& d) {
  FreshSupply supply(all_nominals(d.formula));
  std::string i0 = supply.next("i", 0);
  Formula i = Formula::nom(i0);
  Complex c = Complex::forall_nom(
      i0, Complex::implies(Complex::ineq(i, d.antecedent->formula),
                           Complex::ineq(i, d.consequent.formula)));
  for (auto it = d.vars.rbegin(); it != d.vars.rend(); ++it) c = Complex::forall_prop(*it, c);
  return c;
}

AlbaResult reduce_antecedent(const std::string& i, const AntecedentNode& d) {
  Complex initial = Complex::ineq(Formula::nom(i), d.formula);
  Rewriter rw(initial);
  reduce_ant(rw, {}, d);
  return finish(rw, initial);
}

AlbaResult reduce_pia(const Formula& psi, const PiaNode& d) {
  Complex initial = Complex::ineq(psi, d.formula);
  Rewriter rw(initial);
  reduce_pia_at(rw, {}, d);
  return finish(rw, initial);
}

AlbaResult reduce_universal(const std::string& i, const AntecedentNode& quantified) {
  if (quantified.kind != AntecedentNode::Kind::Quantified) {
    throw InternalFault("reduce_universal needs a quantified antecedent");
  }
  return reduce_antecedent(i, quantified);
}

AlbaResult run(const SahlqvistDerivation& d) {
  Complex initial = first_approximation(d);
  Rewriter rw(initial);
  eliminate(rw, {}, d.vars.size(), true, *d.antecedent, nullptr);
  return finish(rw, initial);
}

AlbaResult run(const Formula& phi) {
  auto v = classify_sahlqvist(phi);
  if (!v) {
    const auto& r = v.rejection();
    throw Rejected(r.code, "not a Sahlqvist formula: " + r.reason);
  }
  return run(v.value());
}

Complex replay(const Complex& initial, const std::vector<RuleStep>& trace) {
  Complex c = initial;
  for (const auto& step : trace) {
    std::optional<std::string> fresh;
    if (!step.fresh.empty()) fresh = step.fresh;
    c = apply_rule(c, step.rule, step.locus, fresh);
  }
  return c;
}

std::string trace_json(const std::vector<RuleStep>& trace, int indent) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& step : trace) {
    nlohmann::json j;
    j["rule"] = std::string(rule_name(step.rule));
    j["locus"] = step.locus;
    j["before"] = print_complex(step.before);
    j["after"] = print_complex(step.after);
    if (!step.fresh.empty()) j["fresh"] = step.fresh;
    out.push_back(std::move(j));
  }
  return out.dump(indent);
}

Formula local_correspondent(const Formula& closed_xi, const std::string& i, FreshSupply& supply) {
  auto v = classify_sahlqvist(closed_xi);
  if (!v) {
    throw Rejected("local-not-sahlqvist",
                   "'" + print_formula(closed_xi) + "' is not Sahlqvist: " + v.rejection().reason);
  }
  const SahlqvistDerivation& d = v.value();
  Complex initial = Complex::ineq(Formula::nom(i), closed_xi);
  Rewriter rw(initial, supply);
  const std::size_t m = d.vars.size();
  for (std::size_t k = 0; k < m; ++k) rw.apply(Rule::QuantNom, down({}, k));
  rw.apply(Rule::SepNom, down({}, m));
  std::size_t k = eliminate(rw, {}, m, false, *d.antecedent, nullptr);
  const Complex& out = rw.state();
  auto reject = [&] {
    throw Rejected("local-not-single-inequality",
                   "'" + print_formula(closed_xi) + "' does not reduce to a single inequality " +
                       i + " <= LOCAL (it reduces to " + print_complex(out) + ")");
  };
  if (k > 0) reject();
  Formula local = Formula::top();
  const Complex* concl = &out;
  std::vector<Formula> guards;
  if (out.is(CKind::Implies)) {
    for (const auto& p : premise_list(Rule::Local, out.item(0))) {
      if (!p.lhs().is(Op::Nom) || p.lhs().name() != i) reject();
      guards.push_back(p.rhs());
    }
    concl = &out.item(1);
  }
  if (!concl->is(CKind::Ineq) || !concl->lhs().is(Op::Nom) || concl->lhs().name() != i) reject();
  local = concl->rhs();
  if (!guards.empty()) local = Formula::implies(big_and(guards), local);
  if (!is_pure(local)) reject();
  supply = rw.supply();
  return local;
}

}  // namespace sopml
