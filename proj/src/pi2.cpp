#include "sopml/pi2.hpp"

#include <algorithm>
#include <set>

#include "driver.hpp"
#include "json.hpp"
#include "sopml/error.hpp"
#include "sopml/first_order.hpp"
#include "sopml/syntax.hpp"

namespace sopml {

using detail::down;
using detail::Rewriter;

Pi2Rule Pi2Rule::gabbay() {
  Formula p = Formula::prop("p");
  return Pi2Rule{Kind::Gabbay, Formula::neg(Formula::implies(p, Formula::dia(p))), Formula::top(),
                 {}, std::nullopt};
}

Pi2Rule Pi2Rule::non_xi(Formula xi) {
  Formula f = Formula::neg(xi);
  return Pi2Rule{Kind::NonXi, f, Formula::top(), {}, std::move(xi)};
}

Pi2Rule Pi2Rule::general(Formula F, Formula G, std::vector<std::string> params) {
  return Pi2Rule{Kind::General, std::move(F), std::move(G), std::move(params), std::nullopt};
}

std::vector<std::string> Pi2Rule::parameters() const {
  std::vector<std::string> out;
  for (const auto& p : params) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  for (const auto& p : free_symbols(G).props) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  }
  return out;
}

std::vector<std::string> Pi2Rule::fresh_variables() const {
  std::vector<std::string> ps = parameters();
  std::vector<std::string> out;
  for (const auto& p : free_symbols(F).props) {
    if (std::find(ps.begin(), ps.end(), p) == ps.end()) out.push_back(p);
  }
  return out;
}

std::string_view pi2_kind_name(Pi2Rule::Kind k) {
  switch (k) {
    case Pi2Rule::Kind::Gabbay:
      return "gabbay";
    case Pi2Rule::Kind::NonXi:
      return "nonxi";
    case Pi2Rule::Kind::General:
      return "pi2";
  }
  return "?";
}

Pi2Rule parse_rule_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed rule JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("rule JSON must be an object");
  auto field = [&](const char* name) -> std::optional<std::string> {
    if (!j.contains(name)) return std::nullopt;
    if (!j[name].is_string()) throw InputError(std::string("rule field '") + name + "' must be a string");
    return j[name].get<std::string>();
  };
  auto kind = field("kind");
  if (!kind) throw InputError("rule JSON needs a \"kind\"");
  std::vector<std::string> params;
  if (j.contains("params")) {
    if (!j["params"].is_array()) throw InputError("rule field 'params' must be an array");
    for (const auto& p : j["params"]) {
      if (!p.is_string() || !is_formula_identifier(p.get<std::string>())) {
        throw InputError("rule parameters must be variable names");
      }
      params.push_back(p.get<std::string>());
    }
  }
  if (*kind == "gabbay") return Pi2Rule::gabbay();
  if (*kind == "nonxi") {
    auto xi = field("xi");
    if (!xi) throw InputError("a nonxi rule needs \"xi\"");
    return Pi2Rule::non_xi(parse_formula(*xi));
  }
  if (*kind == "pi2") {
    auto f = field("F");
    auto g = field("G");
    if (!f || !g) throw InputError("a pi2 rule needs \"F\" and \"G\"");
    return Pi2Rule::general(parse_formula(*f), parse_formula(*g), std::move(params));
  }
  throw InputError("unknown rule kind '" + *kind + "'");
}

namespace {

std::string fresh_prop(const Pi2Rule& r) {
  std::set<std::string> used = all_props(r.F);
  for (const auto& p : all_props(r.G)) used.insert(p);
  used.insert(r.params.begin(), r.params.end());
  if (used.count("q") == 0) return "q";
  for (int n = 1;; ++n) {
    std::string name = "q" + std::to_string(n);
    if (used.count(name) == 0) return name;
  }
}

[[noreturn]] void unsupported(const std::string& code, const std::string& what) {
  throw Rejected(code, "rule outside the supported fragment: " + what);
}

std::shared_ptr<const AntecedentNode> need_antecedent(const Formula& f, const VarSet& vars,
                                                      const char* role) {
  auto v = classify_antecedent(f, vars);
  if (!v) {
    unsupported("rule-" + std::string(role) + "-not-antecedent",
                std::string(role) + " '" + print_formula(f) + "': " + v.rejection().reason);
  }
  return v.value();
}

// Runs a step whose applicability depends on the rule; a failed side condition
// means the rule is unsupported.
void step(Rewriter& rw, Rule rule, const Path& p) {
  try {
    rw.apply_checked(rule, p);
  } catch (const RuleError& e) {
    unsupported("rule-step-failed", e.what());
  }
}

}  // namespace

Formula rule_to_formula(const Pi2Rule& r) {
  const std::string q = fresh_prop(r);
  Formula qf = Formula::prop(q);
  Formula premise = Formula::l(r.F, qf);
  std::vector<std::string> fresh = r.fresh_variables();
  for (auto it = fresh.rbegin(); it != fresh.rend(); ++it) premise = Formula::forall_prop(*it, premise);
  Formula out = Formula::forall_prop(q, Formula::implies(premise, Formula::l(r.G, qf)));
  std::vector<std::string> ps = r.parameters();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) out = Formula::forall_prop(*it, out);
  return out;
}

Pi2Result rule_correspondent_full(const Pi2Rule& r) {
  const std::vector<std::string> ps = r.parameters();
  const std::vector<std::string> rs = r.fresh_variables();
  const std::size_t m = ps.size();
  const std::size_t n = rs.size();
  const std::string q = fresh_prop(r);
  const Formula phi = rule_to_formula(r);

  // !p̄. !q. !@i0. (i0 <= !r̄. l(F, q) => i0 <= l(G, q))
  FreshSupply supply(all_nominals(phi));
  const std::string i0 = supply.next("i", 0);
  const Formula i = Formula::nom(i0);
  const Formula* body = &phi;
  for (std::size_t k = 0; k <= m; ++k) body = &body->body();
  Complex initial = Complex::forall_nom(
      i0, Complex::implies(Complex::ineq(i, body->lhs()), Complex::ineq(i, body->rhs())));
  initial = Complex::forall_prop(q, initial);
  for (auto it = ps.rbegin(); it != ps.rend(); ++it) initial = Complex::forall_prop(*it, initial);

  Rewriter rw(initial, supply);
  const Path imp = down({}, m + 2);
  const Path prem = child(imp, 0);
  for (std::size_t k = 0; k < n; ++k) rw.apply(Rule::QuantNom, down(prem, k));
  rw.apply(Rule::LNom, down(prem, n));
  rw.apply(Rule::LNom, child(imp, 1));
  rw.apply(Rule::VacNom, down({}, m + 1));

  // !r̄. F <= q  becomes  !r̄. !@i1. (i1 <= F => i1 <= q), reduced to Psi <= q.
  const Path block = child(down({}, m + 1), 0);
  rw.apply(Rule::ApproxIneq, down(block, n));
  const Path f_ineq = child(down(block, n + 1), 0);
  if (r.kind == Pi2Rule::Kind::NonXi) {
    step(rw, Rule::Local, block);
    rw.apply(Rule::Packing, block);
    step(rw, Rule::NegL, block);
  } else {
    Formula f = r.F;
    if (f.is(Op::Not) && f.lhs().is(Op::Implies)) {
      rw.apply(Rule::NegImp, f_ineq);
      f = rw.at(f_ineq).rhs();
    }
    VarSet vars(ps.begin(), ps.end());
    vars.insert(rs.begin(), rs.end());
    auto ant = need_antecedent(f, vars, "F");
    std::size_t noms;
    try {
      noms = detail::eliminate(rw, block, n, true, *ant, nullptr, true);
    } catch (const RuleError& e) {
      unsupported("rule-step-failed", e.what());
    }
    detail::pack(rw, block, noms);
  }

  // !q. (Psi <= q => G <= q)  becomes  G <= Psi.
  step(rw, Rule::Ackermann, down({}, m));
  const Path rest = down({}, m);
  if (m > 0) {
    const Inequality last = rw.at(rest).inequality();
    if (last.lhs.is(Op::Top)) {
      rw.apply(Rule::ApproxTop, rest);
      for (std::size_t d = m; d-- > 0;) rw.apply(Rule::ExIP, down({}, d));
      for (std::size_t s = m; s-- > 0;) step(rw, Rule::Ackermann, down({}, 1 + s));
    } else {
      auto g = need_antecedent(last.lhs, VarSet(ps.begin(), ps.end()), "G");
      rw.apply(Rule::ApproxIneq, rest);
      try {
        detail::eliminate(rw, {}, m, true, *g, nullptr, true);
      } catch (const RuleError& e) {
        unsupported("rule-step-failed", e.what());
      }
    }
  }
  if (!is_pure(rw.state())) {
    unsupported("rule-not-pure", "reduction ends in " + print_complex(rw.state()));
  }
  AlbaResult reduction{initial, rw.state(), std::move(rw.trace())};
  FoFormula sentence = st_complex(reduction.output);
  return Pi2Result{phi, std::move(reduction), std::move(sentence)};
}

FoFormula rule_correspondent(const Pi2Rule& r) { return rule_correspondent_full(r).sentence; }

}  // namespace sopml
