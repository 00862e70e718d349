#include "sopml/formula.hpp"

#include <algorithm>
#include <stdexcept>

#include "sopml/error.hpp"

namespace sopml {

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t size;
};

bool is_binary(Op op) {
  return op == Op::And || op == Op::Or || op == Op::Implies || op == Op::L;
}

bool is_unary_modal(Op op) {
  return op == Op::Box || op == Op::Dia || op == Op::BackBox || op == Op::BackDia;
}

bool is_quantifier(Op op) { return binds_prop(op) || binds_nom(op); }
bool binds_prop(Op op) { return op == Op::ForallProp || op == Op::ExistsProp; }
bool binds_nom(Op op) { return op == Op::ForallNom || op == Op::ExistsNom; }

Formula Formula::prop(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Prop, std::move(name), {}, 1}));
}

Formula Formula::nom(std::string name) {
  return Formula(std::make_shared<const Node>(Node{Op::Nom, std::move(name), {}, 1}));
}

Formula Formula::bot() {
  static const Formula f(std::make_shared<const Node>(Node{Op::Bot, {}, {}, 1}));
  return f;
}

Formula Formula::top() {
  static const Formula f(std::make_shared<const Node>(Node{Op::Top, {}, {}, 1}));
  return f;
}

Formula Formula::unary(Op op, Formula a) {
  if (op != Op::Not && !is_unary_modal(op)) throw std::invalid_argument("not a unary operator");
  std::size_t size = 1 + a.size();
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(a)}, size}));
}

Formula Formula::binary(Op op, Formula a, Formula b) {
  if (!is_binary(op)) throw std::invalid_argument("not a binary operator");
  std::size_t size = 1 + a.size() + b.size();
  return Formula(std::make_shared<const Node>(Node{op, {}, {std::move(a), std::move(b)}, size}));
}

Formula Formula::quantifier(Op op, std::string name, Formula body) {
  if (!is_quantifier(op)) throw std::invalid_argument("not a quantifier");
  std::size_t size = 1 + body.size();
  return Formula(
      std::make_shared<const Node>(Node{op, std::move(name), {std::move(body)}, size}));
}

Formula Formula::neg(Formula a) { return unary(Op::Not, std::move(a)); }
Formula Formula::conj(Formula a, Formula b) { return binary(Op::And, std::move(a), std::move(b)); }
Formula Formula::disj(Formula a, Formula b) { return binary(Op::Or, std::move(a), std::move(b)); }
Formula Formula::implies(Formula a, Formula b) {
  return binary(Op::Implies, std::move(a), std::move(b));
}
Formula Formula::box(Formula a) { return unary(Op::Box, std::move(a)); }
Formula Formula::dia(Formula a) { return unary(Op::Dia, std::move(a)); }
Formula Formula::back_box(Formula a) { return unary(Op::BackBox, std::move(a)); }
Formula Formula::back_dia(Formula a) { return unary(Op::BackDia, std::move(a)); }
Formula Formula::forall_prop(std::string name, Formula body) {
  return quantifier(Op::ForallProp, std::move(name), std::move(body));
}
Formula Formula::exists_prop(std::string name, Formula body) {
  return quantifier(Op::ExistsProp, std::move(name), std::move(body));
}
Formula Formula::forall_nom(std::string name, Formula body) {
  return quantifier(Op::ForallNom, std::move(name), std::move(body));
}
Formula Formula::exists_nom(std::string name, Formula body) {
  return quantifier(Op::ExistsNom, std::move(name), std::move(body));
}
Formula Formula::l(Formula a, Formula b) { return binary(Op::L, std::move(a), std::move(b)); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::lhs() const {
  if (node_->kids.empty()) throw std::logic_error("formula node has no children");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2) throw std::logic_error("formula node has no right child");
  return node_->kids[1];
}

std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.size != y.size || x.name != y.name) return false;
  for (std::size_t k = 0; k < x.kids.size(); ++k) {
    if (!(x.kids[k] == y.kids[k])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

struct Complex::Node {
  CKind kind;
  std::string name;
  Inequality ineq;
  std::vector<Complex> items;
};

bool is_quantifier(CKind kind) { return binds_prop(kind) || binds_nom(kind); }
bool binds_prop(CKind kind) { return kind == CKind::ForallProp || kind == CKind::ExistsProp; }
bool binds_nom(CKind kind) { return kind == CKind::ForallNom || kind == CKind::ExistsNom; }

namespace {

const Inequality& placeholder_ineq() {
  static const Inequality i{Formula::top(), Formula::top()};
  return i;
}

}  // namespace

Complex Complex::ineq(Formula lhs, Formula rhs) {
  return Complex(std::make_shared<const Node>(
      Node{CKind::Ineq, {}, Inequality{std::move(lhs), std::move(rhs)}, {}}));
}

Complex Complex::conj(std::vector<Complex> items) {
  return Complex(
      std::make_shared<const Node>(Node{CKind::Conj, {}, placeholder_ineq(), std::move(items)}));
}

Complex Complex::conj(Complex a, Complex b) {
  std::vector<Complex> items;
  items.push_back(std::move(a));
  items.push_back(std::move(b));
  return conj(std::move(items));
}

Complex Complex::implies(Complex a, Complex b) {
  std::vector<Complex> items;
  items.push_back(std::move(a));
  items.push_back(std::move(b));
  return Complex(
      std::make_shared<const Node>(Node{CKind::Implies, {}, placeholder_ineq(), std::move(items)}));
}

Complex Complex::quantifier(CKind kind, std::string name, Complex body) {
  if (!is_quantifier(kind)) throw std::invalid_argument("not a quantifier");
  std::vector<Complex> items;
  items.push_back(std::move(body));
  return Complex(std::make_shared<const Node>(
      Node{kind, std::move(name), placeholder_ineq(), std::move(items)}));
}

Complex Complex::forall_prop(std::string name, Complex body) {
  return quantifier(CKind::ForallProp, std::move(name), std::move(body));
}
Complex Complex::exists_prop(std::string name, Complex body) {
  return quantifier(CKind::ExistsProp, std::move(name), std::move(body));
}
Complex Complex::forall_nom(std::string name, Complex body) {
  return quantifier(CKind::ForallNom, std::move(name), std::move(body));
}
Complex Complex::exists_nom(std::string name, Complex body) {
  return quantifier(CKind::ExistsNom, std::move(name), std::move(body));
}

CKind Complex::kind() const { return node_->kind; }

const Inequality& Complex::inequality() const {
  if (node_->kind != CKind::Ineq) throw std::logic_error("complex node is not an inequality");
  return node_->ineq;
}

const std::vector<Complex>& Complex::items() const { return node_->items; }
const std::string& Complex::name() const { return node_->name; }

bool operator==(const Complex& a, const Complex& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.kind != y.kind || x.name != y.name) return false;
  if (x.kind == CKind::Ineq) return x.ineq == y.ineq;
  return x.items == y.items;
}

const Complex& subterm(const Complex& c, const Path& path) {
  const Complex* cur = &c;
  for (std::size_t k : path) {
    if (cur->kind() == CKind::Ineq || k >= cur->items().size()) {
      throw std::out_of_range("path does not address a subterm");
    }
    cur = &cur->items()[k];
  }
  return *cur;
}

namespace {

Complex replace_from(const Complex& c, const Path& path, std::size_t depth, Complex replacement) {
  if (depth == path.size()) return replacement;
  std::size_t k = path[depth];
  if (c.kind() == CKind::Ineq || k >= c.items().size()) {
    throw std::out_of_range("path does not address a subterm");
  }
  Complex sub = replace_from(c.items()[k], path, depth + 1, std::move(replacement));
  switch (c.kind()) {
    case CKind::Conj: {
      std::vector<Complex> items = c.items();
      items[k] = std::move(sub);
      return Complex::conj(std::move(items));
    }
    case CKind::Implies:
      return k == 0 ? Complex::implies(std::move(sub), c.item(1))
                    : Complex::implies(c.item(0), std::move(sub));
    default:
      return Complex::quantifier(c.kind(), c.name(), std::move(sub));
  }
}

}  // namespace

Complex replace_at(const Complex& c, const Path& path, Complex replacement) {
  return replace_from(c, path, 0, std::move(replacement));
}

Path child(Path path, std::size_t k) {
  path.push_back(k);
  return path;
}

// ---------------------------------------------------------------------------

Polarity flip(Polarity p) {
  switch (p) {
    case Polarity::Positive:
      return Polarity::Negative;
    case Polarity::Negative:
      return Polarity::Positive;
    default:
      return p;
  }
}

Polarity join(Polarity a, Polarity b) {
  if (a == Polarity::Absent) return b;
  if (b == Polarity::Absent || a == b) return a;
  return Polarity::Both;
}

const char* polarity_name(Polarity p) {
  switch (p) {
    case Polarity::Absent:
      return "absent";
    case Polarity::Positive:
      return "positive";
    case Polarity::Negative:
      return "negative";
    case Polarity::Both:
      return "both";
  }
  return "?";
}

namespace {

Polarity polarity_in(const Formula& f, const std::string& p, bool negated) {
  switch (f.op()) {
    case Op::Prop:
      if (f.name() != p) return Polarity::Absent;
      return negated ? Polarity::Negative : Polarity::Positive;
    case Op::Nom:
    case Op::Bot:
    case Op::Top:
      return Polarity::Absent;
    case Op::Not:
      return polarity_in(f.lhs(), p, !negated);
    case Op::Implies:
    case Op::L:
      return join(polarity_in(f.lhs(), p, !negated), polarity_in(f.rhs(), p, negated));
    case Op::And:
    case Op::Or:
      return join(polarity_in(f.lhs(), p, negated), polarity_in(f.rhs(), p, negated));
    case Op::ForallProp:
    case Op::ExistsProp:
      if (f.name() == p) return Polarity::Absent;
      return polarity_in(f.body(), p, negated);
    default:
      return polarity_in(f.lhs(), p, negated);
  }
}

}  // namespace

Polarity polarity(const Formula& f, const std::string& p) { return polarity_in(f, p, false); }

bool is_pure(const Formula& f) {
  switch (f.op()) {
    case Op::Prop:
    case Op::ForallProp:
    case Op::ExistsProp:
      return false;
    case Op::Nom:
    case Op::Bot:
    case Op::Top:
      return true;
    default:
      if (!is_pure(f.lhs())) return false;
      return !is_binary(f.op()) || is_pure(f.rhs());
  }
}

bool is_pure(const Complex& c) {
  switch (c.kind()) {
    case CKind::Ineq:
      return is_pure(c.lhs()) && is_pure(c.rhs());
    case CKind::ForallProp:
    case CKind::ExistsProp:
      return false;
    default:
      return std::all_of(c.items().begin(), c.items().end(),
                         [](const Complex& x) { return is_pure(x); });
  }
}

namespace {

// Collects free symbols; `bound` holds binders in scope, tagged by sort.
struct FreeCollector {
  Symbols out;
  std::vector<std::pair<bool, std::string>> bound;  // (is_prop, name)

  bool is_bound(bool prop, const std::string& name) const {
    return std::any_of(bound.begin(), bound.end(),
                       [&](const auto& b) { return b.first == prop && b.second == name; });
  }

  void walk(const Formula& f) {
    switch (f.op()) {
      case Op::Prop:
        if (!is_bound(true, f.name())) out.props.insert(f.name());
        return;
      case Op::Nom:
        if (!is_bound(false, f.name())) out.noms.insert(f.name());
        return;
      case Op::Bot:
      case Op::Top:
        return;
      default:
        break;
    }
    if (is_quantifier(f.op())) {
      bound.emplace_back(binds_prop(f.op()), f.name());
      walk(f.body());
      bound.pop_back();
      return;
    }
    walk(f.lhs());
    if (is_binary(f.op())) walk(f.rhs());
  }

  void walk(const Complex& c) {
    if (c.kind() == CKind::Ineq) {
      walk(c.lhs());
      walk(c.rhs());
      return;
    }
    if (is_quantifier(c.kind())) {
      bound.emplace_back(binds_prop(c.kind()), c.name());
      walk(c.body());
      bound.pop_back();
      return;
    }
    for (const auto& x : c.items()) walk(x);
  }
};

struct AllCollector {
  std::set<std::string> props;
  std::set<std::string> noms;

  void walk(const Formula& f) {
    switch (f.op()) {
      case Op::Prop:
        props.insert(f.name());
        return;
      case Op::Nom:
        noms.insert(f.name());
        return;
      case Op::Bot:
      case Op::Top:
        return;
      default:
        break;
    }
    if (binds_prop(f.op())) props.insert(f.name());
    if (binds_nom(f.op())) noms.insert(f.name());
    walk(f.lhs());
    if (is_binary(f.op())) walk(f.rhs());
  }

  void walk(const Complex& c) {
    if (c.kind() == CKind::Ineq) {
      walk(c.lhs());
      walk(c.rhs());
      return;
    }
    if (binds_prop(c.kind())) props.insert(c.name());
    if (binds_nom(c.kind())) noms.insert(c.name());
    for (const auto& x : c.items()) walk(x);
  }
};

}  // namespace

Symbols free_symbols(const Formula& f) {
  FreeCollector c;
  c.walk(f);
  return c.out;
}

Symbols free_symbols(const Complex& c) {
  FreeCollector col;
  col.walk(c);
  return col.out;
}

std::set<std::string> all_nominals(const Formula& f) {
  AllCollector c;
  c.walk(f);
  return c.noms;
}

std::set<std::string> all_nominals(const Complex& c) {
  AllCollector col;
  col.walk(c);
  return col.noms;
}

std::set<std::string> all_props(const Formula& f) {
  AllCollector c;
  c.walk(f);
  return c.props;
}

std::set<std::string> all_props(const Complex& c) {
  AllCollector col;
  col.walk(c);
  return col.props;
}

namespace {

class Substituter {
 public:
  Substituter(const std::string& p, const Formula& replacement)
      : p_(p), replacement_(replacement), free_(free_symbols(replacement)) {}

  Formula run(const Formula& f) {
    switch (f.op()) {
      case Op::Prop:
        if (f.name() != p_) return f;
        if (!capturing_.empty()) throw CaptureError(capturing_.back());
        return replacement_;
      case Op::Nom:
      case Op::Bot:
      case Op::Top:
        return f;
      default:
        break;
    }
    if (is_quantifier(f.op())) {
      bool prop = binds_prop(f.op());
      if (prop && f.name() == p_) return f;
      bool captures = prop ? free_.props.count(f.name()) > 0 : free_.noms.count(f.name()) > 0;
      if (captures) capturing_.push_back(f.name());
      Formula body = run(f.body());
      if (captures) capturing_.pop_back();
      if (body.same_node(f.body())) return f;
      return Formula::quantifier(f.op(), f.name(), std::move(body));
    }
    Formula a = run(f.lhs());
    if (!is_binary(f.op())) {
      if (a.same_node(f.lhs())) return f;
      return Formula::unary(f.op(), std::move(a));
    }
    Formula b = run(f.rhs());
    if (a.same_node(f.lhs()) && b.same_node(f.rhs())) return f;
    return Formula::binary(f.op(), std::move(a), std::move(b));
  }

  Complex run(const Complex& c) {
    switch (c.kind()) {
      case CKind::Ineq:
        return Complex::ineq(run(c.lhs()), run(c.rhs()));
      case CKind::Conj: {
        std::vector<Complex> items;
        items.reserve(c.items().size());
        for (const auto& x : c.items()) items.push_back(run(x));
        return Complex::conj(std::move(items));
      }
      case CKind::Implies:
        return Complex::implies(run(c.item(0)), run(c.item(1)));
      default:
        break;
    }
    bool prop = binds_prop(c.kind());
    if (prop && c.name() == p_) return c;
    bool captures = prop ? free_.props.count(c.name()) > 0 : free_.noms.count(c.name()) > 0;
    if (captures) capturing_.push_back(c.name());
    Complex body = run(c.body());
    if (captures) capturing_.pop_back();
    return Complex::quantifier(c.kind(), c.name(), std::move(body));
  }

 private:
  const std::string& p_;
  const Formula& replacement_;
  Symbols free_;
  std::vector<std::string> capturing_;
};

}  // namespace

Formula substitute(const Formula& host, const std::string& p, const Formula& replacement) {
  return Substituter(p, replacement).run(host);
}

Complex substitute(const Complex& host, const std::string& p, const Formula& replacement) {
  return Substituter(p, replacement).run(host);
}

std::string FreshSupply::next(const std::string& stem, int start) {
  for (int n = start;; ++n) {
    std::string name = stem + std::to_string(n);
    if (used_.insert(name).second) return name;
  }
}

std::string fresh_nominal(const std::set<std::string>& used) {
  FreshSupply supply(used);
  return supply.next();
}

Formula big_and(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::top();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = Formula::conj(acc, fs[k]);
  return acc;
}

Formula big_or(const std::vector<Formula>& fs) {
  if (fs.empty()) return Formula::bot();
  Formula acc = fs.front();
  for (std::size_t k = 1; k < fs.size(); ++k) acc = Formula::disj(acc, fs[k]);
  return acc;
}

}  // namespace sopml
