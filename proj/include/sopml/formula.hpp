#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace sopml {

enum class Op : std::uint8_t {
  Prop,
  Nom,
  Bot,
  Top,
  Not,
  And,
  Or,
  Implies,
  Box,
  Dia,
  BackBox,
  BackDia,
  ForallProp,
  ExistsProp,
  ForallNom,
  ExistsNom,
  L,
};

bool is_binary(Op op);
bool is_unary_modal(Op op);
bool is_quantifier(Op op);
bool binds_prop(Op op);
bool binds_nom(Op op);

// Immutable formula of the expanded language. Copies share structure.
class Formula {
 public:
  static Formula prop(std::string name);
  static Formula nom(std::string name);
  static Formula bot();
  static Formula top();
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula dia(Formula a);
  static Formula back_box(Formula a);
  static Formula back_dia(Formula a);
  static Formula forall_prop(std::string name, Formula body);
  static Formula exists_prop(std::string name, Formula body);
  static Formula forall_nom(std::string name, Formula body);
  static Formula exists_nom(std::string name, Formula body);
  static Formula l(Formula a, Formula b);

  static Formula unary(Op op, Formula a);
  static Formula binary(Op op, Formula a, Formula b);
  static Formula quantifier(Op op, std::string name, Formula body);

  Op op() const;
  // Atom or binder name; empty for other nodes.
  const std::string& name() const;
  // First child: the operand of unary nodes and quantifiers, the left side of binary nodes.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& body() const { return lhs(); }

  bool is(Op op) const { return this->op() == op; }
  std::size_t size() const;
  bool same_node(const Formula& other) const { return node_ == other.node_; }

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

struct Inequality {
  Formula lhs;
  Formula rhs;
  friend bool operator==(const Inequality& a, const Inequality& b) {
    return a.lhs == b.lhs && a.rhs == b.rhs;
  }
};

enum class CKind : std::uint8_t {
  Ineq,
  Conj,
  Implies,
  ForallProp,
  ExistsProp,
  ForallNom,
  ExistsNom,
};

bool is_quantifier(CKind kind);
bool binds_prop(CKind kind);
bool binds_nom(CKind kind);

// Complex inequality. Meta-conjunction is an ordered list; the empty list is the
// true element.
class Complex {
 public:
  static Complex ineq(Formula lhs, Formula rhs);
  static Complex ineq(Inequality i) { return ineq(std::move(i.lhs), std::move(i.rhs)); }
  static Complex conj(std::vector<Complex> items);
  static Complex conj(Complex a, Complex b);
  static Complex implies(Complex a, Complex b);
  static Complex forall_prop(std::string name, Complex body);
  static Complex exists_prop(std::string name, Complex body);
  static Complex forall_nom(std::string name, Complex body);
  static Complex exists_nom(std::string name, Complex body);
  static Complex quantifier(CKind kind, std::string name, Complex body);
  static Complex truth() { return conj(std::vector<Complex>{}); }

  CKind kind() const;
  bool is(CKind kind) const { return this->kind() == kind; }
  const Inequality& inequality() const;
  const Formula& lhs() const { return inequality().lhs; }
  const Formula& rhs() const { return inequality().rhs; }
  // Conj items; the two sides of Implies; the single body of a quantifier.
  const std::vector<Complex>& items() const;
  const Complex& item(std::size_t k) const { return items().at(k); }
  const Complex& body() const { return item(0); }
  const std::string& name() const;

  friend bool operator==(const Complex& a, const Complex& b);
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

 private:
  struct Node;
  explicit Complex(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

// Child indices from the root: Conj item k, Implies side 0/1, quantifier body 0.
using Path = std::vector<std::size_t>;

const Complex& subterm(const Complex& c, const Path& path);
Complex replace_at(const Complex& c, const Path& path, Complex replacement);
Path child(Path path, std::size_t k);

enum class Polarity : std::uint8_t { Absent, Positive, Negative, Both };

Polarity flip(Polarity p);
Polarity join(Polarity a, Polarity b);
const char* polarity_name(Polarity p);

Polarity polarity(const Formula& f, const std::string& p);

bool is_pure(const Formula& f);
bool is_pure(const Complex& c);

struct Symbols {
  std::set<std::string> props;
  std::set<std::string> noms;
  friend bool operator==(const Symbols& a, const Symbols& b) {
    return a.props == b.props && a.noms == b.noms;
  }
};

Symbols free_symbols(const Formula& f);
Symbols free_symbols(const Complex& c);
// Every nominal name occurring free or bound.
std::set<std::string> all_nominals(const Formula& f);
std::set<std::string> all_nominals(const Complex& c);
std::set<std::string> all_props(const Formula& f);
std::set<std::string> all_props(const Complex& c);

// Replaces the free occurrences of p. Throws CaptureError if a binder on the way
// to an occurrence binds a free name of the replacement.
Formula substitute(const Formula& host, const std::string& p, const Formula& replacement);
Complex substitute(const Complex& host, const std::string& p, const Formula& replacement);

std::string fresh_nominal(const std::set<std::string>& used);

// Deterministic name source shared by one rewriting run.
class FreshSupply {
 public:
  FreshSupply() = default;
  explicit FreshSupply(std::set<std::string> used) : used_(std::move(used)) {}
  // Next unused name of the form <stem><n>, n counting from `start`.
  std::string next(const std::string& stem = "j", int start = 1);
  void reserve(const std::string& name) { used_.insert(name); }
  void reserve(const std::set<std::string>& names) { used_.insert(names.begin(), names.end()); }
  bool used(const std::string& name) const { return used_.count(name) > 0; }

 private:
  std::set<std::string> used_;
};

// Left fold of a non-empty list with And / Or; Top / Bot for empty lists.
Formula big_and(const std::vector<Formula>& fs);
Formula big_or(const std::vector<Formula>& fs);

}  // namespace sopml
