#pragma once

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "sopml/formula.hpp"

namespace sopml {

// Why a formula is outside a grammar: the first failing subterm and a stable code.
struct Rejection {
  Formula at;
  std::string code;
  std::string reason;
};

template <typename T>
class Verdict {
 public:
  Verdict(T value) : v_(std::move(value)) {}
  Verdict(Rejection r) : v_(std::move(r)) {}
  bool accepted() const { return v_.index() == 0; }
  explicit operator bool() const { return accepted(); }
  const T& value() const { return std::get<0>(v_); }
  const Rejection& rejection() const { return std::get<1>(v_); }

 private:
  std::variant<T, Rejection> v_;
};

using VarSet = std::set<std::string>;

struct PosNode {
  Formula formula;
};

struct PiaNode {
  enum class Kind { Atom, Box, Conj, OrPos };
  Kind kind;
  Formula formula;
  std::string var{};                        // Atom
  std::shared_ptr<const PiaNode> lhs{};     // Box / Conj / OrPos: the PIA part
  std::shared_ptr<const PiaNode> rhs{};     // Conj
  std::optional<PosNode> pos{};             // OrPos
  bool pos_on_left = true;                // OrPos: POS ∨ PIA as written
};

// Sahl_n antecedent. Quantified is the clause ∀q̄(Sahl_{n-1}(q̄) → PIA(q̄, p̄)).
struct AntecedentNode {
  enum class Kind { BoxedAtom, Bottom, Top, NegPos, Conj, Dia, Quantified };
  Kind kind;
  Formula formula;
  int level = 1;
  int box_depth = 0;                              // BoxedAtom
  std::string var{};                                // BoxedAtom
  std::optional<PosNode> pos{};                     // NegPos
  std::shared_ptr<const AntecedentNode> lhs{};      // Conj, Dia, Quantified (inner antecedent)
  std::shared_ptr<const AntecedentNode> rhs{};      // Conj
  std::vector<std::string> bound{};                 // Quantified: q̄ in prefix order
  std::shared_ptr<const PiaNode> pia{};             // Quantified
};

struct SahlqvistDerivation {
  Formula formula;
  std::vector<std::string> vars;  // p̄ in prefix order
  std::shared_ptr<const AntecedentNode> antecedent;
  PosNode consequent;
  int level = 1;
};

Verdict<PosNode> classify_pos(const Formula& f, const VarSet& vars);
Verdict<std::shared_ptr<const AntecedentNode>> classify_sahl1(const Formula& f, const VarSet& vars);
Verdict<std::shared_ptr<const PiaNode>> classify_pia(const Formula& f, const VarSet& q_vars,
                                                     const VarSet& p_vars);
// Sahl_n antecedent for the least n; the level is stored in the node.
Verdict<std::shared_ptr<const AntecedentNode>> classify_antecedent(const Formula& f,
                                                                   const VarSet& vars);
Verdict<SahlqvistDerivation> classify_sahlqvist(const Formula& f);
// Membership in the Π_n class for a given n.
bool is_sahlqvist_at(const Formula& f, int level);

// Independent re-check of a certificate against its formula.
bool verify_derivation(const SahlqvistDerivation& d);

// Indented outline of a derivation, one grammar clause per line.
std::string describe(const SahlqvistDerivation& d);

}  // namespace sopml
