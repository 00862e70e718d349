#include "sopml/syntax.hpp"

#include <cctype>
#include <optional>
#include <ostream>
#include <utility>
#include <vector>

#include "json.hpp"

#include "sopml/error.hpp"

namespace sopml {

namespace {

enum class Tok {
  Arrow,     // ->
  DArrow,    // =>
  Le,        // <=
  Dia,       // <>
  BackDia,   // <^>
  Box,       // []
  BackBox,   // [^]
  AndAnd,    // &&
  And,       // &
  Or,        // |
  Not,       // ~
  Bang,      // !
  Query,     // ?
  Dot,       // .
  Comma,     // ,
  LParen,    // (
  RParen,    // )
  At,        // @
  Eq,        // =
  Ident,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

std::vector<Token> lex(std::string_view s) {
  static const std::pair<const char*, Tok> kSymbols[] = {
      {"<^>", Tok::BackDia}, {"[^]", Tok::BackBox}, {"->", Tok::Arrow}, {"=>", Tok::DArrow},
      {"<=", Tok::Le},       {"<>", Tok::Dia},      {"[]", Tok::Box},   {"&&", Tok::AndAnd},
      {"&", Tok::And},       {"|", Tok::Or},        {"~", Tok::Not},    {"!", Tok::Bang},
      {"?", Tok::Query},     {".", Tok::Dot},       {",", Tok::Comma},  {"(", Tok::LParen},
      {")", Tok::RParen},    {"@", Tok::At},        {"=", Tok::Eq},
  };
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    if (ident_start(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && ident_char(s[j])) ++j;
      out.push_back({Tok::Ident, std::string(s.substr(i, j - i)), i});
      i = j;
      continue;
    }
    bool matched = false;
    for (const auto& [text, kind] : kSymbols) {
      std::string_view sym(text);
      if (s.substr(i, sym.size()) == sym) {
        out.push_back({kind, std::string(sym), i});
        i += sym.size();
        matched = true;
        break;
      }
    }
    if (!matched) throw ParseError(i, "a token", "'" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", s.size()});
  return out;
}

bool reserved(std::string_view name) {
  return name == "true" || name == "false" || name == "forall" || name == "exists";
}

class Parser {
 public:
  explicit Parser(std::string_view text) : toks_(lex(text)) {}

  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  bool at(Tok k) const { return peek().kind == k; }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const char* what) {
    if (!at(k)) fail(what);
    return toks_[pos_++];
  }
  [[noreturn]] void fail(const std::string& what) const {
    const Token& t = peek();
    throw ParseError(t.pos, what, t.kind == Tok::End ? "end of input" : "'" + t.text + "'");
  }
  void finish() {
    if (!at(Tok::End)) fail("end of input");
  }

  // --- modal formulas -----------------------------------------------------

  Formula formula() {
    Formula a = disjunction();
    if (accept(Tok::Arrow)) return Formula::implies(std::move(a), formula());
    return a;
  }

  Formula disjunction() {
    Formula a = conjunction();
    while (accept(Tok::Or)) a = Formula::disj(std::move(a), conjunction());
    return a;
  }

  Formula conjunction() {
    Formula a = unary();
    while (accept(Tok::And)) a = Formula::conj(std::move(a), unary());
    return a;
  }

  std::string formula_name() {
    const Token& t = expect(Tok::Ident, "an identifier");
    if (!is_formula_identifier(t.text)) {
      throw ParseError(t.pos, "an identifier starting with a lowercase letter", "'" + t.text + "'");
    }
    return t.text;
  }

  // Binder after ! or ?: returns (is_nominal, name) and consumes the dot.
  std::pair<bool, std::string> binder() {
    bool nominal = accept(Tok::At);
    std::string name = formula_name();
    expect(Tok::Dot, "'.'");
    return {nominal, std::move(name)};
  }

  Formula unary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Not:
        ++pos_;
        return Formula::neg(unary());
      case Tok::Box:
        ++pos_;
        return Formula::box(unary());
      case Tok::Dia:
        ++pos_;
        return Formula::dia(unary());
      case Tok::BackBox:
        ++pos_;
        return Formula::back_box(unary());
      case Tok::BackDia:
        ++pos_;
        return Formula::back_dia(unary());
      case Tok::Bang:
      case Tok::Query: {
        bool universal = t.kind == Tok::Bang;
        ++pos_;
        auto [nominal, name] = binder();
        Op op = nominal ? (universal ? Op::ForallNom : Op::ExistsNom)
                        : (universal ? Op::ForallProp : Op::ExistsProp);
        return Formula::quantifier(op, std::move(name), unary());
      }
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      case Tok::At:
        ++pos_;
        return Formula::nom(formula_name());
      case Tok::Ident:
        if (t.text == "true") {
          ++pos_;
          return Formula::top();
        }
        if (t.text == "false") {
          ++pos_;
          return Formula::bot();
        }
        if (t.text == "l" && peek(1).kind == Tok::LParen) {
          pos_ += 2;
          Formula a = formula();
          expect(Tok::Comma, "','");
          Formula b = formula();
          expect(Tok::RParen, "')'");
          return Formula::l(std::move(a), std::move(b));
        }
        return Formula::prop(formula_name());
      default:
        fail("a formula");
    }
  }

  // --- complex inequalities -----------------------------------------------

  Complex complex() {
    Complex a = complex_conjunction();
    if (accept(Tok::DArrow)) return Complex::implies(std::move(a), complex());
    return a;
  }

  Complex complex_conjunction() {
    std::vector<Complex> items;
    items.push_back(complex_unary());
    while (accept(Tok::AndAnd)) items.push_back(complex_unary());
    if (items.size() == 1) return std::move(items.front());
    return Complex::conj(std::move(items));
  }

  Complex complex_unary() {
    if (at(Tok::Bang) || at(Tok::Query)) {
      bool universal = accept(Tok::Bang);
      if (!universal) ++pos_;
      auto [nominal, name] = binder();
      CKind kind = nominal ? (universal ? CKind::ForallNom : CKind::ExistsNom)
                           : (universal ? CKind::ForallProp : CKind::ExistsProp);
      return Complex::quantifier(kind, std::move(name), complex_unary());
    }
    if (at(Tok::LParen) && peek(1).kind == Tok::AndAnd) {
      pos_ += 2;
      if (accept(Tok::RParen)) return Complex::truth();
      Complex c = complex();
      expect(Tok::RParen, "')'");
      return Complex::conj(std::vector<Complex>{std::move(c)});
    }
    std::size_t start = pos_;
    try {
      Formula lhs = formula();
      expect(Tok::Le, "'<='");
      Formula rhs = formula();
      return Complex::ineq(std::move(lhs), std::move(rhs));
    } catch (const ParseError& as_ineq) {
      pos_ = start;
      if (!at(Tok::LParen)) throw;
      try {
        ++pos_;
        Complex c = complex();
        expect(Tok::RParen, "')'");
        return c;
      } catch (const ParseError& as_group) {
        if (as_group.position() >= as_ineq.position()) throw;
        throw as_ineq;
      }
    }
  }

  // --- first-order formulas -----------------------------------------------

  FoFormula fo() {
    FoFormula a = fo_disjunction();
    if (accept(Tok::Arrow)) return FoFormula::implies(std::move(a), fo());
    return a;
  }

  FoFormula fo_disjunction() {
    FoFormula a = fo_conjunction();
    while (accept(Tok::Or)) a = FoFormula::disj(std::move(a), fo_conjunction());
    return a;
  }

  FoFormula fo_conjunction() {
    FoFormula a = fo_unary();
    while (accept(Tok::And)) a = FoFormula::conj(std::move(a), fo_unary());
    return a;
  }

  std::string individual() {
    const Token& t = expect(Tok::Ident, "an individual variable");
    if (!is_individual_identifier(t.text)) {
      throw ParseError(t.pos, "an individual variable", "'" + t.text + "'");
    }
    return t.text;
  }

  FoFormula fo_unary() {
    const Token& t = peek();
    if (accept(Tok::Not)) return FoFormula::neg(fo_unary());
    if (accept(Tok::LParen)) {
      FoFormula f = fo();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (t.kind != Tok::Ident) fail("a first-order formula");
    if (t.text == "true" || t.text == "false") {
      ++pos_;
      return t.text == "true" ? FoFormula::verum() : FoFormula::falsum();
    }
    if (t.text == "forall" || t.text == "exists") {
      bool universal = t.text == "forall";
      ++pos_;
      const Token& b = expect(Tok::Ident, "a bound variable");
      std::string name = b.text;
      FoOp op;
      if (is_predicate_identifier(name)) {
        op = universal ? FoOp::ForallPred : FoOp::ExistsPred;
      } else if (is_individual_identifier(name)) {
        op = universal ? FoOp::ForallInd : FoOp::ExistsInd;
      } else {
        throw ParseError(b.pos, "a bound variable", "'" + name + "'");
      }
      expect(Tok::Dot, "'.'");
      return FoFormula::quantifier(op, std::move(name), fo_unary());
    }
    if (is_predicate_identifier(t.text)) {
      std::string name = t.text;
      ++pos_;
      expect(Tok::LParen, "'('");
      std::string x = individual();
      if (accept(Tok::Comma)) {
        std::string y = individual();
        expect(Tok::RParen, "')'");
        if (name != "R") throw ParseError(t.pos, "the relation symbol R", "'" + name + "'");
        return FoFormula::rel(std::move(x), std::move(y));
      }
      expect(Tok::RParen, "')'");
      return FoFormula::pred(std::move(name), std::move(x));
    }
    std::string x = individual();
    expect(Tok::Eq, "'='");
    std::string y = individual();
    return FoFormula::eq(std::move(x), std::move(y));
  }

 private:
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// Precedence levels shared by the three printers.
constexpr int kImplies = 1;
constexpr int kOr = 2;
constexpr int kAnd = 3;
constexpr int kUnary = 4;

std::string wrap(std::string s, int level, int need) {
  return level < need ? "(" + s + ")" : s;
}

std::string print_f(const Formula& f, int need) {
  switch (f.op()) {
    case Op::Prop:
      return f.name();
    case Op::Nom:
      return "@" + f.name();
    case Op::Bot:
      return "false";
    case Op::Top:
      return "true";
    case Op::Not:
      return "~" + print_f(f.lhs(), kUnary);
    case Op::Box:
      return "[]" + print_f(f.lhs(), kUnary);
    case Op::Dia:
      return "<>" + print_f(f.lhs(), kUnary);
    case Op::BackBox:
      return "[^]" + print_f(f.lhs(), kUnary);
    case Op::BackDia:
      return "<^>" + print_f(f.lhs(), kUnary);
    case Op::And:
      return wrap(print_f(f.lhs(), kAnd) + " & " + print_f(f.rhs(), kUnary), kAnd, need);
    case Op::Or:
      return wrap(print_f(f.lhs(), kOr) + " | " + print_f(f.rhs(), kAnd), kOr, need);
    case Op::Implies:
      return wrap(print_f(f.lhs(), kOr) + " -> " + print_f(f.rhs(), kImplies), kImplies, need);
    case Op::L:
      return "l(" + print_f(f.lhs(), kImplies) + ", " + print_f(f.rhs(), kImplies) + ")";
    case Op::ForallProp:
      return "!" + f.name() + ". " + print_f(f.body(), kUnary);
    case Op::ExistsProp:
      return "?" + f.name() + ". " + print_f(f.body(), kUnary);
    case Op::ForallNom:
      return "!@" + f.name() + ". " + print_f(f.body(), kUnary);
    case Op::ExistsNom:
      return "?@" + f.name() + ". " + print_f(f.body(), kUnary);
  }
  return {};
}

constexpr int kCImplies = 1;
constexpr int kCConj = 2;
constexpr int kCUnary = 3;

std::string print_c(const Complex& c, int need) {
  switch (c.kind()) {
    case CKind::Ineq:
      return print_inequality(c.inequality());
    case CKind::Conj: {
      if (c.items().empty()) return "(&&)";
      if (c.items().size() == 1) return "(&& " + print_c(c.item(0), kCImplies) + ")";
      std::string s;
      for (std::size_t k = 0; k < c.items().size(); ++k) {
        if (k > 0) s += " && ";
        s += print_c(c.item(k), kCUnary);
      }
      return wrap(std::move(s), kCConj, need);
    }
    case CKind::Implies:
      return wrap(print_c(c.item(0), kCConj) + " => " + print_c(c.item(1), kCImplies), kCImplies,
                  need);
    case CKind::ForallProp:
      return "!" + c.name() + ". " + print_c(c.body(), kCUnary);
    case CKind::ExistsProp:
      return "?" + c.name() + ". " + print_c(c.body(), kCUnary);
    case CKind::ForallNom:
      return "!@" + c.name() + ". " + print_c(c.body(), kCUnary);
    case CKind::ExistsNom:
      return "?@" + c.name() + ". " + print_c(c.body(), kCUnary);
  }
  return {};
}

std::string print_o(const FoFormula& f, int need) {
  switch (f.op()) {
    case FoOp::Rel:
      return "R(" + f.x() + "," + f.y() + ")";
    case FoOp::Eq:
      return f.x() + " = " + f.y();
    case FoOp::Pred:
      return f.name() + "(" + f.x() + ")";
    case FoOp::Verum:
      return "true";
    case FoOp::Falsum:
      return "false";
    case FoOp::Not:
      return "~" + print_o(f.lhs(), kUnary);
    case FoOp::And:
      return wrap(print_o(f.lhs(), kAnd) + " & " + print_o(f.rhs(), kUnary), kAnd, need);
    case FoOp::Or:
      return wrap(print_o(f.lhs(), kOr) + " | " + print_o(f.rhs(), kAnd), kOr, need);
    case FoOp::Implies:
      return wrap(print_o(f.lhs(), kOr) + " -> " + print_o(f.rhs(), kImplies), kImplies, need);
    case FoOp::ForallInd:
    case FoOp::ForallPred:
      return "forall " + f.name() + ". " + print_o(f.body(), kUnary);
    case FoOp::ExistsInd:
    case FoOp::ExistsPred:
      return "exists " + f.name() + ". " + print_o(f.body(), kUnary);
  }
  return {};
}

}  // namespace

bool is_formula_identifier(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!ident_char(c)) return false;
  }
  return !reserved(name);
}

bool is_individual_identifier(std::string_view name) { return is_formula_identifier(name); }

bool is_predicate_identifier(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name) {
    if (!ident_char(c)) return false;
  }
  return true;
}

Formula parse_formula(std::string_view text) {
  Parser p(text);
  Formula f = p.formula();
  p.finish();
  return f;
}

std::string print_formula(const Formula& f) { return print_f(f, kImplies); }

Inequality parse_inequality(std::string_view text) {
  Parser p(text);
  Formula lhs = p.formula();
  p.expect(Tok::Le, "'<='");
  Formula rhs = p.formula();
  p.finish();
  return Inequality{std::move(lhs), std::move(rhs)};
}

std::string print_inequality(const Inequality& i) {
  std::string lhs = print_formula(i.lhs);
  if (!lhs.empty() && (lhs[0] == '!' || lhs[0] == '?')) lhs = "(" + lhs + ")";
  return lhs + " <= " + print_formula(i.rhs);
}

Complex parse_complex(std::string_view text) {
  Parser p(text);
  Complex c = p.complex();
  p.finish();
  return c;
}

std::string print_complex(const Complex& c) { return print_c(c, kCImplies); }

FoFormula parse_fo(std::string_view text) {
  Parser p(text);
  FoFormula f = p.fo();
  p.finish();
  return f;
}

std::string print_fo(const FoFormula& f) { return print_o(f, kImplies); }

KripkeFrame parse_frame_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("frame is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("worlds") || !j["worlds"].is_array()) {
    throw InputError("frame JSON needs a \"worlds\" array");
  }
  std::vector<std::string> worlds;
  for (const auto& w : j["worlds"]) {
    if (!w.is_string()) throw InputError("world identifiers must be strings");
    worlds.push_back(w.get<std::string>());
  }
  std::vector<KripkeFrame::Edge> edges;
  if (j.contains("edges")) {
    if (!j["edges"].is_array()) throw InputError("\"edges\" must be an array");
    auto index = [&](const nlohmann::json& w) -> std::size_t {
      if (!w.is_string()) throw InputError("edge endpoints must be strings");
      auto name = w.get<std::string>();
      for (std::size_t k = 0; k < worlds.size(); ++k) {
        if (worlds[k] == name) return k;
      }
      throw InputError("edge refers to unlisted world '" + name + "'");
    };
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2) throw InputError("each edge must be a pair of worlds");
      edges.emplace_back(index(e[0]), index(e[1]));
    }
  }
  return KripkeFrame(std::move(worlds), edges);
}

std::string print_frame_json(const KripkeFrame& f) {
  nlohmann::json j;
  j["worlds"] = f.worlds();
  j["edges"] = nlohmann::json::array();
  for (const auto& [a, b] : f.edges()) {
    j["edges"].push_back({f.worlds()[a], f.worlds()[b]});
  }
  return j.dump();
}

std::ostream& operator<<(std::ostream& out, const Formula& f) { return out << print_formula(f); }
std::ostream& operator<<(std::ostream& out, const Inequality& i) {
  return out << print_inequality(i);
}
std::ostream& operator<<(std::ostream& out, const Complex& c) { return out << print_complex(c); }
std::ostream& operator<<(std::ostream& out, const FoFormula& f) { return out << print_fo(f); }

}  // namespace sopml
