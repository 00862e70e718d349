#include <gtest/gtest.h>

#include "generators.hpp"
#include "reference.hpp"
#include "sopml/error.hpp"
#include "sopml/formula.hpp"
#include "sopml/kripke.hpp"
#include "sopml/syntax.hpp"

using namespace sopml;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Complex C(const char* s) { return parse_complex(s); }

}  // namespace

TEST(Polarity, ImplicationFlipsItsAntecedent) {
  EXPECT_EQ(polarity(F("p -> <>p"), "p"), Polarity::Both);
  EXPECT_EQ(polarity(F("~<><>q"), "q"), Polarity::Negative);
  EXPECT_EQ(polarity(F("[]([]q | []p)"), "q"), Polarity::Positive);
  EXPECT_EQ(polarity(F("[]p"), "q"), Polarity::Absent);
}

TEST(Polarity, LeftArgumentOfLIsNegative) {
  EXPECT_EQ(polarity(F("l(p, q)"), "p"), Polarity::Negative);
  EXPECT_EQ(polarity(F("l(p, q)"), "q"), Polarity::Positive);
  EXPECT_EQ(polarity(F("l(~p, p)"), "p"), Polarity::Positive);
}

TEST(Polarity, BoundOccurrencesAreIgnored) {
  EXPECT_EQ(polarity(F("!p. ~p"), "p"), Polarity::Absent);
  EXPECT_EQ(polarity(F("p & ?p. ~p"), "p"), Polarity::Positive);
  EXPECT_EQ(polarity(F("!@p. ~p"), "p"), Polarity::Negative);
}

TEST(Polarity, FlipAndJoin) {
  EXPECT_EQ(flip(Polarity::Positive), Polarity::Negative);
  EXPECT_EQ(flip(Polarity::Both), Polarity::Both);
  EXPECT_EQ(flip(Polarity::Absent), Polarity::Absent);
  EXPECT_EQ(join(Polarity::Positive, Polarity::Negative), Polarity::Both);
  EXPECT_EQ(join(Polarity::Absent, Polarity::Negative), Polarity::Negative);
}

TEST(Polarity, NegationFlipsOnRandomFormulas) {
  gen::Rng rng(11);
  for (int n = 0; n < 500; ++n) {
    Formula f = gen::formula(rng, {});
    for (const char* p : {"p", "q", "r"}) {
      EXPECT_EQ(polarity(Formula::neg(f), p), flip(polarity(f, p))) << print_formula(f);
    }
  }
}

TEST(Polarity, AbsentExactlyWhenNotFree) {
  gen::Rng rng(12);
  for (int n = 0; n < 500; ++n) {
    Formula f = gen::formula(rng, {});
    for (const char* p : {"p", "q", "r"}) {
      EXPECT_EQ(polarity(f, p) == Polarity::Absent, free_symbols(f).props.count(p) == 0)
          << print_formula(f);
    }
  }
}

// Positive occurrences make truth upward closed in the variable; negative ones
// downward closed. Checked on random models against every pair X ⊆ Y.
TEST(Polarity, AgreesWithSemanticMonotonicity) {
  gen::Rng rng(13);
  int checked = 0;
  for (int n = 0; n < 400; ++n) {
    Formula f = gen::formula(rng, {});
    Polarity pol = polarity(f, "p");
    if (pol != Polarity::Positive && pol != Polarity::Negative) continue;
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    Symbols syms = free_symbols(f);
    syms.props.erase("p");
    ref::Env env = gen::env(rng, worlds, syms);
    Valuation v = ref::to_valuation(env);
    WorldSet all = frame.all();
    for (WorldSet y = 0; y <= all; ++y) {
      for (WorldSet x = y;; x = (x - 1) & y) {
        v.props["p"] = x;
        WorldSet small = extension(KripkeModel(frame, v), f);
        v.props["p"] = y;
        WorldSet large = extension(KripkeModel(frame, v), f);
        if (pol == Polarity::Positive) {
          EXPECT_EQ(small & ~large, 0U) << print_formula(f);
        } else {
          EXPECT_EQ(large & ~small, 0U) << print_formula(f);
        }
        if (x == 0) break;
      }
    }
    ++checked;
  }
  EXPECT_GT(checked, 50);
}

TEST(Purity, NominalsAndLAreAllowed) {
  EXPECT_TRUE(is_pure(F("<^>@i & ~[]<^>@j")));
  EXPECT_FALSE(is_pure(F("p")));
  EXPECT_TRUE(is_pure(F("?@i. (l(@i, ~<>@i) & @i)")));
  EXPECT_FALSE(is_pure(F("!p. true")));
  EXPECT_TRUE(is_pure(C("!@i. (@i <= <>@j => true <= false)")));
  EXPECT_FALSE(is_pure(C("!p. @i <= true")));
  EXPECT_FALSE(is_pure(C("@i <= p")));
}

TEST(FreeSymbols, QuantifiersBindTheirName) {
  EXPECT_EQ(free_symbols(F("!p. (p -> <>p | q)")), (Symbols{{"q"}, {}}));
  EXPECT_EQ(free_symbols(C("@i <= <>@j")), (Symbols{{}, {"i", "j"}}));
  EXPECT_EQ(free_symbols(C("?@j. (@j <= []p && @i <= <>@j)")), (Symbols{{"p"}, {"i"}}));
  EXPECT_EQ(free_symbols(F("!@p. (p & @p)")), (Symbols{{"p"}, {}}));
}

TEST(FreeSymbols, AllNominalsIncludesBoundOnes) {
  EXPECT_EQ(all_nominals(F("?@j. (@j & @i)")), (std::set<std::string>{"i", "j"}));
  EXPECT_EQ(all_nominals(C("!@k. @k <= p")), (std::set<std::string>{"k"}));
  EXPECT_EQ(all_props(F("!p. q")), (std::set<std::string>{"p", "q"}));
}

TEST(Substitute, ReplacesFreeOccurrences) {
  EXPECT_EQ(substitute(C("@i <= <>[]p"), "p", F("<^>@k")), C("@i <= <>[]<^>@k"));
  EXPECT_EQ(substitute(F("q"), "q", F("false")), F("false"));
  EXPECT_EQ(substitute(C("!q. q <= q"), "q", F("@i")), C("!q. q <= q"));
  EXPECT_EQ(substitute(F("q & !q. q"), "q", F("@i")), F("@i & !q. q"));
}

TEST(Substitute, DetectsNominalCapture) {
  EXPECT_THROW(substitute(F("?@j. (p & @j)"), "p", F("<>@j")), CaptureError);
  EXPECT_THROW(substitute(C("!@j. @j <= p"), "p", F("@j")), CaptureError);
  EXPECT_THROW(substitute(F("!r. p"), "p", F("r")), CaptureError);
  // A binder above no occurrence is harmless.
  EXPECT_EQ(substitute(F("(?@j. @j) & p"), "p", F("@j")), F("(?@j. @j) & @j"));
}

TEST(Substitute, IdentityWhenVariableIsNotFree) {
  gen::Rng rng(14);
  for (int n = 0; n < 300; ++n) {
    Formula f = gen::formula(rng, {});
    if (free_symbols(f).props.count("r") > 0) continue;
    EXPECT_EQ(substitute(f, "r", F("<>@i")), f);
  }
}

TEST(FreshNames, CounterScheme) {
  EXPECT_EQ(fresh_nominal({"i"}), "j1");
  EXPECT_EQ(fresh_nominal({"i", "j1"}), "j2");
  EXPECT_EQ(fresh_nominal({}), "j1");
  FreshSupply s({"i0", "j1"});
  EXPECT_EQ(s.next("i", 0), "i1");
  EXPECT_EQ(s.next(), "j2");
  EXPECT_EQ(s.next(), "j3");
  EXPECT_TRUE(s.used("j2"));
}

TEST(FreshNames, NeverReturnsAMember) {
  gen::Rng rng(15);
  for (int n = 0; n < 200; ++n) {
    std::set<std::string> used;
    int k = gen::uniform(rng, 0, 8);
    for (int t = 0; t < k; ++t) used.insert("j" + std::to_string(gen::uniform(rng, 1, 6)));
    EXPECT_EQ(used.count(fresh_nominal(used)), 0U);
  }
}

TEST(Complex, EmptyConjunctionIsTruth) {
  Complex t = Complex::truth();
  EXPECT_TRUE(t.is(CKind::Conj));
  EXPECT_TRUE(t.items().empty());
  EXPECT_EQ(t, C("(&&)"));
}

TEST(Complex, PathsAddressSubterms) {
  Complex c = C("!p. (@i <= p => @i <= <>p && true <= p)");
  EXPECT_EQ(subterm(c, {0, 1, 1}), C("true <= p"));
  EXPECT_EQ(replace_at(c, {0, 0}, C("@j <= p")), C("!p. (@j <= p => @i <= <>p && true <= p)"));
  EXPECT_THROW(subterm(c, {0, 0, 0}), std::out_of_range);
  EXPECT_THROW(subterm(c, {1}), std::out_of_range);
  EXPECT_EQ(child({0, 1}, 2), (Path{0, 1, 2}));
}

TEST(Formula, StructuralEquality) {
  EXPECT_EQ(F("[]p & q"), Formula::conj(Formula::box(Formula::prop("p")), Formula::prop("q")));
  EXPECT_NE(F("p"), F("@p"));
  EXPECT_NE(F("!p. p"), F("?p. p"));
  EXPECT_NE(F("l(p, q)"), F("l(q, p)"));
  EXPECT_EQ(F("((p))").size(), 1U);
}

TEST(Formula, BigConnectives) {
  EXPECT_EQ(big_and({}), Formula::top());
  EXPECT_EQ(big_or({}), Formula::bot());
  EXPECT_EQ(big_and({F("p"), F("q"), F("r")}), F("(p & q) & r"));
  EXPECT_EQ(big_or({F("p")}), F("p"));
}
