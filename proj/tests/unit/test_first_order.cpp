#include <gtest/gtest.h>

#include "generators.hpp"
#include "reference.hpp"
#include "sopml/error.hpp"
#include "sopml/first_order.hpp"
#include "sopml/syntax.hpp"

using namespace sopml;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Complex C(const char* s) { return parse_complex(s); }
FoFormula FO(const char* s) { return parse_fo(s); }

KripkeFrame point(bool loop) { return KripkeFrame::from_successors({loop ? WorldSet{1} : 0}); }
KripkeFrame two_cycle() { return KripkeFrame::from_successors({0b10, 0b01}); }

const char* kExample1 = "!p. (<>[]p & !q. (<>[]q -> []([]q | []p)) -> []<>[]p)";
const char* kIrreflexivity = "!q. (!p. (p -> <>p | q) -> q)";
const char* kNonDefinable = "!p. ([]p & !q. (q -> <><>q | p) -> p)";

}  // namespace

TEST(StandardTranslation, Clauses) {
  EXPECT_EQ(print_fo(st_formula(F("<>p"), "x")), "exists x0. (R(x,x0) & P(x0))");
  EXPECT_EQ(st_formula(F("@i"), "x"), FO("x = i"));
  EXPECT_EQ(st_formula(F("[]q"), "x"), FO("forall x0. (R(x,x0) -> Q(x0))"));
  EXPECT_EQ(st_formula(F("<^>p"), "x"), FO("exists x0. (R(x0,x) & P(x0))"));
  EXPECT_EQ(st_formula(F("[^]p"), "x"), FO("forall x0. (R(x0,x) -> P(x0))"));
  EXPECT_EQ(st_formula(F("!p. ?@j. (p & @j)"), "x"), FO("forall P. exists j. (P(x) & x = j)"));
  EXPECT_EQ(st_formula(F("l(p, q)"), "x"), FO("forall x0. (P(x0) -> Q(x0))"));
  EXPECT_EQ(st_formula(F("true -> ~false"), "x"), FO("true -> ~false"));
}

TEST(StandardTranslation, VariablesAllocatedLeftToRight) {
  EXPECT_EQ(st_formula(F("<>p & []<>q"), "x"),
            FO("exists x0. (R(x,x0) & P(x0)) & forall x1. (R(x,x1) -> exists x2. (R(x1,x2) & "
               "Q(x2)))"));
}

TEST(StandardTranslation, SkipsNamesInUse) {
  EXPECT_EQ(st_formula(F("<>@x0"), "x"), FO("exists x1. (R(x,x1) & x1 = x0)"));
  EXPECT_THROW(st_formula(F("@x"), "x"), InputError);
}

TEST(StandardTranslation, Complexes) {
  EXPECT_EQ(st_complex(C("@i <= <>@j")),
            FO("forall x0. (x0 = i -> exists x1. (R(x0,x1) & x1 = j))"));
  EXPECT_EQ(st_complex(C("!p. @i <= p")), FO("forall P. forall x0. (x0 = i -> P(x0))"));
  EXPECT_EQ(st_complex(Complex::truth()), FoFormula::verum());
  EXPECT_EQ(st_complex(C("@i <= p && @i <= q => ?@j. @j <= p")),
            FO("forall x0. (x0 = i -> P(x0)) & forall x1. (x1 = i -> Q(x1)) -> "
               "exists j. forall x2. (x2 = j -> P(x2))"));
}

TEST(FoEval, Examples) {
  EXPECT_TRUE(fo_eval(point(true), FO("forall x. R(x,x)")));
  EXPECT_FALSE(fo_eval(two_cycle(), FO("forall x. forall y. (R(x,y) & R(y,x) -> R(x,x))")));
  EXPECT_TRUE(fo_eval(two_cycle(), FO("true")));
}

TEST(FoEval, FreeSymbols) {
  FoAssignment env;
  env.individuals["x"] = 1;
  env.predicates["P"] = 0b10;
  EXPECT_TRUE(fo_eval(two_cycle(), FO("P(x) & R(y,x)"), {{{"x", 1}, {"y", 0}}, {{"P", 0b10}}}));
  EXPECT_THROW(fo_eval(two_cycle(), FO("R(x,y)"), env), UnassignedSymbol);
  EXPECT_THROW(fo_eval(two_cycle(), FO("Q(x)"), env), UnassignedSymbol);
  env.individuals["y"] = 2;
  EXPECT_THROW(fo_eval(two_cycle(), FO("R(x,y)"), env), InputError);
}

TEST(FoEval, SecondOrderQuantifiers) {
  // Some set contains exactly the loop-free worlds.
  KripkeFrame f = KripkeFrame::from_successors({0b01, 0b01});
  EXPECT_TRUE(fo_eval(f, FO("exists P. forall x. (P(x) & ~R(x,x) | ~P(x) & R(x,x))")));
  EXPECT_FALSE(fo_eval(f, FO("forall P. exists x. P(x)")));
  EXPECT_TRUE(fo_eval(f, FO("forall P. (forall x. P(x) -> exists y. P(y))")));
}

TEST(FoEval, AgreesWithNaiveOracle) {
  gen::Rng rng(61);
  for (int n = 0; n < 500; ++n) {
    FoFormula phi = gen::fo(rng, 4);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    ref::FoEnv env;
    for (const char* x : {"x", "y", "z"}) {
      env.individuals[x] = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(worlds) - 1));
    }
    for (const char* p : {"P", "Q"}) {
      std::set<std::size_t> s;
      for (std::size_t w = 0; w < worlds; ++w) {
        if (gen::chance(rng, 0.5)) s.insert(w);
      }
      env.predicates[p] = s;
    }
    ASSERT_EQ(fo_eval(frame, phi, ref::to_assignment(env)), ref::fo(ref::from(frame), env, phi))
        << print_fo(phi);
  }
}

TEST(EquivOnFrames, Examples) {
  auto same = equiv_on_frames(FO("forall x. ~R(x,x)"), correspond(F(kIrreflexivity)), 3);
  EXPECT_TRUE(same.equivalent);
  EXPECT_EQ(same.frames_checked, 530U);
  EXPECT_FALSE(same.witness.has_value());

  auto differ = equiv_on_frames(FO("forall x. R(x,x)"), FO("forall x. ~R(x,x)"), 1);
  EXPECT_FALSE(differ.equivalent);
  ASSERT_TRUE(differ.witness.has_value());
  EXPECT_EQ(differ.witness->size(), 1U);
  EXPECT_NE(fo_eval(*differ.witness, FO("forall x. R(x,x)")),
            fo_eval(*differ.witness, FO("forall x. ~R(x,x)")));

  FoFormula phi = FO("forall x. exists y. R(x,y)");
  EXPECT_TRUE(equiv_on_frames(phi, phi, 2).equivalent);
}

TEST(Correspond, GoldenExamples) {
  EXPECT_TRUE(equiv_on_frames(correspond(F(kIrreflexivity)), FO("forall x. ~R(x,x)"), 3).equivalent);
  EXPECT_TRUE(equiv_on_frames(correspond(F(kNonDefinable)),
                              FO("forall x. forall y. (R(x,y) & R(y,x) -> R(x,x))"), 3)
                  .equivalent);
  EXPECT_TRUE(equiv_on_frames(correspond(F("!p. (p -> <>p)")), FO("forall x. R(x,x)"), 3).equivalent);
  EXPECT_TRUE(equiv_on_frames(correspond(F("!p. ([]p -> [][]p)")),
                              FO("forall x. forall y. forall z. (R(x,y) & R(y,z) -> R(x,z))"), 3)
                  .equivalent);
  EXPECT_TRUE(equiv_on_frames(correspond(F("!p. (p -> []<>p)")),
                              FO("forall x. forall y. (R(x,y) -> R(y,x))"), 3)
                  .equivalent);
}

TEST(Correspond, OutputIsAClosedFirstOrderSentence) {
  for (const char* text : {kIrreflexivity, kNonDefinable, kExample1}) {
    Correspondence c = correspond_full(F(text));
    EXPECT_TRUE(is_first_order(c.sentence)) << text;
    FoSymbols free = fo_free_symbols(c.sentence);
    EXPECT_TRUE(free.individuals.empty()) << text;
    EXPECT_TRUE(free.predicates.empty()) << text;
    EXPECT_EQ(c.sentence, st_complex(c.reduction.output));
    EXPECT_EQ(c.derivation.level, 2);
  }
}

TEST(Correspond, ExampleOneMatchesFrameValidity) {
  FoFormula sentence = correspond(F(kExample1));
  for (const auto& f : enumerate_frames(2)) {
    EXPECT_EQ(frame_valid(f, F(kExample1)), fo_eval(f, sentence)) << print_frame_json(f);
  }
}

TEST(Correspond, Rejections) {
  try {
    correspond(F("?p. p"));
    FAIL();
  } catch (const Rejected& e) {
    EXPECT_EQ(e.code(), "not-universal-implication");
    EXPECT_NE(std::string(e.what()).find("not a Sahlqvist formula"), std::string::npos);
  }
}

TEST(Translation, AgreesWithModalEvaluator) {
  gen::Rng rng(62);
  gen::FormulaSpec spec;
  spec.depth = 4;
  spec.prop_quantifiers = 2;
  for (int n = 0; n < 500; ++n) {
    Formula phi = gen::formula(rng, spec);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    ref::Env env = gen::env(rng, worlds, free_symbols(phi));
    KripkeModel m(frame, ref::to_valuation(env));
    FoFormula st = st_formula(phi, "x");
    FoAssignment a;
    for (const auto& [i, w] : env.noms) a.individuals[i] = w;
    for (const auto& [p, s] : ref::to_valuation(env).props) a.predicates[predicate_name(p)] = s;
    for (std::size_t w = 0; w < worlds; ++w) {
      a.individuals["x"] = w;
      ASSERT_EQ(eval_at(m, w, phi), fo_eval(frame, st, a)) << print_formula(phi) << " at w" << w;
    }
  }
}

TEST(Translation, ComplexAgreesWithHoldsComp) {
  gen::Rng rng(63);
  for (int n = 0; n < 500; ++n) {
    Complex c = gen::complex(rng, {}, 3);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    ref::Env env = gen::env(rng, worlds, free_symbols(c));
    KripkeModel m(frame, ref::to_valuation(env));
    FoAssignment a;
    for (const auto& [i, w] : env.noms) a.individuals[i] = w;
    for (const auto& [p, s] : ref::to_valuation(env).props) a.predicates[predicate_name(p)] = s;
    ASSERT_EQ(holds_comp(m, c), fo_eval(frame, st_complex(c), a)) << print_complex(c);
  }
}

TEST(Translation, PureOutputsHaveNoPredicates) {
  gen::Rng rng(64);
  for (int n = 0; n < 100; ++n) {
    Formula f = gen::sahlqvist(rng, {3, 4, 3});
    Correspondence c = correspond_full(f);
    ASSERT_TRUE(is_first_order(c.sentence)) << print_formula(f);
  }
}

TEST(PredicateName, CapitalizesFirstLetter) {
  EXPECT_EQ(predicate_name("p"), "P");
  EXPECT_EQ(predicate_name("q_1"), "Q_1");
}
