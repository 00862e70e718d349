#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "generators.hpp"
#include "reference.hpp"
#include "sopml/error.hpp"
#include "sopml/kripke.hpp"
#include "sopml/syntax.hpp"

using namespace sopml;

namespace {

Formula F(const char* s) { return parse_formula(s); }
Complex C(const char* s) { return parse_complex(s); }

KripkeFrame point(bool loop) { return KripkeFrame::from_successors({loop ? WorldSet{1} : 0}); }
KripkeFrame two_cycle() { return KripkeFrame::from_successors({0b10, 0b01}); }
KripkeFrame chain2() { return KripkeFrame::from_successors({0b10, 0b00}); }

const char* kIrreflexivity = "!q. (!p. (p -> <>p | q) -> q)";

}  // namespace

TEST(EvalAt, IrreflexivityFormulaOnPoints) {
  KripkeModel dead(point(false), {});
  KripkeModel loop(point(true), {});
  EXPECT_TRUE(eval_at(dead, 0, F(kIrreflexivity)));
  EXPECT_FALSE(eval_at(loop, 0, F(kIrreflexivity)));
  // Same verdicts from the naive evaluator.
  EXPECT_TRUE(ref::eval(ref::from(point(false)), {}, 0, F(kIrreflexivity)));
  EXPECT_FALSE(ref::eval(ref::from(point(true)), {}, 0, F(kIrreflexivity)));
  EXPECT_TRUE(eval_at(loop, 0, F("true")));
}

TEST(EvalAt, BackwardModalitiesUsePredecessors) {
  KripkeModel m(chain2(), {{{"p", 0b01}}, {}});
  EXPECT_TRUE(eval_at(m, 1, F("<^>p")));
  EXPECT_FALSE(eval_at(m, 0, F("<^>p")));
  EXPECT_TRUE(eval_at(m, 0, F("[^]false")));
  EXPECT_FALSE(eval_at(m, 1, F("[^]false")));
  EXPECT_TRUE(eval_at(m, 0, F("<>~p")));
}

TEST(EvalAt, LIsGlobal) {
  KripkeModel m(chain2(), {{{"p", 0b01}, {"q", 0b11}}, {}});
  EXPECT_TRUE(eval_at(m, 0, F("l(p, q)")));
  EXPECT_TRUE(eval_at(m, 1, F("l(p, q)")));
  EXPECT_FALSE(eval_at(m, 1, F("l(q, p)")));
}

TEST(EvalAt, UnassignedSymbols) {
  KripkeModel m(point(false), {});
  EXPECT_THROW(eval_at(m, 0, F("p")), UnassignedSymbol);
  EXPECT_THROW(eval_at(m, 0, F("@i")), UnassignedSymbol);
  EXPECT_NO_THROW(eval_at(m, 0, F("!p. ?@i. (p | @i)")));
  EXPECT_THROW(holds_comp(m, C("true <= q")), UnassignedSymbol);
}

TEST(KripkeModel, RejectsOutOfRangeValuation) {
  EXPECT_THROW(KripkeModel(point(false), {{{"p", 0b10}}, {}}), InputError);
  EXPECT_THROW(KripkeModel(point(false), {{}, {{"i", 1}}}), InputError);
}

TEST(HoldsIneq, Examples) {
  Valuation v{{}, {{"i", 0}}};
  EXPECT_TRUE(holds_ineq(KripkeModel(point(false), v), {F("@i"), F("true")}));
  EXPECT_FALSE(holds_ineq(KripkeModel(two_cycle(), v), {F("@i"), F("<>@i")}));
  EXPECT_TRUE(holds_ineq(KripkeModel(two_cycle(), v), {F("@i"), F("<><>@i")}));
}

TEST(HoldsComp, Examples) {
  Complex irr = C("!@i. @i <= ~<>@i");
  EXPECT_TRUE(holds_comp(KripkeModel(chain2(), {}), irr));
  EXPECT_FALSE(holds_comp(KripkeModel(point(true), {}), irr));
  EXPECT_TRUE(holds_comp(KripkeModel(point(true), {{{"p", 0}}, {{"i", 0}}}),
                         C("true <= false => @i <= p")));
  EXPECT_TRUE(holds_comp(KripkeModel(point(true), {}), Complex::truth()));
}

TEST(FrameValid, Examples) {
  EXPECT_FALSE(frame_valid(two_cycle(), F("!p. ([]p & !q. (q -> <><>q | p) -> p)")));
  EXPECT_TRUE(frame_valid(point(true), F("!p. (p -> <>p)")));
  for (const auto& f : enumerate_frames(2)) EXPECT_TRUE(frame_valid(f, F("!p. (p -> p)")));
}

TEST(FrameValid, FreeSymbolsAreUniversallyQuantified) {
  for (const auto& f : enumerate_frames(2)) {
    EXPECT_EQ(frame_valid(f, F("p -> <>p")), frame_valid(f, F("!p. (p -> <>p)")));
    EXPECT_EQ(frame_valid(f, F("@i -> <>@i")), frame_valid(f, F("!@i. (@i -> <>@i)")));
    EXPECT_EQ(frame_valid(f, C("@i <= ~<>@i")), frame_valid(f, C("!@i. @i <= ~<>@i")));
  }
}

TEST(Enumeration, Counts) {
  EXPECT_EQ(enumerate_frames(1).size(), 2U);
  EXPECT_EQ(enumerate_frames(2).size(), 18U);
  EXPECT_EQ(enumerate_frames(3).size(), 530U);
  EXPECT_EQ(frame_count(3), 530U);
  EXPECT_EQ(frame_count(4), 530U + 65536U);
}

TEST(Enumeration, FramesAreDistinctAndStopsEarly) {
  auto frames = enumerate_frames(3);
  for (std::size_t a = 0; a < frames.size(); ++a) {
    for (std::size_t b = a + 1; b < frames.size(); ++b) ASSERT_FALSE(frames[a] == frames[b]);
  }
  int seen = 0;
  for_each_frame(3, [&](const KripkeFrame&) { return ++seen < 5; });
  EXPECT_EQ(seen, 5);
}

TEST(Evaluator, AgreesWithNaiveOracle) {
  gen::Rng rng(31);
  gen::FormulaSpec spec;
  spec.depth = 4;
  spec.prop_quantifiers = 2;
  for (int n = 0; n < 500; ++n) {
    Formula f = gen::formula(rng, spec);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    ref::Env env = gen::env(rng, worlds, free_symbols(f));
    KripkeModel m(frame, ref::to_valuation(env));
    WorldSet ext = extension(m, f);
    for (std::size_t w = 0; w < worlds; ++w) {
      ASSERT_EQ(contains(ext, w), ref::eval(ref::from(frame), env, w, f))
          << print_formula(f) << " at w" << w << " on " << print_frame_json(frame);
      ASSERT_EQ(eval_at(m, w, f), contains(ext, w));
    }
  }
}

TEST(Evaluator, ComplexAgreesWithNaiveOracle) {
  gen::Rng rng(32);
  for (int n = 0; n < 500; ++n) {
    Complex c = gen::complex(rng, {}, 3);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    ref::Env env = gen::env(rng, worlds, free_symbols(c));
    KripkeModel m(frame, ref::to_valuation(env));
    ASSERT_EQ(holds_comp(m, c), ref::holds(ref::from(frame), env, c)) << print_complex(c);
  }
}

TEST(Evaluator, QuantifierDuality) {
  gen::Rng rng(33);
  for (int n = 0; n < 300; ++n) {
    Formula body = gen::formula(rng, {});
    Formula all = Formula::forall_prop("p", body);
    Formula dual = Formula::neg(Formula::exists_prop("p", Formula::neg(body)));
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    KripkeModel m(frame, ref::to_valuation(gen::env(rng, worlds, free_symbols(all))));
    ASSERT_EQ(extension(m, all), extension(m, dual)) << print_formula(body);
  }
}

TEST(Evaluator, SingleInequalityComplexMatchesHoldsIneq) {
  gen::Rng rng(34);
  for (int n = 0; n < 300; ++n) {
    Inequality q = gen::inequality(rng, {});
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    Complex c = Complex::ineq(q);
    KripkeModel m(frame, ref::to_valuation(gen::env(rng, worlds, free_symbols(c))));
    bool global = (extension(m, q.lhs) & ~extension(m, q.rhs) & frame.all()) == 0;
    ASSERT_EQ(holds_ineq(m, q), global);
    ASSERT_EQ(holds_comp(m, c), global);
  }
}

TEST(FrameValid, IsomorphismInvariant) {
  gen::Rng rng(35);
  gen::FormulaSpec spec;
  spec.depth = 3;
  for (int n = 0; n < 150; ++n) {
    Formula f = gen::formula(rng, spec);
    KripkeFrame frame = gen::frame(rng, 3);
    std::vector<std::size_t> perm{0, 1, 2};
    std::shuffle(perm.begin(), perm.end(), rng);
    KripkeFrame moved = frame.permuted(perm);
    ASSERT_EQ(frame_valid(frame, f), frame_valid(moved, f)) << print_formula(f);
    for (std::size_t k = 0; k < 3; ++k) {
      for (std::size_t j = 0; j < 3; ++j) {
        ASSERT_EQ(moved.related(k, j), frame.related(perm[k], perm[j]));
      }
    }
  }
}

TEST(FrameValid, AgreesWithNaiveOracle) {
  gen::Rng rng(36);
  gen::FormulaSpec spec;
  spec.depth = 3;
  for (int n = 0; n < 150; ++n) {
    Formula f = gen::formula(rng, spec);
    KripkeFrame frame = gen::frame(rng, static_cast<std::size_t>(gen::uniform(rng, 1, 2)));
    ASSERT_EQ(frame_valid(frame, f), ref::valid(ref::from(frame), f)) << print_formula(f);
  }
}

TEST(KripkeFrame, ConstructionErrors) {
  EXPECT_THROW(KripkeFrame({}, {}), InputError);
  EXPECT_THROW(KripkeFrame({"a"}, {{0, 1}}), InputError);
  EXPECT_THROW(KripkeFrame({"a", "a"}, {}), InputError);
  KripkeFrame f({"a", "b"}, {{0, 1}});
  EXPECT_THROW(f.index_of("c"), InputError);
  EXPECT_EQ(f.predecessors(1), WorldSet{1});
}
