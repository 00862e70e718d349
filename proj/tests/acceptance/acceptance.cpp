// Runs the ten acceptance criteria at their stated sizes and time limits and
// prints one [PASS]/[FAIL] line each. Exit status is nonzero if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "generators.hpp"
#include "sopml/alba.hpp"
#include "sopml/error.hpp"
#include "sopml/first_order.hpp"
#include "sopml/fragment.hpp"
#include "sopml/kripke.hpp"
#include "sopml/pi2.hpp"
#include "sopml/syntax.hpp"

using namespace sopml;

namespace {

struct Outcome {
  bool ok;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<Outcome()> check;
};

Formula F(const char* s) { return parse_formula(s); }
FoFormula FO(const char* s) { return parse_fo(s); }

const char* kIrreflexivity = "!q.(!p.(p -> <>p | q) -> q)";
const char* kNonDefinable = "!p.([]p & !q.(q -> <><>q | p) -> p)";
const char* kExample1 = "!p. (<>[]p & !q. (<>[]q -> []([]q | []p)) -> []<>[]p)";

Outcome equivalent_to(const FoFormula& got, const char* want, std::size_t max_size) {
  EquivalenceReport r = equiv_on_frames(got, FO(want), max_size);
  if (!r.equivalent) {
    return {false, "differs from " + std::string(want) + " on " + print_frame_json(*r.witness)};
  }
  return {true, "equivalent to " + std::string(want) + " on " + std::to_string(r.frames_checked) +
                    " frames"};
}

Outcome golden_irreflexivity() {
  return equivalent_to(correspond(F(kIrreflexivity)), "forall x. ~R(x,x)", 3);
}

Outcome golden_non_definable() {
  FoFormula s = correspond(F(kNonDefinable));
  Outcome v = equivalent_to(s, "forall x. forall y. (R(x,y) & R(y,x) -> R(x,x))", 3);
  if (!v.ok) return v;
  KripkeFrame two_cycle = KripkeFrame::from_successors({0b10, 0b01});
  KripkeFrame reflexive_point = KripkeFrame::from_successors({0b1});
  if (fo_eval(two_cycle, s)) return {false, "the 2-cycle validates the correspondent"};
  if (!fo_eval(reflexive_point, s)) return {false, "the reflexive point refutes the correspondent"};
  return {true, v.detail + "; 2-cycle refutes, reflexive point validates"};
}

Outcome golden_example_one() {
  Formula phi = F(kExample1);
  Correspondence c = correspond_full(phi);
  if (!is_pure(c.reduction.output)) return {false, "output is not pure"};
  if (!is_first_order(c.sentence)) return {false, "sentence is not first-order"};
  std::size_t frames = 0;
  std::optional<KripkeFrame> bad;
  for_each_frame(3, [&](const KripkeFrame& f) {
    ++frames;
    if (frame_valid(f, phi) != fo_eval(f, c.sentence)) {
      bad = f;
      return false;
    }
    return true;
  });
  if (bad) return {false, "disagreement on " + print_frame_json(*bad)};
  return {true, "frame_valid and fo_eval agree on " + std::to_string(frames) + " frames"};
}

Outcome gabbay_rule() {
  namespace fs = std::filesystem;
  fs::path file = fs::temp_directory_path() / "sopml_acceptance_gabbay.json";
  std::ofstream(file) << R"({"kind": "gabbay"})";
  std::string path = file.string();
  const char* argv[] = {"sopml", "translate-rule", path.c_str(), "--no-verify"};
  std::ostringstream out;
  std::ostringstream err;
  int code = cli::run(4, argv, out, err);
  fs::remove(file);
  if (code != cli::kOk) return {false, "translate-rule exited " + std::to_string(code) + ": " + err.str()};
  std::string first = out.str().substr(0, out.str().find('\n'));
  return equivalent_to(parse_fo(first), "forall x. ~R(x,x)", 3);
}

Outcome success_theorem() {
  gen::Rng rng(5001);
  gen::SahlqvistSpec spec{3, 4, 3};
  int per_level[4] = {0, 0, 0, 0};
  const int total = 200;
  for (int n = 0; n < total; ++n) {
    Formula f = gen::sahlqvist(rng, spec);
    auto v = classify_sahlqvist(f);
    if (!v) return {false, "generator emitted a rejected formula: " + print_formula(f)};
    ++per_level[v.value().level];
    AlbaResult r = run(v.value());
    if (!is_pure(r.output)) {
      return {false, "impure output for " + print_formula(f) + ": " + print_complex(r.output)};
    }
  }
  std::ostringstream s;
  s << total << " formulas (levels 1/2/3: " << per_level[1] << "/" << per_level[2] << "/"
    << per_level[3] << "), all pure";
  return {per_level[3] > 0, s.str()};
}

Outcome soundness_theorem() {
  gen::Rng rng(6001);
  // Nested subset enumeration dominates: two variables per bunch keeps the
  // level-3 inputs on 3-world frames tractable.
  gen::SahlqvistSpec spec{2, 4, 3};
  auto small = enumerate_frames(2);
  const int total = 100;
  std::size_t checks = 0;
  for (int n = 0; n < total; ++n) {
    Formula f = gen::sahlqvist(rng, spec);
    FoFormula sentence = correspond(f);
    std::vector<KripkeFrame> frames = small;
    for (int k = 0; k < 50; ++k) frames.push_back(gen::frame(rng, 3, 0.4));
    for (const auto& frame : frames) {
      ++checks;
      if (frame_valid(frame, f) != fo_eval(frame, sentence)) {
        return {false, print_formula(f) + " disagrees on " + print_frame_json(frame)};
      }
    }
  }
  return {true, std::to_string(total) + " formulas, " + std::to_string(checks) +
                    " frame checks, zero discrepancies"};
}

Outcome per_rule_soundness() {
  gen::Rng rng(7001);
  auto frames = enumerate_frames(2);
  const int wanted = 50;
  std::ostringstream summary;
  std::size_t rules = 0;
  for (Rule rule : all_rules()) {
    std::set<std::string> seen;
    for (int attempt = 0; attempt < 20000 && static_cast<int>(seen.size()) < wanted; ++attempt) {
      gen::Instance inst = gen::rule_candidate(rng, rule);
      std::string key = print_complex(inst.complex);
      if (seen.count(key) > 0) continue;
      std::optional<Complex> after;
      try {
        after = apply_rule(inst.complex, rule, inst.locus);
      } catch (const RuleError&) {
        continue;
      }
      seen.insert(key);
      for (const auto& f : frames) {
        if (frame_valid(f, inst.complex) != frame_valid(f, *after)) {
          return {false, std::string(rule_name(rule)) + ": " + key + " ~> " +
                             print_complex(*after) + " on " + print_frame_json(f)};
        }
      }
    }
    if (static_cast<int>(seen.size()) < wanted) {
      return {false, std::string(rule_name(rule)) + ": only " + std::to_string(seen.size()) +
                         " applicable instances"};
    }
    ++rules;
  }
  summary << rules << " rules x " << wanted << " distinct instances on " << frames.size()
          << " frames, zero discrepancies";
  return {rules >= 16, summary.str()};
}

Outcome standard_translation() {
  gen::Rng rng(8001);
  gen::FormulaSpec spec;
  spec.depth = 4;
  spec.prop_quantifiers = 2;
  const int total = 500;
  for (int n = 0; n < total; ++n) {
    Formula phi = gen::formula(rng, spec);
    std::size_t worlds = static_cast<std::size_t>(gen::uniform(rng, 1, 3));
    KripkeFrame frame = gen::frame(rng, worlds);
    Valuation v = ref::to_valuation(gen::env(rng, worlds, free_symbols(phi)));
    std::size_t w = static_cast<std::size_t>(gen::uniform(rng, 0, static_cast<int>(worlds) - 1));
    FoAssignment a;
    a.individuals = v.noms;
    for (const auto& [p, s] : v.props) a.predicates[predicate_name(p)] = s;
    a.individuals["x"] = w;
    if (eval_at(KripkeModel(frame, v), w, phi) != fo_eval(frame, st_formula(phi, "x"), a)) {
      return {false, print_formula(phi) + " at w" + std::to_string(w) + " on " +
                         print_frame_json(frame)};
    }
  }
  return {true, std::to_string(total) + " triples agree"};
}

Outcome classifier_sanity() {
  struct Case {
    const char* text;
    int level;  // 0: rejected
  };
  const Case cases[] = {
      {"!p. (p -> <>p)", 1},        {"!p. ([]p -> [][]p)", 1}, {"!p. (p -> []<>p)", 1},
      {kExample1, 2},               {kIrreflexivity, 2},       {kNonDefinable, 2},
      {"?p. p", 0},                 {"!p. !q. (<>(p -> q) -> p)", 0},
  };
  for (const auto& c : cases) {
    auto v = classify_sahlqvist(F(c.text));
    int got = v ? v.value().level : 0;
    if (got != c.level) {
      return {false, std::string(c.text) + ": expected level " + std::to_string(c.level) +
                         ", got " + std::to_string(got)};
    }
  }
  return {true, "3 level-1, 3 level-2, 2 rejected"};
}

Outcome round_trip() {
  gen::Rng rng(10001);
  gen::FormulaSpec spec;
  spec.depth = 5;
  spec.prop_quantifiers = 3;
  const int total = 1000;
  for (int n = 0; n < total; ++n) {
    Formula f = gen::formula(rng, spec);
    if (parse_formula(print_formula(f)) != f) return {false, "formula " + print_formula(f)};
    Inequality i = gen::inequality(rng, spec);
    if (!(parse_inequality(print_inequality(i)) == i)) {
      return {false, "inequality " + print_inequality(i)};
    }
    Complex c = gen::complex(rng, {}, 3);
    if (parse_complex(print_complex(c)) != c) return {false, "complex " + print_complex(c)};
    FoFormula fo = gen::fo(rng, 5);
    if (parse_fo(print_fo(fo)) != fo) return {false, "first-order " + print_fo(fo)};
  }
  return {true, std::to_string(total) + " values of each of 4 kinds"};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "golden irreflexivity", 1, golden_irreflexivity},
      {2, "golden non-definable", 1, golden_non_definable},
      {3, "golden example 1", 30, golden_example_one},
      {4, "Gabbay rule translation", 1, gabbay_rule},
      {5, "success theorem", 60, success_theorem},
      {6, "soundness theorem", 300, soundness_theorem},
      {7, "per-rule soundness", 300, per_rule_soundness},
      {8, "standard translation", 60, standard_translation},
      {9, "classifier sanity", 60, classifier_sanity},
      {10, "round trip", 60, round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome v{false, ""};
    try {
      v = c.check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (v.ok && seconds > c.limit_seconds) {
      v.ok = false;
      v.detail += "; over the time limit";
    }
    char timing[64];
    std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", seconds, c.limit_seconds);
    std::cout << (v.ok ? "[PASS] " : "[FAIL] ") << c.id << ". " << c.name << " (" << timing
              << "): " << v.detail << std::endl;
    if (!v.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
