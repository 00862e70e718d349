#include "cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "sopml/alba.hpp"
#include "sopml/error.hpp"
#include "sopml/first_order.hpp"
#include "sopml/fragment.hpp"
#include "sopml/kripke.hpp"
#include "sopml/pi2.hpp"
#include "sopml/syntax.hpp"

namespace sopml::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string input;
  std::string file;
  std::string second;
  std::string frame_file;
  bool trace = false;
  bool no_verify = false;
  std::size_t max_size = 3;
  std::string format = "text";

  bool as_json() const { return format == "json"; }
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string formula_text(const Options& o) {
  if (!o.file.empty()) {
    if (!o.input.empty()) throw InputError("give the formula inline or with --file, not both");
    return read_file(o.file);
  }
  if (o.input.empty()) throw InputError("no formula given");
  return o.input;
}

struct SelfCheck {
  std::size_t frames = 0;
  std::optional<KripkeFrame> witness;
};

SelfCheck self_check(const Formula& phi, const FoFormula& sentence, std::size_t max_size) {
  SelfCheck c;
  for_each_frame(max_size, [&](const KripkeFrame& f) {
    ++c.frames;
    if (frame_valid(f, phi) != fo_eval(f, sentence)) {
      c.witness = f;
      return false;
    }
    return true;
  });
  return c;
}

void warn_size(const Options& o, std::ostream& err) {
  if (o.max_size > 4) {
    err << "warning: --max-size " << o.max_size << " enumerates 2^(n*n) frames per size n, each "
        << "with every valuation; expect a very long run\n";
  }
}

// Shared tail of correspond and translate-rule. Returns the exit code.
int report_reduction(const Options& o, json j, const Formula& phi, const AlbaResult& reduction,
                     const FoFormula& sentence, std::ostream& out, std::ostream& err) {
  j["output"] = print_complex(reduction.output);
  j["sentence"] = print_fo(sentence);
  std::optional<SelfCheck> check;
  if (!o.no_verify) {
    warn_size(o, err);
    check = self_check(phi, sentence, o.max_size);
  }
  j["verified_frames"] = check && !check->witness ? json(check->frames) : json(nullptr);
  if (check && check->witness) j["counterexample"] = json::parse(print_frame_json(*check->witness));
  if (o.trace) j["trace"] = json::parse(trace_json(reduction.trace));

  if (o.as_json()) {
    out << j.dump(2) << "\n";
  } else {
    out << print_fo(sentence) << "\n";
    out << "reduction: " << print_complex(reduction.output) << "\n";
    if (o.trace) out << "trace:\n" << trace_json(reduction.trace, 2) << "\n";
    if (check && !check->witness) {
      out << "verified on " << check->frames << " frames (size <= " << o.max_size << ")\n";
    }
  }
  if (check && check->witness) {
    err << "self-check failed: the formula and its correspondent disagree on frame "
        << print_frame_json(*check->witness) << "\n";
    return kSelfCheckFailed;
  }
  return kOk;
}

int rejected(const Options& o, const Rejected& e, std::ostream& out, std::ostream& err) {
  if (o.as_json()) {
    out << json{{"accepted", false}, {"code", e.code()}, {"reason", e.what()}}.dump(2) << "\n";
  }
  err << "rejected (" << e.code() << "): " << e.what() << "\n";
  return kRejected;
}

int cmd_classify(const Options& o, std::ostream& out, std::ostream& err) {
  std::string text = formula_text(o);
  Formula phi = parse_formula(text);
  auto v = classify_sahlqvist(phi);
  if (!v) {
    const Rejection& r = v.rejection();
    if (o.as_json()) {
      out << json{{"command", "classify"},
                  {"formula", print_formula(phi)},
                  {"accepted", false},
                  {"code", r.code},
                  {"reason", r.reason},
                  {"at", print_formula(r.at)}}
                 .dump(2)
          << "\n";
    } else {
      out << "rejected (" << r.code << "): " << r.reason << "\n  at: " << print_formula(r.at)
          << "\n";
    }
    return kRejected;
  }
  const SahlqvistDerivation& d = v.value();
  if (o.as_json()) {
    out << json{{"command", "classify"},
                {"formula", print_formula(phi)},
                {"accepted", true},
                {"level", d.level},
                {"class", "Pi_" + std::to_string(d.level) + "-Sahlqvist"},
                {"outline", describe(d)}}
               .dump(2)
        << "\n";
  } else {
    out << describe(d);
  }
  (void)err;
  return kOk;
}

int cmd_correspond(const Options& o, std::ostream& out, std::ostream& err) {
  Formula phi = parse_formula(formula_text(o));
  Correspondence c = correspond_full(phi);
  json j{{"command", "correspond"},
         {"formula", print_formula(phi)},
         {"accepted", true},
         {"level", c.derivation.level}};
  return report_reduction(o, std::move(j), phi, c.reduction, c.sentence, out, err);
}

int cmd_translate_rule(const Options& o, std::ostream& out, std::ostream& err) {
  if (o.input.empty()) throw InputError("no rule file given");
  std::string text = o.input;
  std::ifstream probe(o.input);
  if (probe || o.input.find('{') == std::string::npos) text = read_file(o.input);
  Pi2Rule rule = parse_rule_json(text);
  Pi2Result res = rule_correspondent_full(rule);
  json j{{"command", "translate-rule"},
         {"kind", std::string(pi2_kind_name(rule.kind))},
         {"formula", print_formula(res.formula)},
         {"accepted", true}};
  return report_reduction(o, std::move(j), res.formula, res.reduction, res.sentence, out, err);
}

FoFormula closed_sentence(const std::string& text) {
  FoFormula f = parse_fo(text);
  FoSymbols free = fo_free_symbols(f);
  if (!free.individuals.empty() || !free.predicates.empty()) {
    std::string names;
    for (const auto& s : free.individuals) names += " " + s;
    for (const auto& s : free.predicates) names += " " + s;
    throw InputError("'" + text + "' is not a sentence; free:" + names);
  }
  return f;
}

int cmd_check_equiv(const Options& o, std::ostream& out, std::ostream& err) {
  FoFormula a = closed_sentence(o.input);
  FoFormula b = closed_sentence(o.second);
  warn_size(o, err);
  EquivalenceReport r = equiv_on_frames(a, b, o.max_size);
  if (o.as_json()) {
    json j{{"command", "check-equiv"},
           {"equivalent", r.equivalent},
           {"frames_checked", r.frames_checked},
           {"max_size", o.max_size}};
    j["witness"] = r.witness ? json::parse(print_frame_json(*r.witness)) : json(nullptr);
    out << j.dump(2) << "\n";
  } else if (r.equivalent) {
    out << "equivalent on " << r.frames_checked << " frames (size <= " << o.max_size << ")\n";
  } else {
    out << "not equivalent; witness frame:\n" << print_frame_json(*r.witness) << "\n";
  }
  return r.equivalent ? kOk : kRejected;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
  Formula phi = parse_formula(formula_text(o));
  KripkeFrame frame = parse_frame_json(read_file(o.frame_file));
  bool valid = frame_valid(frame, phi);
  Symbols free = free_symbols(phi);
  std::optional<std::vector<std::string>> holds_at;
  if (free.props.empty() && free.noms.empty()) {
    KripkeModel m(frame, Valuation{});
    WorldSet ext = extension(m, phi);
    holds_at.emplace();
    for (std::size_t w = 0; w < frame.size(); ++w) {
      if (contains(ext, w)) holds_at->push_back(frame.worlds()[w]);
    }
  }
  if (o.as_json()) {
    json j{{"command", "eval"}, {"formula", print_formula(phi)}, {"valid", valid}};
    j["holds_at"] = holds_at ? json(*holds_at) : json(nullptr);
    out << j.dump(2) << "\n";
  } else {
    out << (valid ? "valid" : "not valid") << " on the frame\n";
    if (holds_at) {
      out << "holds at:";
      for (const auto& w : *holds_at) out << " " << w;
      out << "\n";
    }
  }
  (void)err;
  return kOk;
}

void add_formula_input(CLI::App* sub, Options& o) {
  sub->add_option("formula", o.input, "Formula in concrete syntax");
  sub->add_option("--file", o.file, "Read the formula from a file");
}

void add_format(CLI::App* sub, Options& o) {
  sub->add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
}

void add_verification(CLI::App* sub, Options& o) {
  sub->add_flag("--trace", o.trace, "Print the rule-by-rule derivation as JSON");
  sub->add_flag("--no-verify", o.no_verify, "Skip the frame-by-frame self-check");
  sub->add_option("--max-size", o.max_size, "Largest frame size of the self-check")
      ->check(CLI::Range(1, 7))
      ->capture_default_str();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Correspondence engine for second-order propositional modal logic"};
  app.require_subcommand(1);
  app.footer(
      "Cost: checks over all frames up to size n visit 2^(n*n) frames per size (n <= 3: 530 "
      "frames) and, for each, every valuation of the formula's variables. Sizes above 4 are "
      "rarely practical.\n"
      "Exit codes: 0 success, 1 rejected or not equivalent, 2 input error, 3 self-check "
      "failure.");
  Options o;

  auto* classify = app.add_subcommand("classify", "Decide Pi_n-Sahlqvist membership");
  add_formula_input(classify, o);
  add_format(classify, o);

  auto* correspond = app.add_subcommand("correspond", "Compute the first-order correspondent");
  add_formula_input(correspond, o);
  add_format(correspond, o);
  add_verification(correspond, o);

  auto* equiv = app.add_subcommand("check-equiv", "Compare two sentences on all small frames");
  equiv->add_option("a", o.input, "First sentence")->required();
  equiv->add_option("b", o.second, "Second sentence")->required();
  equiv->add_option("--max-size", o.max_size, "Largest frame size")
      ->check(CLI::Range(1, 7))
      ->capture_default_str();
  add_format(equiv, o);

  auto* rule = app.add_subcommand("translate-rule", "Correspondent of a Pi_2-rule");
  rule->add_option("rule", o.input, "Rule JSON file (or inline JSON)")->required();
  add_format(rule, o);
  add_verification(rule, o);

  auto* eval = app.add_subcommand("eval", "Evaluate a formula on a frame file");
  add_formula_input(eval, o);
  eval->add_option("--frame", o.frame_file, "Frame JSON file")->required();
  add_format(eval, o);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (*classify) return cmd_classify(o, out, err);
    if (*correspond) return cmd_correspond(o, out, err);
    if (*equiv) return cmd_check_equiv(o, out, err);
    if (*rule) return cmd_translate_rule(o, out, err);
    if (*eval) return cmd_eval(o, out, err);
  } catch (const Rejected& e) {
    return rejected(o, e, out, err);
  } catch (const InternalFault& e) {
    err << "internal error: " << e.what() << "\n";
    return kSelfCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}

}  // namespace sopml::cli
