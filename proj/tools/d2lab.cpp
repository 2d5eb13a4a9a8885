// d2lab: command-line front end for matrix checks, the S5/D2 decider, the
// published-claim verifier and the matrix search.
//
// Exit codes: 0 expected/valid, 1 refutation/countermodel/finding,
// 2 usage or parse error, 3 resource limit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "d2lab/axioms.hpp"
#include "d2lab/fixtures.hpp"
#include "d2lab/formula.hpp"
#include "d2lab/json.hpp"
#include "d2lab/matrix.hpp"
#include "d2lab/matrix_io.hpp"
#include "d2lab/modal.hpp"
#include "d2lab/search.hpp"
#include "d2lab/verify.hpp"

namespace {

using namespace d2lab;

constexpr int kExitOk = 0;
constexpr int kExitFound = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

struct Report {
  json result = json::object();
  std::vector<Finding> findings;
  std::string text;
  int exit_code = kExitOk;
};

struct Options {
  std::string format = "text";
  std::string formula;
  std::string matrix;
  std::string assign;
  std::vector<std::string> system;
  std::vector<std::string> refute;
  std::string dconj = "right";
  bool no_outer_diamond = false;
  int atom_limit = kDefaultAtomLimit;
  int size = 3;
  std::vector<Value> designated;
  std::vector<Value> neg;
  bool prune = false;
  std::size_t limit = 0;
  double budget = -1;
  std::size_t show = 20;
  std::string out_dir;
};

/// An axiom id (DDK10, C13) or a formula in the given language.
Formula resolve_formula(const std::string& text, Language lang) {
  if (auto ax = find_axiom(text)) return ax->scheme;
  return parse(text, lang);
}

Matrix resolve_matrix(const std::string& arg) {
  static const std::regex kFixture("P[0-9]+");
  if (std::regex_match(arg, kFixture)) return fixture_matrix(arg);
  return load_matrix_file(arg);
}

D2Options d2_options(const Options& o) {
  D2Options d;
  if (o.dconj == "left")
    d.dconj = DConjVariant::left;
  else if (o.dconj != "right")
    throw std::invalid_argument("--dconj must be 'left' or 'right'");
  d.outer_diamond = !o.no_outer_diamond;
  d.atom_limit = o.atom_limit;
  return d;
}

std::string verdict_text(const Verdict& v) {
  if (v.valid()) return "VALID (" + certificate_text(v) + ")";
  return "INVALID; countermodel " + certificate_text(v);
}

Report cmd_eval(const Options& o) {
  const Matrix m = resolve_matrix(o.matrix);
  const Formula f = resolve_formula(o.formula, Language::discursive);
  Assignment a;
  std::stringstream ss(o.assign);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw std::invalid_argument("malformed assignment '" + item + "'");
    a[item.substr(0, eq)] = std::stoi(item.substr(eq + 1));
  }
  const Value v = eval(m, f, a);
  Report r;
  r.result = {{"formula", render(f)}, {"assignment", to_json(a)}, {"value", v}, {"designated", m.is_designated(v)}};
  r.text = render(f) + " = " + std::to_string(v) + (m.is_designated(v) ? " (designated)" : " (not designated)");
  r.exit_code = m.is_designated(v) ? kExitOk : kExitFound;
  return r;
}

Report cmd_check(const Options& o) {
  const Matrix m = resolve_matrix(o.matrix);
  AxiomSystem sys;
  if (o.system.size() == 1 && (o.system[0] == "C" || o.system[0] == "D"))
    sys = axiom_system(o.system[0]);
  else
    sys = {"custom", resolve_axioms(o.system)};
  const auto rep = check_system(m, sys, o.matrix, resolve_axioms(o.refute));
  Report r;
  r.result = to_json(rep);
  std::ostringstream t;
  t << "matrix " << o.matrix << " vs system " << sys.id << "\n";
  for (const auto& a : rep.axioms) {
    t << "  " << a.axiom_id << ": " << (a.check.passed() ? "pass" : "FAIL");
    if (!a.check.passed())
      t << " at " << format_assignment(a.check.failure->witness) << " -> " << a.check.failure->value;
    t << "\n";
  }
  t << "  MP: " << (rep.mp.passed() ? "pass" : "FAIL");
  if (!rep.mp.passed()) t << " at a=" << rep.mp.failure->first << ", b=" << rep.mp.failure->second;
  t << "\n";
  for (const auto& a : rep.refutations) {
    t << "  refute " << a.axiom_id << ": ";
    if (a.check.passed())
      t << "NOT refuted\n";
    else
      t << "refuted at " << format_assignment(a.check.failure->witness) << " -> " << a.check.failure->value << "\n";
  }
  r.text = t.str();
  r.exit_code = rep.all_axioms_pass() && rep.mp.passed() && rep.all_refuted() ? kExitOk : kExitFound;
  return r;
}

Report verdict_report(const Formula& shown, const Formula& decided, const Verdict& v) {
  Report r;
  r.result = {{"formula", render(shown)}, {"obligation", render(decided)}, {"verdict", to_json(v)}};
  r.text = verdict_text(v);
  r.exit_code = v.valid() ? kExitOk : kExitFound;
  return r;
}

Report cmd_s5(const Options& o) {
  const Formula f = parse(o.formula, Language::modal);
  return verdict_report(f, f, s5_valid(f, o.atom_limit));
}

Report cmd_d2(const Options& o) {
  Formula f = resolve_formula(o.formula, Language::discursive);
  if (!is_ground(f)) f = canonical_instance(f);
  const auto opts = d2_options(o);
  return verdict_report(f, d2_obligation(f, opts), d2_valid(f, opts));
}

Report cmd_translate(const Options& o) {
  Formula f = resolve_formula(o.formula, Language::discursive);
  if (!is_ground(f)) f = canonical_instance(f);
  const Formula t = translate(f, {d2_options(o).dconj});
  Report r;
  r.result = {{"formula", render(f)}, {"translation", render(t)}};
  r.text = render(t);
  return r;
}

Report cmd_classify(const Options& o) {
  const auto opts = d2_options(o);
  Report r;
  std::ostringstream t;
  json drows = json::array(), crows = json::array();
  auto row_line = [&](const ClassificationRow& row) {
    t << "  " << row.axiom_id << "  " << (row.verdict.valid() ? "valid  " : "INVALID") << "  mark '"
      << mark_char(row.mark) << "'  " << agreement_name(row.agreement);
    if (row.variants_differ())
      t << "  [" << variant_name(row.variant) << " ^: " << (row.verdict.valid() ? "valid" : "invalid") << ", "
        << (row.variant == DConjVariant::right ? "left" : "right") << " ^: "
        << (row.alt_verdict->valid() ? "valid" : "invalid") << "]";
    t << "\n      " << render(row.instance) << "\n      " << certificate_text(row.verdict) << "\n";
  };
  t << "D axioms (D2 validity of canonical instances)\n";
  for (const auto& row : classify_d_axioms(opts)) {
    row_line(row);
    drows.push_back(to_json(row));
    if (row.agreement == Agreement::disagrees)
      r.findings.push_back({row.axiom_id, std::string("table mark '") + mark_char(row.mark) + "'",
                            row.verdict.valid() ? "D2-valid" : "D2-invalid", certificate_text(row.verdict)});
  }
  t << "C axioms (expected valid by soundness of C)\n";
  for (const auto& row : check_c_axioms(opts)) {
    row_line(row);
    crows.push_back(to_json(row));
    if (!row.verdict.valid())
      r.findings.push_back({row.axiom_id, "D2-valid (soundness of C)", "D2-invalid", certificate_text(row.verdict)});
  }
  r.result = {{"variant", variant_name(opts.dconj)},
              {"outer_diamond", opts.outer_diamond},
              {"d_axioms", drows},
              {"c_axioms", crows}};
  r.text = t.str();
  r.exit_code = r.findings.empty() ? kExitOk : kExitFound;
  return r;
}

Report cmd_claims_verify(const Options&) {
  Report r;
  std::ostringstream t;
  json records = json::array();
  for (const auto& rec : verify_published_claims()) {
    records.push_back(to_json(rec));
    t << "Claim " << rec.claim.number << ": " << rec.claim.matrix_id << " validates "
      << rec.claim.system_id << " and refutes " << rec.claim.target_id << " -> "
      << (rec.confirmed() ? "confirmed" : "FINDINGS") << "\n";
    if (rec.target_refuted())
      t << "    " << rec.claim.target_id << " refuted at " << format_assignment(rec.target().check.failure->witness)
        << " -> " << rec.target().check.failure->value << "\n";
    for (const auto& f : rec.findings) {
      t << "    FINDING " << f.subject << ": " << f.computed << " [" << f.certificate << "]\n";
      r.findings.push_back(f);
    }
  }
  r.result = {{"records", records}};
  r.text = t.str();
  r.exit_code = r.findings.empty() ? kExitOk : kExitFound;
  return r;
}

Report cmd_search(const Options& o) {
  SearchConstraints c;
  c.size = o.size;
  c.validate = resolve_axioms(o.system);
  c.refute = resolve_axioms(o.refute);
  if (!o.designated.empty()) c.designated = o.designated;
  if (!o.neg.empty()) c.neg = o.neg;
  c.prune_isomorphs = o.prune;
  if (o.limit) c.limit = o.limit;
  double budget = o.budget;
  if (budget < 0)
    if (const char* env = std::getenv("D2LAB_BUDGET")) budget = std::stod(env);
  if (budget >= 0) c.budget = std::chrono::milliseconds(static_cast<long long>(budget * 1000));

  if (!o.out_dir.empty()) std::filesystem::create_directories(o.out_dir);
  MatrixSearch search(c);
  std::size_t count = 0;
  json shown = json::array();
  std::ostringstream t;
  const auto term = search.run([&](const Matrix& m) {
    ++count;
    if (!o.out_dir.empty()) {
      char name[32];
      std::snprintf(name, sizeof name, "match_%06zu.matrix", count);
      std::ofstream(std::filesystem::path(o.out_dir) / name) << write_matrix(m);
    }
    if (shown.size() < o.show) {
      shown.push_back(to_json(m));
      t << "# match " << count << "\n" << write_matrix(m);
    }
    return true;
  });
  Report r;
  r.result = {{"count", count},
              {"termination", termination_name(term)},
              {"nodes", search.nodes()},
              {"matrices", shown}};
  r.text = t.str() + std::to_string(count) + " matrices; search " + termination_name(term) + " after " +
           std::to_string(search.nodes()) + " nodes";
  r.exit_code = term == Termination::budget_exhausted ? kExitLimit : kExitOk;
  return r;
}

Report cmd_export_fixtures(const Options& o) {
  const std::string dir = o.out_dir.empty() ? "fixtures" : o.out_dir;
  std::filesystem::create_directories(dir);
  json files = json::array();
  for (const auto& claim : published_claims()) {
    const auto path = std::filesystem::path(dir) / (claim.matrix_id + ".matrix");
    std::ofstream(path) << "# Claim " << claim.number << ": validates " << claim.system_id << ", refutes "
                        << claim.target_id << "\n"
                        << write_matrix(fixture_matrix(claim.matrix_id));
    files.push_back(path.string());
  }
  Report r;
  r.result = {{"files", files}};
  r.text = "wrote " + std::to_string(files.size()) + " fixture files to " + dir;
  return r;
}

void emit(const Options& o, const std::vector<std::string>& argv, const std::string& sub, const Report& r,
          const std::string& error = {}) {
  if (o.format == "json") {
    json findings = json::array();
    for (const auto& f : r.findings) findings.push_back(to_json(f));
    json j = {{"command", argv}, {"subcommand", sub}, {"findings", findings}, {"exit_code", r.exit_code}};
    if (error.empty())
      j["result"] = r.result;
    else
      j["error"] = error;
    std::cout << j.dump(2) << "\n";
    return;
  }
  if (!error.empty()) {
    std::cerr << "d2lab: " << error << "\n";
    return;
  }
  std::cout << r.text;
  if (!r.text.empty() && r.text.back() != '\n') std::cout << "\n";
  if (!r.findings.empty()) std::cout << r.findings.size() << " finding(s)\n";
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  Options o;
  CLI::App app{"Adjudication toolkit for axiomatizations of the discussive logic D2"};
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

  auto add_formula = [&](CLI::App* sub, const char* what) { sub->add_option("formula", o.formula, what)->required(); };
  auto add_d2_flags = [&](CLI::App* sub) {
    sub->add_option("--dconj", o.dconj, "Diamond placement for ^ in the translation")
        ->check(CLI::IsMember({"left", "right"}));
    sub->add_flag("--no-outer-diamond", o.no_outer_diamond, "Decide S5 validity of tau(f) instead of <>tau(f)");
    sub->add_option("--atom-limit", o.atom_limit, "Maximum number of atoms for the S5 decider")
        ->check(CLI::Range(0, kMaxAtomLimit));
  };

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula in a matrix under an assignment");
  eval_cmd->add_option("-m,--matrix", o.matrix, "Fixture id (P1..P13) or matrix file")->required();
  add_formula(eval_cmd, "Discursive formula or axiom id");
  eval_cmd->add_option("-a,--assign", o.assign, "Assignment, e.g. p=1,q=2 or A=3");

  auto* check_cmd = app.add_subcommand("check", "Check a matrix against an axiom system");
  check_cmd->add_option("-m,--matrix", o.matrix, "Fixture id (P1..P13) or matrix file")->required();
  check_cmd->add_option("-s,--system", o.system, "C, D, or a list of axiom ids")->required()->delimiter(',');
  check_cmd->add_option("-r,--refute", o.refute, "Axiom ids expected to be refuted")->delimiter(',');

  auto* s5_cmd = app.add_subcommand("s5", "Decide S5 validity of a modal formula");
  add_formula(s5_cmd, "Modal formula");
  s5_cmd->add_option("--atom-limit", o.atom_limit, "Maximum number of atoms")->check(CLI::Range(0, kMaxAtomLimit));

  auto* d2_cmd = app.add_subcommand("d2", "Decide D2 validity of a discursive formula or axiom");
  add_formula(d2_cmd, "Discursive formula or axiom id (schemes use their canonical instance)");
  add_d2_flags(d2_cmd);

  auto* tr_cmd = app.add_subcommand("translate", "Print the modal translation of a discursive formula");
  add_formula(tr_cmd, "Discursive formula or axiom id");
  tr_cmd->add_option("--dconj", o.dconj, "Diamond placement for ^")->check(CLI::IsMember({"left", "right"}));

  auto* cl_cmd = app.add_subcommand("classify", "Classify DDK10..DDK22 and C1..C15 by D2 validity");
  add_d2_flags(cl_cmd);

  auto* pv_cmd = app.add_subcommand("paper-verify", "Replay the thirteen published countermodel claims");

  auto* se_cmd = app.add_subcommand("search", "Search for matrices validating axioms and refuting targets");
  se_cmd->add_option("-n,--size", o.size, "Number of truth values")->check(CLI::Range(1, 6));
  se_cmd->add_option("-s,--validate", o.system, "C, D, or a list of axiom ids")->delimiter(',');
  se_cmd->add_option("-r,--refute", o.refute, "Axiom ids to refute")->delimiter(',');
  se_cmd->add_option("--designated", o.designated, "Fixed designated set")->delimiter(',');
  se_cmd->add_option("--neg", o.neg, "Fixed negation table")->delimiter(',');
  se_cmd->add_flag("--prune", o.prune, "Keep only canonical representatives under isomorphism");
  se_cmd->add_option("--limit", o.limit, "Stop after this many matrices");
  se_cmd->add_option("--budget", o.budget, "Time budget in seconds (default: $D2LAB_BUDGET, else none)");
  se_cmd->add_option("--show", o.show, "Print at most this many matrices");
  se_cmd->add_option("-o,--out", o.out_dir, "Write every match as a matrix file into this directory");

  auto* ex_cmd = app.add_subcommand("export-fixtures", "Write the published matrices as matrix files");
  ex_cmd->add_option("-o,--out", o.out_dir, "Output directory (default: fixtures)");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  CLI::App* chosen = app.get_subcommands().front();
  const std::string sub = chosen->get_name();
  Report r;
  try {
    if (chosen == eval_cmd) r = cmd_eval(o);
    else if (chosen == check_cmd) r = cmd_check(o);
    else if (chosen == s5_cmd) r = cmd_s5(o);
    else if (chosen == d2_cmd) r = cmd_d2(o);
    else if (chosen == tr_cmd) r = cmd_translate(o);
    else if (chosen == cl_cmd) r = cmd_classify(o);
    else if (chosen == pv_cmd) r = cmd_claims_verify(o);
    else if (chosen == se_cmd) r = cmd_search(o);
    else r = cmd_export_fixtures(o);
  } catch (const AtomLimitError& e) {
    r.exit_code = kExitLimit;
    emit(o, args, sub, r, e.what());
    return r.exit_code;
  } catch (const LimitError& e) {
    r.exit_code = kExitLimit;
    emit(o, args, sub, r, e.what());
    return r.exit_code;
  } catch (const std::exception& e) {
    r.exit_code = kExitUsage;
    emit(o, args, sub, r, e.what());
    return r.exit_code;
  }
  emit(o, args, sub, r);
  return r.exit_code;
}
