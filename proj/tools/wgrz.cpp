#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "wgrz/error.hpp"
#include "wgrz/kripke.hpp"
#include "wgrz/kripke_json.hpp"
#include "wgrz/modal.hpp"
#include "wgrz/qbf.hpp"
#include "wgrz/qbf_semantics.hpp"
#include "wgrz/reduction.hpp"
#include "wgrz/solver.hpp"
#include "wgrz/verify.hpp"

namespace {

using namespace wgrz;

constexpr int kPass = 0;
constexpr int kFail = 1;
constexpr int kUsage = 2;

// Failure the user should see as one "error: kind: message" line.
struct CommandError : Error {
  CommandError(std::string kind, const std::string& message) : Error(message), kind(std::move(kind)) {}
  std::string kind;
};

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("io", "cannot read " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

void write_file(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("io", "cannot write " + path);
  out << text;
}

// Formula text from the positional argument, or from --file ("-" is stdin).
struct FormulaInput {
  std::string text;
  std::string file;

  void attach(CLI::App* cmd, const std::string& what) {
    cmd->add_option("formula", text, what + " text");
    cmd->add_option("-f,--file", file, "read the formula from a file ('-' for stdin)");
  }

  std::string get() const {
    if (!file.empty()) return read_file(file);
    if (text.empty()) throw CLI::ValidationError("formula", "a formula argument or --file is required");
    return text;
  }
};

QbfFormula encoder_input(const std::string& text, bool prenex) {
  QbfFormula f = parse_qbf(text);
  if (prenex) f = normalize_prefix(to_prenex(universal_closure(f)));
  return f;
}

int print_truth(bool value) {
  std::cout << (value ? "true" : "false") << "\n";
  return value ? kPass : kFail;
}

QbfModel parse_model(const std::vector<int>& indices) {
  for (int i : indices) {
    if (i < 1) throw CommandError("usage", "model indices must be positive");
  }
  return {indices.begin(), indices.end()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Encodings of TQBF into the constant fragment of modal logics between K and wGrz"};
  app.require_subcommand(1);
  int status = kPass;

  // qbf -----------------------------------------------------------------
  auto* qbf = app.add_subcommand("qbf", "Quantified Boolean formulas");
  qbf->require_subcommand(1);

  FormulaInput eval_in;
  std::vector<int> eval_model;
  auto* eval = qbf->add_subcommand("eval", "Evaluate under a classical model; exit 1 when false");
  eval_in.attach(eval, "QBF");
  eval->add_option("-m,--model", eval_model, "indices of the true variables")->delimiter(',');
  eval->callback([&] { status = print_truth(evaluate(parse_model(eval_model), parse_qbf(eval_in.get()))); });

  FormulaInput tqbf_in;
  auto* tqbf = qbf->add_subcommand("tqbf", "Truth of the universal closure; exit 1 when false");
  tqbf_in.attach(tqbf, "QBF");
  tqbf->callback([&] { status = print_truth(is_true_qbf(parse_qbf(tqbf_in.get()))); });

  FormulaInput prenex_in;
  bool prenex_negate = false;
  bool prenex_normalize = false;
  auto* prenex = qbf->add_subcommand("prenex", "Prenex form of a closed formula");
  prenex_in.attach(prenex, "closed QBF");
  prenex->add_flag("--negate", prenex_negate, "print the prenex negation instead");
  prenex->add_flag("--normalize", prenex_normalize, "rename the i-th quantified variable to p_i");
  prenex->callback([&] {
    QbfFormula f = to_prenex(parse_qbf(prenex_in.get()));
    if (prenex_normalize) f = normalize_prefix(f);
    if (prenex_negate) f = negate_prenex(f);
    std::cout << render(f) << "\n";
  });

  // encode --------------------------------------------------------------
  FormulaInput encode_in;
  std::string stage = "star";
  bool encode_prenex = false;
  bool encode_expand = false;
  bool encode_size = false;
  auto* encode = app.add_subcommand("encode", "Build phi* or phi*_alpha for a closed prenex QBF");
  encode_in.attach(encode, "QBF");
  encode->add_option("--stage", stage, "star or alpha")->check(CLI::IsMember({"star", "alpha"}));
  encode->add_flag("--prenex", encode_prenex, "close, prenex and renumber the input first");
  encode->add_flag("--expand", encode_expand, "print without sugar");
  encode->add_flag("--size", encode_size, "print the symbol count instead of the formula");
  encode->callback([&] {
    const QbfFormula f = encoder_input(encode_in.get(), encode_prenex);
    ModalFormula out = stage == "star" ? encode_star(f).formula : encode_alpha(f);
    if (encode_size) {
      std::cout << formula_size(out) << "\n";
      return;
    }
    if (encode_expand) out = expand_sugar(out);
    std::cout << render(out) << "\n";
  });

  // sat -----------------------------------------------------------------
  FormulaInput sat_in;
  std::string engine = "tableau";
  int bound = 6;
  std::uint64_t budget = TableauOptions{}.node_budget;
  std::string witness_path;
  auto* sat = app.add_subcommand("sat", "K-satisfiability; exit 0 sat, 1 unsat or unknown");
  sat_in.attach(sat, "modal formula");
  sat->add_option("--engine", engine, "tableau or bounded")->check(CLI::IsMember({"tableau", "bounded"}));
  sat->add_option("--bound", bound, "world bound for the bounded engine")->check(CLI::PositiveNumber);
  sat->add_option("--budget", budget, "node budget for the tableau")->check(CLI::PositiveNumber);
  sat->add_option("--emit-witness", witness_path, "write the witness model JSON here");
  sat->callback([&] {
    const ModalFormula f = parse_modal(sat_in.get());
    const SatVerdict v = engine == "tableau" ? sat_k_tableau(f, {budget, true}) : sat_bounded(f, bound);
    std::cout << v.label() << " nodes=" << v.stats.nodes << " max_depth=" << v.stats.max_depth;
    if (v.witness) std::cout << " worlds=" << v.witness->frame().size();
    std::cout << "\n";
    if (v.witness && !witness_path.empty()) write_file(witness_path, dump_json(model_to_json(*v.witness)));
    if (v.outcome == SatOutcome::Unknown) throw CommandError("unknown", v.note);
    status = v.satisfiable() ? kPass : kFail;
  });

  // witness -------------------------------------------------------------
  FormulaInput witness_in;
  std::string witness_model = "tree";
  std::string witness_out;
  bool witness_prenex = false;
  bool witness_dot = false;
  auto* witness = app.add_subcommand("witness", "Quantifier-tree model or its extension M' as JSON");
  witness_in.attach(witness, "true closed prenex QBF");
  witness->add_option("--model", witness_model, "tree or extended")->check(CLI::IsMember({"tree", "extended"}));
  witness->add_flag("--prenex", witness_prenex, "close, prenex and renumber the input first");
  witness->add_flag("--dot", witness_dot, "print the frame as a digraph instead");
  witness->add_option("-o,--out", witness_out, "output path (default stdout)");
  witness->callback([&] {
    const QbfFormula f = encoder_input(witness_in.get(), witness_prenex);
    KripkeModel model = quantifier_tree(f);
    if (witness_model == "extended") model = extend_model(model, make_context(f));
    write_file(witness_out, witness_dot ? to_dot(model.frame()) : dump_json(model_to_json(model)));
  });

  // frame ---------------------------------------------------------------
  int gadget = 0;
  bool plus = false;
  std::string frame_input;
  std::string check;
  int alpha_k = 0;
  std::size_t validity_budget = kDefaultValidityBudget;
  bool frame_dot = false;
  auto* frame = app.add_subcommand("frame", "Frame-class and validity checks; exit 1 when the check fails");
  auto* gadget_opt = frame->add_option("--gadget", gadget, "use F_m for this m")->check(CLI::PositiveNumber);
  frame->add_flag("--plus", plus, "use F_m+ instead of F_m")->needs(gadget_opt);
  auto* input_opt = frame->add_option("--input", frame_input, "frame or model JSON file");
  gadget_opt->excludes(input_opt);
  frame->add_option("--check", check, "gl, grz, ktb, wgrz-axiom or alpha-validity")
      ->check(CLI::IsMember({"gl", "grz", "ktb", "wgrz-axiom", "alpha-validity"}));
  frame->add_option("--k", alpha_k, "alpha index for alpha-validity")->check(CLI::PositiveNumber);
  frame->add_option("--budget", validity_budget, "largest |worlds| * #variables to enumerate");
  frame->add_flag("--dot", frame_dot, "print the frame as a digraph");
  frame->callback([&] {
    if (gadget == 0 && frame_input.empty()) throw CLI::ValidationError("frame", "--gadget or --input is required");
    if (check.empty() && !frame_dot) throw CLI::ValidationError("frame", "--check or --dot is required");
    if (check == "alpha-validity" && alpha_k == 0) throw CLI::ValidationError("--k", "alpha-validity needs --k");
    const KripkeFrame fr = gadget > 0 ? (plus ? frame_Fm_plus(gadget) : frame_Fm(gadget))
                                      : frame_from_json(nlohmann::json::parse(read_file(frame_input)));
    if (frame_dot) std::cout << to_dot(fr);
    if (check.empty()) return;
    bool ok = false;
    if (check == "gl") ok = frame_class_check(fr, FrameClass::GL);
    if (check == "grz") ok = frame_class_check(fr, FrameClass::Grz);
    if (check == "ktb") ok = frame_class_check(fr, FrameClass::KTB);
    if (check == "alpha-validity") ok = frame_validates(fr, alpha(alpha_k), validity_budget);
    if (check == "wgrz-axiom") {
      try {
        ok = frame_validates(fr, wgrz_axiom(), validity_budget);
      } catch (const BudgetExceeded&) {
        std::cout << "unverified (budget)\n";
        status = kFail;
        return;
      }
    }
    std::cout << (ok ? "pass" : "fail") << "\n";
    status = ok ? kPass : kFail;
  });

  // verify --------------------------------------------------------------
  CorpusSpec spec;
  std::string report_path;
  auto* verify = app.add_subcommand("verify", "End-to-end check of the reduction on a generated corpus");
  verify->add_option("--n-max", spec.n_max, "largest quantifier count")->check(CLI::Range(1, 6));
  verify->add_option("--count", spec.count, "random instances with n >= 2")->check(CLI::NonNegativeNumber);
  verify->add_option("--seed", spec.seed, "random seed");
  verify->add_option("--size-max", spec.exhaustive_size_max, "matrix size bound for the exhaustive n = 1 part");
  verify->add_option("--random-size-max", spec.random_size_max, "matrix size bound for random instances")
      ->check(CLI::PositiveNumber);
  verify->add_option("--extended-n-max", spec.extended_n_max, "largest n for the extended-model checks");
  verify->add_option("--out", report_path, "write the JSON-lines report here (default stdout)");
  verify->callback([&] {
    const VerifyReport report = run_verify(spec);
    write_file(report_path, report.json_lines());
    (report_path.empty() ? std::cerr : std::cout) << report.summary();
    status = report.passed() ? kPass : kFail;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  } catch (const CommandError& e) {
    std::cerr << "error: " << e.kind << ": " << e.what() << "\n";
    return e.kind == "usage" ? kUsage : kFail;
  } catch (const ParseError& e) {
    std::cerr << "error: syntax: " << e.what() << "\n";
    return kFail;
  } catch (const UnknownWorld& e) {
    std::cerr << "error: unknown-world: " << e.what() << "\n";
    return kFail;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: budget: " << e.what() << "\n";
    return kFail;
  } catch (const PreconditionError& e) {
    std::cerr << "error: precondition: " << e.what() << "\n";
    return kFail;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: json: " << e.what() << "\n";
    return kFail;
  }
  return status;
}
