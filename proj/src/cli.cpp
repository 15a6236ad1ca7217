#include "matpfd/cli.hpp"

#include <fstream>
#include <iterator>
#include <sstream>

#include "CLI11.hpp"
#include "matpfd/io.hpp"

namespace matpfd {

namespace {

const std::vector<std::string> kCommands = {"charpoly", "pfd", "chains", "exp", "solve", "general", "verify"};

struct Options {
  std::string command;
  std::string matrix_path;
  std::string mode = "auto";
  std::string format = "text";
  std::string roots_path;
  std::string y0;
  std::string times = "0.1,0.5,1.0";
  bool parallel = false;
};

/// Failure tagged with the pipeline stage it came from.
struct StageError {
  std::string stage;
  Error error;
};

std::string slurp(const std::string& path, std::istream& in, const std::string& stage) {
  if (path == "-") return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  std::ifstream file(path, std::ios::binary);
  if (!file) throw StageError{stage, Error(ErrorKind::ParseError, "cannot open '" + path + "'")};
  return {std::istreambuf_iterator<char>(file), std::istreambuf_iterator<char>()};
}

template <class F>
auto stage(const std::string& name, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw StageError{name, e};
  }
}

ModeRequest to_mode(const std::string& m) {
  if (m == "complex") return ModeRequest::complex;
  if (m == "real") return ModeRequest::real;
  return ModeRequest::automatic;
}

std::string decomposition_stage(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IrrationalSpectrum:
    case ErrorKind::RepeatedQuadraticFactor:
    case ErrorKind::HintMismatch:
      return "factorization";
    case ErrorKind::SizeLimit:
      return "characteristic polynomial";
    default:
      return "partial fractions";
  }
}

std::string execute(const Options& opt, std::istream& in, int& exit_code) {
  const Format fmt = parse_format(opt.format);
  const auto matrix = stage("matrix input", [&] { return parse_matrix(slurp(opt.matrix_path, in, "matrix input")); });
  std::vector<RootHint> hints;
  if (!opt.roots_path.empty())
    hints = stage("root hints", [&] { return parse_roots(slurp(opt.roots_path, in, "root hints")); });
  const ExecPolicy policy = opt.parallel ? ExecPolicy::parallel : ExecPolicy::serial;

  Decomposition dec;
  try {
    dec = decompose(matrix, to_mode(opt.mode), hints, policy);
  } catch (const Error& e) {
    throw StageError{decomposition_stage(e.kind()), e};
  }

  const std::string& cmd = opt.command;
  if (cmd == "charpoly") return render_charpoly(dec, fmt);
  if (cmd == "pfd") return render_pfd(dec, fmt);
  if (cmd == "chains") {
    const auto bases = stage("chains", [&] { return chain_bases(dec); });
    return render_chains(dec, bases, fmt);
  }
  if (cmd == "exp") return render_closed_form(matrix_exponential(dec), fmt, false);
  if (cmd == "solve") {
    const auto y0 = stage("initial vector", [&] { return parse_vector(opt.y0); });
    return render_closed_form(stage("initial vector", [&] { return solve_ivp(dec, y0); }), fmt, true);
  }
  if (cmd == "general") return render_general(general_solution(dec), fmt);
  // verify
  const auto times = stage("sample times", [&] { return parse_times(opt.times); });
  const Report rep = stage("verification", [&] { return verify_all(dec, times); });
  exit_code = rep.ok() ? 0 : 1;
  return render_report(rep, fmt);
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args, std::istream& in) {
  CommandResult result;
  Options opt;
  CLI::App app{"Exact resolvent partial fractions, matrix exponentials and linear ODE solutions."};
  app.name("matpfd");
  app.add_option("command", opt.command, "charpoly | pfd | chains | exp | solve | general | verify")
      ->required()
      ->check(CLI::IsMember(kCommands));
  app.add_option("matrix", opt.matrix_path, "matrix file, one row per line; - reads stdin")->required();
  app.add_option("--mode", opt.mode, "complex | real | auto")
      ->check(CLI::IsMember({"complex", "real", "auto"}))
      ->capture_default_str();
  app.add_option("--format", opt.format, "text | latex | json")
      ->check(CLI::IsMember({"text", "latex", "json"}))
      ->capture_default_str();
  app.add_option("--roots", opt.roots_path, "eigenvalue hints, one 'root [multiplicity]' per line");
  auto* y0 = app.add_option("--y0", opt.y0, "initial vector for solve, e.g. \"1,-1,2\"");
  auto* times = app.add_option("--t", opt.times, "sample times for verify")->capture_default_str();
  app.add_flag("--parallel", opt.parallel, "use the OpenMP kernels");

  std::ostringstream out;
  std::ostringstream err;
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
    if (opt.command == "solve" && y0->count() == 0) throw CLI::RequiredError("--y0 is required by solve");
    if (opt.command != "solve" && y0->count() > 0) throw CLI::ValidationError("--y0", "only valid with solve");
    if (opt.command != "verify" && times->count() > 0) throw CLI::ValidationError("--t", "only valid with verify");
  } catch (const CLI::ParseError& e) {
    result.exit_code = app.exit(e, out, err);
    if (result.exit_code != 0) result.exit_code = 2;
    result.out = out.str();
    result.err = err.str();
    return result;
  }

  try {
    result.out = execute(opt, in, result.exit_code);
  } catch (const StageError& e) {
    result.exit_code = is_input_error(e.error.kind()) || e.error.kind() == ErrorKind::DimensionMismatch ? 2 : 1;
    result.err = "matpfd: " + e.stage + ": " + e.error.what() + "\n";
  } catch (const Error& e) {
    result.exit_code = is_input_error(e.kind()) ? 2 : 1;
    result.err = "matpfd: output: " + std::string(e.what()) + "\n";
  }
  return result;
}

}  // namespace matpfd
