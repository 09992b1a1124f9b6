#pragma once

//! @file
//! Command-line front end. `run_cli` takes explicit streams so that tests can
//! drive it in-process.

#include <quadell/bielliptic.hpp>
#include <quadell/inscribed.hpp>
#include <quadell/io.hpp>
#include <quadell/min_area.hpp>
#include <quadell/min_ecc.hpp>
#include <quadell/svg.hpp>
#include <quadell/verify.hpp>

#include <CLI11.hpp>

#include <exception>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace quadell {

struct CliOptions
{
  std::string input = "-";
  std::string output;
  std::uint64_t seed = 0;
  int trials = 1000;
  std::optional<double> tol;
  bool quiet = false;
};

namespace detail {

inline std::string read_all(const std::string& path, std::istream& in)
{
  if (path == "-")
    return std::string(std::istreambuf_iterator<char>(in), {});
  std::ifstream f(path, std::ios::binary);
  if (!f)
    throw InputError("cannot read input file '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(f), {});
}

//! Thrown only when the destination cannot be written.
class UnwritableError : public Error
{
public:
  using Error::Error;
};

inline void emit(const std::string& text, const CliOptions& o, std::ostream& out)
{
  if (o.output.empty() || o.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(o.output, std::ios::binary | std::ios::trunc);
  if (!f)
    throw UnwritableError("cannot open '" + o.output + "' for writing");
  f << text;
  f.flush();
  if (!f)
    throw UnwritableError("failed writing '" + o.output + "'");
}

inline json input_json(const QuadDocument& d)
{
  json j = to_json(d.quad);
  if (!d.label.empty())
    j["label"] = d.label;
  return j;
}

inline json with_input(json doc, const QuadDocument& d)
{
  json out = {{"schema_version", schema_version}, {"input", input_json(d)}};
  for (auto& [k, v] : doc.items())
    if (k != "schema_version")
      out[k] = v;
  return out;
}

inline json sweep_json(const SweepSummary& s, double threshold)
{
  json j = {{"schema_version", schema_version},
            {"suite", s.suite},
            {"seed", s.seed},
            {"trials", s.trials},
            {"passed", s.trials - s.failures},
            {"failures", s.failures},
            {"worst", s.worst},
            {"threshold", threshold}};
  if (s.first_failure) {
    j["first_failure"] = {{"seed", s.seed},
                          {"index", *s.first_failure},
                          {"instance", s.first_failure_instance}};
  } else {
    j["first_failure"] = nullptr;
  }
  j["provenance"] = provenance("cli_io", "verify");
  return j;
}

} // namespace detail

namespace detail {

struct Failure
{
  ExitCode code;
  std::string kind;
  std::string message;
  std::string predicate;
};

//! Maps a caught exception to its exit code and error kind.
inline Failure classify_failure(std::exception_ptr ep)
{
  try {
    std::rethrow_exception(ep);
  } catch (const UnwritableError& e) {
    return {ExitCode::Unwritable, "unwritable_output", e.what(), {}};
  } catch (const ValidationError& e) {
    return {ExitCode::Invalid, "validation", e.what(), e.predicate()};
  } catch (const InputError& e) {
    return {ExitCode::Invalid, "input", e.what(), {}};
  } catch (const DomainError& e) {
    return {ExitCode::Invalid, "domain", e.what(), {}};
  } catch (const UnsupportedShapeError& e) {
    return {ExitCode::Unsupported, "unsupported_shape", e.what(), {}};
  } catch (const NumericError& e) {
    return {ExitCode::Numeric, "numeric", e.what(), {}};
  } catch (const ClassificationError& e) {
    return {ExitCode::Numeric, "classification", e.what(), {}};
  } catch (const std::exception& e) {
    return {ExitCode::Numeric, "internal", e.what(), {}};
  } catch (...) {
    return {ExitCode::Numeric, "internal", "unknown exception", {}};
  }
}

} // namespace detail

struct CliResult
{
  json document;
  ExitCode code = ExitCode::Ok;
  std::string raw; //!< non-JSON payload (SVG); takes precedence when set
};

inline CliResult cmd_analyze(const QuadDocument& d, const CliOptions& o)
{
  const ExtremalEllipse eo = min_ecc_circumscribed(d.quad);
  const ExtremalEllipse ea = min_area_circumscribed(d.quad);
  const ExtremalEllipse ei = min_ecc_inscribed(d.quad);
  const BiellipticReport br = classify_bielliptic(d.quad, o.tol.value_or(1e-6));
  json doc = {{"schema_version", schema_version},
              {"input", detail::input_json(d)},
              {"circum_min_ecc", result_document(eo, "min_ecc_circum", "min_ecc_circumscribed")},
              {"circum_min_area", result_document(ea, "min_area_circum", "min_area_circumscribed")},
              {"inscribed_min_ecc", result_document(ei, "inscribed", "min_ecc_inscribed")},
              {"bielliptic", to_json(br)},
              {"provenance", provenance("cli_io", "analyze")}};
  return {doc};
}

inline CliResult cmd_svg(const QuadDocument& d)
{
  SvgFigure fig;
  fig.quad = d.quad;
  fig.title = d.label.empty() ? "extremal ellipses" : d.label;
  fig.ellipses.push_back({"E_O (min eccentricity, circumscribed)", "#c0392b",
                          min_ecc_circumscribed(d.quad).geometry});
  fig.ellipses.push_back({"E_A (min area, circumscribed)", "#2471a3",
                          min_area_circumscribed(d.quad).geometry});
  fig.ellipses.push_back({"E_I (min eccentricity, inscribed)", "#1e8449",
                          min_ecc_inscribed(d.quad).geometry});
  const SegmentZ z = diagonal_segment(d.quad);
  if (!z.degenerate(d.quad.diameter()))
    fig.segment = z;
  CliResult r;
  r.raw = render_svg(fig);
  return r;
}

inline CliResult cmd_verify(const std::string& suite, const CliOptions& o)
{
  SweepSummary s;
  double threshold = 0;
  if (suite == "theorem3") {
    // Reports the smallest normalized center-to-Z distance seen.
    threshold = 0;
    s = run_sweep(suite, o.seed, o.trials, [](std::uint64_t sd, int i) { return center_separation_trial(sd, i); },
                  false);
  } else if (suite == "conjugacy") {
    threshold = o.tol.value_or(1e-9);
    s = run_sweep(suite, o.seed, o.trials, [threshold](std::uint64_t sd, int i) {
      TrialOutcome t = conjugacy_trial(sd, i);
      t.ok = t.metric < threshold;
      return t;
    });
  } else if (suite == "oracle") {
    threshold = o.tol.value_or(1e-10);
    s = run_sweep(suite, o.seed, o.trials, [threshold](std::uint64_t sd, int i) {
      TrialOutcome t = oracle_trial(sd, i);
      t.ok = t.metric < threshold;
      return t;
    });
  } else {
    throw InputError("unknown verify suite '" + suite + "' (theorem3, conjugacy, oracle)");
  }
  CliResult r{detail::sweep_json(s, threshold)};
  if (s.failures > 0)
    r.code = ExitCode::Counterexample;
  return r;
}

inline CliResult cmd_conjecture_probe(int which, const CliOptions& o)
{
  if (which != 1 && which != 2)
    throw InputError("conjecture-probe expects 1 or 2");
  const ConjectureProbe p = conjecture_probe(which, o.trials, o.seed);
  json doc = {{"schema_version", schema_version},
              {"conjecture", which},
              {"extremal", which == 1 ? "min_ecc_circumscribed" : "min_area_circumscribed"},
              {"seed", o.seed},
              {"trials", p.trials},
              {"inside", p.inside},
              {"outside", p.outside},
              {"errors", p.errors},
              {"candidates", p.candidates},
              {"provenance", provenance("cli_io", "conjecture-probe")}};
  return {doc};
}

//! Entry point. `args` excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
                   std::ostream& err)
{
  CliOptions o;
  CLI::App app{"Extremal ellipses circumscribed about and inscribed in convex quadrilaterals",
               "quadell"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", library_version);
  app.add_option("--input", o.input, "input JSON file, or - for standard input");
  app.add_option("--output", o.output, "output file (default: standard output)");
  app.add_option("--seed", o.seed, "seed for randomized commands");
  app.add_option("--trials", o.trials, "trial count for randomized commands")
    ->check(CLI::NonNegativeNumber);
  app.add_option("--tol", o.tol, "tolerance override");
  app.add_flag("--json", "JSON output (always on)");
  app.add_flag("--quiet", o.quiet, "suppress diagnostics on standard error");

  std::string suite;
  int which = 0;
  auto* analyze = app.add_subcommand("analyze", "all extremal ellipses and the bielliptic report");
  auto* circ_ecc = app.add_subcommand("circum-min-ecc", "least eccentric circumscribed ellipse");
  auto* circ_area = app.add_subcommand("circum-min-area", "least area circumscribed ellipse");
  auto* insc = app.add_subcommand("inscribed-min-ecc", "least eccentric inscribed ellipse");
  auto* biell = app.add_subcommand("bielliptic", "compare inscribed and circumscribed minima");
  auto* family = app.add_subcommand("family-search", "bielliptic member of the one-parameter family");
  auto* trap = app.add_subcommand("trapezoid-bielliptic", "bielliptic right trapezoid");
  auto* verify = app.add_subcommand("verify", "randomized property sweeps");
  verify->add_option("suite", suite, "theorem3 | conjugacy | oracle")
    ->required()
    ->check(CLI::IsMember({"theorem3", "conjugacy", "oracle"}));
  auto* probe = app.add_subcommand("conjecture-probe", "sample whether extremal centers lie inside");
  probe->add_option("which", which, "1 (min eccentricity) or 2 (min area)")
    ->required()
    ->check(CLI::IsMember({1, 2}));
  auto* svg = app.add_subcommand("svg", "SVG figure of the quadrilateral and its ellipses");

  std::vector<std::string> argv_store;
  argv_store.reserve(args.size() + 1);
  argv_store.push_back("quadell");
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store)
    argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForVersion&) {
    out << library_version << "\n";
    return 0;
  } catch (const CLI::ParseError& e) {
    out << error_document("usage", e.what()).dump(2) << "\n";
    if (!o.quiet)
      err << "quadell: " << e.what() << "\n";
    return static_cast<int>(ExitCode::Invalid);
  }

  const auto fail = [&](ExitCode code, const std::string& kind, const std::string& msg,
                        const std::string& predicate = {}) {
    out << error_document(kind, msg, predicate).dump(2) << "\n";
    if (!o.quiet)
      err << "quadell: " << kind << ": " << msg << "\n";
    return static_cast<int>(code);
  };

  try {
    const auto load = [&] { return parse_quad_document(detail::read_all(o.input, in)); };
    CliResult r;
    if (analyze->parsed()) {
      r = cmd_analyze(load(), o);
    } else if (circ_ecc->parsed()) {
      const QuadDocument d = load();
      r.document = detail::with_input(
        result_document(min_ecc_circumscribed(d.quad), "min_ecc_circum", "min_ecc_circumscribed"), d);
    } else if (circ_area->parsed()) {
      const QuadDocument d = load();
      r.document = detail::with_input(
        result_document(min_area_circumscribed(d.quad), "min_area_circum", "min_area_circumscribed"),
        d);
    } else if (insc->parsed()) {
      const QuadDocument d = load();
      r.document = detail::with_input(
        result_document(min_ecc_inscribed(d.quad), "inscribed", "min_ecc_inscribed"), d);
    } else if (biell->parsed()) {
      const QuadDocument d = load();
      r.document = {{"schema_version", schema_version},
                    {"input", detail::input_json(d)},
                    {"report", to_json(classify_bielliptic(d.quad, o.tol.value_or(1e-6)))},
                    {"provenance", provenance("bielliptic", "classify_bielliptic")}};
    } else if (family->parsed()) {
      r.document = {{"schema_version", schema_version},
                    {"result", to_json(find_bielliptic_in_family())},
                    {"provenance", provenance("bielliptic", "find_bielliptic_in_family")}};
    } else if (trap->parsed()) {
      r.document = {{"schema_version", schema_version},
                    {"result", to_json(trapezoid_bielliptic_solve())},
                    {"provenance", provenance("bielliptic", "trapezoid_bielliptic_solve")}};
    } else if (verify->parsed()) {
      r = cmd_verify(suite, o);
    } else if (probe->parsed()) {
      r = cmd_conjecture_probe(which, o);
    } else if (svg->parsed()) {
      r = cmd_svg(load());
    }
    detail::emit(r.raw.empty() ? r.document.dump(2) + "\n" : r.raw, o, out);
    if (r.code == ExitCode::Counterexample && !o.quiet)
      err << "quadell: counterexample found; see first_failure\n";
    return static_cast<int>(r.code);
  } catch (...) {
    const detail::Failure f = detail::classify_failure(std::current_exception());
    return fail(f.code, f.kind, f.message, f.predicate);
  }
}

inline int run_cli(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return run_cli(args, std::cin, std::cout, std::cerr);
}

} // namespace quadell
