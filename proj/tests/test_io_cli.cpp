#include "support.hpp"

#include <quadell/cli.hpp>
#include <quadell/random.hpp>

#include <bit>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace quadell;
using namespace quadell::testing;

namespace {

struct CliRun
{
  int code;
  std::string out;
  std::string err;
};

CliRun run(const std::vector<std::string>& args, const std::string& stdin_text = "")
{
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

std::string golden_path(const std::string& name) { return std::string(QUADELL_GOLDEN_DIR) + "/" + name; }

// Strings, booleans, integers and nulls must match exactly; doubles to a
// relative 1e-9 so the goldens survive a different compiler or libm.
void expect_same(const json& want, const json& got, const std::string& where)
{
  if (want.is_number_float() || got.is_number_float()) {
    ASSERT_TRUE(got.is_number()) << where;
    const double a = want.get<double>(), b = got.get<double>();
    EXPECT_LE(std::abs(a - b), 1e-9 * std::max(1.0, std::abs(a))) << where << ": " << a << " vs " << b;
    return;
  }
  ASSERT_EQ(want.type(), got.type()) << where;
  if (want.is_object()) {
    ASSERT_EQ(want.size(), got.size()) << where;
    auto w = want.begin();
    auto g = got.begin();
    for (; w != want.end(); ++w, ++g) {
      ASSERT_EQ(w.key(), g.key()) << where;
      expect_same(w.value(), g.value(), where + "." + w.key());
    }
  } else if (want.is_array()) {
    ASSERT_EQ(want.size(), got.size()) << where;
    for (std::size_t i = 0; i < want.size(); ++i)
      expect_same(want[i], got[i], where + "[" + std::to_string(i) + "]");
  } else {
    EXPECT_EQ(want, got) << where;
  }
}

// Set QUADELL_UPDATE_GOLDEN=1 to rewrite the files after an intended schema change.
void check_golden(const std::string& name, const std::string& input)
{
  const CliRun r = run({"analyze"}, input);
  ASSERT_EQ(r.code, 0) << r.out;
  const json got = json::parse(r.out);
  if (std::getenv("QUADELL_UPDATE_GOLDEN")) {
    std::ofstream(golden_path(name)) << r.out;
    return;
  }
  std::ifstream f(golden_path(name));
  ASSERT_TRUE(f) << "missing golden " << name;
  expect_same(json::parse(f), got, name);
}

std::filesystem::path temp_file(const std::string& name)
{
  return std::filesystem::temp_directory_path() / ("quadell_test_" + name);
}

} // namespace

TEST(Golden, SymmetricCanonical) { check_golden("analyze_symmetric.json", R"({"s": 2, "t": 2})"); }

TEST(Golden, RightTrapezoid)
{
  check_golden("analyze_trapezoid.json", R"({"vertices": [[0,0],[1,0],[1,1.658119],[0,1]]})");
}

TEST(Golden, GeneralQuad)
{
  check_golden("analyze_general.json",
               R"({"label": "general", "vertices": [[0,0],[3,0],[2.5,2],[0.5,1.5]]})");
}

TEST(Analyze, SymmetricReportsUnitParameter)
{
  const CliRun r = run({"analyze"}, R"({"s": 2, "t": 2})");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["circum_min_area"]["diagnostics"]["parameter"].get<double>(), 1, 1e-12);
  EXPECT_EQ(j["circum_min_area"]["diagnostics"]["path"], "closed_form");
  EXPECT_TRUE(j["bielliptic"]["tangential"].get<bool>());
  for (const char* k : {"circum_min_ecc", "circum_min_area", "inscribed_min_ecc", "bielliptic", "provenance"})
    EXPECT_TRUE(j.contains(k)) << k;
}

TEST(Analyze, TrapezoidCarriesBothEccentricities)
{
  // Not bielliptic once the inscribed minimum is computed correctly.
  const CliRun r = run({"analyze"}, R"({"t": 1.658119, "trapezoid": true})");
  ASSERT_EQ(r.code, 0);
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["bielliptic"]["ecc_circumscribed"].get<double>(), 0.69013, 1e-5);
  EXPECT_NEAR(j["bielliptic"]["ecc_inscribed"].get<double>(), 0.591071, 1e-6);
  EXPECT_TRUE(j["bielliptic"]["tau"].is_null());
}

TEST(Parse, CanonicalShorthands)
{
  const QuadDocument a = parse_quad_document(std::string(R"({"s": 2, "t": 3, "label": "x"})"));
  EXPECT_EQ(a.label, "x");
  EXPECT_EQ(a.quad[2], Point(2, 3));
  const QuadDocument b = parse_quad_document(std::string(R"({"t": 2, "trapezoid": true})"));
  EXPECT_EQ(b.quad.shape, QuadShape::Trapezoid);
}

TEST(Parse, Rejections)
{
  EXPECT_THROW(parse_quad_document(std::string("[1,2")), InputError);
  EXPECT_THROW(parse_quad_document(std::string("[]")), InputError);
  EXPECT_THROW(parse_quad_document(std::string(R"({"vertices": [[0,0],[1,0],[0,1]]})")), InputError);
  EXPECT_THROW(parse_quad_document(std::string(R"({"vertices": [[0,0],[1,0],[1,"a"],[0,1]]})")), InputError);
  EXPECT_THROW(parse_quad_document(std::string(R"({"s": 2, "t": 2, "label": 3})")), InputError);
  EXPECT_THROW(parse_quad_document(std::string(R"({"s": 2})")), InputError);
  EXPECT_THROW(parse_quad_document(std::string(R"({"vertices": [[0,0],[0,0],[1,1],[0,1]]})")), ValidationError);
}

TEST(Serialization, DoublesRoundTripBitExactly)
{
  Rng rng = trial_rng(71, 0);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 100000) {
    const double x = std::bit_cast<double>(bits(rng));
    if (!std::isfinite(x))
      continue;
    const double y = json::parse(json(x).dump()).get<double>();
    ASSERT_EQ(std::bit_cast<std::uint64_t>(x), std::bit_cast<std::uint64_t>(y)) << json(x).dump();
    ++checked;
  }
}

TEST(Serialization, ResultDocumentRoundTrips)
{
  for (int i = 0; i < 20; ++i) {
    Rng rng = trial_rng(72, i);
    const ExtremalEllipse e = min_ecc_circumscribed(random_convex_quad(rng));
    const json doc = result_document(e, "min_ecc_circum", "min_ecc_circumscribed");
    const json back = json::parse(doc.dump());
    EXPECT_EQ(doc, back);
    const Conic c = conic_from_json(back["conic"]);
    EXPECT_EQ(c.A, e.conic.A);
    EXPECT_EQ(c.C, e.conic.C);
    EXPECT_EQ(c.F, e.conic.F);
    EXPECT_EQ(back["geometry"]["ecc"].get<double>(), e.geometry.ecc);
  }
}

TEST(ExitCodes, Ok)
{
  EXPECT_EQ(run({"circum-min-ecc"}, R"({"s": 2, "t": 3})").code, 0);
  EXPECT_EQ(run({"circum-min-area"}, R"({"s": 2, "t": 3})").code, 0);
  EXPECT_EQ(run({"inscribed-min-ecc"}, R"({"s": 2, "t": 3})").code, 0);
  EXPECT_EQ(run({"bielliptic"}, R"({"s": 2, "t": 3})").code, 0);
  EXPECT_EQ(run({"trapezoid-bielliptic"}).code, 0);
}

TEST(ExitCodes, CounterexampleReportsReproducer)
{
  // No metric is below zero, so every trial counts as a counterexample.
  const CliRun r = run({"verify", "oracle", "--trials", "5", "--seed", "9", "--tol", "0", "--quiet"});
  EXPECT_EQ(r.code, 1);
  const json j = json::parse(r.out);
  EXPECT_EQ(j["failures"], 5);
  EXPECT_EQ(j["first_failure"]["seed"], 9);
  EXPECT_EQ(j["first_failure"]["index"], 0);
  EXPECT_FALSE(j["first_failure"]["instance"].get<std::string>().empty());
  EXPECT_TRUE(r.err.empty());
}

TEST(ExitCodes, Invalid)
{
  const CliRun dup = run({"analyze"}, R"({"vertices": [[0,0],[0,0],[1,1],[0,1]]})");
  EXPECT_EQ(dup.code, 2);
  const json j = json::parse(dup.out);
  EXPECT_EQ(j["error"]["kind"], "validation");
  EXPECT_EQ(j["error"]["predicate"], "distinct");
  EXPECT_FALSE(dup.err.empty());
  EXPECT_EQ(run({"analyze"}, "not json").code, 2);
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"verify", "nope"}).code, 2);
  EXPECT_EQ(run({"conjecture-probe", "3"}).code, 2);
  EXPECT_EQ(run({"analyze", "--input", "/nonexistent/quad.json"}).code, 2);
  EXPECT_TRUE(run({"analyze", "--quiet"}, "not json").err.empty());
}

TEST(ExitCodes, UnsupportedShape)
{
  const CliRun r = run({"analyze"}, R"({"vertices": [[0,0],[1,0],[1,1],[0,1]]})");
  EXPECT_EQ(r.code, 3);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "unsupported_shape");
}

TEST(ExitCodes, NumericMapping)
{
  // Every valid input solves, so the mapping is checked directly.
  const auto code = [](auto e) { return detail::classify_failure(std::make_exception_ptr(e)); };
  EXPECT_EQ(code(NumericError("no convergence")).code, ExitCode::Numeric);
  EXPECT_EQ(code(ClassificationError(ConicClass::Hyperbola)).code, ExitCode::Numeric);
  EXPECT_EQ(code(ClassificationError(ConicClass::Hyperbola)).kind, "classification");
  EXPECT_EQ(code(std::runtime_error("x")).code, ExitCode::Numeric);
  EXPECT_EQ(code(UnsupportedShapeError("p")).code, ExitCode::Unsupported);
  EXPECT_EQ(code(FrameUnavailableError("f")).code, ExitCode::Unsupported);
  EXPECT_EQ(code(DomainError("d", 0, 1)).code, ExitCode::Invalid);
  EXPECT_EQ(code(InputError("i")).code, ExitCode::Invalid);
  EXPECT_EQ(code(ValidationError("convex", "v")).predicate, "convex");
  EXPECT_EQ(code(detail::UnwritableError("w")).code, ExitCode::Unwritable);
}

TEST(ExitCodes, Unwritable)
{
  const CliRun r = run({"svg", "--output", "/nonexistent/dir/out.svg"}, R"({"s": 2, "t": 3})");
  EXPECT_EQ(r.code, 5);
  EXPECT_EQ(json::parse(r.out)["error"]["kind"], "unwritable_output");
}

TEST(Files, InputAndOutputPaths)
{
  const auto in = temp_file("in.json");
  const auto out = temp_file("out.json");
  std::ofstream(in) << R"({"s": 2, "t": 3})";
  const CliRun r = run({"circum-min-ecc", "--input", in.string(), "--output", out.string()});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(out);
  const json j = json::parse(f);
  EXPECT_EQ(j["input"]["vertices"][2][1], 3.0);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST(Svg, DeterministicAndComplete)
{
  const std::string input = R"({"vertices": [[0,0],[1,0],[1,1.658119],[0,1]]})";
  const CliRun a = run({"svg"}, input);
  const CliRun b = run({"svg"}, input);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  for (const char* id : {"id=\"quadrilateral\"", "id=\"E_O", "id=\"E_A", "id=\"E_I", "id=\"Z\"", "id=\"legend\""})
    EXPECT_NE(a.out.find(id), std::string::npos) << id;
  EXPECT_NE(a.out.find("version=\"1.1\""), std::string::npos);
}

TEST(Svg, CyclicCircumscribedIsACircle)
{
  const ConvexQuadrilateral q = cyclic_example();
  json in = {{"vertices", json::array()}};
  for (int i = 0; i < 4; ++i)
    in["vertices"].push_back({q[i].x(), q[i].y()});
  const CliRun r = run({"svg"}, in.dump());
  ASSERT_EQ(r.code, 0);
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("id=\"E_O[^\"]*\"[^>]*rx=\"([^\"]+)\" ry=\"([^\"]+)\"")));
  EXPECT_EQ(m[1].str(), m[2].str());
}

TEST(Svg, ViewBoxHasTenPercentMargin)
{
  SvgFigure fig;
  fig.quad = canonical_quad(2, 3);
  const std::string s = render_svg(fig);
  // Bounding box x ∈ [0, 2], y ∈ [0, 3].
  EXPECT_NE(s.find("viewBox=\"-0.200000 -3.300000 2.400000 3.600000\""), std::string::npos) << s;
}

TEST(Reproducibility, SeededCommands)
{
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify", "conjugacy", "--trials", "20", "--seed", "4"},
        std::vector<std::string>{"verify", "theorem3", "--trials", "50", "--seed", "4"},
        std::vector<std::string>{"conjecture-probe", "2", "--trials", "20", "--seed", "4"}}) {
    const CliRun a = run(args);
    const CliRun b = run(args);
    ASSERT_EQ(a.code, 0) << a.out;
    EXPECT_EQ(a.out, b.out);
  }
}

TEST(Reproducibility, ThreadCountDoesNotChangeTheSummary)
{
  const auto trial = [](std::uint64_t sd, int i) { return oracle_trial(sd, i); };
  const SweepSummary one = run_sweep("oracle", 3, 200, trial, true, 1);
  const SweepSummary many = run_sweep("oracle", 3, 200, trial, true, 8);
  EXPECT_EQ(one.failures, many.failures);
  EXPECT_EQ(one.worst, many.worst);
}

TEST(Family, SearchCommand)
{
  const CliRun r = run({"family-search"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NEAR(json::parse(r.out)["result"]["r0"].get<double>(), 0.721927666309, 1e-9);
}
