#include <gtest/gtest.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include "commands.hpp"
#include "oracles.hpp"

using namespace spair;
using spair::io::json;

namespace {

std::string data_path(const std::string& name) { return std::string(SPAIR_TEST_DATA) + "/" + name; }

json load(const std::string& name) {
  std::ifstream f(data_path(name));
  return json::parse(f);
}

struct CmdResult {
  int code;
  std::string out, err;
};

template <class F>
CmdResult run(const std::string& input, F&& body) {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = body(in, out, err);
  return {code, out.str(), err.str()};
}

std::string read_file(const std::string& name) {
  std::ifstream f(data_path(name));
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

}  // namespace

TEST(Json, ComplexRoundTripIsBitExact) {
  Sampler s(61);
  for (int k = 0; k < 2000; ++k) {
    const double re = (s.uniform() - 0.5) * std::pow(10.0, static_cast<double>(s.below(40)) - 20.0);
    const double im = std::nextafter(s.uniform(), 2.0);
    const Complex z{re, im};
    const Complex back = io::complex_from_json(json::parse(io::to_json(z).dump()), "z");
    EXPECT_TRUE(same_bits(back.real(), re) && same_bits(back.imag(), im));
  }
}

TEST(Json, DocumentsRoundTripBitExact) {
  const MatrixPair p = random_pair(1).pair;
  const MatrixPair pb = io::pair_from_json(json::parse(io::pair_to_json(p).dump()));
  EXPECT_EQ(pb.a, p.a);
  EXPECT_EQ(pb.b, p.b);
  const SpectralData sd = spectral_data(p);
  const SpectralData sb = io::spectral_from_json(json::parse(io::spectral_to_json(sd).dump()));
  EXPECT_EQ(sb.h, sd.h);
  EXPECT_EQ(sb.coeffs, sd.coeffs);
  EXPECT_EQ(sb.divisor.l, sd.divisor.l);
  EXPECT_EQ(sb.divisor.m, sd.divisor.m);
}

TEST(Json, SchemaViolations) {
  EXPECT_THROW(io::complex_from_json(json::parse("[1]"), "z"), io::SchemaError);
  EXPECT_THROW(io::complex_from_json(json::parse("[1, \"a\"]"), "z"), io::SchemaError);
  EXPECT_THROW(io::pair_from_json(json::parse(R"({"A": []})")), io::SchemaError);
  json doc = load("fixture_spectral.json");
  doc["coefficients"].erase("t");
  EXPECT_THROW(io::spectral_from_json(doc), io::SchemaError);
  EXPECT_THROW(io::gl2z_from_json(json::parse("[[1, 0.5], [0, 1]]")), io::SchemaError);
  EXPECT_EQ(io::gl2z_from_json(json::parse("[[2, 1], [1, 1]]")), (GL2ZMatrix{2, 1, 1, 1}));
}

TEST(Json, OffCurveDivisorFailsToLoad) {
  try {
    io::spectral_from_json(load("off_curve_spectral.json"));
    FAIL() << "expected an error";
  } catch (const io::SchemaError& e) {
    EXPECT_NE(std::string(e.what()).find("off the curve"), std::string::npos) << e.what();
  }
}

TEST(Json, InconsistentEigenvaluesFailToLoad) {
  json doc = load("fixture_spectral.json");
  doc["h"][0] = json::array({1.5, 0.0});
  EXPECT_THROW(io::spectral_from_json(doc), io::SchemaError);
}

TEST(Json, ReportDocument) {
  SpectralResiduals r;
  r.per_component = {{"d1", 1e-12}, {"L", std::numeric_limits<double>::infinity()}};
  r.max_residual = std::numeric_limits<double>::infinity();
  const json doc = io::report_to_json("commute_swap", r, false);
  EXPECT_EQ(doc["operation"], "commute_swap");
  EXPECT_TRUE(doc["max_residual"].is_null());
  EXPECT_TRUE(doc["per_component"]["L"].is_null());
  EXPECT_EQ(doc["status"], "fail");
}

TEST(CmdSpectral, GoldenFixture) {
  const CmdResult r = run(read_file("fixture_pair.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_spectral(i, o, e); });
  ASSERT_EQ(r.code, 0) << r.err;
  const SpectralData got = io::spectral_from_json(json::parse(r.out));
  const SpectralData want = io::spectral_from_json(load("fixture_spectral.json"));
  EXPECT_LT(compare_spectral(got, want).max_residual, 1e-12);
}

TEST(CmdSpectral, IdentityBIsGaugeDegenerate) {
  const CmdResult r = run(read_file("identity_b_pair.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_spectral(i, o, e); });
  EXPECT_EQ(r.code, 3);
  const json err = json::parse(r.err);
  EXPECT_EQ(err["error"]["code"], "gauge_degenerate");
  EXPECT_EQ(err["error"]["exit_code"], 3);
  EXPECT_TRUE(r.out.empty());
}

TEST(CmdSpectral, MalformedJson) {
  const CmdResult r = run(read_file("malformed.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_spectral(i, o, e); });
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "schema");
}

TEST(CmdReconstruct, FixtureRoundTrip) {
  const CmdResult r = run(read_file("fixture_spectral.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_reconstruct(i, o, e); });
  ASSERT_EQ(r.code, 0) << r.err;
  const MatrixPair got = io::pair_from_json(json::parse(r.out));
  const MatrixPair want = io::pair_from_json(load("fixture_normalized.json"));
  EXPECT_LT((got.a - want.a).max_abs(), 1e-12);
  EXPECT_LT((got.b - want.b).max_abs(), 1e-10);
}

TEST(CmdReconstruct, OffCurveAndRepeatedH) {
  const CmdResult off = run(read_file("off_curve_spectral.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_reconstruct(i, o, e); });
  EXPECT_EQ(off.code, 2);
  EXPECT_NE(off.err.find("off the curve"), std::string::npos);
  const CmdResult rep = run(read_file("repeated_h_spectral.json"), [](auto& i, auto& o, auto& e) { return cli::cmd_reconstruct(i, o, e); });
  EXPECT_EQ(rep.code, 3);
  EXPECT_EQ(json::parse(rep.err)["error"]["code"], "repeated_eigenvalues");
}

TEST(CmdAct, SwapWordMatchesSwappedPair) {
  cli::ActOptions opt;
  opt.word = "S";
  const CmdResult r = run(read_file("fixture_spectral.json"), [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, opt); });
  ASSERT_EQ(r.code, 0) << r.err;
  const MatrixPair p = io::pair_from_json(load("fixture_pair.json"));
  const SpectralData want = canonical_form(spectral_data(MatrixPair{p.b, p.a}));
  EXPECT_LT(compare_spectral(io::spectral_from_json(json::parse(r.out)), want).max_residual, 1e-6);
}

TEST(CmdAct, IdentityMatrixEchoesCanonicalForm) {
  cli::ActOptions opt;
  opt.matrix = "1,0,0,1";
  const CmdResult r = run(read_file("fixture_spectral.json"), [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, opt); });
  ASSERT_EQ(r.code, 0) << r.err;
  const SpectralData sd = io::spectral_from_json(load("fixture_spectral.json"));
  EXPECT_LT(compare_spectral(io::spectral_from_json(json::parse(r.out)), canonical_form(sd)).max_residual, 1e-9);
  EXPECT_NE(r.err.find("decomposition"), std::string::npos);
}

TEST(CmdAct, NonUnitDeterminant) {
  cli::ActOptions opt;
  opt.matrix = "2,0,0,1";
  const CmdResult r = run(read_file("fixture_spectral.json"), [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, opt); });
  EXPECT_EQ(r.code, 4);
  EXPECT_EQ(json::parse(r.err)["error"]["code"], "determinant_not_unit");
}

TEST(CmdAct, MatrixSideAgreesWithSpectralSide) {
  const MatrixPair p = random_pair(5).pair;
  cli::ActOptions opt;
  opt.matrix = "2,1,1,1";
  opt.side = "matrix";
  const CmdResult m = run(io::pair_to_json(p).dump(), [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, opt); });
  ASSERT_EQ(m.code, 0) << m.err;
  opt.side = "spectral";
  const CmdResult s = run(io::spectral_to_json(spectral_data(p)).dump(),
                    [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, opt); });
  ASSERT_EQ(s.code, 0) << s.err;
  const SpectralData via_matrix = canonical_form(spectral_data(io::pair_from_json(json::parse(m.out))));
  EXPECT_LT(compare_spectral(io::spectral_from_json(json::parse(s.out)), via_matrix).max_residual, 1e-5);
}

TEST(CmdAct, BadOptions) {
  cli::ActOptions both;
  both.word = "S";
  both.matrix = "1,0,0,1";
  EXPECT_EQ(run("{}", [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, both); }).code, 2);
  cli::ActOptions bad_word;
  bad_word.word = "S,Q";
  EXPECT_EQ(run("{}", [&](auto& i, auto& o, auto& e) { return cli::cmd_act(i, o, e, bad_word); }).code, 2);
}

TEST(CmdDecompose, Output) {
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_decompose("1,1,0,1", out, err), 0);
  const json doc = json::parse(out.str());
  EXPECT_EQ(doc["word"], "T");
  EXPECT_EQ(doc["length"], 1);
  std::ostringstream out2, err2;
  EXPECT_EQ(cli::cmd_decompose("1,2,3", out2, err2), 2);
  EXPECT_EQ(cli::cmd_decompose("1,x,0,1", out2, err2), 2);
}

TEST(CmdRandomPair, DeterministicAndGeneric) {
  std::ostringstream a, b, err;
  ASSERT_EQ(cli::cmd_random_pair(17, a, err), 0);
  ASSERT_EQ(cli::cmd_random_pair(17, b, err), 0);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_NE(err.str().find("attempts"), std::string::npos);
  std::size_t attempts = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const RandomPair rp = random_pair(seed);
    attempts += rp.attempts;
    EXPECT_TRUE(general_position_report(rp.pair).all_passed()) << "seed " << seed;
  }
  std::cout << "random_pair: " << attempts << " attempts for 100 seeds\n";
}

TEST(CmdRandomPair, SampledEigenvaluesInAnnulus) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const Triple h = eig3(random_pair(seed).pair.a).values;
    for (const Complex x : h) {
      EXPECT_GE(std::abs(x), 0.5 - 1e-9);
      EXPECT_LE(std::abs(x), 2.0 + 1e-9);
    }
    EXPECT_GE(std::min({std::abs(h[0] - h[1]), std::abs(h[0] - h[2]), std::abs(h[1] - h[2])}), 0.3 - 1e-9);
  }
}

TEST(CmdVerify, PassesAtDefaultTolerance) {
  cli::VerifyOptions opt;
  opt.seeds = 10;
  std::ostringstream out, err;
  ASSERT_EQ(cli::cmd_verify(opt, out, err), 0) << err.str();
  std::istringstream lines(out.str());
  std::string line;
  int n = 0;
  json last;
  while (std::getline(lines, line)) {
    last = json::parse(line);
    ++n;
    if (last["operation"] != "summary") {
      EXPECT_EQ(last["status"], "pass");
      EXPECT_TRUE(last["skipped_seeds"].empty());
    }
  }
  EXPECT_EQ(n, 8);
  EXPECT_EQ(last["status"], "pass");
}

TEST(CmdVerify, UnattainableToleranceFails) {
  cli::VerifyOptions opt;
  opt.seeds = 3;
  opt.tolerance = 1e-15;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_verify(opt, out, err), 5);
  EXPECT_NE(err.str().find("first_failing_seed"), std::string::npos);
  EXPECT_NE(out.str().find("\"status\":\"fail\""), std::string::npos);
}

TEST(CmdVerify, ZeroSeedsIsUsageError) {
  cli::VerifyOptions opt;
  opt.seeds = 0;
  std::ostringstream out, err;
  EXPECT_EQ(cli::cmd_verify(opt, out, err), 2);
}
