#include <gtest/gtest.h>

#include <sstream>

#include "nft/io.hpp"
#include "test_util.hpp"

using namespace nft;

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-3.0), "-3");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e3, 1e3);
  for (int i = 0; i < 200; ++i) {
    const double x = u(rng) * std::pow(10.0, static_cast<int>(u(rng)) % 20);
    EXPECT_EQ(std::stod(format_double(x)), x);
  }
}

TEST(PulseCsv, RoundTripIsBitExact) {
  std::mt19937_64 rng(4);
  const SampledPulse p = test::random_pulse(rng, 3.0, 64);
  std::stringstream ss;
  write_pulse_csv(ss, p);
  const PulseFile f = read_pulse_csv(ss);
  EXPECT_EQ(f.t_shift, 0.0);
  EXPECT_DOUBLE_EQ(f.pulse.t0_half_width(), 3.0);
  ASSERT_EQ(f.pulse.n_samples(), p.n_samples());
  for (std::size_t n = 0; n < p.n_samples(); ++n) EXPECT_EQ(f.pulse[n], p[n]);
}

TEST(PulseCsv, AsymmetricWindowIsRecentred) {
  std::stringstream ss("t,re_q,im_q\n8,1,0\n9,0.5,-0.5\n10,0,1\n11,0,0\n12,2,2\n");
  const PulseFile f = read_pulse_csv(ss);
  EXPECT_DOUBLE_EQ(f.t_shift, 10.0);
  EXPECT_DOUBLE_EQ(f.pulse.t0_half_width(), 2.0);
  EXPECT_EQ(f.pulse[1], cplx(0.5, -0.5));

  std::stringstream out;
  write_pulse_csv(out, f.pulse, f.t_shift);
  EXPECT_EQ(out.str().substr(0, 18), "t,re_q,im_q\n8,1,0\n");
}

TEST(PulseCsv, ToleratesWhitespaceAndBlankLines) {
  std::stringstream ss("t, re_q, im_q\r\n-1, 0, 0\n\n0, 1.5, 0\n1, 0, 0\n");
  const PulseFile f = read_pulse_csv(ss);
  EXPECT_EQ(f.pulse.n_samples(), 3u);
  EXPECT_EQ(f.pulse[1], cplx(1.5, 0.0));
}

TEST(PulseCsv, Errors) {
  const auto bad = [](const std::string& text) {
    std::stringstream ss(text);
    EXPECT_THROW(read_pulse_csv(ss), InvalidInput) << text;
  };
  bad("");
  bad("time,re,im\n0,0,0\n1,0,0\n2,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1,0\n2,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1,0,0,0\n2,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1,x,0\n2,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1.2,0,0\n2,0,0\n");
  bad("t,re_q,im_q\n2,0,0\n1,0,0\n0,0,0\n");
  bad("t,re_q,im_q\n0,0,0\n1,nan,0\n2,0,0\n");
  EXPECT_THROW(read_pulse_csv(std::filesystem::path("/nonexistent/pulse.csv")), InvalidInput);
}

TEST(SpectrumJson, RoundTrip) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const NonlinearSpectrum s{
      DiscreteSpectrum({{{0.1, 0.5}, cplx(3.0, -0.25), cplx(1.0, 2.0)}, {{0.0, 1.0}, -6.0, cplx(0.0, 1e-17)}}),
      ContinuousSpectrum({-1.0, 0.0, 1.0}, {cplx(0.1, 0.2), cplx(nan, nan), cplx(1e-300, -3.0)})};
  std::stringstream ss;
  write_spectrum_json(ss, s, {{"kernel", "trapezoid"}});
  const NonlinearSpectrum r = read_spectrum_json(ss);
  ASSERT_EQ(r.discrete.size(), 2u);
  for (std::size_t i = 0; i < 2; ++i) {
    EXPECT_EQ(r.discrete[i].lambda, s.discrete[i].lambda);
    EXPECT_EQ(r.discrete[i].qd, s.discrete[i].qd);
    EXPECT_EQ(*r.discrete[i].b, *s.discrete[i].b);
  }
  ASSERT_TRUE(r.continuous);
  EXPECT_EQ(r.continuous->qc()[0], cplx(0.1, 0.2));
  EXPECT_FALSE(r.continuous->valid(1));
  EXPECT_EQ(r.continuous->qc()[2], cplx(1e-300, -3.0));
}

TEST(SpectrumJson, LayoutAndMetadata) {
  const NonlinearSpectrum s{DiscreteSpectrum({{{0.0, 0.5}, 3.0, std::nullopt}}), std::nullopt};
  const auto j = spectrum_to_json(s, {{"N", 1024}});
  EXPECT_EQ(j["eigenvalues"][0]["im"], 0.5);
  EXPECT_EQ(j["qd"][0]["re"], 3.0);
  EXPECT_FALSE(j.contains("b"));
  EXPECT_FALSE(j.contains("qc"));
  EXPECT_EQ(j["metadata"]["N"], 1024);
  EXPECT_EQ(j.begin().key(), "eigenvalues");
}

TEST(SpectrumJson, MinimalDocument) {
  std::stringstream ss(R"({"eigenvalues":[{"re":0,"im":0.5}],"qd":[{"re":0,"im":-1}]})");
  const NonlinearSpectrum s = read_spectrum_json(ss);
  ASSERT_EQ(s.discrete.size(), 1u);
  EXPECT_EQ(s.discrete[0].qd, cplx(0.0, -1.0));
  EXPECT_FALSE(s.discrete[0].b);
  EXPECT_FALSE(s.continuous);
}

TEST(SpectrumJson, Errors) {
  const auto bad = [](const std::string& text) {
    std::stringstream ss(text);
    EXPECT_THROW(read_spectrum_json(ss), InvalidInput) << text;
  };
  bad("{");
  bad("[]");
  bad(R"({"eigenvalues":[{"re":0,"im":0.5}],"qd":[]})");
  bad(R"({"eigenvalues":[{"re":0}],"qd":[{"re":0,"im":1}]})");
  bad(R"({"eigenvalues":[{"re":0,"im":"x"}],"qd":[{"re":0,"im":1}]})");
  bad(R"({"eigenvalues":{},"qd":[]})");
  bad(R"({"eigenvalues":[{"re":0,"im":-0.5}],"qd":[{"re":0,"im":1}]})");
  bad(R"({"eigenvalues":[],"qd":[],"qc":{"lambda":[0,1],"re":[0],"im":[0,0]}})");
  bad(R"({"eigenvalues":[],"qd":[],"qc":{"lambda":[0,1],"re":["a",0],"im":[0,0]}})");
  bad(R"({"eigenvalues":[{"re":0,"im":0.5}],"qd":[{"re":0,"im":1}],"b":[]})");

  std::stringstream dup(
      R"({"eigenvalues":[{"re":0,"im":0.5},{"re":0,"im":0.5}],"qd":[{"re":1,"im":0},{"re":2,"im":0}]})");
  EXPECT_THROW(read_spectrum_json(dup), DuplicateEigenvalue);
}
