#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "../support/check_error.hpp"
#include "glasso/instance_io.hpp"
#include "glasso/model.hpp"
#include "glasso/rng.hpp"

using namespace glasso;

TEST_CASE("SplitMix64 reference values") {
  // First output of the reference SplitMix64 stream seeded with 0.
  CHECK(splitmix_finalize(0) == 0xE220A8397B1DCDAFull);
  Rng r(0);
  CHECK(r.next() == 0xE220A8397B1DCDAFull);
  CHECK(r.next() == 0x6E789E6AA1B965F4ull);
  CHECK(derive_seed(7, seed_tag::noise) != derive_seed(7, seed_tag::signal));
}

TEST_CASE("generator moments") {
  Rng r(42);
  const int n = 200000;
  double m = 0.0, v = 0.0, u = 0.0;
  for (int i = 0; i < n; ++i) {
    const double g = r.gaussian();
    m += g;
    v += g * g;
    const double x = r.uniform();
    CHECK((x >= 0.0 && x < 1.0));
    u += x;
  }
  m /= n;
  v /= n;
  u /= n;
  // Five standard errors.
  CHECK(std::abs(m) < 5.0 / std::sqrt(n));
  CHECK(std::abs(v - 1.0) < 5.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(u - 0.5) < 5.0 * std::sqrt(1.0 / 12.0 / n));
  for (int i = 0; i < 1000; ++i) CHECK(r.uniform_int(7) < 7);
}

TEST_CASE("support sampling is uniform over subsets") {
  const Index G = 10, s = 3;
  std::vector<int> hits(G, 0);
  const int trials = 20000;
  for (int t = 0; t < trials; ++t) {
    const IndexList sup = sample_support(G, s, static_cast<std::uint64_t>(t));
    REQUIRE(sup.size() == s);
    CHECK(std::is_sorted(sup.begin(), sup.end()));
    CHECK(std::set<Index>(sup.begin(), sup.end()).size() == s);
    for (Index g : sup) ++hits[g];
  }
  // Each index appears with probability s/G; binomial standard error.
  const double expected = trials * static_cast<double>(s) / G;
  const double se = std::sqrt(trials * 0.3 * 0.7);
  for (int h : hits) CHECK(std::abs(h - expected) < 5.0 * se);
  CHECK_GLASSO_ERROR(sample_support(3, 4, 1), ErrorCode::invalid_argument);
}

TEST_CASE("signal groups have the requested magnitude") {
  const BlockDictionary x = demix_dictionary(8, 8, 2, 4);
  const IndexList sup = {1, 5, 70};
  const GroupSparseSignal sig = sample_signal(x.partition(), sup, 7.5, 3);
  CHECK(sig.support == sup);
  for (Index g = 0; g < x.partition().num_groups(); ++g) {
    const bool on = std::find(sup.begin(), sup.end(), g) != sup.end();
    if (on) {
      CHECK(std::abs(sig.group_norm(g) - 7.5) <= 1e-12);
    } else {
      CHECK(sig.group_norm(g) == 0.0);
    }
  }
  CHECK(sig.support_dimension() == 2 + 2 + 8);
}

TEST_CASE("synthesis") {
  const BlockDictionary x = demix_dictionary(8, 8, 2, 4);
  const GroupSparseSignal sig = sample_signal(x.partition(), IndexList{0, 66}, 3.0, 1);

  const SyntheticInstance clean = synthesize(x, sig, 0.0, 5);
  CHECK((clean.observations - x.apply(sig.coefficients)).cwiseAbs().maxCoeff() == 0.0);

  const SyntheticInstance noisy = synthesize(x, sig, 1.0, 5);
  const Vector recon = noisy.observations - x.apply(sig.coefficients) - noisy.noise;
  CHECK(recon.cwiseAbs().maxCoeff() < 1e-12);

  // Pure noise: chi-square concentration of |y|^2 / n.
  const BlockDictionary big = dirac_basis(10000);
  const SyntheticInstance pure =
      synthesize(big, GroupSparseSignal::zero(big.partition()), 1.0, 77);
  CHECK(std::abs(pure.observations.squaredNorm() / 10000.0 - 1.0) < 0.05);
}

TEST_CASE("demixing scene") {
  SceneConfig c;
  c.side = 10;
  c.T = 8;
  c.D = 4;
  c.s1 = 3;
  c.s2 = 2;
  c.alpha = 4.0;
  c.seed = 99;
  const SyntheticInstance inst = build_demix_scene(c);
  CHECK(inst.dictionary.cols() == 2 * 100 * 8);
  CHECK(inst.dictionary.partition().num_groups() == 125);
  Index smooth = 0, anomaly = 0;
  for (Index g : inst.truth.support) (g < 100 ? smooth : anomaly) += 1;
  CHECK(smooth == 3);
  CHECK(anomaly == 2);

  c.uniform_support = true;
  CHECK(build_demix_scene(c).truth.support.size() == 5);

  c.s1 = c.s2 = 0;
  c.uniform_support = false;
  const SyntheticInstance empty = build_demix_scene(c);
  CHECK((empty.observations - empty.noise).cwiseAbs().maxCoeff() == 0.0);

  c.D = 3;
  CHECK_GLASSO_ERROR(build_demix_scene(c), ErrorCode::invalid_argument);
}

TEST_CASE("instances are reproducible and round-trip through SIX1") {
  SceneConfig c;
  c.side = 8;
  c.T = 2;
  c.s1 = 2;
  c.s2 = 1;
  c.seed = 1234;
  std::stringstream a, b;
  write_six(a, build_demix_scene(c));
  write_six(b, build_demix_scene(c));
  CHECK(a.str() == b.str());
  CHECK(a.str().substr(0, 4) == "SIX1");
  const SyntheticInstance back = read_six(a);
  const SyntheticInstance orig = build_demix_scene(c);
  CHECK(back.seed == 1234);
  CHECK(back.sigma == orig.sigma);
  CHECK(back.truth.support == orig.truth.support);
  CHECK(back.observations == orig.observations);
  CHECK(back.noise == orig.noise);
  CHECK(back.dictionary.descriptor() == orig.dictionary.descriptor());
}

TEST_CASE("WFD1 round trip") {
  Wavefield w;
  w.rows = 2;
  w.cols = 3;
  w.frames = 2;
  w.data = Vector::LinSpaced(12, 0.0, 11.0);
  std::stringstream buf;
  write_wfd(buf, w);
  const Wavefield back = read_wfd(buf);
  CHECK(back.rows == 2);
  CHECK(back.cols == 3);
  CHECK(back.frames == 2);
  CHECK(back.data == w.data);
  std::stringstream bad("WFD2");
  CHECK_GLASSO_ERROR(read_wfd(bad), ErrorCode::format_error);
}
