// Copyright 2026 The spshare Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <limits>

#include "doctest.h"
#include "spshare/optimizer.hpp"
#include "util.hpp"

using namespace spshare;

namespace {
// oracle evaluation of the total pad leakage through the enumerated joint
double oracle_otp_total(const Field& f, double s, double s_r, double s_ar, double p1) {
  const double p2 = (s_r - p1 * s) / (1 - s);
  const double p3 = (s_ar - p1 * s) / (1 - s);
  return testutil::mi_from_joint(testutil::enumerate_otp_joint(f, s, p1, p2, p3, 0), f.q()) +
         testutil::mi_from_joint(testutil::enumerate_otp_joint(f, s, p1, p2, p3, 1), f.q());
}

double oracle_sss_per_share(const Field& f, double s, double p1, double ps, std::uint32_t n) {
  const auto alphas = ShareParams::default_alphas(n);
  return testutil::mi_from_joint(testutil::enumerate_share_joint(f, s, p1, ps, alphas, 0),
                                 f.q());
}
}  // namespace

TEST_SUITE("optimizer") {

TEST_CASE("cubic coefficients and feasible window") {
  for (std::uint32_t q : {3u, 5u, 89u, 5081u}) {
    const OtpCubic cu = make_otp_cubic(q, 0.6, 0.4, 0.4);
    CHECK(cu.c3 > 0.0);
    CHECK(cu.q_bar == doctest::Approx(static_cast<double>(q - 2) * (q - 2) / (q - 1)));
    CHECK(cu.lo_x <= cu.hi_x);
  }
}

TEST_CASE("pad solver hits the uniform corner at sparsity 1/q") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const OtpSolveResult r = solve_otp(source, 1.0 / 89, 1.0 / 89);
  CHECK(r.leakage.total < 1e-12);
  CHECK(r.params.p1() == doctest::Approx(1.0 / 89).epsilon(1e-9));
  CHECK(r.params.p2() == doctest::Approx(1.0 / 89).epsilon(1e-9));
  CHECK(r.params.p3() == doctest::Approx(1.0 / 89).epsilon(1e-9));
}

TEST_CASE("pad solver reproduces the published operating point") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const OtpSolveResult r = solve_otp(source, 0.9, 0.9);
  CHECK(std::abs(r.leakage.relative_per_share[0] - 0.234) < 0.005);
  CHECK(std::abs(r.leakage.relative_per_share[1] - 0.234) < 0.005);
  CHECK(r.stationarity_residual < 1e-9);
  // the closed-form report matches the channel evaluation
  const LeakageReport via_channel = otp_leakage(r.params, source);
  CHECK(std::abs(via_channel.per_share[0] - r.leakage.per_share[0]) < 1e-10);
  CHECK(std::abs(via_channel.per_share[1] - r.leakage.per_share[1]) < 1e-10);
}

TEST_CASE("pad solver beats a fine parameter grid") {
  const Field f = Field::prime(5);
  const SourceModel source(f, 0.5);
  for (auto [sr, sar] : {std::pair{0.45, 0.45}, std::pair{0.45, 0.40}}) {
    const OtpSolveResult r = solve_otp(source, sr, sar);
    const double solver_leak = oracle_otp_total(f, 0.5, sr, sar, r.params.p1());
    const OtpCubic cu = make_otp_cubic(5, 0.5, sr, sar);
    double best = std::numeric_limits<double>::infinity();
    for (double x = cu.lo_x; x <= cu.hi_x + 1e-12; x += 1e-4)
      best = std::min(best, oracle_otp_total(f, 0.5, sr, sar, std::min(x, cu.hi_x) / 0.5));
    CHECK(solver_leak <= best + 1e-6);
  }
}

TEST_CASE("pad solver rejects unreachable sparsity pairs") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  CHECK_THROWS_WITH_AS(solve_otp(source, 0.86, 0.94), doctest::Contains("p1*s"),
                       FeasibilityError);
  CHECK_THROWS_AS(solve_otp(source, 0.001, 0.9), FeasibilityError);  // below 1/q
}

TEST_CASE("share solver reproduces the published curve points") {
  struct Case {
    std::uint32_t q, n;
    double expect;
  };
  for (const Case& c : {Case{89, 2, 0.234}, Case{89, 5, 0.284}, Case{5081, 2, 0.199},
                        Case{5081, 5, 0.207}}) {
    const Field f = Field::prime(c.q);
    const SourceModel source(f, 0.95);
    const SssSolveResult r = solve_sss(source, 0.9, c.n);
    CHECK(std::abs(r.leakage.relative_per_share[0] - c.expect) < 0.005);
    CHECK(r.stationarity_residual < 1e-9);
    CHECK(r.polynomial_residual < 1e-8);
  }
}

TEST_CASE("share solver beats a fine grid in ps") {
  const Field f = Field::prime(7);
  const SourceModel source(f, 0.5);
  const SssSolveResult r = solve_sss(source, 0.4, 2);
  const double solver_leak = oracle_sss_per_share(f, 0.5, r.params.p1(), r.params.ps(), 2);
  double best = std::numeric_limits<double>::infinity();
  for (double ps = 0.0; ps <= 0.5 + 1e-12; ps += 1e-3) {
    const double p1 = (0.4 - ps * 0.5) / 0.5;
    if (p1 < 0.0 || p1 > 1.0) continue;
    best = std::min(best, oracle_sss_per_share(f, 0.5, p1, std::min(ps, 0.5), 2));
  }
  CHECK(solver_leak <= best + 1e-6);
}

TEST_CASE("share solver edge cases") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  CHECK_THROWS_AS(solve_sss(source, 0.9, 1), InvalidArgument);
  CHECK_THROWS_AS(solve_sss(source, 0.9, 89), InvalidArgument);
  CHECK_THROWS_AS(solve_sss(source, 0.001, 2), FeasibilityError);  // below 1/q
  CHECK_THROWS_AS(solve_sss(source, 0.999, 2), FeasibilityError);  // above s + (1-s)/n
  // at s_d = 1/q the optimum is the uniform choice with zero leakage
  const SssSolveResult r = solve_sss(source, 1.0 / 89, 2);
  CHECK(r.leakage.total < 1e-12);
  CHECK(r.params.p1() == doctest::Approx(1.0 / 89).epsilon(1e-6));
}

TEST_CASE("two-share solver and pad solver land on the same optimum") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const OtpSolveResult pad = solve_otp(source, 0.9, 0.9);
  const SssSolveResult two = solve_sss(source, 0.9, 2);
  CHECK(std::abs(pad.leakage.per_share[0] - two.leakage.per_share[0]) < 1e-6);
  CHECK(std::abs(pad.params.p1() - two.params.p1()) < 1e-6);
  CHECK(std::abs(pad.params.p2() - two.params.ps()) < 1e-6);
}

TEST_CASE("equal share sparsity minimizes the total") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const SparsitySplitReport rep = verify_equal_sparsity_optimal(source, 0.9, 0.04, 0.005);
  CHECK(rep.points.size() == 17);
  CHECK(rep.delta_at_min == 0.0);
  // the sweep range pushes past the reachable split; those points are flagged
  CHECK(!rep.points.front().feasible);
  CHECK(!rep.points.back().feasible);
  // symmetric under swapping the two shares
  const std::size_t m = rep.points.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = rep.points[i];
    const auto& b = rep.points[m - 1 - i];
    REQUIRE(a.feasible == b.feasible);
    if (a.feasible) REQUIRE(std::abs(a.total_leakage - b.total_leakage) < 1e-9);
  }
  const SparsitySplitReport single = verify_equal_sparsity_optimal(source, 0.9, 0.0, 0.005);
  CHECK(single.points.size() == 1);
  CHECK(single.delta_at_min == 0.0);
}

TEST_CASE("relative leakage is monotone in n and in q") {
  const SourceModel s89(Field::prime(89), 0.95);
  // fixed q: more shares leak more per share
  double prev = -1.0;
  std::vector<Field> fields;
  const Field f89 = Field::prime(89);
  const Field f5081 = Field::prime(5081);
  for (std::uint32_t n : {2u, 3u, 4u, 5u}) {
    const double rel = solve_sss(SourceModel(f89, 0.95), 0.9, n).leakage.relative_per_share[0];
    CHECK(rel >= prev - 1e-12);
    prev = rel;
  }
  // fixed n: a larger field leaks less per share
  for (std::uint32_t n : {2u, 5u})
    for (double sd : {0.7, 0.8, 0.9}) {
      const double big = solve_sss(SourceModel(f5081, 0.95), sd, n).leakage.relative_per_share[0];
      const double small = solve_sss(SourceModel(f89, 0.95), sd, n).leakage.relative_per_share[0];
      CHECK(big <= small + 1e-12);
    }
}

TEST_CASE("largest admissible semi-perfect parameter") {
  const Field f = Field::gf256();
  const SourceModel source(f, 0.93);
  CHECK(solve_pstar(source, 100, 1, 5, 0.0) == 1.0 / 256);
  CHECK(solve_pstar(source, 100, 1, 5, 1.0) > 1.0 - 1e-9);
  double prev = 2.0;
  for (std::uint32_t z = 1; z <= 100; ++z) {
    const double p = solve_pstar(source, 100, 1, z, 0.1);
    CHECK(p <= prev + 1e-12);
    CHECK(p >= 1.0 / 256);
    prev = p;
  }
  CHECK_THROWS_AS(solve_pstar(source, 100, 1, 5, 1.5), InvalidArgument);
}

TEST_CASE("solver output satisfies the sparsity constraints") {
  const Field f = Field::prime(89);
  const SourceModel source(f, 0.95);
  const OtpSolveResult r = solve_otp(source, 0.88, 0.91);
  const auto [sr, sar] = predicted_sparsity(r.params, 0.95);
  CHECK(std::abs(sr - 0.88) < 1e-10);
  CHECK(std::abs(sar - 0.91) < 1e-10);
  CHECK(std::abs(r.params.p1() + 88 * r.params.p1inv() - 1.0) < 1e-10);
  const SssSolveResult q = solve_sss(source, 0.87, 3);
  CHECK(std::abs(q.params.p1() * 0.95 + q.params.ps() * 0.05 - 0.87) < 1e-10);
  CHECK(std::abs(3 * q.params.ps() + 86 * q.params.pcinv() - 1.0) < 1e-10);
}

}  // TEST_SUITE
