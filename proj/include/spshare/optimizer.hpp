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

#ifndef SPSHARE_OPTIMIZER_HPP
#define SPSHARE_OPTIMIZER_HPP

#include <cstdint>
#include <vector>

#include "spshare/otp.hpp"
#include "spshare/sss.hpp"
#include "spshare/stats.hpp"

namespace spshare {

// Closed-form total leakage L1 + L2 of the one-time pad for sparsities
// (s_R, s_AR), with p2 and p3 eliminated through the sparsity constraints.
double otp_total_leakage(std::uint32_t q, double s, double s_r, double s_ar, double p1);
// closed-form per-share pair (L1, L2)
std::pair<double, double> otp_share_leakages(std::uint32_t q, double s, double s_r, double s_ar,
                                             double p1);

// Cubic in p1 whose feasible root is the leakage minimizer for fixed share
// sparsities. c3 > 0 whenever q >= 3. The feasible window is expressed for
// x = p1 * s.
struct OtpCubic {
  double c3, c2, c1, c0;
  double q_bar;      // (q-2)^2 / (q-1)
  double lo_x, hi_x; // feasible interval for p1 * s
};
OtpCubic make_otp_cubic(std::uint32_t q, double s, double s_r, double s_ar);

struct OtpSolveResult {
  PadParams params;
  LeakageReport leakage;           // closed form; both shares
  double stationarity_residual;    // relative, p1*(p23inv)^2 vs p1inv*p2*p3
  int roots_considered;
};

// Minimize L1 + L2 over the pad family at the given share sparsities.
// Throws FeasibilityError (naming the violated bound) when no parameters
// achieve them.
OtpSolveResult solve_otp(const SourceModel& source, double s_r, double s_ar);

// Degree-(n+1) polynomial in ps whose feasible root is the n-share leakage
// minimizer; kept alongside the monotone bisection as a cross-check.
struct SssPolynomial {
  std::vector<double> b;  // b[0] .. b[n+1]
  double lo_ps, hi_ps;
  // scaled residual of sum b_j x^j at x
  double residual_at(double x) const;
};
SssPolynomial make_sss_polynomial(std::uint32_t q, double s, double s_d, std::uint32_t n);

struct SssSolveResult {
  ShareParams params;
  LeakageReport leakage;         // closed form; n equal shares
  double stationarity_residual;  // relative, p1*pcinv^n vs p1inv*ps^n
  double polynomial_residual;    // scaled residual of the explicit polynomial
  int iterations;
};

// Minimize the (common) per-share leakage over the n-share family at share
// sparsity s_d. Bisection on the monotone stationarity equation, then the
// explicit polynomial is evaluated at the root as a consistency check.
SssSolveResult solve_sss(const SourceModel& source, double s_d, std::uint32_t n);

struct SparsitySplitPoint {
  double s_delta;
  bool feasible;
  double total_leakage;  // meaningful only when feasible
};
struct SparsitySplitReport {
  std::vector<SparsitySplitPoint> points;
  double delta_at_min;       // over feasible points
  double min_total_leakage;
};

// Sweep s_delta in [-delta_max, delta_max]; share sparsities are
// (s_avg - s_delta, s_avg + s_delta). Splits that push a probability out of
// [0,1] are reported infeasible rather than dropped.
SparsitySplitReport verify_equal_sparsity_optimal(const SourceModel& source, double s_avg,
                                                  double delta_max, double step);

// Largest semi-perfect pad parameter p in [1/q, 1) whose worst-case colluder
// view stays within the relative leakage budget:
//   min{rho2*z/n2, 1} * L1(p) / H <= eps_rel.
// eps_rel = 0 returns exactly 1/q; a budget met even at p -> 1 returns the
// open-interval clamp just below 1.
double solve_pstar(const SourceModel& source, std::uint32_t n2, std::uint32_t rho2,
                   std::uint32_t z, double eps_rel);

}  // namespace spshare

#endif  // SPSHARE_OPTIMIZER_HPP
