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

#include "spshare/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace spshare {

namespace {

double rel_gap(double a, double b) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) / scale;
}

// real roots of c3 x^3 + c2 x^2 + c1 x + c0, Newton-polished
std::vector<double> cubic_real_roots(double c3, double c2, double c1, double c0) {
  std::vector<double> roots;
  const double a = c2 / c3, b = c1 / c3, c = c0 / c3;
  // depressed form t^3 + p t + q with x = t - a/3
  const double p = b - a * a / 3.0;
  const double qq = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
  const double disc = qq * qq / 4.0 + p * p * p / 27.0;
  if (disc > 0) {
    const double s = std::sqrt(disc);
    const double u = std::cbrt(-qq / 2.0 + s);
    const double v = std::cbrt(-qq / 2.0 - s);
    roots.push_back(u + v - a / 3.0);
  } else {
    const double r = std::sqrt(std::max(0.0, -p / 3.0));
    if (r == 0.0) {
      roots.push_back(-a / 3.0);
    } else {
      const double phi = std::acos(std::clamp(3.0 * qq / (2.0 * p * r), -1.0, 1.0));
      for (int k = 0; k < 3; ++k)
        roots.push_back(2.0 * r * std::cos((phi + 2.0 * M_PI * k) / 3.0) - a / 3.0);
    }
  }
  for (double& x : roots) {
    for (int it = 0; it < 4; ++it) {
      const double f = ((c3 * x + c2) * x + c1) * x + c0;
      const double df = (3.0 * c3 * x + 2.0 * c2) * x + c1;
      if (df == 0.0) break;
      x -= f / df;
    }
  }
  return roots;
}

struct Bound {
  double value;
  const char* origin;
};

std::string feasibility_message(double s, double s_r, double s_ar, const Bound& lo,
                                const Bound& hi) {
  std::ostringstream os;
  os << "no pad parameters reach sparsities (s_R = " << s_r << ", s_AR = " << s_ar
     << ") at source sparsity s = " << s << ": need p1*s >= " << lo.value << " (" << lo.origin
     << ") and p1*s <= " << hi.value << " (" << hi.origin << ")";
  return os.str();
}

}  // namespace

std::pair<double, double> otp_share_leakages(std::uint32_t q, double s, double s_r, double s_ar,
                                             double p1) {
  const double ln_q = std::log(static_cast<double>(q));
  const double p2 = (s_r - p1 * s) / (1.0 - s);
  const double p3 = (s_ar - p1 * s) / (1.0 - s);
  const double p1inv = (1.0 - p1) / (q - 1);
  const double p23inv = (1.0 - p2 - p3) / (q - 2);
  const double sr_inv = (1.0 - s_r) / (q - 1);
  const double sar_inv = (1.0 - s_ar) / (q - 1);
  const double l1 = s * (xlogq(p1, s_r, ln_q) + (q - 1) * xlogq(p1inv, sr_inv, ln_q)) +
                    (1.0 - s) * (xlogq(p2, s_r, ln_q) + xlogq(p3, sr_inv, ln_q) +
                                 (q - 2) * xlogq(p23inv, sr_inv, ln_q));
  const double l2 = s * (xlogq(p1, s_ar, ln_q) + (q - 1) * xlogq(p1inv, sar_inv, ln_q)) +
                    (1.0 - s) * (xlogq(p3, s_ar, ln_q) + xlogq(p2, sar_inv, ln_q) +
                                 (q - 2) * xlogq(p23inv, sar_inv, ln_q));
  return {l1, l2};
}

double otp_total_leakage(std::uint32_t q, double s, double s_r, double s_ar, double p1) {
  const auto [l1, l2] = otp_share_leakages(q, s, s_r, s_ar, p1);
  return l1 + l2;
}

OtpCubic make_otp_cubic(std::uint32_t q, double s, double s_r, double s_ar) {
  OtpCubic cu;
  cu.q_bar = static_cast<double>(q - 2) * (q - 2) / (q - 1);
  cu.c3 = s * s * (4.0 + cu.q_bar);
  cu.c2 = 4.0 * s * (1.0 - s - s_ar - s_r) - cu.q_bar * s * (s_r + s_ar + s);
  cu.c1 = (1.0 - s - s_ar - s_r) * (1.0 - s - s_ar - s_r) +
          cu.q_bar * (s * s_ar + s * s_r + s_ar * s_r);
  cu.c0 = -cu.q_bar * s_ar * s_r;
  cu.lo_x = std::max({0.0, s_r - (1.0 - s), s_ar - (1.0 - s), (s_r + s_ar - (1.0 - s)) / 2.0});
  cu.hi_x = std::min({s, s_r, s_ar});
  return cu;
}

OtpSolveResult solve_otp(const SourceModel& source, double s_r, double s_ar) {
  const Field& f = source.field();
  const std::uint32_t q = f.q();
  if (q < 3) throw InvalidArgument("solve_otp: needs q >= 3");
  const double s = source.s();
  for (double sd : {s_r, s_ar})
    if (!(sd >= 1.0 / q - 1e-12) || sd > 1.0)
      throw FeasibilityError("solve_otp: share sparsity " + std::to_string(sd) +
                             " must lie in [1/q, 1]");

  Bound lo{0.0, "p1 >= 0"};
  for (Bound b : {Bound{s_r - (1.0 - s), "p2 <= 1"}, Bound{s_ar - (1.0 - s), "p3 <= 1"},
                  Bound{(s_r + s_ar - (1.0 - s)) / 2.0, "p2 + p3 <= 1"}})
    if (b.value > lo.value) lo = b;
  Bound hi{s, "p1 <= 1"};
  for (Bound b : {Bound{s_r, "p2 >= 0"}, Bound{s_ar, "p3 >= 0"}})
    if (b.value < hi.value) hi = b;
  if (lo.value > hi.value + 1e-12)
    throw FeasibilityError(feasibility_message(s, s_r, s_ar, lo, hi));

  std::vector<double> candidates;
  int considered = 0;
  if (hi.value - lo.value < 1e-11) {
    candidates.push_back(0.5 * (lo.value + hi.value) / s);
  } else {
    const OtpCubic cu = make_otp_cubic(q, s, s_r, s_ar);
    for (double p1 : cubic_real_roots(cu.c3, cu.c2, cu.c1, cu.c0)) {
      ++considered;
      const double x = p1 * s;
      if (x >= cu.lo_x - 1e-9 && x <= cu.hi_x + 1e-9)
        candidates.push_back(std::clamp(x, cu.lo_x, cu.hi_x) / s);
    }
    if (candidates.empty()) {
      // boundary optimum; the interior stationarity condition has no root
      candidates.push_back(lo.value / s);
      candidates.push_back(hi.value / s);
    }
  }

  double best_p1 = candidates.front();
  double best_l = std::numeric_limits<double>::infinity();
  for (double p1 : candidates) {
    const double l = otp_total_leakage(q, s, s_r, s_ar, p1);
    if (l < best_l) {
      best_l = l;
      best_p1 = p1;
    }
  }

  const double p2 = (s_r - best_p1 * s) / (1.0 - s);
  const double p3 = (s_ar - best_p1 * s) / (1.0 - s);
  PadParams params(f, best_p1, p2, p3);
  const auto [l1, l2] = otp_share_leakages(q, s, s_r, s_ar, best_p1);
  OtpSolveResult res{params, make_leakage_report({l1, l2}, source.entry_entropy()), 0.0,
                     considered};
  const double lhs = params.p1() * params.p23inv() * params.p23inv();
  const double rhs = params.p1inv() * params.p2() * params.p3();
  res.stationarity_residual = rel_gap(lhs, rhs);
  return res;
}

double SssPolynomial::residual_at(double x) const {
  double value = 0.0, scale = 0.0, pw = 1.0;
  for (double bj : b) {
    value += bj * pw;
    scale = std::max(scale, std::abs(bj * pw));
    pw *= x;
  }
  return scale > 0 ? std::abs(value) / scale : std::abs(value);
}

SssPolynomial make_sss_polynomial(std::uint32_t q, double s, double s_d, std::uint32_t n) {
  if (n >= q) throw InvalidArgument("make_sss_polynomial: needs n < q");
  SssPolynomial poly;
  const double s_tilde = s_d / (1.0 - s);
  const double s_bar = (s - s_d) / (1.0 - s);
  const double q_tilde = (q - 1.0) / std::pow(static_cast<double>(q) - n, static_cast<double>(n));
  poly.b.assign(n + 2, 0.0);
  poly.b[0] = q_tilde * s_tilde;
  double binom = 1.0;    // C(n, k-1) at the top of each iteration
  double pow_km1 = 1.0;  // (-n)^(k-1)
  for (std::uint32_t k = 1; k + 1 <= n; ++k) {
    const double binom_km1 = binom;
    binom = binom * (n - k + 1) / k;
    const double pow_k = pow_km1 * -static_cast<double>(n);
    poly.b[k] = (s_tilde * binom * pow_k - binom_km1 * pow_km1) * q_tilde;
    pow_km1 = pow_k;
  }
  // pow_km1 is now (-n)^(n-1)
  const double pow_n = pow_km1 * -static_cast<double>(n);
  poly.b[n] = (s_tilde * pow_n - n * pow_km1) * q_tilde - s_bar;
  poly.b[n + 1] = -1.0 - pow_n * q_tilde;
  poly.lo_ps = std::max(0.0, (s_d - s) / (1.0 - s));
  poly.hi_ps = std::min(1.0 / n, s_d / (1.0 - s));
  return poly;
}

SssSolveResult solve_sss(const SourceModel& source, double s_d, std::uint32_t n) {
  const Field& f = source.field();
  const std::uint32_t q = f.q();
  if (n < 2 || n >= q)
    throw InvalidArgument("solve_sss: share count n must satisfy 2 <= n < q");
  const double s = source.s();
  if (!(s_d >= 1.0 / q - 1e-12) || s_d > 1.0)
    throw FeasibilityError("solve_sss: share sparsity s_d = " + std::to_string(s_d) +
                           " must lie in [1/q, 1]");

  const double lo = std::max(0.0, (s_d - s) / (1.0 - s));
  const double hi = std::min(1.0 / n, s_d / (1.0 - s));
  if (lo > hi + 1e-12) {
    std::ostringstream os;
    os << "solve_sss: no parameters reach s_d = " << s_d << " with n = " << n
       << ": need ps >= " << lo << " (p1 <= 1) and ps <= " << hi << " (n*ps <= 1, p1 >= 0)";
    throw FeasibilityError(os.str());
  }

  double ps, p1;
  int iters = 0;
  if (hi - lo < 1e-13) {
    ps = 0.5 * (lo + hi);
  } else {
    // log(LHS) - log(RHS) of the stationarity balance; strictly decreasing
    auto g = [&](double x) {
      return std::log(q - 1.0) + std::log(s_d - (1.0 - s) * x) -
             std::log(s - s_d + (1.0 - s) * x) -
             n * (std::log(static_cast<double>(q) - n) + std::log(x) - std::log(1.0 - n * x));
    };
    const double span = hi - lo;
    double a = lo + 1e-14 * span, b = hi - 1e-14 * span;
    if (!(g(a) > 0.0) || !(g(b) < 0.0))
      throw FeasibilityError("solve_sss: stationarity balance has no sign change on the feasible "
                             "interval");
    for (; iters < 200 && b - a > 0; ++iters) {
      const double m = 0.5 * (a + b);
      if (m == a || m == b) break;
      (g(m) > 0.0 ? a : b) = m;
    }
    ps = 0.5 * (a + b);
  }
  p1 = (s_d - ps * (1.0 - s)) / s;

  ShareParams params(f, n, p1, ps);
  const double per_share = sss_share_leakage(f, s, s_d, n, params.p1(), params.ps());
  SssSolveResult res{params,
                     make_leakage_report(std::vector<double>(n, per_share),
                                         source.entry_entropy()),
                     0.0, 0.0, iters};
  const double lhs = params.p1() * std::pow(params.pcinv(), static_cast<double>(n));
  const double rhs = params.p1inv() * std::pow(params.ps(), static_cast<double>(n));
  res.stationarity_residual = rel_gap(lhs, rhs);
  res.polynomial_residual = make_sss_polynomial(q, s, s_d, n).residual_at(params.ps());
  return res;
}

SparsitySplitReport verify_equal_sparsity_optimal(const SourceModel& source, double s_avg,
                                                  double delta_max, double step) {
  if (delta_max < 0 || (delta_max > 0 && step <= 0))
    throw InvalidArgument("verify_equal_sparsity_optimal: bad sweep range");
  SparsitySplitReport rep;
  rep.delta_at_min = 0.0;
  rep.min_total_leakage = std::numeric_limits<double>::infinity();
  const int half = delta_max > 0 ? static_cast<int>(std::floor(delta_max / step + 1e-9)) : 0;
  for (int k = -half; k <= half; ++k) {
    const double delta = k * step;
    SparsitySplitPoint pt{delta, false, 0.0};
    try {
      const OtpSolveResult r = solve_otp(source, s_avg - delta, s_avg + delta);
      pt.feasible = true;
      pt.total_leakage = r.leakage.total;
      if (pt.total_leakage < rep.min_total_leakage) {
        rep.min_total_leakage = pt.total_leakage;
        rep.delta_at_min = delta;
      }
    } catch (const FeasibilityError&) {
    }
    rep.points.push_back(pt);
  }
  return rep;
}

double solve_pstar(const SourceModel& source, std::uint32_t n2, std::uint32_t rho2,
                   std::uint32_t z, double eps_rel) {
  if (n2 == 0 || rho2 == 0 || z == 0)
    throw InvalidArgument("solve_pstar: cluster parameters must be positive");
  if (eps_rel < 0.0 || eps_rel > 1.0)
    throw InvalidArgument("solve_pstar: eps_rel must lie in [0, 1]");
  const Field& f = source.field();
  const double qinv = 1.0 / f.q();
  if (eps_rel == 0.0) return qinv;
  const double factor = std::min(static_cast<double>(rho2) * z / n2, 1.0);
  const double h = source.entry_entropy();
  auto excess = [&](double p) {
    return factor * semi_perfect_pad_leakage(f, source.s(), p) / h - eps_rel;
  };
  const double top = std::nextafter(1.0, 0.0);
  if (excess(top) <= 0.0) return top;  // budget never binds; clamp to the open interval
  double a = qinv, b = top;
  for (int it = 0; it < 200; ++it) {
    const double m = 0.5 * (a + b);
    if (m == a || m == b) break;
    (excess(m) <= 0.0 ? a : b) = m;
  }
  return a;
}

}  // namespace spshare
