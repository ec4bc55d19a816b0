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

#ifndef SPSHARE_TESTS_UTIL_HPP
#define SPSHARE_TESTS_UTIL_HPP

#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "spshare/field.hpp"
#include "spshare/rng.hpp"

namespace spshare::testutil {

// 99th-percentile chi-square quantile (Wilson-Hilferty), good for dof >= 10
inline double chi2_quantile_99(double dof) {
  const double z = 2.3263478740408408;
  const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
  return dof * t * t * t;
}

inline double chi2_stat(const std::vector<std::uint64_t>& counts,
                        const std::vector<double>& probs) {
  const double total = static_cast<double>(
      std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}));
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expect = total * probs[i];
    const double diff = counts[i] - expect;
    stat += diff * diff / expect;
  }
  return stat;
}

// Joint distribution of (A, A + alpha_i * R) for the n-share pad, built by
// direct enumeration over the pad symbol from the defining cases. Independent
// of the library's channel constructors.
inline std::vector<double> enumerate_share_joint(const Field& f, double s, double p1, double ps,
                                                 const std::vector<std::uint32_t>& alphas,
                                                 std::uint32_t share) {
  const std::uint32_t q = f.q();
  const std::uint32_t n = static_cast<std::uint32_t>(alphas.size());
  std::vector<double> joint(static_cast<std::size_t>(q) * q, 0.0);
  const double pa_nz = (1.0 - s) / (q - 1);
  const double p1inv = (1.0 - p1) / (q - 1);
  const double pcinv = (1.0 - n * ps) / (q - n);
  for (std::uint32_t a = 0; a < q; ++a) {
    const double pa = (a == 0) ? s : pa_nz;
    std::vector<bool> special(q, false);
    if (a != 0)
      for (std::uint32_t i = 0; i < n; ++i) special[f.mul(f.neg(a), f.inv(alphas[i]))] = true;
    for (std::uint32_t r = 0; r < q; ++r) {
      double pr;
      if (a == 0)
        pr = (r == 0) ? p1 : p1inv;
      else
        pr = special[r] ? ps : pcinv;
      const std::uint32_t y = f.add(a, f.mul(alphas[share], r));
      joint[static_cast<std::size_t>(a) * q + y] += pa * pr;
    }
  }
  return joint;
}

// same for the one-time pad, share 0 = R, share 1 = A + R
inline std::vector<double> enumerate_otp_joint(const Field& f, double s, double p1, double p2,
                                               double p3, int share) {
  const std::uint32_t q = f.q();
  std::vector<double> joint(static_cast<std::size_t>(q) * q, 0.0);
  const double pa_nz = (1.0 - s) / (q - 1);
  const double p1inv = (1.0 - p1) / (q - 1);
  const double p23inv = (1.0 - p2 - p3) / (q - 2);
  for (std::uint32_t a = 0; a < q; ++a) {
    const double pa = (a == 0) ? s : pa_nz;
    for (std::uint32_t r = 0; r < q; ++r) {
      double pr;
      if (a == 0)
        pr = (r == 0) ? p1 : p1inv;
      else if (r == 0)
        pr = p2;
      else if (r == f.neg(a))
        pr = p3;
      else
        pr = p23inv;
      const std::uint32_t y = (share == 0) ? r : f.add(a, r);
      joint[static_cast<std::size_t>(a) * q + y] += pa * pr;
    }
  }
  return joint;
}

// mutual information through the joint table, q-ary units
inline double mi_from_joint(const std::vector<double>& joint, std::uint32_t q) {
  std::vector<double> pa(q, 0.0), pb(q, 0.0);
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      pa[a] += joint[static_cast<std::size_t>(a) * q + b];
      pb[b] += joint[static_cast<std::size_t>(a) * q + b];
    }
  double acc = 0.0;
  for (std::uint32_t a = 0; a < q; ++a)
    for (std::uint32_t b = 0; b < q; ++b) {
      const double j = joint[static_cast<std::size_t>(a) * q + b];
      if (j > 0.0) acc += j * std::log(j / (pa[a] * pb[b]));
    }
  return acc / std::log(static_cast<double>(q));
}

inline double pearson(const std::vector<std::uint32_t>& x, const std::vector<std::uint32_t>& y) {
  const std::size_t n = x.size();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < n; ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace spshare::testutil

#endif  // SPSHARE_TESTS_UTIL_HPP
