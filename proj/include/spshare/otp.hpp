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

#ifndef SPSHARE_OTP_HPP
#define SPSHARE_OTP_HPP

#include <cstdint>
#include <utility>

#include "spshare/field.hpp"
#include "spshare/stats.hpp"

namespace spshare {

// Two-share sparse one-time pad. The pad R is drawn entrywise from a
// conditional distribution keyed on the matching entry of A:
//
//   given A = 0:      R = 0 with prob p1, otherwise uniform over the q-1
//                     nonzero symbols (p1inv each);
//   given A = a != 0: R = 0 with prob p2, R = -a with prob p3, otherwise
//                     uniform over the remaining q-2 symbols (p23inv each).
//
// The shares are R and A + R.
class PadParams {
 public:
  PadParams(const Field& field, double p1, double p2, double p3);

  const Field& field() const { return *field_; }
  std::uint32_t q() const { return field_->q(); }
  double p1() const { return p1_; }
  double p2() const { return p2_; }
  double p3() const { return p3_; }
  double p1inv() const { return (1.0 - p1_) / (q() - 1); }
  double p23inv() const { return (1.0 - p2_ - p3_) / (q() - 2); }

  static PadParams uniform(const Field& field);

 private:
  const Field* field_;
  double p1_, p2_, p3_;
};

struct OtpShares {
  FieldMatrix pad;     // R
  FieldMatrix padded;  // A + R
};

// Deterministic in (A, params, seed); rows are sampled from independent
// substreams keyed by row index, so the result does not depend on traversal
// or thread order.
OtpShares sample_pad(const FieldMatrix& a, const PadParams& params, std::uint64_t seed);

// (s_R, s_{A+R}) for a source with sparsity s
std::pair<double, double> predicted_sparsity(const PadParams& params, double s);

// p1 = p3 = p, p2 = (1-p)/(q-1): the padded share A + R carries no
// information about A, all leakage is through R. Requires 0 < p < 1.
PadParams semi_perfect_params(double p, const Field& field);

// per-entry leakage of the R share under semi-perfect parameters, closed form
double semi_perfect_pad_leakage(const Field& field, double s, double p);

// conditional distribution of an R entry (resp. A+R entry) given the A entry
ConditionalPmf pad_channel(const PadParams& params);
ConditionalPmf padded_channel(const PadParams& params);
// share 0 is R, share 1 is A+R
ConditionalPmf share_channel(const PadParams& params, int share_index);

// per-share leakage (L1, L2) evaluated through the exact channels
LeakageReport otp_leakage(const PadParams& params, const SourceModel& source);

}  // namespace spshare

#endif  // SPSHARE_OTP_HPP
