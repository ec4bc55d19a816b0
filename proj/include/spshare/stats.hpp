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

#ifndef SPSHARE_STATS_HPP
#define SPSHARE_STATS_HPP

#include <cstdint>
#include <vector>

#include "spshare/field.hpp"

namespace spshare {

// Probability mass function over the symbols of a finite field. Entries are
// non-negative and sum to one within 1e-12. All information measures are in
// q-ary units (log base q), with 0*log(0) handled by an explicit skip rather
// than epsilon flooring, so exact zeros and ones are legal.
class Pmf {
 public:
  Pmf(const Field& alphabet, std::vector<double> probs);

  const Field& alphabet() const { return *alphabet_; }
  std::uint32_t q() const { return alphabet_->q(); }
  double operator[](std::uint32_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  static Pmf uniform(const Field& alphabet);
  static Pmf point_mass(const Field& alphabet, std::uint32_t at);

 private:
  const Field* alphabet_;
  std::vector<double> p_;
};

// q x q stochastic matrix: row a is the distribution of the output symbol
// given input symbol a.
class ConditionalPmf {
 public:
  ConditionalPmf(const Field& alphabet, std::vector<double> rows);

  const Field& alphabet() const { return *alphabet_; }
  std::uint32_t q() const { return alphabet_->q(); }
  double at(std::uint32_t in, std::uint32_t out) const {
    return rows_[static_cast<std::size_t>(in) * q() + out];
  }
  Pmf row(std::uint32_t in) const;
  // exact output marginal under the given input distribution
  Pmf output_marginal(const Pmf& input) const;

 private:
  const Field* alphabet_;
  std::vector<double> rows_;
};

// i.i.d. source over GF(q): an entry is 0 with probability s, otherwise
// uniform over the q-1 nonzero symbols. Requires s > 1/q.
class SourceModel {
 public:
  SourceModel(const Field& field, double s);

  const Field& field() const { return *field_; }
  std::uint32_t q() const { return field_->q(); }
  double s() const { return s_; }
  Pmf entry_pmf() const;
  double entry_entropy() const;  // H_q of one entry

 private:
  const Field* field_;
  double s_;
};

struct LeakageReport {
  std::vector<double> per_share;           // L_i, q-ary symbols per entry
  double total = 0.0;                      // sum of per_share
  double entry_entropy = 0.0;              // H_q of one source entry
  std::vector<double> relative_per_share;  // L_i / entry_entropy
  double relative_total = 0.0;             // total / (n_shares * entry_entropy)
};

LeakageReport make_leakage_report(std::vector<double> per_share, double entry_entropy);

double entropy_q(const Pmf& p);
// requires support(p) subset of support(r); names the offending symbol otherwise
double kl_q(const Pmf& p, const Pmf& r);
double mutual_information_q(const Pmf& source, const ConditionalPmf& channel);

// plug-in estimate from the empirical joint histogram of aligned entries
double empirical_mi(const FieldMatrix& samples_in, const FieldMatrix& samples_out);

// x * log_q(x / y), zero when x is zero
double xlogq(double x, double y, double ln_q);

}  // namespace spshare

#endif  // SPSHARE_STATS_HPP
