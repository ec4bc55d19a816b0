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

#include "spshare/sss.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

#include "spshare/rng.hpp"

namespace spshare {

namespace {
constexpr double kProbTol = 1e-12;
}

ShareParams::ShareParams(const Field& field, std::vector<std::uint32_t> alphas, double p1,
                         double ps)
    : field_(&field), alphas_(std::move(alphas)), p1_(p1), ps_(ps) {
  const std::uint32_t n = static_cast<std::uint32_t>(alphas_.size());
  if (n < 2) throw InvalidArgument("ShareParams: need at least 2 shares");
  if (n >= field.q())
    throw InvalidArgument("ShareParams: n = " + std::to_string(n) +
                          " shares need n < q = " + std::to_string(field.q()));
  std::set<std::uint32_t> seen;
  for (std::uint32_t a : alphas_) {
    if (a == 0 || a >= field.q())
      throw InvalidArgument("ShareParams: evaluation points must be nonzero field elements");
    if (!seen.insert(a).second)
      throw InvalidArgument("ShareParams: evaluation points must be distinct");
  }
  if (!std::isfinite(p1_) || p1_ < -kProbTol || p1_ > 1.0 + kProbTol)
    throw InvalidArgument("ShareParams: p1 = " + std::to_string(p1_) + " is not a probability");
  p1_ = std::min(1.0, std::max(0.0, p1_));
  if (!std::isfinite(ps_) || ps_ < -kProbTol || n * ps_ > 1.0 + kProbTol)
    throw InvalidArgument("ShareParams: need 0 <= n*ps <= 1, got ps = " + std::to_string(ps_));
  ps_ = std::max(0.0, std::min(ps_, 1.0 / n));
}

ShareParams::ShareParams(const Field& field, std::uint32_t n, double p1, double ps)
    : ShareParams(field, default_alphas(n), p1, ps) {}

std::vector<std::uint32_t> ShareParams::default_alphas(std::uint32_t n) {
  std::vector<std::uint32_t> a(n);
  for (std::uint32_t i = 0; i < n; ++i) a[i] = i + 1;
  return a;
}

ShareParams ShareParams::uniform(const Field& field, std::uint32_t n) {
  return ShareParams(field, n, 1.0 / field.q(), 1.0 / field.q());
}

ShareSet deal(const FieldMatrix& a, const ShareParams& params, std::uint64_t seed) {
  if (!a.field().same_as(params.field()))
    throw InvalidArgument("deal: matrix and parameters use different fields");
  const Field& f = a.field();
  const std::uint32_t q = f.q();
  const std::uint32_t n = params.n();
  const double p1 = params.p1();
  const double ns = n * params.ps();

  std::vector<std::uint32_t> inv_alphas(n);
  for (std::uint32_t i = 0; i < n; ++i) inv_alphas[i] = f.inv(params.alphas()[i]);

  FieldMatrix pad(a.rows(), a.cols(), f);
  const Rng root(seed);
  std::vector<std::uint32_t> specials(n);
  for (std::uint32_t r = 0; r < a.rows(); ++r) {
    Rng rng = root.derive(r);
    for (std::uint32_t c = 0; c < a.cols(); ++c) {
      const std::uint32_t av = a(r, c);
      std::uint32_t rv;
      if (av == 0) {
        rv = (rng.next_unit() < p1) ? 0 : 1 + rng.next_below(q - 1);
      } else {
        // the n special symbols -a / alpha_i, distinct and nonzero
        const std::uint32_t na = f.neg(av);
        for (std::uint32_t i = 0; i < n; ++i) specials[i] = f.mul(na, inv_alphas[i]);
        if (rng.next_unit() < ns) {
          rv = specials[rng.next_below(n)];
        } else {
          std::sort(specials.begin(), specials.end());
          std::uint32_t v = rng.next_below(q - n);
          for (std::uint32_t sp : specials)
            if (v >= sp) ++v;
          rv = v;
        }
      }
      pad(r, c) = rv;
    }
  }

  ShareSet out{params.alphas(), {}, pad};
  out.shares.reserve(n);
  for (std::uint32_t i = 0; i < n; ++i)
    out.shares.push_back(add(a, scalar_mul(params.alphas()[i], pad)));
  return out;
}

FieldMatrix reconstruct(const FieldMatrix& share_i, std::uint32_t alpha_i,
                        const FieldMatrix& share_j, std::uint32_t alpha_j) {
  if (alpha_i == alpha_j)
    throw InvalidArgument("reconstruct: evaluation points must differ");
  const Field& f = share_i.field();
  const std::uint32_t d = f.inv(f.sub(alpha_j, alpha_i));
  return scalar_mul(d, sub(scalar_mul(alpha_j, share_i), scalar_mul(alpha_i, share_j)));
}

ConditionalPmf pad_channel(const ShareParams& params) {
  const Field& f = params.field();
  const std::uint32_t q = f.q();
  const std::uint32_t n = params.n();
  std::vector<double> rows(static_cast<std::size_t>(q) * q);
  for (std::uint32_t y = 0; y < q; ++y) rows[y] = params.p1inv();
  rows[0] = params.p1();
  for (std::uint32_t a = 1; a < q; ++a) {
    double* row = rows.data() + static_cast<std::size_t>(a) * q;
    for (std::uint32_t y = 0; y < q; ++y) row[y] = params.pcinv();
    const std::uint32_t na = f.neg(a);
    for (std::uint32_t i = 0; i < n; ++i) row[f.mul(na, f.inv(params.alphas()[i]))] = params.ps();
  }
  return ConditionalPmf(f, std::move(rows));
}

ConditionalPmf share_channel(const ShareParams& params, std::uint32_t share_index) {
  if (share_index >= params.n())
    throw InvalidArgument("share_channel: share index out of range");
  const Field& f = params.field();
  const std::uint32_t q = f.q();
  const std::uint32_t n = params.n();
  const std::uint32_t ai = params.alphas()[share_index];
  std::vector<double> rows(static_cast<std::size_t>(q) * q);
  for (std::uint32_t y = 0; y < q; ++y) rows[y] = params.p1inv();
  rows[0] = params.p1();
  for (std::uint32_t a = 1; a < q; ++a) {
    double* row = rows.data() + static_cast<std::size_t>(a) * q;
    for (std::uint32_t y = 0; y < q; ++y) row[y] = params.pcinv();
    // share value a + alpha_i * r lands on a * (1 - alpha_i/alpha_j) when the
    // pad hits a special symbol; j = i gives zero
    for (std::uint32_t j = 0; j < n; ++j) {
      const std::uint32_t r = f.mul(f.neg(a), f.inv(params.alphas()[j]));
      row[f.add(a, f.mul(ai, r))] = params.ps();
    }
  }
  return ConditionalPmf(f, std::move(rows));
}

double sss_share_leakage(const Field& field, double s, double s_d, std::uint32_t n, double p1,
                         double ps) {
  const std::uint32_t q = field.q();
  const double ln_q = std::log(static_cast<double>(q));
  const double sd_inv = (1.0 - s_d) / (q - 1);
  const double p1inv = (1.0 - p1) / (q - 1);
  const double pcinv = (1.0 - n * ps) / (q - n);
  return s * (xlogq(p1, s_d, ln_q) + (q - 1) * xlogq(p1inv, sd_inv, ln_q)) +
         (1.0 - s) * (xlogq(ps, s_d, ln_q) + (n - 1) * xlogq(ps, sd_inv, ln_q) +
                      (q - n) * xlogq(pcinv, sd_inv, ln_q));
}

SssLeakage sss_leakage(const ShareParams& params, const SourceModel& source) {
  if (!params.field().same_as(source.field()))
    throw InvalidArgument("sss_leakage: parameters and source use different fields");
  const double s = source.s();
  const double s_d = params.p1() * s + params.ps() * (1.0 - s);
  const double closed =
      sss_share_leakage(params.field(), s, s_d, params.n(), params.p1(), params.ps());
  SssLeakage out;
  out.report = make_leakage_report(std::vector<double>(params.n(), closed),
                                   source.entry_entropy());
  const Pmf src = source.entry_pmf();
  out.via_channel.reserve(params.n());
  for (std::uint32_t i = 0; i < params.n(); ++i)
    out.via_channel.push_back(mutual_information_q(src, share_channel(params, i)));
  return out;
}

void write_share_file(const std::string& path, const FieldMatrix& share, std::uint32_t alpha,
                      std::uint32_t share_index, std::uint32_t n) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot open for writing: " + path);
  os << "alpha " << alpha << " share-index " << share_index << " n " << n << "\n";
  write_matrix(os, share);
}

ShareFile read_share_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open: " + path);
  std::string ka, ki, kn;
  ShareFile out;
  if (!(is >> ka >> out.alpha >> ki >> out.share_index >> kn >> out.n) || ka != "alpha" ||
      ki != "share-index" || kn != "n")
    throw InvalidArgument("share header must be 'alpha <a> share-index <i> n <n>': " + path);
  std::string kq;
  std::uint32_t q = 0;
  auto pos = is.tellg();
  if (!(is >> kq >> q) || kq != "q") throw InvalidArgument("missing matrix header in " + path);
  is.seekg(pos);
  out.field = field_for_q(q);
  out.matrix = read_matrix(is, *out.field);
  return out;
}

}  // namespace spshare
