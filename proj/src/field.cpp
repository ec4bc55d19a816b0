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

#include "spshare/field.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

namespace spshare {

namespace {

bool is_prime(std::uint32_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// product of two polynomials over GF(2), no reduction
std::uint64_t clmul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    a <<= 1;
    b >>= 1;
  }
  return r;
}

int poly_degree(std::uint64_t p) {
  int d = -1;
  while (p) {
    ++d;
    p >>= 1;
  }
  return d;
}

std::uint64_t poly_mod(std::uint64_t a, std::uint64_t m) {
  const int dm = poly_degree(m);
  for (int d = poly_degree(a); d >= dm; d = poly_degree(a)) a ^= m << (d - dm);
  return a;
}

bool poly_irreducible_deg8(std::uint32_t m) {
  if (poly_degree(m) != 8) return false;
  // trial division by every polynomial of degree 1..4
  for (std::uint64_t f = 2; f < 32; ++f) {
    if (poly_degree(f) < 1) continue;
    if (poly_mod(m, f) == 0) return false;
  }
  return true;
}

}  // namespace

Field Field::prime(std::uint32_t q) {
  if (!is_prime(q))
    throw InvalidArgument("Field::prime: q = " + std::to_string(q) + " is not prime");
  return Field(FieldKind::Prime, q, 0);
}

Field Field::gf256(std::uint32_t modulus) {
  if (!poly_irreducible_deg8(modulus))
    throw InvalidArgument("Field::gf256: modulus 0x" + [&] {
      std::ostringstream os;
      os << std::hex << modulus;
      return os.str();
    }() + " is not an irreducible degree-8 polynomial");
  return Field(FieldKind::BinaryExtension, 256, modulus);
}

Field::Field(FieldKind kind, std::uint32_t q, std::uint32_t modulus)
    : kind_(kind), q_(q), modulus_(modulus) {
  id_ = (static_cast<std::uint64_t>(kind) << 60) |
        (static_cast<std::uint64_t>(modulus) << 32) | q;
  if (kind_ == FieldKind::BinaryExtension) {
    auto gfmul = [&](std::uint32_t a, std::uint32_t b) {
      return static_cast<std::uint32_t>(poly_mod(clmul(a, b), modulus_));
    };
    // find a generator, then fill log/antilog tables
    std::uint32_t gen = 0;
    for (std::uint32_t g = 2; g < 256 && !gen; ++g) {
      std::uint32_t x = 1;
      int order = 0;
      do {
        x = gfmul(x, g);
        ++order;
      } while (x != 1);
      if (order == 255) gen = g;
    }
    log_.assign(256, 0);
    alog_.assign(510, 0);
    std::uint32_t x = 1;
    for (int i = 0; i < 255; ++i) {
      alog_[i] = static_cast<std::uint8_t>(x);
      alog_[i + 255] = static_cast<std::uint8_t>(x);
      log_[x] = static_cast<std::uint16_t>(i);
      x = gfmul(x, gen);
    }
  }
}

std::uint32_t Field::inv(std::uint32_t a) const {
  if (a == 0) throw InvalidArgument("Field::inv: zero has no multiplicative inverse");
  if (kind_ == FieldKind::BinaryExtension) return alog_[255 - log_[a]];
  // extended Euclid
  std::int64_t t = 0, new_t = 1;
  std::int64_t r = q_, new_r = a;
  while (new_r != 0) {
    std::int64_t quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (t < 0) t += q_;
  return static_cast<std::uint32_t>(t);
}

namespace {
void check_same_field(const Field* a, const Field* b, const char* what) {
  if (a == nullptr || b == nullptr || !a->same_as(*b))
    throw InvalidArgument(std::string(what) + ": operands belong to different fields");
}
}  // namespace

FieldElement add(FieldElement a, FieldElement b) {
  check_same_field(a.field, b.field, "add");
  return {a.field->add(a.value, b.value), a.field};
}
FieldElement sub(FieldElement a, FieldElement b) {
  check_same_field(a.field, b.field, "sub");
  return {a.field->sub(a.value, b.value), a.field};
}
FieldElement mul(FieldElement a, FieldElement b) {
  check_same_field(a.field, b.field, "mul");
  return {a.field->mul(a.value, b.value), a.field};
}
FieldElement inv(FieldElement a) { return {a.field->inv(a.value), a.field}; }

FieldMatrix::FieldMatrix(std::uint32_t rows, std::uint32_t cols, const Field& field)
    : rows_(rows), cols_(cols), field_(&field),
      data_(static_cast<std::size_t>(rows) * cols, 0) {
  if (rows == 0 || cols == 0) throw InvalidArgument("FieldMatrix: dimensions must be positive");
}

FieldMatrix::FieldMatrix(std::uint32_t rows, std::uint32_t cols, const Field& field,
                         std::vector<std::uint32_t> data)
    : rows_(rows), cols_(cols), field_(&field), data_(std::move(data)) {
  if (rows == 0 || cols == 0) throw InvalidArgument("FieldMatrix: dimensions must be positive");
  if (data_.size() != static_cast<std::size_t>(rows) * cols)
    throw InvalidArgument("FieldMatrix: data length does not match rows*cols");
  for (std::uint32_t v : data_)
    if (v >= field.q())
      throw InvalidArgument("FieldMatrix: entry " + std::to_string(v) + " is outside [0, q)");
}

bool FieldMatrix::operator==(const FieldMatrix& other) const {
  return rows_ == other.rows_ && cols_ == other.cols_ &&
         field_ != nullptr && other.field_ != nullptr &&
         field_->same_as(*other.field_) && data_ == other.data_;
}

double FieldMatrix::sparsity() const {
  std::size_t zeros = 0;
  for (std::uint32_t v : data_) zeros += (v == 0);
  return static_cast<double>(zeros) / static_cast<double>(data_.size());
}

FieldMatrix FieldMatrix::rows_slice(std::uint32_t begin, std::uint32_t count) const {
  if (begin + count > rows_) throw InvalidArgument("rows_slice: out of range");
  std::vector<std::uint32_t> d(data_.begin() + static_cast<std::size_t>(begin) * cols_,
                               data_.begin() + static_cast<std::size_t>(begin + count) * cols_);
  return FieldMatrix(count, cols_, *field_, std::move(d));
}

FieldMatrix FieldMatrix::cols_slice(std::uint32_t begin, std::uint32_t count) const {
  if (begin + count > cols_) throw InvalidArgument("cols_slice: out of range");
  FieldMatrix out(rows_, count, *field_);
  for (std::uint32_t r = 0; r < rows_; ++r)
    for (std::uint32_t c = 0; c < count; ++c) out(r, c) = (*this)(r, begin + c);
  return out;
}

namespace {
void check_same_shape(const FieldMatrix& a, const FieldMatrix& b, const char* what) {
  check_same_field(&a.field(), &b.field(), what);
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidArgument(std::string(what) + ": dimension mismatch");
}
}  // namespace

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_shape(a, b, "matrix add");
  FieldMatrix out(a.rows(), a.cols(), a.field());
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = f.add(a.data()[i], b.data()[i]);
  return out;
}

FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_shape(a, b, "matrix sub");
  FieldMatrix out(a.rows(), a.cols(), a.field());
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = f.sub(a.data()[i], b.data()[i]);
  return out;
}

FieldMatrix scalar_mul(std::uint32_t c, const FieldMatrix& a) {
  FieldMatrix out(a.rows(), a.cols(), a.field());
  const Field& f = a.field();
  for (std::size_t i = 0; i < a.size(); ++i) out.data()[i] = f.mul(c, a.data()[i]);
  return out;
}

FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b) {
  check_same_field(&a.field(), &b.field(), "matmul");
  if (a.cols() != b.rows()) throw InvalidArgument("matmul: inner dimensions do not match");
  const Field& f = a.field();
  FieldMatrix out(a.rows(), b.cols(), f);
  if (f.kind() == FieldKind::Prime) {
    // accumulate in 64 bits, reduce once per output entry per block of rows
    const std::uint64_t q = f.q();
    for (std::uint32_t i = 0; i < a.rows(); ++i)
      for (std::uint32_t k = 0; k < b.cols(); ++k) {
        std::uint64_t acc = 0;
        for (std::uint32_t j = 0; j < a.cols(); ++j) {
          acc += static_cast<std::uint64_t>(a(i, j)) * b(j, k);
          if (acc >= (1ULL << 62)) acc %= q;
        }
        out(i, k) = static_cast<std::uint32_t>(acc % q);
      }
  } else {
    for (std::uint32_t i = 0; i < a.rows(); ++i)
      for (std::uint32_t k = 0; k < b.cols(); ++k) {
        std::uint32_t acc = 0;
        for (std::uint32_t j = 0; j < a.cols(); ++j) acc ^= f.mul(a(i, j), b(j, k));
        out(i, k) = acc;
      }
  }
  return out;
}

void write_matrix(std::ostream& os, const FieldMatrix& m) {
  os << "q " << m.field().q() << " rows " << m.rows() << " cols " << m.cols() << "\n";
  for (std::uint32_t r = 0; r < m.rows(); ++r) {
    for (std::uint32_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c);
    }
    os << "\n";
  }
}

void write_matrix_file(const std::string& path, const FieldMatrix& m) {
  std::ofstream os(path);
  if (!os) throw InvalidArgument("cannot open for writing: " + path);
  write_matrix(os, m);
}

FieldMatrix read_matrix(std::istream& is, const Field& field) {
  std::string kq, krows, kcols;
  std::uint32_t q = 0, rows = 0, cols = 0;
  if (!(is >> kq >> q >> krows >> rows >> kcols >> cols) || kq != "q" || krows != "rows" ||
      kcols != "cols")
    throw InvalidArgument("matrix header must be 'q <q> rows <m> cols <n>'");
  if (q != field.q())
    throw InvalidArgument("matrix declares q=" + std::to_string(q) + " but field has q=" +
                          std::to_string(field.q()));
  std::vector<std::uint32_t> data;
  data.reserve(static_cast<std::size_t>(rows) * cols);
  for (std::size_t i = 0; i < static_cast<std::size_t>(rows) * cols; ++i) {
    std::int64_t v;
    if (!(is >> v)) throw InvalidArgument("matrix data ended early");
    if (v < 0 || v >= q)
      throw InvalidArgument("matrix entry " + std::to_string(v) + " is outside [0, q)");
    data.push_back(static_cast<std::uint32_t>(v));
  }
  return FieldMatrix(rows, cols, field, std::move(data));
}

std::unique_ptr<Field> field_for_q(std::uint32_t q) {
  if (q == 256) return std::make_unique<Field>(Field::gf256());
  return std::make_unique<Field>(Field::prime(q));
}

ParsedMatrix read_matrix_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw InvalidArgument("cannot open: " + path);
  std::string kq;
  std::uint32_t q = 0;
  if (!(is >> kq >> q) || kq != "q")
    throw InvalidArgument("matrix header must start with 'q <q>': " + path);
  is.seekg(0);
  ParsedMatrix out;
  out.field = field_for_q(q);
  out.matrix = read_matrix(is, *out.field);
  return out;
}

}  // namespace spshare
