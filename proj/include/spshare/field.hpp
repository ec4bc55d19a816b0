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

#ifndef SPSHARE_FIELD_HPP
#define SPSHARE_FIELD_HPP

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "spshare/errors.hpp"

namespace spshare {

enum class FieldKind { Prime, BinaryExtension };

// GF(q) for q prime, or GF(2^8) with a configurable irreducible reduction
// polynomial. Immutable after construction; all operations are pure and
// thread-safe. Elements are plain integers in [0, q); mismatch checks between
// two fields compare a packed (kind, q, modulus) identifier, so two Field
// instances with the same parameters are interoperable.
class Field {
 public:
  static Field prime(std::uint32_t q);
  // modulus is the reduction polynomial as a bit pattern; degree must be 8.
  // Default x^8 + x^4 + x^3 + x + 1.
  static Field gf256(std::uint32_t modulus = 0x11B);

  FieldKind kind() const { return kind_; }
  std::uint32_t q() const { return q_; }
  std::uint32_t modulus() const { return modulus_; }
  std::uint64_t id() const { return id_; }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    return kind_ == FieldKind::Prime ? (a + b) % q_ : (a ^ b);
  }
  std::uint32_t neg(std::uint32_t a) const {
    return kind_ == FieldKind::Prime ? (q_ - a) % q_ : a;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return add(a, neg(b)); }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    if (kind_ == FieldKind::Prime)
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % q_);
    if (a == 0 || b == 0) return 0;
    return alog_[log_[a] + log_[b]];
  }
  std::uint32_t inv(std::uint32_t a) const;

  bool same_as(const Field& other) const { return id_ == other.id_; }

 private:
  Field(FieldKind kind, std::uint32_t q, std::uint32_t modulus);

  FieldKind kind_;
  std::uint32_t q_;
  std::uint32_t modulus_;  // 0 for prime fields
  std::uint64_t id_;
  std::vector<std::uint16_t> log_;   // GF(2^8) only
  std::vector<std::uint8_t> alog_;   // doubled to skip the mod-255 per lookup
};

// Element tagged with its field, for scalar-level arithmetic with mismatch
// checks. Matrices store raw values and a single field pointer instead.
struct FieldElement {
  std::uint32_t value;
  const Field* field;
};

FieldElement add(FieldElement a, FieldElement b);
FieldElement sub(FieldElement a, FieldElement b);
FieldElement mul(FieldElement a, FieldElement b);
FieldElement inv(FieldElement a);

// Row-major matrix over a field. The Field must outlive the matrix.
class FieldMatrix {
 public:
  FieldMatrix() : rows_(0), cols_(0), field_(nullptr) {}
  FieldMatrix(std::uint32_t rows, std::uint32_t cols, const Field& field);
  FieldMatrix(std::uint32_t rows, std::uint32_t cols, const Field& field,
              std::vector<std::uint32_t> data);

  std::uint32_t rows() const { return rows_; }
  std::uint32_t cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  const Field& field() const { return *field_; }

  std::uint32_t operator()(std::uint32_t r, std::uint32_t c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  std::uint32_t& operator()(std::uint32_t r, std::uint32_t c) {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::vector<std::uint32_t>& data() const { return data_; }
  std::vector<std::uint32_t>& data() { return data_; }

  bool operator==(const FieldMatrix& other) const;

  double sparsity() const;  // fraction of zero entries

  FieldMatrix rows_slice(std::uint32_t begin, std::uint32_t count) const;
  FieldMatrix cols_slice(std::uint32_t begin, std::uint32_t count) const;

 private:
  std::uint32_t rows_, cols_;
  const Field* field_;
  std::vector<std::uint32_t> data_;
};

FieldMatrix add(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix sub(const FieldMatrix& a, const FieldMatrix& b);
FieldMatrix scalar_mul(std::uint32_t c, const FieldMatrix& a);
FieldMatrix matmul(const FieldMatrix& a, const FieldMatrix& b);

// Text format: header line "q <q> rows <m> cols <n>", then m lines of n
// space-separated integers in [0, q). q = 256 selects GF(2^8) with the
// default reduction polynomial; any other composite q is rejected.
void write_matrix(std::ostream& os, const FieldMatrix& m);
void write_matrix_file(const std::string& path, const FieldMatrix& m);
FieldMatrix read_matrix(std::istream& is, const Field& field);

struct ParsedMatrix {
  std::unique_ptr<Field> field;
  FieldMatrix matrix;
};
ParsedMatrix read_matrix_file(const std::string& path);

// Field instance for a header-declared cardinality.
std::unique_ptr<Field> field_for_q(std::uint32_t q);

}  // namespace spshare

#endif  // SPSHARE_FIELD_HPP
