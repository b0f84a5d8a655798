#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace picod {

using Element = std::uint32_t;

/// Order of a prime field GF(p), 2 <= p < 2^16.
class FieldOrder {
 public:
  /// Throws Error{invalid_argument} unless p is a prime below 2^16.
  explicit FieldOrder(std::uint32_t p);

  static FieldOrder gf2() { return FieldOrder(2); }

  std::uint32_t value() const noexcept { return p_; }

  Element add(Element a, Element b) const noexcept { return (a + b) % p_; }
  Element sub(Element a, Element b) const noexcept { return (a + p_ - b) % p_; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>((std::uint64_t{a} * b) % p_);
  }
  /// Multiplicative inverse; a must be nonzero.
  Element inv(Element a) const;

  auto operator<=>(const FieldOrder&) const = default;

 private:
  std::uint32_t p_;
};

bool is_prime(std::uint32_t n) noexcept;

/// Dense row-major matrix over GF(p). Every entry is kept in [0, p).
class RowMatrix {
 public:
  RowMatrix(FieldOrder field, std::size_t rows, std::size_t cols);

  /// Throws Error{dimension_mismatch} on ragged input and
  /// Error{invalid_argument} for entries >= p.
  static RowMatrix from_rows(FieldOrder field, std::size_t cols,
                             const std::vector<std::vector<Element>>& rows);

  FieldOrder field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Element at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  void set(std::size_t r, std::size_t c, Element v);

  std::span<const Element> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }

  void append_row(std::span<const Element> values);
  RowMatrix select_columns(std::span<const std::size_t> columns) const;

  friend bool operator==(const RowMatrix&, const RowMatrix&) = default;

 private:
  FieldOrder field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Element> data_;
};

/// Reduced row echelon form with the transform that produced it:
/// reduced == transform * original, transform is rows x rows.
struct Echelon {
  RowMatrix reduced;
  RowMatrix transform;
  std::vector<std::size_t> pivot_columns;

  std::size_t rank() const noexcept { return pivot_columns.size(); }
};

Echelon reduced_echelon(const RowMatrix& mat);

/// Rank over GF(p). GF(2) dispatches to the packed implementation.
std::size_t rank(const RowMatrix& mat);

/// Plain modular elimination for any p, never packed.
std::size_t rank_modular(const RowMatrix& mat);

/// Throws Error{dimension_mismatch} if v.size() != mat.cols().
bool in_row_space(const RowMatrix& mat, std::span<const Element> v);

/// Coefficients c (one per row) with sum_t c[t] * row_t == v, if any.
std::optional<std::vector<Element>> row_combination(const RowMatrix& mat,
                                                    std::span<const Element> v);

namespace gf2 {

/// GF(2) matrix with each row packed into 64-bit words.
class PackedMatrix {
 public:
  explicit PackedMatrix(std::size_t cols);
  static PackedMatrix from(const RowMatrix& mat);

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t words_per_row() const noexcept { return words_; }

  void append_row(std::span<const Element> values);
  bool get(std::size_t r, std::size_t c) const;

  std::size_t rank() const;
  bool in_row_space(std::span<const Element> v) const;

 private:
  std::vector<std::uint64_t> pack(std::span<const Element> values) const;

  std::size_t cols_;
  std::size_t words_;
  std::vector<std::vector<std::uint64_t>> rows_;
};

}  // namespace gf2

}  // namespace picod
