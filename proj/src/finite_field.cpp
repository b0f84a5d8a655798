#include "picod/finite_field.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <utility>

#include "picod/error.hpp"

namespace picod {

bool is_prime(std::uint32_t n) noexcept {
  if (n < 2) return false;
  for (std::uint32_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

FieldOrder::FieldOrder(std::uint32_t p) : p_(p) {
  if (p >= (1u << 16) || !is_prime(p)) {
    throw Error(ErrorCode::invalid_argument,
                "field order " + std::to_string(p) + " is not a prime below 65536");
  }
}

Element FieldOrder::inv(Element a) const {
  if (a % p_ == 0) throw Error(ErrorCode::invalid_argument, "zero has no inverse");
  // Fermat: a^(p-2).
  Element result = 1;
  Element base = a % p_;
  for (std::uint32_t e = p_ - 2; e != 0; e >>= 1) {
    if (e & 1u) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

RowMatrix::RowMatrix(FieldOrder field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

RowMatrix RowMatrix::from_rows(FieldOrder field, std::size_t cols,
                               const std::vector<std::vector<Element>>& rows) {
  RowMatrix mat(field, 0, cols);
  for (const auto& r : rows) mat.append_row(r);
  return mat;
}

void RowMatrix::set(std::size_t r, std::size_t c, Element v) {
  if (r >= rows_ || c >= cols_) {
    throw Error(ErrorCode::index_out_of_range, "matrix position outside the shape");
  }
  if (v >= field_.value()) {
    throw Error(ErrorCode::invalid_argument, "matrix entry outside [0, p)");
  }
  data_[r * cols_ + c] = v;
}

void RowMatrix::append_row(std::span<const Element> values) {
  if (values.size() != cols_) {
    throw Error(ErrorCode::dimension_mismatch, "row length " + std::to_string(values.size()) +
                                                   " does not match " + std::to_string(cols_) +
                                                   " columns");
  }
  for (Element v : values) {
    if (v >= field_.value()) {
      throw Error(ErrorCode::invalid_argument, "matrix entry outside [0, p)");
    }
  }
  data_.insert(data_.end(), values.begin(), values.end());
  ++rows_;
}

RowMatrix RowMatrix::select_columns(std::span<const std::size_t> columns) const {
  RowMatrix out(field_, rows_, columns.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t k = 0; k < columns.size(); ++k) {
      out.data_[r * columns.size() + k] = at(r, columns[k]);
    }
  }
  return out;
}

namespace {

// target -= factor * source, entrywise.
void axpy(FieldOrder f, std::span<Element> target, std::span<const Element> source,
          Element factor) {
  if (factor == 0) return;
  for (std::size_t c = 0; c < target.size(); ++c) {
    if (source[c] != 0) target[c] = f.sub(target[c], f.mul(factor, source[c]));
  }
}

void scale(FieldOrder f, std::span<Element> row, Element factor) {
  for (auto& x : row) x = f.mul(x, factor);
}

void swap_rows(RowMatrix& mat, std::size_t a, std::size_t b) {
  if (a == b) return;
  auto ra = mat.row(a);
  auto rb = mat.row(b);
  std::swap_ranges(ra.begin(), ra.end(), rb.begin());
}

}  // namespace

Echelon reduced_echelon(const RowMatrix& mat) {
  const FieldOrder f = mat.field();
  Echelon e{mat, RowMatrix(f, mat.rows(), mat.rows()), {}};
  for (std::size_t r = 0; r < mat.rows(); ++r) e.transform.set(r, r, 1);

  std::size_t lead = 0;
  for (std::size_t c = 0; c < mat.cols() && lead < mat.rows(); ++c) {
    std::size_t pivot = lead;
    while (pivot < mat.rows() && e.reduced.at(pivot, c) == 0) ++pivot;
    if (pivot == mat.rows()) continue;
    swap_rows(e.reduced, lead, pivot);
    swap_rows(e.transform, lead, pivot);

    const Element inv = f.inv(e.reduced.at(lead, c));
    scale(f, e.reduced.row(lead), inv);
    scale(f, e.transform.row(lead), inv);
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      if (r == lead) continue;
      const Element factor = e.reduced.at(r, c);
      if (factor == 0) continue;
      axpy(f, e.reduced.row(r), e.reduced.row(lead), factor);
      axpy(f, e.transform.row(r), e.transform.row(lead), factor);
    }
    e.pivot_columns.push_back(c);
    ++lead;
  }
  return e;
}

std::size_t rank_modular(const RowMatrix& mat) {
  const FieldOrder f = mat.field();
  RowMatrix work = mat;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < work.cols() && lead < work.rows(); ++c) {
    std::size_t pivot = lead;
    while (pivot < work.rows() && work.at(pivot, c) == 0) ++pivot;
    if (pivot == work.rows()) continue;
    swap_rows(work, lead, pivot);
    const Element inv = f.inv(work.at(lead, c));
    for (std::size_t r = lead + 1; r < work.rows(); ++r) {
      axpy(f, work.row(r), work.row(lead), f.mul(work.at(r, c), inv));
    }
    ++lead;
  }
  return lead;
}

std::size_t rank(const RowMatrix& mat) {
  if (mat.field().value() == 2) return gf2::PackedMatrix::from(mat).rank();
  return rank_modular(mat);
}

std::optional<std::vector<Element>> row_combination(const RowMatrix& mat,
                                                    std::span<const Element> v) {
  if (v.size() != mat.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match column count");
  }
  const FieldOrder f = mat.field();
  const Echelon e = reduced_echelon(mat);
  // In RREF the only candidate is sum_k v[pivot_k] * reduced_row_k.
  std::vector<Element> residual(v.begin(), v.end());
  std::vector<Element> coefficients(mat.rows(), 0);
  for (std::size_t k = 0; k < e.rank(); ++k) {
    const Element factor = v[e.pivot_columns[k]];
    if (factor == 0) continue;
    axpy(f, residual, e.reduced.row(k), factor);
    for (std::size_t t = 0; t < mat.rows(); ++t) {
      coefficients[t] = f.add(coefficients[t], f.mul(factor, e.transform.at(k, t)));
    }
  }
  if (std::any_of(residual.begin(), residual.end(), [](Element x) { return x != 0; })) {
    return std::nullopt;
  }
  return coefficients;
}

bool in_row_space(const RowMatrix& mat, std::span<const Element> v) {
  if (v.size() != mat.cols()) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match column count");
  }
  if (mat.field().value() == 2) return gf2::PackedMatrix::from(mat).in_row_space(v);
  RowMatrix extended = mat;
  extended.append_row(v);
  return rank_modular(extended) == rank_modular(mat);
}

namespace gf2 {

PackedMatrix::PackedMatrix(std::size_t cols) : cols_(cols), words_((cols + 63) / 64) {}

PackedMatrix PackedMatrix::from(const RowMatrix& mat) {
  if (mat.field().value() != 2) {
    throw Error(ErrorCode::field_mismatch, "packed matrices are GF(2) only");
  }
  PackedMatrix packed(mat.cols());
  for (std::size_t r = 0; r < mat.rows(); ++r) packed.append_row(mat.row(r));
  return packed;
}

std::vector<std::uint64_t> PackedMatrix::pack(std::span<const Element> values) const {
  if (values.size() != cols_) {
    throw Error(ErrorCode::dimension_mismatch, "vector length does not match column count");
  }
  std::vector<std::uint64_t> words(words_, 0);
  for (std::size_t c = 0; c < cols_; ++c) {
    if (values[c] & 1u) words[c / 64] |= std::uint64_t{1} << (c % 64);
  }
  return words;
}

void PackedMatrix::append_row(std::span<const Element> values) {
  rows_.push_back(pack(values));
}

bool PackedMatrix::get(std::size_t r, std::size_t c) const {
  return (rows_[r][c / 64] >> (c % 64)) & 1u;
}

namespace {

// Gaussian elimination in place; returns the reduced basis (nonzero rows,
// each with a distinct leading bit cleared from every other basis row below).
std::vector<std::vector<std::uint64_t>> eliminate(std::vector<std::vector<std::uint64_t>> rows,
                                                  std::size_t words) {
  std::size_t lead = 0;
  for (std::size_t w = 0; w < words && lead < rows.size(); ++w) {
    for (int bit = 0; bit < 64 && lead < rows.size(); ++bit) {
      const std::uint64_t m = std::uint64_t{1} << bit;
      std::size_t pivot = lead;
      while (pivot < rows.size() && !(rows[pivot][w] & m)) ++pivot;
      if (pivot == rows.size()) continue;
      std::swap(rows[lead], rows[pivot]);
      for (std::size_t r = lead + 1; r < rows.size(); ++r) {
        if (rows[r][w] & m) {
          for (std::size_t k = w; k < words; ++k) rows[r][k] ^= rows[lead][k];
        }
      }
      ++lead;
    }
  }
  rows.resize(lead);
  return rows;
}

}  // namespace

std::size_t PackedMatrix::rank() const { return eliminate(rows_, words_).size(); }

bool PackedMatrix::in_row_space(std::span<const Element> v) const {
  auto basis = eliminate(rows_, words_);
  auto target = pack(v);
  for (const auto& row : basis) {
    std::size_t w = 0;
    while (row[w] == 0) ++w;
    const std::uint64_t lead_bit = row[w] & (~row[w] + 1);
    if (target[w] & lead_bit) {
      for (std::size_t k = w; k < words_; ++k) target[k] ^= row[k];
    }
  }
  return std::all_of(target.begin(), target.end(), [](std::uint64_t x) { return x == 0; });
}

}  // namespace gf2

}  // namespace picod
