#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "picod/error.hpp"
#include "picod/finite_field.hpp"

using namespace picod;

namespace {

bf::Matrix to_bf(const RowMatrix& mat) {
  bf::Matrix rows;
  for (std::size_t r = 0; r < mat.rows(); ++r) {
    const auto row = mat.row(r);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

RowMatrix random_matrix(std::mt19937_64& rng, FieldOrder f, std::size_t rows, std::size_t cols,
                        int zero_bias) {
  RowMatrix mat(f, rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (static_cast<int>(rng() % 10) >= zero_bias) mat.set(r, c, rng() % f.value());
    }
  }
  return mat;
}

RowMatrix multiply(const RowMatrix& a, const RowMatrix& b) {
  const FieldOrder f = a.field();
  RowMatrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Element acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) acc = f.add(acc, f.mul(a.at(i, k), b.at(k, j)));
      out.set(i, j, acc);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("field orders must be primes below 2^16") {
  CHECK_NOTHROW(FieldOrder(2));
  CHECK_NOTHROW(FieldOrder(65521));
  CHECK_THROWS_AS(FieldOrder(4), Error);
  CHECK_THROWS_AS(FieldOrder(1), Error);
  CHECK_THROWS_AS(FieldOrder(65537), Error);
  CHECK(is_prime(65521));
  CHECK_FALSE(is_prime(65535));
  CHECK_FALSE(is_prime(0));
}

TEST_CASE("field arithmetic matches modular integer arithmetic") {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 13u}) {
    const FieldOrder f(p);
    for (Element a = 0; a < p; ++a) {
      CHECK(f.add(a, f.neg(a)) == 0);
      for (Element b = 0; b < p; ++b) {
        CHECK(f.add(a, b) == (a + b) % p);
        CHECK(f.mul(a, b) == (a * b) % p);
        CHECK(f.add(f.sub(a, b), b) == a);
      }
      if (a != 0) CHECK(f.mul(a, f.inv(a)) == 1);
    }
    CHECK_THROWS_AS((void)f.inv(0), Error);
  }
  const FieldOrder big(65521);
  CHECK(big.mul(65520, 65520) == 1);
  CHECK(big.inv(2) == bf::modpow(2, 65519, 65521));
  CHECK(FieldOrder(7).inv(3) == 5);
}

TEST_CASE("matrix construction validates shape and entries") {
  const FieldOrder f(3);
  RowMatrix mat(f, 2, 3);
  CHECK_THROWS_AS(mat.set(0, 0, 3), Error);
  CHECK_THROWS_AS(mat.set(2, 0, 1), Error);
  CHECK_THROWS_AS(mat.append_row(std::vector<Element>{1, 2}), Error);
  mat.append_row(std::vector<Element>{1, 2, 0});
  CHECK(mat.rows() == 3);
  CHECK(mat.at(2, 1) == 2);
  CHECK_THROWS_AS(RowMatrix::from_rows(f, 2, {{1, 2}, {1}}), Error);
  CHECK_THROWS_AS(RowMatrix::from_rows(f, 2, {{1, 5}}), Error);

  const auto picked = RowMatrix::from_rows(f, 3, {{1, 2, 0}, {0, 1, 2}});
  const std::vector<std::size_t> cols{2, 0};
  CHECK(picked.select_columns(cols) == RowMatrix::from_rows(f, 2, {{0, 1}, {2, 0}}));
}

TEST_CASE("rank agrees with span counting") {
  std::mt19937_64 rng(11);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldOrder f(p);
    for (int trial = 0; trial < 120; ++trial) {
      const std::size_t rows = 1 + rng() % (p == 2 ? 6 : 4);
      const std::size_t cols = 1 + rng() % 6;
      const auto mat = random_matrix(rng, f, rows, cols, static_cast<int>(rng() % 7));
      const std::size_t expected = bf::rank(p, to_bf(mat), cols);
      CHECK(rank(mat) == expected);
      CHECK(rank_modular(mat) == expected);
      CHECK(reduced_echelon(mat).rank() == expected);
      if (p == 2) CHECK(gf2::PackedMatrix::from(mat).rank() == expected);
    }
  }
}

TEST_CASE("packed GF(2) rank over wide rows") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto mat = random_matrix(rng, FieldOrder::gf2(), 40, 150, 8);
    CHECK(gf2::PackedMatrix::from(mat).rank() == rank_modular(mat));
  }
  gf2::PackedMatrix packed(70);
  std::vector<Element> row(70, 0);
  row[69] = 1;
  packed.append_row(row);
  CHECK(packed.get(0, 69));
  CHECK_FALSE(packed.get(0, 68));
  CHECK(packed.in_row_space(row));
  row[0] = 1;
  CHECK_FALSE(packed.in_row_space(row));
}

TEST_CASE("reduced echelon form and its transform") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 7u}) {
    const FieldOrder f(p);
    for (int trial = 0; trial < 60; ++trial) {
      const auto mat = random_matrix(rng, f, 1 + rng() % 5, 1 + rng() % 7, 3);
      const auto ech = reduced_echelon(mat);
      CHECK(multiply(ech.transform, mat) == ech.reduced);
      std::size_t last = 0;
      for (std::size_t i = 0; i < ech.rank(); ++i) {
        const std::size_t pc = ech.pivot_columns[i];
        if (i > 0) CHECK(pc > last);
        last = pc;
        for (std::size_t c = 0; c < pc; ++c) CHECK(ech.reduced.at(i, c) == 0);
        for (std::size_t r = 0; r < mat.rows(); ++r) CHECK(ech.reduced.at(r, pc) == (r == i ? 1u : 0u));
      }
      for (std::size_t r = ech.rank(); r < mat.rows(); ++r) {
        for (std::size_t c = 0; c < mat.cols(); ++c) CHECK(ech.reduced.at(r, c) == 0);
      }
      CHECK(bf::rank(p, to_bf(ech.transform), mat.rows()) == mat.rows());
    }
  }
}

TEST_CASE("row space membership and combinations") {
  std::mt19937_64 rng(23);
  for (std::uint32_t p : {2u, 3u, 5u}) {
    const FieldOrder f(p);
    for (int trial = 0; trial < 80; ++trial) {
      const std::size_t cols = 1 + rng() % 5;
      const auto mat = random_matrix(rng, f, 1 + rng() % 3, cols, 4);
      std::vector<Element> v(cols);
      for (auto& x : v) x = rng() % p;
      const bool expected = bf::in_span(p, to_bf(mat), v);
      CHECK(in_row_space(mat, v) == expected);
      const auto combo = row_combination(mat, v);
      CHECK(combo.has_value() == expected);
      if (combo) {
        REQUIRE(combo->size() == mat.rows());
        for (std::size_t c = 0; c < cols; ++c) {
          Element acc = 0;
          for (std::size_t r = 0; r < mat.rows(); ++r) acc = f.add(acc, f.mul((*combo)[r], mat.at(r, c)));
          CHECK(acc == v[c]);
        }
      }
    }
  }
  const RowMatrix mat(FieldOrder::gf2(), 1, 3);
  CHECK_THROWS_AS((void)in_row_space(mat, std::vector<Element>{1, 0}), Error);
}

TEST_CASE("empty matrices") {
  const RowMatrix mat(FieldOrder(3), 0, 4);
  CHECK(rank(mat) == 0);
  CHECK(in_row_space(mat, std::vector<Element>{0, 0, 0, 0}));
  CHECK_FALSE(in_row_space(mat, std::vector<Element>{0, 1, 0, 0}));
}
