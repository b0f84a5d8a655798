#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "picod/bounds.hpp"
#include "picod/finite_field.hpp"
#include "picod/instance.hpp"
#include "picod/scheme.hpp"

namespace picod {

struct OracleOptions {
  FieldOrder field = FieldOrder::gf2();
  std::size_t max_len = 4;
  /// Number of candidate subspaces examined before giving up.
  std::uint64_t budget = 5'000'000;
  /// Smallest length tried; pass a certified lower bound to skip lengths
  /// that are provably infeasible.
  std::size_t start_len = 1;
};

struct OracleResult {
  FieldOrder field = FieldOrder::gf2();
  std::size_t optimum = 0;
  Scheme witness{RowMatrix(FieldOrder::gf2(), 0, 0)};
  std::uint64_t explored = 0;
  bool exact = false;
};

/// Shortest scalar-linear scheme over GF(p), found by enumerating every
/// subspace of the message space once through its reduced row echelon
/// representative. Columns of vertices outside every request-set stay zero.
///
/// On budget exhaustion returns the alg1 scheme with exact = false.
/// Throws Error{no_scheme_within_max_len} if every length up to max_len
/// was exhausted without success.
OracleResult exact_linear_optimum(const Instance& inst, const OracleOptions& options = {});

/// Calls `visit` with the rows of each dim-dimensional subspace of
/// GF(p)^cols, each subspace exactly once (as its RREF basis). Stops early
/// when `visit` returns false; returns false in that case.
bool for_each_subspace(FieldOrder field, std::size_t cols, std::size_t dim,
                       const std::function<bool(const std::vector<std::vector<Element>>&)>& visit);

struct CrossCheckReport {
  std::uint32_t max_degree = 0;
  std::size_t nesting_strict = 0;
  std::size_t nesting_relaxed = 0;
  std::optional<std::size_t> mais_min;
  std::optional<std::size_t> linear_optimum;
  std::optional<std::size_t> cover_optimum;
  std::size_t algorithm1_length = 0;
  std::optional<bool> length1;
  /// Human-readable descriptions of every failed inequality.
  std::vector<std::string> violations;
  /// Non-violations worth logging (strict and relaxed nesting differ).
  std::vector<std::string> notes;

  bool ok() const noexcept { return violations.empty(); }
};

/// Computes every quantity of the bound chain
///   strict nesting <= relaxed nesting <= min MAIS <= GF(2) linear optimum
///   <= min cover <= alg1 length <= max degree
/// and records each inequality that fails, plus length-1 consistency.
CrossCheckReport cross_check(const Instance& inst, const Budgets& budgets = {});

}  // namespace picod
