#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "picod/finite_field.hpp"
#include "picod/instance.hpp"

namespace picod {

/// A linear PICOD scheme: one matrix row per broadcast transmission, one
/// column per message (column v - 1 holds the coefficient of message v).
class Scheme {
 public:
  explicit Scheme(RowMatrix matrix) : matrix_(std::move(matrix)) {}

  /// Coefficient-1 sums over each support.
  static Scheme from_supports(FieldOrder field, std::uint32_t message_count,
                              const std::vector<VertexSet>& supports);

  const RowMatrix& matrix() const noexcept { return matrix_; }
  FieldOrder field() const noexcept { return matrix_.field(); }
  std::size_t length() const noexcept { return matrix_.rows(); }
  std::uint32_t message_count() const noexcept {
    return static_cast<std::uint32_t>(matrix_.cols());
  }

  /// Nonzero columns of each row, as vertex sets.
  std::vector<VertexSet> supports() const;

  friend bool operator==(const Scheme&, const Scheme&) = default;

 private:
  RowMatrix matrix_;
};

struct ClientStatus {
  bool satisfied = false;
  /// Lowest-index decodable message (0 when unsatisfied).
  Vertex decoded = 0;
  /// Combining coefficients, one per transmission. After cancelling
  /// side-information, sum_t coefficients[t] * x_t equals b_decoded.
  std::vector<Element> coefficients;
};

struct SatisfactionReport {
  std::vector<ClientStatus> clients;
  bool all_satisfied = false;

  std::size_t satisfied_count() const;
};

/// Exact decodability for linear schemes: client R is satisfied iff some
/// unit vector e_j, j in R, lies in the row space of the matrix restricted
/// to the columns of R.
SatisfactionReport verify(const Instance& inst, const Scheme& scheme);

struct Transmission {
  std::vector<Element> row;
  std::vector<std::size_t> satisfied_clients;
};

/// One coefficient-1 sum over an independent set. Throws
/// Error{not_independent}.
Transmission transmit_independent(const Instance& inst,
                                  std::span<const Vertex> independent_set);

struct ComponentScheme {
  Instance instance;
  Scheme scheme;
};

/// Zero-pads every component scheme to the longest length and sums them.
/// Each component's scheme is first restricted to that component's own
/// vertices. Throws Error{overlapping_components}, Error{field_mismatch}
/// or Error{dimension_mismatch}.
Scheme combine_component_schemes(std::span<const ComponentScheme> parts);

/// True iff every request-set meets some support in exactly one vertex.
bool is_conflict_free_cover(const Instance& inst,
                            const std::vector<VertexSet>& supports);

}  // namespace picod
