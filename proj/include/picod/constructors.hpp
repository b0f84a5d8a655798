#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "picod/instance.hpp"
#include "picod/scheme.hpp"

namespace picod {

struct ColorRound {
  std::uint32_t delta = 0;
  std::uint32_t color = 0;
  VertexSet vertices;
};

struct Coloring {
  /// color_of[v] in [1..Delta], 0 for vertices never colored.
  std::vector<std::uint32_t> color_of;
  /// Only rounds that picked at least one vertex.
  std::vector<ColorRound> rounds;

  std::size_t color_count() const noexcept { return rounds.size(); }
};

struct TraceRound {
  std::uint32_t delta = 0;
  /// Unset when no vertex had degree delta; such rounds transmit nothing.
  std::optional<std::uint32_t> color;
  VertexSet picked;
  std::vector<std::size_t> removed_clients;
  /// (vertex, total decrement during this round), ascending by vertex.
  std::vector<std::pair<Vertex, std::uint32_t>> degree_decrements;
};

struct ConstructionTrace {
  std::vector<TraceRound> rounds;
  std::vector<VertexSet> transmissions;
};

struct Algorithm1Options {
  FieldOrder field = FieldOrder::gf2();
  /// Jump delta straight to the residual maximum degree instead of
  /// stepping through every value. Same output, fewer empty rounds.
  bool skip_to_max_degree = false;
};

struct Algorithm1Result {
  Scheme scheme;
  Coloring coloring;
  ConstructionTrace trace;
};

/// Degree-descending greedy coloring. Produces a scheme of length at most
/// the maximum degree that satisfies every client.
Algorithm1Result algorithm1(const Instance& inst, const Algorithm1Options& options = {});

/// Degree-oblivious greedy baseline: repeatedly transmits a maximal
/// independent set of the residual hypergraph found by ascending scan.
Scheme grcov_greedy(const Instance& inst, FieldOrder field = FieldOrder::gf2());

struct CoverResult {
  std::size_t length = 0;
  std::vector<VertexSet> supports;
  std::uint64_t nodes = 0;
};

inline constexpr std::uint64_t kDefaultCoverBudget = 2'000'000;

/// Minimum conflict-free cover (shortest scheme made of plain sums).
/// Returns nullopt when the node budget runs out or the instance has more
/// than 24 active vertices.
std::optional<CoverResult> min_cover_exact(const Instance& inst,
                                           std::uint64_t node_budget = kDefaultCoverBudget);

}  // namespace picod
