#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace picod {

/// 1-based message index (a vertex of the PICOD hypergraph).
using Vertex = std::uint32_t;

/// Sorted, duplicate-free list of vertices.
using VertexSet = std::vector<Vertex>;

/// A PICOD problem: m messages and n clients, each identified with its
/// request-set (the messages it does not hold as side-information).
///
/// Request-sets are stored canonically: members ascending, clients sorted
/// lexicographically, duplicates removed. Client indices are 0-based
/// positions in that canonical order. Immutable after construction.
class Instance {
 public:
  /// Throws Error{empty_request_set} or Error{index_out_of_range}; a
  /// constructed instance has m >= 1 and n >= 1.
  static Instance build(std::uint32_t message_count,
                        std::vector<VertexSet> requests);

  /// An instance with no clients. Only produced by induced-subgraph style
  /// operations and by callers that need an explicit empty problem.
  static Instance empty(std::uint32_t message_count);

  std::uint32_t message_count() const noexcept { return message_count_; }
  std::size_t client_count() const noexcept { return requests_.size(); }
  bool is_empty() const noexcept { return requests_.empty(); }

  const VertexSet& request(std::size_t client) const {
    return requests_.at(client);
  }
  const std::vector<VertexSet>& requests() const noexcept { return requests_; }

  /// Number of duplicate request-sets dropped by build().
  std::size_t duplicates_removed() const noexcept { return duplicates_removed_; }

  /// Canonical index of the client whose request-set equals `set`.
  std::optional<std::size_t> find_client(VertexSet set) const;

  friend bool operator==(const Instance& a, const Instance& b) {
    return a.message_count_ == b.message_count_ && a.requests_ == b.requests_;
  }

 private:
  Instance(std::uint32_t m, std::vector<VertexSet> requests, std::size_t dups)
      : message_count_(m), requests_(std::move(requests)), duplicates_removed_(dups) {}

  std::uint32_t message_count_ = 0;
  std::vector<VertexSet> requests_;
  std::size_t duplicates_removed_ = 0;
};

struct DegreeProfile {
  /// degree[v] for v in [1..m]; degree[0] is unused and always 0.
  std::vector<std::uint32_t> degree;
  std::uint32_t max_degree = 0;

  std::uint32_t of(Vertex v) const { return degree.at(v); }
};

DegreeProfile degrees(const Instance& inst);

struct ComponentPartition {
  /// Vertex sets of the connected components, ordered by smallest member.
  std::vector<VertexSet> vertex_sets;
  /// parts[i] == induced(inst, vertex_sets[i]).
  std::vector<Instance> parts;
};

/// Connected components over vertices of degree >= 1.
ComponentPartition components(const Instance& inst);

/// Keeps exactly the request-sets contained in `keep`. Vertex numbering
/// and message_count are preserved; the result may be empty.
Instance induced(const Instance& inst, std::span<const Vertex> keep);

/// True iff every request-set contains at most one member of `vset`.
bool is_independent(const Instance& inst, std::span<const Vertex> vset);

/// Vertices that appear in at least one request-set, ascending.
VertexSet active_vertices(const Instance& inst);

// Bitmask helpers for the exponential searches, which only run on small
// instances. Bit (v - 1) represents vertex v.
using Mask = std::uint64_t;

/// Throws Error{instance_too_large} when m > 64.
void require_mask_width(const Instance& inst, const char* operation);
Mask to_mask(std::span<const Vertex> set);
VertexSet from_mask(Mask mask);

}  // namespace picod
