#include "picod/instance.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <string>

#include "picod/error.hpp"

namespace picod {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::empty_request_set: return "EmptyRequestSet";
    case ErrorCode::index_out_of_range: return "IndexOutOfRange";
    case ErrorCode::invalid_argument: return "InvalidArgument";
    case ErrorCode::dimension_mismatch: return "DimensionMismatch";
    case ErrorCode::field_mismatch: return "FieldMismatch";
    case ErrorCode::not_independent: return "NotIndependent";
    case ErrorCode::overlapping_components: return "OverlappingComponents";
    case ErrorCode::invalid_choice: return "InvalidChoice";
    case ErrorCode::syntax_error: return "SyntaxError";
    case ErrorCode::infeasible_params: return "InfeasibleParams";
    case ErrorCode::no_scheme_within_max_len: return "NoSchemeWithinMaxLen";
    case ErrorCode::instance_too_large: return "InstanceTooLarge";
    case ErrorCode::budget_exhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

SyntaxError::SyntaxError(std::size_t line, std::size_t column, const std::string& message)
    : Error(ErrorCode::syntax_error,
            "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
      line_(line),
      column_(column) {}

Instance Instance::build(std::uint32_t message_count, std::vector<VertexSet> requests) {
  if (message_count == 0) {
    throw Error(ErrorCode::invalid_argument, "message count must be positive");
  }
  if (requests.empty()) {
    throw Error(ErrorCode::invalid_argument, "an instance needs at least one client");
  }
  for (std::size_t i = 0; i < requests.size(); ++i) {
    auto& r = requests[i];
    if (r.empty()) {
      throw Error(ErrorCode::empty_request_set,
                  "client " + std::to_string(i + 1) + " has an empty request-set");
    }
    std::sort(r.begin(), r.end());
    r.erase(std::unique(r.begin(), r.end()), r.end());
    if (r.front() < 1 || r.back() > message_count) {
      throw Error(ErrorCode::index_out_of_range,
                  "client " + std::to_string(i + 1) + " requests a message outside [1.." +
                      std::to_string(message_count) + "]");
    }
  }
  std::sort(requests.begin(), requests.end());
  auto last = std::unique(requests.begin(), requests.end());
  const auto dups = static_cast<std::size_t>(requests.end() - last);
  requests.erase(last, requests.end());
  return Instance(message_count, std::move(requests), dups);
}

Instance Instance::empty(std::uint32_t message_count) {
  return Instance(message_count, {}, 0);
}

std::optional<std::size_t> Instance::find_client(VertexSet set) const {
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
  auto it = std::lower_bound(requests_.begin(), requests_.end(), set);
  if (it == requests_.end() || *it != set) return std::nullopt;
  return static_cast<std::size_t>(it - requests_.begin());
}

DegreeProfile degrees(const Instance& inst) {
  DegreeProfile profile;
  profile.degree.assign(inst.message_count() + 1, 0);
  for (const auto& r : inst.requests()) {
    for (Vertex v : r) ++profile.degree[v];
  }
  profile.max_degree = *std::max_element(profile.degree.begin(), profile.degree.end());
  return profile;
}

namespace {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace

ComponentPartition components(const Instance& inst) {
  const std::uint32_t m = inst.message_count();
  DisjointSets sets(m + 1);
  for (const auto& r : inst.requests()) {
    for (std::size_t k = 1; k < r.size(); ++k) sets.unite(r[0], r[k]);
  }
  const auto profile = degrees(inst);

  ComponentPartition partition;
  std::vector<std::size_t> slot(m + 1, SIZE_MAX);
  for (Vertex v = 1; v <= m; ++v) {
    if (profile.degree[v] == 0) continue;
    const std::size_t root = sets.find(v);
    if (slot[root] == SIZE_MAX) {
      slot[root] = partition.vertex_sets.size();
      partition.vertex_sets.emplace_back();
    }
    partition.vertex_sets[slot[root]].push_back(v);
  }
  for (const auto& vs : partition.vertex_sets) partition.parts.push_back(induced(inst, vs));
  return partition;
}

Instance induced(const Instance& inst, std::span<const Vertex> keep) {
  std::vector<char> kept(inst.message_count() + 1, 0);
  for (Vertex v : keep) {
    if (v < 1 || v > inst.message_count()) {
      throw Error(ErrorCode::index_out_of_range, "vertex outside [1..m] in keep set");
    }
    kept[v] = 1;
  }
  std::vector<VertexSet> remaining;
  for (const auto& r : inst.requests()) {
    if (std::all_of(r.begin(), r.end(), [&](Vertex v) { return kept[v] != 0; })) {
      remaining.push_back(r);
    }
  }
  if (remaining.empty()) return Instance::empty(inst.message_count());
  return Instance::build(inst.message_count(), std::move(remaining));
}

bool is_independent(const Instance& inst, std::span<const Vertex> vset) {
  std::vector<char> member(inst.message_count() + 1, 0);
  for (Vertex v : vset) {
    if (v < 1 || v > inst.message_count()) {
      throw Error(ErrorCode::index_out_of_range, "vertex outside [1..m]");
    }
    member[v] = 1;
  }
  for (const auto& r : inst.requests()) {
    int hits = 0;
    for (Vertex v : r) {
      if (member[v] && ++hits > 1) return false;
    }
  }
  return true;
}

VertexSet active_vertices(const Instance& inst) {
  const auto profile = degrees(inst);
  VertexSet active;
  for (Vertex v = 1; v <= inst.message_count(); ++v) {
    if (profile.degree[v] > 0) active.push_back(v);
  }
  return active;
}

void require_mask_width(const Instance& inst, const char* operation) {
  if (inst.message_count() > 64) {
    throw Error(ErrorCode::instance_too_large,
                std::string(operation) + " supports at most 64 messages");
  }
}

Mask to_mask(std::span<const Vertex> set) {
  Mask mask = 0;
  for (Vertex v : set) mask |= Mask{1} << (v - 1);
  return mask;
}

VertexSet from_mask(Mask mask) {
  VertexSet set;
  while (mask != 0) {
    set.push_back(static_cast<Vertex>(std::countr_zero(mask)) + 1);
    mask &= mask - 1;
  }
  return set;
}

}  // namespace picod
