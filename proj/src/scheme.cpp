#include "picod/scheme.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "picod/error.hpp"

namespace picod {

Scheme Scheme::from_supports(FieldOrder field, std::uint32_t message_count,
                             const std::vector<VertexSet>& supports) {
  RowMatrix mat(field, supports.size(), message_count);
  for (std::size_t t = 0; t < supports.size(); ++t) {
    for (Vertex v : supports[t]) {
      if (v < 1 || v > message_count) {
        throw Error(ErrorCode::index_out_of_range, "support vertex outside [1..m]");
      }
      mat.set(t, v - 1, 1);
    }
  }
  return Scheme(std::move(mat));
}

std::vector<VertexSet> Scheme::supports() const {
  std::vector<VertexSet> out(length());
  for (std::size_t t = 0; t < length(); ++t) {
    for (std::size_t c = 0; c < matrix_.cols(); ++c) {
      if (matrix_.at(t, c) != 0) out[t].push_back(static_cast<Vertex>(c + 1));
    }
  }
  return out;
}

std::size_t SatisfactionReport::satisfied_count() const {
  return static_cast<std::size_t>(
      std::count_if(clients.begin(), clients.end(), [](const auto& c) { return c.satisfied; }));
}

namespace {

// GF(2) with at most 64 transmissions and 64 requested messages: rows and
// the transform are single words.
ClientStatus decode_gf2_words(const RowMatrix& mat, const VertexSet& request) {
  const std::size_t len = mat.rows();
  std::vector<std::uint64_t> rows(len, 0);
  std::vector<std::uint64_t> transform(len, 0);
  for (std::size_t t = 0; t < len; ++t) {
    for (std::size_t k = 0; k < request.size(); ++k) {
      if (mat.at(t, request[k] - 1) != 0) rows[t] |= std::uint64_t{1} << k;
    }
    transform[t] = std::uint64_t{1} << t;
  }
  std::size_t lead = 0;
  for (std::size_t k = 0; k < request.size() && lead < len; ++k) {
    const std::uint64_t bit = std::uint64_t{1} << k;
    std::size_t pivot = lead;
    while (pivot < len && !(rows[pivot] & bit)) ++pivot;
    if (pivot == len) continue;
    std::swap(rows[lead], rows[pivot]);
    std::swap(transform[lead], transform[pivot]);
    for (std::size_t r = 0; r < len; ++r) {
      if (r != lead && (rows[r] & bit)) {
        rows[r] ^= rows[lead];
        transform[r] ^= transform[lead];
      }
    }
    ++lead;
  }
  ClientStatus status;
  std::size_t best = SIZE_MAX;
  std::size_t best_row = 0;
  for (std::size_t r = 0; r < lead; ++r) {
    if (std::popcount(rows[r]) != 1) continue;
    const auto k = static_cast<std::size_t>(std::countr_zero(rows[r]));
    if (k < best) {
      best = k;
      best_row = r;
    }
  }
  if (best != SIZE_MAX) {
    status.satisfied = true;
    status.decoded = request[best];
    status.coefficients.resize(len);
    for (std::size_t t = 0; t < len; ++t) status.coefficients[t] = (transform[best_row] >> t) & 1u;
  }
  return status;
}

ClientStatus decode_generic(const RowMatrix& mat, const VertexSet& request) {
  std::vector<std::size_t> columns;
  columns.reserve(request.size());
  for (Vertex v : request) columns.push_back(v - 1);
  const Echelon e = reduced_echelon(mat.select_columns(columns));

  // e_j is in the row space iff some RREF row equals e_j.
  ClientStatus status;
  std::size_t best = SIZE_MAX;
  std::size_t best_row = 0;
  for (std::size_t r = 0; r < e.rank(); ++r) {
    const auto row = e.reduced.row(r);
    const auto nonzero = std::count_if(row.begin(), row.end(), [](Element x) { return x != 0; });
    if (nonzero == 1 && e.pivot_columns[r] < best) {
      best = e.pivot_columns[r];
      best_row = r;
    }
  }
  if (best != SIZE_MAX) {
    status.satisfied = true;
    status.decoded = request[best];
    const auto t = e.transform.row(best_row);
    status.coefficients.assign(t.begin(), t.end());
  }
  return status;
}

}  // namespace

SatisfactionReport verify(const Instance& inst, const Scheme& scheme) {
  if (scheme.message_count() != inst.message_count()) {
    throw Error(ErrorCode::dimension_mismatch,
                "scheme has " + std::to_string(scheme.message_count()) +
                    " columns but the instance has " + std::to_string(inst.message_count()) +
                    " messages");
  }
  const bool packed = scheme.field().value() == 2 && scheme.length() <= 64;
  SatisfactionReport report;
  report.clients.reserve(inst.client_count());
  for (const auto& request : inst.requests()) {
    report.clients.push_back(packed && request.size() <= 64
                                 ? decode_gf2_words(scheme.matrix(), request)
                                 : decode_generic(scheme.matrix(), request));
  }
  report.all_satisfied = std::all_of(report.clients.begin(), report.clients.end(),
                                     [](const auto& c) { return c.satisfied; });
  return report;
}

Transmission transmit_independent(const Instance& inst, std::span<const Vertex> independent_set) {
  if (!is_independent(inst, independent_set)) {
    throw Error(ErrorCode::not_independent, "transmission support is not an independent set");
  }
  Transmission tx;
  tx.row.assign(inst.message_count(), 0);
  for (Vertex v : independent_set) tx.row[v - 1] = 1;
  for (std::size_t i = 0; i < inst.client_count(); ++i) {
    const auto& r = inst.request(i);
    if (std::any_of(r.begin(), r.end(), [&](Vertex v) { return tx.row[v - 1] != 0; })) {
      tx.satisfied_clients.push_back(i);
    }
  }
  return tx;
}

Scheme combine_component_schemes(std::span<const ComponentScheme> parts) {
  if (parts.empty()) {
    throw Error(ErrorCode::invalid_argument, "no component schemes to combine");
  }
  const std::uint32_t m = parts.front().instance.message_count();
  const FieldOrder field = parts.front().scheme.field();
  std::size_t length = 0;
  std::vector<int> owner(m + 1, -1);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& part = parts[i];
    if (part.instance.message_count() != m || part.scheme.message_count() != m) {
      throw Error(ErrorCode::dimension_mismatch, "component message counts differ");
    }
    if (part.scheme.field() != field) {
      throw Error(ErrorCode::field_mismatch, "component schemes use different fields");
    }
    for (Vertex v : active_vertices(part.instance)) {
      if (owner[v] != -1) {
        throw Error(ErrorCode::overlapping_components,
                    "vertex " + std::to_string(v) + " belongs to two components");
      }
      owner[v] = static_cast<int>(i);
    }
    length = std::max(length, part.scheme.length());
  }

  RowMatrix combined(field, length, m);
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& mat = parts[i].scheme.matrix();
    for (std::size_t t = 0; t < mat.rows(); ++t) {
      for (Vertex v = 1; v <= m; ++v) {
        if (owner[v] != static_cast<int>(i)) continue;
        combined.set(t, v - 1, field.add(combined.at(t, v - 1), mat.at(t, v - 1)));
      }
    }
  }
  return Scheme(std::move(combined));
}

bool is_conflict_free_cover(const Instance& inst, const std::vector<VertexSet>& supports) {
  std::vector<std::vector<char>> member(supports.size(),
                                        std::vector<char>(inst.message_count() + 1, 0));
  for (std::size_t t = 0; t < supports.size(); ++t) {
    for (Vertex v : supports[t]) {
      if (v >= 1 && v <= inst.message_count()) member[t][v] = 1;
    }
  }
  for (const auto& r : inst.requests()) {
    bool hit_once = false;
    for (std::size_t t = 0; t < supports.size() && !hit_once; ++t) {
      const auto hits = std::count_if(r.begin(), r.end(), [&](Vertex v) { return member[t][v]; });
      hit_once = hits == 1;
    }
    if (!hit_once) return false;
  }
  return true;
}

}  // namespace picod
