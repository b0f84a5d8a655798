#include "picod/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "picod/constructors.hpp"
#include "picod/error.hpp"

namespace picod {

namespace {

// Calls visit(pivots) for every strictly increasing pivot tuple of size dim.
template <typename Visit>
bool for_each_pivot_set(std::size_t cols, std::size_t dim, Visit&& visit) {
  std::vector<std::size_t> pivots(dim);
  for (std::size_t k = 0; k < dim; ++k) pivots[k] = k;
  if (dim > cols) return true;
  while (true) {
    if (!visit(pivots)) return false;
    // Advance to the lexicographically next combination.
    std::size_t k = dim;
    while (k > 0 && pivots[k - 1] == cols - dim + k - 1) --k;
    if (k == 0) return true;
    ++pivots[k - 1];
    for (std::size_t j = k; j < dim; ++j) pivots[j] = pivots[j - 1] + 1;
  }
}

// Free (row, column) positions of an RREF matrix with the given pivots:
// columns right of the row's pivot that are not pivot columns themselves.
std::vector<std::pair<std::size_t, std::size_t>> free_positions(
    std::size_t cols, const std::vector<std::size_t>& pivots) {
  std::vector<char> is_pivot(cols, 0);
  for (std::size_t c : pivots) is_pivot[c] = 1;
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    for (std::size_t c = pivots[r] + 1; c < cols; ++c) {
      if (!is_pivot[c]) out.emplace_back(r, c);
    }
  }
  return out;
}

// Local bitmask: bit k is active vertex k.
using LocalMask = std::uint64_t;

// GF(2): does the span of `rows` restricted to `request` contain a unit vector?
bool decodes_gf2(const LocalMask* rows, std::size_t count, LocalMask request) {
  LocalMask basis[64];
  std::size_t rank = 0;
  for (std::size_t t = 0; t < count; ++t) {
    LocalMask r = rows[t] & request;
    if (r != 0) basis[rank++] = r;
  }
  // Full reduction: afterwards e_j is in the span iff it is a basis row.
  std::size_t lead = 0;
  for (std::size_t i = 0; i < rank; ++i) {
    std::size_t pick = SIZE_MAX;
    LocalMask low = 0;
    for (std::size_t r = lead; r < rank; ++r) {
      if (basis[r] == 0) continue;
      const LocalMask b = basis[r] & (~basis[r] + 1);
      if (pick == SIZE_MAX || b < low) {
        pick = r;
        low = b;
      }
    }
    if (pick == SIZE_MAX) break;
    std::swap(basis[lead], basis[pick]);
    for (std::size_t r = 0; r < rank; ++r) {
      if (r != lead && (basis[r] & low)) basis[r] ^= basis[lead];
    }
    ++lead;
  }
  for (std::size_t r = 0; r < lead; ++r) {
    if (std::popcount(basis[r]) == 1) return true;
  }
  return false;
}

struct SearchOutcome {
  bool found = false;
  bool exhausted = false;
  std::vector<std::vector<Element>> rows;  // over active columns
};

SearchOutcome search_gf2(const std::vector<LocalMask>& requests, std::size_t cols, std::size_t dim,
                         std::uint64_t budget, std::uint64_t& explored) {
  SearchOutcome outcome;
  LocalMask rows[64];
  for_each_pivot_set(cols, dim, [&](const std::vector<std::size_t>& pivots) {
    const auto free = free_positions(cols, pivots);
    if (free.size() >= 64) {
      outcome.exhausted = true;
      return false;
    }
    const std::uint64_t combos = std::uint64_t{1} << free.size();
    for (std::uint64_t x = 0; x < combos; ++x) {
      if (++explored > budget) {
        outcome.exhausted = true;
        return false;
      }
      for (std::size_t r = 0; r < dim; ++r) rows[r] = LocalMask{1} << pivots[r];
      for (std::size_t k = 0; k < free.size(); ++k) {
        if ((x >> k) & 1u) rows[free[k].first] |= LocalMask{1} << free[k].second;
      }
      const bool ok = std::all_of(requests.begin(), requests.end(),
                                  [&](LocalMask r) { return decodes_gf2(rows, dim, r); });
      if (ok) {
        outcome.found = true;
        outcome.rows.assign(dim, std::vector<Element>(cols, 0));
        for (std::size_t r = 0; r < dim; ++r) {
          for (std::size_t c = 0; c < cols; ++c) outcome.rows[r][c] = (rows[r] >> c) & 1u;
        }
        return false;
      }
    }
    return true;
  });
  return outcome;
}

Scheme embed(FieldOrder field, std::uint32_t m, const VertexSet& active,
             const std::vector<std::vector<Element>>& local_rows) {
  RowMatrix mat(field, local_rows.size(), m);
  for (std::size_t r = 0; r < local_rows.size(); ++r) {
    for (std::size_t k = 0; k < active.size(); ++k) mat.set(r, active[k] - 1, local_rows[r][k]);
  }
  return Scheme(std::move(mat));
}

}  // namespace

bool for_each_subspace(FieldOrder field, std::size_t cols, std::size_t dim,
                       const std::function<bool(const std::vector<std::vector<Element>>&)>& visit) {
  const std::uint32_t p = field.value();
  return for_each_pivot_set(cols, dim, [&](const std::vector<std::size_t>& pivots) {
    const auto free = free_positions(cols, pivots);
    std::vector<std::vector<Element>> rows(dim, std::vector<Element>(cols, 0));
    for (std::size_t r = 0; r < dim; ++r) rows[r][pivots[r]] = 1;
    // Odometer over p^|free| assignments, first position varying fastest.
    std::vector<Element> digits(free.size(), 0);
    while (true) {
      if (!visit(rows)) return false;
      std::size_t k = 0;
      while (k < digits.size()) {
        digits[k] = (digits[k] + 1) % p;
        rows[free[k].first][free[k].second] = digits[k];
        if (digits[k] != 0) break;
        ++k;
      }
      if (k == digits.size()) return true;
    }
  });
}

OracleResult exact_linear_optimum(const Instance& inst, const OracleOptions& options) {
  OracleResult result;
  result.field = options.field;
  const std::uint32_t m = inst.message_count();
  if (inst.is_empty()) {
    result.witness = Scheme(RowMatrix(options.field, 0, m));
    result.exact = true;
    return result;
  }

  const VertexSet active = active_vertices(inst);
  const std::size_t cols = active.size();
  if (cols > 64) {
    throw Error(ErrorCode::instance_too_large, "oracle supports at most 64 active messages");
  }
  std::vector<std::size_t> local(m + 1, 0);
  for (std::size_t k = 0; k < cols; ++k) local[active[k]] = k;
  std::vector<LocalMask> requests;
  for (const auto& r : inst.requests()) {
    LocalMask mask = 0;
    for (Vertex v : r) mask |= LocalMask{1} << local[v];
    requests.push_back(mask);
  }

  const bool binary = options.field.value() == 2;
  // The identity on active columns always works, so dim never exceeds cols.
  const std::size_t last = std::min(options.max_len, cols);
  for (std::size_t dim = std::max<std::size_t>(options.start_len, 1); dim <= last; ++dim) {
    SearchOutcome outcome;
    if (binary) {
      outcome = search_gf2(requests, cols, dim, options.budget, result.explored);
    } else {
      for_each_subspace(options.field, cols, dim, [&](const std::vector<std::vector<Element>>& rows) {
        if (++result.explored > options.budget) {
          outcome.exhausted = true;
          return false;
        }
        if (verify(inst, embed(options.field, m, active, rows)).all_satisfied) {
          outcome.found = true;
          outcome.rows = rows;
          return false;
        }
        return true;
      });
    }
    if (outcome.exhausted) {
      Algorithm1Options alg;
      alg.field = options.field;
      result.witness = algorithm1(inst, alg).scheme;
      result.optimum = result.witness.length();
      result.exact = false;
      return result;
    }
    if (outcome.found) {
      result.optimum = dim;
      result.witness = embed(options.field, m, active, outcome.rows);
      result.exact = true;
      return result;
    }
  }
  throw Error(ErrorCode::no_scheme_within_max_len,
              "no scalar-linear scheme of length <= " + std::to_string(options.max_len));
}

CrossCheckReport cross_check(const Instance& inst, const Budgets& budgets) {
  CrossCheckReport report;
  report.max_degree = degrees(inst).max_degree;

  const auto strict = nesting_number(inst, NestingMode::strict, budgets.nesting);
  report.nesting_strict = strict.length;
  report.nesting_relaxed = nesting_number(inst, NestingMode::relaxed).length;
  if (report.nesting_strict != report.nesting_relaxed) {
    report.notes.push_back("strict nesting " + std::to_string(report.nesting_strict) +
                           " differs from relaxed nesting " +
                           std::to_string(report.nesting_relaxed) +
                           (strict.exact ? "" : " (strict search hit its budget)"));
  }
  if (auto mais = mais_min_over_choices(inst, budgets.mais_product)) report.mais_min = mais->value;

  const auto alg1 = algorithm1(inst);
  report.algorithm1_length = alg1.scheme.length();
  if (!verify(inst, alg1.scheme).all_satisfied) {
    report.violations.push_back("alg1 scheme fails verification");
  }
  if (auto cover = min_cover_exact(inst, budgets.cover)) {
    report.cover_optimum = cover->length;
    if (!is_conflict_free_cover(inst, cover->supports)) {
      report.violations.push_back("min cover supports are not a conflict-free cover");
    }
  }
  if (active_vertices(inst).size() <= budgets.oracle_max_vertices) {
    OracleOptions options;
    options.budget = budgets.oracle;
    options.max_len = std::max<std::size_t>(report.max_degree, 1);
    const auto oracle = exact_linear_optimum(inst, options);
    if (oracle.exact) {
      report.linear_optimum = oracle.optimum;
      if (!verify(inst, oracle.witness).all_satisfied) {
        report.violations.push_back("oracle witness fails verification");
      }
    }
  }
  report.length1 = decide_length1(inst, budgets.length1).solvable;

  const std::vector<std::pair<const char*, std::optional<std::size_t>>> chain = {
      {"strict nesting", report.nesting_strict},
      {"relaxed nesting", report.nesting_relaxed},
      {"min MAIS", report.mais_min},
      {"GF(2) linear optimum", report.linear_optimum},
      {"min cover", report.cover_optimum},
      {"alg1 length", report.algorithm1_length},
      {"max degree", std::size_t{report.max_degree}},
  };
  for (std::size_t i = 0; i < chain.size(); ++i) {
    for (std::size_t j = i + 1; j < chain.size(); ++j) {
      if (chain[i].second && chain[j].second && *chain[i].second > *chain[j].second) {
        report.violations.push_back(std::string(chain[i].first) + " " +
                                    std::to_string(*chain[i].second) + " > " + chain[j].first +
                                    " " + std::to_string(*chain[j].second));
      }
    }
  }
  if (report.length1 && report.cover_optimum &&
      *report.length1 != (*report.cover_optimum == 1)) {
    report.violations.push_back("length-1 decision disagrees with the min cover optimum");
  }
  return report;
}

}  // namespace picod
