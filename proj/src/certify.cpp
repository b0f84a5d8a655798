#include <stdexcept>

#include "picod/bounds.hpp"
#include "picod/constructors.hpp"
#include "picod/error.hpp"
#include "picod/oracle.hpp"

namespace picod {

const char* to_string(LowerKind kind) noexcept {
  switch (kind) {
    case LowerKind::trivial: return "trivial";
    case LowerKind::nesting_strict: return "nesting-strict";
    case LowerKind::nesting_relaxed: return "nesting-relaxed";
    case LowerKind::length1_refutation: return "length1-refutation";
    case LowerKind::mais: return "mais";
  }
  return "unknown";
}

BoundCertificate certify(const Instance& inst, const Budgets& budgets) {
  BoundCertificate cert;
  cert.max_degree = degrees(inst).max_degree;
  if (inst.is_empty()) {
    cert.upper_scheme = Scheme(RowMatrix(FieldOrder::gf2(), 0, inst.message_count()));
    cert.upper_source = "empty";
    cert.tight = true;
    return cert;
  }

  // Lower bounds. Witness preference on ties follows the declaration order
  // below: cheaper-to-check witnesses first.
  cert.lower = 1;
  cert.lower_kind = LowerKind::trivial;
  auto raise = [&](std::size_t value, LowerKind kind) {
    if (value > cert.lower) {
      cert.lower = value;
      cert.lower_kind = kind;
    }
  };

  const NestingResult strict = nesting_number(inst, NestingMode::strict, budgets.nesting);
  cert.nesting_strict = strict.length;
  cert.nesting_strict_exact = strict.exact;
  cert.nesting = strict.collection;
  raise(strict.length, LowerKind::nesting_strict);

  const NestingResult relaxed = nesting_number(inst, NestingMode::relaxed, budgets.nesting);
  cert.nesting_relaxed = relaxed.length;
  cert.nesting_tree = relaxed.tree;
  raise(relaxed.length, LowerKind::nesting_relaxed);

  const Length1Decision length1 = decide_length1(inst, budgets.length1);
  cert.length1 = length1.solvable;
  if (length1.solvable == false && 2 > cert.lower) {
    cert.length1_refutation = length1.refutation;
    raise(2, LowerKind::length1_refutation);
  }

  if (inst.message_count() <= 64) {
    if (auto mais = mais_min_over_choices(inst, budgets.mais_product)) {
      cert.mais_min = mais->value;
      if (mais->value > cert.lower) {
        if (auto proof = prove_mais(inst, mais->value, budgets.mais_product)) {
          cert.mais_proof = std::move(proof);
          raise(mais->value, LowerKind::mais);
        }
      }
    }
  }

  // Upper bounds, cheapest first; exact searches only while a gap remains.
  std::optional<Scheme> best;
  auto offer = [&](const Scheme& scheme, const char* source) {
    if (!verify(inst, scheme).all_satisfied) {
      throw std::logic_error(std::string(source) + " produced a scheme that does not verify");
    }
    if (!best || scheme.length() < best->length()) {
      best = scheme;
      cert.upper_source = source;
    }
  };

  const auto alg1 = algorithm1(inst);
  cert.algorithm1_length = alg1.scheme.length();
  offer(alg1.scheme, "alg1");

  const Scheme grcov = grcov_greedy(inst);
  cert.grcov_length = grcov.length();
  offer(grcov, "grcov");

  if (best->length() > cert.lower) {
    if (auto cover = min_cover_exact(inst, budgets.cover)) {
      cert.cover_length = cover->length;
      offer(Scheme::from_supports(FieldOrder::gf2(), inst.message_count(), cover->supports),
            "cover");
    }
  }

  if (best->length() > cert.lower &&
      active_vertices(inst).size() <= budgets.oracle_max_vertices) {
    OracleOptions options;
    options.start_len = cert.lower;
    options.max_len = best->length() - 1;
    options.budget = budgets.oracle;
    try {
      const OracleResult oracle = exact_linear_optimum(inst, options);
      if (oracle.exact) {
        cert.oracle_length = oracle.optimum;
        offer(oracle.witness, "oracle");
      }
    } catch (const Error& e) {
      // No linear scheme shorter than the current upper bound.
      if (e.code() != ErrorCode::no_scheme_within_max_len) throw;
      cert.oracle_length = best->length();
    }
  }

  cert.upper = best->length();
  cert.upper_scheme = *best;
  cert.tight = cert.lower == cert.upper;
  return cert;
}

}  // namespace picod
