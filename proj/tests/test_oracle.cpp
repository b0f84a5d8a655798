#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "picod/constructors.hpp"
#include "picod/error.hpp"
#include "picod/fixtures.hpp"
#include "picod/oracle.hpp"

using namespace picod;

namespace {

bf::Matrix to_bf(const Scheme& scheme) {
  bf::Matrix rows;
  for (std::size_t t = 0; t < scheme.length(); ++t) {
    const auto row = scheme.matrix().row(t);
    rows.emplace_back(row.begin(), row.end());
  }
  return rows;
}

}  // namespace

TEST_CASE("subspace enumeration visits each subspace once") {
  struct Case {
    std::uint32_t p;
    std::size_t n, k;
  };
  for (const Case c : {Case{2, 4, 2}, Case{2, 5, 3}, Case{2, 6, 1}, Case{3, 3, 1}, Case{3, 4, 2},
                       Case{5, 3, 2}, Case{2, 3, 3}, Case{2, 3, 0}}) {
    const FieldOrder f(c.p);
    std::set<std::vector<std::vector<Element>>> seen;
    std::set<std::set<std::vector<Element>>> spans;
    std::size_t visits = 0;
    const bool finished = for_each_subspace(f, c.n, c.k, [&](const std::vector<std::vector<Element>>& rows) {
      ++visits;
      seen.insert(rows);
      CHECK(rows.size() == c.k);
      bf::Matrix m(rows.begin(), rows.end());
      CHECK(bf::rank(c.p, m, c.n) == c.k);
      std::set<std::vector<Element>> span;
      bf::for_each_vector(c.p, rows.size(), [&](const std::vector<std::uint32_t>& coef) {
        std::vector<Element> y(c.n, 0);
        for (std::size_t t = 0; t < rows.size(); ++t) {
          for (std::size_t j = 0; j < c.n; ++j) y[j] = (y[j] + coef[t] * rows[t][j]) % c.p;
        }
        span.insert(y);
      });
      spans.insert(span);
      return true;
    });
    CHECK(finished);
    CHECK(visits == bf::gaussian_binomial(c.n, c.k, c.p));
    CHECK(seen.size() == visits);
    CHECK(spans.size() == visits);
  }
  std::size_t visits = 0;
  CHECK_FALSE(for_each_subspace(FieldOrder::gf2(), 4, 2, [&](const auto&) { return ++visits < 3; }));
  CHECK(visits == 3);
}

TEST_CASE("example 2 has linear optimum 2 over GF(2)") {
  const Instance inst = fixtures::example2();
  OracleOptions options;
  options.max_len = 3;
  const auto r = exact_linear_optimum(inst, options);
  CHECK(r.exact);
  CHECK(r.optimum == 2);
  CHECK(r.witness.length() == 2);
  CHECK(verify(inst, r.witness).all_satisfied);
  CHECK(bf::linear_optimum_gf2(9, inst.requests(), 2) == 2);
}

TEST_CASE("oracle errors and budget handling") {
  const Instance inst = fixtures::example2();
  OracleOptions tight;
  tight.max_len = 1;
  try {
    exact_linear_optimum(inst, tight);
    FAIL("expected no_scheme_within_max_len");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::no_scheme_within_max_len);
  }

  OracleOptions starved;
  starved.budget = 3;
  const auto r = exact_linear_optimum(inst, starved);
  CHECK_FALSE(r.exact);
  CHECK(verify(inst, r.witness).all_satisfied);
  CHECK(r.optimum == algorithm1(inst).scheme.length());
}

TEST_CASE("GF(2) oracle agrees with exhaustive search") {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 120; ++trial) {
    const std::uint32_t m = 1 + rng() % 5;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 7, 4));
    OracleOptions options;
    options.max_len = 5;
    const auto r = exact_linear_optimum(inst, options);
    CHECK(r.exact);
    CHECK(r.optimum == bf::linear_optimum_gf2(m, inst.requests()));
    CHECK(bf::all_satisfied(2, to_bf(r.witness), inst.requests()));
  }
}

TEST_CASE("GF(3) oracle agrees with exhaustive search") {
  std::mt19937_64 rng(62);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t m = 1 + rng() % 4;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 5, 3));
    OracleOptions options;
    options.field = FieldOrder(3);
    options.max_len = 4;
    const auto r = exact_linear_optimum(inst, options);
    REQUIRE(r.exact);
    CHECK(r.witness.field().value() == 3);
    CHECK(verify(inst, r.witness).all_satisfied);
    // No scheme one shorter: enumerate every (optimum-1) x m matrix.
    if (r.optimum > 1 && (r.optimum - 1) * m <= 8) {
      const std::size_t len = r.optimum - 1;
      bool found = false;
      bf::for_each_vector(3, len * m, [&](const std::vector<std::uint32_t>& flat) {
        if (found) return;
        bf::Matrix rows(len, std::vector<std::uint32_t>(m));
        for (std::size_t t = 0; t < len; ++t) {
          for (std::uint32_t j = 0; j < m; ++j) rows[t][j] = flat[t * m + j];
        }
        found = bf::all_satisfied(3, rows, inst.requests());
      });
      CHECK_FALSE(found);
    }
  }
}

TEST_CASE("cross check finds no violations on small instances") {
  std::mt19937_64 rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    const std::uint32_t m = 1 + rng() % 7;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 7, 4));
    const auto report = cross_check(inst);
    CHECK(report.ok());
    CHECK(report.violations.empty());
    REQUIRE(report.linear_optimum.has_value());
    REQUIRE(report.cover_optimum.has_value());
    CHECK(*report.cover_optimum == bf::min_cover(m, inst.requests()));
    CHECK(report.nesting_strict == bf::nesting_number(inst.requests()));
  }
}
