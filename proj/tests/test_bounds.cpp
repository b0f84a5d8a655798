#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "picod/bounds.hpp"
#include "picod/constructors.hpp"
#include "picod/error.hpp"
#include "picod/fixtures.hpp"

using namespace picod;

namespace {

std::vector<bf::Sets> contents(const Instance& inst, const NestedCollection& c) {
  std::vector<bf::Sets> levels;
  for (const auto& level : c.levels) {
    levels.emplace_back();
    for (auto client : level) levels.back().push_back(inst.request(client));
  }
  return levels;
}

NestedCollection by_content(const Instance& inst, const std::vector<bf::Sets>& levels) {
  NestedCollection c;
  for (const auto& level : levels) {
    c.levels.emplace_back();
    for (const auto& s : level) c.levels.back().push_back(*inst.find_client(s));
  }
  return c;
}

bf::Sets sorted(bf::Sets s) {
  std::sort(s.begin(), s.end());
  return s;
}

}  // namespace

TEST_CASE("example 1 nesting number is 3 with the three-level witness") {
  const Instance inst = fixtures::example1();
  const auto strict = nesting_number(inst, NestingMode::strict);
  CHECK(strict.length == 3);
  CHECK(strict.exact);
  REQUIRE(strict.collection.has_value());
  const auto levels = contents(inst, *strict.collection);
  CHECK(bf::valid_nested(levels));
  CHECK(levels[0] == bf::Sets{fixtures::example1_request(1)});
  CHECK(sorted(levels[1]) == sorted({fixtures::example1_request(2), fixtures::example1_request(3)}));
  CHECK(sorted(levels[2]) == sorted({fixtures::example1_request(4), fixtures::example1_request(5),
                                     fixtures::example1_request(6), fixtures::example1_request(7)}));
  CHECK_FALSE(check_nested_collection(inst, *strict.collection).has_value());

  const auto relaxed = nesting_number(inst, NestingMode::relaxed);
  CHECK(relaxed.length == 3);
  REQUIRE(relaxed.tree.has_value());
  CHECK(relaxed.tree->depth() == 3);
  CHECK_FALSE(check_nesting_tree(inst, *relaxed.tree).has_value());
  CHECK(bf::nesting_number(inst.requests()) == 3);
}

TEST_CASE("example 2 nesting number is 2") {
  const Instance inst = fixtures::example2();
  CHECK(nesting_number(inst, NestingMode::strict).length == 2);
  CHECK(nesting_number(inst, NestingMode::relaxed).length == 2);
  const auto witness = by_content(inst, {{fixtures::example2_request(7)},
                                         {fixtures::example2_request(1), fixtures::example2_request(2)}});
  CHECK_FALSE(check_nested_collection(inst, witness).has_value());
}

TEST_CASE("nested collection checker rejects broken witnesses") {
  const Instance inst = fixtures::example1();
  const auto good = [&] {
    return bf::Sets{fixtures::example1_request(2), fixtures::example1_request(3)};
  }();
  CHECK(check_nested_collection(inst, by_content(inst, {{fixtures::example1_request(1)}, good}))
            == std::nullopt);
  // Children that overlap.
  CHECK(check_nested_collection(
            inst, by_content(inst, {{fixtures::example1_request(1)},
                                    {fixtures::example1_request(2), fixtures::example1_request(4)}}))
            .has_value());
  // A child that is not inside its parent.
  CHECK(check_nested_collection(
            inst, by_content(inst, {{fixtures::example1_request(2)},
                                    {fixtures::example1_request(4), fixtures::example1_request(7)}}))
            .has_value());
  // Wrong level size.
  CHECK(check_nested_collection(inst, by_content(inst, {{fixtures::example1_request(1)},
                                                         {fixtures::example1_request(2)}}))
            .has_value());
  NestedCollection bogus;
  bogus.levels = {{99}};
  CHECK(check_nested_collection(inst, bogus).has_value());
}

TEST_CASE("nesting numbers match the exhaustive recursion") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 250; ++trial) {
    const std::uint32_t m = 2 + rng() % 10;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 10, m));
    const std::size_t expected = bf::nesting_number(inst.requests());
    const auto strict = nesting_number(inst, NestingMode::strict);
    const auto relaxed = nesting_number(inst, NestingMode::relaxed);
    CHECK(strict.exact);
    CHECK(strict.length == expected);
    CHECK(relaxed.length == expected);
    REQUIRE(strict.collection.has_value());
    CHECK(strict.collection->length() == expected);
    CHECK(bf::valid_nested(contents(inst, *strict.collection)));
    const auto depths = relaxed_depths(inst);
    for (std::size_t i = 0; i < inst.client_count(); ++i) {
      CHECK(depths[i] == bf::nesting_depth(inst.requests(), i));
    }
  }
}

TEST_CASE("planted trees are recovered by the strict search") {
  // Depth-4 complete tree on 15 fresh vertices, each node owning one vertex.
  std::vector<VertexSet> sets;
  std::function<VertexSet(int, Vertex&)> plant = [&](int depth, Vertex& next) {
    VertexSet s{next++};
    if (depth > 1) {
      for (int child = 0; child < 2; ++child) {
        const auto sub = plant(depth - 1, next);
        s.insert(s.end(), sub.begin(), sub.end());
      }
    }
    std::sort(s.begin(), s.end());
    sets.push_back(s);
    return s;
  };
  Vertex next = 1;
  plant(4, next);
  const Instance inst = Instance::build(15, sets);
  const auto strict = nesting_number(inst, NestingMode::strict);
  CHECK(strict.length == 4);
  CHECK(strict.exact);
}

TEST_CASE("strict search reports inexact results when the budget runs out") {
  std::mt19937_64 rng(52);
  const Instance inst = Instance::build(12, bf::random_sets(rng, 12, 30, 12));
  const auto r = nesting_number(inst, NestingMode::strict, 1);
  CHECK_FALSE(r.exact);
  CHECK(r.length <= bf::nesting_number(inst.requests()));
}

TEST_CASE("MAIS for a fixed decoding choice on example 2") {
  const Instance inst = fixtures::example2();
  DecodingChoice choice(inst.client_count());
  for (std::size_t k = 1; k <= 6; ++k) choice[*inst.find_client(fixtures::example2_request(k))] = k;
  choice[*inst.find_client(fixtures::example2_request(7))] = 7;
  choice[*inst.find_client(fixtures::example2_request(8))] = 9;
  choice[*inst.find_client(fixtures::example2_request(9))] = 8;
  const auto chain = mais_for_choices(inst, choice);
  CHECK(chain.length() >= 2);
  CHECK(chain.length() == bf::mais(inst.requests(), choice));
  CHECK_FALSE(check_chain(inst, choice, chain).has_value());

  DecodingChoice bad = choice;
  bad[0] = 9;
  try {
    mais_for_choices(inst, bad);
    FAIL("expected invalid_choice");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::invalid_choice);
  }
}

TEST_CASE("MAIS minimum over decoding choices") {
  const auto ex2 = mais_min_over_choices(fixtures::example2());
  REQUIRE(ex2.has_value());
  CHECK(ex2->value == 2);
  CHECK(ex2->value == bf::mais_min(fixtures::example2().requests()));
  CHECK_FALSE(check_chain(fixtures::example2(), ex2->minimizer, ex2->chain).has_value());

  const auto ex1 = mais_min_over_choices(fixtures::example1());
  REQUIRE(ex1.has_value());
  CHECK(ex1->value == 3);

  CHECK_FALSE(mais_min_over_choices(fixtures::example1(), 100).has_value());

  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 150; ++trial) {
    const std::uint32_t m = 1 + rng() % 7;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 6, 3));
    const auto r = mais_min_over_choices(inst);
    REQUIRE(r.has_value());
    CHECK(r->value == bf::mais_min(inst.requests()));
    CHECK(r->value == bf::mais(inst.requests(), r->minimizer));
    CHECK(r->chain.length() == r->value);
    CHECK_FALSE(check_chain(inst, r->minimizer, r->chain).has_value());
    CHECK(nesting_number(inst, NestingMode::relaxed).length <= r->value);
  }
}

TEST_CASE("chain checker rejects broken chains") {
  const Instance inst = Instance::build(3, {{1, 2}, {2, 3}});
  const DecodingChoice choice{1, 2};
  CHECK_FALSE(check_chain(inst, choice, {{0, 1}, {1, 2}}).has_value());
  // Reversed, the first client {2,3} already holds the later demand b1.
  CHECK(check_chain(inst, choice, {{1, 0}, {2, 1}}).has_value());
  CHECK(check_chain(inst, choice, {{0}, {2}}).has_value());
  CHECK(check_chain(inst, {2, 2}, {{0, 1}, {2, 2}}).has_value());
}

TEST_CASE("deciding whether one transmission suffices") {
  CHECK(decide_length1(fixtures::example2()).solvable == false);
  CHECK(decide_length1(fixtures::example1()).solvable == false);
  const Instance matching = Instance::build(7, {{1, 2}, {3, 4, 5}, {7}});
  const auto yes = decide_length1(matching);
  REQUIRE(yes.solvable == true);
  CHECK(is_conflict_free_cover(matching, {yes.witness}));

  std::mt19937_64 rng(54);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t m = 1 + rng() % 10;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 8, 4));
    const auto d = decide_length1(inst);
    REQUIRE(d.solvable.has_value());
    CHECK(*d.solvable == bf::length1(m, inst.requests()));
    if (*d.solvable) {
      CHECK(is_independent(inst, d.witness));
      CHECK(is_conflict_free_cover(inst, {d.witness}));
    }
  }
}

TEST_CASE("certify brackets both examples tightly") {
  const auto c1 = certify(fixtures::example1());
  CHECK(c1.lower == 3);
  CHECK(c1.upper == 3);
  CHECK(c1.tight);
  CHECK(c1.lower_kind == LowerKind::nesting_strict);
  CHECK(verify(fixtures::example1(), c1.upper_scheme).all_satisfied);
  CHECK(c1.max_degree == 5);

  const auto c2 = certify(fixtures::example2());
  CHECK(c2.lower == 2);
  CHECK(c2.upper == 2);
  CHECK(c2.tight);
  CHECK(c2.upper_source == "alg1");
}

TEST_CASE("certify on random instances") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 80; ++trial) {
    const std::uint32_t m = 1 + rng() % 8;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 8, 4));
    const auto c = certify(inst);
    CHECK(c.lower <= c.upper);
    CHECK(c.tight == (c.lower == c.upper));
    CHECK(c.upper_scheme.length() == c.upper);
    CHECK(verify(inst, c.upper_scheme).all_satisfied);
    CHECK(c.upper <= c.max_degree);
    if (m <= 6) CHECK(c.lower <= bf::linear_optimum_gf2(m, inst.requests()));
  }
}

TEST_CASE("length-1 refutations check out and mutations are caught") {
  const auto d = decide_length1(fixtures::example2());
  REQUIRE(d.refutation.has_value());
  CHECK_FALSE(check_length1_refutation(fixtures::example2(), *d.refutation).has_value());

  std::mt19937_64 rng(56);
  int refuted = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t m = 1 + rng() % 9;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 8, 4));
    const auto r = decide_length1(inst);
    REQUIRE(r.solvable.has_value());
    CHECK(r.refutation.has_value() == !*r.solvable);
    if (!r.refutation) continue;
    ++refuted;
    CHECK_FALSE(check_length1_refutation(inst, *r.refutation).has_value());

    auto dropped = *r.refutation;
    dropped.nodes[0].branches.pop_back();
    CHECK(check_length1_refutation(inst, dropped).has_value());

    // Turn the first continuing branch into a bogus conflict.
    auto faked = *r.refutation;
    for (auto& node : faked.nodes) {
      auto open = std::find_if(node.branches.begin(), node.branches.end(),
                               [](const auto& b) { return b.child.has_value(); });
      if (open == node.branches.end()) continue;
      open->child.reset();
      open->conflict = node.client;
      break;
    }
    if (faked.nodes.size() > 1) CHECK(check_length1_refutation(inst, faked).has_value());
  }
  CHECK(refuted > 20);
}

TEST_CASE("MAIS proofs exist exactly up to the minimum") {
  const Instance ex2 = fixtures::example2();
  const auto proof = prove_mais(ex2, 2);
  REQUIRE(proof.has_value());
  CHECK_FALSE(check_mais_proof(ex2, *proof).has_value());
  CHECK_FALSE(prove_mais(ex2, 3).has_value());

  std::mt19937_64 rng(57);
  for (int trial = 0; trial < 120; ++trial) {
    const std::uint32_t m = 1 + rng() % 7;
    const Instance inst = Instance::build(m, bf::random_sets(rng, m, 1 + rng() % 6, 3));
    const std::size_t value = bf::mais_min(inst.requests());
    const auto p = prove_mais(inst, value);
    REQUIRE(p.has_value());
    CHECK_FALSE(check_mais_proof(inst, *p).has_value());
    CHECK_FALSE(prove_mais(inst, value + 1).has_value());

    auto inflated = *p;
    inflated.bound = value + 1;
    CHECK(check_mais_proof(inst, inflated).has_value());

    auto pruned = *p;
    for (auto& node : pruned.nodes) {
      if (!node.children.empty()) {
        node.children.pop_back();
        CHECK(check_mais_proof(inst, pruned).has_value());
        break;
      }
    }
    auto shifted = *p;
    for (auto& node : shifted.nodes) {
      if (node.chain && m > 1) {
        node.chain->demands.back() = node.chain->demands.back() % m + 1;
        CHECK(check_mais_proof(inst, shifted).has_value());
        break;
      }
    }
  }
}
