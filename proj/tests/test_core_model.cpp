#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "brute_force.hpp"
#include "picod/error.hpp"
#include "picod/fixtures.hpp"
#include "picod/instance.hpp"

using namespace picod;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::invalid_argument;
}

}  // namespace

TEST_CASE("example 1 builds with twelve clients and max degree five at vertex 1") {
  const Instance inst = fixtures::example1();
  CHECK(inst.message_count() == 12);
  CHECK(inst.client_count() == 12);
  const auto deg = degrees(inst);
  CHECK(deg.max_degree == 5);
  CHECK(deg.of(1) == 5);
  CHECK(deg.max_degree == bf::max_degree(12, inst.requests()));
  for (Vertex v = 2; v <= 12; ++v) CHECK(deg.of(v) < 5);
  for (std::size_t k : {1, 2, 4, 8, 11}) {
    CHECK(bf::contains(fixtures::example1_request(k), 1));
  }
}

TEST_CASE("example 2 has max degree two") {
  const Instance inst = fixtures::example2();
  CHECK(inst.client_count() == 9);
  CHECK(degrees(inst).max_degree == 2);
}

TEST_CASE("canonicalization sorts members, orders clients and drops duplicates") {
  const Instance inst = Instance::build(5, {{3, 1}, {2}, {1, 3}, {5, 4, 4}});
  CHECK(inst.client_count() == 3);
  CHECK(inst.duplicates_removed() == 1);
  CHECK(inst.request(0) == VertexSet{1, 3});
  CHECK(inst.request(1) == VertexSet{2});
  CHECK(inst.request(2) == VertexSet{4, 5});
  CHECK(inst.find_client({3, 1}) == std::optional<std::size_t>{0});
  CHECK_FALSE(inst.find_client({1, 2}).has_value());
  CHECK(inst == Instance::build(5, {{4, 5}, {1, 3}, {2}}));
  CHECK_FALSE(inst == Instance::build(6, {{4, 5}, {1, 3}, {2}}));
}

TEST_CASE("build rejects malformed input") {
  CHECK(code_of([] { Instance::build(3, {{1}, {}}); }) == ErrorCode::empty_request_set);
  CHECK(code_of([] { Instance::build(3, {{0}}); }) == ErrorCode::index_out_of_range);
  CHECK(code_of([] { Instance::build(3, {{4}}); }) == ErrorCode::index_out_of_range);
  CHECK(code_of([] { Instance::build(0, {{1}}); }) == ErrorCode::invalid_argument);
  CHECK(code_of([] { Instance::build(3, {}); }) == ErrorCode::invalid_argument);
}

TEST_CASE("components") {
  SUBCASE("example 2 is connected across all nine vertices") {
    const auto parts = components(fixtures::example2());
    REQUIRE(parts.parts.size() == 1);
    CHECK(parts.vertex_sets[0] == VertexSet{1, 2, 3, 4, 5, 6, 7, 8, 9});
  }
  SUBCASE("example 1 is connected") { CHECK(components(fixtures::example1()).parts.size() == 1); }
  SUBCASE("disjoint pieces split and isolated vertices are skipped") {
    const Instance inst = Instance::build(8, {{1, 2}, {2, 3}, {5}, {6, 8}});
    const auto parts = components(inst);
    REQUIRE(parts.parts.size() == 3);
    CHECK(parts.vertex_sets[0] == VertexSet{1, 2, 3});
    CHECK(parts.vertex_sets[1] == VertexSet{5});
    CHECK(parts.vertex_sets[2] == VertexSet{6, 8});
    CHECK(parts.parts[0].client_count() == 2);
    CHECK(parts.parts[2].message_count() == 8);
  }
}

TEST_CASE("induced keeps request-sets inside the kept vertices") {
  const Instance inst = fixtures::example2();
  const VertexSet keep{2, 3, 4, 5, 6, 7, 8, 9};
  const Instance sub = induced(inst, keep);
  CHECK(sub.client_count() == 7);
  CHECK_FALSE(sub.find_client({1}).has_value());
  CHECK_FALSE(sub.find_client({1, 2, 7, 8}).has_value());
  CHECK(sub.find_client({3, 4, 7, 9}).has_value());
  CHECK(sub.message_count() == 9);

  const VertexSet none{7};
  CHECK(induced(inst, none).is_empty());
}

TEST_CASE("independence") {
  const Instance inst = fixtures::example2();
  CHECK(is_independent(inst, VertexSet{1, 3, 5}));
  CHECK_FALSE(is_independent(inst, VertexSet{1, 2}));
  CHECK(is_independent(inst, VertexSet{}));
}

TEST_CASE("mask helpers") {
  CHECK(to_mask(VertexSet{1, 3, 64}) == (1ull | 4ull | (1ull << 63)));
  CHECK(from_mask(0b10110) == VertexSet{2, 3, 5});
  CHECK_NOTHROW(require_mask_width(Instance::build(64, {{64}}), "test"));
  CHECK(code_of([] { require_mask_width(Instance::build(65, {{1}}), "test"); }) ==
        ErrorCode::instance_too_large);
}

TEST_CASE("random instances agree with direct scans") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const std::uint32_t m = 1 + rng() % 20;
    const auto sets = bf::random_sets(rng, m, 1 + rng() % 15, 5);
    const Instance inst = Instance::build(m, sets);

    std::set<VertexSet> distinct(sets.begin(), sets.end());
    CHECK(inst.client_count() == distinct.size());
    CHECK(inst.duplicates_removed() == sets.size() - distinct.size());
    CHECK(std::is_sorted(inst.requests().begin(), inst.requests().end()));

    const auto deg = degrees(inst);
    for (Vertex v = 1; v <= m; ++v) CHECK(deg.of(v) == bf::degree(inst.requests(), v));
    CHECK(components(inst).parts.size() == bf::component_count(inst.requests()));

    const auto active = active_vertices(inst);
    CHECK(induced(inst, active) == inst);

    std::size_t total = 0;
    for (const auto& part : components(inst).parts) total += part.client_count();
    CHECK(total == inst.client_count());
  }
}
