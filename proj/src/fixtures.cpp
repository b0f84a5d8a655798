#include "picod/fixtures.hpp"

#include "picod/error.hpp"

namespace picod::fixtures {

namespace {

const std::vector<VertexSet>& example1_sets() {
  static const std::vector<VertexSet> sets = {
      {1, 2, 3, 4, 5, 6, 8, 10, 12}, {1, 2, 4, 8}, {3, 5, 6, 10}, {1, 2, 8}, {4},      {5, 10},
      {3},                           {1, 7, 9},    {3, 9},        {11},      {1, 11, 12}, {2, 11},
  };
  return sets;
}

const std::vector<VertexSet>& example2_sets() {
  static const std::vector<VertexSet> sets = {
      {1}, {2}, {3}, {4}, {5}, {6}, {1, 2, 7, 8}, {3, 4, 7, 9}, {5, 6, 8, 9},
  };
  return sets;
}

VertexSet pick(const std::vector<VertexSet>& sets, std::size_t number) {
  if (number < 1 || number > sets.size()) {
    throw Error(ErrorCode::index_out_of_range, "client number " + std::to_string(number));
  }
  return sets[number - 1];
}

}  // namespace

Instance example1() { return Instance::build(12, example1_sets()); }

Scheme example1_scheme() {
  return Scheme::from_supports(FieldOrder::gf2(), 12, {{1, 3, 4, 5}, {2, 6}, {4, 11}});
}

Instance example2() { return Instance::build(9, example2_sets()); }

Scheme example2_scheme() {
  return Scheme::from_supports(FieldOrder::gf2(), 9, {{1, 3, 5}, {2, 4, 6}});
}

VertexSet example1_request(std::size_t number) { return pick(example1_sets(), number); }
VertexSet example2_request(std::size_t number) { return pick(example2_sets(), number); }

}  // namespace picod::fixtures
