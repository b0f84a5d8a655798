#pragma once

#include "picod/instance.hpp"
#include "picod/scheme.hpp"

namespace picod::fixtures {

// 12 messages, 12 clients, maximum degree 5, nesting number 3.
Instance example1();
// Transmissions b1+b3+b4+b5, b2+b6, b4+b11 over GF(2).
Scheme example1_scheme();

// 9 messages, six singleton clients plus {1,2,7,8}, {3,4,7,9}, {5,6,8,9}.
Instance example2();
// Transmissions b1+b3+b5, b2+b4+b6 over GF(2).
Scheme example2_scheme();

/// Request-set of client number k (1-based, in listing order) of example 1 / 2.
VertexSet example1_request(std::size_t number);
VertexSet example2_request(std::size_t number);

}  // namespace picod::fixtures
