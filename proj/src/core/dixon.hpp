#pragma once

#include "groups.hpp"

namespace gg {

// Generic character table by the class-matrix eigenvector method, computed
// modulo an auxiliary prime P = 1 (mod exponent) and lifted to exact
// cyclotomic values through discrete logarithms. Requires |G| <= 5000 and an
// enumerated context. Rows come back sorted by degree, then by value string.
struct DixonResult {
  std::vector<ClassFn> chars;
  std::vector<long> degrees;
  long aux_prime;
};

DixonResult dixon_table(const CtxPtr& ctx);

}  // namespace gg
