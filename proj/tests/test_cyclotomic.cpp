#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "core/cyclotomic.hpp"

using namespace gg;

namespace {

std::mt19937_64 rng(20240811);

Cyclo random_cyclo(unsigned m, int max_terms = 4) {
  std::uniform_int_distribution<int> nt(0, max_terms);
  std::uniform_int_distribution<long> ex(0, m - 1);
  std::uniform_int_distribution<long> num(-5, 5);
  std::uniform_int_distribution<long> den(1, 4);
  Cyclo x;
  int n = nt(rng);
  for (int i = 0; i < n; ++i) x.add_root_multiple(m, ex(rng), Rat(num(rng), den(rng)));
  return x;
}

}  // namespace

TEST_CASE("roots of unity basics") {
  CHECK(Cyclo::root(1, 0).equals(Cyclo::one()));
  CHECK(Cyclo::root(4, 2).equals(Cyclo(-1, 1)));           // zeta_4^2 = -1
  Cyclo s = Cyclo::root(3, 1) + Cyclo::root(3, 2);
  CHECK(s.equals(Cyclo(-1, 1)));                           // 1 + X + X^2 = Phi_3
  // zeta_m^m = 1 for a few m
  for (unsigned m : {2u, 6u, 12u, 30u, 84u})
    CHECK(Cyclo::root(m, m).equals(Cyclo::one()));
}

TEST_CASE("embedding is a ring homomorphism and preserves values") {
  CHECK(Cyclo(-1, 1).embedded(4).equals(Cyclo::root(4, 2)));
  CHECK(Cyclo::one().embedded(12).equals(Cyclo::one()));
  // zeta_3 at conductor 6 round-trips through the minimal polynomial:
  Cyclo z3 = Cyclo::root(3, 1).embedded(6);
  CHECK((z3 * z3 + z3 + Cyclo::one()).is_zero());
  CHECK_THROWS(Cyclo::root(4, 1).embedded(6));
  for (int trial = 0; trial < 50; ++trial) {
    Cyclo a = random_cyclo(12), b = random_cyclo(12);
    CHECK((a * b).embedded(60).equals(a.embedded(60) * b.embedded(60)));
    CHECK((a + b).embedded(60).equals(a.embedded(60) + b.embedded(60)));
  }
}

TEST_CASE("ring axioms on random elements") {
  for (unsigned m : {6u, 12u, 30u}) {
    for (int trial = 0; trial < 40; ++trial) {
      Cyclo a = random_cyclo(m), b = random_cyclo(m), c = random_cyclo(m);
      CHECK((a + b).equals(b + a));
      CHECK((a * b).equals(b * a));
      CHECK(((a + b) + c).equals(a + (b + c)));
      CHECK(((a * b) * c).equals(a * (b * c)));
      CHECK((a * (b + c)).equals(a * b + a * c));
      CHECK((a - a).is_zero());
      CHECK((a * Cyclo::one()).equals(a));
    }
  }
}

TEST_CASE("ell-integrality") {
  CHECK(Cyclo(1, 2).ell_integral(3));
  CHECK_FALSE(Cyclo(1, 3).ell_integral(3));
  // (1 + zeta_3)/3: field norm must be 1/9 (norm oracle), hence not 3-integral.
  Cyclo x = (Cyclo::one() + Cyclo::root(3, 1));
  x.scale(Rat(1, 3));
  CHECK(x.field_norm() == Rat(1, 9));
  CHECK_FALSE(x.ell_integral(3));

  // closure: products and sums of integral elements stay integral
  for (int trial = 0; trial < 40; ++trial) {
    Cyclo a = random_cyclo(12), b = random_cyclo(12);
    if (a.ell_integral(5) && b.ell_integral(5)) {
      CHECK((a * b).ell_integral(5));
      CHECK((a + b).ell_integral(5));
    }
    // embedding preserves integrality verdicts both ways
    CHECK(a.ell_integral(3) == a.embedded(60).ell_integral(3));
  }
}

TEST_CASE("unit criterion: integral with integral inverse has norm valuation 0") {
  for (int trial = 0; trial < 60; ++trial) {
    Cyclo a = random_cyclo(12);
    if (a.is_zero()) continue;
    Cyclo inv = a.inverse();
    CHECK((a * inv).equals(Cyclo::one()));
    if (a.ell_integral(3) && inv.ell_integral(3)) {
      Rat n = a.field_norm();
      CHECK(ell_valuation(n, 3) == 0);
    }
  }
}

TEST_CASE("galois action and rationality") {
  Cyclo z = Cyclo::root(5, 1);
  Cyclo tr;
  for (long c = 1; c < 5; ++c) tr += z.galois(c);
  CHECK(tr.is_rational());
  CHECK(tr.rational_part() == Rat(-1));
  CHECK(z.conj().equals(Cyclo::root(5, 4)));
}

TEST_CASE("serialization canonical form") {
  Cyclo x = Cyclo::root(4, 1);
  x.scale(Rat(3, 2));
  CHECK(x.serialize() == "{\"m\":4,\"coeffs\":[[\"0\",\"1\"],[\"3\",\"2\"]]}");
}
