#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/dixon.hpp"

using namespace gg;

namespace {

void check_orthogonality(const CtxPtr& ctx, const std::vector<ClassFn>& chars) {
  // row orthogonality
  for (size_t i = 0; i < chars.size(); ++i)
    for (size_t j = 0; j < chars.size(); ++j) {
      Cyclo ip = inner_product(chars[i], chars[j]);
      CHECK(ip.equals(i == j ? Cyclo::one() : Cyclo::zero()));
    }
  // column orthogonality at the identity column gives centralizer orders
  size_t idc = ctx->class_identify(mat_identity(ctx->tw(), ctx->n()));
  for (size_t c = 0; c < ctx->num_classes(); ++c) {
    Cyclo s;
    for (const auto& ch : chars) {
      Cyclo t = ch.v[c];
      t *= ch.v[ctx->inverse_class(c)].conj();
      (void)idc;
      s += ch.v[c] * ch.v[c].conj();
    }
    // |C_G(g)| = |G| / |class|
    Rat cent = Rat(ctx->order()) / Rat(ctx->cls(c).size);
    // s computed with conjugates: equals centralizer order
    CHECK(s.equals(Cyclo(cent)));
  }
}

}  // namespace

TEST_CASE("SL2(F_3): degrees 1,1,1,2,2,2,3") {
  auto ctx = GroupContext::build(Family::SL2, 3, 1);
  auto res = dixon_table(ctx);
  CHECK(res.degrees == std::vector<long>({1, 1, 1, 2, 2, 2, 3}));
  check_orthogonality(ctx, res.chars);
}

TEST_CASE("GL3(F_2): degrees 1,3,3,6,7,8") {
  auto ctx = GroupContext::build(Family::GL3, 2, 1);
  auto res = dixon_table(ctx);
  CHECK(res.degrees == std::vector<long>({1, 3, 3, 6, 7, 8}));
  check_orthogonality(ctx, res.chars);
  Int s = 0;
  for (long d : res.degrees) s += Int(d) * d;
  CHECK(s == 168);
}

TEST_CASE("GL2(F_4) and SL2(F_5) tables are orthonormal") {
  auto gl = GroupContext::build(Family::GL2, 4, 1);
  auto r1 = dixon_table(gl);
  CHECK(r1.chars.size() == 15);
  check_orthogonality(gl, r1.chars);

  auto sl = GroupContext::build(Family::SL2, 5, 1);
  auto r2 = dixon_table(sl);
  CHECK(r2.chars.size() == sl->num_classes());
  check_orthogonality(sl, r2.chars);
}
