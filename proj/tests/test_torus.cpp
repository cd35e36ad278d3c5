#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "core/torus.hpp"

using namespace gg;

TEST_CASE("torus point groups via SNF") {
  auto gl2_4 = GroupContext::build(Family::GL2, 4, 1);
  auto t1 = TorusModel::build(gl2_4, "1");
  CHECK(t1->num_points() == 9);  // C_3 x C_3
  CHECK(t1->invariant_factors() == std::vector<Int>({3, 3}));
  auto ts = TorusModel::build(gl2_4, "s");
  CHECK(ts->num_points() == 15);  // C_{q^2-1}
  CHECK(ts->invariant_factors() == std::vector<Int>({1, 15}));

  auto gl2_16 = GroupContext::build(Family::GL2, 4, 2);
  // level-pair view: the F-twisted torus splits at even level
  auto ts2 = TorusModel::build(gl2_16, "s", TorusKind::Pair);
  CHECK(ts2->num_points() == 225);  // C_15 x C_15
  CHECK(ts2->invariant_factors() == std::vector<Int>({15, 15}));
  // group view: the Coxeter torus of GL2(F_16) itself
  auto ts2g = TorusModel::build(gl2_16, "s", TorusKind::Group);
  CHECK(ts2g->num_points() == 255);
  CHECK(TorusModel::build(gl2_16, "1", TorusKind::Group)->num_points() == 225);
}

TEST_CASE("perfect pairing: character rows orthogonal") {
  for (auto [fam, q, w] : {std::tuple{Family::GL2, 4L, "s"}, {Family::GL2, 4L, "1"},
                           {Family::SL2, 5L, "s"}, {Family::SL2, 5L, "1"}}) {
    auto ctx = GroupContext::build(fam, q, 1);
    auto T = TorusModel::build(ctx, w);
    long n = T->num_points();
    for (size_t b = 0; b < static_cast<size_t>(n); ++b)
      for (size_t b2 = 0; b2 < static_cast<size_t>(n); ++b2) {
        Cyclo s;
        for (size_t a = 0; a < static_cast<size_t>(n); ++a) {
          Cyclo t = T->pair(b, a);
          t *= T->pair(b2, T->point_neg(a));
          s += t;
        }
        CHECK(s.equals(b == b2 ? Cyclo(Rat(n)) : Cyclo::zero()));
      }
  }
}

TEST_CASE("GL3(F_2) tori") {
  auto ctx = GroupContext::build(Family::GL3, 2, 1);
  CHECK(TorusModel::build(ctx, "1")->num_points() == 1);
  CHECK(TorusModel::build(ctx, "s12")->num_points() == 3);
  CHECK(TorusModel::build(ctx, "c123")->num_points() == 7);
}

TEST_CASE("norm map: projection, surjective, matches matrix products") {
  auto base = GroupContext::build(Family::GL2, 4, 1, 8);
  auto ext = GroupContext::build(Family::GL2, 4, 2, 8);
  for (const char* w : {"1", "s"}) {
    auto T1 = TorusModel::build(base, w, TorusKind::Pair);
    auto Td = TorusModel::build(ext, w, TorusKind::Pair);
    auto nm = norm_points(*Td, *T1);
    // kernel size
    size_t zero1 = T1->point_index({0, 0, 0});
    size_t ker = 0;
    for (size_t i = 0; i < nm.size(); ++i)
      if (nm[i] == zero1) ++ker;
    CHECK(Int(static_cast<long>(ker)) == Int(Td->num_points()) / Int(T1->num_points()));
    // matrix form: t F(t) agrees with the lattice projection (exhaustive)
    const FieldTower& tw = ext->tw();
    for (size_t a = 0; a < nm.size(); ++a) {
      Mat t = Td->embed_point(a);
      Mat prod = mat_mul(tw, t, ext->frobenius(t) /* F over F_q */);
      // d = 2: N(t) = t * F(t)
      CHECK(prod == T1->embed_point(nm[a]));
    }
  }
}

TEST_CASE("inflation: theta o N, exhaustive evaluation identity") {
  auto base = GroupContext::build(Family::GL2, 4, 1, 8);
  auto ext = GroupContext::build(Family::GL2, 4, 2, 8);
  for (const char* w : {"1", "s"}) {
    auto T1 = TorusModel::build(base, w, TorusKind::Pair);
    auto Td = TorusModel::build(ext, w, TorusKind::Pair);
    auto nm = norm_points(*Td, *T1);
    for (size_t b = 0; b < static_cast<size_t>(T1->num_points()); ++b) {
      size_t binf = inflate_character(*T1, *Td, b);
      CHECK(T1->char_order(b) == Td->char_order(binf));
      for (size_t a = 0; a < nm.size(); ++a)
        CHECK(Td->pair(binf, a).equals(T1->pair(b, nm[a])));
    }
  }
}

TEST_CASE("series labels: counts and norm compatibility") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  auto t1 = TorusModel::build(ctx, "1");
  auto ts = TorusModel::build(ctx, "s");
  std::set<std::string> labels;
  for (size_t b = 0; b < 9; ++b) labels.insert(t1->series_label(b).key);
  for (size_t b = 0; b < 15; ++b) labels.insert(ts->series_label(b).key);
  // number of semisimple classes of the dual GL2(F_4): q(q-1) = 12
  CHECK(labels.size() == 12);
  // unipotent label
  size_t triv = 0;
  for (size_t b = 0; b < 9; ++b)
    if (t1->char_order(b) == 1) triv = b;
  CHECK(t1->series_label(triv).key == "0/1,0/1");

  // level pair: label(inflate(theta)) = label(theta) as multisets
  auto ctx8 = GroupContext::build(Family::GL2, 4, 1, 8);
  auto ext = GroupContext::build(Family::GL2, 4, 2, 8);
  for (const char* w : {"1", "s"}) {
    auto T1 = TorusModel::build(ctx8, w, TorusKind::Pair);
    auto Td = TorusModel::build(ext, w, TorusKind::Pair);
    for (size_t b = 0; b < static_cast<size_t>(T1->num_points()); ++b) {
      SeriesLabel l1 = T1->series_label(b);
      SeriesLabel ld = Td->series_label(inflate_character(*T1, *Td, b));
      CHECK(label_coarsen(l1, 16, 2) == ld);
    }
  }
}

TEST_CASE("labels constant on Weyl orbits") {
  auto ctx = GroupContext::build(Family::GL2, 5, 1);
  auto t1 = TorusModel::build(ctx, "1");
  // swapping the two split coordinates preserves the label
  for (size_t b = 0; b < static_cast<size_t>(t1->num_points()); ++b) {
    auto v = t1->chars()[b];
    std::swap(v[0], v[1]);
    size_t b2 = t1->char_index(v);
    CHECK(t1->series_label(b) == t1->series_label(b2));
  }
  auto ts = TorusModel::build(ctx, "s");
  // Coxeter Weyl action is the q-power twist
  for (size_t b = 0; b < static_cast<size_t>(ts->num_points()); ++b) {
    auto v = ts->chars()[b];
    std::array<long, 3> w{5 * v[1], 5 * v[0], 0};  // M^T action
    size_t b2 = ts->char_index(w);
    CHECK(ts->series_label(b) == ts->series_label(b2));
  }
}

TEST_CASE("SL2 dual labels: strictness structure at ell = 2") {
  auto ctx = GroupContext::build(Family::SL2, 3, 1);
  auto dual = SL2Dual::get(3);
  CHECK(dual->num_ss_classes() == 4);
  auto t1 = TorusModel::build(ctx, "1");
  auto ts = TorusModel::build(ctx, "s");
  CHECK(t1->num_points() == 2);
  CHECK(ts->num_points() == 4);
  std::set<std::string> all;
  for (size_t b = 0; b < 2; ++b) all.insert(t1->series_label(b).key);
  for (size_t b = 0; b < 4; ++b) all.insert(ts->series_label(b).key);
  CHECK(all.size() == 4);
  // the two order-2 characters (split vs nonsplit torus) label DIFFERENT
  // rational classes although their dual elements are geometrically conjugate
  CHECK_FALSE(t1->series_label(1) == ts->series_label(2));
}

TEST_CASE("label ell-element predicate") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  auto t1 = TorusModel::build(ctx, "1");
  auto ts = TorusModel::build(ctx, "s");
  std::set<std::string> ell_labels;
  for (size_t b = 0; b < 9; ++b) {
    auto l = t1->series_label(b);
    if (label_is_ell_element(l, 3)) ell_labels.insert(l.key);
  }
  for (size_t b = 0; b < 15; ++b) {
    auto l = ts->series_label(b);
    if (label_is_ell_element(l, 3)) ell_labels.insert(l.key);
  }
  CHECK(ell_labels.size() == 6);  // multisets over mu_3
}
