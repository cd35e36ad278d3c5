#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "core/dlchar.hpp"

using namespace gg;

TEST_CASE("kostka-foulkes by charge") {
  auto K = [](std::initializer_list<int> la, std::initializer_list<int> mu) {
    return kostka_foulkes(Partition{la}, Partition{mu});
  };
  CHECK(K({2}, {2}) == std::vector<long>({1}));
  CHECK(K({1, 1}, {1, 1}) == std::vector<long>({1}));
  CHECK(K({2}, {1, 1}) == std::vector<long>({0, 1}));          // t
  CHECK(K({1, 1}, {2}).empty());                               // 0
  CHECK(K({2, 1}, {1, 1, 1}) == std::vector<long>({0, 1, 1})); // t + t^2
  CHECK(K({3}, {1, 1, 1}) == std::vector<long>({0, 0, 0, 1})); // t^3
  CHECK(K({3}, {2, 1}) == std::vector<long>({0, 1}));          // t
  CHECK(K({2, 1}, {2, 1}) == std::vector<long>({1}));
  CHECK(K({1, 1, 1}, {1, 1, 1}) == std::vector<long>({1}));
}

TEST_CASE("green functions pinned values") {
  for (long q : {2L, 3L, 4L, 5L, 7L, 9L, 16L, 25L}) {
    CHECK(green_function({{1, 1}}, {{1, 1}}, q) == q + 1);
    CHECK(green_function({{2}}, {{1, 1}}, q) == 1 - q);
    CHECK(green_function({{1, 1}}, {{2}}, q) == 1);
    CHECK(green_function({{2}}, {{2}}, q) == 1);
  }
  long q = 2;
  CHECK(green_function({{1, 1, 1}}, {{1, 1, 1}}, q) == (q + 1) * (q * q + q + 1));
  CHECK(green_function({{1, 1, 1}}, {{2, 1}}, q) == 2 * q + 1);
  CHECK(green_function({{1, 1, 1}}, {{3}}, q) == 1);
  CHECK(green_function({{2, 1}}, {{1, 1, 1}}, q) == 1 - q * q * q);
  CHECK(green_function({{3}}, {{1, 1, 1}}, q) == (q - 1) * (q * q - 1));
  CHECK(green_function({{3}}, {{2, 1}}, q) == 1 - q);
  CHECK(green_function({{2, 1}}, {{2, 1}}, q) == 1);
}

TEST_CASE("R_{T_1} 1 equals Ind_B^G 1 (independent eigenline count)") {
  for (auto [q, e] : {std::pair{4L, 1}, {5L, 1}, {3L, 1}}) {
    auto ctx = GroupContext::build(Family::GL2, q, e);
    auto T1 = TorusModel::build(ctx, "1");
    size_t triv = 0;
    bool found = false;
    for (size_t b = 0; b < T1->chars().size() && !found; ++b)
      if (T1->char_order(b) == 1) {
        triv = b;
        found = true;
      }
    ClassFn R = dl_character(ctx, T1, triv);
    for (size_t c = 0; c < ctx->num_classes(); ++c)
      CHECK(R.v[c].equals(Cyclo(Rat(count_fixed_borels(*ctx, ctx->cls(c).rep)))));
  }
}

TEST_CASE("DL exclusion theorem exhaustively on GL2(F_4)") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  std::vector<std::pair<TorusPtr, size_t>> pairs;
  std::vector<ClassFn> R;
  for (const char* w : {"1", "s"}) {
    auto T = TorusModel::build(ctx, w);
    for (size_t b = 0; b < T->chars().size(); ++b) {
      pairs.emplace_back(T, b);
      R.push_back(dl_character(ctx, T, b));
    }
  }
  for (size_t i = 0; i < pairs.size(); ++i)
    for (size_t j = 0; j < pairs.size(); ++j) {
      Cyclo ip = inner_product(R[i], R[j]);
      long expect = dl_pairing_count(pairs[i].first, pairs[i].second, pairs[j].first,
                                     pairs[j].second);
      CHECK(ip.equals(Cyclo(Rat(expect))));
    }
}

TEST_CASE("cuspidal: norm one, degree q-1") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  auto Ts = TorusModel::build(ctx, "s");
  // a character in general position: order not dividing q-1 patterns
  for (size_t b = 0; b < Ts->chars().size(); ++b) {
    SeriesLabel l = Ts->series_label(b);
    bool aniso = false;
    for (const auto& [nu, de] : l.blocks[0])
      if ((ctx->Q() - 1) % de != 0) aniso = true;
    if (!aniso) continue;
    ClassFn R = dl_character(ctx, Ts, b);
    CHECK(inner_product(R, R).equals(Cyclo::one()));
    size_t id = ctx->class_identify(mat_identity(ctx->tw(), 2));
    CHECK(R.v[id].equals(Cyclo(Rat(1 - ctx->Q()))));
  }
}

TEST_CASE("GL2 analytic table: orthonormal, equals Dixon for small q") {
  for (long q : {2L, 3L, 4L, 5L}) {
    auto ctx = GroupContext::build(Family::GL2, q, 1);
    auto tbl = irr_table(ctx);
    CHECK(tbl->entries.size() == ctx->num_classes());
    for (size_t i = 0; i < tbl->entries.size(); ++i)
      for (size_t j = i; j < tbl->entries.size(); ++j) {
        Cyclo ip = inner_product(tbl->entries[i].fn, tbl->entries[j].fn);
        CHECK(ip.equals(i == j ? Cyclo::one() : Cyclo::zero()));
      }
    // agreement with the generic table: same multiset of value-vectors
    auto dres = dixon_table(ctx);
    unsigned m = ctx->conductor();
    std::multiset<std::string> a, b;
    for (const auto& e : tbl->entries) {
      std::string s;
      for (const auto& v : e.fn.v) s += v.embedded(m).serialize();
      a.insert(s);
    }
    for (const auto& ch : dres.chars) {
      std::string s;
      for (const auto& v : ch.v) s += v.embedded(m).serialize();
      b.insert(s);
    }
    CHECK(a == b);
  }
}

TEST_CASE("series structure GL2(F_4): 12 series, unipotent = {1, St}") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  auto tbl = irr_table(ctx);
  CHECK(tbl->num_series() == 12);
  auto it = tbl->series.find("0/1,0/1");
  REQUIRE(it != tbl->series.end());
  REQUIRE(it->second.size() == 2);
  std::multiset<long> degs;
  for (size_t i : it->second) degs.insert(to_long(tbl->entries[i].degree));
  CHECK(degs == std::multiset<long>({1, 4}));
}

TEST_CASE("series structure GL3(F_2): 4 series, unipotent has 3 members") {
  auto ctx = GroupContext::build(Family::GL3, 2, 1);
  auto tbl = irr_table(ctx);
  CHECK(tbl->entries.size() == 6);
  CHECK(tbl->num_series() == 4);
  auto it = tbl->series.find("0/1,0/1,0/1");
  REQUIRE(it != tbl->series.end());
  CHECK(it->second.size() == 3);
  std::multiset<long> degs;
  for (size_t i : it->second) degs.insert(to_long(tbl->entries[i].degree));
  CHECK(degs == std::multiset<long>({1, 6, 8}));
}

TEST_CASE("SL2(F_3) series: 4 series from 7 characters") {
  auto ctx = GroupContext::build(Family::SL2, 3, 1);
  auto tbl = irr_table(ctx);
  CHECK(tbl->entries.size() == 7);
  CHECK(tbl->num_series() == 4);
}

TEST_CASE("restriction to SL2: Steinberg and extension independence") {
  auto sl2 = GroupContext::build(Family::SL2, 3, 1);
  auto gl2 = GroupContext::build(Family::GL2, 3, 1, sl2->tw().top_degree());
  auto gtbl = irr_table(gl2);
  // Steinberg (degree q, unipotent label) restricts to a degree-q irreducible
  for (const auto& e : gtbl->entries) {
    if (e.label.key != "0/1,0/1" || e.degree != 3) continue;
    ClassFn r = restrict_gl2_to_sl2(sl2, gl2, e.fn);
    CHECK(inner_product(r, r).equals(Cyclo::one()));
    CHECK(r.v[sl2->class_identify(mat_identity(sl2->tw(), 2))].equals(Cyclo(Rat(3))));
  }
  // independence of the extension: all extensions of theta give one restriction
  for (const char* w : {"1", "s"}) {
    auto Tس = TorusModel::build(sl2, w);
    auto Tg = TorusModel::build(gl2, w);
    std::vector<size_t> ptmap(Tس->points().size());
    for (size_t a = 0; a < Tس->points().size(); ++a)
      ptmap[a] = Tg->point_of_mat(Tس->embed_point(a));
    for (size_t th = 0; th < Tس->chars().size(); ++th) {
      std::vector<ClassFn> restrictions;
      for (size_t bt = 0; bt < Tg->chars().size(); ++bt) {
        bool match = true;
        for (size_t a = 0; a < Tس->points().size() && match; ++a)
          if (!(Tg->pair_fraction(bt, ptmap[a]) == Tس->pair_fraction(th, a))) match = false;
        if (match)
          restrictions.push_back(restrict_gl2_to_sl2(sl2, gl2, dl_character(gl2, Tg, bt)));
      }
      CHECK(restrictions.size() == static_cast<size_t>(gl2->Q() - 1));
      for (size_t i = 1; i < restrictions.size(); ++i)
        for (size_t c = 0; c < sl2->num_classes(); ++c)
          CHECK(restrictions[i].v[c].equals(restrictions[0].v[c]));
    }
  }
  // restricted table spans Irr(SL2(F_3)): every Dixon character appears
  auto stbl = irr_table(sl2);
  std::set<size_t> from_restriction;
  for (const auto& e : gtbl->entries) {
    ClassFn r = restrict_gl2_to_sl2(sl2, gl2, e.fn);
    for (size_t si = 0; si < stbl->entries.size(); ++si) {
      Cyclo ip = inner_product(r, stbl->entries[si].fn);
      if (!ip.is_zero()) from_restriction.insert(si);
    }
  }
  CHECK(from_restriction.size() == 7);
}

TEST_CASE("hc restriction: trivial restricts to trivial; adjunction") {
  auto ctx = GroupContext::build(Family::GL2, 4, 1);
  auto T1 = TorusModel::build(ctx, "1");
  ClassFn triv(ctx);
  for (auto& v : triv.v) v = Cyclo::one();
  SubFn r = hc_restrict_to_torus(ctx, T1, triv);
  for (const auto& v : r.v) CHECK(v.equals(Cyclo::one()));

  // adjunction <*R chi, mu>_T = <chi, R mu>_G with R = Ind_B(infl mu)
  const Subgroup& B = ctx->borel();
  auto tbl = irr_table(ctx);
  for (size_t bidx : {size_t(1), size_t(4)}) {
    // inflate the torus character to B
    SubFn infl{&B, {}};
    infl.v.resize(B.elems.size());
    for (size_t i = 0; i < B.elems.size(); ++i) {
      Mat d = mat_identity(ctx->tw(), 2);
      d.at(0, 0) = B.elems[i].at(0, 0);
      d.at(1, 1) = B.elems[i].at(1, 1);
      infl.v[i] = T1->pair(bidx, T1->point_of_mat(d));
    }
    ClassFn Rmu = induce(ctx, B, infl);
    for (size_t chi : {size_t(0), size_t(7), size_t(14)}) {
      const ClassFn& f = tbl->entries[chi].fn;
      SubFn rf = hc_restrict_to_torus(ctx, T1, f);
      // <*R f, theta>_T
      Cyclo lhs;
      for (size_t a = 0; a < T1->points().size(); ++a) {
        Cyclo t = rf.v[a];
        t *= T1->pair(bidx, T1->point_neg(a));
        lhs += t;
      }
      lhs.scale(Rat(1, T1->num_points()));
      Cyclo rhs = inner_product(f, Rmu);
      CHECK(lhs.equals(rhs));
    }
  }
}

TEST_CASE("ell-element labels: GL2(F_16) at ell=3 also has 6") {
  auto ctx = GroupContext::build(Family::GL2, 4, 2);
  CHECK(ell_element_labels(ctx, 3).size() == 6);
  auto ctx5 = GroupContext::build(Family::GL2, 5, 1);
  CHECK(ell_element_labels(ctx5, 3).size() == 2);
}
