#include "gghecke.hpp"

#include <cassert>

namespace gg {

long RegularCharacter::exponent_at(const Mat& u) const {
  const FieldTower& tw = ctx->tw();
  int n = ctx->n();
  long s = 0;
  for (int i = 0; i + 1 < n; ++i)
    s = tw.add(s, tw.mul(coeffs[i], u.at(i, i + 1)));
  return tw.trace_to_prime(ctx->deg(), s);
}

Cyclo RegularCharacter::value(const Mat& u) const {
  return Cyclo::root(static_cast<unsigned>(ctx->p()), exponent_at(u));
}

Cyclo RegularCharacter::value_inv(const Mat& u) const {
  return Cyclo::root(static_cast<unsigned>(ctx->p()), -exponent_at(u));
}

std::vector<RegularCharacter> regular_characters(const CtxPtr& ctx) {
  const FieldTower& tw = ctx->tw();
  int nroots = ctx->n() - 1;
  long Q = ctx->Q();
  const auto& FQ = tw.subfield_elements(ctx->deg());
  // enumerate regular tuples and their torus-conjugation orbits;
  // t = diag(t_1..t_n) scales coefficient i by t_i / t_{i+1}
  std::map<std::vector<long>, int> orbit_of;
  int next_orbit = 0;
  std::vector<RegularCharacter> reps;
  std::vector<std::vector<long>> all;
  {
    std::vector<long> cur(nroots);
    std::function<void(int)> rec = [&](int i) {
      if (i == nroots) {
        all.push_back(cur);
        return;
      }
      for (long x : FQ)
        if (x != 0) {
          cur[i] = x;
          rec(i + 1);
        }
    };
    rec(0);
  }
  // torus scalars: for SL2, diag(a, a^{-1}) scales c by a^2
  for (const auto& c : all) {
    if (orbit_of.count(c)) continue;
    // explore the T^F-orbit
    std::vector<std::vector<long>> orbit{c};
    orbit_of[c] = next_orbit;
    for (size_t h = 0; h < orbit.size(); ++h) {
      // apply torus generators coordinatewise
      std::vector<std::vector<long>> nbrs;
      if (ctx->family() == Family::SL2) {
        long g = tw.gen(ctx->deg());
        nbrs.push_back({tw.mul(orbit[h][0], tw.mul(g, g))});
      } else {
        long g = tw.gen(ctx->deg());
        for (int i = 0; i <= nroots; ++i) {
          // scale coordinate i-1 by g and coordinate i by g^{-1}
          auto v = orbit[h];
          if (i > 0) v[i - 1] = tw.mul(v[i - 1], g);
          if (i < nroots) v[i] = tw.mul(v[i], tw.inv(g));
          nbrs.push_back(v);
        }
      }
      for (auto& v : nbrs)
        if (!orbit_of.count(v)) {
          orbit_of[v] = next_orbit;
          orbit.push_back(v);
        }
    }
    RegularCharacter rc;
    rc.ctx = ctx;
    rc.orbit_id = next_orbit;
    rc.coeffs = c;
    reps.push_back(rc);
    ++next_orbit;
  }
  // orbit count sanity: 1 for GL_n; gcd(2, q-1) for SL2
  size_t expect = 1;
  if (ctx->family() == Family::SL2 && Q % 2 == 1) expect = 2;
  if (reps.size() != expect)
    throw std::domain_error("unexpected number of regular-character orbits");
  return reps;
}

RegularCharacter psi_at_level(const RegularCharacter& base, const CtxPtr& ext) {
  if (ext->family() != base.ctx->family() || ext->q() != base.ctx->q() ||
      &ext->tw() != &base.ctx->tw())
    throw std::domain_error("psi_at_level: incompatible contexts");
  RegularCharacter r;
  r.ctx = ext;
  r.orbit_id = base.orbit_id;
  r.coeffs = base.coeffs;  // same coefficients; trace over the bigger field
  for (long c : r.coeffs)
    if (c == 0) throw std::domain_error("psi not regular");
  return r;
}

ClassFn gamma_character(const CtxPtr& ctx, const RegularCharacter& psi) {
  if (ctx->enumerated()) {
    const Subgroup& U = ctx->unipotent_radical();
    SubFn chi{&U, {}};
    chi.v.resize(U.elems.size());
    for (size_t i = 0; i < U.elems.size(); ++i) chi.v[i] = psi.value(U.elems[i]);
    return induce(ctx, U, chi);
  }
  // analytic route: sum of the GG constituents over all series
  auto labels = all_labels(ctx);
  ClassFn out(ctx);
  for (const auto& l : labels) {
    ClassFn c = gl2_gg_constituent(ctx, l);
    for (size_t i = 0; i < out.v.size(); ++i) out.v[i] += c.v[i];
  }
  for (auto& v : out.v) v.reduce();
  return out;
}

std::vector<ClassFn> gg_constituents(const CtxPtr& ctx, const RegularCharacter& psi,
                                     const std::vector<SeriesLabel>& labels) {
  const Subgroup& U = ctx->unipotent_radical();
  auto resu_pairing = [&](const ClassFn& f) {
    Cyclo s;
    for (const auto& u : U.elems) {
      Cyclo t = f.v[ctx->class_identify(u)];
      t *= psi.value_inv(u);
      s += t;
    }
    s.scale(Rat(1, static_cast<long>(U.elems.size())));
    s.reduce();
    return s;
  };
  std::vector<ClassFn> out;
  if (ctx->family() == Family::GL2 && !ctx->enumerated()) {
    for (const auto& l : labels) {
      ClassFn c = gl2_gg_constituent(ctx, l);
      if (!resu_pairing(c).equals(Cyclo::one()))
        throw std::domain_error("GG constituent has wrong psi-multiplicity");
      out.push_back(std::move(c));
    }
    return out;
  }
  auto tbl = irr_table(ctx);
  for (const auto& l : labels) {
    auto it = tbl->series.find(l.key);
    if (it == tbl->series.end()) throw std::domain_error("unknown series label");
    const ClassFn* found = nullptr;
    for (size_t idx : it->second) {
      Cyclo m = resu_pairing(tbl->entries[idx].fn);
      if (m.equals(Cyclo::one())) {
        if (found) throw std::domain_error("two GG constituents in one series");
        found = &tbl->entries[idx].fn;
      } else if (!m.is_zero()) {
        throw std::domain_error("GG multiplicity not in {0,1}");
      }
    }
    if (!found) throw std::domain_error("series without GG constituent");
    out.push_back(*found);
  }
  return out;
}

std::vector<Mat> hecke_coset_reps(const CtxPtr& ctx) {
  const FieldTower& tw = ctx->tw();
  long Q = ctx->Q();
  std::vector<Mat> reps;
  long g = tw.gen(ctx->deg());
  if (ctx->family() == Family::GL2 || ctx->family() == Family::SL2) {
    bool sl2 = ctx->family() == Family::SL2;
    // central cells z e_psi
    const auto& Z = ctx->centre();
    for (const auto& z : Z.elems) reps.push_back(z);
    // big cells U t s U
    if (sl2) {
      for (long a = 0; a < Q - 1; ++a) {
        Mat m;
        m.n = 2;
        long x = tw.pow(g, a);
        m.at(0, 0) = 0;
        m.at(0, 1) = x;
        m.at(1, 0) = tw.neg(tw.inv(x));
        m.at(1, 1) = 0;
        reps.push_back(m);
      }
    } else {
      for (long a = 0; a < Q - 1; ++a)
        for (long b = 0; b < Q - 1; ++b) {
          Mat m;
          m.n = 2;
          m.at(0, 0) = 0;
          m.at(0, 1) = tw.pow(g, a);
          m.at(1, 0) = tw.pow(g, b);
          m.at(1, 1) = 0;
          reps.push_back(m);
        }
    }
    return reps;
  }
  // GL3 at q=2: Weyl cells in length order; the lattice builder keeps an
  // independent subset
  std::vector<std::vector<int>> perms = {{0, 1, 2}, {1, 0, 2}, {0, 2, 1},
                                         {2, 0, 1}, {1, 2, 0}, {2, 1, 0}};
  for (const auto& pm : perms) {
    Mat m;
    m.n = 3;
    for (int j = 0; j < 3; ++j) m.at(pm[j], j) = tw.one();
    reps.push_back(m);
  }
  return reps;
}

CVec hecke_spectral_row(const CtxPtr& ctx, const RegularCharacter& psi,
                        const std::vector<ClassFn>& ggchars, const Mat& x) {
  const FieldTower& tw = ctx->tw();
  const Subgroup& U = ctx->unipotent_radical();
  unsigned m = ctx->conductor();
  size_t S = ggchars.size();
  CVec row(S);
  for (auto& c : row) c = Cyclo::zero().embedded(m);
  for (const auto& v : U.elems) {
    size_t cls = ctx->class_identify(mat_mul(tw, x, v));
    long pexp = -psi.exponent_at(v);
    for (size_t s = 0; s < S; ++s) {
      const Cyclo& val = ggchars[s].v[cls];
      if (val.structurally_zero()) continue;
      Cyclo t = val;
      t *= Cyclo::root(static_cast<unsigned>(ctx->p()), pexp);
      row[s] += t;
    }
  }
  Rat sc(1, static_cast<long>(U.elems.size()));
  for (auto& c : row) {
    c.scale(sc);
    c.reduce();
  }
  return row;
}

std::map<uint32_t, Cyclo> hecke_group_support(const CtxPtr& ctx, const RegularCharacter& psi,
                                              const Mat& x) {
  if (!ctx->enumerated()) throw std::domain_error("group support needs enumeration");
  const FieldTower& tw = ctx->tw();
  const Subgroup& U = ctx->unipotent_radical();
  std::map<uint32_t, Cyclo> acc;
  Rat sc(1, static_cast<long>(U.elems.size() * U.elems.size()));
  for (const auto& u : U.elems)
    for (const auto& u2 : U.elems) {
      Mat y = mat_mul(tw, u, mat_mul(tw, x, u2));
      uint32_t idx = static_cast<uint32_t>(ctx->element_index(y));
      Cyclo c = psi.value_inv(u);
      c *= psi.value_inv(u2);
      c.scale(sc);
      acc[idx] += c;
    }
  for (auto it = acc.begin(); it != acc.end();) {
    it->second.reduce();
    if (it->second.is_zero())
      it = acc.erase(it);
    else
      ++it;
  }
  return acc;
}

std::map<uint32_t, Cyclo> convolve(const CtxPtr& ctx, const std::map<uint32_t, Cyclo>& a,
                                   const std::map<uint32_t, Cyclo>& b) {
  const FieldTower& tw = ctx->tw();
  std::map<uint32_t, Cyclo> acc;
  for (const auto& [i, ca] : a)
    for (const auto& [j, cb] : b) {
      Mat z = mat_mul(tw, ctx->elements()[i], ctx->elements()[j]);
      Cyclo c = ca;
      c *= cb;
      acc[static_cast<uint32_t>(ctx->element_index(z))] += c;
    }
  for (auto it = acc.begin(); it != acc.end();) {
    it->second.reduce();
    if (it->second.is_zero())
      it = acc.erase(it);
    else
      ++it;
  }
  return acc;
}

Cyclo support_spectral_coord(const CtxPtr& ctx, const ClassFn& chi,
                             const std::map<uint32_t, Cyclo>& h) {
  Cyclo s;
  for (const auto& [i, c] : h) {
    Cyclo t = chi.v[ctx->class_of_element(i)];
    t *= c;
    s += t;
  }
  s.reduce();
  return s;
}

std::shared_ptr<const HeckeLattice> HeckeLattice::build(const CtxPtr& ctx,
                                                        const RegularCharacter& psi) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const HeckeLattice>> cache;
  std::string key = ctx->key() + "/psi" + std::to_string(psi.orbit_id);
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto L = std::shared_ptr<HeckeLattice>(new HeckeLattice());
  L->ctx_ = ctx;
  L->psi_ = psi;
  L->labels_ = all_labels(ctx);
  for (size_t i = 0; i < L->labels_.size(); ++i) L->label_pos_[L->labels_[i].key] = i;
  auto ggc = gg_constituents(ctx, psi, L->labels_);
  size_t S = L->labels_.size();

  // tau constants c_s = chi_s(1)/|G| * sum_{u in U} chi_s(u) psi(u^{-1})
  const Subgroup& U = ctx->unipotent_radical();
  for (size_t s = 0; s < S; ++s) {
    Cyclo acc;
    for (const auto& u : U.elems) {
      Cyclo t = ggc[s].v[ctx->class_identify(u)];
      t *= psi.value_inv(u);
      acc += t;
    }
    size_t idc = ctx->class_identify(mat_identity(ctx->tw(), ctx->n()));
    Rat deg = ggc[s].v[idc].rational_part();
    Rat sc = deg / Rat(ctx->order());
    acc.scale(sc);
    acc.reduce();
    L->tau_c_.push_back(acc);
  }

  // basis rows over the coset representatives, greedily independent
  auto cands = hecke_coset_reps(ctx);
  std::vector<CVec> rows(cands.size());
  parallel_for(cands.size(), [&](size_t i) {
    rows[i] = hecke_spectral_row(ctx, psi, ggc, cands[i]);
  });
  if (cands.size() == S) {
    L->reps_ = cands;
    L->rows_ = std::move(rows);
  } else {
    // keep an independent subset (GL3 cells); exact incremental rank test
    CMat sel;
    for (size_t i = 0; i < cands.size() && L->reps_.size() < S; ++i) {
      CMat trial = sel;
      trial.push_back(rows[i]);
      // rank via Gaussian elimination over the field
      CMat m2 = trial;
      size_t rank = 0;
      for (size_t c = 0; c < S && rank < m2.size(); ++c) {
        size_t p = rank;
        while (p < m2.size() && m2[p][c].is_zero()) ++p;
        if (p == m2.size()) continue;
        std::swap(m2[p], m2[rank]);
        Cyclo inv = m2[rank][c].inverse();
        for (size_t r2 = rank + 1; r2 < m2.size(); ++r2) {
          if (m2[r2][c].is_zero()) continue;
          Cyclo f = m2[r2][c];
          f *= inv;
          for (size_t cc = c; cc < S; ++cc) {
            Cyclo t = f;
            t *= m2[rank][cc];
            m2[r2][cc] -= t;
            m2[r2][cc].reduce();
          }
        }
        ++rank;
      }
      if (rank == trial.size()) {
        sel = std::move(trial);
        L->reps_.push_back(cands[i]);
        L->rows_.push_back(rows[i]);
      }
    }
  }
  if (L->rows_.size() != S)
    throw std::domain_error("Hecke lattice rank deficient after exhausting double cosets");

  std::lock_guard<std::mutex> lk(mu);
  auto res = std::static_pointer_cast<const HeckeLattice>(L);
  cache[key] = res;
  return res;
}

size_t HeckeLattice::label_pos(const SeriesLabel& l) const {
  auto it = label_pos_.find(l.key);
  if (it == label_pos_.end()) throw std::domain_error("label not in lattice");
  return it->second;
}

HeckeElement HeckeLattice::unit() const {
  HeckeElement h;
  h.coords.assign(rank(), Cyclo::one());
  return h;
}

HeckeElement HeckeLattice::unipotent_idempotent(long ell) const {
  std::vector<char> mask(rank(), 0);
  for (size_t i = 0; i < labels_.size(); ++i)
    if (label_is_ell_element(labels_[i], ell)) mask[i] = 1;
  return indicator(mask);
}

HeckeElement HeckeLattice::indicator(const std::vector<char>& mask) const {
  HeckeElement h;
  h.coords.resize(rank());
  for (size_t i = 0; i < rank(); ++i) h.coords[i] = mask[i] ? Cyclo::one() : Cyclo::zero();
  return h;
}

Cyclo HeckeLattice::tau(const HeckeElement& h) const {
  Cyclo s;
  for (size_t i = 0; i < rank(); ++i) {
    if (h.coords[i].structurally_zero() || tau_c_[i].structurally_zero()) continue;
    Cyclo t = h.coords[i];
    t *= tau_c_[i];
    s += t;
  }
  s.reduce();
  return s;
}

const CycloLU& HeckeLattice::lu() const {
  std::lock_guard<std::mutex> lk(lu_mu_);
  if (!lu_) {
    size_t S = rank();
    CMat cols(S, CVec(S));
    for (size_t i = 0; i < S; ++i)
      for (size_t s = 0; s < S; ++s) cols[s][i] = rows_[i][s];
    lu_ = std::make_unique<CycloLU>(cols);
  }
  return *lu_;
}

bool HeckeLattice::member(const HeckeElement& h, long ell, CVec* coeffs) const {
  return lu().solve_is_integral(h.coords, ell, coeffs);
}

CMat HeckeLattice::gram() const {
  size_t S = rank();
  CMat g(S, CVec(S));
  for (size_t i = 0; i < S; ++i)
    for (size_t j = 0; j < S; ++j) {
      Cyclo s;
      for (size_t t = 0; t < S; ++t) {
        if (rows_[i][t].structurally_zero() || rows_[j][t].structurally_zero() ||
            tau_c_[t].structurally_zero())
          continue;
        Cyclo x = rows_[i][t];
        x *= rows_[j][t];
        x *= tau_c_[t];
        s += x;
      }
      s.reduce();
      g[i][j] = s;
    }
  return g;
}

}  // namespace gg
