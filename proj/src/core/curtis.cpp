#include "curtis.hpp"

#include <cassert>
#include <random>
#include <set>
#include <sstream>

namespace gg {

namespace {

int weyl_length(const std::string& w) {
  if (w == "1") return 0;
  if (w == "s" || w == "s12") return 1;
  return 2;  // c123
}

// label position of every torus character, cached per (torus, lattice)
std::vector<size_t> label_positions(const HeckeLattice& L, const TorusPtr& T) {
  static std::mutex mu;
  static std::map<std::string, std::vector<size_t>> cache;
  std::string key = T->embedded().name + "#" + L.ctx()->key();
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<size_t> v(T->chars().size());
    for (size_t b = 0; b < T->chars().size(); ++b) v[b] = L.label_pos(T->series_label(b));
    it = cache.emplace(key, std::move(v)).first;
  }
  return it->second;
}

}  // namespace

Cyclo TorusAlgElem::fourier(size_t char_idx) const {
  Cyclo s;
  for (size_t t = 0; t < point_coeffs.size(); ++t) {
    if (point_coeffs[t].structurally_zero()) continue;
    Cyclo x = point_coeffs[t];
    x *= T->pair(char_idx, t);
    s += x;
  }
  s.reduce();
  return s;
}

Cyclo TorusAlgElem::identity_coeff() const {
  return point_coeffs[T->point_index({0, 0, 0})];
}

bool TorusAlgElem::ell_integral(long ell) const {
  for (const auto& c : point_coeffs)
    if (!c.ell_integral(ell)) return false;
  return true;
}

TorusAlgElem torus_mul(const TorusAlgElem& a, const TorusAlgElem& b) {
  TorusAlgElem r;
  r.T = a.T;
  r.point_coeffs.assign(a.point_coeffs.size(), Cyclo());
  for (size_t i = 0; i < a.point_coeffs.size(); ++i) {
    if (a.point_coeffs[i].structurally_zero()) continue;
    for (size_t j = 0; j < b.point_coeffs.size(); ++j) {
      if (b.point_coeffs[j].structurally_zero()) continue;
      Cyclo x = a.point_coeffs[i];
      x *= b.point_coeffs[j];
      r.point_coeffs[a.T->point_add(i, j)] += x;
    }
  }
  for (auto& c : r.point_coeffs) c.reduce();
  return r;
}

TorusAlgElem torus_norm_push(const TorusAlgElem& a, const TorusPtr& to) {
  auto nm = norm_points(*a.T, *to);
  TorusAlgElem r;
  r.T = to;
  r.point_coeffs.assign(to->points().size(), Cyclo());
  for (size_t i = 0; i < a.point_coeffs.size(); ++i)
    if (!a.point_coeffs[i].structurally_zero()) r.point_coeffs[nm[i]] += a.point_coeffs[i];
  for (auto& c : r.point_coeffs) c.reduce();
  return r;
}

TorusAlgElem curtis_torus(const HeckeLattice& L, const HeckeElement& h, const TorusPtr& T) {
  const auto& lbl = label_positions(L, T);
  size_t n = T->points().size();
  TorusAlgElem out;
  out.T = T;
  out.point_coeffs.assign(n, Cyclo());
  Rat sc(1, static_cast<long>(n));
  for (size_t t = 0; t < n; ++t) {
    Cyclo s;
    size_t tn = T->point_neg(t);
    for (size_t b = 0; b < n; ++b) {
      const Cyclo& hv = h.coords[lbl[b]];
      if (hv.structurally_zero()) continue;
      Cyclo x = hv;
      x *= T->pair(b, tn);
      s += x;
    }
    s.scale(sc);
    s.reduce();
    out.point_coeffs[t] = s;
  }
  return out;
}

TorusAlgElem curtis_trace_check(const HeckeLattice& L, const std::map<uint32_t, Cyclo>& h,
                                const TorusPtr& T) {
  const CtxPtr& ctx = L.ctx();
  if (!ctx->enumerated()) throw std::domain_error("trace route unsupported at this scale");
  size_t n = T->points().size();
  // R_theta evaluated on the group-support element, for every theta
  std::vector<Cyclo> Rh(n);
  for (size_t b = 0; b < n; ++b) {
    ClassFn R = dl_character(ctx, T, b);
    Cyclo s;
    for (const auto& [ei, c] : h) {
      Cyclo x = R.v[ctx->class_of_element(ei)];
      x *= c;
      s += x;
    }
    s.reduce();
    Rh[b] = s;
  }
  int sign = weyl_length(T->wname()) % 2 == 0 ? 1 : -1;
  // Tr(h, t) = sign * sum_theta R_theta(h) theta(t);
  // Cur(h) = (1/|T|) sum_t Tr(h,t) t^{-1}
  TorusAlgElem out;
  out.T = T;
  out.point_coeffs.assign(n, Cyclo());
  Rat sc(sign, static_cast<long>(n));
  for (size_t u = 0; u < n; ++u) {
    size_t t = T->point_neg(u);
    Cyclo s;
    for (size_t b = 0; b < n; ++b) {
      if (Rh[b].structurally_zero()) continue;
      Cyclo x = Rh[b];
      x *= T->pair(b, t);
      s += x;
    }
    s.scale(sc);
    s.reduce();
    out.point_coeffs[u] = s;
  }
  return out;
}

std::vector<TorusPtr> weyl_tori(const CtxPtr& ctx) {
  std::vector<TorusPtr> tori;
  for (const auto& wc : ctx->weyl_classes())
    tori.push_back(TorusModel::build(ctx, wc.wname, TorusKind::Group));
  return tori;
}

CurtisTuple curtis_product(const HeckeLattice& L, const HeckeElement& h) {
  CurtisTuple t;
  const auto& wcs = L.ctx()->weyl_classes();
  auto tori = weyl_tori(L.ctx());
  for (size_t i = 0; i < tori.size(); ++i) {
    t.comps.push_back(curtis_torus(L, h, tori[i]));
    t.mult.push_back(wcs[i].mult);
  }
  return t;
}

bool in_image_K(const HeckeLattice& L, const CurtisTuple& t, HeckeElement* coords) {
  std::vector<Cyclo> val(L.rank());
  std::vector<char> seen(L.rank(), 0);
  for (const auto& comp : t.comps) {
    const auto& lbl = label_positions(L, comp.T);
    for (size_t b = 0; b < comp.T->chars().size(); ++b) {
      Cyclo f = comp.fourier(b);
      size_t pos = lbl[b];
      if (!seen[pos]) {
        val[pos] = f;
        seen[pos] = 1;
      } else if (!val[pos].equals(f)) {
        return false;
      }
    }
  }
  if (coords) {
    coords->coords.resize(L.rank());
    for (size_t i = 0; i < L.rank(); ++i) coords->coords[i] = val[i];
  }
  return true;
}

Cyclo tau_tilde(const CtxPtr& ctx, const CurtisTuple& t) {
  Cyclo s;
  for (size_t i = 0; i < t.comps.size(); ++i) {
    Cyclo x = t.comps[i].identity_coeff();
    x.scale(Rat(t.mult[i]));
    s += x;
  }
  s.scale(Rat(1, ctx->weyl_order()));
  s.reduce();
  return s;
}

size_t verify_tau_identity(const CtxPtr& ctx, const RegularCharacter& psi) {
  // tau-tilde(Cur(h)) = sum_s h_s r_s with r_s = (1/|W|) sum_w mult_w n_w(s)/|T_w|;
  // the identity coefficient of Cur_w(h) is (1/|T_w|) sum_theta h_{label(theta)}.
  auto labels = all_labels(ctx);
  std::map<std::string, size_t> pos;
  for (size_t i = 0; i < labels.size(); ++i) pos[labels[i].key] = i;
  std::vector<Rat> r(labels.size(), Rat(0));
  for (const auto& wc : ctx->weyl_classes()) {
    auto T = TorusModel::build(ctx, wc.wname, TorusKind::Group);
    Rat sc(wc.mult, to_long(Int(T->num_points()) * ctx->weyl_order()));
    for (size_t b = 0; b < T->chars().size(); ++b) r[pos[T->series_label(b).key]] += sc;
  }
  auto ggc = gg_constituents(ctx, psi, labels);
  // tau constants
  const Subgroup& U = ctx->unipotent_radical();
  size_t idc = ctx->class_identify(mat_identity(ctx->tw(), ctx->n()));
  std::vector<Cyclo> cs(labels.size());
  for (size_t s = 0; s < labels.size(); ++s) {
    Cyclo acc;
    for (const auto& u : U.elems) {
      Cyclo t = ggc[s].v[ctx->class_identify(u)];
      t *= psi.value_inv(u);
      acc += t;
    }
    acc.scale(ggc[s].v[idc].rational_part() / Rat(ctx->order()));
    acc.reduce();
    cs[s] = acc;
  }
  auto reps = hecke_coset_reps(ctx);
  std::atomic<size_t> checked{0};
  std::atomic<bool> ok{true};
  parallel_for(reps.size(), [&](size_t i) {
    if (!ok.load()) return;
    CVec row = hecke_spectral_row(ctx, psi, ggc, reps[i]);
    Cyclo diff;
    for (size_t s = 0; s < labels.size(); ++s) {
      if (row[s].structurally_zero()) continue;
      Cyclo a = row[s];
      a *= cs[s];
      Cyclo b = row[s];
      b.scale(r[s]);
      diff += a;
      diff -= b;
    }
    if (!diff.is_zero()) ok.store(false);
    ++checked;
  });
  if (!ok.load()) throw std::domain_error("symmetrizing-form identity fails on the Hecke basis");
  return checked.load();
}

HeckeElement curtis_levi(const HeckeLattice& Lg, const HeckeElement& h, const HeckeLattice& Ll) {
  // L-label (2-multiset, {0/1}) sits inside the G-label given by the union
  HeckeElement out;
  out.coords.resize(Ll.rank());
  for (size_t t = 0; t < Ll.rank(); ++t) {
    const SeriesLabel& lt = Ll.labels()[t];
    std::vector<std::pair<long, long>> uni = lt.blocks.at(0);
    uni.emplace_back(0, 1);  // trivial GL1(F_2) eigenvalue
    SeriesLabel merged = label_from_fractions({uni});
    out.coords[t] = h.coords[Lg.label_pos(merged)];
  }
  return out;
}

ImageVerdict verify_theorem_image(const CtxPtr& ctx, const RegularCharacter& psi, long ell) {
  auto L = HeckeLattice::build(ctx, psi);
  size_t S = L->rank();
  unsigned m = ctx->conductor();
  unsigned phi = CycloField::get(m).phi();
  if (S * phi > 4096) throw std::domain_error("theorem-image lattice too large at this scale");
  auto tori = weyl_tori(ctx);

  // integrality constraints on a-coordinates: for each torus class and point,
  // sum_s a_s sigma_{w,t,s} / |T_w| must be integral, sigma = sum_{label=s} theta(t^{-1})
  std::vector<std::vector<Rat>> C;
  for (const auto& T : tori) {
    const auto& lbl = label_positions(*L, T);
    size_t n = T->points().size();
    Rat sc(1, static_cast<long>(n));
    for (size_t t = 0; t < n; ++t) {
      size_t tn = T->point_neg(t);
      // sigma per label
      CVec sigma(S);
      for (size_t b = 0; b < n; ++b) sigma[lbl[b]] += T->pair(b, tn);
      for (size_t s = 0; s < S; ++s) {
        sigma[s].scale(sc);
        sigma[s].reduce();
      }
      // for each s, dense coordinates of sigma_s * zeta^j give the block rows
      std::vector<std::vector<std::vector<Rat>>> blocks(S);
      for (size_t s = 0; s < S; ++s) {
        blocks[s].resize(phi);
        Cyclo base = sigma[s].embedded(m);
        for (unsigned j = 0; j < phi; ++j) {
          Cyclo x = base;
          x *= Cyclo::root(m, j);
          blocks[s][j] = x.dense();
        }
      }
      for (unsigned r = 0; r < phi; ++r) {
        std::vector<Rat> row(S * phi, Rat(0));
        bool nz = false;
        for (size_t s = 0; s < S; ++s)
          for (unsigned j = 0; j < phi; ++j) {
            row[s * phi + j] = blocks[s][j][r];
            if (row[s * phi + j] != 0) nz = true;
          }
        if (nz) C.push_back(std::move(row));
      }
    }
  }
  // integrality of a itself
  for (size_t i = 0; i < S * phi; ++i) {
    std::vector<Rat> row(S * phi, Rat(0));
    row[i] = 1;
    C.push_back(std::move(row));
  }
  auto smith = ell_smith(std::move(C), S * phi, ell);
  if (smith.rank != S * phi) throw std::domain_error("constraint lattice rank deficient");

  ImageVerdict verdict;
  verdict.equal = true;
  verdict.lattice_index_valuation = 0;
  // generators of L2: columns of V scaled by ell^{max(0,-v)}
  for (size_t j = 0; j < S * phi; ++j) {
    long v = smith.diag_val[j];
    std::vector<Rat> gen(S * phi);
    Rat scale(1);
    for (long t2 = 0; t2 < std::max(0L, -v); ++t2) scale *= ell;
    for (size_t i = 0; i < S * phi; ++i) gen[i] = smith.V[i][j] * scale;
    // reassemble a-coordinates as cyclotomic vector
    HeckeElement h;
    h.coords.resize(S);
    for (size_t s = 0; s < S; ++s) {
      std::vector<std::pair<unsigned, Rat>> terms;
      for (unsigned jj = 0; jj < phi; ++jj)
        if (gen[s * phi + jj] != 0) terms.emplace_back(jj, gen[s * phi + jj]);
      h.coords[s] = Cyclo::deserialize_terms(m, terms);
    }
    CVec coeffs;
    if (!L->member(h, ell, &coeffs)) {
      verdict.equal = false;
      long worst = 0;
      for (const auto& c : coeffs)
        if (!c.is_zero()) worst = std::min(worst, c.min_valuation(ell));
      verdict.lattice_index_valuation = std::max(verdict.lattice_index_valuation, -worst);
      if (verdict.witness_coords.coords.empty()) {
        // double-check the witness: integral Curtis tuple outside the image
        CurtisTuple tup = curtis_product(*L, h);
        for (size_t ci = 0; ci < tup.comps.size(); ++ci)
          if (!tup.comps[ci].ell_integral(ell))
            throw std::domain_error("witness tuple unexpectedly non-integral");
        HeckeElement back;
        if (!in_image_K(*L, tup, &back)) throw std::domain_error("witness not in K-image");
        verdict.witness_coords = h;
        std::ostringstream os;
        os << "a-coordinates:";
        for (size_t s = 0; s < S; ++s)
          os << " [" << L->labels()[s].key << "] " << h.coords[s].to_string() << ";";
        verdict.witness_text = os.str();
      }
    }
  }
  return verdict;
}

IntegralityVerdict verify_cur_integrality(const CtxPtr& ctx, const RegularCharacter& psi,
                                          long ell) {
  auto L = HeckeLattice::build(ctx, psi);
  auto tori = weyl_tori(ctx);
  IntegralityVerdict v{true, true, true};
  std::vector<CurtisTuple> basis_tuples;
  for (size_t i = 0; i < L->rank(); ++i) {
    CurtisTuple t = curtis_product(*L, L->basis_element(i));
    for (const auto& comp : t.comps)
      if (!comp.ell_integral(ell)) v.basis_integral = false;
    basis_tuples.push_back(std::move(t));
  }
  // equivalence h in H <=> Cur_T(h) integral for all T, on deterministic samples
  std::mt19937_64 rng(83411);
  for (int trial = 0; trial < 12; ++trial) {
    HeckeElement h;
    h.coords.assign(L->rank(), Cyclo());
    for (size_t i = 0; i < L->rank(); ++i) {
      long c = static_cast<long>(rng() % 5) - 2;
      if (c != 0)
        for (size_t s = 0; s < L->rank(); ++s) {
          Cyclo t = L->basis_row(i)[s];
          t.scale(Rat(c));
          h.coords[s] += t;
        }
    }
    if (trial % 3 == 1) {
      // non-integral perturbation: 1/ell times the unit
      for (size_t s = 0; s < L->rank(); ++s) h.coords[s] += Cyclo(Rat(1, ell));
    }
    bool mem = L->member(h, ell);
    bool tuples_ok = true;
    for (const auto& T : tori)
      if (!curtis_torus(*L, h, T).ell_integral(ell)) tuples_ok = false;
    if (mem != tuples_ok) v.membership_equivalence = false;
  }
  if (ctx->family() == Family::GL3) {
    auto gl2 = GroupContext::build(Family::GL2, 2, 1, ctx->tw().top_degree());
    auto psil = regular_characters(gl2)[0];
    auto Ll = HeckeLattice::build(gl2, psil);
    for (size_t i = 0; i < L->rank(); ++i) {
      HeckeElement hl = curtis_levi(*L, L->basis_element(i), *Ll);
      if (!Ll->member(hl, ell)) v.levi_integral = false;
    }
  }
  return v;
}

CVec TruncatedBasis::mask(const HeckeElement& h) const {
  CVec out(mask_pos.size());
  for (size_t i = 0; i < mask_pos.size(); ++i) out[i] = h.coords[mask_pos[i]];
  return out;
}

bool TruncatedBasis::coords(const CVec& masked, long ell, CVec* out) const {
  return lu->solve_is_integral(masked, ell, out);
}

TruncatedBasis truncated_basis(const HeckeLattice& L, long ell, unsigned ring_conductor) {
  TruncatedBasis tb;
  for (size_t i = 0; i < L.rank(); ++i)
    if (label_is_ell_element(L.labels()[i], ell)) tb.mask_pos.push_back(i);
  size_t k = tb.mask_pos.size();
  unsigned mR = ring_conductor ? ring_conductor : L.ctx()->conductor();
  // masked generators and the tau constants on the masked labels
  std::vector<CVec> gens(L.rank());
  for (size_t i = 0; i < L.rank(); ++i) {
    gens[i].resize(k);
    for (size_t j = 0; j < k; ++j) gens[i][j] = L.basis_row(i)[tb.mask_pos[j]];
  }
  CVec cs(k);
  for (size_t j = 0; j < k; ++j) cs[j] = L.tau_constants()[tb.mask_pos[j]];
  auto tau_pair = [&](const CVec& a, const CVec& b) {
    Cyclo s;
    for (size_t j = 0; j < k; ++j) {
      if (a[j].structurally_zero() || b[j].structurally_zero() || cs[j].structurally_zero())
        continue;
      Cyclo x = a[j];
      x *= b[j];
      x *= cs[j];
      s += x;
    }
    s.reduce();
    return s;
  };
  auto is_unit = [&](const Cyclo& x) {
    if (!x.ell_integral(ell) || x.is_zero()) return false;
    CMat one{{x}};
    return det_unit_mod_ell(one, mR, ell);
  };
  // Symmetric pivoting: the restriction of tau to the truncated block is a
  // symmetrizing form (unimodular Gram), so among the working vectors some
  // tau-product is a unit. Split off a 1x1 or hyperbolic 2x2 block, project
  // the rest orthogonally, repeat. Yields an explicit R-basis.
  std::vector<CVec> work = gens;
  std::vector<CVec> basis;
  bool extended = false;
  while (basis.size() < k) {
    // find a unit diagonal entry first, else a 2x2 principal block with unit
    // determinant; on a stall widen the working set by pairwise sums once
    size_t pa = SIZE_MAX, pb = SIZE_MAX;
    for (size_t a = 0; a < work.size() && pa == SIZE_MAX; ++a)
      if (is_unit(tau_pair(work[a], work[a]))) pa = pb = a;
    for (size_t a = 0; a < work.size() && pa == SIZE_MAX; ++a)
      for (size_t b = a + 1; b < work.size() && pa == SIZE_MAX; ++b) {
        Cyclo det = tau_pair(work[a], work[a]);
        det *= tau_pair(work[b], work[b]);
        Cyclo off = tau_pair(work[a], work[b]);
        off *= off;
        det -= off;
        if (is_unit(det)) {
          pa = a;
          pb = b;
        }
      }
    if (pa == SIZE_MAX && !extended) {
      extended = true;
      size_t n0 = work.size();
      for (size_t a = 0; a < n0; ++a)
        for (size_t b = a + 1; b < n0; ++b) {
          CVec sum = work[a];
          for (size_t c = 0; c < k; ++c) {
            sum[c] += work[b][c];
            sum[c].reduce();
          }
          work.push_back(std::move(sum));
        }
      continue;
    }
    if (pa == SIZE_MAX)
      throw std::domain_error("truncated lattice: no unit tau-pivot (form degenerate?)");
    std::vector<CVec> block;
    block.push_back(work[pa]);
    if (pb != pa) block.push_back(work[pb]);
    // block Gram and its inverse
    size_t r = block.size();
    CMat G(r, CVec(r));
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < r; ++j) G[i][j] = tau_pair(block[i], block[j]);
    CycloLU glu(G);
    std::vector<CVec> rest;
    for (size_t i = 0; i < work.size(); ++i) {
      if (i == pa || i == pb) continue;
      CVec t(r);
      for (size_t j = 0; j < r; ++j) t[j] = tau_pair(work[i], block[j]);
      CVec coef = glu.solve(t);
      CVec y = work[i];
      for (size_t j = 0; j < r; ++j) {
        if (coef[j].structurally_zero()) continue;
        for (size_t c = 0; c < k; ++c) {
          Cyclo x = coef[j];
          x *= block[j][c];
          y[c] -= x;
          y[c].reduce();
        }
      }
      bool zero = true;
      for (const auto& c : y)
        if (!c.is_zero()) zero = false;
      if (!zero) rest.push_back(std::move(y));
    }
    for (auto& b2 : block) basis.push_back(std::move(b2));
    work = std::move(rest);
  }
  if (basis.size() != k) throw std::domain_error("truncated basis size mismatch");
  tb.rows = basis;
  tb.chosen.clear();
  tb.lu = std::make_shared<CycloLU>([&] {
    CMat cols(k, CVec(k));
    for (size_t i = 0; i < k; ++i)
      for (size_t s2 = 0; s2 < k; ++s2) cols[s2][i] = tb.rows[i][s2];
    return cols;
  }());
  // exact certificate: every masked generator is integral in the basis
  for (size_t i = 0; i < L.rank(); ++i)
    if (!tb.lu->solve_is_integral(gens[i], ell, nullptr))
      throw std::domain_error("truncated basis does not span the truncation");
  return tb;
}

SylowVerdict verify_image_sylow(const CtxPtr& ctx, const RegularCharacter& psi, long ell) {
  SylowVerdict v{};
  v.applicable = ctx->weyl_order() % ell != 0;
  if (!v.applicable) {
    v.detail = "hypothesis violated: ell divides |W|";
    return v;
  }
  long a = 0;
  {
    Int o = ctx->order();
    while (mpz_divisible_ui_p(o.get_mpz_t(), ell)) {
      o /= ell;
      ++a;
    }
  }
  auto L = HeckeLattice::build(ctx, psi);
  if (a == 0) {
    v.trivial = true;
    v.isomorphism = true;
    v.rank_hecke = v.rank_orbits = 1;
    v.detail = "ell does not divide |G|: both sides have rank 1";
    return v;
  }
  if (!ctx->enumerated())
    throw std::domain_error("sylow verification needs an enumerated context");
  const FieldTower& tw = ctx->tw();
  long N = tw.top_size();
  // the torus carrying a Sylow ell-subgroup (ell does not divide |W|)
  TorusPtr T;
  for (const auto& wc : ctx->weyl_classes()) {
    auto cand = TorusModel::build(ctx, wc.wname, TorusKind::Group);
    Int tsz(cand->num_points());
    long av = 0;
    while (mpz_divisible_ui_p(tsz.get_mpz_t(), ell)) {
      tsz /= ell;
      ++av;
    }
    if (av == a) {
      T = cand;
      v.torus_wname = wc.wname;
      break;
    }
  }
  if (!T) throw std::domain_error("no torus contains a Sylow ell-subgroup");
  // S = ell-primary part of T^F
  std::vector<size_t> Spts;
  for (size_t p = 0; p < T->points().size(); ++p) {
    long o = T->point_order(p);
    while (o % ell == 0) o /= ell;
    if (o == 1) Spts.push_back(p);
  }
  // N_{G^F}(S) by direct normalizer computation
  std::set<uint64_t> Sset;
  for (size_t p : Spts) Sset.insert(mat_pack(T->embed_point(p), N));
  std::vector<size_t> nS;
  for (size_t ei = 0; ei < ctx->elements().size(); ++ei) {
    const Mat& g = ctx->elements()[ei];
    Mat gi = mat_inv(tw, g);
    bool norm = true;
    for (size_t p : Spts) {
      Mat c = mat_mul(tw, g, mat_mul(tw, T->embed_point(p), gi));
      if (!Sset.count(mat_pack(c, N))) {
        norm = false;
        break;
      }
    }
    if (norm) nS.push_back(ei);
  }
  // orbits of N(S) on S
  std::map<size_t, size_t> orbit_of;
  std::vector<std::vector<size_t>> orbits;
  for (size_t p : Spts) {
    if (orbit_of.count(p)) continue;
    std::vector<size_t> orb{p};
    orbit_of[p] = orbits.size();
    for (size_t h2 = 0; h2 < orb.size(); ++h2) {
      for (size_t gi2 : nS) {
        const Mat& g = ctx->elements()[gi2];
        Mat c = mat_mul(tw, g, mat_mul(tw, T->embed_point(orb[h2]), mat_inv(tw, g)));
        size_t cp = T->point_of_mat(c);
        if (!orbit_of.count(cp)) {
          orbit_of[cp] = orbits.size();
          orb.push_back(cp);
        }
      }
    }
    orbits.push_back(std::move(orb));
  }
  v.rank_orbits = orbits.size();

  // b^T: average over the ell'-part of T^F
  std::vector<size_t> ellp;
  for (size_t p = 0; p < T->points().size(); ++p)
    if (T->point_order(p) % ell != 0) ellp.push_back(p);
  // target basis vectors o_j b^T; disjoint supports over cosets s T_{ell'}
  size_t nT = T->points().size();
  Rat bsc(1, static_cast<long>(ellp.size()));
  std::vector<CVec> target(orbits.size(), CVec(nT));
  for (size_t j = 0; j < orbits.size(); ++j)
    for (size_t s : orbits[j])
      for (size_t t2 : ellp) target[j][T->point_add(s, t2)] += Cyclo(bsc);

  // truncated Hecke lattice and the map h -> Cur_T(h)
  TruncatedBasis tb = truncated_basis(*L, ell);
  v.rank_hecke = tb.rank();
  if (v.rank_hecke != v.rank_orbits) {
    v.detail = "rank mismatch";
    return v;
  }
  // full spectral elements of the chosen truncated basis
  CMat trans(tb.rank(), CVec(orbits.size()));
  for (size_t i = 0; i < tb.rank(); ++i) {
    HeckeElement h;
    h.coords.assign(L->rank(), Cyclo());
    for (size_t s = 0; s < tb.rank(); ++s) h.coords[tb.mask_pos[s]] = tb.rows[i][s];
    TorusAlgElem cur = curtis_torus(*L, h, T);
    // coordinates in the target basis: read off at orbit representatives
    CVec coord(orbits.size());
    for (size_t j = 0; j < orbits.size(); ++j) {
      Cyclo c = cur.point_coeffs[T->point_add(orbits[j][0], ellp[0])];
      // target_j has coefficient 1/|T_{ell'}| on the coset of the representative
      c.scale(Rat(static_cast<long>(ellp.size())));
      c.reduce();
      coord[j] = c;
    }
    // exactness: sum_j coord_j target_j == cur
    CVec recon(nT);
    for (size_t j = 0; j < orbits.size(); ++j)
      for (size_t t2 = 0; t2 < nT; ++t2) {
        if (target[j][t2].structurally_zero()) continue;
        Cyclo x = coord[j];
        x *= target[j][t2];
        recon[t2] += x;
      }
    for (size_t t2 = 0; t2 < nT; ++t2)
      if (!recon[t2].equals(cur.point_coeffs[t2]))
        throw std::domain_error("Cur(b h) leaves the invariant subalgebra");
    trans[i] = coord;
  }
  // invertible over the ell-local ring in both directions
  for (const auto& row : trans)
    for (const auto& c : row)
      if (!c.ell_integral(ell)) {
        v.detail = "transition matrix not integral";
        return v;
      }
  if (!det_unit_mod_ell(trans, ctx->conductor(), ell)) {
    v.detail = "transition determinant not a unit";
    return v;
  }
  v.isomorphism = true;
  v.detail = "isomorphism verified";
  return v;
}

}  // namespace gg
