#include "groups.hpp"

#include <cassert>
#include <set>
#include <sstream>

namespace gg {

std::string family_name(Family f) {
  switch (f) {
    case Family::GL2: return "GL2";
    case Family::GL3: return "GL3";
    case Family::SL2: return "SL2";
  }
  return "?";
}

Family family_from_name(const std::string& s) {
  if (s == "GL2") return Family::GL2;
  if (s == "GL3") return Family::GL3;
  if (s == "SL2") return Family::SL2;
  throw std::domain_error("unknown family: " + s);
}

Mat mat_identity(const FieldTower& tw, int n) {
  Mat m;
  m.n = n;
  for (int i = 0; i < n; ++i) m.at(i, i) = tw.one();
  return m;
}

Mat mat_mul(const FieldTower& tw, const Mat& x, const Mat& y) {
  Mat r;
  r.n = x.n;
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j) {
      long s = 0;
      for (int k = 0; k < x.n; ++k) s = tw.add(s, tw.mul(x.at(i, k), y.at(k, j)));
      r.at(i, j) = s;
    }
  return r;
}

long mat_trace(const FieldTower& tw, const Mat& x) {
  long s = 0;
  for (int i = 0; i < x.n; ++i) s = tw.add(s, x.at(i, i));
  return s;
}

long mat_det(const FieldTower& tw, const Mat& x) {
  if (x.n == 2)
    return tw.sub(tw.mul(x.at(0, 0), x.at(1, 1)), tw.mul(x.at(0, 1), x.at(1, 0)));
  long d = 0;
  d = tw.mul(x.at(0, 0), tw.sub(tw.mul(x.at(1, 1), x.at(2, 2)), tw.mul(x.at(1, 2), x.at(2, 1))));
  d = tw.sub(d, tw.mul(x.at(0, 1), tw.sub(tw.mul(x.at(1, 0), x.at(2, 2)), tw.mul(x.at(1, 2), x.at(2, 0)))));
  d = tw.add(d, tw.mul(x.at(0, 2), tw.sub(tw.mul(x.at(1, 0), x.at(2, 1)), tw.mul(x.at(1, 1), x.at(2, 0)))));
  return d;
}

Mat mat_inv(const FieldTower& tw, const Mat& x) {
  long det = mat_det(tw, x);
  long di = tw.inv(det);
  Mat r;
  r.n = x.n;
  if (x.n == 2) {
    r.at(0, 0) = tw.mul(di, x.at(1, 1));
    r.at(1, 1) = tw.mul(di, x.at(0, 0));
    r.at(0, 1) = tw.mul(di, tw.neg(x.at(0, 1)));
    r.at(1, 0) = tw.mul(di, tw.neg(x.at(1, 0)));
    return r;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
      // cofactor with sign absorbed by cyclic index choice
      long c = tw.sub(tw.mul(x.at(j1, i1), x.at(j2, i2)), tw.mul(x.at(j1, i2), x.at(j2, i1)));
      r.at(i, j) = tw.mul(di, c);
    }
  return r;
}

Mat mat_pow(const FieldTower& tw, Mat x, Int e) {
  Mat r = mat_identity(tw, x.n);
  bool negexp = e < 0;
  if (negexp) e = -e;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mat_mul(tw, r, x);
    x = mat_mul(tw, x, x);
    e >>= 1;
  }
  return negexp ? mat_inv(tw, r) : r;
}

Mat mat_frob(const FieldTower& tw, const Mat& x, int p_degree) {
  Mat r = x;
  for (int i = 0; i < x.n * x.n; ++i) r.a[i] = tw.frob(x.a[i], p_degree);
  return r;
}

bool mat_is_scalar(const Mat& x) {
  for (int i = 0; i < x.n; ++i)
    for (int j = 0; j < x.n; ++j)
      if (i != j && x.at(i, j) != 0) return false;
  for (int i = 1; i < x.n; ++i)
    if (x.at(i, i) != x.at(0, 0)) return false;
  return true;
}

uint64_t mat_pack(const Mat& x, long N) {
  uint64_t code = 0;
  for (int i = x.n * x.n; i-- > 0;) code = code * static_cast<uint64_t>(N) + x.a[i];
  return code;
}

void Subgroup::build_index(long N) {
  index.clear();
  for (uint32_t i = 0; i < elems.size(); ++i) index[mat_pack(elems[i], N)] = i;
}

bool Subgroup::contains(const Mat& m, long N) const {
  return index.count(mat_pack(m, N)) > 0;
}

namespace {

bool is_prime_power(long q, long& p, int& a) {
  for (long d = 2; d <= q; ++d) {
    if (q % d != 0) continue;
    long r = q;
    a = 0;
    while (r % d == 0) {
      r /= d;
      ++a;
    }
    if (r != 1) return false;
    p = d;
    return true;
  }
  return false;
}

const std::set<long> kGL2Sizes = {2, 3, 4, 5, 7, 8, 9, 16, 25, 32};
const std::set<long> kSL2Sizes = {3, 5, 7};

constexpr long kEnumLimit = 10000;

}  // namespace

bool GroupContext::in_registry(Family f, long q, int e) {
  long p;
  int a;
  if (e < 1 || !is_prime_power(q, p, a)) return false;
  Int Qe = pow_int(q, e);
  if (!Qe.fits_slong_p()) return false;
  long Q = Qe.get_si();
  switch (f) {
    case Family::GL2: return kGL2Sizes.count(Q) > 0;
    case Family::GL3: return Q == 2;
    case Family::SL2: return e == 1 && kSL2Sizes.count(Q) > 0;
  }
  return false;
}

int GroupContext::min_top_degree(Family f, long q, int e) {
  long p;
  int a;
  is_prime_power(q, p, a);
  int deg = a * e;
  return f == Family::GL3 ? std::lcm(2 * deg, 3 * deg) : 2 * deg;
}

std::shared_ptr<const GroupContext> GroupContext::build(Family f, long q, int e, int top_degree) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const GroupContext>> cache;
  if (!in_registry(f, q, e)) {
    std::ostringstream os;
    os << "registry error: " << family_name(f) << " q=" << q << " e=" << e
       << " is not a supported context";
    throw std::domain_error(os.str());
  }
  if (top_degree == 0) top_degree = min_top_degree(f, q, e);
  if (top_degree % min_top_degree(f, q, e) != 0)
    throw std::domain_error("top_degree does not cover the context's tori");
  std::ostringstream key;
  key << family_name(f) << "|" << q << "|" << e << "|" << top_degree;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }

  auto ctx = std::shared_ptr<GroupContext>(new GroupContext());
  ctx->family_ = f;
  ctx->q_ = q;
  ctx->e_ = e;
  ctx->n_ = (f == Family::GL3) ? 3 : 2;
  long p;
  int a;
  is_prime_power(q, p, a);
  ctx->deg_base_ = a;
  ctx->deg_ = a * e;
  ctx->Q_ = to_long(pow_int(q, e));
  ctx->tw_ = &tower(static_cast<int>(p), top_degree);

  long Q = ctx->Q_;
  if (f == Family::GL2)
    ctx->order_ = Int(Q * Q - 1) * (Q * Q - Q);
  else if (f == Family::GL3)
    ctx->order_ = (pow_int(Q, 3) - 1) * (pow_int(Q, 3) - Q) * (pow_int(Q, 3) - Q * Q);
  else
    ctx->order_ = Int(Q) * (Q * Q - 1);

  if (f == Family::GL2 || f == Family::SL2) {
    ctx->weyl_ = {{"1", 1}, {"s", 1}};
    ctx->weyl_order_ = 2;
  } else {
    ctx->weyl_ = {{"1", 1}, {"s12", 3}, {"c123", 2}};
    ctx->weyl_order_ = 6;
  }

  if (f == Family::GL2) {
    ctx->build_analytic_gl2();
    if (ctx->order_ <= kEnumLimit) ctx->build_enumerated();
  } else {
    assert(ctx->order_ <= kEnumLimit);
    ctx->build_enumerated();
  }
  ctx->finish_classes();

  std::lock_guard<std::mutex> lk(mu);
  auto res = std::static_pointer_cast<const GroupContext>(ctx);
  cache[key.str()] = res;
  return res;
}

void GroupContext::build_enumerated() {
  const FieldTower& tw = *tw_;
  const auto& FQ = tw.subfield_elements(deg_);
  long N = tw.top_size();
  int nn = n_ * n_;
  std::vector<long> idx(nn, 0);
  Mat m;
  m.n = n_;
  // enumerate all matrices with entries in F_Q, keep the invertible ones
  std::function<void(int)> rec = [&](int pos) {
    if (pos == nn) {
      if (mat_det(tw, m) == 0) return;
      if (family_ == Family::SL2 && mat_det(tw, m) != tw.one()) return;
      elements_.push_back(m);
      return;
    }
    for (long x : FQ) {
      m.a[pos] = x;
      rec(pos + 1);
    }
  };
  rec(0);
  assert(Int(static_cast<long>(elements_.size())) == order_);
  for (uint32_t i = 0; i < elements_.size(); ++i)
    elem_index_[mat_pack(elements_[i], N)] = i;

  if (!classes_.empty()) {
    // analytic classes already built (GL2): fill class_of_ through the
    // analytic identification and cross-check it against conjugation orbits
    class_of_.resize(elements_.size());
    for (uint32_t i = 0; i < elements_.size(); ++i)
      class_of_[i] = static_cast<uint32_t>(class_identify(elements_[i]));
    std::vector<Int> counts(classes_.size(), 0);
    for (uint32_t c : class_of_) counts[c] += 1;
    for (size_t c = 0; c < classes_.size(); ++c) assert(counts[c] == classes_[c].size);
    // orbit agreement on a sample of conjugations
    for (size_t c = 0; c < classes_.size(); ++c) {
      const Mat& rep = classes_[c].rep;
      for (size_t s = 0; s < elements_.size(); s += 17) {
        Mat y = mat_mul(tw, elements_[s], mat_mul(tw, rep, mat_inv(tw, elements_[s])));
        assert(class_identify(y) == c);
      }
    }
    return;
  }

  // conjugation orbits under a small generating set, then canonical order
  std::vector<Mat> gens;
  long g = tw.gen(deg_);
  if (family_ == Family::SL2) {
    Mat u = mat_identity(tw, 2);
    u.at(0, 1) = tw.one();
    Mat l = mat_identity(tw, 2);
    l.at(1, 0) = tw.one();
    Mat t = mat_identity(tw, 2);
    t.at(0, 0) = g;
    t.at(1, 1) = tw.inv(g);
    gens = {u, l, t};
  } else {
    Mat d = mat_identity(tw, n_);
    d.at(0, 0) = g;
    Mat u = mat_identity(tw, n_);
    u.at(0, 1) = tw.one();
    Mat c;  // cyclic permutation
    c.n = n_;
    for (int i = 0; i < n_; ++i) c.at((i + 1) % n_, i) = tw.one();
    gens = {d, u, c};
  }
  std::vector<Mat> gens_inv;
  for (const auto& x : gens) gens_inv.push_back(mat_inv(tw, x));

  class_of_.assign(elements_.size(), UINT32_MAX);
  std::vector<std::pair<uint64_t, std::vector<uint32_t>>> orbits;
  for (uint32_t i = 0; i < elements_.size(); ++i) {
    if (class_of_[i] != UINT32_MAX) continue;
    std::vector<uint32_t> orbit{i};
    class_of_[i] = 0;  // provisional mark
    uint64_t min_code = mat_pack(elements_[i], N);
    for (size_t h = 0; h < orbit.size(); ++h) {
      const Mat& x = elements_[orbit[h]];
      for (size_t gi = 0; gi < gens.size(); ++gi) {
        Mat y = mat_mul(tw, gens[gi], mat_mul(tw, x, gens_inv[gi]));
        uint32_t yi = elem_index_.at(mat_pack(y, N));
        if (class_of_[yi] == UINT32_MAX) {
          class_of_[yi] = 0;
          orbit.push_back(yi);
          min_code = std::min(min_code, mat_pack(y, N));
        }
      }
    }
    orbits.emplace_back(min_code, std::move(orbit));
  }
  std::sort(orbits.begin(), orbits.end(), [&](const auto& A, const auto& B) {
    if (A.second.size() != B.second.size()) return A.second.size() < B.second.size();
    return A.first < B.first;
  });
  for (uint32_t c = 0; c < orbits.size(); ++c) {
    ClassInfo ci;
    uint64_t mc = orbits[c].first;
    for (uint32_t ei : orbits[c].second) {
      class_of_[ei] = c;
      if (mat_pack(elements_[ei], N) == mc) ci.rep = elements_[ei];
    }
    ci.size = Int(static_cast<long>(orbits[c].second.size()));
    std::ostringstream lbl;
    lbl << "bfs:" << orbits[c].second.size() << ":" << mc;
    ci.label = lbl.str();
    classes_.push_back(std::move(ci));
  }
}

void GroupContext::build_analytic_gl2() {
  const FieldTower& tw = *tw_;
  long Q = Q_;
  const auto& FQ = tw.subfield_elements(deg_);
  fcompact_.assign(tw.top_size(), -1);
  for (size_t i = 0; i < FQ.size(); ++i) fcompact_[FQ[i]] = static_cast<long>(i);

  central_cls_.assign(Q - 1, -1);
  unip_cls_.assign(Q - 1, -1);
  cls_pair_.assign(Q * Q, -1);
  long g = tw.gen(deg_);

  auto add_class = [&](const Mat& rep, const Int& size, const std::string& label) {
    classes_.push_back({rep, size, label});
    return static_cast<int32_t>(classes_.size() - 1);
  };
  auto pair_code = [&](long trv, long detv) {
    return fcompact_[trv] * Q + fcompact_[detv];
  };
  char buf[64];
  // type 0/1: central and central*unipotent, parametrized by dlog of the eigenvalue
  for (long aa = 0; aa < Q - 1; ++aa) {
    long x = tw.pow(g, aa);
    Mat z = mat_identity(tw, 2);
    z.at(0, 0) = z.at(1, 1) = x;
    snprintf(buf, sizeof buf, "0c:%06ld", aa);
    central_cls_[aa] = add_class(z, Int(1), buf);
  }
  for (long aa = 0; aa < Q - 1; ++aa) {
    long x = tw.pow(g, aa);
    Mat u = mat_identity(tw, 2);
    u.at(0, 0) = u.at(1, 1) = x;
    u.at(0, 1) = tw.one();
    snprintf(buf, sizeof buf, "1u:%06ld", aa);
    unip_cls_[aa] = add_class(u, Int(Q * Q - 1), buf);
    cls_pair_[pair_code(tw.add(x, x), tw.mul(x, x))] = unip_cls_[aa];
  }
  // type 2: split semisimple diag(g^a, g^b), a < b
  for (long aa = 0; aa < Q - 1; ++aa)
    for (long bb = aa + 1; bb < Q - 1; ++bb) {
      long x = tw.pow(g, aa), y = tw.pow(g, bb);
      Mat d = mat_identity(tw, 2);
      d.at(0, 0) = x;
      d.at(1, 1) = y;
      snprintf(buf, sizeof buf, "2s:%06ld:%06ld", aa, bb);
      int32_t c = add_class(d, Int(Q * (Q + 1)), buf);
      cls_pair_[pair_code(tw.add(x, y), tw.mul(x, y))] = c;
    }
  // type 3: anisotropic, Frobenius orbit {c, cQ} in F_{Q^2}^*, canonical min rep
  long h = tw.gen(2 * deg_);
  long M2 = Q * Q - 1;
  for (long c = 1; c < M2; ++c) {
    long cq = (c * Q) % M2;
    if (c % (Q + 1) == 0) continue;  // lies in F_Q
    if (cq < c) continue;            // canonical orbit representative
    long lam = tw.pow(h, c);
    long trv = tw.add(lam, tw.frob(lam, deg_));
    long detv = tw.mul(lam, tw.frob(lam, deg_));
    Mat comp;
    comp.n = 2;
    comp.at(0, 0) = 0;
    comp.at(0, 1) = tw.neg(detv);
    comp.at(1, 0) = tw.one();
    comp.at(1, 1) = trv;
    snprintf(buf, sizeof buf, "3a:%06ld", c);
    int32_t cc = add_class(comp, Int(Q * (Q - 1)), buf);
    cls_pair_[pair_code(trv, detv)] = cc;
  }
  // sanity: class equation
  Int total = 0;
  for (const auto& ci : classes_) total += ci.size;
  assert(total == order_);
  assert(classes_.size() == static_cast<size_t>(Q * Q - 1));
}

size_t GroupContext::class_identify(const Mat& gm) const {
  if (!fcompact_.empty()) {
    if (mat_is_scalar(gm)) return central_cls_[tw_->dlog(deg_, gm.at(0, 0))];
    long code = fcompact_[mat_trace(*tw_, gm)] * Q_ + fcompact_[mat_det(*tw_, gm)];
    int32_t c = cls_pair_[code];
    assert(c >= 0);
    return static_cast<size_t>(c);
  }
  return class_of_[element_index(gm)];
}

size_t GroupContext::element_index(const Mat& g) const {
  auto it = elem_index_.find(mat_pack(g, tw_->top_size()));
  if (it == elem_index_.end()) throw std::domain_error("element not in group");
  return it->second;
}

void GroupContext::finish_classes() {
  // exponent = lcm of representative orders
  Int expn(1);
  for (const auto& ci : classes_) {
    Mat x = ci.rep;
    long o = 1;
    Mat cur = x;
    Mat id = mat_identity(*tw_, n_);
    while (!(cur == id)) {
      cur = mat_mul(*tw_, cur, x);
      ++o;
    }
    expn = lcm(expn, Int(o));
  }
  exponent_ = to_long(expn);
  inv_class_.resize(classes_.size());
  for (size_t i = 0; i < classes_.size(); ++i)
    inv_class_[i] = class_identify(mat_inv(*tw_, classes_[i].rep));

  const FieldTower& tw = *tw_;
  // unipotent radical of the standard Borel
  U_.name = "U";
  const auto& FQ = tw.subfield_elements(deg_);
  if (n_ == 2) {
    for (long x : FQ) {
      Mat u = mat_identity(tw, 2);
      u.at(0, 1) = x;
      U_.elems.push_back(u);
    }
  } else {
    for (long x : FQ)
      for (long y : FQ)
        for (long z : FQ) {
          Mat u = mat_identity(tw, 3);
          u.at(0, 1) = x;
          u.at(1, 2) = y;
          u.at(0, 2) = z;
          U_.elems.push_back(u);
        }
  }
  U_.build_index(tw.top_size());
  // centre
  Z_.name = "Z";
  for (long x : FQ) {
    if (x == 0) continue;
    Mat z = mat_identity(tw, n_);
    for (int i = 0; i < n_; ++i) z.at(i, i) = x;
    if (family_ == Family::SL2 && mat_det(tw, z) != tw.one()) continue;
    Z_.elems.push_back(z);
  }
  Z_.build_index(tw.top_size());
  // Borel (small contexts only; used by tests and generic induction)
  if (order_ <= kEnumLimit) {
    B_.name = "B";
    for (const auto& m : elements_) {
      bool upper = true;
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < i; ++j)
          if (m.at(i, j) != 0) upper = false;
      if (upper) B_.elems.push_back(m);
    }
    B_.build_index(tw.top_size());
  }
}

size_t GroupContext::power_class(size_t i, long k) const {
  return class_identify(mat_pow(*tw_, classes_[i].rep, Int(k)));
}

Subgroup GroupContext::trivial_subgroup() const {
  Subgroup s;
  s.name = "1";
  s.elems.push_back(mat_identity(*tw_, n_));
  s.build_index(tw_->top_size());
  return s;
}

std::string GroupContext::key() const {
  std::ostringstream os;
  os << family_name(family_) << "(q=" << q_ << ",e=" << e_ << ",K=" << tw_->top_degree() << ")";
  return os.str();
}

Cyclo inner_product(const ClassFn& f, const ClassFn& g) {
  const GroupContext& ctx = *f.ctx;
  Cyclo s;
  for (size_t c = 0; c < ctx.num_classes(); ++c) {
    if (f.v[c].structurally_zero()) continue;
    const Cyclo& gv = g.v[ctx.inverse_class(c)];
    if (gv.structurally_zero()) continue;
    Cyclo t = f.v[c];
    t *= gv;
    t.scale(Rat(ctx.cls(c).size));
    s += t;
  }
  Rat inv_ord(1);
  inv_ord /= Rat(ctx.order());
  s.scale(inv_ord);
  s.reduce();
  return s;
}

ClassFn conjugate_fn(const ClassFn& f) {
  ClassFn r(f.ctx);
  for (size_t i = 0; i < f.v.size(); ++i) r.v[i] = f.v[i].conj();
  return r;
}

ClassFn induce(const CtxPtr& ctx, const Subgroup& H, const SubFn& chi) {
  if (!ctx->enumerated())
    throw std::domain_error("generic induction needs an enumerated context");
  const FieldTower& tw = ctx->tw();
  long N = tw.top_size();
  ClassFn out(ctx);
  Rat scale(1, static_cast<long>(H.elems.size()));
  for (size_t c = 0; c < ctx->num_classes(); ++c) {
    Cyclo s;
    const Mat& rep = ctx->cls(c).rep;
    for (const auto& x : ctx->elements()) {
      Mat y = mat_mul(tw, x, mat_mul(tw, rep, mat_inv(tw, x)));
      auto it = H.index.find(mat_pack(y, N));
      if (it == H.index.end()) continue;
      s += chi.v[it->second];
    }
    s.scale(scale);
    s.reduce();
    out.v[c] = s;
  }
  return out;
}

SubFn restrict_to(const CtxPtr& ctx, const Subgroup& H, const ClassFn& f) {
  SubFn r;
  r.H = &H;
  r.v.resize(H.elems.size());
  for (size_t i = 0; i < H.elems.size(); ++i) r.v[i] = f.v[ctx->class_identify(H.elems[i])];
  return r;
}

Cyclo subfn_inner(const CtxPtr& ctx, const Subgroup& H, const SubFn& a, const SubFn& b) {
  const FieldTower& tw = ctx->tw();
  long N = tw.top_size();
  Cyclo s;
  for (size_t i = 0; i < H.elems.size(); ++i) {
    Mat inv = mat_inv(tw, H.elems[i]);
    auto it = H.index.find(mat_pack(inv, N));
    Cyclo t = a.v[i];
    t *= b.v[it->second];
    s += t;
  }
  s.scale(Rat(1, static_cast<long>(H.elems.size())));
  s.reduce();
  return s;
}

long count_fixed_borels(const GroupContext& ctx, const Mat& g) {
  const FieldTower& tw = ctx.tw();
  const auto& FQ = tw.subfield_elements(ctx.deg());
  int n = ctx.n();
  // enumerate projective points (lines); for n=3 also check stable planes
  std::vector<std::array<long, 3>> lines;
  if (n == 2) {
    for (long x : FQ) lines.push_back({tw.one(), x, 0});
    lines.push_back({0, tw.one(), 0});
  } else {
    for (long x : FQ)
      for (long y : FQ) lines.push_back({tw.one(), x, y});
    for (long y : FQ) lines.push_back({0, tw.one(), y});
    lines.push_back({0, 0, tw.one()});
  }
  auto apply = [&](const Mat& m, const std::array<long, 3>& v) {
    std::array<long, 3> r{0, 0, 0};
    for (int i = 0; i < n; ++i) {
      long s = 0;
      for (int j = 0; j < n; ++j) s = tw.add(s, tw.mul(m.at(i, j), v[j]));
      r[i] = s;
    }
    return r;
  };
  auto proportional = [&](const std::array<long, 3>& a, const std::array<long, 3>& b) {
    // a,b nonzero vectors
    for (int i = 0; i < n; ++i) {
      if (a[i] == 0 && b[i] == 0) continue;
      if (a[i] == 0 || b[i] == 0) return false;
      long lam = tw.div(b[i], a[i]);
      std::array<long, 3> t{};
      for (int k = 0; k < n; ++k) t[k] = tw.mul(lam, a[k]);
      return t == b;
    }
    return false;
  };
  if (n == 2) {
    long cnt = 0;
    for (const auto& L : lines)
      if (proportional(L, apply(g, L))) ++cnt;
    return cnt;
  }
  // n = 3: complete flags (line in plane); work with the transpose action for planes
  Mat gt;  // transpose-inverse of g acts on covectors
  gt = mat_inv(tw, g);
  Mat gti;
  gti.n = 3;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) gti.at(i, j) = gt.at(j, i);
  long cnt = 0;
  for (const auto& L : lines) {
    if (!proportional(L, apply(g, L))) continue;
    for (const auto& P : lines) {  // P = covector defining a plane
      if (!proportional(P, apply(gti, P))) continue;
      // incidence: P(L) = 0
      long s = 0;
      for (int k = 0; k < 3; ++k) s = tw.add(s, tw.mul(P[k], L[k]));
      if (s == 0) ++cnt;
    }
  }
  return cnt;
}

}  // namespace gg
