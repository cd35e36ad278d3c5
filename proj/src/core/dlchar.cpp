#include "dlchar.hpp"

#include <cassert>
#include <set>
#include <sstream>

namespace gg {

int Partition::size() const {
  int s = 0;
  for (int p : parts) s += p;
  return s;
}

std::string Partition::str() const {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < parts.size(); ++i) os << (i ? "," : "") << parts[i];
  os << ")";
  return os.str();
}

std::vector<Partition> partitions_of(int n) {
  switch (n) {
    case 1: return {{{1}}};
    case 2: return {{{2}}, {{1, 1}}};
    case 3: return {{{3}}, {{2, 1}}, {{1, 1, 1}}};
  }
  throw std::domain_error("partitions_of: n out of range");
}

namespace {

// semistandard tableaux of shape la, content mu; cells row-major
void enum_ssyt(const Partition& la, const Partition& mu,
               std::vector<std::vector<int>>& cur, std::vector<int>& used,
               int row, int col, std::vector<std::vector<std::vector<int>>>& out) {
  if (row == static_cast<int>(la.parts.size())) {
    out.push_back(cur);
    return;
  }
  int nrow = row, ncol = col + 1;
  if (ncol == la.parts[row]) {
    nrow = row + 1;
    ncol = 0;
  }
  int k = static_cast<int>(mu.parts.size());
  for (int v = 1; v <= k; ++v) {
    if (used[v] >= mu.parts[v - 1]) continue;
    if (col > 0 && cur[row][col - 1] > v) continue;                       // rows weakly increase
    if (row > 0 && static_cast<int>(cur[row - 1].size()) > col && cur[row - 1][col] >= v)
      continue;                                                           // columns strictly increase
    cur[row][col] = v;
    used[v]++;
    enum_ssyt(la, mu, cur, used, nrow, ncol, out);
    used[v]--;
  }
  cur[row][col] = 0;
}

// charge of a word with partition content (Lascoux-Schutzenberger)
long word_charge(std::vector<int> w) {
  long total = 0;
  while (!w.empty()) {
    int maxv = *std::max_element(w.begin(), w.end());
    // extract a standard subword scanning right-to-left cyclically
    std::vector<char> take(w.size(), 0);
    int pos = static_cast<int>(w.size());
    for (int v = 1; v <= maxv; ++v) {
      int found = -1;
      for (int step = 0; step < static_cast<int>(w.size()); ++step) {
        int i = mod_pos(pos - 1 - step, static_cast<long>(w.size()));
        if (!take[i] && w[i] == v) {
          found = i;
          break;
        }
      }
      assert(found >= 0);
      take[found] = 1;
      pos = found;
    }
    // charge of the standard subword in word order
    std::vector<int> sub, rest;
    for (size_t i = 0; i < w.size(); ++i)
      (take[i] ? sub : rest).push_back(w[i]);
    std::vector<int> posof(maxv + 1);
    for (size_t i = 0; i < sub.size(); ++i) posof[sub[i]] = static_cast<int>(i);
    long a = 0;
    for (int v = 2; v <= maxv; ++v) {
      if (posof[v] > posof[v - 1]) ++a;
      total += a;
    }
    w = rest;
  }
  return total;
}

std::mutex g_tbl_mu;

}  // namespace

std::vector<long> kostka_foulkes(const Partition& la, const Partition& mu) {
  if (la.size() != mu.size() || la.size() > 3)
    throw std::domain_error("kostka_foulkes: |la| = |mu| <= 3 required");
  std::vector<std::vector<int>> cur;
  for (int p : la.parts) cur.push_back(std::vector<int>(p, 0));
  std::vector<int> used(mu.parts.size() + 1, 0);
  std::vector<std::vector<std::vector<int>>> tabs;
  enum_ssyt(la, mu, cur, used, 0, 0, tabs);
  std::vector<long> coeff;
  for (const auto& T : tabs) {
    // reading word: rows bottom-to-top, each left-to-right
    std::vector<int> w;
    for (size_t r = T.size(); r-- > 0;)
      for (int v : T[r]) w.push_back(v);
    long c = word_charge(w);
    if (static_cast<size_t>(c) >= coeff.size()) coeff.resize(c + 1, 0);
    coeff[c]++;
  }
  return coeff;
}

long symgroup_char(const Partition& mu, const Partition& rho) {
  int n = mu.size();
  assert(rho.size() == n);
  auto is = [](const Partition& p, std::initializer_list<int> q) {
    return p.parts == std::vector<int>(q);
  };
  if (n == 1) return 1;
  if (n == 2) {
    if (is(mu, {2})) return 1;
    return is(rho, {1, 1}) ? 1 : -1;  // sign character
  }
  // n = 3, columns (1,1,1), (2,1), (3)
  int col = is(rho, {1, 1, 1}) ? 0 : (is(rho, {2, 1}) ? 1 : 2);
  if (is(mu, {3})) return 1;
  if (is(mu, {2, 1})) return col == 0 ? 2 : (col == 1 ? 0 : -1);
  return col == 0 ? 1 : (col == 1 ? -1 : 1);  // sign
}

long green_function(const Partition& rho, const Partition& la, long q) {
  int n = la.size();
  long nla = 0;
  for (size_t i = 0; i < la.parts.size(); ++i) nla += static_cast<long>(i) * la.parts[i];
  long total = 0;
  for (const auto& mu : partitions_of(n)) {
    auto K = kostka_foulkes(mu, la);
    long kt = 0;  // q^{n(la)} K(1/q)
    for (size_t j = 0; j < K.size(); ++j) {
      if (K[j] == 0) continue;
      long pw = 1;
      for (long t = 0; t < nla - static_cast<long>(j); ++t) pw *= q;
      assert(nla - static_cast<long>(j) >= 0);
      kt += K[j] * pw;
    }
    total += symgroup_char(mu, rho) * kt;
  }
  return total;
}

namespace {

Partition torus_type(Family f, const std::string& wname) {
  if (f == Family::GL3) {
    if (wname == "1") return {{1, 1, 1}};
    if (wname == "s12") return {{2, 1}};
    return {{3}};
  }
  return wname == "1" ? Partition{{1, 1}} : Partition{{2}};
}

// class index -> torus point indices conjugate into T (semisimple classes)
const std::vector<std::vector<uint32_t>>& points_by_class(const CtxPtr& ctx, const TorusPtr& T) {
  static std::map<std::string, std::vector<std::vector<uint32_t>>> cache;
  std::lock_guard<std::mutex> lk(g_tbl_mu);
  std::string key = T->embedded().name;
  auto it = cache.find(key);
  if (it == cache.end()) {
    std::vector<std::vector<uint32_t>> v(ctx->num_classes());
    for (uint32_t p = 0; p < T->points().size(); ++p)
      v[ctx->class_identify(T->embed_point(p))].push_back(p);
    it = cache.emplace(key, std::move(v)).first;
  }
  return it->second;
}

int unipotent_rank(const CtxPtr& ctx, const Mat& g) {
  // rank of g - 1 for unipotent g
  const FieldTower& tw = ctx->tw();
  Mat m = g;
  for (int i = 0; i < m.n; ++i) m.at(i, i) = tw.sub(m.at(i, i), tw.one());
  // row reduce
  int rank = 0;
  int n = m.n;
  for (int c = 0, r = 0; c < n && r < n; ++c) {
    int p = -1;
    for (int i = r; i < n; ++i)
      if (m.at(i, c) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    for (int j = 0; j < n; ++j) std::swap(m.a[p * n + j], m.a[r * n + j]);
    long iv = tw.inv(m.at(r, c));
    for (int i = r + 1; i < n; ++i) {
      if (m.at(i, c) == 0) continue;
      long f = tw.mul(m.at(i, c), iv);
      for (int j = 0; j < n; ++j)
        m.at(i, j) = tw.sub(m.at(i, j), tw.mul(f, m.at(r, j)));
    }
    ++r;
    ++rank;
  }
  return rank;
}

}  // namespace

ClassFn dl_character(const CtxPtr& ctx, const TorusPtr& T, size_t theta) {
  Family f = ctx->family();
  if (f == Family::SL2) {
    // restriction from GL2 with a matching extension of theta
    auto gl2 = GroupContext::build(Family::GL2, ctx->q(), 1, ctx->tw().top_degree());
    auto Tg = TorusModel::build(gl2, T->wname());
    // points of the SL2 torus inside the GL2 torus
    std::vector<size_t> ptmap(T->points().size());
    for (size_t a = 0; a < T->points().size(); ++a)
      ptmap[a] = Tg->point_of_mat(T->embed_point(a));
    for (size_t bt = 0; bt < Tg->chars().size(); ++bt) {
      bool match = true;
      for (size_t a = 0; a < T->points().size() && match; ++a)
        if (!(Tg->pair_fraction(bt, ptmap[a]) == T->pair_fraction(theta, a))) match = false;
      if (match)
        return restrict_gl2_to_sl2(ctx, gl2, dl_character(gl2, Tg, bt));
    }
    throw std::domain_error("no extension of theta to the GL2 torus");
  }
  Partition rho = torus_type(f, T->wname());
  const auto& pbc = points_by_class(ctx, T);
  ClassFn out(ctx);
  int n = ctx->n();
  long Q = ctx->Q();
  for (size_t c = 0; c < ctx->num_classes(); ++c) {
    const Mat& rep = ctx->cls(c).rep;
    // decide the type: (z, u)-class for central z, or semisimple
    bool unip_type = false;
    Partition la{{}};
    size_t zpt = 0;
    if (f == Family::GL2) {
      const std::string& lbl = ctx->cls(c).label;
      if (lbl[0] == '0' || lbl[0] == '1') {
        unip_type = true;
        la = lbl[0] == '0' ? Partition{{1, 1}} : Partition{{2}};
        Mat z = mat_identity(ctx->tw(), n);
        z.at(0, 0) = z.at(1, 1) = rep.at(0, 0);
        zpt = T->point_of_mat(z);
      }
    } else {  // GL3 at q = 2: unipotent or semisimple
      Mat cur = rep;
      long o = 1;
      Mat id = mat_identity(ctx->tw(), n);
      while (!(cur == id)) {
        cur = mat_mul(ctx->tw(), cur, rep);
        ++o;
      }
      if (o % 2 == 0 || o == 1) {  // 2-power order here means unipotent
        while (o % 2 == 0) o /= 2;
        assert(o == 1);
        unip_type = true;
        int rk = unipotent_rank(ctx, rep);
        la = rk == 0 ? Partition{{1, 1, 1}} : (rk == 1 ? Partition{{2, 1}} : Partition{{3}});
        zpt = T->point_index({0, 0, 0});
      }
    }
    if (unip_type) {
      Cyclo v = T->pair(theta, zpt);
      v.scale(Rat(green_function(rho, la, Q)));
      v.reduce();
      out.v[c] = v;
    } else {
      Cyclo v;
      for (uint32_t p : pbc[c]) v += T->pair(theta, p);
      v.reduce();
      out.v[c] = v;
    }
  }
  return out;
}

SubFn hc_restrict_to_torus(const CtxPtr& ctx, const TorusPtr& T1, const ClassFn& f) {
  const FieldTower& tw = ctx->tw();
  const Subgroup& U = ctx->unipotent_radical();
  SubFn out;
  out.H = &T1->embedded();
  out.v.resize(T1->points().size());
  Rat sc(1, static_cast<long>(U.elems.size()));
  for (size_t a = 0; a < T1->points().size(); ++a) {
    Cyclo s;
    Mat t = T1->embed_point(a);
    for (const auto& u : U.elems) s += f.v[ctx->class_identify(mat_mul(tw, t, u))];
    s.scale(sc);
    s.reduce();
    out.v[a] = s;
  }
  return out;
}

ClassFn restrict_gl2_to_sl2(const CtxPtr& sl2, const CtxPtr& gl2, const ClassFn& f) {
  if (&sl2->tw() != &gl2->tw())
    throw std::domain_error("restriction needs a shared field tower");
  ClassFn out(sl2);
  for (size_t c = 0; c < sl2->num_classes(); ++c)
    out.v[c] = f.v[gl2->class_identify(sl2->cls(c).rep)];
  return out;
}

long dl_pairing_count(const TorusPtr& Tw, size_t th, const TorusPtr& Tw2, size_t th2) {
  if (Tw->wname() != Tw2->wname()) return 0;
  Family f = Tw->ctx()->family();
  int nl = Tw->lattice_rank();
  // permutations in the centralizer of w acting on character coordinates
  std::vector<std::vector<int>> perms;
  if (f == Family::SL2) {
    // rank-1 lattice: W(T)^F = {1, inversion}
    perms = {{0}, {-1}};
  } else if (Tw->wname() == "1") {
    if (nl == 2)
      perms = {{0, 1}, {1, 0}};
    else
      perms = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  } else if (Tw->wname() == "s") {
    perms = {{0, 1}, {1, 0}};
  } else if (Tw->wname() == "s12") {
    perms = {{0, 1, 2}, {1, 0, 2}};
  } else {  // c123
    perms = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
  }
  long count = 0;
  for (const auto& pm : perms) {
    std::array<long, 3> b{};
    if (f == Family::SL2) {
      b[0] = pm[0] == 0 ? Tw->chars()[th][0] : -Tw->chars()[th][0];
    } else {
      for (int i = 0; i < nl; ++i) b[i] = Tw->chars()[th][pm[i]];
    }
    if (Tw2->char_index(b) == th2) ++count;
  }
  return count;
}

namespace {

std::shared_ptr<IrrTable> build_gl2_table(const CtxPtr& ctx) {
  auto tbl = std::make_shared<IrrTable>();
  tbl->ctx = ctx;
  auto T1 = TorusModel::build(ctx, "1");
  auto Ts = TorusModel::build(ctx, "s");
  long Q = ctx->Q();
  const FieldTower& tw = ctx->tw();
  // alpha o det for a character alpha of F_Q^*
  auto alpha_det = [&](long aexp) {
    ClassFn f(ctx);
    for (size_t c = 0; c < ctx->num_classes(); ++c) {
      long d = mat_det(tw, ctx->cls(c).rep);
      f.v[c] = Cyclo::root(static_cast<unsigned>(Q - 1),
                           mod_pos(aexp * tw.dlog(ctx->deg(), d), Q - 1));
    }
    return f;
  };
  std::set<std::string> seen;
  auto push = [&](ClassFn fn, const SeriesLabel& l) {
    IrrTable::Entry e;
    e.degree = fn.v[ctx->class_identify(mat_identity(tw, 2))].rational_part().get_num();
    e.fn = std::move(fn);
    e.label = l;
    tbl->entries.push_back(std::move(e));
  };
  // split-type labels through T1 characters
  for (size_t b = 0; b < T1->chars().size(); ++b) {
    SeriesLabel l = T1->series_label(b);
    if (!seen.insert(l.key).second) continue;
    const auto& bc = T1->chars()[b];
    ClassFn R = dl_character(ctx, T1, b);
    if (bc[0] == bc[1]) {
      // central series: alpha o det and its Steinberg twist
      ClassFn ad = alpha_det(bc[0]);
      ClassFn st(ctx);
      for (size_t c = 0; c < ctx->num_classes(); ++c) {
        st.v[c] = R.v[c] - ad.v[c];
        st.v[c].reduce();
      }
      push(ad, l);
      push(st, l);
    } else {
      push(R, l);
    }
  }
  // cuspidal labels through Coxeter characters
  for (size_t b = 0; b < Ts->chars().size(); ++b) {
    SeriesLabel l = Ts->series_label(b);
    if (!seen.insert(l.key).second) continue;
    ClassFn R = dl_character(ctx, Ts, b);
    ClassFn cusp(ctx);
    for (size_t c = 0; c < ctx->num_classes(); ++c) {
      cusp.v[c] = -R.v[c];
      cusp.v[c].reduce();
    }
    push(cusp, l);
  }
  return tbl;
}

std::shared_ptr<IrrTable> build_paired_table(const CtxPtr& ctx) {
  // Dixon characters with series assigned by nonvanishing R-pairings
  auto tbl = std::make_shared<IrrTable>();
  tbl->ctx = ctx;
  auto dres = dixon_table(ctx);
  std::vector<std::string> wnames;
  if (ctx->family() == Family::GL3)
    wnames = {"1", "s12", "c123"};
  else
    wnames = {"1", "s"};
  std::vector<std::pair<SeriesLabel, ClassFn>> rchars;
  for (const auto& w : wnames) {
    auto T = TorusModel::build(ctx, w);
    for (size_t b = 0; b < T->chars().size(); ++b)
      rchars.emplace_back(T->series_label(b), dl_character(ctx, T, b));
  }
  for (size_t i = 0; i < dres.chars.size(); ++i) {
    std::string label_key;
    SeriesLabel lab;
    for (const auto& [l, R] : rchars) {
      Cyclo ip = inner_product(dres.chars[i], R);
      if (ip.is_zero()) continue;
      if (label_key.empty()) {
        label_key = l.key;
        lab = l;
      } else if (label_key != l.key) {
        throw std::domain_error("disjointness violated: character pairs with two series");
      }
    }
    if (label_key.empty())
      throw std::domain_error("character lies in no rational series");
    IrrTable::Entry e;
    e.fn = dres.chars[i];
    e.degree = Int(dres.degrees[i]);
    e.label = lab;
    tbl->entries.push_back(std::move(e));
  }
  return tbl;
}

}  // namespace

std::shared_ptr<const IrrTable> irr_table(const CtxPtr& ctx) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const IrrTable>> cache;
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(ctx->key());
    if (it != cache.end()) return it->second;
  }
  std::shared_ptr<IrrTable> tbl;
  if (ctx->family() == Family::GL2)
    tbl = build_gl2_table(ctx);
  else
    tbl = build_paired_table(ctx);
  // series partition and sanity checks
  Int degsum = 0;
  for (size_t i = 0; i < tbl->entries.size(); ++i) {
    degsum += tbl->entries[i].degree * tbl->entries[i].degree;
    tbl->series[tbl->entries[i].label.key].push_back(i);
  }
  if (degsum != ctx->order()) throw std::domain_error("character degrees inconsistent");
  if (tbl->entries.size() != ctx->num_classes())
    throw std::domain_error("table size mismatch");
  for (const auto& [key, ids] : tbl->series) {
    tbl->label_index[key] = tbl->labels.size();
    tbl->labels.push_back(tbl->entries[ids[0]].label);
  }
  std::lock_guard<std::mutex> lk(mu);
  auto res = std::static_pointer_cast<const IrrTable>(tbl);
  cache[ctx->key()] = res;
  return res;
}

ClassFn gl2_gg_constituent(const CtxPtr& ctx, const SeriesLabel& label) {
  if (ctx->family() != Family::GL2)
    throw std::domain_error("gl2_gg_constituent: GL2 only");
  const auto& fr = label.blocks.at(0);
  long Q = ctx->Q();
  bool split_type = true;
  for (const auto& [nu, de] : fr)
    if ((Q - 1) % de != 0) split_type = false;
  if (!split_type) {
    // cuspidal constituent -R_{T_s} theta
    auto Ts = TorusModel::build(ctx, "s");
    for (size_t b = 0; b < Ts->chars().size(); ++b)
      if (Ts->series_label(b) == label) {
        ClassFn R = dl_character(ctx, Ts, b);
        ClassFn out(ctx);
        for (size_t c = 0; c < ctx->num_classes(); ++c) {
          out.v[c] = -R.v[c];
          out.v[c].reduce();
        }
        return out;
      }
    throw std::domain_error("label not found on Coxeter torus");
  }
  auto T1 = TorusModel::build(ctx, "1");
  for (size_t b = 0; b < T1->chars().size(); ++b)
    if (T1->series_label(b) == label) {
      ClassFn R = dl_character(ctx, T1, b);
      if (fr[0] != fr[1]) return R;  // principal series
      // Steinberg twist: R(alpha,alpha) - alpha o det
      const FieldTower& tw = ctx->tw();
      long aexp = T1->chars()[b][0];
      ClassFn out(ctx);
      for (size_t c = 0; c < ctx->num_classes(); ++c) {
        long d = mat_det(tw, ctx->cls(c).rep);
        Cyclo ad = Cyclo::root(static_cast<unsigned>(Q - 1),
                               mod_pos(aexp * tw.dlog(ctx->deg(), d), Q - 1));
        out.v[c] = R.v[c] - ad;
        out.v[c].reduce();
      }
      return out;
    }
  throw std::domain_error("label not found on split torus");
}

std::vector<SeriesLabel> all_labels(const CtxPtr& ctx) {
  std::vector<std::string> wnames =
      ctx->family() == Family::GL3 ? std::vector<std::string>{"1", "s12", "c123"}
                                   : std::vector<std::string>{"1", "s"};
  std::map<std::string, SeriesLabel> acc;
  for (const auto& w : wnames) {
    auto T = TorusModel::build(ctx, w);
    for (size_t b = 0; b < T->chars().size(); ++b) {
      SeriesLabel l = T->series_label(b);
      acc.emplace(l.key, l);
    }
  }
  std::vector<SeriesLabel> out;
  for (auto& [k, l] : acc) out.push_back(l);
  return out;
}

std::vector<SeriesLabel> ell_element_labels(const CtxPtr& ctx, long ell) {
  std::vector<SeriesLabel> out;
  for (const auto& l : all_labels(ctx))
    if (label_is_ell_element(l, ell)) out.push_back(l);
  return out;
}

}  // namespace gg
