#include "torus.hpp"

#include <cassert>
#include <set>
#include <sstream>

#include "linalg.hpp"

namespace gg {

namespace {

using IMat = std::vector<std::vector<long>>;

IMat imat_id(int n) {
  IMat r(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

IMat imat_mul(const IMat& a, const IMat& b) {
  int n = static_cast<int>(a.size());
  IMat r(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      if (a[i][k])
        for (int j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
  return r;
}

IMat imat_pow(IMat m, int e) {
  IMat r = imat_id(static_cast<int>(m.size()));
  while (e > 0) {
    if (e & 1) r = imat_mul(r, m);
    m = imat_mul(m, m);
    e >>= 1;
  }
  return r;
}

IMat imat_transpose(const IMat& a) {
  int n = static_cast<int>(a.size());
  IMat r(n, std::vector<long>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[j][i] = a[i][j];
  return r;
}

long imat_det(const IMat& a) {
  int n = static_cast<int>(a.size());
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  long d = 0;
  d += a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]);
  d -= a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]);
  d += a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  return d;
}

// adjugate: A * adj(A) = det(A) I
IMat imat_adj(const IMat& a) {
  int n = static_cast<int>(a.size());
  IMat r(n, std::vector<long>(n, 0));
  if (n == 1) {
    r[0][0] = 1;
    return r;
  }
  if (n == 2) {
    r[0][0] = a[1][1];
    r[1][1] = a[0][0];
    r[0][1] = -a[0][1];
    r[1][0] = -a[1][0];
    return r;
  }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int i1 = (j + 1) % 3, i2 = (j + 2) % 3, j1 = (i + 1) % 3, j2 = (i + 2) % 3;
      r[i][j] = a[i1][j1] * a[i2][j2] - a[i1][j2] * a[i2][j1];
    }
  return r;
}

// lower-triangular column HNF basis of the column lattice of A (nonsingular)
IMat column_hnf(IMat A) {
  int n = static_cast<int>(A.size());
  int m = static_cast<int>(A[0].size());
  // work with columns
  std::vector<std::vector<long>> cols(m, std::vector<long>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) cols[j][i] = A[i][j];
  IMat H(n, std::vector<long>(n, 0));
  int used = 0;
  for (int r = 0; r < n; ++r) {
    // gcd-combine all columns j >= used with nonzero entry in row r
    for (int j = used + 1; j < m; ++j) {
      while (cols[j][r] != 0) {
        if (cols[used][r] == 0) {
          std::swap(cols[used], cols[j]);
          continue;
        }
        long q = cols[j][r] / cols[used][r];
        for (int i = 0; i < n; ++i) cols[j][i] -= q * cols[used][i];
        if (cols[j][r] != 0) std::swap(cols[used], cols[j]);
      }
    }
    if (cols[used][r] == 0) {
      // try to find any column with nonzero at row r
      bool found = false;
      for (int j = used; j < m; ++j)
        if (cols[j][r] != 0) {
          std::swap(cols[used], cols[j]);
          found = true;
          break;
        }
      if (!found) throw std::domain_error("column_hnf: singular lattice");
    }
    if (cols[used][r] < 0)
      for (int i = 0; i < n; ++i) cols[used][i] = -cols[used][i];
    for (int i = 0; i < n; ++i) H[i][r] = cols[used][i];
    ++used;
  }
  // normalize off-diagonal entries below diagonal: H[i][j], j<i ranges mod H[i][i]
  for (int j = n - 2; j >= 0; --j)
    for (int i = j + 1; i < n; ++i) {
      if (H[i][i] == 0) continue;
      long q = H[i][j] / H[i][i];
      if (H[i][j] - q * H[i][i] < 0) q -= 1;
      if (q != 0)
        for (int k = 0; k < n; ++k) H[k][j] -= q * H[k][i];
    }
  return H;
}

std::array<long, 3> reduce_mod_hnf(const IMat& H, std::array<long, 3> v) {
  int n = static_cast<int>(H.size());
  for (int i = 0; i < n; ++i) {
    long d = H[i][i];
    long q = v[i] / d;
    if (v[i] - q * d < 0) q -= 1;
    if (q != 0)
      for (int k = 0; k < n; ++k) v[k] -= q * H[k][i];
  }
  return v;
}

uint64_t vec_pack(const std::array<long, 3>& v) {
  return (static_cast<uint64_t>(v[0]) & 0xFFFFF) |
         ((static_cast<uint64_t>(v[1]) & 0xFFFFF) << 20) |
         ((static_cast<uint64_t>(v[2]) & 0xFFFFF) << 40);
}

std::pair<long, long> reduce_fraction_mod1(long num, long den) {
  if (den < 0) {
    den = -den;
    num = -num;
  }
  num = mod_pos(num, den);
  long g = std::gcd(num, den);
  if (g == 0) return {0, 1};
  return {num / g, den / g};
}

}  // namespace

SeriesLabel label_from_fractions(std::vector<std::vector<std::pair<long, long>>> blocks) {
  SeriesLabel l;
  for (auto& b : blocks) std::sort(b.begin(), b.end(), [](auto& x, auto& y) {
    if (x.second != y.second) return x.second < y.second;
    return x.first < y.first;
  });
  l.blocks = std::move(blocks);
  std::ostringstream os;
  for (size_t i = 0; i < l.blocks.size(); ++i) {
    if (i) os << "|";
    for (size_t j = 0; j < l.blocks[i].size(); ++j) {
      if (j) os << ",";
      os << l.blocks[i][j].first << "/" << l.blocks[i][j].second;
    }
  }
  l.key = os.str();
  return l;
}

bool label_frac_stable_under(const SeriesLabel& l, long m) {
  for (const auto& blk : l.blocks) {
    std::vector<std::pair<long, long>> mul;
    for (const auto& [n, d] : blk) mul.push_back(reduce_fraction_mod1(n * m, d));
    auto copy = blk;
    std::sort(mul.begin(), mul.end(), [](auto& x, auto& y) {
      if (x.second != y.second) return x.second < y.second;
      return x.first < y.first;
    });
    std::sort(copy.begin(), copy.end(), [](auto& x, auto& y) {
      if (x.second != y.second) return x.second < y.second;
      return x.first < y.first;
    });
    if (mul != copy) return false;
  }
  return true;
}

bool label_is_ell_element(const SeriesLabel& l, long ell) {
  if (l.blocks.empty()) {
    if (l.elem_order < 1) throw std::domain_error("label without order data");
    long o = l.elem_order;
    while (o % ell == 0) o /= ell;
    return o == 1;
  }
  for (const auto& blk : l.blocks)
    for (const auto& [n, d] : blk) {
      long dd = d;
      while (dd % ell == 0) dd /= ell;
      if (dd != 1) return false;
    }
  return true;
}

SeriesLabel label_coarsen(const SeriesLabel& l, long, int) { return l; }

std::shared_ptr<const TorusModel> TorusModel::build(const CtxPtr& ctx, const std::string& wname,
                                                    TorusKind kind) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const TorusModel>> cache;
  std::string key = ctx->key() + "/" + wname + (kind == TorusKind::Group ? "/grp" : "/pair");
  {
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  auto t = std::shared_ptr<TorusModel>(new TorusModel());
  t->ctx_ = ctx;
  t->wname_ = wname;
  t->kind_ = kind;
  if (kind == TorusKind::Group) {
    t->q_eff_ = ctx->Q();
    t->e_eff_ = 1;
    t->db_eff_ = ctx->deg();
  } else {
    t->q_eff_ = ctx->q();
    t->e_eff_ = ctx->level();
    t->db_eff_ = ctx->deg_base();
  }
  t->build_lattice();
  t->build_embedding();
  t->validate();
  std::lock_guard<std::mutex> lk(mu);
  auto res = std::static_pointer_cast<const TorusModel>(t);
  cache[key] = res;
  return res;
}

void TorusModel::build_lattice() {
  int e = e_eff_;
  Family f = ctx_->family();
  long q = q_eff_;
  if (f == Family::SL2) {
    nl_ = 1;
    M_ = {{wname_ == "1" ? q : -q}};
  } else {
    nl_ = ctx_->n();
    IMat P = imat_id(nl_);
    if (wname_ == "s") P = {{0, 1}, {1, 0}};
    else if (wname_ == "s12") P = {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}};
    else if (wname_ == "c123") P = {{0, 0, 1}, {1, 0, 0}, {0, 1, 0}};
    else if (wname_ != "1") throw std::domain_error("unknown Weyl class " + wname_);
    M_ = P;
    for (auto& row : M_)
      for (auto& x : row) x *= q;
  }
  A_ = imat_pow(M_, e);
  for (int i = 0; i < nl_; ++i) A_[i][i] -= 1;
  detA_ = imat_det(A_);
  if (detA_ == 0) throw std::domain_error("torus lattice degenerate");
  npts_ = std::abs(detA_);
  adjA_ = imat_adj(A_);
  At_ = imat_transpose(A_);
  adjAt_ = imat_adj(At_);
  {
    std::vector<std::vector<Int>> AI(nl_, std::vector<Int>(nl_));
    for (int i = 0; i < nl_; ++i)
      for (int j = 0; j < nl_; ++j) AI[i][j] = A_[i][j];
    invf_ = integer_snf(AI);
  }
  hnf_pts_ = column_hnf(A_);
  hnf_chs_ = column_hnf(At_);
  // enumerate canonical representatives
  auto enumerate = [&](const IMat& H, std::vector<std::array<long, 3>>& out,
                       std::unordered_map<uint64_t, uint32_t>& idx) {
    std::array<long, 3> v{0, 0, 0};
    std::function<void(int)> rec = [&](int i) {
      if (i == nl_) {
        auto r = reduce_mod_hnf(H, v);
        uint64_t pk = vec_pack(r);
        if (!idx.count(pk)) {
          idx[pk] = static_cast<uint32_t>(out.size());
          out.push_back(r);
        }
        return;
      }
      for (long x = 0; x < H[i][i]; ++x) {
        v[i] = x;
        rec(i + 1);
      }
      v[i] = 0;
    };
    rec(0);
    assert(static_cast<long>(out.size()) == npts_);
  };
  enumerate(hnf_pts_, pts_, pt_index_);
  enumerate(hnf_chs_, chs_, ch_index_);
}

size_t TorusModel::point_index(std::array<long, 3> v) const {
  for (int i = nl_; i < 3; ++i) v[i] = 0;
  return pt_index_.at(vec_pack(reduce_mod_hnf(hnf_pts_, v)));
}

size_t TorusModel::char_index(std::array<long, 3> v) const {
  for (int i = nl_; i < 3; ++i) v[i] = 0;
  return ch_index_.at(vec_pack(reduce_mod_hnf(hnf_chs_, v)));
}

size_t TorusModel::point_add(size_t a, size_t b) const {
  std::array<long, 3> v{};
  for (int i = 0; i < nl_; ++i) v[i] = pts_[a][i] + pts_[b][i];
  return point_index(v);
}

size_t TorusModel::point_neg(size_t a) const {
  std::array<long, 3> v{};
  for (int i = 0; i < nl_; ++i) v[i] = -pts_[a][i];
  return point_index(v);
}

size_t TorusModel::point_frobenius(size_t a) const {
  std::array<long, 3> v{};
  for (int i = 0; i < nl_; ++i) {
    long s = 0;
    for (int j = 0; j < nl_; ++j) s += M_[i][j] * pts_[a][j];
    v[i] = s;
  }
  return point_index(v);
}

long TorusModel::point_order(size_t a) const {
  long o = 1;
  size_t cur = a;
  size_t zero = point_index({0, 0, 0});
  while (cur != zero) {
    cur = point_add(cur, a);
    ++o;
  }
  return o;
}

long TorusModel::char_order(size_t b) const {
  // order of b in Z^n / A^T Z^n
  for (long o = 1;; ++o) {
    std::array<long, 3> v{};
    for (int i = 0; i < nl_; ++i) v[i] = chs_[b][i] * o;
    auto r = reduce_mod_hnf(hnf_chs_, v);
    bool zero = true;
    for (int i = 0; i < nl_; ++i)
      if (r[i] != 0) zero = false;
    if (zero) return o;
  }
}

Rat TorusModel::pair_fraction(size_t char_idx, size_t point_idx) const {
  const auto& b = chs_[char_idx];
  const auto& a = pts_[point_idx];
  long s = 0;
  for (int i = 0; i < nl_; ++i)
    for (int j = 0; j < nl_; ++j) s += b[i] * adjA_[i][j] * a[j];
  auto [num, den] = reduce_fraction_mod1(s, detA_);
  return Rat(num, den);
}

Cyclo TorusModel::pair(size_t char_idx, size_t point_idx) const {
  Rat f = pair_fraction(char_idx, point_idx);
  return Cyclo::root(static_cast<unsigned>(f.get_den().get_ui()),
                     static_cast<long>(f.get_num().get_si()));
}

void TorusModel::build_embedding() {
  const FieldTower& tw = ctx_->tw();
  Family f = ctx_->family();
  long q = q_eff_;
  int e = e_eff_;
  int db = db_eff_;
  int dQ = ctx_->deg();
  long Q = ctx_->Q();
  int n = ctx_->n();

  std::vector<long> gens(nl_);   // coordinate generators
  std::vector<int> gdeg(nl_);
  Bexp_ = imat_id(nl_);
  twisted_ = false;
  lang_g_ = mat_identity(tw, n);

  auto moore2 = [&](long beta) {
    Mat g;
    g.n = 2;
    g.at(0, 0) = tw.one();
    g.at(0, 1) = tw.one();
    g.at(1, 0) = beta;
    g.at(1, 1) = tw.frob(beta, db);
    return g;
  };

  if (f == Family::SL2) {
    if (wname_ == "1") {
      gens[0] = tw.gen(dQ);
      gdeg[0] = dQ;
    } else {
      twisted_ = true;
      lang_g_ = moore2(tw.gen(2 * db));
      gens[0] = tw.gen(2 * dQ);
      gdeg[0] = 2 * dQ;
      Bexp_ = {{(tw.subfield_size(dQ) - 1)}};  // x = H^{(q-1)a}
    }
  } else if (f == Family::GL2) {
    if (wname_ == "1") {
      gens = {tw.gen(dQ), tw.gen(dQ)};
      gdeg = {dQ, dQ};
    } else {
      twisted_ = true;
      lang_g_ = moore2(tw.gen(2 * db));
      if (e % 2 == 1) {
        gens = {tw.gen(2 * dQ), tw.gen(2 * dQ)};
        gdeg = {2 * dQ, 2 * dQ};
        Bexp_ = {{1, Q}, {Q, 1}};
      } else {
        gens = {tw.gen(dQ), tw.gen(dQ)};
        gdeg = {dQ, dQ};
        Bexp_ = imat_id(2);
      }
    }
  } else {  // GL3 (q = 2, e = 1)
    if (wname_ == "1") {
      gens = {tw.gen(dQ), tw.gen(dQ), tw.gen(dQ)};
      gdeg = {dQ, dQ, dQ};
    } else if (wname_ == "s12") {
      twisted_ = true;
      long beta = tw.gen(2 * db);
      Mat g = mat_identity(tw, 3);
      g.at(0, 0) = tw.one();
      g.at(0, 1) = tw.one();
      g.at(1, 0) = beta;
      g.at(1, 1) = tw.frob(beta, db);
      g.at(0, 2) = 0;
      g.at(1, 2) = 0;
      g.at(2, 2) = tw.one();
      g.at(2, 0) = 0;
      g.at(2, 1) = 0;
      lang_g_ = g;
      gens = {tw.gen(2 * dQ), tw.gen(2 * dQ), tw.gen(dQ)};
      gdeg = {2 * dQ, 2 * dQ, dQ};
      Bexp_ = {{1, Q, 0}, {Q, 1, 0}, {0, 0, 1}};
    } else {  // c123
      twisted_ = true;
      long gamma = tw.gen(3 * db);
      // columns c, F(c), F^2(c) with c = (1, gamma, gamma^2): then F(g) = g P
      Mat g;
      g.n = 3;
      std::array<long, 3> c0 = {tw.one(), gamma, tw.mul(gamma, gamma)};
      for (int j = 0; j < 3; ++j) {
        for (int i = 0; i < 3; ++i) g.at(i, j) = c0[i];
        for (int i = 0; i < 3; ++i) c0[i] = tw.frob(c0[i], db);
      }
      lang_g_ = g;
      gens = {tw.gen(3 * dQ), tw.gen(3 * dQ), tw.gen(3 * dQ)};
      gdeg = {3 * dQ, 3 * dQ, 3 * dQ};
      // cyclic exponent matrix; orientation picked by the well-definedness
      // congruence B (M - I) = 0 mod q^3 - 1
      long m3 = Q * Q * Q - 1;
      for (int orient = 0; orient < 2; ++orient) {
        IMat B(3, std::vector<long>(3));
        for (int i = 0; i < 3; ++i)
          for (int j = 0; j < 3; ++j) {
            int d0 = orient == 0 ? mod_pos(i - j, 3) : mod_pos(j - i, 3);
            B[i][j] = 1;
            for (int t2 = 0; t2 < d0; ++t2) B[i][j] *= q;
          }
        bool ok = true;
        IMat BA = imat_mul(B, A_);
        for (auto& row : BA)
          for (long x : row)
            if (mod_pos(x, m3) != 0) ok = false;
        IMat BM = imat_mul(B, M_), MB = imat_mul(M_, B);
        for (int i = 0; i < 3 && ok; ++i)
          for (int j = 0; j < 3; ++j)
            if (mod_pos(BM[i][j] - MB[i][j], m3) != 0) ok = false;
        if (ok) {
          Bexp_ = B;
          break;
        }
        if (orient == 1) throw std::domain_error("no valid cyclic exponent matrix");
      }
    }
  }
  gen_degree_ = gdeg[0];

  // realize the subgroup
  Mat gi = mat_inv(tw, lang_g_);
  sub_.name = "T_" + wname_ + "@" + ctx_->key();
  sub_.elems.reserve(pts_.size());
  for (const auto& a : pts_) {
    Mat d = mat_identity(tw, n);
    for (int i = 0; i < nl_; ++i) {
      long c = 0;
      for (int j = 0; j < nl_; ++j) c += Bexp_[i][j] * a[j];
      long sz = tw.subfield_size(gdeg[i]);
      d.at(i, i) = tw.pow(gens[i], mod_pos(c, sz - 1));
    }
    if (f == Family::SL2) {
      if (wname_ == "1")
        d.at(1, 1) = tw.inv(d.at(0, 0));
      else
        d.at(1, 1) = tw.frob(d.at(0, 0), db_eff_);
    }
    if (f == Family::GL2 && wname_ == "s" && e % 2 == 1) {
      // second coordinate is the Frobenius conjugate by construction of Bexp_
    }
    Mat m = twisted_ ? mat_mul(tw, lang_g_, mat_mul(tw, d, gi)) : d;
    sub_.elems.push_back(m);
  }
  sub_.build_index(tw.top_size());
}

void TorusModel::validate() {
  const FieldTower& tw = ctx_->tw();
  long N = tw.top_size();
  // entries lie in F_Q and the map is injective
  if (sub_.index.size() != sub_.elems.size())
    throw std::domain_error("torus embedding not injective: " + sub_.name);
  for (const auto& m : sub_.elems) {
    for (int i = 0; i < m.n * m.n; ++i)
      if (!tw.in_subfield(ctx_->deg(), m.a[i]))
        throw std::domain_error("torus embedding leaves F_Q: " + sub_.name);
    if (mat_det(tw, m) == 0) throw std::domain_error("torus embedding singular");
    if (ctx_->family() == Family::SL2 && mat_det(tw, m) != tw.one())
      throw std::domain_error("torus embedding leaves SL2");
  }
  // homomorphism (exhaustive) and Frobenius compatibility
  size_t np = pts_.size();
  for (size_t a = 0; a < np; ++a) {
    Mat fa = mat_frob(ctx_->tw(), sub_.elems[a], db_eff_);
    size_t ma = point_frobenius(a);
    if (!(fa == sub_.elems[ma]))
      throw std::domain_error("torus embedding does not intertwine Frobenius");
  }
  for (size_t a = 0; a < np; ++a)
    for (size_t b = a; b < np; ++b) {
      Mat prod = mat_mul(tw, sub_.elems[a], sub_.elems[b]);
      if (!(prod == sub_.elems[point_add(a, b)]))
        throw std::domain_error("torus embedding not a homomorphism");
    }
  (void)N;
}

size_t TorusModel::point_of_mat(const Mat& m) const {
  auto it = sub_.index.find(mat_pack(m, ctx_->tw().top_size()));
  if (it == sub_.index.end()) throw std::domain_error("matrix not in torus");
  return it->second;
}

SeriesLabel TorusModel::series_label(size_t char_idx) const {
  if (ctx_->family() == Family::SL2) {
    auto dual = SL2Dual::get(ctx_->q());
    return dual->label(wname_, chs_[char_idx][0]);
  }
  std::vector<std::pair<long, long>> fr;
  const auto& b = chs_[char_idx];
  for (int i = 0; i < nl_; ++i) {
    long s = 0;
    for (int j = 0; j < nl_; ++j) s += adjAt_[i][j] * b[j];
    fr.push_back(reduce_fraction_mod1(s, detA_));
  }
  return label_from_fractions({fr});
}

std::vector<size_t> norm_points(const TorusModel& from, const TorusModel& to) {
  if (from.kind_ != TorusKind::Pair || to.kind_ != TorusKind::Pair)
    throw std::domain_error("norm map needs level-pair torus models");
  if (from.ctx_->family() != to.ctx_->family() || from.ctx_->q() != to.ctx_->q() ||
      from.wname_ != to.wname_)
    throw std::domain_error("norm map needs matching family/q/w");
  if (from.ctx_->level() % to.ctx_->level() != 0)
    throw std::domain_error("norm map needs divisible levels");
  // coordinate projection: A_from Z^n must lie inside A_to Z^n
  std::vector<size_t> img(from.pts_.size());
  for (size_t i = 0; i < from.pts_.size(); ++i) img[i] = to.point_index(from.pts_[i]);
  // surjectivity
  std::vector<char> hit(to.pts_.size(), 0);
  for (size_t x : img) hit[x] = 1;
  for (char h : hit)
    if (!h) throw std::domain_error("norm map not surjective");
  return img;
}

size_t inflate_character(const TorusModel& base, const TorusModel& ext, size_t chi) {
  if (base.kind_ != TorusKind::Pair || ext.kind_ != TorusKind::Pair)
    throw std::domain_error("inflation needs level-pair torus models");
  int d = ext.ctx_->level() / base.ctx_->level();
  int n = base.nl_;
  // N = I + M^e + ... + (M^e)^{d-1} with M^e the base-level Frobenius
  IMat Me = imat_pow(base.M_, base.ctx_->level());
  IMat Nm = imat_id(n);
  IMat cur = imat_id(n);
  for (int j = 1; j < d; ++j) {
    cur = imat_mul(cur, Me);
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) Nm[i][k] += cur[i][k];
  }
  std::array<long, 3> b{};
  for (int i = 0; i < n; ++i) {
    long s = 0;
    for (int j = 0; j < n; ++j) s += Nm[j][i] * base.chs_[chi][j];  // N^T b
    b[i] = s;
  }
  return ext.char_index(b);
}

std::shared_ptr<const SL2Dual> SL2Dual::get(long q) {
  static std::mutex mu;
  static std::map<long, std::shared_ptr<const SL2Dual>> cache;
  std::lock_guard<std::mutex> lk(mu);
  auto it = cache.find(q);
  if (it == cache.end())
    it = cache.emplace(q, std::shared_ptr<const SL2Dual>(new SL2Dual(q))).first;
  return it->second;
}

SL2Dual::SL2Dual(long q) : q_(q) {
  gl2_ = GroupContext::build(Family::GL2, q, 1);
  const FieldTower& tw = gl2_->tw();
  std::set<std::string> keys;
  // split dual points diag(g^b, 1)
  for (long b = 0; b < q - 1; ++b) {
    Mat m = mat_identity(tw, 2);
    m.at(0, 0) = tw.pow(tw.gen(1 * gl2_->deg()), b);
    keys.insert(sweep_key(m));
  }
  // nonsplit dual points: multiplication by h^b on F_{q^2} modulo scalars
  long h = tw.gen(2 * gl2_->deg());
  long hq = tw.frob(h, gl2_->deg());
  for (long b = 0; b < q + 1; ++b) {
    long lam = tw.pow(h, b);
    long lamq = tw.frob(lam, gl2_->deg());
    // lam = u + v h with u, v in F_q
    long v = tw.div(tw.sub(lam, lamq), tw.sub(h, hq));
    long u = tw.sub(lam, tw.mul(v, h));
    // h^2 = t h + s
    long h2 = tw.mul(h, h);
    long vv = tw.div(tw.sub(h2, tw.frob(h2, gl2_->deg())), tw.sub(h, hq));
    long uu = tw.sub(h2, tw.mul(vv, h));
    Mat m;
    m.n = 2;
    m.at(0, 0) = u;
    m.at(0, 1) = tw.mul(uu, v);
    m.at(1, 0) = v;
    m.at(1, 1) = tw.add(u, tw.mul(vv, v));
    keys.insert(sweep_key(m));
  }
  for (const auto& k : keys) {
    class_of_key_[k] = static_cast<int>(reps_.size());
    reps_.push_back(k);
  }
}

std::string SL2Dual::sweep_key(const Mat& m) const {
  const FieldTower& tw = gl2_->tw();
  std::set<size_t> cls;
  for (long e = 0; e < q_ - 1; ++e) {
    long lam = tw.pow(tw.gen(gl2_->deg()), e);
    Mat lm = m;
    for (int i = 0; i < 4; ++i) lm.a[i] = tw.mul(lam, m.a[i]);
    cls.insert(gl2_->class_identify(lm));
  }
  std::ostringstream os;
  for (size_t c : cls) os << c << ",";
  return os.str();
}

SeriesLabel SL2Dual::label(const std::string& wname, long b) const {
  const FieldTower& tw = gl2_->tw();
  Mat m;
  if (wname == "1") {
    m = mat_identity(tw, 2);
    m.at(0, 0) = tw.pow(tw.gen(gl2_->deg()), mod_pos(b, q_ - 1));
  } else {
    long h = tw.gen(2 * gl2_->deg());
    long hq = tw.frob(h, gl2_->deg());
    long lam = tw.pow(h, mod_pos(b, q_ + 1));
    long lamq = tw.frob(lam, gl2_->deg());
    long v = tw.div(tw.sub(lam, lamq), tw.sub(h, hq));
    long u = tw.sub(lam, tw.mul(v, h));
    long h2 = tw.mul(h, h);
    long vv = tw.div(tw.sub(h2, tw.frob(h2, gl2_->deg())), tw.sub(h, hq));
    long uu = tw.sub(h2, tw.mul(vv, h));
    m.n = 2;
    m.at(0, 0) = u;
    m.at(0, 1) = tw.mul(uu, v);
    m.at(1, 0) = v;
    m.at(1, 1) = tw.add(u, tw.mul(vv, v));
  }
  SeriesLabel l;
  l.key = "pgl{" + sweep_key(m) + "}";
  // order of the image of m in PGL2(F_q)
  const FieldTower& tw2 = gl2_->tw();
  Mat cur = m;
  long o = 1;
  while (!mat_is_scalar(cur)) {
    cur = mat_mul(tw2, cur, m);
    ++o;
  }
  l.elem_order = o;
  return l;
}

}  // namespace gg
