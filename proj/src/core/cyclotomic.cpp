#include "cyclotomic.hpp"

#include <cassert>
#include <sstream>

namespace gg {

unsigned lcm_u(unsigned a, unsigned b) { return a / std::gcd(a, b) * b; }

namespace {

// Phi_m with mpz coefficients, by exact division of x^m - 1 by all Phi_d, d|m, d<m.
std::vector<Int> cyclotomic_poly(unsigned m, std::map<unsigned, std::vector<Int>>& cache) {
  auto it = cache.find(m);
  if (it != cache.end()) return it->second;
  std::vector<Int> num(m + 1, 0);
  num[0] = -1;
  num[m] = 1;
  for (unsigned d = 1; d < m; ++d) {
    if (m % d != 0) continue;
    std::vector<Int> phi_d = cyclotomic_poly(d, cache);
    // num /= phi_d (exact division, phi_d monic)
    std::vector<Int> q(num.size() - phi_d.size() + 1, 0);
    std::vector<Int> r = num;
    for (size_t i = q.size(); i-- > 0;) {
      q[i] = r[i + phi_d.size() - 1];
      if (q[i] == 0) continue;
      for (size_t j = 0; j < phi_d.size(); ++j) r[i + j] -= q[i] * phi_d[j];
    }
    for (size_t j = 0; j + 1 < phi_d.size(); ++j) assert(r[j] == 0);
    num = q;
  }
  cache[m] = num;
  return num;
}

std::mutex g_field_mu;
std::map<unsigned, std::unique_ptr<CycloField>>& field_registry() {
  static std::map<unsigned, std::unique_ptr<CycloField>> reg;
  return reg;
}

}  // namespace

CycloField::CycloField(unsigned m) : m_(m), phi_(euler_phi(m)) {
  std::map<unsigned, std::vector<Int>> cache;
  std::vector<Int> phi_poly = cyclotomic_poly(m, cache);
  assert(phi_poly.size() == phi_ + 1 && phi_poly[phi_] == 1);
  phi_poly_.resize(phi_ + 1);
  for (unsigned i = 0; i <= phi_; ++i) {
    assert(phi_poly[i].fits_slong_p());
    phi_poly_[i] = phi_poly[i].get_si();
  }
  rows_.assign(m_, {});
  std::vector<Int> cur(phi_, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < m_; ++k) {
    rows_[k].resize(phi_);
    for (unsigned j = 0; j < phi_; ++j) {
      assert(cur[j].fits_slong_p());
      rows_[k][j] = cur[j].get_si();
    }
    // cur <- x*cur mod Phi_m
    Int lead = cur[phi_ - 1];
    for (unsigned j = phi_ - 1; j > 0; --j) cur[j] = cur[j - 1];
    cur[0] = 0;
    if (lead != 0)
      for (unsigned j = 0; j < phi_; ++j) cur[j] -= lead * phi_poly_[j];
  }
  // closure check: x^m == 1
  Int lead = cur[phi_ - 1];
  (void)lead;
  assert(cur[0] == 1);
  for (unsigned j = 1; j < phi_; ++j) assert(cur[j] == 0);
}

const CycloField& CycloField::get(unsigned m) {
  std::lock_guard<std::mutex> lk(g_field_mu);
  auto& reg = field_registry();
  auto it = reg.find(m);
  if (it == reg.end())
    it = reg.emplace(m, std::unique_ptr<CycloField>(new CycloField(m))).first;
  return *it->second;
}

Cyclo Cyclo::root(unsigned m, long k) {
  if (m == 0) throw std::domain_error("conductor must be positive");
  Cyclo x;
  x.m_ = m;
  x.terms_.emplace_back(static_cast<uint32_t>(mod_pos(k, m)), Rat(1));
  return x;
}

void Cyclo::lift_to(unsigned mp) {
  if (m_ == mp) return;
  if (mp % m_ != 0) throw std::domain_error("incompatible conductor");
  unsigned f = mp / m_;
  for (auto& t : terms_) t.first *= f;
  m_ = mp;
}

Cyclo Cyclo::embedded(unsigned mp) const {
  Cyclo r = *this;
  r.lift_to(mp);
  return r;
}

Cyclo& Cyclo::operator+=(const Cyclo& o) {
  if (o.terms_.empty()) return *this;
  Cyclo rhs = o;
  unsigned target = lcm_u(m_, o.m_);
  lift_to(target);
  rhs.lift_to(target);
  terms_.insert(terms_.end(), rhs.terms_.begin(), rhs.terms_.end());
  if (terms_.size() > 4 * static_cast<size_t>(m_) + 64) consolidate();
  return *this;
}

Cyclo Cyclo::operator-() const {
  Cyclo r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

Cyclo& Cyclo::operator-=(const Cyclo& o) { return *this += -o; }

Cyclo& Cyclo::operator*=(const Cyclo& o) {
  unsigned target = lcm_u(m_, o.m_);
  Cyclo rhs = o;
  lift_to(target);
  rhs.lift_to(target);
  std::vector<std::pair<uint32_t, Rat>> prod;
  prod.reserve(terms_.size() * rhs.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : rhs.terms_) {
      Rat c = a.second * b.second;
      prod.emplace_back((a.first + b.first) % target, std::move(c));
    }
  terms_ = std::move(prod);
  if (terms_.size() > static_cast<size_t>(m_)) consolidate();
  return *this;
}

Cyclo& Cyclo::scale(const Rat& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

void Cyclo::add_root_multiple(unsigned m, long k, const Rat& c) {
  if (c == 0) return;
  unsigned target = lcm_u(m_, m);
  lift_to(target);
  long kk = mod_pos(k, m) * static_cast<long>(target / m);
  terms_.emplace_back(static_cast<uint32_t>(kk), c);
  if (terms_.size() > 4 * static_cast<size_t>(m_) + 64) consolidate();
}

void Cyclo::consolidate() {
  if (terms_.empty()) return;
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<std::pair<uint32_t, Rat>> out;
  out.reserve(terms_.size());
  for (auto& t : terms_) {
    if (!out.empty() && out.back().first == t.first)
      out.back().second += t.second;
    else
      out.push_back(std::move(t));
  }
  out.erase(std::remove_if(out.begin(), out.end(),
                           [](const auto& t) { return t.second == 0; }),
            out.end());
  terms_ = std::move(out);
}

void Cyclo::reduce() {
  consolidate();
  unsigned phi = CycloField::get(m_).phi();
  bool canonical = true;
  for (const auto& t : terms_)
    if (t.first >= phi) { canonical = false; break; }
  if (canonical) return;
  const CycloField& F = CycloField::get(m_);
  std::vector<Rat> dense(phi, Rat(0));
  for (const auto& t : terms_) {
    if (t.first < phi) {
      dense[t.first] += t.second;
    } else {
      const auto& row = F.pow_row(t.first);
      for (unsigned j = 0; j < phi; ++j)
        if (row[j] != 0) dense[j] += t.second * row[j];
    }
  }
  terms_.clear();
  for (unsigned j = 0; j < phi; ++j)
    if (dense[j] != 0) terms_.emplace_back(j, std::move(dense[j]));
}

bool Cyclo::is_zero() const {
  Cyclo c = *this;
  c.reduce();
  return c.terms_.empty();
}

bool Cyclo::equals(const Cyclo& o) const {
  Cyclo d = *this;
  d -= o;
  return d.is_zero();
}

bool Cyclo::is_rational() const {
  Cyclo c = *this;
  c.reduce();
  return c.terms_.empty() || (c.terms_.size() == 1 && c.terms_[0].first == 0);
}

Rat Cyclo::rational_part() const {
  Cyclo c = *this;
  c.reduce();
  if (c.terms_.empty()) return Rat(0);
  if (c.terms_.size() == 1 && c.terms_[0].first == 0) return c.terms_[0].second;
  throw std::domain_error("not a rational element");
}

bool Cyclo::ell_integral(long ell) const {
  Cyclo c = *this;
  c.reduce();
  for (const auto& t : c.terms_)
    if (!rat_ell_integral(t.second, ell)) return false;
  return true;
}

long Cyclo::min_valuation(long ell) const {
  Cyclo c = *this;
  c.reduce();
  if (c.terms_.empty()) throw std::domain_error("valuation of zero");
  long v = ell_valuation(c.terms_[0].second, ell);
  for (size_t i = 1; i < c.terms_.size(); ++i)
    v = std::min(v, ell_valuation(c.terms_[i].second, ell));
  return v;
}

Cyclo Cyclo::galois(long c) const {
  long cc = mod_pos(c, m_);
  if (std::gcd(static_cast<long>(m_), cc) != 1)
    throw std::domain_error("galois exponent not coprime to conductor");
  Cyclo r;
  r.m_ = m_;
  for (const auto& t : terms_)
    r.terms_.emplace_back(static_cast<uint32_t>(mul_mod(t.first, cc, m_)), t.second);
  return r;
}

std::vector<Rat> Cyclo::dense() const {
  Cyclo c = *this;
  c.reduce();
  std::vector<Rat> d(CycloField::get(m_).phi(), Rat(0));
  for (const auto& t : c.terms_) d[t.first] = t.second;
  return d;
}

std::string Cyclo::to_string() const {
  Cyclo c = *this;
  c.reduce();
  if (c.terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : c.terms_) {
    if (!first) os << " + ";
    first = false;
    os << t.second.get_str();
    if (t.first > 0) os << "*z" << m_ << "^" << t.first;
  }
  return os.str();
}

std::string Cyclo::serialize() const {
  std::ostringstream os;
  os << "{\"m\":" << m_ << ",\"coeffs\":[";
  auto d = dense();
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) os << ",";
    os << "[\"" << d[i].get_num().get_str() << "\",\"" << d[i].get_den().get_str() << "\"]";
  }
  os << "]}";
  return os.str();
}

Cyclo Cyclo::deserialize_terms(unsigned m, const std::vector<std::pair<unsigned, Rat>>& t) {
  Cyclo c;
  c.m_ = m;
  for (const auto& [k, v] : t)
    if (v != 0) c.terms_.emplace_back(k % m, v);
  c.consolidate();
  return c;
}

Cyclo Cyclo::inverse() const {
  Cyclo a = *this;
  a.reduce();
  if (a.terms_.empty()) throw std::domain_error("inverse of zero");
  unsigned m = a.m_;
  const CycloField& F = CycloField::get(m);
  unsigned phi = F.phi();
  if (a.terms_.size() == 1) {
    // c * zeta^k: invert directly.
    Cyclo r = root(m, -static_cast<long>(a.terms_[0].first));
    r.scale(Rat(1) / a.terms_[0].second);
    return r;
  }
  // Solve (mult-by-a) x = 1 over the power basis.
  std::vector<std::vector<Rat>> M(phi, std::vector<Rat>(phi + 1, Rat(0)));
  for (unsigned j = 0; j < phi; ++j) {
    Cyclo col = a;
    col *= root(m, j);
    col.reduce();
    for (const auto& t : col.terms_) M[t.first][j] = t.second;
  }
  M[0][phi] = 1;
  // Gaussian elimination.
  for (unsigned c = 0, r = 0; c < phi && r < phi; ++c) {
    unsigned p = r;
    while (p < phi && M[p][c] == 0) ++p;
    if (p == phi) throw std::domain_error("singular multiplication matrix");
    std::swap(M[p], M[r]);
    Rat inv = Rat(1) / M[r][c];
    for (unsigned j = c; j <= phi; ++j) M[r][j] *= inv;
    for (unsigned i = 0; i < phi; ++i) {
      if (i == r || M[i][c] == 0) continue;
      Rat f = M[i][c];
      for (unsigned j = c; j <= phi; ++j) M[i][j] -= f * M[r][j];
    }
    ++r;
  }
  Cyclo x;
  x.m_ = m;
  for (unsigned j = 0; j < phi; ++j)
    if (M[j][phi] != 0) x.terms_.emplace_back(j, M[j][phi]);
  return x;
}

Rat Cyclo::field_norm() const {
  Cyclo a = *this;
  a.reduce();
  unsigned m = a.m_;
  unsigned phi = CycloField::get(m).phi();
  std::vector<std::vector<Rat>> M(phi, std::vector<Rat>(phi, Rat(0)));
  for (unsigned j = 0; j < phi; ++j) {
    Cyclo col = a;
    col *= root(m, j);
    col.reduce();
    for (const auto& t : col.terms_) M[t.first][j] = t.second;
  }
  // determinant by fraction-free-ish Gaussian elimination
  Rat det(1);
  for (unsigned c = 0; c < phi; ++c) {
    unsigned p = c;
    while (p < phi && M[p][c] == 0) ++p;
    if (p == phi) return Rat(0);
    if (p != c) { std::swap(M[p], M[c]); det = -det; }
    det *= M[c][c];
    Rat inv = Rat(1) / M[c][c];
    for (unsigned i = c + 1; i < phi; ++i) {
      if (M[i][c] == 0) continue;
      Rat f = M[i][c] * inv;
      for (unsigned j = c; j < phi; ++j) M[i][j] -= f * M[c][j];
    }
  }
  return det;
}

}  // namespace gg
