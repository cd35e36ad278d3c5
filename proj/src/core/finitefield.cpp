#include "finitefield.hpp"

#include <cassert>

namespace gg {

namespace {

// dense polynomial arithmetic over F_p for tower construction only
using Poly = std::vector<int>;

void ptrim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly pmulmod(const Poly& a, const Poly& b, const Poly& f, int p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  // reduce mod f (monic)
  int deg = static_cast<int>(f.size()) - 1;
  for (int i = static_cast<int>(r.size()) - 1; i >= deg; --i) {
    int c = r[i];
    if (c == 0) continue;
    for (int j = 0; j <= deg; ++j)
      r[i - deg + j] = ((r[i - deg + j] - c * f[j]) % p + p) % p;
  }
  r.resize(deg);
  ptrim(r);
  return r;
}

Poly ppowmod(Poly base, Int e, const Poly& f, int p) {
  Poly r{1};
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = pmulmod(r, base, f, p);
    base = pmulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

bool poly_eq(const Poly& a, const Poly& b) {
  Poly x = a, y = b;
  ptrim(x);
  ptrim(y);
  return x == y;
}

bool irreducible(const Poly& f, int p) {
  int K = static_cast<int>(f.size()) - 1;
  Poly x{0, 1};
  // x^{p^K} == x mod f
  Poly xq = ppowmod(x, pow_int(p, K), f, p);
  if (!poly_eq(xq, x)) return false;
  for (int r = 2; r <= K; ++r) {
    if (K % r != 0 || !is_prime(r)) continue;
    Poly xr = ppowmod(x, pow_int(p, K / r), f, p);
    // gcd(x^{p^{K/r}} - x, f) must be 1; since f irreducible candidates are
    // degree K, equivalently x^{p^{K/r}} != x would not suffice; do the gcd.
    Poly d = xr;
    // d -= x
    if (d.size() < 2) d.resize(2, 0);
    d[1] = ((d[1] - 1) % p + p) % p;
    ptrim(d);
    // gcd(d, f)
    Poly a = f, b = d;
    while (!b.empty()) {
      // a mod b
      Poly r2 = a;
      int db = static_cast<int>(b.size()) - 1;
      int lead_inv = inv_mod(b[db], p);
      for (int i = static_cast<int>(r2.size()) - 1; i >= db; --i) {
        int c = static_cast<int>((static_cast<long>(r2[i]) * lead_inv) % p);
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j)
          r2[i - db + j] = ((r2[i - db + j] - c * b[j]) % p + p) % p;
      }
      ptrim(r2);
      a = b;
      b = r2;
    }
    if (!(a.size() == 1)) return false;
  }
  return true;
}

std::vector<long> prime_factors(Int n) {
  std::vector<long> fs;
  for (long d = 2; Int(d) * d <= n; ++d)
    if (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
      fs.push_back(d);
      while (mpz_divisible_ui_p(n.get_mpz_t(), d)) n /= d;
    }
  if (n > 1) fs.push_back(to_long(n));
  return fs;
}

}  // namespace

FieldTower::FieldTower(int p, int K) : p_(p), K_(K) {
  N_ = to_long(pow_int(p, K));
  // find lexicographically-least monic irreducible of degree K
  Poly f;
  for (long code = 0;; ++code) {
    Poly cand(K + 1, 0);
    cand[K] = 1;
    long c = code;
    for (int i = 0; i < K; ++i) {
      cand[i] = static_cast<int>(c % p);
      c /= p;
    }
    if (c > 0) throw std::runtime_error("no irreducible polynomial found");
    if (irreducible(cand, p)) {
      f = cand;
      break;
    }
  }
  auto encode = [&](const Poly& a) {
    long idx = 0;
    for (size_t i = a.size(); i-- > 0;) idx = idx * p + a[i];
    return idx;
  };
  one_ = 1;
  // generator: smallest poly-coded element of full order
  std::vector<long> rs = prime_factors(Int(N_ - 1));
  Poly g;
  for (long code = 2;; ++code) {
    Poly cand;
    long c = code;
    while (c > 0) {
      cand.push_back(static_cast<int>(c % p));
      c /= p;
    }
    bool ok = true;
    for (long r : rs)
      if (poly_eq(ppowmod(cand, Int((N_ - 1) / r), f, p), Poly{1})) {
        ok = false;
        break;
      }
    if (ok && poly_eq(ppowmod(cand, Int(N_ - 1), f, p), Poly{1})) {
      g = cand;
      break;
    }
  }
  exp_.resize(N_ - 1);
  log_.assign(N_, -1);
  Poly cur{1};
  for (long i = 0; i < N_ - 1; ++i) {
    long idx = encode(cur);
    exp_[i] = idx;
    log_[idx] = i;
    cur = pmulmod(cur, g, f, p);
  }
  assert(poly_eq(cur, Poly{1}));
  // negation and addition tables (digitwise mod p)
  neg_.resize(N_);
  for (long a = 0; a < N_; ++a) {
    long x = a, r = 0, mul = 1;
    while (x > 0) {
      r += ((p - x % p) % p) * mul;
      x /= p;
      mul *= p;
    }
    neg_[a] = r;
  }
  add_.resize(N_ * N_);
  for (long a = 0; a < N_; ++a)
    for (long b = 0; b <= a; ++b) {
      long x = a, y = b, r = 0, mul = 1;
      while (x > 0 || y > 0) {
        r += ((x % p + y % p) % p) * mul;
        x /= p;
        y /= p;
        mul *= p;
      }
      add_[a * N_ + b] = r;
      add_[b * N_ + a] = r;
    }
  // subfields
  for (int k = 1; k <= K; ++k) {
    if (K % k != 0) continue;
    long sz = to_long(pow_int(p, k));
    sub_size_[k] = sz;
    long idxgen = (N_ - 1) / (sz - 1);
    gen_[k] = exp_[idxgen % (N_ - 1)];
    std::vector<long> elems;
    elems.push_back(0);
    for (long i = 0; i < sz - 1; ++i) elems.push_back(exp_[(i * idxgen) % (N_ - 1)]);
    std::sort(elems.begin() + 1, elems.end());
    sub_elems_[k] = std::move(elems);
  }
}

long FieldTower::pow(long a, long e) const {
  if (a == 0) {
    if (e <= 0) throw std::domain_error("0^e, e<=0");
    return 0;
  }
  long l = log_[a];
  long m = N_ - 1;
  return exp_[mod_pos(static_cast<long>((static_cast<__int128>(l) * mod_pos(e, m)) % m), m)];
}

long FieldTower::frob(long a, int times) const {
  long r = a;
  for (int i = 0; i < times; ++i) r = pow(r, p_);
  return r;
}

bool FieldTower::in_subfield(int k, long x) const {
  if (x == 0) return true;
  long sz = sub_size_.at(k);
  return log_[x] % ((N_ - 1) / (sz - 1)) == 0;
}

long FieldTower::dlog(int k, long x) const {
  if (x == 0) throw std::domain_error("dlog of zero");
  long sz = sub_size_.at(k);
  long step = (N_ - 1) / (sz - 1);
  long l = log_[x];
  if (l % step != 0) throw std::domain_error("element not in subfield");
  return l / step;
}

long FieldTower::norm(int k, int j, long x) const {
  if (x == 0) return 0;
  long szk = sub_size_.at(k), szj = sub_size_.at(j);
  long e = (szk - 1) / (szj - 1);
  return pow(x, e);
}

long FieldTower::trace(int k, int j, long x) const {
  long r = 0, cur = x;
  for (int i = 0; i < k / j; ++i) {
    r = add(r, cur);
    cur = frob(cur, j);
  }
  return r;
}

long FieldTower::trace_to_prime(int k, long x) const {
  long t = trace(k, 1, x);
  return to_fp(t);
}

long FieldTower::from_fp(long r) const {
  long x = 0;
  r = mod_pos(r, p_);
  for (long i = 0; i < r; ++i) x = add(x, one_);
  return x;
}

long FieldTower::to_fp(long x) const {
  for (long r = 0; r < p_; ++r)
    if (from_fp(r) == x) return r;
  throw std::domain_error("not in prime field");
}

const FieldTower& tower(int p, int top_degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<FieldTower>> reg;
  std::lock_guard<std::mutex> lk(mu);
  auto key = std::make_pair(p, top_degree);
  auto it = reg.find(key);
  if (it == reg.end())
    it = reg.emplace(key, std::make_unique<FieldTower>(p, top_degree)).first;
  return *it->second;
}

}  // namespace gg
