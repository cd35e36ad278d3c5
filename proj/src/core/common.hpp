#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gg {

using Int = mpz_class;
using Rat = mpq_class;

inline long to_long(const Int& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer does not fit in long");
  return z.get_si();
}

inline Int pow_int(long b, unsigned e) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(b), e);
  return r;
}

inline long mod_pos(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

inline long mul_mod(long a, long b, long m) {
  return static_cast<long>((static_cast<__int128>(a) * b) % m);
}

inline long pow_mod(long b, long e, long m) {
  long r = 1 % m;
  b = mod_pos(b, m);
  while (e > 0) {
    if (e & 1) r = mul_mod(r, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline long inv_mod(long a, long m) {
  long t = 0, nt = 1, r = m, nr = mod_pos(a, m);
  while (nr != 0) {
    long q = r / nr;
    std::swap(t -= q * nt, nt);
    std::swap(r -= q * nr, nr);
  }
  if (r != 1) throw std::domain_error("inv_mod: not invertible");
  return mod_pos(t, m);
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline unsigned euler_phi(unsigned n) {
  unsigned result = n;
  for (unsigned p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      while (n % p == 0) n /= p;
      result -= result / p;
    }
  }
  if (n > 1) result -= result / n;
  return result;
}

// v_ell of a nonzero rational; throws on zero.
inline long ell_valuation(const Rat& x, long ell) {
  if (x == 0) throw std::domain_error("valuation of zero");
  long v = 0;
  Int num = x.get_num(), den = x.get_den();
  while (mpz_divisible_ui_p(num.get_mpz_t(), ell)) { num /= ell; ++v; }
  while (mpz_divisible_ui_p(den.get_mpz_t(), ell)) { den /= ell; --v; }
  return v;
}

inline bool rat_ell_integral(const Rat& x, long ell) {
  return !mpz_divisible_ui_p(x.get_den().get_mpz_t(), ell);
}

// FNV-1a 64-bit, used for cache fingerprints.
inline uint64_t fnv1a(const std::string& s, uint64_t h = 1469598103934665603ULL) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Index-based parallel map; results land in caller-provided slots so the
// outcome is independent of scheduling.
inline void parallel_for(size_t n, const std::function<void(size_t)>& body) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n < 4) {
    for (size_t i = 0; i < n; ++i) body(i);
    return;
  }
  unsigned nt = std::min<size_t>(hw, n);
  std::vector<std::thread> pool;
  std::mutex mu;
  size_t next = 0;
  for (unsigned t = 0; t < nt; ++t) {
    pool.emplace_back([&]() {
      for (;;) {
        size_t i;
        {
          std::lock_guard<std::mutex> lk(mu);
          if (next >= n) return;
          i = next++;
        }
        body(i);
      }
    });
  }
  for (auto& th : pool) th.join();
}

}  // namespace gg
