#pragma once

#include <map>
#include <optional>

#include "common.hpp"

namespace gg {

// Arithmetic context for Q(zeta_m): the m-th cyclotomic polynomial and the
// reduction table zeta^k -> power basis (zeta^0..zeta^{phi-1}), 0 <= k < m.
// Shared immutable; obtained through CycloField::get.
class CycloField {
 public:
  static const CycloField& get(unsigned m);

  unsigned m() const { return m_; }
  unsigned phi() const { return phi_; }
  // Row k: integer coefficients of x^k mod Phi_m over the power basis.
  const std::vector<int64_t>& pow_row(unsigned k) const { return rows_[k]; }
  const std::vector<int64_t>& phi_poly() const { return phi_poly_; }

 private:
  explicit CycloField(unsigned m);
  unsigned m_, phi_;
  std::vector<int64_t> phi_poly_;              // monic, degree phi_
  std::vector<std::vector<int64_t>> rows_;     // m rows of length phi_
};

// Exact element of Q(zeta_m). Held as a sparse sum of rational multiples of
// zeta^k (exponents mod m); reduce() folds it onto the power basis, which is
// the canonical form used for equality, integrality tests and serialization.
class Cyclo {
 public:
  Cyclo() : m_(1) {}
  explicit Cyclo(const Rat& c) : m_(1) {
    if (c != 0) terms_.emplace_back(0, c);
  }
  Cyclo(long num, long den) : Cyclo(Rat(num, den)) { }

  static Cyclo root(unsigned m, long k);                  // zeta_m^k
  static Cyclo zero() { return Cyclo(); }
  static Cyclo one() { return Cyclo(Rat(1)); }

  unsigned conductor() const { return m_; }
  bool structurally_zero() const { return terms_.empty(); }

  Cyclo& operator+=(const Cyclo& o);
  Cyclo& operator-=(const Cyclo& o);
  Cyclo& operator*=(const Cyclo& o);
  Cyclo& scale(const Rat& c);
  Cyclo operator-() const;

  friend Cyclo operator+(Cyclo a, const Cyclo& b) { a += b; return a; }
  friend Cyclo operator-(Cyclo a, const Cyclo& b) { a -= b; return a; }
  friend Cyclo operator*(Cyclo a, const Cyclo& b) { a *= b; return a; }

  // Accumulate c * zeta_m^k (exponent taken mod this->m_ after embedding).
  void add_root_multiple(unsigned m, long k, const Rat& c);

  void consolidate();          // merge equal exponents, drop zeros
  void reduce();               // canonical power-basis form
  bool is_zero() const;
  bool is_rational() const;
  Rat rational_part() const;   // requires is_rational()
  bool equals(const Cyclo& o) const;

  // Membership in the localization of Z[zeta_m] at primes above ell:
  // all power-basis coefficient denominators coprime to ell.
  bool ell_integral(long ell) const;
  long min_valuation(long ell) const;  // min v_ell over nonzero coefficients

  // Same element viewed in Q(zeta_mp); mp must be a multiple of conductor.
  Cyclo embedded(unsigned mp) const;
  Cyclo galois(long c) const;          // zeta -> zeta^c, gcd(c, m) = 1
  Cyclo conj() const { return galois(-1); }

  // Dense canonical coefficients (length phi(m)).
  std::vector<Rat> dense() const;
  size_t nnz() const { return terms_.size(); }

  std::string to_string() const;
  std::string serialize() const;       // {"m":..,"coeffs":[["n","d"],..]}
  static Cyclo deserialize_terms(unsigned m, const std::vector<std::pair<unsigned, Rat>>& t);

  const std::vector<std::pair<uint32_t, Rat>>& terms() const { return terms_; }

  // Field inverse (throws on zero); solves the multiplication system exactly.
  Cyclo inverse() const;

  // Norm to Q as det of the multiplication matrix (used as a test oracle too).
  Rat field_norm() const;

 private:
  void lift_to(unsigned mp);
  unsigned m_;
  std::vector<std::pair<uint32_t, Rat>> terms_;
};

unsigned lcm_u(unsigned a, unsigned b);

}  // namespace gg
