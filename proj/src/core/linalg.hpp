#pragma once

#include "cyclotomic.hpp"

namespace gg {

using CVec = std::vector<Cyclo>;
using CMat = std::vector<CVec>;

// Decomposition of Q(zeta_m) as a free module over Q(zeta_A) with basis
// {zeta_B^j : j < phi(B)}, for a coprime factorization m = A*B. Exponent
// splitting is CRT; zeta_B^j with j >= phi(B) folds through Phi_B.
class RelativeSplit {
 public:
  RelativeSplit(unsigned m, unsigned A);
  unsigned m() const { return m_; }
  unsigned A() const { return A_; }
  unsigned B() const { return B_; }
  unsigned rank() const { return phiB_; }
  // components over Q(zeta_A), length rank()
  std::vector<Cyclo> decompose(const Cyclo& x) const;
  Cyclo recombine(const std::vector<Cyclo>& comps) const;

  // Smallest coprime-complement conductor A with mref | A | m.
  static unsigned ambient(unsigned m, unsigned mref);

 private:
  unsigned m_, A_, B_, phiB_;
  long invB_modA_, invA_modB_;
};

// Exact LU (PA = LU) over Q(zeta_base) with partial pivoting by first
// nonzero entry. Solving admits right-hand sides over any Q(zeta_M) with
// base | A for the canonical coprime split of M; the solve then runs
// componentwise over Q(zeta_A).
class CycloLU {
 public:
  // square matrix, row-major; throws if singular
  explicit CycloLU(const CMat& mat);
  unsigned dim() const { return n_; }
  unsigned base_conductor() const { return base_; }

  // Solve M x = rhs with rhs entries at conductor base_ (or divisors).
  CVec solve_base(const CVec& rhs) const;

  // Solve with rhs over an arbitrary conductor multiple; performs the
  // relative decomposition internally. Returns x over Q(zeta_M).
  CVec solve(const CVec& rhs) const;

  // x with all coordinates ell-integral? (solves, then tests)
  bool solve_is_integral(const CVec& rhs, long ell, CVec* out = nullptr) const;

 private:
  unsigned n_, base_;
  std::vector<unsigned> perm_;
  CMat lu_;                       // combined LU storage
  std::vector<Cyclo> pivinv_;
};

// det(M) a unit in Z[zeta_m] localized at ell? Checked as invertibility of
// the scalar-expanded matrix over F_ell; entries must be ell-integral.
bool det_unit_mod_ell(const CMat& mat, unsigned m, long ell);

// Row-echelon basis of the Z_(ell)-row-span of rational vectors.
// Pivoting on minimal ell-valuation keeps all transforms unimodular over
// Z_(ell), so the row span is preserved exactly.
class EllRowLattice {
 public:
  EllRowLattice(std::vector<std::vector<Rat>> rows, long ell);
  size_t rank() const { return basis_.size(); }
  const std::vector<std::vector<Rat>>& basis() const { return basis_; }
  bool contains(std::vector<Rat> v) const;

 private:
  long ell_;
  std::vector<std::vector<Rat>> basis_;
  std::vector<size_t> pivot_col_;
};

// Diagonalization C = U D V^{-1}-style data over Z_(ell): returns the
// transform V (columns) and the diagonal valuations so that the congruence
// lattice {x : C x in ell^k Z_(ell)^rows} has basis V e_i * ell^{max(0,k-v_i)}.
struct EllSmithResult {
  std::vector<std::vector<Rat>> V;   // n x n, unimodular over Z_(ell), column-major
  std::vector<long> diag_val;        // valuation of i-th pivot; -1 marks "zero" (rank deficit)
  size_t rank;
};
EllSmithResult ell_smith(std::vector<std::vector<Rat>> C, size_t ncols, long ell);

// Exact Smith normal form over Z for small matrices (torus lattices).
// Returns diagonal entries (non-negative, divisibility chain).
std::vector<Int> integer_snf(std::vector<std::vector<Int>> M);

}  // namespace gg
