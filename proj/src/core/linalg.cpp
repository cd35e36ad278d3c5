#include "linalg.hpp"

#include <cassert>

namespace gg {

unsigned RelativeSplit::ambient(unsigned m, unsigned mref) {
  unsigned A = 1;
  unsigned rest = m;
  for (unsigned p = 2; p <= mref; ++p) {
    if (mref % p != 0) continue;
    if (p > 1 && mref % p == 0 && is_prime(p)) {
      while (rest % p == 0) {
        A *= p;
        rest /= p;
      }
    }
  }
  return A;
}

RelativeSplit::RelativeSplit(unsigned m, unsigned A) : m_(m), A_(A) {
  if (A == 0 || m % A != 0) throw std::domain_error("bad relative split");
  B_ = m / A;
  if (std::gcd(A_, B_) != 1) throw std::domain_error("split not coprime");
  phiB_ = euler_phi(B_);
  invB_modA_ = A_ == 1 ? 0 : inv_mod(B_ % A_, A_);
  invA_modB_ = B_ == 1 ? 0 : inv_mod(A_ % B_, B_);
}

std::vector<Cyclo> RelativeSplit::decompose(const Cyclo& x) const {
  std::vector<Cyclo> comps(phiB_);
  Cyclo lifted = x.embedded(m_);
  const CycloField& FB = CycloField::get(B_);
  for (const auto& [e, c] : lifted.terms()) {
    // zeta_m^e = zeta_A^a * zeta_B^b with e/m = a/A + b/B (CRT)
    long a = A_ == 1 ? 0 : mod_pos(static_cast<long>(e) * invB_modA_, A_);
    long b = B_ == 1 ? 0 : mod_pos(static_cast<long>(e) * invA_modB_, B_);
    if (static_cast<unsigned>(b) < phiB_) {
      comps[b].add_root_multiple(A_, a, c);
    } else {
      const auto& row = FB.pow_row(b);
      for (unsigned j = 0; j < phiB_; ++j)
        if (row[j] != 0) comps[j].add_root_multiple(A_, a, c * Rat(row[j]));
    }
  }
  for (auto& comp : comps) comp.consolidate();
  return comps;
}

Cyclo RelativeSplit::recombine(const std::vector<Cyclo>& comps) const {
  Cyclo out = Cyclo::zero().embedded(m_);
  for (unsigned j = 0; j < phiB_; ++j) {
    if (comps[j].structurally_zero()) continue;
    Cyclo t = comps[j].embedded(m_);
    t *= Cyclo::root(B_, j).embedded(m_);
    out += t;
  }
  return out;
}

CycloLU::CycloLU(const CMat& mat) : n_(mat.size()) {
  base_ = 1;
  for (const auto& row : mat)
    for (const auto& x : row) base_ = lcm_u(base_, x.conductor());
  lu_.assign(n_, CVec(n_));
  for (unsigned i = 0; i < n_; ++i)
    for (unsigned j = 0; j < n_; ++j) {
      lu_[i][j] = mat[i][j].embedded(base_);
      lu_[i][j].reduce();
    }
  perm_.resize(n_);
  pivinv_.resize(n_);
  std::vector<unsigned> rows(n_);
  for (unsigned i = 0; i < n_; ++i) rows[i] = i;
  for (unsigned c = 0; c < n_; ++c) {
    unsigned p = c;
    while (p < n_ && lu_[rows[p]][c].is_zero()) ++p;
    if (p == n_) throw std::domain_error("CycloLU: singular matrix");
    std::swap(rows[c], rows[p]);
    pivinv_[c] = lu_[rows[c]][c].inverse();
    for (unsigned i = c + 1; i < n_; ++i) {
      Cyclo f = lu_[rows[i]][c];
      if (f.is_zero()) {
        lu_[rows[i]][c] = Cyclo::zero();
        continue;
      }
      f *= pivinv_[c];
      f.reduce();
      lu_[rows[i]][c] = f;  // store multiplier
      for (unsigned j = c + 1; j < n_; ++j) {
        Cyclo t = f;
        t *= lu_[rows[c]][j];
        lu_[rows[i]][j] -= t;
        lu_[rows[i]][j].reduce();
      }
    }
  }
  perm_ = rows;
}

CVec CycloLU::solve_base(const CVec& rhs) const {
  CVec b(n_);
  for (unsigned i = 0; i < n_; ++i) b[i] = rhs[perm_[i]];
  // forward
  for (unsigned c = 0; c < n_; ++c)
    for (unsigned i = c + 1; i < n_; ++i) {
      if (lu_[perm_[i]][c].structurally_zero()) continue;
      Cyclo t = lu_[perm_[i]][c];
      t *= b[c];
      b[i] -= t;
    }
  // back
  for (unsigned c = n_; c-- > 0;) {
    for (unsigned j = c + 1; j < n_; ++j) {
      if (lu_[perm_[c]][j].structurally_zero()) continue;
      Cyclo t = lu_[perm_[c]][j];
      t *= b[j];
      b[c] -= t;
    }
    b[c] *= pivinv_[c];
    b[c].reduce();
  }
  return b;
}

CVec CycloLU::solve(const CVec& rhs) const {
  unsigned M = base_;
  for (const auto& x : rhs) M = lcm_u(M, x.conductor());
  if (M == base_ || M % base_ == 0) {
    unsigned A = RelativeSplit::ambient(M, base_);
    if (A == M) {
      CVec lifted(rhs.size());
      for (size_t i = 0; i < rhs.size(); ++i) lifted[i] = rhs[i].embedded(M);
      return solve_base(lifted);
    }
    RelativeSplit split(M, A);
    std::vector<CVec> comp_rhs(split.rank(), CVec(n_));
    for (unsigned i = 0; i < n_; ++i) {
      auto comps = split.decompose(rhs[i]);
      for (unsigned j = 0; j < split.rank(); ++j) comp_rhs[j][i] = comps[j];
    }
    std::vector<CVec> comp_sol(split.rank());
    for (unsigned j = 0; j < split.rank(); ++j) comp_sol[j] = solve_base(comp_rhs[j]);
    CVec out(n_);
    for (unsigned i = 0; i < n_; ++i) {
      std::vector<Cyclo> comps(split.rank());
      for (unsigned j = 0; j < split.rank(); ++j) comps[j] = comp_sol[j][i];
      out[i] = split.recombine(comps);
    }
    return out;
  }
  throw std::domain_error("CycloLU::solve: rhs conductor incompatible with base");
}

bool CycloLU::solve_is_integral(const CVec& rhs, long ell, CVec* out) const {
  CVec x = solve(rhs);
  bool ok = true;
  for (const auto& xi : x)
    if (!xi.ell_integral(ell)) {
      ok = false;
      break;
    }
  if (out) *out = std::move(x);
  return ok;
}

bool det_unit_mod_ell(const CMat& mat, unsigned m, long ell) {
  const CycloField& F = CycloField::get(m);
  unsigned phi = F.phi();
  unsigned n = mat.size();
  unsigned N = n * phi;
  // expanded matrix over F_ell: block (i,j) = mult-by-mat[i][j] on Z[zeta]/ell
  std::vector<std::vector<long>> E(N, std::vector<long>(N, 0));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      Cyclo x = mat[i][j].embedded(m);
      x.reduce();
      for (const auto& [e, c] : x.terms()) {
        if (!rat_ell_integral(c, ell)) throw std::domain_error("entry not ell-integral");
        // c mod ell
        long num = mod_pos(static_cast<long>(mpz_fdiv_ui(c.get_num().get_mpz_t(), ell)), ell);
        long den = mod_pos(static_cast<long>(mpz_fdiv_ui(c.get_den().get_mpz_t(), ell)), ell);
        long cv = mul_mod(num, inv_mod(den, ell), ell);
        if (cv == 0) continue;
        // column k of the block: zeta^{e+k} reduced
        for (unsigned k = 0; k < phi; ++k) {
          const auto& row = F.pow_row((e + k) % m);
          for (unsigned r = 0; r < phi; ++r) {
            if (row[r] == 0) continue;
            long add = mul_mod(cv, mod_pos(row[r] % ell, ell), ell);
            long& cell = E[i * phi + r][j * phi + k];
            cell = (cell + add) % ell;
          }
        }
      }
    }
  // Gaussian elimination over F_ell
  for (unsigned c = 0; c < N; ++c) {
    unsigned p = c;
    while (p < N && E[p][c] == 0) ++p;
    if (p == N) return false;
    std::swap(E[p], E[c]);
    long inv = inv_mod(E[c][c], ell);
    for (unsigned i = c + 1; i < N; ++i) {
      if (E[i][c] == 0) continue;
      long f = mul_mod(E[i][c], inv, ell);
      for (unsigned j = c; j < N; ++j)
        E[i][j] = mod_pos(E[i][j] - mul_mod(f, E[c][j], ell), ell);
    }
  }
  return true;
}

namespace {
long vec_val(const Rat& x, long ell) { return ell_valuation(x, ell); }
}  // namespace

EllRowLattice::EllRowLattice(std::vector<std::vector<Rat>> rows, long ell) : ell_(ell) {
  if (rows.empty()) return;
  size_t ncols = rows[0].size();
  std::vector<char> used(rows.size(), 0);
  for (size_t col = 0; col < ncols; ++col) {
    long best_v = 0;
    size_t best = SIZE_MAX;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i][col] == 0) continue;
      long v = vec_val(rows[i][col], ell);
      if (best == SIZE_MAX || v < best_v) {
        best = i;
        best_v = v;
      }
    }
    if (best == SIZE_MAX) continue;
    used[best] = 1;
    for (size_t i = 0; i < rows.size(); ++i) {
      if (used[i] || rows[i][col] == 0) continue;
      Rat f = rows[i][col] / rows[best][col];
      for (size_t j = col; j < ncols; ++j) rows[i][j] -= f * rows[best][j];
    }
    basis_.push_back(rows[best]);
    pivot_col_.push_back(col);
  }
}

bool EllRowLattice::contains(std::vector<Rat> v) const {
  for (size_t b = 0; b < basis_.size(); ++b) {
    size_t c = pivot_col_[b];
    if (v[c] == 0) continue;
    Rat f = v[c] / basis_[b][c];
    if (!rat_ell_integral(f, ell_)) return false;
    for (size_t j = c; j < v.size(); ++j) v[j] -= f * basis_[b][j];
  }
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

EllSmithResult ell_smith(std::vector<std::vector<Rat>> C, size_t ncols, long ell) {
  size_t nrows = C.size();
  EllSmithResult res;
  res.V.assign(ncols, std::vector<Rat>(ncols, Rat(0)));
  for (size_t i = 0; i < ncols; ++i) res.V[i][i] = 1;
  res.diag_val.assign(ncols, -1);
  res.rank = 0;
  std::vector<char> row_done(nrows, 0), col_done(ncols, 0);
  for (;;) {
    // global minimal-valuation pivot among active entries
    size_t pr = SIZE_MAX, pc = SIZE_MAX;
    long pv = 0;
    for (size_t i = 0; i < nrows; ++i) {
      if (row_done[i]) continue;
      for (size_t j = 0; j < ncols; ++j) {
        if (col_done[j] || C[i][j] == 0) continue;
        long v = vec_val(C[i][j], ell);
        if (pr == SIZE_MAX || v < pv) {
          pr = i;
          pc = j;
          pv = v;
        }
      }
    }
    if (pr == SIZE_MAX) break;
    // clear column pc (rows) and row pr (columns) with Z_(ell)-unimodular ops
    for (size_t i = 0; i < nrows; ++i) {
      if (i == pr || row_done[i] || C[i][pc] == 0) continue;
      Rat f = C[i][pc] / C[pr][pc];
      for (size_t j = 0; j < ncols; ++j)
        if (!col_done[j] && C[pr][j] != 0) C[i][j] -= f * C[pr][j];
      C[i][pc] = 0;
    }
    for (size_t j = 0; j < ncols; ++j) {
      if (j == pc || col_done[j] || C[pr][j] == 0) continue;
      Rat f = C[pr][j] / C[pr][pc];
      for (size_t i = 0; i < nrows; ++i)
        if (!row_done[i] && C[i][pc] != 0) C[i][j] -= f * C[i][pc];
      // column op on V: col_j -= f * col_pc
      for (size_t i = 0; i < ncols; ++i) res.V[i][j] -= f * res.V[i][pc];
      C[pr][j] = 0;
    }
    row_done[pr] = 1;
    col_done[pc] = 1;
    res.diag_val[pc] = pv;
    ++res.rank;
  }
  return res;
}

std::vector<Int> integer_snf(std::vector<std::vector<Int>> M) {
  size_t nr = M.size();
  if (nr == 0) return {};
  size_t nc = M[0].size();
  size_t t = 0;
  std::vector<Int> diag;
  while (t < nr && t < nc) {
    // find a nonzero pivot with minimal absolute value
    size_t pr = SIZE_MAX, pc = SIZE_MAX;
    Int best;
    for (size_t i = t; i < nr; ++i)
      for (size_t j = t; j < nc; ++j)
        if (M[i][j] != 0 && (pr == SIZE_MAX || abs(M[i][j]) < best)) {
          pr = i;
          pc = j;
          best = abs(M[i][j]);
        }
    if (pr == SIZE_MAX) break;
    std::swap(M[t], M[pr]);
    for (size_t i = 0; i < nr; ++i) std::swap(M[i][t], M[i][pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = t + 1; i < nr; ++i) {
        if (M[i][t] == 0) continue;
        Int q = M[i][t] / M[t][t];
        if (q != 0)
          for (size_t j = t; j < nc; ++j) M[i][j] -= q * M[t][j];
        if (M[i][t] != 0) {
          std::swap(M[t], M[i]);
          clean = false;
        }
      }
      for (size_t j = t + 1; j < nc; ++j) {
        if (M[t][j] == 0) continue;
        Int q = M[t][j] / M[t][t];
        if (q != 0)
          for (size_t i = t; i < nr; ++i) M[i][j] -= q * M[i][t];
        if (M[t][j] != 0) {
          for (size_t i = t; i < nr; ++i) std::swap(M[i][t], M[i][j]);
          clean = false;
        }
      }
    }
    ++t;
  }
  // enforce divisibility chain
  size_t r = t;
  for (size_t i = 0; i < r; ++i) diag.push_back(abs(M[i][i]));
  for (size_t i = 0; i + 1 < diag.size(); ++i)
    for (size_t j = i + 1; j < diag.size(); ++j) {
      if (diag[i] == 0) std::swap(diag[i], diag[j]);
      if (diag[j] % diag[i] != 0) {
        Int g = gcd(diag[i], diag[j]);
        Int l = diag[i] / g * diag[j];
        diag[i] = g;
        diag[j] = l;
      }
    }
  std::sort(diag.begin(), diag.end());
  return diag;
}

}  // namespace gg
