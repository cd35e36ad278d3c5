#include "dixon.hpp"

#include <cassert>

namespace gg {

namespace {

struct ModP {
  long P;
  long add(long a, long b) const { return (a + b) % P; }
  long sub(long a, long b) const { return mod_pos(a - b, P); }
  long mul(long a, long b) const { return mul_mod(a, b, P); }
  long inv(long a) const { return inv_mod(a, P); }
};

// rank-revealing row reduction; returns basis of the nullspace of A (r x r)
std::vector<std::vector<long>> nullspace(std::vector<std::vector<long>> A, const ModP& F) {
  size_t r = A.size();
  std::vector<long> pivot_of_col(r, -1);
  size_t row = 0;
  for (size_t c = 0; c < r && row < r; ++c) {
    size_t p = row;
    while (p < r && A[p][c] == 0) ++p;
    if (p == r) continue;
    std::swap(A[p], A[row]);
    long iv = F.inv(A[row][c]);
    for (size_t j = 0; j < r; ++j) A[row][j] = F.mul(A[row][j], iv);
    for (size_t i = 0; i < r; ++i) {
      if (i == row || A[i][c] == 0) continue;
      long f = A[i][c];
      for (size_t j = 0; j < r; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[row][j]));
    }
    pivot_of_col[c] = static_cast<long>(row);
    ++row;
  }
  std::vector<std::vector<long>> basis;
  for (size_t c = 0; c < r; ++c) {
    if (pivot_of_col[c] >= 0) continue;
    std::vector<long> v(r, 0);
    v[c] = 1;
    for (size_t cc = 0; cc < r; ++cc)
      if (pivot_of_col[cc] >= 0) v[cc] = F.sub(0, A[pivot_of_col[cc]][c]);
    basis.push_back(v);
  }
  return basis;
}

long det_mod(std::vector<std::vector<long>> A, const ModP& F) {
  size_t r = A.size();
  long det = 1;
  for (size_t c = 0; c < r; ++c) {
    size_t p = c;
    while (p < r && A[p][c] == 0) ++p;
    if (p == r) return 0;
    if (p != c) {
      std::swap(A[p], A[c]);
      det = F.sub(0, det);
    }
    det = F.mul(det, A[c][c]);
    long iv = F.inv(A[c][c]);
    for (size_t i = c + 1; i < r; ++i) {
      if (A[i][c] == 0) continue;
      long f = F.mul(A[i][c], iv);
      for (size_t j = c; j < r; ++j) A[i][j] = F.sub(A[i][j], F.mul(f, A[c][j]));
    }
  }
  return det;
}

}  // namespace

DixonResult dixon_table(const CtxPtr& ctx) {
  if (ctx->order() > 5000) throw std::domain_error("dixon_table: |G| > 5000");
  if (!ctx->enumerated()) throw std::domain_error("dixon_table: context not enumerated");
  const size_t k = ctx->num_classes();
  const long N = ctx->exponent();
  const long ord = to_long(ctx->order());

  // smallest prime P = 1 mod N with P^2 > 4|G| (unique small lifts)
  long P = 0;
  for (long cand = N + 1;; cand += N) {
    if (is_prime(cand) && cand * cand > 4 * ord) {
      P = cand;
      break;
    }
  }
  ModP F{P};

  // class multiplication coefficients a_{ijk} = #{x in C_i : x^{-1} g_k in C_j}
  // via one sweep over the group per k
  std::vector<std::vector<std::vector<long>>> a(
      k, std::vector<std::vector<long>>(k, std::vector<long>(k, 0)));
  const FieldTower& tw = ctx->tw();
  for (size_t kk = 0; kk < k; ++kk) {
    const Mat& gk = ctx->cls(kk).rep;
    for (size_t ei = 0; ei < ctx->elements().size(); ++ei) {
      const Mat& x = ctx->elements()[ei];
      size_t i = ctx->class_of_element(ei);
      Mat y = mat_mul(tw, mat_inv(tw, x), gk);
      size_t j = ctx->class_identify(y);
      a[i][j][kk]++;
    }
  }

  // split common eigenspaces of the class matrices M_i (entries mod P)
  std::vector<std::vector<std::vector<long>>> spaces;  // list of bases (rows, dim k)
  {
    std::vector<std::vector<long>> full;
    for (size_t i = 0; i < k; ++i) {
      std::vector<long> e(k, 0);
      e[i] = 1;
      full.push_back(e);
    }
    spaces.push_back(full);
  }
  for (size_t mi = 1; mi < k; ++mi) {
    bool all_one = true;
    for (const auto& sp : spaces)
      if (sp.size() > 1) all_one = false;
    if (all_one) break;
    // M = class matrix of class mi: M[j][l] = a[mi][?]: acting on class-function
    // coordinates: (M v)_l = sum_j a_{mi, j -> l} v_j with a_{i j l} as above.
    // acting matrix B with B[k][j] = a_{mi,k,j}: then (B v)_k = omega(K_mi) v_k
    // for the central-character vector v = (omega(K_k))_k.
    std::vector<std::vector<long>> M(k, std::vector<long>(k, 0));
    for (size_t K2 = 0; K2 < k; ++K2)
      for (size_t j = 0; j < k; ++j) M[K2][j] = a[mi][K2][j] % P;
    std::vector<std::vector<std::vector<long>>> next;
    for (auto& sp : spaces) {
      size_t r = sp.size();
      if (r == 1) {
        next.push_back(sp);
        continue;
      }
      // restriction A of M to the subspace: M * b_i = sum_j A_{ij} b_j.
      // rows of sp are echelonized with known pivot columns
      std::vector<std::vector<long>> B = sp;  // copy; echelonize tracking pivots
      std::vector<size_t> piv;
      {
        size_t row = 0;
        for (size_t c = 0; c < k && row < r; ++c) {
          size_t p = row;
          while (p < r && B[p][c] == 0) ++p;
          if (p == r) continue;
          std::swap(B[p], B[row]);
          long iv = F.inv(B[row][c]);
          for (size_t j = 0; j < k; ++j) B[row][j] = F.mul(B[row][j], iv);
          for (size_t i2 = 0; i2 < r; ++i2) {
            if (i2 == row || B[i2][c] == 0) continue;
            long f = B[i2][c];
            for (size_t j = 0; j < k; ++j) B[i2][j] = F.sub(B[i2][j], F.mul(f, B[row][j]));
          }
          piv.push_back(c);
          ++row;
        }
        assert(piv.size() == r);
      }
      // matrix of M restricted to W in the echelon basis b: M b_i = sum_j A[j][i] b_j
      std::vector<std::vector<long>> A(r, std::vector<long>(r, 0));
      for (size_t i2 = 0; i2 < r; ++i2) {
        std::vector<long> img(k, 0);
        for (size_t c = 0; c < k; ++c) {
          if (B[i2][c] == 0) continue;
          for (size_t l = 0; l < k; ++l) img[l] = F.add(img[l], F.mul(B[i2][c], M[l][c]));
        }
        for (size_t j = 0; j < r; ++j) {
          long coef = img[piv[j]];
          A[j][i2] = coef;
          if (coef != 0)
            for (size_t l = 0; l < k; ++l) img[l] = F.sub(img[l], F.mul(coef, B[j][l]));
        }
        for (size_t l = 0; l < k; ++l) assert(img[l] == 0);
      }
      // eigenvalues by scanning F_P
      std::vector<std::vector<std::vector<long>>> parts;
      size_t found = 0;
      for (long lam = 0; lam < P && found < r; ++lam) {
        std::vector<std::vector<long>> AL = A;
        for (size_t i2 = 0; i2 < r; ++i2) AL[i2][i2] = F.sub(AL[i2][i2], lam);
        if (det_mod(AL, F) != 0) continue;
        auto ns = nullspace(AL, F);
        if (ns.empty()) continue;
        found += ns.size();
        std::vector<std::vector<long>> sub;
        for (const auto& coeff : ns) {
          std::vector<long> v(k, 0);
          for (size_t j = 0; j < r; ++j)
            if (coeff[j] != 0)
              for (size_t l = 0; l < k; ++l) v[l] = F.add(v[l], F.mul(coeff[j], B[j][l]));
          sub.push_back(v);
        }
        parts.push_back(sub);
      }
      assert(found == r);
      for (auto& pp : parts) next.push_back(pp);
    }
    spaces = std::move(next);
  }
  for (const auto& sp : spaces) assert(sp.size() == 1);
  assert(spaces.size() == k);

  // from each eigenvector, eigenvalues lambda_i = n_i chi(g_i)/chi(1) mod P
  // and the degree, then exact values through the discrete-log lift
  long z = 0;  // primitive root mod P
  {
    std::vector<long> pf;
    long n2 = P - 1;
    for (long d = 2; d * d <= n2; ++d)
      if (n2 % d == 0) {
        pf.push_back(d);
        while (n2 % d == 0) n2 /= d;
      }
    if (n2 > 1) pf.push_back(n2);
    for (long cand = 2; z == 0; ++cand) {
      bool ok = true;
      for (long r2 : pf)
        if (pow_mod(cand, (P - 1) / r2, P) == 1) {
          ok = false;
          break;
        }
      if (ok) z = cand;
    }
  }

  DixonResult out;
  out.aux_prime = P;
  std::vector<std::pair<std::string, size_t>> order_keys;
  std::vector<ClassFn> chars;
  std::vector<long> degrees;
  size_t id_class = ctx->class_identify(mat_identity(ctx->tw(), ctx->n()));

  for (const auto& sp : spaces) {
    const auto& v = sp[0];
    // normalize so that the identity-class coordinate is 1
    long v0 = v[id_class];
    assert(v0 != 0);
    long iv0 = F.inv(v0);
    std::vector<long> lam(k);
    for (size_t i = 0; i < k; ++i) lam[i] = F.mul(v[i], iv0);
    // degree: chi(1)^2 = |G| / sum_i lam_i lam_{inv(i)} / n_i
    long s = 0;
    for (size_t i = 0; i < k; ++i) {
      long ni = to_long(ctx->cls(i).size);
      long term = F.mul(lam[i], lam[ctx->inverse_class(i)]);
      term = F.mul(term, F.inv(ni % P));
      s = F.add(s, term);
    }
    long d2 = F.mul(ord % P, F.inv(s));
    long deg = -1;
    for (long d = 1; d * d <= ord; ++d)
      if (F.mul(d, d) == d2) {
        deg = d;
        break;
      }
    assert(deg > 0);
    // chi(g_i) = deg * lam_i / n_i mod P
    std::vector<long> chi_mod(k);
    for (size_t i = 0; i < k; ++i)
      chi_mod[i] = F.mul(F.mul(deg % P, lam[i]), F.inv(to_long(ctx->cls(i).size) % P));

    ClassFn cf(ctx);
    for (size_t i = 0; i < k; ++i) {
      // order of rep and power-class values
      Mat rep = ctx->cls(i).rep;
      Mat cur = rep;
      long o = 1;
      Mat idm = mat_identity(ctx->tw(), ctx->n());
      while (!(cur == idm)) {
        cur = mat_mul(ctx->tw(), cur, rep);
        ++o;
      }
      long eta = pow_mod(z, (P - 1) / o, P);
      Cyclo val;
      long inv_o = F.inv(o % P);
      for (long t = 0; t < o; ++t) {
        // m_t = (1/o) sum_j chi(g^j) eta^{-jt}
        long m = 0;
        for (long j = 0; j < o; ++j) {
          size_t cj = ctx->power_class(i, j);
          m = F.add(m, F.mul(chi_mod[cj], pow_mod(eta, mod_pos(-j * t, P - 1), P)));
        }
        m = F.mul(m, inv_o);
        assert(m <= deg);  // multiplicities are small non-negative integers
        if (m != 0) val.add_root_multiple(static_cast<unsigned>(o), t, Rat(m));
      }
      val.reduce();
      cf.v[i] = val;
    }
    chars.push_back(cf);
    degrees.push_back(deg);
  }

  // canonical ordering: by degree, then by serialized values
  std::vector<size_t> idx(k);
  for (size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<std::string> keys(k);
  for (size_t i = 0; i < k; ++i) {
    std::string s = std::to_string(degrees[i]) + "|";
    for (const auto& c : chars[i].v) s += c.serialize();
    keys[i] = s;
  }
  std::sort(idx.begin(), idx.end(), [&](size_t A, size_t B) {
    if (degrees[A] != degrees[B]) return degrees[A] < degrees[B];
    return keys[A] < keys[B];
  });
  for (size_t i : idx) {
    out.chars.push_back(chars[i]);
    out.degrees.push_back(degrees[i]);
  }
  // degree sum check
  Int sum2 = 0;
  for (long d : out.degrees) sum2 += Int(d) * d;
  assert(sum2 == ctx->order());
  return out;
}

}  // namespace gg
