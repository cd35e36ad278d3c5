#pragma once

#include <map>

#include "common.hpp"

namespace gg {

// Tower of finite fields F_{p^k} for k | K, realized inside one top field
// F_{p^K} with full exp/log tables. Element = index in [0, p^K); 0 is zero,
// nonzero elements are polynomial-coded. Generators are norm-compatible by
// construction: g_k = Norm_{K/k}(g_K) = g_K^{(p^K-1)/(p^k-1)}.
class FieldTower {
 public:
  FieldTower(int p, int top_degree);

  int p() const { return p_; }
  int top_degree() const { return K_; }
  long top_size() const { return N_; }

  long zero() const { return 0; }
  long one() const { return one_; }

  long add(long a, long b) const { return add_[a * N_ + b]; }
  long neg(long a) const { return neg_[a]; }
  long sub(long a, long b) const { return add(a, neg(b)); }
  long mul(long a, long b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (N_ - 1)];
  }
  long inv(long a) const {
    if (a == 0) throw std::domain_error("division by zero");
    return exp_[(N_ - 1 - log_[a]) % (N_ - 1)];
  }
  long div(long a, long b) const { return mul(a, inv(b)); }
  long pow(long a, long e) const;
  long frob(long a, int times = 1) const;  // x -> x^(p^times)

  // discrete log of nonzero x to base g_K
  long dlog_top(long x) const { return log_[x]; }
  long gen_top() const { return exp_[1]; }

  // subfield F_{p^k} (k | K): generator, size, membership, enumeration
  long subfield_size(int k) const { return sub_size_.at(k); }
  long gen(int k) const { return gen_.at(k); }
  bool in_subfield(int k, long x) const;
  const std::vector<long>& subfield_elements(int k) const { return sub_elems_.at(k); }
  // discrete log of x in F_{p^k}^* with respect to gen(k)
  long dlog(int k, long x) const;

  // relative maps (j | k | K)
  long norm(int k, int j, long x) const;    // Norm_{F_{p^k} -> F_{p^j}}
  long trace(int k, int j, long x) const;   // Tr_{F_{p^k} -> F_{p^j}}
  long trace_to_prime(int k, long x) const; // value in [0, p) as integer

  // integer residue [0,p) <-> field element of the prime subfield
  long from_fp(long r) const;
  long to_fp(long x) const;

 private:
  int p_, K_;
  long N_, one_;
  std::vector<long> exp_, log_, neg_, add_;
  std::map<int, long> sub_size_, gen_;
  std::map<int, std::vector<long>> sub_elems_;
};

// Shared tower registry keyed by (p, top_degree).
const FieldTower& tower(int p, int top_degree);

}  // namespace gg
