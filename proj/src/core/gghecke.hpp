#pragma once

#include "dlchar.hpp"
#include "linalg.hpp"

namespace gg {

// Linear character of U^{F^e}, nontrivial on every simple-root subgroup,
// given by nonzero coefficients on the simple-root coordinates.
struct RegularCharacter {
  CtxPtr ctx;
  int orbit_id = 0;
  std::vector<long> coeffs;  // tower field elements, one per simple root
  Cyclo value(const Mat& u) const;      // psi(u)
  Cyclo value_inv(const Mat& u) const;  // psi(u^{-1})
  long exponent_at(const Mat& u) const; // additive character exponent in [0,p)
};

// one representative per torus-conjugation orbit
std::vector<RegularCharacter> regular_characters(const CtxPtr& ctx);
// psi o N on the level-d unipotent radical (same coefficients, trace form)
RegularCharacter psi_at_level(const RegularCharacter& base, const CtxPtr& ext);

// character of Ind_{U}^{G} psi
ClassFn gamma_character(const CtxPtr& ctx, const RegularCharacter& psi);

// the GG-series constituents chi_s, one per label, in canonical label order
std::vector<ClassFn> gg_constituents(const CtxPtr& ctx, const RegularCharacter& psi,
                                     const std::vector<SeriesLabel>& labels);

// canonical double-coset representatives spanning the Hecke algebra
std::vector<Mat> hecke_coset_reps(const CtxPtr& ctx);

// spectral coordinates of e_psi x e_psi: chi_s(e_psi x e_psi) per label
CVec hecke_spectral_row(const CtxPtr& ctx, const RegularCharacter& psi,
                        const std::vector<ClassFn>& ggchars, const Mat& x);

// group-support form of e_psi x e_psi (enumerated contexts only)
std::map<uint32_t, Cyclo> hecke_group_support(const CtxPtr& ctx, const RegularCharacter& psi,
                                              const Mat& x);
std::map<uint32_t, Cyclo> convolve(const CtxPtr& ctx, const std::map<uint32_t, Cyclo>& a,
                                   const std::map<uint32_t, Cyclo>& b);
Cyclo support_spectral_coord(const CtxPtr& ctx, const ClassFn& chi,
                             const std::map<uint32_t, Cyclo>& h);

// An element of K H^G in spectral coordinates (canonical label order).
struct HeckeElement {
  CVec coords;
};

// The O-lattice e_psi O G e_psi with its symmetrizing form.
class HeckeLattice {
 public:
  static std::shared_ptr<const HeckeLattice> build(const CtxPtr& ctx, const RegularCharacter& psi);

  const CtxPtr& ctx() const { return ctx_; }
  const RegularCharacter& psi() const { return psi_; }
  size_t rank() const { return labels_.size(); }
  const std::vector<SeriesLabel>& labels() const { return labels_; }
  size_t label_pos(const SeriesLabel& l) const;
  const std::vector<Mat>& coset_reps() const { return reps_; }
  const CVec& basis_row(size_t i) const { return rows_[i]; }
  const std::vector<Cyclo>& tau_constants() const { return tau_c_; }

  HeckeElement unit() const;
  HeckeElement basis_element(size_t i) const { return {rows_[i]}; }
  HeckeElement unipotent_idempotent(long ell) const;
  // indicator vector of an arbitrary label subset
  HeckeElement indicator(const std::vector<char>& mask) const;

  Cyclo tau(const HeckeElement& h) const;
  // ell-integral membership in the lattice; optionally returns coefficients
  bool member(const HeckeElement& h, long ell, CVec* coeffs = nullptr) const;
  // Gram matrix of tau against the basis
  CMat gram() const;

 private:
  CtxPtr ctx_;
  RegularCharacter psi_;
  const CycloLU& lu() const;

  std::vector<SeriesLabel> labels_;
  std::map<std::string, size_t> label_pos_;
  std::vector<Mat> reps_;
  std::vector<CVec> rows_;
  std::vector<Cyclo> tau_c_;
  // built on first membership query: full-rank solves are only ever asked of
  // small lattices, large ones are consumed through masked/truncated paths
  mutable std::mutex lu_mu_;
  mutable std::unique_ptr<CycloLU> lu_;  // columns = basis vectors
};

using HeckePtr = std::shared_ptr<const HeckeLattice>;

}  // namespace gg
