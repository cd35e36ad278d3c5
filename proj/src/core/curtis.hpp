#pragma once

#include "gghecke.hpp"

namespace gg {

// Element of the torus group algebra K T_w^{F^e}, in point coefficients.
// Fourier coefficients are evaluations under the torus characters.
struct TorusAlgElem {
  TorusPtr T;
  CVec point_coeffs;
  Cyclo fourier(size_t char_idx) const;   // sum_t c_t theta(t)
  Cyclo identity_coeff() const;           // tau_w
  bool ell_integral(long ell) const;
};

// group-algebra product and the norm map, both pointwise over the torus
TorusAlgElem torus_mul(const TorusAlgElem& a, const TorusAlgElem& b);
TorusAlgElem torus_norm_push(const TorusAlgElem& a, const TorusPtr& to);

// Curtis map to one torus: Fourier coefficient at theta is h at label(w,theta)
TorusAlgElem curtis_torus(const HeckeLattice& L, const HeckeElement& h, const TorusPtr& T);

// Trace-formula route (group-support; |G| <= 5000): the bimodule trace
// expanded over Irr(T^F). Must agree with curtis_torus.
TorusAlgElem curtis_trace_check(const HeckeLattice& L, const std::map<uint32_t, Cyclo>& h,
                                const TorusPtr& T);

// product of Curtis maps over the Weyl classes (with multiplicities)
struct CurtisTuple {
  std::vector<TorusAlgElem> comps;  // one per Weyl class, canonical order
  std::vector<int> mult;
};
CurtisTuple curtis_product(const HeckeLattice& L, const HeckeElement& h);
std::vector<TorusPtr> weyl_tori(const CtxPtr& ctx);

// membership in im(KCur): Fourier coefficients constant on label classes
bool in_image_K(const HeckeLattice& L, const CurtisTuple& t, HeckeElement* coords = nullptr);

Cyclo tau_tilde(const CtxPtr& ctx, const CurtisTuple& t);

// tau_H = tau-tilde o Cur on the whole Hecke basis (streamed for large
// contexts). Returns the number of basis elements checked.
size_t verify_tau_identity(const CtxPtr& ctx, const RegularCharacter& psi);

// GL3 -> GL2 x GL1 Levi map on spectral coordinates (multiset merge)
HeckeElement curtis_levi(const HeckeLattice& Lg, const HeckeElement& h, const HeckeLattice& Ll);

struct ImageVerdict {
  bool equal;
  long lattice_index_valuation;  // v_ell of [L2 : L1]
  // witness for strictness, as a-coordinates and point-coefficient tuples
  HeckeElement witness_coords;
  std::string witness_text;
};
ImageVerdict verify_theorem_image(const CtxPtr& ctx, const RegularCharacter& psi, long ell);

struct IntegralityVerdict {
  bool basis_integral;        // Cur tuples of the basis are integral
  bool membership_equivalence;  // h in H  <=>  all Cur_T(h) integral (samples)
  bool levi_integral;         // GL3 only: Cur_L(basis) in H^L
};
IntegralityVerdict verify_cur_integrality(const CtxPtr& ctx, const RegularCharacter& psi, long ell);

// R-basis of the b-truncated lattice b H, extracted from the masked basis
// rows with an exact certificate (every generator integral in the basis).
struct TruncatedBasis {
  std::vector<size_t> mask_pos;   // positions of the ell-element labels
  std::vector<size_t> chosen;     // generator indices forming the basis
  CMat rows;                      // chosen masked rows (k x k)
  std::shared_ptr<CycloLU> lu;
  size_t rank() const { return mask_pos.size(); }
  CVec mask(const HeckeElement& h) const;
  bool coords(const CVec& masked, long ell, CVec* out) const;
};
TruncatedBasis truncated_basis(const HeckeLattice& L, long ell, unsigned ring_conductor = 0);

struct SylowVerdict {
  bool applicable;      // ell does not divide |W|
  bool trivial;         // ell does not divide |G|
  bool isomorphism;
  size_t rank_hecke;    // rank of b^G H^G
  size_t rank_orbits;   // number of N(S)-orbit sums
  std::string torus_wname;
  std::string detail;
};
SylowVerdict verify_image_sylow(const CtxPtr& ctx, const RegularCharacter& psi, long ell);

}  // namespace gg
