#pragma once

#include "curtis.hpp"

namespace gg {

// Two levels of one group sharing a field tower and a regular character
// (psi at level d is psi o N).
struct LevelPair {
  CtxPtr base, ext;
  int d;
  long ell;
  RegularCharacter psi1, psid;
  // level-1 label key -> position among level-d labels (same multiset)
  std::vector<size_t> coarsen_pos;  // indexed by level-1 label position
  HeckePtr L1;
};

LevelPair make_level_pair(Family f, long q, int d, long ell, int psi_orbit);

// spectral pullback along label coarsening; level-d labels without a
// level-1 preimage contribute nothing
HeckeElement sh_map(const LevelPair& pair, const std::vector<SeriesLabel>& ext_labels,
                    const CVec& ext_coords);

struct ShojiVerdict {
  bool pass = false;
  std::string detail;
};

// Norm o Cur_{T,(d)} = Cur_{T,(1)} o Sh for every F-stable torus, exhaustive
// over the level-d Hecke basis (streamed)
ShojiVerdict verify_defining_property(const LevelPair& pair);

// Sh of every level-d basis element lies in the level-1 lattice
ShojiVerdict verify_sh_integrality(const LevelPair& pair);

// commutation with Curtis maps for Levi subgroups: torus Levis coincide with
// the defining property; the proper GL3 Levi pair is out of scope
ShojiVerdict verify_levi_commutation(const LevelPair& pair, const std::string& levi);

struct FusionReport {
  std::vector<std::string> ell_labels_base, ell_labels_ext;
  bool surjective = false, injective = false;
  bool coarsening_injective = false, all_ext_stable = false;
  bool cond_gcd = false;       // gcd(d, r ell) = 1, r = 1 for GL_n
  bool cond_index = false;     // ell does not divide [G^{F^d} : G^F]
  Int index;
  bool implications_hold = false;
  bool ell_divise_checked = false, ell_divise_holds = false;
};
FusionReport fusion_verdicts(const LevelPair& pair);

// order of GL_n(F_Q) / SL2(F_Q) from the closed form (arithmetic only)
Int group_order_closed_form(Family f, const Int& Q);

struct EndoIsoVerdict {
  bool applicable = false;  // ell coprime to |W| * index
  bool isomorphism = false;
  size_t rank_base = 0, rank_ext = 0;
  bool det_unit_forward = false, det_unit_backward = false;
  std::string detail;
};
EndoIsoVerdict verify_endo_iso(const LevelPair& pair);

// masked spectral data: rows of e_psi x e_psi at the ell-element labels only
// (the full level-d lattice is never materialized)
struct MaskedHecke {
  std::vector<SeriesLabel> labels;  // canonical order
  std::vector<CVec> rows;
  CVec tau_cs;
};
MaskedHecke masked_hecke(const CtxPtr& ctx, const RegularCharacter& psi, long ell);

// explicit R-basis from spanning vectors of a tau-symmetric lattice
// (unit-Gram block pivoting + exact spanning certificate)
std::vector<CVec> symmetric_basis(const std::vector<CVec>& gens, const CVec& cs, long ell,
                                  unsigned ring_conductor);

}  // namespace gg
