#pragma once

#include "groups.hpp"

namespace gg {

// Rational series label. For GL_n: the eigenvalue multiset of the dual
// semisimple class, as reduced fractions in Q/Z (one block per Levi factor;
// the full group has a single block). For SL2: the index data of a concrete
// semisimple class of PGL2(F_q).
struct SeriesLabel {
  std::string key;
  std::vector<std::vector<std::pair<long, long>>> blocks;  // reduced fractions
  long elem_order = -1;  // dual element order (set for SL2 labels)
  bool operator==(const SeriesLabel& o) const { return key == o.key; }
  bool operator<(const SeriesLabel& o) const { return key < o.key; }
};

SeriesLabel label_from_fractions(std::vector<std::vector<std::pair<long, long>>> blocks);
// multiset after multiplying every fraction by m (stability test helper)
bool label_frac_stable_under(const SeriesLabel& l, long m);
// true iff every block multiset has entries of ell-power order in Q/Z
bool label_is_ell_element(const SeriesLabel& l, long ell);
// the same multiset viewed at a coarser level; for GL_n this is the identity
// on fractions (containment of rational classes is multiset equality)
SeriesLabel label_coarsen(const SeriesLabel& l, long q_to_the_e, int d);

// Two views of a twisted maximal torus inside G^{F^e}:
//  - Group: the torus of type w for the group G^{F^e} with its own Frobenius
//    F^e (lattice action M = q^e P_w). This is what the character theory,
//    Hecke algebra and Curtis product of G^{F^e} use.
//  - Pair: the F-twisted torus T_w viewed at level e (lattice action
//    (q P_w)^e). Level pairs share these tori, so norm maps and the
//    Curtis-Shoji defining property live here.
// The views agree at e = 1.
enum class TorusKind { Group, Pair };

class TorusModel {
 public:
  static std::shared_ptr<const TorusModel> build(const CtxPtr& ctx, const std::string& wname,
                                                 TorusKind kind = TorusKind::Group);
  TorusKind kind() const { return kind_; }

  const CtxPtr& ctx() const { return ctx_; }
  const std::string& wname() const { return wname_; }
  int lattice_rank() const { return nl_; }
  long num_points() const { return npts_; }
  const std::vector<Int>& invariant_factors() const { return invf_; }

  // canonical point/character representatives (coordinates in Z^nl)
  const std::vector<std::array<long, 3>>& points() const { return pts_; }
  const std::vector<std::array<long, 3>>& chars() const { return chs_; }
  size_t point_index(std::array<long, 3> v) const;
  size_t char_index(std::array<long, 3> v) const;
  size_t point_add(size_t a, size_t b) const;
  size_t point_neg(size_t a) const;
  size_t point_frobenius(size_t a) const;            // lattice M action
  long point_order(size_t a) const;
  long char_order(size_t b) const;

  // theta_b(t_a) as an exact root of unity; fraction b^T A^{-1} a mod 1
  Cyclo pair(size_t char_idx, size_t point_idx) const;
  Rat pair_fraction(size_t char_idx, size_t point_idx) const;

  // verified embedding onto the concrete torus subgroup
  const Subgroup& embedded() const { return sub_; }
  Mat embed_point(size_t idx) const { return sub_.elems[idx]; }
  size_t point_of_mat(const Mat& m) const;

  // label of (w, theta_b); GL_n fractions or SL2 dual-class data
  SeriesLabel series_label(size_t char_idx) const;

  // exponent-matrix data shared with norm maps
  const std::vector<std::vector<long>>& M() const { return M_; }

 private:
  TorusModel() = default;
  void build_lattice();
  void build_embedding();
  void validate();

  CtxPtr ctx_;
  std::string wname_;
  TorusKind kind_ = TorusKind::Group;
  long q_eff_;    // Group: q^e, Pair: q
  int e_eff_;     // Group: 1,   Pair: e
  int db_eff_;    // p-degree of F_{q_eff}
  int nl_;
  std::vector<std::vector<long>> M_, A_, adjA_, At_, adjAt_;
  long detA_;
  long npts_;
  std::vector<Int> invf_;
  std::vector<std::vector<long>> hnf_pts_, hnf_chs_;  // column HNF bases
  std::vector<std::array<long, 3>> pts_, chs_;
  std::unordered_map<uint64_t, uint32_t> pt_index_, ch_index_;
  Subgroup sub_;
  Mat lang_g_;      // identity when the torus is split
  bool twisted_ = false;
  std::vector<std::vector<long>> Bexp_;  // exponent matrix of the embedding
  int gen_degree_ = 0;                   // tower degree of the coordinate generator

  friend std::vector<size_t> norm_points(const TorusModel& from, const TorusModel& to);
  friend size_t inflate_character(const TorusModel& base, const TorusModel& ext, size_t chi);
};

using TorusPtr = std::shared_ptr<const TorusModel>;

// Norm map N_{F^d/F}: level-d points onto level-1 points (same family/q/w).
// In these coordinates it is the canonical projection of lattice quotients;
// agreement with t F(t)...F^{d-1}(t) through the embeddings is asserted.
std::vector<size_t> norm_points(const TorusModel& from, const TorusModel& to);

// theta -> theta o N; exponent vectors transform by (I + M^T + ... + (M^T)^{d-1})
size_t inflate_character(const TorusModel& base, const TorusModel& ext, size_t chi);

// Dual-group data for SL2: concrete PGL2(F_q) semisimple classes.
class SL2Dual {
 public:
  static std::shared_ptr<const SL2Dual> get(long q);
  long q() const { return q_; }
  size_t num_ss_classes() const { return reps_.size(); }
  // label of the theta_b character of the w-torus
  SeriesLabel label(const std::string& wname, long b) const;

 private:
  explicit SL2Dual(long q);
  std::string sweep_key(const Mat& m) const;
  long q_;
  CtxPtr gl2_;
  std::vector<std::string> reps_;                  // canonical sweep keys, sorted
  std::map<std::string, int> class_of_key_;
};

}  // namespace gg
