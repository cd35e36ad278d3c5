#pragma once

#include <array>
#include <memory>
#include <unordered_map>

#include "cyclotomic.hpp"
#include "finitefield.hpp"

namespace gg {

enum class Family { GL2, GL3, SL2 };

std::string family_name(Family f);
Family family_from_name(const std::string& s);

// Square matrix over the tower's top field, n <= 3; entries are tower element
// indices and are expected to lie in the context's coefficient subfield.
struct Mat {
  int n = 0;
  std::array<long, 9> a{};
  long& at(int i, int j) { return a[i * n + j]; }
  long at(int i, int j) const { return a[i * n + j]; }
  bool operator==(const Mat& o) const { return n == o.n && a == o.a; }
};

Mat mat_identity(const FieldTower& tw, int n);
Mat mat_mul(const FieldTower& tw, const Mat& x, const Mat& y);
long mat_det(const FieldTower& tw, const Mat& x);
long mat_trace(const FieldTower& tw, const Mat& x);
Mat mat_inv(const FieldTower& tw, const Mat& x);
Mat mat_pow(const FieldTower& tw, Mat x, Int e);
Mat mat_frob(const FieldTower& tw, const Mat& x, int p_degree);
bool mat_is_scalar(const Mat& x);
uint64_t mat_pack(const Mat& x, long N);

// A concrete subgroup given by its element list (tori, U, B, centre, ...).
struct Subgroup {
  std::string name;
  std::vector<Mat> elems;
  std::unordered_map<uint64_t, uint32_t> index;  // pack -> position
  void build_index(long N);
  bool contains(const Mat& m, long N) const;
};

struct ClassInfo {
  Mat rep;
  Int size;
  std::string label;  // canonical, sortable
};

// G^{F^e} for a registry (family, q, e): matrices over F_{q^e}.
class GroupContext {
 public:
  // top_degree selects the shared field tower (0 = minimal for this context);
  // level pairs must pass a common multiple so both levels share one tower
  // and one norm-compatible generator chain.
  static std::shared_ptr<const GroupContext> build(Family f, long q, int e, int top_degree = 0);
  static int min_top_degree(Family f, long q, int e);
  // registry check without building
  static bool in_registry(Family f, long q, int e);

  Family family() const { return family_; }
  long q() const { return q_; }
  int level() const { return e_; }
  long Q() const { return Q_; }         // q^e
  int p() const { return tw_->p(); }
  int n() const { return n_; }
  const FieldTower& tw() const { return *tw_; }
  int deg_base() const { return deg_base_; }  // p-degree of F_q
  int deg() const { return deg_; }            // p-degree of F_{q^e}
  const Int& order() const { return order_; }
  long exponent() const { return exponent_; }
  unsigned conductor() const { return static_cast<unsigned>(exponent_); }

  size_t num_classes() const { return classes_.size(); }
  const ClassInfo& cls(size_t i) const { return classes_[i]; }
  size_t class_identify(const Mat& g) const;
  size_t inverse_class(size_t i) const { return inv_class_[i]; }
  size_t power_class(size_t i, long k) const;

  bool enumerated() const { return !elements_.empty(); }
  const std::vector<Mat>& elements() const { return elements_; }
  size_t class_of_element(size_t idx) const { return class_of_[idx]; }
  size_t element_index(const Mat& g) const;

  // Weyl group data: torus class labels ("1", "s", "w12", "w123") with
  // multiplicity = size of the class in W.
  struct WeylClass {
    std::string wname;
    int mult;
  };
  const std::vector<WeylClass>& weyl_classes() const { return weyl_; }
  int weyl_order() const { return weyl_order_; }

  // standard subgroups
  const Subgroup& unipotent_radical() const { return U_; }
  const Subgroup& borel() const { return B_; }
  const Subgroup& centre() const { return Z_; }
  Subgroup trivial_subgroup() const;

  Mat frobenius(const Mat& g) const { return mat_frob(*tw_, g, deg_base_); }

  std::string key() const;  // cache key "GL2(q=4,e=1)"

 private:
  GroupContext() = default;
  void build_enumerated();
  void build_analytic_gl2();
  void finish_classes();

  Family family_;
  long q_;
  int e_, n_;
  long Q_;
  const FieldTower* tw_;
  int deg_base_, deg_;
  Int order_;
  long exponent_;
  std::vector<ClassInfo> classes_;
  std::vector<size_t> inv_class_;
  std::vector<GroupContext::WeylClass> weyl_;
  int weyl_order_;

  std::vector<Mat> elements_;
  std::unordered_map<uint64_t, uint32_t> elem_index_;
  std::vector<uint32_t> class_of_;

  // analytic GL2 lookup: (compact tr, compact det) -> class (non-central rep)
  std::vector<long> fcompact_;
  std::vector<int32_t> cls_pair_;
  std::vector<int32_t> central_cls_, unip_cls_;

  Subgroup U_, B_, Z_;
};

using CtxPtr = std::shared_ptr<const GroupContext>;

// Exact class function with values indexed by conjugacy class.
struct ClassFn {
  CtxPtr ctx;
  std::vector<Cyclo> v;
  ClassFn() = default;
  explicit ClassFn(CtxPtr c) : ctx(std::move(c)), v(ctx->num_classes()) {}
  Cyclo value_at(const Mat& g) const { return v[ctx->class_identify(g)]; }
};

Cyclo inner_product(const ClassFn& f, const ClassFn& g);
ClassFn conjugate_fn(const ClassFn& f);  // complex conjugation of values

// Function on a subgroup given per element (subgroups are small).
struct SubFn {
  const Subgroup* H;
  std::vector<Cyclo> v;  // parallel to H->elems
};

// Induction from an element-listed subgroup; requires an enumerated context.
ClassFn induce(const CtxPtr& ctx, const Subgroup& H, const SubFn& chi);
SubFn restrict_to(const CtxPtr& ctx, const Subgroup& H, const ClassFn& f);
Cyclo subfn_inner(const CtxPtr& ctx, const Subgroup& H, const SubFn& a, const SubFn& b);

// number of eigenlines of g on P^1(F_Q) etc.; independent oracle for Ind_B^G 1
long count_fixed_borels(const GroupContext& ctx, const Mat& g);

}  // namespace gg
