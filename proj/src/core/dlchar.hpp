#pragma once

#include "dixon.hpp"
#include "torus.hpp"

namespace gg {

struct Partition {
  std::vector<int> parts;  // weakly decreasing, total <= 3
  int size() const;
  std::string str() const;
  bool operator==(const Partition& o) const { return parts == o.parts; }
};

std::vector<Partition> partitions_of(int n);

// Kostka-Foulkes polynomial K_{la,mu}(t) by the charge statistic over
// semistandard tableaux of shape la and content mu; coefficient vector.
std::vector<long> kostka_foulkes(const Partition& la, const Partition& mu);

// symmetric group character chi^mu at class of cycle type rho (n <= 3)
long symgroup_char(const Partition& mu, const Partition& rho);

// Green polynomial Q^la_rho(q) assembled from S_n characters and modified
// Kostka-Foulkes polynomials
long green_function(const Partition& rho, const Partition& la, long q);

// Deligne-Lusztig virtual character R_{T_w} theta as an exact class function.
// GL2 at any registry size, GL3 at q=2; SL2 through restriction from GL2.
ClassFn dl_character(const CtxPtr& ctx, const TorusPtr& T, size_t theta);

// *R to the maximally split torus: values (1/|U^F|) sum_u f(t u) per point.
SubFn hc_restrict_to_torus(const CtxPtr& ctx, const TorusPtr& T1, const ClassFn& f);

// restriction of a GL2 class function to SL2 classes (shared tower, same q)
ClassFn restrict_gl2_to_sl2(const CtxPtr& sl2, const CtxPtr& gl2, const ClassFn& f);

// expected <R_{w,theta}, R_{w',theta'}>: the number of Weyl conjugacies
long dl_pairing_count(const TorusPtr& Tw, size_t th, const TorusPtr& Tw2, size_t th2);

struct IrrTable {
  CtxPtr ctx;
  struct Entry {
    ClassFn fn;
    SeriesLabel label;
    Int degree;
  };
  std::vector<Entry> entries;
  std::vector<SeriesLabel> labels;                       // canonical order
  std::map<std::string, std::vector<size_t>> series;     // label key -> entries
  std::map<std::string, size_t> label_index;
  size_t num_series() const { return labels.size(); }
};

// full table with rational-series partition (cached per context)
std::shared_ptr<const IrrTable> irr_table(const CtxPtr& ctx);

// GG-series constituent of one series, without building the whole table
// (GL2 only; used for contexts too large for a full table)
ClassFn gl2_gg_constituent(const CtxPtr& ctx, const SeriesLabel& label);

// all labels of a context (enumerated over the torus characters)
std::vector<SeriesLabel> all_labels(const CtxPtr& ctx);
// the ell-element labels (series entering the unipotent-block union)
std::vector<SeriesLabel> ell_element_labels(const CtxPtr& ctx, long ell);

}  // namespace gg
