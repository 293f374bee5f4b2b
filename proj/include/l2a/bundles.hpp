#pragma once

#include "l2a/gca.hpp"
#include "l2a/report.hpp"

#include <map>
#include <string>
#include <vector>

namespace l2a {

// E^k = E_{-k}. Section degree of E_n is -n, which is the upper index.
int upper_index(int lower);
int lower_index(int upper);

// ranks keyed by the lower index n of E_n
struct GradedBundle {
  std::map<int, int> ranks;

  int rank(int n) const;
  int total_rank() const;
  bool operator==(const GradedBundle& o) const { return ranks == o.ranks; }
};

BasisPtr standard_basis(const GradedBundle& b, const std::string& prefix);
GradedBundle bundle_of(const GradedBasis& basis);

// A basis produced from others; parts[i] lists the source indices behind
// section i (for direct sums the first entry says which summand).
struct Construction {
  BasisPtr basis;
  std::vector<std::vector<int>> parts;
  GradedBundle bundle() const { return bundle_of(*basis); }
};

Construction dual_construction(const GradedBasis& e);
Construction tensor_construction(const GradedBasis& e, const GradedBasis& f);
Construction hom_construction(const GradedBasis& e, const GradedBasis& f);
// graded symmetric (anti = false) or antisymmetric power
Construction power_construction(const GradedBasis& e, int k, bool anti);
// E[k]: sections keep their labels, degree |e| - k
Construction shift_construction(const GradedBasis& e, int k);
Construction direct_sum_construction(const GradedBasis& e, const GradedBasis& f);

// sign of the swap e_i e_j -> e_j e_i inside a power, or 0 if e_i e_i vanishes
int power_swap_sign(int deg_i, int deg_j, bool anti);
// bring a word of basis indices into sorted order; returns the sign (0 if it vanishes)
int power_normalize(const GradedBasis& e, std::vector<int>& word, bool anti);

// Degree-k map E -> F given by blocks from E^i to F^{i+k}: rows index F^{i+k}
// sections, columns E^i sections, in the order of standard_basis.
struct GradedMap {
  int degree = 0;
  int nvars = 0;
  GradedBundle source, target;
  std::map<int, std::vector<std::vector<Poly>>> blocks;  // keyed by upper index i

  const std::vector<std::vector<Poly>>* block(int upper) const;
};

GradedMap zero_map(const GradedBundle& s, const GradedBundle& t, int degree, int nvars);
// shape check; throws on mismatch
void validate_map(const GradedMap& m);
GradedMap compose(const GradedMap& g, const GradedMap& f);

struct ComplexData {
  GradedBundle bundle;
  GradedMap d;
};

Report complex_check(const ComplexData& c);
ComplexData shift_complex(const ComplexData& c, int k);

}  // namespace l2a
