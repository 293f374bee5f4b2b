#pragma once

#include "l2a/scalars.hpp"

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace l2a {

struct Generator {
  std::string name;
  int degree = 1;
  // second bidegree component (Weil algebra); 0 for ordinary generators
  int weight = 0;
};

class GeneratorSet {
 public:
  GeneratorSet(int nvars, std::vector<Generator> gens);

  int nvars() const { return nvars_; }
  int size() const { return static_cast<int>(gens_.size()); }
  const Generator& gen(int i) const { return gens_[i]; }
  const std::vector<Generator>& gens() const { return gens_; }
  bool odd(int i) const { return gens_[i].degree % 2 != 0; }
  int degree(int i) const { return gens_[i].degree; }
  // generator index, or -1; base variables are named x1..xm
  int index(const std::string& name) const;
  int base_index(const std::string& name) const;
  bool operator==(const GeneratorSet& o) const;

 private:
  int nvars_;
  std::vector<Generator> gens_;
};

using GenSetPtr = std::shared_ptr<const GeneratorSet>;
GenSetPtr make_genset(int nvars, std::vector<Generator> gens);

using Monomial = std::vector<int>;

struct MonomialLess {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

int monomial_degree(const GeneratorSet& gs, const Monomial& m);
int monomial_weight(const GeneratorSet& gs, const Monomial& m);
// Koszul sign of a*b relative to the canonical product; 0 if an odd
// generator repeats.
int monomial_product_sign(const GeneratorSet& gs, const Monomial& a, const Monomial& b);

class AlgebraElement {
 public:
  using TermMap = std::map<Monomial, Poly, MonomialLess>;

  AlgebraElement() = default;
  explicit AlgebraElement(GenSetPtr gs) : gs_(std::move(gs)) {}

  static AlgebraElement scalar(GenSetPtr gs, const Poly& p);
  static AlgebraElement scalar(GenSetPtr gs, const Rational& c);
  static AlgebraElement generator(GenSetPtr gs, int i);
  static AlgebraElement base_variable(GenSetPtr gs, int i);
  static AlgebraElement monomial(GenSetPtr gs, const Monomial& m, const Poly& c);

  const GenSetPtr& genset() const { return gs_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::set<int> degrees() const;
  // -1 if not homogeneous; 0 for the zero element
  int homogeneous_degree() const;
  std::map<int, AlgebraElement> homogeneous_parts() const;
  Poly coefficient(const Monomial& m) const;

  void add_term(const Monomial& m, const Poly& c);
  AlgebraElement operator-() const;
  AlgebraElement& operator+=(const AlgebraElement& o);
  AlgebraElement& operator-=(const AlgebraElement& o);
  AlgebraElement& operator*=(const Rational& c);
  friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b) { return a += b; }
  friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b) { return a -= b; }
  friend AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b);
  friend AlgebraElement operator*(AlgebraElement a, const Rational& c) { return a *= c; }
  friend AlgebraElement operator*(const Rational& c, AlgebraElement a) { return a *= c; }
  friend AlgebraElement operator*(const Poly& p, const AlgebraElement& a);
  bool operator==(const AlgebraElement& o) const;
  bool operator!=(const AlgebraElement& o) const { return !(*this == o); }

  std::string str() const;
  static AlgebraElement parse(GenSetPtr gs, const std::string& s);

 private:
  GenSetPtr gs_;
  TermMap terms_;
};

std::string monomial_str(const GeneratorSet& gs, const Monomial& m);

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b);

// A graded derivation, stored by its values on base coordinates and
// generators.
class Derivation {
 public:
  Derivation() = default;
  Derivation(GenSetPtr gs, int degree);

  const GenSetPtr& genset() const { return gs_; }
  int degree() const { return degree_; }
  const AlgebraElement& on_base(int i) const { return base_[i]; }
  const AlgebraElement& on_gen(int j) const { return gens_[j]; }
  void set_base(int i, AlgebraElement v) { base_[i] = std::move(v); }
  void set_gen(int j, AlgebraElement v) { gens_[j] = std::move(v); }

  // d/d(generator j)
  static Derivation coordinate(GenSetPtr gs, int j);
  // d/dx_i
  static Derivation base_coordinate(GenSetPtr gs, int i);

  AlgebraElement apply(const AlgebraElement& a) const;
  bool is_zero() const;
  // values of the wrong degree, as human-readable strings
  std::vector<std::string> degree_violations() const;
  bool operator==(const Derivation& o) const;
  bool operator!=(const Derivation& o) const { return !(*this == o); }
  Derivation operator-() const;
  Derivation& operator+=(const Derivation& o);
  Derivation& operator-=(const Derivation& o);
  friend Derivation operator+(Derivation a, const Derivation& b) { return a += b; }
  friend Derivation operator-(Derivation a, const Derivation& b) { return a -= b; }
  friend Derivation operator*(const Rational& c, const Derivation& d);

  std::string str() const;

 private:
  GenSetPtr gs_;
  int degree_ = 0;
  std::vector<AlgebraElement> base_;
  std::vector<AlgebraElement> gens_;
};

AlgebraElement apply_derivation(const Derivation& d, const AlgebraElement& a);
Derivation graded_commutator(const Derivation& a, const Derivation& b);
// xi * D for homogeneous xi
Derivation left_multiply(const AlgebraElement& xi, const Derivation& d);

// algebra morphism fixing base functions, given by the images of the generators
AlgebraElement substitute(const AlgebraElement& a, const std::vector<AlgebraElement>& images);
// F^{-1} Q F for such a morphism F with inverse Finv
Derivation conjugate(const Derivation& q, const std::vector<AlgebraElement>& f,
                     const std::vector<AlgebraElement>& finv);

struct SquareReport {
  bool pass = true;
  // generator name -> D(D(g))
  std::vector<std::pair<std::string, AlgebraElement>> failures;
};
SquareReport derivation_square_check(const Derivation& d);

// Graded basis of sections; degree is the section degree |e| (e in E_n has
// degree -n).
struct Section {
  std::string name;
  int degree = 0;
};

class GradedBasis {
 public:
  GradedBasis() = default;
  explicit GradedBasis(std::vector<Section> s) : sections_(std::move(s)) {}
  int size() const { return static_cast<int>(sections_.size()); }
  const Section& operator[](int i) const { return sections_[i]; }
  const std::vector<Section>& sections() const { return sections_; }
  int index(const std::string& name) const;
  bool operator==(const GradedBasis& o) const;

 private:
  std::vector<Section> sections_;
};

using BasisPtr = std::shared_ptr<const GradedBasis>;
BasisPtr make_basis(std::vector<Section> s);

// sum of (coefficient, basis section) with the coefficient on the left
class ModuleElement {
 public:
  ModuleElement() = default;
  ModuleElement(GenSetPtr gs, BasisPtr basis) : gs_(std::move(gs)), basis_(std::move(basis)) {}

  static ModuleElement basis_element(GenSetPtr gs, BasisPtr basis, int i);

  const GenSetPtr& genset() const { return gs_; }
  const BasisPtr& basis() const { return basis_; }
  const std::map<int, AlgebraElement>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  AlgebraElement coefficient(int section) const;
  void add(int section, const AlgebraElement& c);
  std::set<int> degrees() const;
  int homogeneous_degree() const;

  ModuleElement operator-() const;
  ModuleElement& operator+=(const ModuleElement& o);
  ModuleElement& operator-=(const ModuleElement& o);
  friend ModuleElement operator+(ModuleElement a, const ModuleElement& b) { return a += b; }
  friend ModuleElement operator-(ModuleElement a, const ModuleElement& b) { return a -= b; }
  friend ModuleElement operator*(const AlgebraElement& xi, const ModuleElement& m);
  friend ModuleElement operator*(const Rational& c, const ModuleElement& m);
  bool operator==(const ModuleElement& o) const;
  bool operator!=(const ModuleElement& o) const { return !(*this == o); }

  std::string str() const;

 private:
  GenSetPtr gs_;
  BasisPtr basis_;
  std::map<int, AlgebraElement> terms_;
};

// h(e_i, f_j) as a combination of sections of a third basis
struct PairingTable {
  BasisPtr left, right, target;
  std::map<std::pair<int, int>, std::vector<std::pair<int, Poly>>> values;
};

// (xi (x) e) ^_h (zeta (x) f) = (-1)^{|e||zeta|} xi zeta (x) h(e, f)
ModuleElement wedge_h(const ModuleElement& a, const ModuleElement& b, const PairingTable& h);

}  // namespace l2a
