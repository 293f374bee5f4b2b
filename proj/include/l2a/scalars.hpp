#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace l2a {

using Integer = boost::multiprecision::cpp_int;
// cpp_rational keeps itself in lowest terms with a positive denominator.
using Rational = boost::multiprecision::cpp_rational;

Rational parse_rational(const std::string& s);
std::string to_string(const Rational& r);

using Exponents = std::vector<int>;

// graded lexicographic: total degree first, then lex with x1 > x2 > ...
struct GrlexLess {
  bool operator()(const Exponents& a, const Exponents& b) const;
};

class Poly {
 public:
  using TermMap = std::map<Exponents, Rational, GrlexLess>;

  Poly() = default;
  explicit Poly(int nvars) : nvars_(nvars) {}
  Poly(int nvars, const Rational& c);

  static Poly constant(int nvars, const Rational& c) { return Poly(nvars, c); }
  static Poly variable(int nvars, int i);
  static Poly monomial(const Exponents& e, const Rational& c);

  int nvars() const { return nvars_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  const TermMap& terms() const { return terms_; }
  int total_degree() const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  bool operator==(const Poly& o) const;
  bool operator!=(const Poly& o) const { return !(*this == o); }

  Poly partial(int i) const;
  Rational evaluate(const std::vector<Rational>& point) const;

  // "2*x1^2*x2 - 1/3"
  std::string str() const;
  static Poly parse(const std::string& s, int nvars);

 private:
  void add_term(const Exponents& e, const Rational& c);
  int nvars_ = 0;
  TermMap terms_;
};

// Combined variable count of two operands; a bare rational (0 variables)
// adapts to the other side.
int common_nvars(int a, int b);

}  // namespace l2a
