#include "l2a/scalars.hpp"

#include <cctype>
#include <numeric>
#include <sstream>

namespace l2a {

Rational parse_rational(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty rational");
  auto slash = s.find('/');
  auto check_int = [](const std::string& t) {
    size_t i = (t.size() > 0 && (t[0] == '-' || t[0] == '+')) ? 1 : 0;
    if (i >= t.size()) return false;
    for (; i < t.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
    return true;
  };
  auto to_int = [&](std::string t) {
    if (!check_int(t)) throw std::invalid_argument("bad rational: " + raw);
    if (t[0] == '+') t = t.substr(1);
    return Integer(t);
  };
  if (slash == std::string::npos) return Rational(to_int(s));
  Integer num = to_int(s.substr(0, slash));
  Integer den = to_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("zero denominator: " + raw);
  if (den < 0) {
    num = -num;
    den = -den;
  }
  return Rational(num, den);
}

std::string to_string(const Rational& r) {
  auto num = boost::multiprecision::numerator(r);
  auto den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool GrlexLess::operator()(const Exponents& a, const Exponents& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  // lex: larger exponent in an earlier variable is "bigger"
  for (size_t i = 0; i < a.size() && i < b.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i];
  return a.size() < b.size();
}

int common_nvars(int a, int b) {
  if (a == b || b == 0) return a;
  if (a == 0) return b;
  throw std::invalid_argument("polynomial variable-count mismatch: " + std::to_string(a) +
                              " vs " + std::to_string(b));
}

namespace {

Poly lift(const Poly& p, int n) {
  if (p.nvars() == n) return p;
  Poly out(n);
  for (const auto& [e, c] : p.terms()) {
    Exponents f(n, 0);
    out += Poly::monomial(f, c);
  }
  return out;
}

}  // namespace

Poly::Poly(int nvars, const Rational& c) : nvars_(nvars) {
  if (c != 0) terms_.emplace(Exponents(nvars, 0), c);
}

Poly Poly::variable(int nvars, int i) {
  if (i < 0 || i >= nvars) throw std::out_of_range("variable index out of range");
  Exponents e(nvars, 0);
  e[i] = 1;
  return monomial(e, 1);
}

Poly Poly::monomial(const Exponents& e, const Rational& c) {
  Poly p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

void Poly::add_term(const Exponents& e, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Poly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  for (int k : e)
    if (k) return false;
  return true;
}

Rational Poly::constant_term() const {
  auto it = terms_.find(Exponents(nvars_, 0));
  return it == terms_.end() ? Rational(0) : it->second;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  const auto& e = terms_.rbegin()->first;
  return std::accumulate(e.begin(), e.end(), 0);
}

Poly Poly::operator-() const {
  Poly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

Poly& Poly::operator+=(const Poly& o) {
  int n = common_nvars(nvars_, o.nvars_);
  if (n != nvars_) *this = lift(*this, n);
  if (o.nvars_ != n) return *this += lift(o, n);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  int n = common_nvars(a.nvars_, b.nvars_);
  if (a.nvars_ != n) return lift(a, n) * b;
  if (b.nvars_ != n) return a * lift(b, n);
  Poly out(n);
  Exponents e(n);
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (int i = 0; i < n; ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  return out;
}

bool Poly::operator==(const Poly& o) const {
  if (nvars_ == o.nvars_) return terms_ == o.terms_;
  if (is_zero() && o.is_zero()) return true;
  int n = common_nvars(nvars_, o.nvars_);
  return lift(*this, n).terms_ == lift(o, n).terms_;
}

Poly Poly::partial(int i) const {
  if (i < 0 || i >= nvars_) throw std::out_of_range("partial: variable index out of range");
  Poly out(nvars_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents f = e;
    f[i] -= 1;
    out.add_term(f, c * e[i]);
  }
  return out;
}

Rational Poly::evaluate(const std::vector<Rational>& point) const {
  if (static_cast<int>(point.size()) != nvars_)
    throw std::invalid_argument("evaluate: point dimension mismatch");
  Rational sum = 0;
  for (const auto& [e, c] : terms_) {
    Rational t = c;
    for (int i = 0; i < nvars_; ++i)
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    sum += t;
  }
  return sum;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool has_var = false;
    std::ostringstream vars;
    for (int i = 0; i < nvars_; ++i) {
      if (!e[i]) continue;
      if (has_var) vars << "*";
      vars << "x" << (i + 1);
      if (e[i] > 1) vars << "^" << e[i];
      has_var = true;
    }
    if (!has_var)
      os << to_string(mag);
    else if (mag == 1)
      os << vars.str();
    else
      os << to_string(mag) << "*" << vars.str();
  }
  return os.str();
}

namespace {

// "a - b + c" -> signed summands
std::vector<std::pair<int, std::string>> split_terms(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  std::vector<std::pair<int, std::string>> out;
  int sign = 1;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool op = (c == '+' || c == '-') &&
              (i == 0 || (s[i - 1] != '^' && s[i - 1] != '/' && s[i - 1] != '*'));
    if (op) {
      if (!cur.empty()) out.push_back({sign, cur});
      cur.clear();
      sign = (c == '-') ? -1 : 1;
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) out.push_back({sign, cur});
  if (out.empty()) throw std::invalid_argument("empty expression");
  return out;
}

}  // namespace

Poly Poly::parse(const std::string& s, int nvars) {
  Poly out(nvars);
  for (const auto& [sign, term] : split_terms(s)) {
    Rational coeff = sign;
    Exponents e(nvars, 0);
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw std::invalid_argument("bad polynomial: " + s);
      if (factor[0] == 'x') {
        auto caret = factor.find('^');
        std::string idx = factor.substr(1, caret == std::string::npos ? std::string::npos
                                                                       : caret - 1);
        int power = caret == std::string::npos ? 1 : std::stoi(factor.substr(caret + 1));
        int i = std::stoi(idx) - 1;
        if (i < 0 || i >= nvars)
          throw std::invalid_argument("variable out of range in: " + s);
        if (power < 0) throw std::invalid_argument("negative power in: " + s);
        e[i] += power;
      } else {
        coeff *= parse_rational(factor);
      }
    }
    out.add_term(e, coeff);
  }
  return out;
}

}  // namespace l2a
