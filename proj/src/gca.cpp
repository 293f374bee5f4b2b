#include "l2a/gca.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace l2a {

GeneratorSet::GeneratorSet(int nvars, std::vector<Generator> gens)
    : nvars_(nvars), gens_(std::move(gens)) {
  std::set<std::string> seen;
  for (const auto& g : gens_) {
    if (g.degree < 1) throw std::invalid_argument("generator degree must be >= 1: " + g.name);
    if (!seen.insert(g.name).second) throw std::invalid_argument("duplicate generator " + g.name);
    if (base_index(g.name) >= 0)
      throw std::invalid_argument("generator name clashes with a base variable: " + g.name);
  }
}

int GeneratorSet::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (gens_[i].name == name) return i;
  return -1;
}

int GeneratorSet::base_index(const std::string& name) const {
  if (name.size() < 2 || name[0] != 'x') return -1;
  for (size_t k = 1; k < name.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(name[k]))) return -1;
  int i = std::stoi(name.substr(1)) - 1;
  return (i >= 0 && i < nvars_) ? i : -1;
}

bool GeneratorSet::operator==(const GeneratorSet& o) const {
  if (nvars_ != o.nvars_ || gens_.size() != o.gens_.size()) return false;
  for (size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].name != o.gens_[i].name || gens_[i].degree != o.gens_[i].degree ||
        gens_[i].weight != o.gens_[i].weight)
      return false;
  return true;
}

GenSetPtr make_genset(int nvars, std::vector<Generator> gens) {
  return std::make_shared<const GeneratorSet>(nvars, std::move(gens));
}

namespace {

void require_same(const GenSetPtr& a, const GenSetPtr& b) {
  if (a == b) return;
  if (!a || !b || !(*a == *b)) throw std::invalid_argument("mismatched generator sets");
}

GenSetPtr pick(const GenSetPtr& a, const GenSetPtr& b) { return a ? a : b; }

}  // namespace

bool MonomialLess::operator()(const Monomial& a, const Monomial& b) const {
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

int monomial_degree(const GeneratorSet& gs, const Monomial& m) {
  int d = 0;
  for (int i = 0; i < gs.size(); ++i) d += m[i] * gs.degree(i);
  return d;
}

int monomial_weight(const GeneratorSet& gs, const Monomial& m) {
  int w = 0;
  for (int i = 0; i < gs.size(); ++i) w += m[i] * gs.gen(i).weight;
  return w;
}

int monomial_product_sign(const GeneratorSet& gs, const Monomial& a, const Monomial& b) {
  int n = gs.size();
  // each odd factor of b moves left past the odd factors of a with larger index
  int odd_after = 0;
  int swaps = 0;
  for (int i = n - 1; i >= 0; --i) {
    if (!gs.odd(i)) continue;
    if (a[i] + b[i] > 1) return 0;
    if (b[i]) swaps += odd_after;
    if (a[i]) ++odd_after;
  }
  return swaps % 2 ? -1 : 1;
}

std::string monomial_str(const GeneratorSet& gs, const Monomial& m) {
  std::ostringstream os;
  bool first = true;
  for (int i = 0; i < gs.size(); ++i) {
    if (!m[i]) continue;
    if (!first) os << "*";
    os << gs.gen(i).name;
    if (m[i] > 1) os << "^" << m[i];
    first = false;
  }
  return os.str();
}

// ---------------------------------------------------------------- elements

AlgebraElement AlgebraElement::scalar(GenSetPtr gs, const Poly& p) {
  AlgebraElement a(gs);
  a.add_term(Monomial(gs->size(), 0), p);
  return a;
}

AlgebraElement AlgebraElement::scalar(GenSetPtr gs, const Rational& c) {
  int n = gs->nvars();
  return scalar(gs, Poly(n, c));
}

AlgebraElement AlgebraElement::generator(GenSetPtr gs, int i) {
  Monomial m(gs->size(), 0);
  m.at(i) = 1;
  return monomial(gs, m, Poly(gs->nvars(), 1));
}

AlgebraElement AlgebraElement::base_variable(GenSetPtr gs, int i) {
  return scalar(gs, Poly::variable(gs->nvars(), i));
}

AlgebraElement AlgebraElement::monomial(GenSetPtr gs, const Monomial& m, const Poly& c) {
  AlgebraElement a(gs);
  for (int i = 0; i < gs->size(); ++i)
    if (gs->odd(i) && m[i] > 1) return a;
  a.add_term(m, c);
  return a;
}

void AlgebraElement::add_term(const Monomial& m, const Poly& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    Poly cc = c;
    if (gs_ && cc.nvars() != gs_->nvars()) cc = Poly(gs_->nvars()) + c;
    terms_.emplace(m, std::move(cc));
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::set<int> AlgebraElement::degrees() const {
  std::set<int> out;
  for (const auto& [m, c] : terms_) out.insert(monomial_degree(*gs_, m));
  return out;
}

int AlgebraElement::homogeneous_degree() const {
  auto d = degrees();
  if (d.empty()) return 0;
  if (d.size() > 1) return -1;
  return *d.begin();
}

std::map<int, AlgebraElement> AlgebraElement::homogeneous_parts() const {
  std::map<int, AlgebraElement> out;
  for (const auto& [m, c] : terms_) {
    int d = monomial_degree(*gs_, m);
    auto it = out.find(d);
    if (it == out.end()) it = out.emplace(d, AlgebraElement(gs_)).first;
    it->second.add_term(m, c);
  }
  return out;
}

Poly AlgebraElement::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  if (it == terms_.end()) return Poly(gs_ ? gs_->nvars() : 0);
  return it->second;
}

AlgebraElement AlgebraElement::operator-() const {
  AlgebraElement out = *this;
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

AlgebraElement& AlgebraElement::operator+=(const AlgebraElement& o) {
  if (o.terms_.empty()) {
    if (!gs_) gs_ = o.gs_;
    return *this;
  }
  if (gs_) require_same(gs_, o.gs_);
  gs_ = pick(gs_, o.gs_);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

AlgebraElement& AlgebraElement::operator-=(const AlgebraElement& o) { return *this += -o; }

AlgebraElement& AlgebraElement::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, p] : terms_) p *= c;
  return *this;
}

AlgebraElement operator*(const AlgebraElement& a, const AlgebraElement& b) {
  if (a.gs_ && b.gs_) require_same(a.gs_, b.gs_);
  AlgebraElement out(pick(a.gs_, b.gs_));
  if (a.terms_.empty() || b.terms_.empty()) return out;
  const GeneratorSet& gs = *out.gs_;
  Monomial m(gs.size());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      int s = monomial_product_sign(gs, ma, mb);
      if (!s) continue;
      for (int i = 0; i < gs.size(); ++i) m[i] = ma[i] + mb[i];
      Poly c = ca * cb;
      if (s < 0) c = -c;
      out.add_term(m, c);
    }
  return out;
}

AlgebraElement operator*(const Poly& p, const AlgebraElement& a) {
  AlgebraElement out(a.gs_);
  if (p.is_zero()) return out;
  for (const auto& [m, c] : a.terms_) out.add_term(m, p * c);
  return out;
}

AlgebraElement algebra_mul(const AlgebraElement& a, const AlgebraElement& b) { return a * b; }

bool AlgebraElement::operator==(const AlgebraElement& o) const {
  if (terms_.size() != o.terms_.size()) return false;
  auto it = o.terms_.begin();
  for (const auto& [m, c] : terms_) {
    if (it->first != m || it->second != c) return false;
    ++it;
  }
  return true;
}

std::string AlgebraElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [m, c] = *it;
    std::string mono = monomial_str(*gs_, m);
    std::string coeff;
    bool negative = false;
    if (c.terms().size() == 1) {
      const auto& [e, r] = *c.terms().begin();
      negative = r < 0;
      Poly mag = negative ? -c : c;
      coeff = mag.str();
    } else {
      coeff = "(" + c.str() + ")";
    }
    if (first)
      os << (negative ? "-" : "");
    else
      os << (negative ? " - " : " + ");
    first = false;
    if (mono.empty())
      os << coeff;
    else if (coeff == "1")
      os << mono;
    else
      os << coeff << "*" << mono;
  }
  return os.str();
}

AlgebraElement AlgebraElement::parse(GenSetPtr gs, const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw std::invalid_argument("empty algebra element");
  AlgebraElement out(gs);
  std::vector<std::pair<int, std::string>> summands;
  int sign = 1;
  std::string cur;
  for (size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    bool op = (c == '+' || c == '-') &&
              (i == 0 || (s[i - 1] != '^' && s[i - 1] != '/' && s[i - 1] != '*'));
    if (op) {
      if (!cur.empty()) summands.push_back({sign, cur});
      cur.clear();
      sign = c == '-' ? -1 : 1;
      continue;
    }
    cur += c;
  }
  if (!cur.empty()) summands.push_back({sign, cur});
  for (const auto& [sg, term] : summands) {
    AlgebraElement t = AlgebraElement::scalar(gs, Rational(sg));
    std::stringstream ss(term);
    std::string factor;
    while (std::getline(ss, factor, '*')) {
      if (factor.empty()) throw std::invalid_argument("bad algebra element: " + raw);
      auto caret = factor.find('^');
      std::string name = factor.substr(0, caret);
      int power = 1;
      if (caret != std::string::npos) power = std::stoi(factor.substr(caret + 1));
      if (power < 0) throw std::invalid_argument("negative power in: " + raw);
      AlgebraElement f(gs);
      if (!name.empty() && (std::isdigit(static_cast<unsigned char>(name[0])) || name[0] == '/')) {
        if (caret != std::string::npos) throw std::invalid_argument("power of a number: " + raw);
        f = AlgebraElement::scalar(gs, parse_rational(name));
      } else if (int b = gs->base_index(name); b >= 0) {
        f = AlgebraElement::base_variable(gs, b);
      } else if (int g = gs->index(name); g >= 0) {
        f = AlgebraElement::generator(gs, g);
      } else {
        throw std::invalid_argument("unknown symbol '" + name + "' in: " + raw);
      }
      for (int k = 0; k < power; ++k) t = t * f;
    }
    out += t;
  }
  return out;
}

// ------------------------------------------------------------- derivations

Derivation::Derivation(GenSetPtr gs, int degree) : gs_(std::move(gs)), degree_(degree) {
  base_.assign(gs_->nvars(), AlgebraElement(gs_));
  gens_.assign(gs_->size(), AlgebraElement(gs_));
}

Derivation Derivation::coordinate(GenSetPtr gs, int j) {
  Derivation d(gs, -gs->degree(j));
  d.set_gen(j, AlgebraElement::scalar(gs, Rational(1)));
  return d;
}

Derivation Derivation::base_coordinate(GenSetPtr gs, int i) {
  Derivation d(gs, 0);
  d.set_base(i, AlgebraElement::scalar(gs, Rational(1)));
  return d;
}

AlgebraElement Derivation::apply(const AlgebraElement& a) const {
  if (a.genset()) require_same(gs_, a.genset());
  const GeneratorSet& gs = *gs_;
  int n = gs.size();
  AlgebraElement out(gs_);
  for (const auto& [m, c] : a.terms()) {
    AlgebraElement mono = AlgebraElement::monomial(gs_, m, Poly(gs.nvars(), 1));
    // D(c) m: c has degree 0, so D(c) = sum_i dc/dx_i D(x_i)
    for (int i = 0; i < gs.nvars(); ++i) {
      if (base_[i].is_zero()) continue;
      Poly dc = c.partial(i);
      if (dc.is_zero()) continue;
      out += dc * (base_[i] * mono);
    }
    // c D(m), Leibniz over the ordered factors of m
    int prefix_degree = 0;
    Monomial prefix(n, 0);
    for (int j = 0; j < n; ++j) {
      if (!m[j]) continue;
      if (!gens_[j].is_zero()) {
        Monomial rest(n, 0);
        for (int k = j + 1; k < n; ++k) rest[k] = m[k];
        Monomial lower(n, 0);
        lower[j] = m[j] - 1;
        AlgebraElement term =
            AlgebraElement::monomial(gs_, prefix, Poly(gs.nvars(), 1)) *
            (AlgebraElement::monomial(gs_, lower, Poly(gs.nvars(), m[j])) * gens_[j]) *
            AlgebraElement::monomial(gs_, rest, Poly(gs.nvars(), 1));
        bool flip = (static_cast<long>(degree_) * prefix_degree) % 2 != 0;
        out += flip ? c * (-term) : c * term;
      }
      prefix[j] = m[j];
      prefix_degree += m[j] * gs.degree(j);
    }
  }
  return out;
}

bool Derivation::is_zero() const {
  for (const auto& v : base_)
    if (!v.is_zero()) return false;
  for (const auto& v : gens_)
    if (!v.is_zero()) return false;
  return true;
}

std::vector<std::string> Derivation::degree_violations() const {
  std::vector<std::string> out;
  for (int i = 0; i < gs_->nvars(); ++i) {
    auto d = base_[i].degrees();
    for (int k : d)
      if (k != degree_) out.push_back("x" + std::to_string(i + 1));
  }
  for (int j = 0; j < gs_->size(); ++j) {
    for (int k : gens_[j].degrees())
      if (k != gs_->degree(j) + degree_) out.push_back(gs_->gen(j).name);
  }
  return out;
}

bool Derivation::operator==(const Derivation& o) const {
  if (degree_ != o.degree_ && !(is_zero() && o.is_zero())) return false;
  return base_ == o.base_ && gens_ == o.gens_;
}

Derivation Derivation::operator-() const {
  Derivation out = *this;
  for (auto& v : out.base_) v = -v;
  for (auto& v : out.gens_) v = -v;
  return out;
}

Derivation& Derivation::operator+=(const Derivation& o) {
  require_same(gs_, o.gs_);
  if (degree_ != o.degree_ && !o.is_zero()) {
    if (is_zero())
      degree_ = o.degree_;
    else
      throw std::invalid_argument("adding derivations of different degrees");
  }
  for (size_t i = 0; i < base_.size(); ++i) base_[i] += o.base_[i];
  for (size_t j = 0; j < gens_.size(); ++j) gens_[j] += o.gens_[j];
  return *this;
}

Derivation& Derivation::operator-=(const Derivation& o) { return *this += -o; }

Derivation operator*(const Rational& c, const Derivation& d) {
  Derivation out = d;
  for (auto& v : out.base_) v *= c;
  for (auto& v : out.gens_) v *= c;
  return out;
}

std::string Derivation::str() const {
  std::ostringstream os;
  os << "deg " << degree_ << ":";
  for (int i = 0; i < gs_->nvars(); ++i)
    if (!base_[i].is_zero()) os << " x" << (i + 1) << " -> " << base_[i].str() << ";";
  for (int j = 0; j < gs_->size(); ++j)
    if (!gens_[j].is_zero()) os << " " << gs_->gen(j).name << " -> " << gens_[j].str() << ";";
  return os.str();
}

AlgebraElement apply_derivation(const Derivation& d, const AlgebraElement& a) {
  return d.apply(a);
}

Derivation graded_commutator(const Derivation& a, const Derivation& b) {
  require_same(a.genset(), b.genset());
  const auto& gs = a.genset();
  Derivation out(gs, a.degree() + b.degree());
  bool minus = (static_cast<long>(a.degree()) * b.degree()) % 2 == 0;
  for (int i = 0; i < gs->nvars(); ++i) {
    AlgebraElement ab = a.apply(b.on_base(i));
    AlgebraElement ba = b.apply(a.on_base(i));
    out.set_base(i, minus ? ab - ba : ab + ba);
  }
  for (int j = 0; j < gs->size(); ++j) {
    AlgebraElement ab = a.apply(b.on_gen(j));
    AlgebraElement ba = b.apply(a.on_gen(j));
    out.set_gen(j, minus ? ab - ba : ab + ba);
  }
  return out;
}

Derivation left_multiply(const AlgebraElement& xi, const Derivation& d) {
  int k = xi.homogeneous_degree();
  if (k < 0) throw std::invalid_argument("left_multiply needs a homogeneous function");
  const auto& gs = d.genset();
  Derivation out(gs, xi.is_zero() ? d.degree() : d.degree() + k);
  for (int i = 0; i < gs->nvars(); ++i) out.set_base(i, xi * d.on_base(i));
  for (int j = 0; j < gs->size(); ++j) out.set_gen(j, xi * d.on_gen(j));
  return out;
}

AlgebraElement substitute(const AlgebraElement& a, const std::vector<AlgebraElement>& images) {
  const auto& gs = a.genset();
  AlgebraElement out(gs);
  if (!gs) return out;
  if (static_cast<int>(images.size()) != gs->size())
    throw std::invalid_argument("substitute: need one image per generator");
  for (const auto& [m, c] : a.terms()) {
    AlgebraElement t = AlgebraElement::scalar(gs, c);
    for (int g = 0; g < gs->size(); ++g)
      for (int k = 0; k < m[g]; ++k) t = t * images[g];
    out += t;
  }
  return out;
}

Derivation conjugate(const Derivation& q, const std::vector<AlgebraElement>& f,
                     const std::vector<AlgebraElement>& finv) {
  const auto& gs = q.genset();
  Derivation out(gs, q.degree());
  for (int i = 0; i < gs->nvars(); ++i) out.set_base(i, substitute(q.on_base(i), finv));
  for (int g = 0; g < gs->size(); ++g) out.set_gen(g, substitute(q.apply(f[g]), finv));
  return out;
}

SquareReport derivation_square_check(const Derivation& d) {
  if (d.degree() % 2 == 0) throw std::invalid_argument("square check needs an odd derivation");
  SquareReport r;
  const auto& gs = d.genset();
  for (int i = 0; i < gs->nvars(); ++i) {
    AlgebraElement v = d.apply(d.on_base(i));
    if (!v.is_zero()) r.failures.push_back({"x" + std::to_string(i + 1), v});
  }
  for (int j = 0; j < gs->size(); ++j) {
    AlgebraElement v = d.apply(d.on_gen(j));
    if (!v.is_zero()) r.failures.push_back({gs->gen(j).name, v});
  }
  r.pass = r.failures.empty();
  return r;
}

// ------------------------------------------------------------------ modules

int GradedBasis::index(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (sections_[i].name == name) return i;
  return -1;
}

bool GradedBasis::operator==(const GradedBasis& o) const {
  if (sections_.size() != o.sections_.size()) return false;
  for (size_t i = 0; i < sections_.size(); ++i)
    if (sections_[i].name != o.sections_[i].name || sections_[i].degree != o.sections_[i].degree)
      return false;
  return true;
}

BasisPtr make_basis(std::vector<Section> s) {
  return std::make_shared<const GradedBasis>(std::move(s));
}

ModuleElement ModuleElement::basis_element(GenSetPtr gs, BasisPtr basis, int i) {
  ModuleElement m(gs, std::move(basis));
  m.add(i, AlgebraElement::scalar(gs, Rational(1)));
  return m;
}

AlgebraElement ModuleElement::coefficient(int section) const {
  auto it = terms_.find(section);
  return it == terms_.end() ? AlgebraElement(gs_) : it->second;
}

void ModuleElement::add(int section, const AlgebraElement& c) {
  if (c.is_zero()) return;
  if (section < 0 || section >= basis_->size())
    throw std::out_of_range("section index out of range");
  auto it = terms_.find(section);
  if (it == terms_.end()) {
    terms_.emplace(section, c);
    return;
  }
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

std::set<int> ModuleElement::degrees() const {
  std::set<int> out;
  for (const auto& [s, c] : terms_)
    for (int d : c.degrees()) out.insert(d + (*basis_)[s].degree);
  return out;
}

int ModuleElement::homogeneous_degree() const {
  auto d = degrees();
  if (d.empty()) return 0;
  if (d.size() > 1) return INT32_MIN;
  return *d.begin();
}

ModuleElement ModuleElement::operator-() const {
  ModuleElement out = *this;
  for (auto& [s, c] : out.terms_) c = -c;
  return out;
}

ModuleElement& ModuleElement::operator+=(const ModuleElement& o) {
  if (!basis_) {
    gs_ = o.gs_;
    basis_ = o.basis_;
  }
  if (o.terms_.empty()) return *this;
  if (basis_ != o.basis_ && !(*basis_ == *o.basis_))
    throw std::invalid_argument("adding module elements over different bases");
  for (const auto& [s, c] : o.terms_) add(s, c);
  return *this;
}

ModuleElement& ModuleElement::operator-=(const ModuleElement& o) { return *this += -o; }

ModuleElement operator*(const AlgebraElement& xi, const ModuleElement& m) {
  ModuleElement out(m.gs_, m.basis_);
  for (const auto& [s, c] : m.terms_) out.add(s, xi * c);
  return out;
}

ModuleElement operator*(const Rational& c, const ModuleElement& m) {
  ModuleElement out(m.gs_, m.basis_);
  for (const auto& [s, v] : m.terms_) out.add(s, c * v);
  return out;
}

bool ModuleElement::operator==(const ModuleElement& o) const { return terms_ == o.terms_; }

std::string ModuleElement::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [s, c] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")" << (*basis_)[s].name;
  }
  return os.str();
}

ModuleElement wedge_h(const ModuleElement& a, const ModuleElement& b, const PairingTable& h) {
  ModuleElement out(a.genset() ? a.genset() : b.genset(), h.target);
  for (const auto& [i, xi] : a.terms()) {
    int e_deg = (*a.basis())[i].degree;
    for (const auto& [j, zeta] : b.terms()) {
      auto it = h.values.find({i, j});
      if (it == h.values.end())
        throw std::invalid_argument("pairing undefined on (" + (*a.basis())[i].name + ", " +
                                    (*b.basis())[j].name + ")");
      for (const auto& [k, zd] : zeta.homogeneous_parts()) {
        AlgebraElement coeff = xi * zd;
        if ((static_cast<long>(e_deg) * k) % 2 != 0) coeff = -coeff;
        for (const auto& [t, p] : it->second) out.add(t, p * coeff);
      }
    }
  }
  return out;
}

}  // namespace l2a
