#include "l2a/bundles.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace l2a {

int upper_index(int lower) { return -lower; }
int lower_index(int upper) { return -upper; }

int GradedBundle::rank(int n) const {
  auto it = ranks.find(n);
  return it == ranks.end() ? 0 : it->second;
}

int GradedBundle::total_rank() const {
  int t = 0;
  for (const auto& [n, r] : ranks) t += r;
  return t;
}

BasisPtr standard_basis(const GradedBundle& b, const std::string& prefix) {
  std::vector<Section> s;
  for (const auto& [n, r] : b.ranks) {
    if (r < 0) throw std::invalid_argument("negative rank");
    for (int k = 0; k < r; ++k)
      s.push_back({prefix + std::to_string(n) + "_" + std::to_string(k + 1), upper_index(n)});
  }
  return make_basis(std::move(s));
}

GradedBundle bundle_of(const GradedBasis& basis) {
  GradedBundle b;
  for (const auto& s : basis.sections()) b.ranks[lower_index(s.degree)] += 1;
  return b;
}

namespace {

std::string dual_name(const std::string& n) {
  if (n.size() > 1 && n.back() == '*') return n.substr(0, n.size() - 1);
  return n + "*";
}

}  // namespace

Construction dual_construction(const GradedBasis& e) {
  Construction c;
  std::vector<Section> s;
  for (int i = 0; i < e.size(); ++i) {
    s.push_back({dual_name(e[i].name), -e[i].degree});
    c.parts.push_back({i});
  }
  c.basis = make_basis(std::move(s));
  return c;
}

Construction tensor_construction(const GradedBasis& e, const GradedBasis& f) {
  Construction c;
  std::vector<Section> s;
  for (int i = 0; i < e.size(); ++i)
    for (int j = 0; j < f.size(); ++j) {
      s.push_back({e[i].name + "(x)" + f[j].name, e[i].degree + f[j].degree});
      c.parts.push_back({i, j});
    }
  c.basis = make_basis(std::move(s));
  return c;
}

Construction hom_construction(const GradedBasis& e, const GradedBasis& f) {
  auto d = dual_construction(e);
  return tensor_construction(*d.basis, f);
}

int power_swap_sign(int deg_i, int deg_j, bool anti) {
  int s = (deg_i % 2 != 0 && deg_j % 2 != 0) ? -1 : 1;
  return anti ? -s : s;
}

int power_normalize(const GradedBasis& e, std::vector<int>& word, bool anti) {
  int sign = 1;
  // bubble sort, tracking the swap signs
  for (size_t pass = 0; pass < word.size(); ++pass)
    for (size_t k = 0; k + 1 < word.size(); ++k)
      if (word[k] > word[k + 1]) {
        sign *= power_swap_sign(e[word[k]].degree, e[word[k + 1]].degree, anti);
        std::swap(word[k], word[k + 1]);
      }
  for (size_t k = 0; k + 1 < word.size(); ++k)
    if (word[k] == word[k + 1] && power_swap_sign(e[word[k]].degree, e[word[k]].degree, anti) < 0)
      return 0;
  return sign;
}

Construction power_construction(const GradedBasis& e, int k, bool anti) {
  if (k < 0) throw std::invalid_argument("negative power");
  Construction c;
  std::vector<Section> s;
  std::vector<int> word;
  std::function<void(int)> rec = [&](int start) {
    if (static_cast<int>(word.size()) == k) {
      std::string name;
      int deg = 0;
      for (size_t t = 0; t < word.size(); ++t) {
        if (t) name += anti ? "^" : ".";
        name += e[word[t]].name;
        deg += e[word[t]].degree;
      }
      if (word.empty()) name = "1";
      s.push_back({name, deg});
      c.parts.push_back(word);
      return;
    }
    for (int i = start; i < e.size(); ++i) {
      // repeats allowed only where the swap sign is +1
      if (!word.empty() && word.back() == i &&
          power_swap_sign(e[i].degree, e[i].degree, anti) < 0)
        continue;
      word.push_back(i);
      rec(i);
      word.pop_back();
    }
  };
  rec(0);
  c.basis = make_basis(std::move(s));
  return c;
}

Construction shift_construction(const GradedBasis& e, int k) {
  Construction c;
  std::vector<Section> s;
  for (int i = 0; i < e.size(); ++i) {
    s.push_back({e[i].name + "[" + std::to_string(k) + "]", e[i].degree - k});
    c.parts.push_back({i});
  }
  c.basis = make_basis(std::move(s));
  return c;
}

Construction direct_sum_construction(const GradedBasis& e, const GradedBasis& f) {
  Construction c;
  std::vector<Section> s;
  for (int i = 0; i < e.size(); ++i) {
    s.push_back(e[i]);
    c.parts.push_back({0, i});
  }
  for (int j = 0; j < f.size(); ++j) {
    Section t = f[j];
    if (e.index(t.name) >= 0) t.name += "'";
    s.push_back(t);
    c.parts.push_back({1, j});
  }
  c.basis = make_basis(std::move(s));
  return c;
}

const std::vector<std::vector<Poly>>* GradedMap::block(int upper) const {
  auto it = blocks.find(upper);
  return it == blocks.end() ? nullptr : &it->second;
}

GradedMap zero_map(const GradedBundle& s, const GradedBundle& t, int degree, int nvars) {
  GradedMap m;
  m.degree = degree;
  m.nvars = nvars;
  m.source = s;
  m.target = t;
  for (const auto& [n, r] : s.ranks) {
    int i = upper_index(n);
    int rt = t.rank(lower_index(i + degree));
    if (r == 0 || rt == 0) continue;
    m.blocks[i] = std::vector<std::vector<Poly>>(rt, std::vector<Poly>(r, Poly(nvars)));
  }
  return m;
}

void validate_map(const GradedMap& m) {
  for (const auto& [i, blk] : m.blocks) {
    int cols = m.source.rank(lower_index(i));
    int rows = m.target.rank(lower_index(i + m.degree));
    if (static_cast<int>(blk.size()) != rows)
      throw std::invalid_argument("graded map block at degree " + std::to_string(i) +
                                  " has the wrong number of rows");
    for (const auto& row : blk)
      if (static_cast<int>(row.size()) != cols)
        throw std::invalid_argument("graded map block at degree " + std::to_string(i) +
                                    " has the wrong number of columns");
  }
}

GradedMap compose(const GradedMap& g, const GradedMap& f) {
  if (!(f.target == g.source)) throw std::invalid_argument("compose: bundles do not match");
  validate_map(f);
  validate_map(g);
  GradedMap out = zero_map(f.source, g.target, f.degree + g.degree, std::max(f.nvars, g.nvars));
  for (auto& [i, blk] : out.blocks) {
    const auto* fb = f.block(i);
    const auto* gb = g.block(i + f.degree);
    if (!fb || !gb) continue;
    for (size_t r = 0; r < blk.size(); ++r)
      for (size_t c = 0; c < blk[r].size(); ++c)
        for (size_t k = 0; k < fb->size(); ++k) blk[r][c] += (*gb)[r][k] * (*fb)[k][c];
  }
  return out;
}

Report complex_check(const ComplexData& c) {
  Report r;
  r.check = "complex";
  if (c.d.degree != 1) throw std::invalid_argument("differential must have degree 1");
  if (!(c.d.source == c.bundle) || !(c.d.target == c.bundle))
    throw std::invalid_argument("differential does not act on the complex's bundle");
  auto run = [&](const ComplexData& cc, const std::string& id) {
    GradedMap sq = compose(cc.d, cc.d);
    r.clause(id);
    for (const auto& [i, blk] : sq.blocks)
      for (size_t row = 0; row < blk.size(); ++row)
        for (size_t col = 0; col < blk[row].size(); ++col)
          if (!blk[row][col].is_zero())
            r.fail(id, "degree " + std::to_string(i) + " entry (" + std::to_string(row + 1) +
                           "," + std::to_string(col + 1) + ")",
                   blk[row][col].str());
  };
  run(c, "d_squared");
  run(shift_complex(c, 1), "shifted_d_squared");
  return r;
}

ComplexData shift_complex(const ComplexData& c, int k) {
  ComplexData out;
  for (const auto& [n, r] : c.bundle.ranks) out.bundle.ranks[n + k] = r;
  out.d = c.d;
  out.d.source = out.bundle;
  out.d.target = out.bundle;
  out.d.blocks.clear();
  // E[k]^i = E^{i+k}
  for (const auto& [i, blk] : c.d.blocks) out.d.blocks[i - k] = blk;
  return out;
}

}  // namespace l2a
