#include "procell/instances.hpp"

#include "procell/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <stdexcept>

namespace procell {

// ------------------------------------------------------------- polynomial datum

BasisIndex poly_index(unsigned long long k) { return {std::to_string(k), 0, 0}; }

CellDatumPtr poly_datum(const Field& field) {
  auto poset = std::make_shared<NaturalsPoset>(true);
  auto mult = [field](const BasisIndex& a, const BasisIndex& b) {
    return Element::basis(field, poly_index(NaturalsPoset::value(a.cell) + NaturalsPoset::value(b.cell)));
  };
  return std::make_shared<CellDatum>("poly", field, std::move(poset),
                                     [](const Label&) { return std::vector<Label>{"*"}; }, std::move(mult),
                                     Element::basis(field, poly_index(0)));
}

Element parse_polynomial(const Field& field, const std::string& text) {
  Element out(field);
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty polynomial");
  std::size_t i = 0;
  while (i < s.size()) {
    bool negative = false;
    if (s[i] == '+' || s[i] == '-') {
      negative = s[i] == '-';
      ++i;
    } else if (i != 0) {
      throw ParseError("expected '+' or '-' at position " + std::to_string(i) + " of '" + text + "'");
    }
    std::size_t start = i;
    while (i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '/')) ++i;
    Scalar coeff = start == i ? Scalar::one(field) : Scalar::parse(field, s.substr(start, i - start));
    if (i < s.size() && s[i] == '*') ++i;
    unsigned long long degree = 0;
    if (i < s.size() && s[i] == 'x') {
      ++i;
      degree = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        std::size_t d0 = i;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
        if (d0 == i) throw ParseError("missing exponent in '" + text + "'");
        degree = std::stoull(s.substr(d0, i - d0));
      }
    } else if (start == i) {
      throw ParseError("malformed term at position " + std::to_string(start) + " of '" + text + "'");
    }
    out.add(poly_index(degree), negative ? -coeff : coeff);
  }
  return out;
}

// ---------------------------------------------------------------- TL diagrams

namespace {

// Position of a boundary point on the circle: top left to right, then bottom
// right to left.
int circle_position(int n, int point) { return point < n ? point : 3 * n - 1 - point; }

bool planar(int n, const std::vector<int>& partner) {
  for (int a = 0; a < 2 * n; ++a)
    for (int c = 0; c < 2 * n; ++c) {
      int pa = circle_position(n, a), pb = circle_position(n, partner[a]);
      int pc = circle_position(n, c), pd = circle_position(n, partner[c]);
      if (pa > pb) std::swap(pa, pb);
      if (pc > pd) std::swap(pc, pd);
      if (pa < pc && pc < pb && pb < pd) return false;
    }
  return true;
}

struct HalfParse {
  std::vector<std::pair<int, int>> arcs;
  std::vector<int> defects;
};

HalfParse parse_half(const std::string& half) {
  HalfParse out;
  std::vector<int> open;
  for (int i = 0; i < static_cast<int>(half.size()); ++i) {
    switch (half[i]) {
      case '(':
        open.push_back(i);
        break;
      case ')':
        if (open.empty()) throw std::invalid_argument("unbalanced half diagram '" + half + "'");
        out.arcs.emplace_back(open.back(), i);
        open.pop_back();
        break;
      case '|':
        if (!open.empty()) throw std::invalid_argument("through-strand under an arc in '" + half + "'");
        out.defects.push_back(i);
        break;
      default:
        throw std::invalid_argument("bad character in half diagram '" + half + "'");
    }
  }
  if (!open.empty()) throw std::invalid_argument("unbalanced half diagram '" + half + "'");
  return out;
}

}  // namespace

TLDiagram::TLDiagram(int n, std::vector<int> partner) : n_(n), partner_(std::move(partner)) {
  if (n < 0 || static_cast<int>(partner_.size()) != 2 * n) throw std::invalid_argument("TL diagram size mismatch");
  for (int i = 0; i < 2 * n; ++i) {
    const int j = partner_[i];
    if (j < 0 || j >= 2 * n || j == i || partner_[j] != i)
      throw std::invalid_argument("TL diagram is not a perfect matching");
  }
  if (!planar(n, partner_)) throw std::invalid_argument("TL diagram is not planar");
}

TLDiagram TLDiagram::identity(int n) {
  std::vector<int> p(2 * n);
  for (int i = 0; i < n; ++i) {
    p[i] = n + i;
    p[n + i] = i;
  }
  return TLDiagram(n, std::move(p));
}

TLDiagram TLDiagram::from_halves(const std::string& top, const std::string& bottom) {
  if (top.size() != bottom.size()) throw std::invalid_argument("half diagrams of different lengths");
  const int n = static_cast<int>(top.size());
  const auto t = parse_half(top);
  const auto b = parse_half(bottom);
  if (t.defects.size() != b.defects.size()) throw std::invalid_argument("through-strand counts differ");
  std::vector<int> p(2 * n, -1);
  for (auto [i, j] : t.arcs) {
    p[i] = j;
    p[j] = i;
  }
  for (auto [i, j] : b.arcs) {
    p[n + i] = n + j;
    p[n + j] = n + i;
  }
  for (std::size_t k = 0; k < t.defects.size(); ++k) {
    p[t.defects[k]] = n + b.defects[k];
    p[n + b.defects[k]] = t.defects[k];
  }
  return TLDiagram(n, std::move(p));
}

int TLDiagram::through_strands() const {
  int count = 0;
  for (int i = 0; i < n_; ++i)
    if (partner_[i] >= n_) ++count;
  return count;
}

std::pair<std::string, std::string> TLDiagram::halves() const {
  std::string top(n_, '|'), bottom(n_, '|');
  for (int i = 0; i < n_; ++i) {
    const int j = partner_[i];
    if (j < n_) top[i] = j > i ? '(' : ')';
    const int k = partner_[n_ + i];
    if (k >= n_) bottom[i] = k > n_ + i ? '(' : ')';
  }
  return {top, bottom};
}

std::pair<TLDiagram, int> TLDiagram::compose(const TLDiagram& upper, const TLDiagram& lower) {
  if (upper.n_ != lower.n_) throw std::invalid_argument("composing TL diagrams of different sizes");
  const int n = upper.n_;
  // Output points: top i -> upper point i; bottom j -> lower point n+j.
  // Middle point m is upper point n+m glued to lower point m.
  std::vector<int> result(2 * n, -1);
  std::vector<bool> middle_seen(n, false);

  auto walk = [&](bool in_upper, int point) {
    // `point` is an entry point on the outer boundary; follow until leaving.
    for (;;) {
      if (in_upper) {
        const int q = upper.partner_[point];
        if (q < n) return q;
        middle_seen[q - n] = true;
        in_upper = false;
        point = q - n;
      } else {
        const int q = lower.partner_[point];
        if (q >= n) return n + (q - n);
        middle_seen[q] = true;
        in_upper = true;
        point = n + q;
      }
    }
  };

  for (int i = 0; i < n; ++i) {
    if (result[i] < 0) {
      const int end = walk(true, i);
      result[i] = end;
      result[end] = i;
    }
    if (result[n + i] < 0) {
      const int end = walk(false, n + i);
      result[n + i] = end;
      result[end] = n + i;
    }
  }

  int loops = 0;
  for (int m = 0; m < n; ++m) {
    if (middle_seen[m]) continue;
    ++loops;
    int point = m;  // lower top point m
    do {
      middle_seen[point] = true;
      const int q = lower.partner_[point];  // stays in the middle: a closed loop never reaches the boundary
      middle_seen[q] = true;
      point = upper.partner_[n + q] - n;
    } while (point != m);
  }
  return {TLDiagram(n, std::move(result)), loops};
}

std::vector<std::string> tl_half_diagrams(int n, int through) {
  std::vector<std::string> out;
  std::string buf;
  std::function<void(int, int, int)> rec = [&](int depth, int defects, int remaining) {
    if (remaining == 0) {
      if (depth == 0 && defects == through) out.push_back(buf);
      return;
    }
    if (depth + 1 <= remaining - 1) {
      buf.push_back('(');
      rec(depth + 1, defects, remaining - 1);
      buf.pop_back();
    }
    if (depth > 0) {
      buf.push_back(')');
      rec(depth - 1, defects, remaining - 1);
      buf.pop_back();
    }
    if (depth == 0 && defects < through) {
      buf.push_back('|');
      rec(depth, defects + 1, remaining - 1);
      buf.pop_back();
    }
  };
  if (through >= 0 && through <= n && (n - through) % 2 == 0) rec(0, 0, n);
  return out;
}

namespace {

struct TLTables {
  int n;
  std::map<Label, std::vector<std::string>> halves;
  std::map<std::pair<std::string, std::string>, BasisIndex> by_halves;
};

}  // namespace

CellDatumPtr tl_datum(int n, const Scalar& delta, int max_n) {
  if (n < 1 || n > max_n)
    throw BoundExceeded("TL_n requires 1 <= n <= " + std::to_string(max_n) + ", got n=" + std::to_string(n));
  const Field field = delta.field();
  auto tables = std::make_shared<TLTables>();
  tables->n = n;
  std::vector<Label> cells;
  std::vector<std::pair<Label, Label>> covers;
  for (int k = n; k >= 0; k -= 2) {
    const Label cell = std::to_string(k);
    cells.push_back(cell);
    if (k + 2 <= n) covers.emplace_back(cell, std::to_string(k + 2));
    auto hs = tl_half_diagrams(n, k);
    for (std::uint32_t s = 0; s < hs.size(); ++s)
      for (std::uint32_t t = 0; t < hs.size(); ++t) tables->by_halves.emplace(std::make_pair(hs[s], hs[t]), BasisIndex{cell, s, t});
    tables->halves.emplace(cell, std::move(hs));
  }
  auto poset = FinitePoset::from_covers("TL" + std::to_string(n) + "-through-strands", cells, covers);

  auto diagram = [tables](const BasisIndex& b) {
    const auto& hs = tables->halves.at(b.cell);
    return TLDiagram::from_halves(hs.at(b.s), hs.at(b.t));
  };
  auto mult = [tables, diagram, delta](const BasisIndex& a, const BasisIndex& b) {
    auto [d, loops] = TLDiagram::compose(diagram(a), diagram(b));
    Scalar coeff = Scalar::one(delta.field());
    for (int i = 0; i < loops; ++i) coeff *= delta;
    return Element(delta.field()).add(tables->by_halves.at(d.halves()), coeff);
  };
  const Label top = std::to_string(n);
  return std::make_shared<CellDatum>(
      "TL" + std::to_string(n) + "(delta=" + delta.to_string() + ")", field, std::move(poset),
      [tables](const Label& cell) {
        auto it = tables->halves.find(cell);
        return it == tables->halves.end() ? std::vector<Label>{} : it->second;
      },
      std::move(mult), Element::basis(field, BasisIndex{top, 0, 0}));
}

TLDiagram tl_diagram(const CellDatum& tl, const BasisIndex& b) {
  tl.check_index(b);
  const auto& hs = tl.tableaux(b.cell);
  return TLDiagram::from_halves(hs[b.s], hs[b.t]);
}

BasisIndex tl_generator(const CellDatum& tl, int i) {
  const int n = static_cast<int>(tl.tableaux(tl.cells().front()).front().size());
  if (i < 1 || i >= n) throw std::invalid_argument("TL generator index out of range");
  std::string half(n, '|');
  half[i - 1] = '(';
  half[i] = ')';
  const Label cell = std::to_string(n - 2);
  const auto& hs = tl.tableaux(cell);
  const auto s = static_cast<std::uint32_t>(std::find(hs.begin(), hs.end(), half) - hs.begin());
  return {cell, s, s};
}

}  // namespace procell
