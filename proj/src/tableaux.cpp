#include "procell/tableaux.hpp"

#include "procell/error.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <numeric>
#include <set>
#include <stdexcept>

namespace procell {

std::string partition_label(const Partition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s + ")";
}

Partition parse_partition(const std::string& text) {
  std::string body;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) body += c;
  if (!body.empty() && body.front() == '(') {
    if (body.back() != ')') throw ParseError("unterminated partition '" + text + "'");
    body = body.substr(1, body.size() - 2);
  }
  Partition p;
  std::size_t i = 0;
  while (i < body.size()) {
    std::size_t j = body.find(',', i);
    if (j == std::string::npos) j = body.size();
    const std::string part = body.substr(i, j - i);
    if (part.empty() || !std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
      throw ParseError("malformed partition '" + text + "'");
    p.push_back(std::stoi(part));
    i = j + 1;
    if (j + 1 == body.size()) throw ParseError("trailing comma in partition '" + text + "'");
  }
  while (!p.empty() && p.back() == 0) p.pop_back();
  for (std::size_t k = 0; k < p.size(); ++k)
    if (p[k] <= 0 || (k > 0 && p[k] > p[k - 1])) throw ParseError("'" + text + "' is not a partition");
  return p;
}

int partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0); }

std::vector<Partition> partitions_of(int m, int max_rows) {
  std::vector<Partition> out;
  Partition cur;
  std::function<void(int, int)> rec = [&](int remaining, int largest) {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) == max_rows) return;
    for (int part = std::min(remaining, largest); part >= 1; --part) {
      cur.push_back(part);
      rec(remaining - part, part);
      cur.pop_back();
    }
  };
  if (m >= 0 && max_rows >= 0) rec(m, m);
  return out;
}

bool dominates(const Partition& a, const Partition& b) {
  if (partition_size(a) != partition_size(b)) return false;
  int sa = 0, sb = 0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa < sb) return false;
  }
  return true;
}

std::shared_ptr<FinitePoset> partition_dominance_poset(int m) {
  const auto parts = partitions_of(m, m);
  std::vector<Label> labels;
  std::vector<std::pair<Label, Label>> relations;
  for (const auto& p : parts) labels.push_back(partition_label(p));
  for (const auto& a : parts)
    for (const auto& b : parts)
      if (a != b && dominates(a, b)) relations.emplace_back(partition_label(a), partition_label(b));
  return FinitePoset::from_covers("partitions-of-" + std::to_string(m), labels, relations);
}

// ---------------------------------------------------------------- WeightPoset

WeightPoset::WeightPoset(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("sl_n weights need n >= 1");
}

Partition WeightPoset::normalize(const Partition& shape) const {
  if (static_cast<int>(shape.size()) > n_)
    throw RowCountViolation("shape " + partition_label(shape) + " has more than " + std::to_string(n_) + " rows");
  Partition p = shape;
  if (static_cast<int>(p.size()) == n_) {
    const int full = p.back();
    for (auto& x : p) x -= full;
    while (!p.empty() && p.back() == 0) p.pop_back();
  }
  return p;
}

Label WeightPoset::canonical_label(const std::string& text) const { return partition_label(normalize(parse_partition(text))); }

bool WeightPoset::contains(const Label& a) const {
  try {
    const auto p = parse_partition(a);
    return static_cast<int>(p.size()) < n_ && partition_label(p) == a;
  } catch (const ParseError&) {
    return false;
  }
}

bool WeightPoset::weight_dominates(const Partition& a, const Partition& b) const {
  const int sa = partition_size(a), sb = partition_size(b);
  if (((sa - sb) % n_ + n_) % n_ != 0) return false;
  std::vector<int> x(n_, 0), y(n_, 0);
  for (std::size_t i = 0; i < a.size(); ++i) x[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) y[i] = b[i];
  const int k = (sa - sb) / n_;
  for (int i = 0; i < n_; ++i) (k >= 0 ? y[i] : x[i]) += std::abs(k);
  int px = 0, py = 0;
  for (int i = 0; i < n_; ++i) {
    px += x[i];
    py += y[i];
    if (px < py) return false;
  }
  return true;
}

bool WeightPoset::leq(const Label& a, const Label& b) const {
  require(a);
  require(b);
  return weight_dominates(parse_partition(a), parse_partition(b));
}

std::optional<std::vector<Label>> WeightPoset::up_set(const Label& a, std::size_t cap) const {
  require(a);
  const Partition top = parse_partition(a);
  // Everything a dominates normalizes from a partition of |a| with at most n rows.
  std::vector<Partition> found;
  for (const auto& mu : partitions_of(partition_size(top), n_)) {
    const Partition w = normalize(mu);
    if (weight_dominates(top, w)) {
      if (found.size() == cap) return std::nullopt;
      found.push_back(w);
    }
  }
  std::vector<Label> out;
  for (const auto& w : found) out.push_back(partition_label(w));
  std::sort(out.begin(), out.end(), [this](const Label& x, const Label& y) { return precedes(x, y); });
  return out;
}

std::vector<Label> WeightPoset::enumerate(std::size_t limit) const {
  std::vector<Label> out;
  for (int m = 0; out.size() < limit; ++m)
    for (const auto& p : partitions_of(m, n_ - 1)) {
      if (out.size() == limit) break;
      out.push_back(partition_label(p));
    }
  return out;
}

bool WeightPoset::precedes(const Label& a, const Label& b) const {
  const auto pa = parse_partition(a), pb = parse_partition(b);
  const int sa = partition_size(pa), sb = partition_size(pb);
  if (sa != sb) return sa < sb;
  return pa > pb;
}

// ------------------------------------------------------------------ tableaux

std::string tableau_label(const Tableau& t) {
  std::string s = "[";
  for (std::size_t r = 0; r < t.size(); ++r) {
    s += r ? ",[" : "[";
    for (std::size_t c = 0; c < t[r].size(); ++c) s += (c ? "," : "") + std::to_string(t[r][c]);
    s += "]";
  }
  return s + "]";
}

Partition shape_of(const Tableau& t) {
  Partition p;
  for (const auto& row : t) p.push_back(static_cast<int>(row.size()));
  return p;
}

bool is_semistandard(const Tableau& t, int n) {
  for (std::size_t r = 0; r < t.size(); ++r) {
    if (t[r].empty() || (r > 0 && t[r].size() > t[r - 1].size())) return false;
    for (std::size_t c = 0; c < t[r].size(); ++c) {
      const int v = t[r][c];
      if (v < 1 || v > n) return false;
      if (c > 0 && t[r][c - 1] > v) return false;
      if (r > 0 && t[r - 1][c] >= v) return false;
    }
  }
  return true;
}

std::vector<Tableau> enumerate_ssyt(const Partition& shape, int n) {
  if (static_cast<int>(shape.size()) > n)
    throw RowCountViolation("shape " + partition_label(shape) + " has more rows than the " + std::to_string(n) +
                            " available entries");
  for (std::size_t r = 0; r < shape.size(); ++r)
    if (shape[r] <= 0 || (r > 0 && shape[r] > shape[r - 1]))
      throw std::invalid_argument(partition_label(shape) + " is not a partition");
  std::vector<Tableau> out;
  Tableau t;
  for (int len : shape) t.emplace_back(len, 0);
  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t r, std::size_t c) {
    if (r == shape.size()) {
      out.push_back(t);
      return;
    }
    if (c == t[r].size()) {
      fill(r + 1, 0);
      return;
    }
    int lo = 1;
    if (c > 0) lo = std::max(lo, t[r][c - 1]);
    if (r > 0) lo = std::max(lo, t[r - 1][c] + 1);
    // Leave room for the strictly increasing entries further down the column.
    int rows_below = 0;
    for (std::size_t k = r + 1; k < shape.size() && static_cast<std::size_t>(shape[k]) > c; ++k) ++rows_below;
    for (int v = lo; v <= n - rows_below; ++v) {
      t[r][c] = v;
      fill(r, c + 1);
    }
    t[r][c] = 0;
  };
  fill(0, 0);
  return out;
}

std::optional<std::pair<Tableau, Tableau>> column_removal(const Tableau& s, const Tableau& t, int n) {
  if (shape_of(s) != shape_of(t))
    throw ShapeMismatch("column removal needs tableaux of one shape, got " + partition_label(shape_of(s)) + " and " +
                        partition_label(shape_of(t)));
  if (static_cast<int>(s.size()) != n) return std::nullopt;
  auto strip = [](Tableau x) {
    for (auto& row : x) row.erase(row.begin());
    while (!x.empty() && x.back().empty()) x.pop_back();
    return x;
  };
  return std::make_pair(strip(s), strip(t));
}

// ------------------------------------------------------------- TableauTower

TableauTower::TableauTower(int n, int max_n) : n_(n) {
  if (n < 2 || n > max_n)
    throw BoundExceeded("tableau tower requires 2 <= n <= " + std::to_string(max_n) + ", got n=" + std::to_string(n));
  poset_ = std::make_shared<const WeightPoset>(n);
}

std::vector<Tableau> TableauTower::tableaux(const Label& weight) const {
  poset_->require(weight);
  return enumerate_ssyt(parse_partition(weight), n_);
}

std::vector<Label> TableauTower::tableau_labels(const Label& weight) const {
  std::vector<Label> out;
  for (const auto& t : tableaux(weight)) out.push_back(tableau_label(t));
  return out;
}

CoherenceSummary TableauTower::coherence(const Partition& shape) const {
  CoherenceSummary summary;
  summary.cells = 1;
  const auto ts = enumerate_ssyt(shape, n_);
  std::optional<std::optional<Partition>> image;  // shape reached by the first pair, or zero
  auto violate = [&](const std::string& what) {
    if (summary.violations++ == 0) summary.first_violation = what;
  };
  for (const auto& s : ts)
    for (const auto& t : ts) {
      ++summary.pairs;
      const auto r = column_removal(s, t, n_);
      std::optional<Partition> reached;
      if (r) {
        reached = shape_of(r->first);
        if (shape_of(r->second) != *reached)
          violate("images of " + tableau_label(s) + ", " + tableau_label(t) + " differ in shape");
        if (!is_semistandard(r->first, n_) || !is_semistandard(r->second, n_))
          violate("image of " + tableau_label(s) + ", " + tableau_label(t) + " is not semistandard");
      }
      if (!image)
        image = reached;
      else if (*image != reached)
        violate("cell " + partition_label(shape) + " splits under column removal at " + tableau_label(s) + ", " +
                tableau_label(t));
    }
  if (image && !*image) summary.zero_cells = 1;
  return summary;
}

CoherenceSummary TableauTower::coherence_up_to(int max_boxes) const {
  CoherenceSummary total;
  for (int m = 0; m <= max_boxes; ++m)
    for (const auto& shape : partitions_of(m, n_)) {
      const auto s = coherence(shape);
      total.cells += s.cells;
      total.pairs += s.pairs;
      total.zero_cells += s.zero_cells;
      if (s.violations && total.violations == 0) total.first_violation = s.first_violation;
      total.violations += s.violations;
    }
  return total;
}

// ---------------------------------------------------------------- block data

CellDatumPtr gram_block_datum(std::string name, const Field& field, std::shared_ptr<const FinitePoset> poset,
                              std::map<Label, std::vector<Label>> tableaux, std::map<Label, Matrix> grams) {
  bool invertible = true;
  for (const auto& cell : poset->element_list()) {
    const auto m = tableaux.at(cell).size();
    const Matrix& g = grams.at(cell);
    if (g.rows() != m || g.cols() != m) throw DimensionMismatch("Gram matrix of cell " + cell + " has the wrong size");
    if (!(g.field() == field)) throw FieldMismatch("Gram matrix of cell " + cell + " over another field");
    if (!(g == g.transpose())) throw std::invalid_argument("Gram matrix of cell " + cell + " is not symmetric");
    if (rank(g) < m) invertible = false;
  }
  auto shared_grams = std::make_shared<const std::map<Label, Matrix>>(std::move(grams));
  std::optional<Element> unit;
  if (invertible) {
    Element u(field);
    for (const auto& [cell, g] : *shared_grams) {
      const Matrix inv = inverse(g);
      for (std::uint32_t s = 0; s < g.rows(); ++s)
        for (std::uint32_t t = 0; t < g.cols(); ++t) u.add({cell, s, t}, inv(s, t));
    }
    unit = std::move(u);
  }
  auto mult = [field, shared_grams](const BasisIndex& a, const BasisIndex& b) {
    Element out(field);
    if (a.cell == b.cell) out.add({a.cell, a.s, b.t}, shared_grams->at(a.cell)(a.t, b.s));
    return out;
  };
  return std::make_shared<CellDatum>(
      std::move(name), field, std::move(poset),
      [tableaux = std::move(tableaux)](const Label& cell) {
        auto it = tableaux.find(cell);
        return it == tableaux.end() ? std::vector<Label>{} : it->second;
      },
      std::move(mult), std::move(unit));
}

CellDatumPtr tower_toy_datum(const TableauTower& tower, const Coideal& bound, const Scalar& delta) {
  auto poset = FinitePoset::restrict(*tower.poset(), bound.members());
  std::map<Label, std::vector<Label>> tableaux;
  std::map<Label, Matrix> grams;
  for (const auto& cell : bound.members()) {
    auto labels = tower.tableau_labels(cell);
    Matrix g(delta.field(), labels.size(), labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i)
      for (std::size_t j = 0; j < labels.size(); ++j) g(i, j) = i == j ? delta : Scalar::one(delta.field());
    tableaux.emplace(cell, std::move(labels));
    grams.emplace(cell, std::move(g));
  }
  return gram_block_datum("tower" + std::to_string(tower.n()) + "-toy" + bound.to_string(), delta.field(),
                          std::move(poset), std::move(tableaux), std::move(grams));
}

}  // namespace procell
