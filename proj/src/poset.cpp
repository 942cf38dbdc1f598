#include "procell/poset.hpp"

#include "procell/error.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <map>
#include <stdexcept>

namespace procell {

std::vector<Label> Poset::elements() const {
  if (!is_finite()) throw SizeGuard("cannot list all elements of the infinite poset " + name());
  return enumerate(static_cast<std::size_t>(-1));
}

void Poset::require(const Label& a) const {
  if (!contains(a)) throw UnknownElement("'" + a + "' is not an element of " + name());
}

// ---------------------------------------------------------------- FinitePoset

FinitePoset::FinitePoset(std::string name, std::vector<Label> elements)
    : name_(std::move(name)), elements_(std::move(elements)) {
  std::set<Label> seen;
  for (const auto& e : elements_)
    if (!seen.insert(e).second) throw std::invalid_argument("duplicate poset element '" + e + "'");
  leq_.assign(elements_.size(), std::vector<bool>(elements_.size(), false));
  for (std::size_t i = 0; i < elements_.size(); ++i) leq_[i][i] = true;
}

std::shared_ptr<FinitePoset> FinitePoset::from_covers(std::string name, std::vector<Label> elements,
                                                      const std::vector<std::pair<Label, Label>>& covers) {
  std::shared_ptr<FinitePoset> p(new FinitePoset(std::move(name), std::move(elements)));
  for (const auto& [a, b] : covers) p->leq_[p->index_of(a)][p->index_of(b)] = true;
  const std::size_t n = p->elements_.size();
  // Warshall closure.
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (p->leq_[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (p->leq_[k][j]) p->leq_[i][j] = true;
  p->check_antisymmetric();
  return p;
}

std::shared_ptr<FinitePoset> FinitePoset::restrict(const Poset& parent, std::vector<Label> elements) {
  for (const auto& e : elements) parent.require(e);
  std::shared_ptr<FinitePoset> p(new FinitePoset(parent.name() + "|restricted", std::move(elements)));
  const std::size_t n = p->elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) p->leq_[i][j] = parent.leq(p->elements_[i], p->elements_[j]);
  p->check_antisymmetric();
  return p;
}

void FinitePoset::check_antisymmetric() const {
  for (std::size_t i = 0; i < elements_.size(); ++i)
    for (std::size_t j = i + 1; j < elements_.size(); ++j)
      if (leq_[i][j] && leq_[j][i])
        throw std::invalid_argument("order cycle between '" + elements_[i] + "' and '" + elements_[j] + "'");
}

std::size_t FinitePoset::index_of(const Label& a) const {
  auto it = std::find(elements_.begin(), elements_.end(), a);
  if (it == elements_.end()) throw UnknownElement("'" + a + "' is not an element of " + name_);
  return static_cast<std::size_t>(it - elements_.begin());
}

bool FinitePoset::contains(const Label& a) const {
  return std::find(elements_.begin(), elements_.end(), a) != elements_.end();
}

bool FinitePoset::leq(const Label& a, const Label& b) const { return leq_[index_of(a)][index_of(b)]; }

std::optional<std::vector<Label>> FinitePoset::up_set(const Label& a, std::size_t cap) const {
  const auto i = index_of(a);
  std::vector<Label> out;
  for (std::size_t j = 0; j < elements_.size(); ++j)
    if (leq_[i][j]) {
      if (out.size() == cap) return std::nullopt;
      out.push_back(elements_[j]);
    }
  return out;
}

std::vector<Label> FinitePoset::enumerate(std::size_t limit) const {
  return {elements_.begin(), elements_.begin() + static_cast<std::ptrdiff_t>(std::min(limit, elements_.size()))};
}

bool FinitePoset::precedes(const Label& a, const Label& b) const { return index_of(a) < index_of(b); }

std::vector<std::pair<Label, Label>> FinitePoset::covers() const {
  std::vector<std::pair<Label, Label>> out;
  const std::size_t n = elements_.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq_[i][j]) continue;
      bool between = false;
      for (std::size_t k = 0; k < n && !between; ++k)
        between = k != i && k != j && leq_[i][k] && leq_[k][j];
      if (!between) out.emplace_back(elements_[i], elements_[j]);
    }
  return out;
}

// -------------------------------------------------------------- NaturalsPoset

unsigned long long NaturalsPoset::value(const Label& a) {
  unsigned long long v = 0;
  auto [ptr, ec] = std::from_chars(a.data(), a.data() + a.size(), v);
  if (a.empty() || ec != std::errc{} || ptr != a.data() + a.size() || (a.size() > 1 && a[0] == '0'))
    throw UnknownElement("'" + a + "' is not a natural number label");
  return v;
}

bool NaturalsPoset::contains(const Label& a) const {
  try {
    value(a);
    return true;
  } catch (const UnknownElement&) {
    return false;
  }
}

bool NaturalsPoset::leq(const Label& a, const Label& b) const {
  const auto x = value(a);
  const auto y = value(b);
  return reversed_ ? y <= x : x <= y;
}

std::optional<std::vector<Label>> NaturalsPoset::up_set(const Label& a, std::size_t cap) const {
  const auto x = value(a);
  std::vector<Label> out;
  if (reversed_) {
    if (x >= cap) return std::nullopt;
    for (unsigned long long k = 0; k <= x; ++k) out.push_back(std::to_string(k));
    return out;
  }
  // Usual order: x, x+1, ... never terminates, so the cap always trips.
  for (unsigned long long k = x;; ++k) {
    if (out.size() == cap) return std::nullopt;
    out.push_back(std::to_string(k));
  }
}

std::vector<Label> NaturalsPoset::enumerate(std::size_t limit) const {
  std::vector<Label> out;
  for (std::size_t k = 0; k < limit; ++k) out.push_back(std::to_string(k));
  return out;
}

bool NaturalsPoset::precedes(const Label& a, const Label& b) const { return value(a) < value(b); }

// -------------------------------------------------------------------- Coideal

Coideal::Coideal(PosetPtr parent, std::vector<Label> members) : parent_(std::move(parent)) {
  for (auto& m : members) {
    parent_->require(m);
    if (lookup_.insert(m).second) members_.push_back(std::move(m));
  }
  std::sort(members_.begin(), members_.end(),
            [this](const Label& a, const Label& b) { return parent_->precedes(a, b); });
}

bool Coideal::includes(const Coideal& other) const {
  return std::includes(lookup_.begin(), lookup_.end(), other.lookup_.begin(), other.lookup_.end());
}

std::string Coideal::to_string() const {
  std::string s = "{";
  for (std::size_t i = 0; i < members_.size(); ++i) s += (i ? ", " : "") + members_[i];
  return s + "}";
}

Coideal coideal_union(const Coideal& a, const Coideal& b) {
  std::vector<Label> m = a.members();
  m.insert(m.end(), b.members().begin(), b.members().end());
  return Coideal(a.parent() ? a.parent() : b.parent(), std::move(m));
}

Coideal coideal_intersection(const Coideal& a, const Coideal& b) {
  std::vector<Label> m;
  for (const auto& x : a.members())
    if (b.contains(x)) m.push_back(x);
  return Coideal(a.parent() ? a.parent() : b.parent(), std::move(m));
}

Coideal coideal_generate(const PosetPtr& p, const std::vector<Label>& gens, std::size_t cap) {
  std::vector<Label> members;
  for (const auto& g : gens) {
    p->require(g);
    auto up = p->up_set(g, cap);
    if (!up)
      throw CapExceeded("<" + g + "> has more than " + std::to_string(cap) + " elements in " + p->name() +
                        "; the poset is not of profinite type in this direction");
    members.insert(members.end(), up->begin(), up->end());
  }
  return Coideal(p, std::move(members));
}

bool is_coideal(const Poset& p, const std::set<Label>& s) {
  for (const auto& a : s) p.require(a);
  for (const auto& a : s) {
    // <a> must fit inside s, so enumerating past |s| already decides the answer.
    auto up = p.up_set(a, s.size());
    if (!up) return false;
    for (const auto& b : *up)
      if (!s.count(b)) return false;
  }
  return true;
}

bool ProfiniteReport::all_finite() const {
  return std::all_of(entries.begin(), entries.end(), [](const ProfiniteEntry& e) { return e.finite; });
}

ProfiniteReport profinite_check(const Poset& p, const std::vector<Label>& sample, std::size_t cap) {
  ProfiniteReport report;
  for (const auto& a : sample) {
    p.require(a);
    auto up = p.up_set(a, cap);
    report.entries.push_back(up ? ProfiniteEntry{a, true, up->size()} : ProfiniteEntry{a, false, cap});
  }
  return report;
}

std::vector<Coideal> finite_coideals_below(const Coideal& bound, std::size_t max_elements) {
  if (bound.size() > max_elements)
    throw SizeGuard("coideal listing is limited to " + std::to_string(max_elements) + " elements, bound has " +
                    std::to_string(bound.size()));
  if (bound.empty()) return {bound};
  const Poset& p = *bound.parent();
  const auto& members = bound.members();
  const std::size_t n = members.size();

  std::vector<std::vector<std::size_t>> above(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (p.less(members[i], members[j])) above[i].push_back(j);

  // Decide elements top-down so every strict upper bound is settled first.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return above[a].size() < above[b].size(); });

  std::vector<std::vector<std::size_t>> found;
  std::vector<bool> in(n, false);
  std::function<void(std::size_t)> descend = [&](std::size_t depth) {
    if (depth == n) {
      std::vector<std::size_t> set;
      for (std::size_t i = 0; i < n; ++i)
        if (in[i]) set.push_back(i);
      found.push_back(std::move(set));
      return;
    }
    const std::size_t x = order[depth];
    descend(depth + 1);
    if (std::all_of(above[x].begin(), above[x].end(), [&](std::size_t j) { return static_cast<bool>(in[j]); })) {
      in[x] = true;
      descend(depth + 1);
      in[x] = false;
    }
  };
  descend(0);

  std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  std::vector<Coideal> out;
  out.reserve(found.size());
  for (const auto& set : found) {
    std::vector<Label> labels;
    for (auto i : set) labels.push_back(members[i]);
    out.emplace_back(bound.parent(), std::move(labels));
  }
  return out;
}

std::optional<std::string> check_order_axioms(const Poset& p, const std::vector<Label>& sample) {
  for (const auto& a : sample)
    if (!p.leq(a, a)) return "not reflexive at " + a;
  for (const auto& a : sample)
    for (const auto& b : sample) {
      if (a != b && p.leq(a, b) && p.leq(b, a)) return "not antisymmetric at " + a + ", " + b;
      if (!p.leq(a, b)) continue;
      for (const auto& c : sample)
        if (p.leq(b, c) && !p.leq(a, c)) return "not transitive at " + a + " <= " + b + " <= " + c;
    }
  return std::nullopt;
}

}  // namespace procell
