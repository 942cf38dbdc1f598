#pragma once

// Finite and lazily enumerated posets, coideals and the profinite-type check.
//
// Elements are opaque string labels so that integers, partitions and
// tableaux share one code path. A lazy poset must be able to list the
// principal coideal <a> = {b : a <= b} itself; the library never inverts a
// bare order predicate.

#include <cstddef>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace procell {

using Label = std::string;

class Poset {
 public:
  virtual ~Poset() = default;

  virtual std::string name() const = 0;
  virtual bool is_finite() const = 0;
  virtual bool contains(const Label& a) const = 0;
  /// Order relation. Both labels must be elements.
  virtual bool leq(const Label& a, const Label& b) const = 0;
  /// Lists <a> = {b : a <= b}, or nullopt when it has more than `cap` elements.
  virtual std::optional<std::vector<Label>> up_set(const Label& a, std::size_t cap) const = 0;
  /// The first `limit` elements in canonical order.
  virtual std::vector<Label> enumerate(std::size_t limit) const = 0;
  /// Canonical total order used for deterministic output.
  virtual bool precedes(const Label& a, const Label& b) const = 0;

  bool less(const Label& a, const Label& b) const { return a != b && leq(a, b); }
  /// All elements; throws SizeGuard for infinite posets.
  std::vector<Label> elements() const;
  /// Throws UnknownElement when `a` is not an element.
  void require(const Label& a) const;
};

using PosetPtr = std::shared_ptr<const Poset>;

/// Explicit element list plus order relation (transitively closed on construction).
class FinitePoset final : public Poset {
 public:
  /// `covers` holds pairs (a, b) meaning a < b. Throws std::invalid_argument on
  /// duplicate elements or an order cycle, UnknownElement on foreign labels.
  static std::shared_ptr<FinitePoset> from_covers(std::string name, std::vector<Label> elements,
                                                  const std::vector<std::pair<Label, Label>>& covers);
  /// Builds the restriction of `parent`'s order to `elements`.
  static std::shared_ptr<FinitePoset> restrict(const Poset& parent, std::vector<Label> elements);

  std::string name() const override { return name_; }
  bool is_finite() const override { return true; }
  bool contains(const Label& a) const override;
  bool leq(const Label& a, const Label& b) const override;
  std::optional<std::vector<Label>> up_set(const Label& a, std::size_t cap) const override;
  std::vector<Label> enumerate(std::size_t limit) const override;
  bool precedes(const Label& a, const Label& b) const override;

  const std::vector<Label>& element_list() const noexcept { return elements_; }
  std::size_t index_of(const Label& a) const;
  /// Covering pairs (a, b), a < b with nothing strictly between.
  std::vector<std::pair<Label, Label>> covers() const;

 private:
  FinitePoset(std::string name, std::vector<Label> elements);
  void check_antisymmetric() const;

  std::string name_;
  std::vector<Label> elements_;
  std::vector<std::vector<bool>> leq_;
};

/// The natural numbers with the usual or the reversed order. Labels are
/// decimal numerals without leading zeros.
class NaturalsPoset final : public Poset {
 public:
  explicit NaturalsPoset(bool reversed) : reversed_(reversed) {}

  std::string name() const override { return reversed_ ? "naturals-reversed" : "naturals"; }
  bool is_finite() const override { return false; }
  bool contains(const Label& a) const override;
  bool leq(const Label& a, const Label& b) const override;
  std::optional<std::vector<Label>> up_set(const Label& a, std::size_t cap) const override;
  std::vector<Label> enumerate(std::size_t limit) const override;
  bool precedes(const Label& a, const Label& b) const override;

  static unsigned long long value(const Label& a);

 private:
  bool reversed_;
};

/// A finite upward-closed subset of a poset; members kept in canonical order.
class Coideal {
 public:
  Coideal() = default;
  /// Does not check upward closure; use coideal_generate or is_coideal.
  Coideal(PosetPtr parent, std::vector<Label> members);

  const PosetPtr& parent() const noexcept { return parent_; }
  const std::vector<Label>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const Label& a) const { return lookup_.count(a) != 0; }
  bool includes(const Coideal& other) const;
  std::string to_string() const;

  friend bool operator==(const Coideal& a, const Coideal& b) { return a.lookup_ == b.lookup_; }

 private:
  PosetPtr parent_;
  std::vector<Label> members_;
  std::set<Label> lookup_;
};

Coideal coideal_union(const Coideal& a, const Coideal& b);
Coideal coideal_intersection(const Coideal& a, const Coideal& b);

constexpr std::size_t kDefaultUpSetCap = 100000;

/// <gens> = {b : g <= b for some generator g}. Throws UnknownElement for a
/// foreign generator, CapExceeded when some <g> has more than `cap` elements.
Coideal coideal_generate(const PosetPtr& p, const std::vector<Label>& gens, std::size_t cap = kDefaultUpSetCap);

/// True iff `s` is upward closed. Throws UnknownElement.
bool is_coideal(const Poset& p, const std::set<Label>& s);

struct ProfiniteEntry {
  Label element;
  bool finite = false;
  std::size_t size = 0;  ///< |<a>| when finite, else the cap that was exceeded
};

struct ProfiniteReport {
  std::vector<ProfiniteEntry> entries;
  bool all_finite() const;
};

/// Enumerates <a> for each sampled element, up to `cap` members each.
ProfiniteReport profinite_check(const Poset& p, const std::vector<Label>& sample, std::size_t cap);

constexpr std::size_t kDefaultCoidealGuard = 24;

/// Every coideal contained in `bound` (including the empty one and `bound`),
/// ordered by size and then canonically, which extends inclusion. Throws
/// SizeGuard when `bound` has more than `max_elements` members.
std::vector<Coideal> finite_coideals_below(const Coideal& bound, std::size_t max_elements = kDefaultCoidealGuard);

/// Checks reflexivity, antisymmetry and transitivity on the given elements.
/// Returns a description of the first violation, or nullopt.
std::optional<std::string> check_order_axioms(const Poset& p, const std::vector<Label>& sample);

}  // namespace procell
