#pragma once

// Cell data (Lambda, M, C, *) and their axioms.
//
// A basis element C^lambda_{S,T} is addressed by a BasisIndex holding the cell
// label and the positions of S and T inside the ordered tableau set M(lambda).
// Multiplication is supplied per instance, either as an explicit table or as
// a callback, so infinite data (the polynomial algebra) work lazily.

#include "procell/matrix.hpp"
#include "procell/poset.hpp"
#include "procell/scalar.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace procell {

struct BasisIndex {
  Label cell;
  std::uint32_t s = 0;
  std::uint32_t t = 0;

  BasisIndex transposed() const { return {cell, t, s}; }
  std::string to_string() const;
  auto operator<=>(const BasisIndex&) const = default;
};

/// Finitely supported linear combination of basis elements. Never stores zeros.
class Element {
 public:
  explicit Element(const Field& field = Field::rationals()) : field_(field) {}
  static Element basis(const Field& field, const BasisIndex& b) { return Element(field).add(b, Scalar::one(field)); }

  const Field& field() const noexcept { return field_; }
  const std::map<BasisIndex, Scalar>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  Scalar coefficient(const BasisIndex& b) const;

  /// Adds c * b in place.
  Element& add(const BasisIndex& b, const Scalar& c);
  Element& operator+=(const Element& other);
  Element& operator-=(const Element& other);
  Element scaled(const Scalar& c) const;
  /// Drops every term whose index fails `keep`.
  Element filtered(const std::function<bool(const BasisIndex&)>& keep) const;

  friend Element operator+(Element a, const Element& b) { return a += b; }
  friend Element operator-(Element a, const Element& b) { return a -= b; }
  friend bool operator==(const Element& a, const Element& b) { return a.field_ == b.field_ && a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  Field field_;
  std::map<BasisIndex, Scalar> terms_;
};

using MultiplyFn = std::function<Element(const BasisIndex&, const BasisIndex&)>;
using TableauxFn = std::function<std::vector<Label>(const Label&)>;

/// Immutable after construction; share through CellDatumPtr.
class CellDatum {
 public:
  /// The multiplication oracle and tableaux function must be pure.
  CellDatum(std::string name, Field field, PosetPtr poset, TableauxFn tableaux, MultiplyFn mult,
            std::optional<Element> unit = std::nullopt);
  CellDatum(const CellDatum&) = delete;
  CellDatum& operator=(const CellDatum&) = delete;

  const std::string& name() const noexcept { return name_; }
  const Field& field() const noexcept { return field_; }
  const Poset& poset() const noexcept { return *poset_; }
  const PosetPtr& poset_ptr() const noexcept { return poset_; }
  bool is_finite() const { return poset_->is_finite(); }

  /// M(lambda) in load order. Throws UnknownElement for a foreign cell.
  const std::vector<Label>& tableaux(const Label& cell) const;
  /// Cells in canonical order; finite data only.
  std::vector<Label> cells() const;
  /// All basis indices ordered by cell, then S, then T; finite data only.
  std::vector<BasisIndex> basis() const;
  /// Basis indices of the cells in `cells`, in the same ordering.
  std::vector<BasisIndex> basis_of(const std::vector<Label>& cells) const;

  bool valid_index(const BasisIndex& b) const;
  /// Throws DatumMismatch for an index that does not belong to this datum.
  void check_index(const BasisIndex& b) const;

  Element basis_element(const BasisIndex& b) const;
  /// The raw oracle product of two basis elements.
  Element multiply_basis(const BasisIndex& a, const BasisIndex& b) const;
  /// Bilinear extension of the oracle. Throws FieldMismatch or DatumMismatch.
  Element multiply(const Element& x, const Element& y) const;
  /// The involution, extended linearly: C_{S,T} -> C_{T,S}.
  Element involution(const Element& x) const;

  const std::optional<Element>& unit() const noexcept { return unit_; }
  /// Throws MissingUnit when the datum carries no unit expansion.
  const Element& require_unit() const;

 private:
  std::string name_;
  Field field_;
  PosetPtr poset_;
  TableauxFn tableaux_fn_;
  MultiplyFn mult_;
  std::optional<Element> unit_;

  mutable std::mutex cache_mutex_;
  mutable std::map<Label, std::shared_ptr<const std::vector<Label>>> tableaux_cache_;
};

using CellDatumPtr = std::shared_ptr<const CellDatum>;

/// Restriction of `d` to a finite coideal P: the quotient by the span of the
/// basis elements whose cell lies outside P. The result is a finite datum.
CellDatumPtr truncate(const CellDatumPtr& d, const Coideal& p);

/// Mod A(<lambda): deletes every term whose cell is strictly below `cell`.
Element reduce_mod_lt(const CellDatum& d, const Element& x, const Label& cell);

struct AxiomCheck {
  std::string name;
  bool passed = true;
  std::string witness;
};

struct AxiomReport {
  std::string datum;
  std::size_t dimension = 0;
  std::vector<AxiomCheck> checks;
  bool all_passed() const;
  const AxiomCheck* find(const std::string& name) const;
};

struct VerifyOptions {
  /// Worker threads for the per-cell checks; 1 runs inline.
  unsigned jobs = 1;
  bool check_associativity = true;
};

/// Exhaustive check of the cell-datum axioms on a finite datum:
///   "basis"         M(lambda) nonempty, products land on valid indices in the field
///   "associativity" (ab)c = a(bc) on all basis triples
///   "unit"          the unit expansion is a two-sided identity (skipped when absent)
///   "involution"    * has order 2 and (ab)* = b* a* on all basis pairs
///   "cell"          a C_{S,T} mod A(<lambda) = sum_S' r_a(S',S) C_{S',T}, r independent of T
/// Each failing check carries a witness naming the offending indices.
AxiomReport verify_cell_datum(const CellDatum& d, const VerifyOptions& options = {});

/// The matrix r_a(S', S) (rows S', columns S) of a acting on cell lambda,
/// extracted with the first T and checked against all others. Throws
/// InconsistencyError with the offending T.
Matrix structure_constants(const CellDatum& d, const Element& a, const Label& cell);

}  // namespace procell
