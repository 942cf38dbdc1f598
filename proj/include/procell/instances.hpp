#pragma once

// Built-in cell data: the polynomial algebra R[x] and the Temperley-Lieb
// diagram algebras TL_n(delta).

#include "procell/cell_datum.hpp"

#include <string>
#include <utility>
#include <vector>

namespace procell {

// ------------------------------------------------------------- polynomial datum

/// R[x] with cells the naturals under the reversed order, M(k) a singleton and
/// C^k = x^k. The involution is the identity and the datum has profinite type.
CellDatumPtr poly_datum(const Field& field = Field::rationals());

/// Basis index of x^k in the polynomial datum.
BasisIndex poly_index(unsigned long long k);

/// Parses a polynomial such as "1 - x", "3x^2 + 1/2", "-x^3" into an element
/// of the polynomial datum. Throws ParseError.
Element parse_polynomial(const Field& field, const std::string& text);

// -------------------------------------------------------- Temperley-Lieb data

constexpr int kMaxTLStrands = 6;

/// A Temperley-Lieb diagram on n strands: a perfect non-crossing matching of
/// 2n boundary points. Top points are 0..n-1 left to right, bottom points
/// n..2n-1 left to right.
class TLDiagram {
 public:
  /// Throws std::invalid_argument unless `partner` is a planar perfect matching.
  TLDiagram(int n, std::vector<int> partner);
  static TLDiagram identity(int n);
  /// Top half S, bottom half T, both written over '(' ')' '|', with the k-th
  /// through-strand of S joined to the k-th of T.
  static TLDiagram from_halves(const std::string& top, const std::string& bottom);

  int strands() const noexcept { return n_; }
  const std::vector<int>& partner() const noexcept { return partner_; }
  int through_strands() const;
  std::pair<std::string, std::string> halves() const;

  /// Stacks `upper` on top of `lower`; returns the diagram and the number of
  /// closed loops formed in the middle.
  static std::pair<TLDiagram, int> compose(const TLDiagram& upper, const TLDiagram& lower);

  friend bool operator==(const TLDiagram&, const TLDiagram&) = default;

 private:
  int n_;
  std::vector<int> partner_;
};

/// Half diagrams on n points with exactly `through` through-strands, in a
/// fixed deterministic order.
std::vector<std::string> tl_half_diagrams(int n, int through);

/// TL_n(delta): cells are through-strand counts n, n-2, ... with fewer
/// through-strands lower, M(k) the half diagrams with k through-strands, and
/// products given by diagram stacking with a factor delta per closed loop.
/// Throws BoundExceeded unless 1 <= n <= max_n.
CellDatumPtr tl_datum(int n, const Scalar& delta, int max_n = kMaxTLStrands);

/// The diagram of a TL basis index.
TLDiagram tl_diagram(const CellDatum& tl, const BasisIndex& b);

/// Generator e_i (1 <= i < n) as a basis index of TL_n.
BasisIndex tl_generator(const CellDatum& tl, int i);

}  // namespace procell
