#pragma once

// Partitions, dominance, semistandard tableaux and the type-A tableau tower
// with its column-removal connecting maps (labels only).

#include "procell/cell_datum.hpp"
#include "procell/poset.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace procell {

/// Weakly decreasing positive parts.
using Partition = std::vector<int>;
/// Rows of entries, top row first.
using Tableau = std::vector<std::vector<int>>;

std::string partition_label(const Partition& p);
/// Parses "(2,1)", "2,1" or "()" / "". Throws ParseError.
Partition parse_partition(const std::string& text);
int partition_size(const Partition& p);

/// All partitions of m with at most `max_rows` parts, in reverse lexicographic order.
std::vector<Partition> partitions_of(int m, int max_rows);

/// Dominance of partitions of the same size: partial sums of a bound those of b.
bool dominates(const Partition& a, const Partition& b);

/// Partitions of m ordered so that a <= b iff a dominates b.
std::shared_ptr<FinitePoset> partition_dominance_poset(int m);

/// Dominant sl_n weights, written as partitions with fewer than n rows, in the
/// dominance order with lambda <= mu iff lambda dominates mu. Partitions with
/// n rows are accepted as labels only after removing their full columns.
class WeightPoset final : public Poset {
 public:
  explicit WeightPoset(int n);

  std::string name() const override { return "sl" + std::to_string(n_) + "-weights"; }
  bool is_finite() const override { return false; }
  bool contains(const Label& a) const override;
  bool leq(const Label& a, const Label& b) const override;
  std::optional<std::vector<Label>> up_set(const Label& a, std::size_t cap) const override;
  std::vector<Label> enumerate(std::size_t limit) const override;
  bool precedes(const Label& a, const Label& b) const override;

  int n() const noexcept { return n_; }
  /// Removes full-height columns: the weight of a shape with at most n rows.
  Partition normalize(const Partition& shape) const;
  /// parse_partition followed by normalize. Throws RowCountViolation.
  Label canonical_label(const std::string& text) const;
  /// Weight dominance between two normalized partitions.
  bool weight_dominates(const Partition& a, const Partition& b) const;

 private:
  int n_;
};

std::string tableau_label(const Tableau& t);
Partition shape_of(const Tableau& t);
bool is_semistandard(const Tableau& t, int n);

/// All semistandard tableaux of `shape` with entries in 1..n, ordered
/// lexicographically by reading word. Throws RowCountViolation when the shape
/// has more than n rows.
std::vector<Tableau> enumerate_ssyt(const Partition& shape, int n);

/// The connecting map on labels: if S and T both have a leftmost column of
/// length n, removes it from both; otherwise returns nullopt (the zero marker).
/// Throws ShapeMismatch when S and T differ in shape.
std::optional<std::pair<Tableau, Tableau>> column_removal(const Tableau& s, const Tableau& t, int n);

constexpr int kMaxTowerRank = 6;

struct CoherenceSummary {
  std::size_t cells = 0;
  std::size_t pairs = 0;
  std::size_t zero_cells = 0;
  std::size_t violations = 0;
  std::string first_violation;
  bool coherent() const { return violations == 0; }
};

/// The combinatorial skeleton of the type-A tower for sl_n.
class TableauTower {
 public:
  /// Throws BoundExceeded unless 2 <= n <= max_n.
  explicit TableauTower(int n, int max_n = kMaxTowerRank);

  int n() const noexcept { return n_; }
  const std::shared_ptr<const WeightPoset>& poset() const noexcept { return poset_; }
  /// M(lambda) for a weight label.
  std::vector<Tableau> tableaux(const Label& weight) const;
  /// M(lambda) as string labels.
  std::vector<Label> tableau_labels(const Label& weight) const;

  /// Checks that for one shape with at most n rows, all pairs (S, T) in the
  /// same cell are sent to the same smaller cell or all to zero, and that the
  /// surviving pairs are semistandard of equal shape.
  CoherenceSummary coherence(const Partition& shape) const;
  /// coherence() over every shape with at most n rows and at most `max_boxes` boxes.
  CoherenceSummary coherence_up_to(int max_boxes) const;

 private:
  int n_;
  std::shared_ptr<const WeightPoset> poset_;
};

/// Finite cellular algebra with basis C^lambda_{S,T} and products
/// C^l_{S,T} C^m_{U,V} = [l = m] G_l(T,U) C^l_{S,V}, for symmetric Gram
/// matrices G_l. Its Gram form on cell l is G_l.
CellDatumPtr gram_block_datum(std::string name, const Field& field, std::shared_ptr<const FinitePoset> poset,
                              std::map<Label, std::vector<Label>> tableaux, std::map<Label, Matrix> grams);

/// The tower restricted to a finite coideal `bound`, with the toy block
/// multiplication whose Gram matrix has delta on the diagonal and 1 elsewhere.
CellDatumPtr tower_toy_datum(const TableauTower& tower, const Coideal& bound, const Scalar& delta);

}  // namespace procell
