#pragma once

// Finite quotients A_P, the connecting epimorphisms between them, and the
// procellular completion as coefficient oracles observed through finite
// projections.
//
// Elements of the completion are formal sums sum a(T,T') C(T,T') over every
// basis label. Only projections to finite quotients are computable, so
// equality is offered at a truncation (equal_mod), never globally. The
// oracles realize a computable subring: each must be a terminating, pure
// function.

#include "procell/cell_datum.hpp"
#include "procell/repthy.hpp"

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

namespace procell {

/// A_P with the cell datum inherited from the parent by restriction to P.
class QuotientAlgebra {
 public:
  /// Throws NotACoideal unless P is upward closed in the parent poset.
  QuotientAlgebra(CellDatumPtr parent, Coideal p);

  const CellDatumPtr& parent() const noexcept { return parent_; }
  const Coideal& coideal() const noexcept { return coideal_; }
  const CellDatumPtr& datum() const noexcept { return datum_; }
  std::size_t dimension() const { return datum_->basis().size(); }

  /// psi_P: kills exactly the basis elements whose cell lies outside P.
  Element project(const Element& x) const;

 private:
  CellDatumPtr parent_;
  Coideal coideal_;
  CellDatumPtr datum_;
};

using QuotientPtr = std::shared_ptr<const QuotientAlgebra>;

QuotientPtr quotient(const CellDatumPtr& d, const Coideal& p);

/// psi_{P1,P2} : A_{P1} -> A_{P2} for P1 containing P2.
class ConnectingMap {
 public:
  /// Throws NotNested unless P1 contains P2, DatumMismatch for different parents.
  ConnectingMap(QuotientPtr source, QuotientPtr target);

  const QuotientPtr& source() const noexcept { return source_; }
  const QuotientPtr& target() const noexcept { return target_; }
  Element apply(const Element& x) const;
  /// Checks psi(ab) = psi(a) psi(b) on all basis pairs of the source; returns
  /// the first failing pair.
  std::optional<std::string> homomorphism_violation() const;

 private:
  QuotientPtr source_;
  QuotientPtr target_;
};

/// Builds psi_{P1,P2} and verifies the homomorphism law on every basis pair.
/// Throws InconsistencyError on failure.
ConnectingMap connecting_map(const QuotientPtr& q1, const QuotientPtr& q2);

/// The inverse system of a datum: memoized quotients per finite coideal.
class Completion {
 public:
  /// For an infinite poset, runs profinite_check on the first `sample`
  /// elements and throws CapExceeded if any principal coideal exceeds `cap`.
  static std::shared_ptr<const Completion> create(CellDatumPtr parent, std::size_t sample = 8,
                                                  std::size_t cap = kDefaultUpSetCap);

  const CellDatumPtr& parent() const noexcept { return parent_; }
  const Field& field() const noexcept { return parent_->field(); }
  Coideal coideal(const std::vector<Label>& gens) const;
  /// Memoized; safe to call from several threads.
  QuotientPtr quotient(const Coideal& p) const;
  QuotientPtr principal(const Label& cell) const { return quotient(coideal({cell})); }

 private:
  explicit Completion(CellDatumPtr parent) : parent_(std::move(parent)) {}

  CellDatumPtr parent_;
  mutable std::mutex mutex_;
  mutable std::map<std::vector<Label>, QuotientPtr> cache_;
};

using CompletionPtr = std::shared_ptr<const Completion>;
using CoefficientOracle = std::function<Scalar(const BasisIndex&)>;

class CompletionElement {
 public:
  CompletionElement(CompletionPtr completion, CoefficientOracle oracle, std::string description);

  static CompletionElement zero(const CompletionPtr& c);
  /// The canonical embedding of a finitely supported element.
  static CompletionElement embed(const CompletionPtr& c, const Element& x, std::string description = "");

  const CompletionPtr& completion() const noexcept { return completion_; }
  const std::string& description() const noexcept { return description_; }
  /// a(T,T') at a basis label of the parent.
  Scalar coefficient(const BasisIndex& b) const;

 private:
  CompletionPtr completion_;
  std::shared_ptr<const CoefficientOracle> oracle_;
  std::string description_;
};

/// sum a(T,T') psi_P(C(T,T')), a finite sum since P is finite.
Element project(const CompletionElement& e, const Coideal& p);

/// The coefficient at (lambda,S,T) is read from the product in A_<lambda>.
CompletionElement complete_mul(const CompletionElement& a, const CompletionElement& b);
CompletionElement complete_add(const CompletionElement& a, const CompletionElement& b);
CompletionElement complete_sub(const CompletionElement& a, const CompletionElement& b);
CompletionElement complete_scale(const CompletionElement& a, const Scalar& c);
/// Coefficient at (lambda,S,T) is that of e at (lambda,T,S).
CompletionElement hat_involution(const CompletionElement& e);
/// Finitely supported element agreeing with e on P; e minus it lies in I_P.
CompletionElement truncation(const CompletionElement& e, const Coideal& p);

/// Membership in the open ideal I_P: project(e, P) == 0.
bool in_ideal(const CompletionElement& e, const Coideal& p);
bool equal_mod(const CompletionElement& a, const CompletionElement& b, const Coideal& p);

/// For a nonzero finitely supported x, a principal coideal <lambda> with x not
/// in I_<lambda>; nullopt only for x == 0.
std::optional<Coideal> separation_witness(const CompletionPtr& c, const Element& x);

using GeneratorFactory = std::function<CompletionElement(const CompletionPtr&)>;

/// Named completion elements. Ships "zero", "delta"/"unit" (the embedded unit)
/// and "geometric" (every coefficient 1: the series sum x^k for the
/// polynomial datum).
class GeneratorRegistry {
 public:
  GeneratorRegistry();
  void add(const std::string& name, GeneratorFactory factory);
  bool contains(const std::string& name) const { return factories_.count(name) != 0; }
  /// Throws UnknownGenerator.
  CompletionElement make(const std::string& name, const CompletionPtr& c) const;
  std::vector<std::string> names() const;

 private:
  std::map<std::string, GeneratorFactory> factories_;
};

/// A finite-dimensional module over the completion given by the action of
/// each basis label, with a promise that every label outside `tail_promise`
/// acts as zero.
struct SmoothModuleSpec {
  Field field;
  std::size_t dim = 0;
  std::function<Matrix(const BasisIndex&)> action;
  std::optional<Coideal> tail_promise;
};

struct SmoothOptions {
  /// Number of cells outside the promise whose labels are checked.
  std::size_t halo = 16;
};

/// Smoothness of a finite-dimensional module: some I_P lies in the kernel.
/// The tail promise is verified on a halo of cells outside it (exhaustively
/// for finite data). Throws UndecidablePromise for a nonzero module without
/// a promise.
bool smooth_check(const CellDatum& parent, const SmoothModuleSpec& spec, const SmoothOptions& options = {});

/// W^(lambda): W(lambda) of A_<lambda> pulled back through psi_<lambda>.
SmoothModuleSpec pullback_cell_module(const CompletionPtr& c, const Label& cell);
/// L^(lambda), the pulled-back simple quotient.
SmoothModuleSpec pullback_simple_module(const CompletionPtr& c, const Label& cell);

struct SmoothRow {
  Label cell;
  std::size_t dim_simple = 0;
};

struct SmoothClassification {
  Coideal bound;
  std::vector<SmoothRow> rows;  ///< cells of the bound with phi != 0, in bound order
  std::vector<Label> finite_lambda0;  ///< Lambda0 of classify(A_bound)
  bool agrees = false;              ///< rows match finite_lambda0 exactly
};

/// The absolutely irreducible smooth modules indexed inside a finite window,
/// cross-checked against the classification of A_bound.
SmoothClassification smooth_classify(const CompletionPtr& c, const Coideal& bound);

}  // namespace procell
