#pragma once

// Cell modules W(lambda), the bilinear forms phi_lambda, radicals, the simple
// quotients L(lambda) and the classification by the cells with phi != 0.

#include "procell/cell_datum.hpp"
#include "procell/matrix.hpp"

#include <optional>
#include <string>
#include <vector>

namespace procell {

/// A finite-dimensional module given by the action of each listed algebra
/// basis element.
struct Module {
  Field field;
  std::size_t dim = 0;
  std::vector<BasisIndex> algebra_basis;
  std::vector<Matrix> action;  ///< action[i] is the matrix of algebra_basis[i]

  const Matrix& action_of(const BasisIndex& b) const;
};

/// W(lambda) with its basis {C_S : S in M(lambda)}.
struct CellModule {
  Label cell;
  Module module;
};

struct GramForm {
  Label cell;
  Matrix phi;  ///< phi(S, T) for S, T in M(lambda), in load order
};

struct IrreducibleReport {
  Label cell;
  std::size_t dim_cell = 0;     ///< dim W(lambda)
  std::size_t dim_simple = 0;   ///< dim L(lambda) = rank phi
  std::vector<Vector> radical;  ///< basis of rad(lambda)
  bool in_lambda0 = false;      ///< phi != 0
};

/// For an infinite datum, the finite truncation A_<cell> on which the
/// representation theory of `cell` is computed; `d` itself when finite.
CellDatumPtr working_datum(const CellDatumPtr& d, const Label& cell);

/// The action of every basis element of the (truncated) algebra on W(lambda).
/// Propagates InconsistencyError from structure_constants.
CellModule cell_module(const CellDatumPtr& d, const Label& cell);

/// phi_lambda read off from C_{S1,T1} C_{S2,T2} = phi(T1,S2) C_{S1,T2} mod A(<lambda),
/// using the first probe pair (S1, T2) and checking every other probe pair
/// when `exhaustive`. Throws InconsistencyError naming the probes.
GramForm gram(const CellDatum& d, const Label& cell, bool exhaustive = true);

IrreducibleReport irreducible_report(const CellDatum& d, const Label& cell);

/// True iff span(vs) is stable under every action matrix. Throws DimensionMismatch.
bool submodule_check(const Module& m, const std::vector<Vector>& vs);

/// The quotient module m / span(sub); `sub` must span a submodule.
Module quotient_module(const Module& m, const std::vector<Vector>& sub);

/// L(lambda) = W(lambda) / rad(lambda).
Module simple_module(const CellModule& w, const IrreducibleReport& report);

/// Burnside: the action matrices span all dim x dim matrices. Throws ZeroModule.
bool absolutely_irreducible(const Module& m);

struct ClassificationRow {
  Label cell;
  std::size_t dim_cell = 0;
  std::size_t dim_simple = 0;
  bool in_lambda0 = false;
  bool absolutely_irreducible = false;  ///< Burnside test on L(lambda); false outside Lambda0
  std::vector<Scalar> fingerprint;      ///< traces of the basis action on L(lambda)
};

struct Classification {
  std::string datum;
  std::vector<ClassificationRow> rows;  ///< in the datum's cell order
  std::vector<std::string> warnings;    ///< fingerprint collisions among Lambda0
  std::vector<Label> lambda0() const;
};

struct ClassifyOptions {
  unsigned jobs = 1;
  bool burnside = true;
};

/// Classification table of a finite datum.
Classification classify(const CellDatumPtr& d, const ClassifyOptions& options = {});

}  // namespace procell
