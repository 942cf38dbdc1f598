#pragma once

// JSON datum format.
//
//   {
//     "schema": 1,
//     "name": "TL3(delta=2)",
//     "field": "q" | "gf:p",
//     "poset": {"elements": ["3", "1"], "covers": [["1", "3"]]},   // [a, b] means a < b
//     "tableaux": {"3": ["|||"], "1": ["()|", "|()"]},
//     "table": [[i, j, [[k, "coeff"], ...]], ...],
//     "unit": [[k, "coeff"], ...]                                  // optional
//   }
//
// Basis indices i, j, k number the basis by cell (in poset element order),
// then S, then T. The involution is implied by swapping S and T. Scalars use
// the canonical text form of Scalar::to_string.

#include "procell/cell_datum.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace procell {

struct LoadedDatum {
  CellDatumPtr datum;
  /// Table defects found while loading (missing pairs, out-of-range indices);
  /// they fail the basis axiom.
  std::vector<std::string> table_issues;
};

/// Throws ParseError with line and column for malformed JSON or schema violations.
LoadedDatum load_datum(const std::string& text);
LoadedDatum load_datum_file(const std::string& path);

/// Serializes a finite datum with its full multiplication table.
nlohmann::json export_datum(const CellDatum& d);

/// verify_cell_datum with the loader's table issues folded into the basis check.
AxiomReport verify_loaded(const LoadedDatum& loaded, const VerifyOptions& options = {});

}  // namespace procell
