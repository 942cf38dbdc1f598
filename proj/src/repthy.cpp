#include "procell/repthy.hpp"

#include "procell/error.hpp"

#include <algorithm>
#include <future>

namespace procell {

const Matrix& Module::action_of(const BasisIndex& b) const {
  auto it = std::find(algebra_basis.begin(), algebra_basis.end(), b);
  if (it == algebra_basis.end()) throw DatumMismatch("module has no action for " + b.to_string());
  return action[static_cast<std::size_t>(it - algebra_basis.begin())];
}

CellDatumPtr working_datum(const CellDatumPtr& d, const Label& cell) {
  if (d->is_finite()) {
    d->poset().require(cell);
    return d;
  }
  return truncate(d, coideal_generate(d->poset_ptr(), {cell}));
}

CellModule cell_module(const CellDatumPtr& d, const Label& cell) {
  const CellDatumPtr wd = working_datum(d, cell);
  CellModule w{cell, Module{wd->field(), wd->tableaux(cell).size(), {}, {}}};
  for (const auto& b : wd->basis()) {
    w.module.algebra_basis.push_back(b);
    w.module.action.push_back(structure_constants(*wd, wd->basis_element(b), cell));
  }
  return w;
}

GramForm gram(const CellDatum& d, const Label& cell, bool exhaustive) {
  const auto m = static_cast<std::uint32_t>(d.tableaux(cell).size());
  GramForm g{cell, Matrix(d.field(), m, m)};

  auto product = [&](std::uint32_t s1, std::uint32_t t1, std::uint32_t s2, std::uint32_t t2) {
    return reduce_mod_lt(d, d.multiply_basis({cell, s1, t1}, {cell, s2, t2}), cell);
  };
  auto probe = [&](std::uint32_t s1, std::uint32_t t1, std::uint32_t s2, std::uint32_t t2) {
    return "C(" + BasisIndex{cell, s1, t1}.to_string() + ") * C(" + BasisIndex{cell, s2, t2}.to_string() + ")";
  };

  for (std::uint32_t t1 = 0; t1 < m; ++t1)
    for (std::uint32_t s2 = 0; s2 < m; ++s2) {
      const Element p = product(0, t1, s2, 0);
      const BasisIndex target{cell, 0, 0};
      for (const auto& [k, c] : p.terms())
        if (!(k == target))
          throw InconsistencyError("Gram extraction failed", probe(0, t1, s2, 0) + " has term " + k.to_string() +
                                                                 " mod A(<" + cell + ")");
      g.phi(t1, s2) = p.coefficient(target);
    }

  if (exhaustive)
    for (std::uint32_t s1 = 0; s1 < m; ++s1)
      for (std::uint32_t t2 = 0; t2 < m; ++t2) {
        if (s1 == 0 && t2 == 0) continue;
        for (std::uint32_t t1 = 0; t1 < m; ++t1)
          for (std::uint32_t s2 = 0; s2 < m; ++s2) {
            Element expected(d.field());
            expected.add({cell, s1, t2}, g.phi(t1, s2));
            if (!(product(s1, t1, s2, t2) == expected))
              throw InconsistencyError("Gram coefficient depends on the probe pair",
                                       probe(s1, t1, s2, t2) + " disagrees with " + probe(0, t1, s2, 0));
          }
      }
  return g;
}

IrreducibleReport irreducible_report(const CellDatum& d, const Label& cell) {
  const GramForm g = gram(d, cell);
  IrreducibleReport r;
  r.cell = cell;
  r.dim_cell = g.phi.rows();
  r.dim_simple = rank(g.phi);
  r.radical = left_nullspace(g.phi);
  r.in_lambda0 = !g.phi.is_zero();
  return r;
}

bool submodule_check(const Module& m, const std::vector<Vector>& vs) {
  for (const auto& v : vs)
    if (v.size() != m.dim) throw DimensionMismatch("vector length differs from module dimension");
  const std::size_t base = vectors_rank(m.field, vs, m.dim);
  for (const auto& a : m.action) {
    std::vector<Vector> extended = vs;
    for (const auto& v : vs) extended.push_back(a * v);
    if (vectors_rank(m.field, extended, m.dim) != base) return false;
  }
  return true;
}

Module quotient_module(const Module& m, const std::vector<Vector>& sub) {
  Matrix rows(m.field, sub.size(), m.dim);
  for (std::size_t i = 0; i < sub.size(); ++i) {
    if (sub[i].size() != m.dim) throw DimensionMismatch("vector length differs from module dimension");
    for (std::size_t j = 0; j < m.dim; ++j) rows(i, j) = sub[i][j];
  }
  const auto ech = row_reduce(rows);
  const std::size_t k = ech.pivot_columns.size();
  std::vector<bool> pivot(m.dim, false);
  for (auto c : ech.pivot_columns) pivot[c] = true;

  // Columns of `change`: a basis of the submodule, then complementary unit vectors.
  Matrix change(m.field, m.dim, m.dim);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < m.dim; ++j) change(j, i) = ech.reduced(i, j);
  std::size_t col = k;
  for (std::size_t j = 0; j < m.dim; ++j)
    if (!pivot[j]) change(j, col++) = Scalar::one(m.field);
  const Matrix back = inverse(change);

  Module q{m.field, m.dim - k, m.algebra_basis, {}};
  for (const auto& a : m.action) {
    const Matrix conj = back * a * change;
    Matrix block(m.field, q.dim, q.dim);
    for (std::size_t i = 0; i < q.dim; ++i)
      for (std::size_t j = 0; j < q.dim; ++j) block(i, j) = conj(k + i, k + j);
    q.action.push_back(std::move(block));
  }
  return q;
}

Module simple_module(const CellModule& w, const IrreducibleReport& report) {
  return quotient_module(w.module, report.radical);
}

bool absolutely_irreducible(const Module& m) {
  if (m.dim == 0) throw ZeroModule("absolute irreducibility of the zero module is undefined");
  return span_dimension(m.action, m.dim) == m.dim * m.dim;
}

std::vector<Label> Classification::lambda0() const {
  std::vector<Label> out;
  for (const auto& r : rows)
    if (r.in_lambda0) out.push_back(r.cell);
  return out;
}

namespace {

ClassificationRow classify_cell(const CellDatumPtr& d, const Label& cell, const ClassifyOptions& options) {
  const auto report = irreducible_report(*d, cell);
  ClassificationRow row{cell, report.dim_cell, report.dim_simple, report.in_lambda0, false, {}};
  if (!report.in_lambda0) return row;
  const auto w = cell_module(d, cell);
  const auto l = simple_module(w, report);
  for (const auto& a : l.action) row.fingerprint.push_back(a.trace());
  if (options.burnside) row.absolutely_irreducible = absolutely_irreducible(l);
  return row;
}

}  // namespace

Classification classify(const CellDatumPtr& d, const ClassifyOptions& options) {
  Classification out;
  out.datum = d->name();
  const auto cells = d->cells();
  out.rows.resize(cells.size());
  if (options.jobs <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) out.rows[i] = classify_cell(d, cells[i], options);
  } else {
    std::vector<std::future<ClassificationRow>> futures;
    for (const auto& cell : cells)
      futures.push_back(std::async(std::launch::async, classify_cell, d, cell, options));
    for (std::size_t i = 0; i < cells.size(); ++i) out.rows[i] = futures[i].get();
  }
  for (std::size_t i = 0; i < out.rows.size(); ++i)
    for (std::size_t j = i + 1; j < out.rows.size(); ++j) {
      const auto& a = out.rows[i];
      const auto& b = out.rows[j];
      if (a.in_lambda0 && b.in_lambda0 && a.dim_simple == b.dim_simple && a.fingerprint == b.fingerprint)
        out.warnings.push_back("L(" + a.cell + ") and L(" + b.cell +
                               ") share a dimension-and-trace fingerprint; non-isomorphism not certified");
    }
  return out;
}

}  // namespace procell
