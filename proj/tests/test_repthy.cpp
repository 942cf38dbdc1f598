#include "doctest.h"
#include "test_support.hpp"

#include "procell/error.hpp"
#include "procell/instances.hpp"
#include "procell/repthy.hpp"
#include "procell/tableaux.hpp"

#include <map>

using namespace procell;

namespace {

const Field Q = Field::rationals();

CellDatumPtr poly_trunc(unsigned k) {
  const auto p = poly_datum(Q);
  return truncate(p, coideal_generate(p->poset_ptr(), {std::to_string(k)}));
}

CellDatumPtr tl(int n, long long delta) { return tl_datum(n, Scalar(Q, delta)); }

Vector coords(const CellDatum& d, const std::vector<BasisIndex>& basis, const Element& x) {
  Vector v;
  for (const auto& b : basis) v.push_back(x.coefficient(b));
  return v;
}

struct RadicalOracle {
  std::size_t dim_radical = 0;
  std::size_t simples = 0;  ///< dim Z(A/J)
};

// In characteristic zero J(A) = {x : Tr(L_{xy}) = 0 for all y}; with split
// simples the number of simples is dim Z(A/J) and sum (dim L)^2 = dim A - dim J.
RadicalOracle radical_oracle(const CellDatum& d) {
  const auto basis = d.basis();
  const std::size_t n = basis.size();
  std::vector<Scalar> trace_of(n, Scalar::zero(Q));
  for (std::size_t m = 0; m < n; ++m)
    for (std::size_t k = 0; k < n; ++k) trace_of[m] += d.multiply_basis(basis[m], basis[k]).coefficient(basis[k]);

  std::vector<std::vector<Element>> prod(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) prod[i].push_back(d.multiply_basis(basis[i], basis[j]));

  Matrix t(Q, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) t(i, j) += prod[i][j].coefficient(basis[m]) * trace_of[m];
  const std::size_t dim_j = n - rank(t);

  // x in V iff [x, b_i] in J for all i, i.e. T * ad(b_i) x = 0.
  Matrix big(Q, n * n, n);
  for (std::size_t i = 0; i < n; ++i) {
    Matrix ad(Q, n, n);
    for (std::size_t k = 0; k < n; ++k) {
      const Vector col = coords(d, basis, prod[k][i] - prod[i][k]);
      for (std::size_t r = 0; r < n; ++r) ad(r, k) = col[r];
    }
    const Matrix block = t * ad;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) big(i * n + r, c) = block(r, c);
  }
  return {dim_j, nullspace(big).size() - dim_j};
}

}  // namespace

TEST_CASE("cell module dimensions") {
  for (unsigned k = 0; k < 5; ++k) CHECK(cell_module(poly_datum(Q), std::to_string(k)).module.dim == 1);
  CHECK(cell_module(tl(3, 2), "1").module.dim == 2);
  CHECK(cell_module(tl(4, 2), "0").module.dim == 2);
  const auto w = cell_module(tl(3, 2), "1");
  CHECK(w.module.algebra_basis.size() == 5);
  CHECK(w.module.action_of({"3", 0, 0}) == Matrix::identity(Q, 2));
  CHECK_THROWS_AS(w.module.action_of({"9", 0, 0}), DatumMismatch);
}

TEST_CASE("gram examples") {
  const auto p = poly_trunc(6);
  CHECK(gram(*p, "0").phi == Matrix::from_rows(Q, {{Scalar(Q, 1)}}));
  for (int k = 1; k <= 6; ++k) CHECK(gram(*p, std::to_string(k)).phi.is_zero());
  CHECK(gram(*tl(2, 3), "0").phi == Matrix::from_rows(Q, {{Scalar(Q, 3)}}));
}

TEST_CASE("gram extraction flags a probe-dependent form") {
  const auto t = tl(3, 2);
  auto mult = [t](const BasisIndex& a, const BasisIndex& b) {
    Element p = t->multiply_basis(a, b);
    if (a == BasisIndex{"1", 1, 1} && b == BasisIndex{"1", 1, 1}) p.add({"1", 1, 1}, Scalar(Q, 5));
    return p;
  };
  const CellDatum bad("bad", Q, t->poset_ptr(), [t](const Label& c) { return t->tableaux(c); }, mult, t->unit());
  CHECK_THROWS_AS(gram(bad, "1"), InconsistencyError);
  CHECK_NOTHROW(gram(bad, "1", false));
}

TEST_CASE("irreducible reports") {
  const auto r1 = irreducible_report(*tl(3, 1), "1");
  CHECK(r1.dim_cell == 2);
  CHECK(r1.dim_simple == 1);
  CHECK(r1.radical.size() == 1);
  CHECK(r1.in_lambda0);
  for (const auto& cell : {"3", "1"}) {
    const auto r = irreducible_report(*tl(3, 2), cell);
    CHECK(r.radical.empty());
    CHECK(r.dim_simple == r.dim_cell);
  }
  const auto r0 = irreducible_report(*tl(2, 0), "0");
  CHECK_FALSE(r0.in_lambda0);
  CHECK(r0.dim_simple == 0);
}

TEST_CASE("submodule checks") {
  const auto d = tl(3, 1);
  const auto w = cell_module(d, "1");
  const auto r = irreducible_report(*d, "1");
  CHECK(submodule_check(w.module, r.radical));
  CHECK(submodule_check(w.module, {{Scalar(Q, 1), Scalar(Q, 0)}, {Scalar(Q, 0), Scalar(Q, 1)}}));

  const auto w2 = cell_module(tl(3, 2), "1");
  auto gen = procell_test::rng(30);
  std::uniform_int_distribution<long long> c(-5, 5);
  for (int i = 0; i < 20; ++i) {
    Vector v{Scalar(Q, c(gen)), Scalar(Q, c(gen))};
    if (v[0].is_zero() && v[1].is_zero()) continue;
    CHECK_FALSE(submodule_check(w2.module, {v}));
  }
}

TEST_CASE("Burnside criterion") {
  for (const auto& cell : {"3", "1"}) {
    const auto d = tl(3, 2);
    const auto w = cell_module(d, cell);
    CHECK(absolutely_irreducible(simple_module(w, irreducible_report(*d, cell))));
  }
  CHECK_FALSE(absolutely_irreducible(cell_module(tl(3, 1), "1").module));
  Module one{Q, 1, {{"a", 0, 0}}, {Matrix::from_rows(Q, {{Scalar(Q, 4)}})}};
  CHECK(absolutely_irreducible(one));
  Module zero{Q, 0, {}, {}};
  CHECK_THROWS_AS(absolutely_irreducible(zero), ZeroModule);
}

TEST_CASE("quotient by the radical has dimension rank phi") {
  const auto d = tl(4, 1);
  for (const auto& cell : d->cells()) {
    const auto w = cell_module(d, cell);
    const auto r = irreducible_report(*d, cell);
    const auto l = simple_module(w, r);
    CHECK(l.dim == r.dim_simple);
    for (std::size_t i = 0; i < w.module.algebra_basis.size(); ++i)
      for (std::size_t j = 0; j < w.module.algebra_basis.size(); ++j)
        if (l.dim > 0) {
          const Element ab = d->multiply_basis(w.module.algebra_basis[i], w.module.algebra_basis[j]);
          Matrix expected(Q, l.dim, l.dim);
          for (const auto& [b, c] : ab.terms()) {
            const Matrix& m = l.action_of(b);
            for (std::size_t x = 0; x < l.dim; ++x)
              for (std::size_t y = 0; y < l.dim; ++y) expected(x, y) += c * m(x, y);
          }
          CHECK(l.action[i] * l.action[j] == expected);
        }
  }
}

TEST_CASE("classify examples") {
  const auto c = classify(tl(3, 2));
  REQUIRE(c.rows.size() == 2);
  CHECK(c.lambda0().size() == 2);
  CHECK(c.rows[0].dim_simple == 1);
  CHECK(c.rows[1].dim_simple == 2);
  CHECK(c.rows[0].absolutely_irreducible);
  CHECK(c.rows[1].absolutely_irreducible);

  CHECK(classify(tl(2, 0)).lambda0() == std::vector<Label>{"2"});
  const auto p = classify(poly_trunc(5));
  CHECK(p.lambda0() == std::vector<Label>{"0"});
  CHECK(p.rows[0].dim_simple == 1);
}

TEST_CASE("Gram and module invariants on every instance") {
  std::vector<CellDatumPtr> data{poly_trunc(4)};
  for (int n = 2; n <= 5; ++n)
    for (long long delta : {0, 1, 2, 3}) data.push_back(tl(n, delta));
  const TableauTower tower(2);
  data.push_back(tower_toy_datum(tower, coideal_generate(tower.poset(), {"(3)"}), Scalar(Q, 2)));
  for (const auto& d : data) {
    for (const auto& cell : d->cells()) {
      const auto g = gram(*d, cell);
      CHECK(g.phi == g.phi.transpose());
      const auto r = irreducible_report(*d, cell);
      CHECK(r.dim_simple + r.radical.size() == d->tableaux(cell).size());
      const auto w = cell_module(d, cell);
      CHECK(submodule_check(w.module, r.radical));
      const auto& ab = w.module.algebra_basis;
      for (std::size_t i = 0; i < ab.size(); i += 2)
        for (std::size_t j = 0; j < ab.size(); j += 3) {
          const Element prod = d->multiply_basis(ab[i], ab[j]);
          CHECK(w.module.action[i] * w.module.action[j] == structure_constants(*d, prod, cell));
        }
    }
  }
}

TEST_CASE("classify agrees with a trace-form radical oracle") {
  std::vector<CellDatumPtr> data{poly_trunc(3), poly_trunc(6)};
  for (int n = 2; n <= 4; ++n)
    for (long long delta : {0, 1, 2, 3, -1}) data.push_back(tl(n, delta));
  for (const auto& d : data) {
    CAPTURE(d->name());
    const auto c = classify(d);
    const auto oracle = radical_oracle(*d);
    std::size_t sum_squares = 0, absolutely = 0;
    for (const auto& row : c.rows) {
      sum_squares += row.dim_simple * row.dim_simple;
      absolutely += row.in_lambda0 && row.absolutely_irreducible;
    }
    CHECK(c.lambda0().size() == oracle.simples);
    CHECK(absolutely == oracle.simples);
    CHECK(sum_squares == d->basis().size() - oracle.dim_radical);
  }
}

TEST_CASE("parallel classification matches sequential") {
  const auto d = tl(5, 1);
  const auto a = classify(d);
  const auto b = classify(d, ClassifyOptions{4, true});
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    CHECK(a.rows[i].cell == b.rows[i].cell);
    CHECK(a.rows[i].dim_simple == b.rows[i].dim_simple);
    CHECK(a.rows[i].fingerprint == b.rows[i].fingerprint);
  }
}

TEST_CASE("gram is insensitive to the truncation used") {
  const auto p = poly_datum(Q);
  for (unsigned k = 0; k <= 4; ++k)
    for (unsigned big = k; big <= 8; ++big) {
      const auto t = truncate(p, coideal_generate(p->poset_ptr(), {std::to_string(big)}));
      CHECK(gram(*t, std::to_string(k)).phi == gram(*working_datum(p, std::to_string(k)), std::to_string(k)).phi);
    }
}
