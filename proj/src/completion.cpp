#include "procell/completion.hpp"

#include "procell/error.hpp"

#include <algorithm>

namespace procell {

// ---------------------------------------------------------- QuotientAlgebra

QuotientAlgebra::QuotientAlgebra(CellDatumPtr parent, Coideal p) : parent_(std::move(parent)), coideal_(std::move(p)) {
  const std::set<Label> members(coideal_.members().begin(), coideal_.members().end());
  if (!is_coideal(parent_->poset(), members))
    throw NotACoideal(coideal_.to_string() + " is not upward closed in " + parent_->poset().name());
  if (!coideal_.parent()) coideal_ = Coideal(parent_->poset_ptr(), {});
  datum_ = truncate(parent_, coideal_);
}

Element QuotientAlgebra::project(const Element& x) const {
  return x.filtered([this](const BasisIndex& b) { return coideal_.contains(b.cell); });
}

QuotientPtr quotient(const CellDatumPtr& d, const Coideal& p) { return std::make_shared<const QuotientAlgebra>(d, p); }

// ------------------------------------------------------------ ConnectingMap

ConnectingMap::ConnectingMap(QuotientPtr source, QuotientPtr target) : source_(std::move(source)), target_(std::move(target)) {
  if (source_->parent() != target_->parent())
    throw DatumMismatch("connecting map between quotients of different algebras");
  if (!source_->coideal().includes(target_->coideal()))
    throw NotNested(source_->coideal().to_string() + " does not contain " + target_->coideal().to_string());
}

Element ConnectingMap::apply(const Element& x) const {
  for (const auto& [b, c] : x.terms()) source_->datum()->check_index(b);
  return target_->project(x);
}

std::optional<std::string> ConnectingMap::homomorphism_violation() const {
  const auto& src = *source_->datum();
  const auto& dst = *target_->datum();
  const auto basis = src.basis();
  for (const auto& a : basis)
    for (const auto& b : basis) {
      const Element lhs = apply(src.multiply_basis(a, b));
      const Element rhs = dst.multiply(apply(src.basis_element(a)), apply(src.basis_element(b)));
      if (!(lhs == rhs)) return "psi(ab) != psi(a)psi(b) for a=" + a.to_string() + " b=" + b.to_string();
    }
  return std::nullopt;
}

ConnectingMap connecting_map(const QuotientPtr& q1, const QuotientPtr& q2) {
  ConnectingMap psi(q1, q2);
  if (auto w = psi.homomorphism_violation()) throw InconsistencyError("connecting map is not multiplicative", *w);
  return psi;
}

// --------------------------------------------------------------- Completion

std::shared_ptr<const Completion> Completion::create(CellDatumPtr parent, std::size_t sample, std::size_t cap) {
  if (!parent->is_finite()) {
    const auto report = profinite_check(parent->poset(), parent->poset().enumerate(sample), cap);
    for (const auto& e : report.entries)
      if (!e.finite)
        throw CapExceeded("datum " + parent->name() + " is not of profinite type: <" + e.element + "> exceeds " +
                          std::to_string(cap) + " elements");
  }
  return std::shared_ptr<const Completion>(new Completion(std::move(parent)));
}

Coideal Completion::coideal(const std::vector<Label>& gens) const { return coideal_generate(parent_->poset_ptr(), gens); }

QuotientPtr Completion::quotient(const Coideal& p) const {
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(p.members());
    if (it != cache_.end()) return it->second;
  }
  auto q = procell::quotient(parent_, p);
  std::lock_guard lock(mutex_);
  return cache_.try_emplace(p.members(), std::move(q)).first->second;
}

// -------------------------------------------------------- CompletionElement

CompletionElement::CompletionElement(CompletionPtr completion, CoefficientOracle oracle, std::string description)
    : completion_(std::move(completion)),
      oracle_(std::make_shared<const CoefficientOracle>(std::move(oracle))),
      description_(std::move(description)) {}

CompletionElement CompletionElement::zero(const CompletionPtr& c) {
  const Field f = c->field();
  return {c, [f](const BasisIndex&) { return Scalar::zero(f); }, "0"};
}

CompletionElement CompletionElement::embed(const CompletionPtr& c, const Element& x, std::string description) {
  for (const auto& [b, coeff] : x.terms()) c->parent()->check_index(b);
  if (!(x.field() == c->field())) throw FieldMismatch("embedding an element over another field");
  if (description.empty()) description = x.to_string();
  return {c, [x](const BasisIndex& b) { return x.coefficient(b); }, std::move(description)};
}

Scalar CompletionElement::coefficient(const BasisIndex& b) const { return (*oracle_)(b); }

Element project(const CompletionElement& e, const Coideal& p) {
  const CellDatum& parent = *e.completion()->parent();
  Element out(parent.field());
  for (const auto& b : parent.basis_of(p.members())) out.add(b, e.coefficient(b));
  return out;
}

namespace {

void require_same_completion(const CompletionElement& a, const CompletionElement& b) {
  if (a.completion() != b.completion()) throw DatumMismatch("completion elements over different algebras");
}

struct ProductState {
  ProductState(CompletionElement l, CompletionElement r) : left(std::move(l)), right(std::move(r)) {}
  CompletionElement left;
  CompletionElement right;
  std::mutex mutex;
  std::map<Label, Element> by_cell;  // product computed in A_<cell>
};

}  // namespace

CompletionElement complete_mul(const CompletionElement& a, const CompletionElement& b) {
  require_same_completion(a, b);
  auto state = std::make_shared<ProductState>(a, b);
  auto oracle = [state](const BasisIndex& idx) {
    {
      std::lock_guard lock(state->mutex);
      auto it = state->by_cell.find(idx.cell);
      if (it != state->by_cell.end()) return it->second.coefficient(idx);
    }
    const auto& c = state->left.completion();
    const auto q = c->principal(idx.cell);
    const Element product =
        q->datum()->multiply(project(state->left, q->coideal()), project(state->right, q->coideal()));
    std::lock_guard lock(state->mutex);
    return state->by_cell.try_emplace(idx.cell, product).first->second.coefficient(idx);
  };
  return {a.completion(), std::move(oracle), "(" + a.description() + ")*(" + b.description() + ")"};
}

CompletionElement complete_add(const CompletionElement& a, const CompletionElement& b) {
  require_same_completion(a, b);
  return {a.completion(), [a, b](const BasisIndex& i) { return a.coefficient(i) + b.coefficient(i); },
          a.description() + " + " + b.description()};
}

CompletionElement complete_sub(const CompletionElement& a, const CompletionElement& b) {
  require_same_completion(a, b);
  return {a.completion(), [a, b](const BasisIndex& i) { return a.coefficient(i) - b.coefficient(i); },
          a.description() + " - (" + b.description() + ")"};
}

CompletionElement complete_scale(const CompletionElement& a, const Scalar& c) {
  return {a.completion(), [a, c](const BasisIndex& i) { return a.coefficient(i) * c; },
          c.to_string() + "*(" + a.description() + ")"};
}

CompletionElement hat_involution(const CompletionElement& e) {
  return {e.completion(), [e](const BasisIndex& i) { return e.coefficient(i.transposed()); },
          "(" + e.description() + ")^*"};
}

CompletionElement truncation(const CompletionElement& e, const Coideal& p) {
  return CompletionElement::embed(e.completion(), project(e, p), "trunc_" + p.to_string() + "(" + e.description() + ")");
}

bool in_ideal(const CompletionElement& e, const Coideal& p) { return project(e, p).is_zero(); }

bool equal_mod(const CompletionElement& a, const CompletionElement& b, const Coideal& p) {
  require_same_completion(a, b);
  return project(a, p) == project(b, p);
}

std::optional<Coideal> separation_witness(const CompletionPtr& c, const Element& x) {
  const auto e = CompletionElement::embed(c, x);
  for (const auto& [b, coeff] : x.terms()) {
    Coideal p = c->coideal({b.cell});
    if (!in_ideal(e, p)) return p;
  }
  return std::nullopt;
}

// -------------------------------------------------------- GeneratorRegistry

GeneratorRegistry::GeneratorRegistry() {
  add("zero", [](const CompletionPtr& c) { return CompletionElement::zero(c); });
  auto unit = [](const CompletionPtr& c) { return CompletionElement::embed(c, c->parent()->require_unit(), "1"); };
  add("unit", unit);
  add("delta", unit);
  add("geometric", [](const CompletionPtr& c) {
    const Field f = c->field();
    return CompletionElement(c, [f](const BasisIndex&) { return Scalar::one(f); }, "geometric");
  });
}

void GeneratorRegistry::add(const std::string& name, GeneratorFactory factory) { factories_[name] = std::move(factory); }

CompletionElement GeneratorRegistry::make(const std::string& name, const CompletionPtr& c) const {
  auto it = factories_.find(name);
  if (it == factories_.end()) throw UnknownGenerator("unknown generator '" + name + "'");
  return it->second(c);
}

std::vector<std::string> GeneratorRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, f] : factories_) out.push_back(name);
  return out;
}

// ------------------------------------------------------------ smooth modules

bool smooth_check(const CellDatum& parent, const SmoothModuleSpec& spec, const SmoothOptions& options) {
  if (spec.dim == 0) return true;
  if (!spec.tail_promise)
    throw UndecidablePromise("smoothness of a nonzero module needs a tail promise naming a finite coideal");
  const Coideal& p = *spec.tail_promise;
  std::vector<Label> outside;
  const auto candidates = parent.is_finite() ? parent.cells() : parent.poset().enumerate(p.size() + options.halo);
  for (const auto& cell : candidates)
    if (!p.contains(cell)) outside.push_back(cell);
  for (const auto& b : parent.basis_of(outside)) {
    const Matrix a = spec.action(b);
    if (a.rows() != spec.dim || a.cols() != spec.dim)
      throw DimensionMismatch("action of " + b.to_string() + " has the wrong size");
    if (!a.is_zero()) return false;
  }
  return true;
}

namespace {

SmoothModuleSpec pullback(const QuotientPtr& q, std::shared_ptr<const Module> m) {
  SmoothModuleSpec spec;
  spec.field = m->field;
  spec.dim = m->dim;
  spec.tail_promise = q->coideal();
  spec.action = [q, m](const BasisIndex& b) {
    if (!q->coideal().contains(b.cell)) return Matrix(m->field, m->dim, m->dim);
    return m->action_of(b);
  };
  return spec;
}

}  // namespace

SmoothModuleSpec pullback_cell_module(const CompletionPtr& c, const Label& cell) {
  const auto q = c->principal(cell);
  return pullback(q, std::make_shared<const Module>(cell_module(q->datum(), cell).module));
}

SmoothModuleSpec pullback_simple_module(const CompletionPtr& c, const Label& cell) {
  const auto q = c->principal(cell);
  const auto w = cell_module(q->datum(), cell);
  const auto report = irreducible_report(*q->datum(), cell);
  return pullback(q, std::make_shared<const Module>(simple_module(w, report)));
}

SmoothClassification smooth_classify(const CompletionPtr& c, const Coideal& bound) {
  SmoothClassification out;
  const auto qb = c->quotient(bound);
  out.bound = qb->coideal();
  for (const auto& cell : out.bound.members()) {
    const auto q = c->principal(cell);
    const auto r = irreducible_report(*q->datum(), cell);
    if (r.in_lambda0) out.rows.push_back({cell, r.dim_simple});
  }
  const auto finite = classify(qb->datum());
  out.finite_lambda0 = finite.lambda0();
  out.agrees = out.rows.size() == out.finite_lambda0.size();
  for (std::size_t i = 0; out.agrees && i < out.rows.size(); ++i) {
    const auto& row = *std::find_if(finite.rows.begin(), finite.rows.end(),
                                    [&](const ClassificationRow& r) { return r.cell == out.finite_lambda0[i]; });
    out.agrees = out.rows[i].cell == out.finite_lambda0[i] && out.rows[i].dim_simple == row.dim_simple;
  }
  return out;
}

}  // namespace procell
