#include "procell/cell_datum.hpp"

#include "procell/error.hpp"

#include <algorithm>
#include <future>
#include <sstream>
#include <unordered_map>

namespace procell {

std::string BasisIndex::to_string() const {
  return cell + ":" + std::to_string(s) + ":" + std::to_string(t);
}

// -------------------------------------------------------------------- Element

Scalar Element::coefficient(const BasisIndex& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Scalar::zero(field_) : it->second;
}

Element& Element::add(const BasisIndex& b, const Scalar& c) {
  if (!(c.field() == field_)) throw FieldMismatch("coefficient field " + c.field().to_string() +
                                                   " does not match element field " + field_.to_string());
  if (c.is_zero()) return *this;
  auto [it, inserted] = terms_.try_emplace(b, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
  return *this;
}

Element& Element::operator+=(const Element& other) {
  if (!(field_ == other.field_)) throw FieldMismatch("element sum across fields");
  for (const auto& [b, c] : other.terms_) add(b, c);
  return *this;
}

Element& Element::operator-=(const Element& other) {
  if (!(field_ == other.field_)) throw FieldMismatch("element difference across fields");
  for (const auto& [b, c] : other.terms_) add(b, -c);
  return *this;
}

Element Element::scaled(const Scalar& c) const {
  Element out(field_);
  for (const auto& [b, x] : terms_) out.add(b, x * c);
  return out;
}

Element Element::filtered(const std::function<bool(const BasisIndex&)>& keep) const {
  Element out(field_);
  for (const auto& [b, x] : terms_)
    if (keep(b)) out.terms_.emplace(b, x);
  return out;
}

std::string Element::to_string() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (const auto& [b, c] : terms_) {
    if (!s.empty()) s += " + ";
    if (!c.is_one()) s += c.to_string() + "*";
    s += "C(" + b.to_string() + ")";
  }
  return s;
}

// ------------------------------------------------------------------ CellDatum

CellDatum::CellDatum(std::string name, Field field, PosetPtr poset, TableauxFn tableaux, MultiplyFn mult,
                     std::optional<Element> unit)
    : name_(std::move(name)),
      field_(field),
      poset_(std::move(poset)),
      tableaux_fn_(std::move(tableaux)),
      mult_(std::move(mult)),
      unit_(std::move(unit)) {
  if (unit_ && !(unit_->field() == field_)) throw FieldMismatch("unit expansion over a different field");
}

const std::vector<Label>& CellDatum::tableaux(const Label& cell) const {
  {
    std::lock_guard lock(cache_mutex_);
    auto it = tableaux_cache_.find(cell);
    if (it != tableaux_cache_.end()) return *it->second;
  }
  poset_->require(cell);
  auto computed = std::make_shared<const std::vector<Label>>(tableaux_fn_(cell));
  std::lock_guard lock(cache_mutex_);
  return *tableaux_cache_.try_emplace(cell, std::move(computed)).first->second;
}

std::vector<Label> CellDatum::cells() const { return poset_->elements(); }

std::vector<BasisIndex> CellDatum::basis() const { return basis_of(cells()); }

std::vector<BasisIndex> CellDatum::basis_of(const std::vector<Label>& cells) const {
  std::vector<BasisIndex> out;
  for (const auto& cell : cells) {
    const auto m = static_cast<std::uint32_t>(tableaux(cell).size());
    for (std::uint32_t s = 0; s < m; ++s)
      for (std::uint32_t t = 0; t < m; ++t) out.push_back({cell, s, t});
  }
  return out;
}

bool CellDatum::valid_index(const BasisIndex& b) const {
  if (!poset_->contains(b.cell)) return false;
  const auto m = tableaux(b.cell).size();
  return b.s < m && b.t < m;
}

void CellDatum::check_index(const BasisIndex& b) const {
  if (!valid_index(b)) throw DatumMismatch("basis index " + b.to_string() + " does not belong to datum " + name_);
}

Element CellDatum::basis_element(const BasisIndex& b) const {
  check_index(b);
  return Element::basis(field_, b);
}

Element CellDatum::multiply_basis(const BasisIndex& a, const BasisIndex& b) const { return mult_(a, b); }

Element CellDatum::multiply(const Element& x, const Element& y) const {
  if (!(x.field() == field_) || !(y.field() == field_))
    throw FieldMismatch("multiply: operands must lie over " + field_.to_string());
  for (const auto& [b, c] : x.terms()) check_index(b);
  for (const auto& [b, c] : y.terms()) check_index(b);
  Element out(field_);
  for (const auto& [a, ca] : x.terms())
    for (const auto& [b, cb] : y.terms()) {
      const Scalar coeff = ca * cb;
      const Element p = mult_(a, b);
      for (const auto& [k, ck] : p.terms()) out.add(k, coeff * ck);
    }
  return out;
}

Element CellDatum::involution(const Element& x) const {
  Element out(x.field());
  for (const auto& [b, c] : x.terms()) out.add(b.transposed(), c);
  return out;
}

const Element& CellDatum::require_unit() const {
  if (!unit_) throw MissingUnit("datum " + name_ + " carries no unit expansion");
  return *unit_;
}

CellDatumPtr truncate(const CellDatumPtr& d, const Coideal& p) {
  auto poset = FinitePoset::restrict(d->poset(), p.members());
  auto keep = [p](const BasisIndex& b) { return p.contains(b.cell); };
  std::optional<Element> unit;
  if (d->unit()) unit = d->unit()->filtered(keep);
  return std::make_shared<CellDatum>(
      d->name() + "/" + p.to_string(), d->field(), std::move(poset),
      [d](const Label& cell) { return d->tableaux(cell); },
      [d, keep](const BasisIndex& a, const BasisIndex& b) { return d->multiply_basis(a, b).filtered(keep); },
      std::move(unit));
}

Element reduce_mod_lt(const CellDatum& d, const Element& x, const Label& cell) {
  d.poset().require(cell);
  const Poset& poset = d.poset();
  return x.filtered([&](const BasisIndex& b) { return !poset.less(b.cell, cell); });
}

// --------------------------------------------------------------- verification

bool AxiomReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const AxiomCheck& c) { return c.passed; });
}

const AxiomCheck* AxiomReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

namespace {

/// Products of all basis pairs, precomputed once.
class ProductTable {
 public:
  ProductTable(const CellDatum& d, std::vector<BasisIndex> basis) : d_(d), basis_(std::move(basis)) {
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i], i);
    products_.resize(basis_.size() * basis_.size());
  }

  const std::vector<BasisIndex>& basis() const { return basis_; }
  std::size_t size() const { return basis_.size(); }
  const Element& product(std::size_t i, std::size_t j) const { return products_[i * basis_.size() + j]; }
  std::optional<std::size_t> index(const BasisIndex& b) const {
    auto it = index_.find(b);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  /// Fills the table; returns a witness for the first malformed product.
  std::optional<std::string> fill() {
    for (std::size_t i = 0; i < basis_.size(); ++i)
      for (std::size_t j = 0; j < basis_.size(); ++j) {
        Element p = d_.multiply_basis(basis_[i], basis_[j]);
        if (!(p.field() == d_.field()))
          return "product " + basis_[i].to_string() + " * " + basis_[j].to_string() + " lies over " +
                 p.field().to_string();
        for (const auto& [k, c] : p.terms())
          if (!index_.count(k))
            return "product " + basis_[i].to_string() + " * " + basis_[j].to_string() + " has unknown term " +
                   k.to_string();
        products_[i * basis_.size() + j] = std::move(p);
      }
    return std::nullopt;
  }

  Element times_basis(const Element& x, std::size_t j) const {
    Element out(d_.field());
    for (const auto& [b, c] : x.terms())
      for (const auto& [k, ck] : product(*index(b), j).terms()) out.add(k, c * ck);
    return out;
  }

  Element basis_times(std::size_t i, const Element& x) const {
    Element out(d_.field());
    for (const auto& [b, c] : x.terms())
      for (const auto& [k, ck] : product(i, *index(b)).terms()) out.add(k, c * ck);
    return out;
  }

  Element multiply(const Element& x, const Element& y) const {
    Element out(d_.field());
    for (const auto& [b, c] : y.terms()) out += times_basis(x, *index(b)).scaled(c);
    return out;
  }

 private:
  struct Hash {
    std::size_t operator()(const BasisIndex& b) const {
      return std::hash<std::string>()(b.cell) ^ (std::size_t{b.s} * 0x9e3779b97f4a7c15ULL) ^ (std::size_t{b.t} << 20);
    }
  };
  const CellDatum& d_;
  std::vector<BasisIndex> basis_;
  std::unordered_map<BasisIndex, std::size_t, Hash> index_;
  std::vector<Element> products_;
};

std::optional<std::string> check_basis(const CellDatum& d, const std::vector<Label>& cells) {
  for (const auto& cell : cells) {
    const auto& m = d.tableaux(cell);
    if (m.empty()) return "M(" + cell + ") is empty";
    std::vector<Label> sorted = m;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      return "M(" + cell + ") lists a tableau twice";
  }
  return std::nullopt;
}

std::optional<std::string> check_associativity(const ProductTable& table) {
  const std::size_t n = table.size();
  const auto& basis = table.basis();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Element& ij = table.product(i, j);
      for (std::size_t k = 0; k < n; ++k) {
        if (!(table.times_basis(ij, k) == table.basis_times(i, table.product(j, k))))
          return "(ab)c != a(bc) for a=" + basis[i].to_string() + " b=" + basis[j].to_string() +
                 " c=" + basis[k].to_string();
      }
    }
  return std::nullopt;
}

std::optional<std::string> check_unit(const CellDatum& d, const ProductTable& table) {
  const Element& u = *d.unit();
  for (const auto& [b, c] : u.terms())
    if (!table.index(b)) return "unit expansion uses unknown index " + b.to_string();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const Element b = Element::basis(d.field(), table.basis()[i]);
    if (!(table.times_basis(u, i) == b)) return "unit * " + table.basis()[i].to_string() + " != itself";
    if (!(table.basis_times(i, u) == b)) return table.basis()[i].to_string() + " * unit != itself";
  }
  return std::nullopt;
}

std::optional<std::string> check_involution(const CellDatum& d, const ProductTable& table) {
  const auto& basis = table.basis();
  for (const auto& b : basis) {
    if (!table.index(b.transposed())) return "transpose of " + b.to_string() + " is not a basis index";
    if (!(b.transposed().transposed() == b)) return "involution is not of order 2 at " + b.to_string();
  }
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) {
      const Element lhs = d.involution(table.product(i, j));
      const Element rhs = table.product(*table.index(basis[j].transposed()), *table.index(basis[i].transposed()));
      if (!(lhs == rhs))
        return "(ab)* != b* a* for a=" + basis[i].to_string() + " b=" + basis[j].to_string();
    }
  return std::nullopt;
}

/// Axiom 3 for one cell, with every basis element of the algebra acting.
std::optional<std::string> check_cell(const CellDatum& d, const ProductTable& table, const Label& cell) {
  const auto m = static_cast<std::uint32_t>(d.tableaux(cell).size());
  const Poset& poset = d.poset();
  for (std::size_t i = 0; i < table.size(); ++i) {
    const BasisIndex& a = table.basis()[i];
    for (std::uint32_t s = 0; s < m; ++s) {
      std::optional<std::vector<Scalar>> reference;
      for (std::uint32_t t = 0; t < m; ++t) {
        const Element& p = table.product(i, *table.index({cell, s, t}));
        std::vector<Scalar> column(m, Scalar::zero(d.field()));
        for (const auto& [k, c] : p.terms()) {
          if (poset.less(k.cell, cell)) continue;
          if (k.cell != cell || k.t != t)
            return "a=" + a.to_string() + " times C(" + BasisIndex{cell, s, t}.to_string() + ") has term " +
                   k.to_string() + " outside row T=" + std::to_string(t) + " of cell " + cell + " mod A(<" + cell + ")";
          column[k.s] = c;
        }
        if (!reference)
          reference = std::move(column);
        else if (*reference != column)
          return "r_a(S',S) depends on T: a=" + a.to_string() + " cell=" + cell + " S=" + std::to_string(s) +
                 " T=0 vs T=" + std::to_string(t);
      }
    }
  }
  return std::nullopt;
}

}  // namespace

AxiomReport verify_cell_datum(const CellDatum& d, const VerifyOptions& options) {
  AxiomReport report;
  report.datum = d.name();
  const auto cells = d.cells();

  AxiomCheck basis_check{"basis", true, ""};
  if (auto w = check_basis(d, cells)) basis_check = {"basis", false, *w};
  ProductTable table(d, d.basis_of(cells));
  report.dimension = table.size();
  if (basis_check.passed)
    if (auto w = table.fill()) basis_check = {"basis", false, *w};
  report.checks.push_back(basis_check);

  const std::string skipped = "not checked: basis axiom failed";
  if (!basis_check.passed) {
    for (const char* name : {"associativity", "unit", "involution", "cell"})
      report.checks.push_back({name, false, skipped});
    return report;
  }

  if (options.check_associativity) {
    auto w = check_associativity(table);
    report.checks.push_back({"associativity", !w, w.value_or("")});
  }
  if (d.unit()) {
    auto w = check_unit(d, table);
    report.checks.push_back({"unit", !w, w.value_or("")});
  }
  {
    auto w = check_involution(d, table);
    report.checks.push_back({"involution", !w, w.value_or("")});
  }

  std::vector<std::optional<std::string>> per_cell(cells.size());
  if (options.jobs <= 1 || cells.size() <= 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) per_cell[c] = check_cell(d, table, cells[c]);
  } else {
    std::vector<std::future<void>> workers;
    const std::size_t jobs = std::min<std::size_t>(options.jobs, cells.size());
    for (std::size_t w = 0; w < jobs; ++w)
      workers.push_back(std::async(std::launch::async, [&, w] {
        for (std::size_t c = w; c < cells.size(); c += jobs) per_cell[c] = check_cell(d, table, cells[c]);
      }));
    for (auto& f : workers) f.get();
  }
  AxiomCheck cell_check{"cell", true, ""};
  for (const auto& w : per_cell)
    if (w) {
      cell_check = {"cell", false, *w};
      break;
    }
  report.checks.push_back(cell_check);
  return report;
}

Matrix structure_constants(const CellDatum& d, const Element& a, const Label& cell) {
  const auto& tableaux = d.tableaux(cell);
  const auto m = static_cast<std::uint32_t>(tableaux.size());
  Matrix r(d.field(), m, m);
  for (std::uint32_t t = 0; t < m; ++t) {
    for (std::uint32_t s = 0; s < m; ++s) {
      const Element p = reduce_mod_lt(d, d.multiply(a, d.basis_element({cell, s, t})), cell);
      std::vector<Scalar> column(m, Scalar::zero(d.field()));
      for (const auto& [k, c] : p.terms()) {
        if (k.cell != cell || k.t != t)
          throw InconsistencyError("axiom 3 violated", "a*C(" + BasisIndex{cell, s, t}.to_string() + ") has term " +
                                                           k.to_string() + " outside row T=" + std::to_string(t));
        column[k.s] = c;
      }
      for (std::uint32_t sp = 0; sp < m; ++sp) {
        if (t == 0) {
          r(sp, s) = column[sp];
        } else if (!(r(sp, s) == column[sp])) {
          throw InconsistencyError("structure constants depend on T",
                                   "cell " + cell + " S=" + std::to_string(s) + " T=" + std::to_string(t));
        }
      }
    }
  }
  return r;
}

}  // namespace procell
