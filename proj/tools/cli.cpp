#include "cli.hpp"

#include "procell/cell_datum.hpp"
#include "procell/completion.hpp"
#include "procell/datum_io.hpp"
#include "procell/error.hpp"
#include "procell/instances.hpp"
#include "procell/repthy.hpp"
#include "procell/tableaux.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>
#include <sstream>

namespace procell::cli {
namespace {

using nlohmann::json;

class UsageError : public Error {
 public:
  using Error::Error;
};

constexpr unsigned long long kDefaultSeed = 20240601;

struct Options {
  std::string builtin;
  std::string file;
  std::string field = "q";
  int n = 3;
  std::string delta = "2";
  std::string truncate;
  std::vector<std::string> bound;
  std::vector<std::string> gens;
  bool gens_given = false;
  std::vector<std::string> cells;
  std::vector<std::string> elements;
  std::string output;
  bool json = false;
  unsigned long long seed = kDefaultSeed;
  unsigned jobs = 1;
};

struct Source {
  CellDatumPtr datum;
  std::vector<std::string> issues;
};

// ------------------------------------------------------------------ helpers

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t i = 0; i < header.size(); ++i) width[i] = header[i].size();
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size() && i < width.size(); ++i) width[i] = std::max(width[i], r[i].size());
  auto line = [&](const std::vector<std::string>& r) {
    std::string s;
    for (std::size_t i = 0; i < r.size(); ++i) {
      s += r[i];
      if (i + 1 < r.size()) s += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << "  " << s << '\n';
  };
  line(header);
  std::vector<std::string> rule;
  for (auto w : width) rule.push_back(std::string(w, '-'));
  line(rule);
  for (const auto& r : rows) line(r);
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
  return s;
}

json base_report(const std::string& command, const Options& o) {
  return json{{"schema", 1}, {"command", command}, {"seed", o.seed}};
}

void emit_json(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

Field field_of(const Options& o) {
  try {
    return Field::parse(o.field);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("bad --field: ") + e.what());
  }
}

Source resolve(const Options& o, bool need_finite) {
  if (!o.file.empty() && !o.builtin.empty()) throw UsageError("pass either --file or --builtin, not both");
  Source src;
  if (!o.file.empty()) {
    auto loaded = load_datum_file(o.file);
    src.datum = loaded.datum;
    src.issues = std::move(loaded.table_issues);
  } else if (o.builtin == "poly") {
    src.datum = poly_datum(field_of(o));
  } else if (o.builtin == "tl") {
    const Field f = field_of(o);
    src.datum = tl_datum(o.n, Scalar::parse(f, o.delta));
  } else if (o.builtin == "tower") {
    throw UsageError("the tower builtin carries label maps only; use it with the smooth command");
  } else if (o.builtin.empty()) {
    throw UsageError("no datum: pass --builtin {poly|tl|tower} or --file PATH");
  } else {
    throw UsageError("unknown builtin '" + o.builtin + "'");
  }
  if (!o.truncate.empty()) src.datum = truncate(src.datum, coideal_generate(src.datum->poset_ptr(), {o.truncate}));
  if (need_finite && !src.datum->is_finite())
    throw UsageError("datum " + src.datum->name() + " is infinite; pass --truncate LABEL");
  return src;
}

AxiomReport run_verify(const Source& src, const Options& o) {
  LoadedDatum loaded{src.datum, src.issues};
  return verify_loaded(loaded, VerifyOptions{o.jobs, true});
}

json report_json(const AxiomReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"witness", c.witness}});
  return {{"datum", r.datum}, {"dimension", r.dimension}, {"passed", r.all_passed()}, {"checks", checks}};
}

void print_report(std::ostream& out, const AxiomReport& r) {
  out << "datum: " << r.datum << " (dimension " << r.dimension << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& c : r.checks) rows.push_back({c.name, c.passed ? "pass" : "FAIL", c.witness});
  print_table(out, {"axiom", "status", "witness"}, rows);
  out << "result: " << (r.all_passed() ? "PASS" : "FAIL") << '\n';
}

// ----------------------------------------------------------------- commands

int cmd_verify(const Options& o, std::ostream& out) {
  const auto src = resolve(o, true);
  const auto r = run_verify(src, o);
  if (o.json) {
    auto j = base_report("verify", o);
    j["report"] = report_json(r);
    emit_json(out, j);
  } else {
    print_report(out, r);
  }
  return r.all_passed() ? kOk : kFailure;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const auto src = resolve(o, true);
  const auto r = run_verify(src, o);
  if (!r.all_passed()) {
    if (o.json) {
      auto j = base_report("classify", o);
      j["report"] = report_json(r);
      emit_json(out, j);
    } else {
      out << "datum fails verification; classification skipped\n";
      print_report(out, r);
    }
    return kFailure;
  }
  const auto c = classify(src.datum, ClassifyOptions{o.jobs, true});
  std::vector<std::string> dims;
  for (const auto& row : c.rows)
    if (row.in_lambda0) dims.push_back(std::to_string(row.dim_simple));
  if (o.json) {
    auto j = base_report("classify", o);
    j["datum"] = c.datum;
    json rows = json::array();
    for (const auto& row : c.rows)
      rows.push_back({{"cell", row.cell},
                      {"dim_cell", row.dim_cell},
                      {"dim_simple", row.dim_simple},
                      {"in_lambda0", row.in_lambda0},
                      {"absolutely_irreducible", row.absolutely_irreducible}});
    j["rows"] = rows;
    j["lambda0"] = c.lambda0();
    j["warnings"] = c.warnings;
    emit_json(out, j);
  } else {
    out << "datum: " << c.datum << '\n';
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : c.rows)
      rows.push_back({row.cell, std::to_string(row.dim_cell), std::to_string(row.dim_simple),
                      row.in_lambda0 ? "yes" : "no",
                      row.in_lambda0 ? (row.absolutely_irreducible ? "yes" : "no") : "-"});
    print_table(out, {"cell", "dim W", "dim L", "Lambda0", "abs. irreducible"}, rows);
    out << "Lambda0: {" << join(c.lambda0(), ", ") << "}\n";
    out << "dims L = (" << join(dims, ",") << ")\n";
    for (const auto& w : c.warnings) out << "warning: " << w << '\n';
  }
  return kOk;
}

int cmd_gram(const Options& o, std::ostream& out) {
  const auto src = resolve(o, true);
  std::vector<Label> cells = o.cells.empty() ? src.datum->cells() : o.cells;
  for (const auto& cell : cells) src.datum->poset().require(cell);
  json forms = json::array();
  for (const auto& cell : cells) {
    const auto g = gram(*src.datum, cell);
    const auto rk = rank(g.phi);
    if (o.json) {
      json m = json::array();
      for (std::size_t i = 0; i < g.phi.rows(); ++i) {
        json row = json::array();
        for (std::size_t k = 0; k < g.phi.cols(); ++k) row.push_back(g.phi(i, k).to_string());
        m.push_back(row);
      }
      forms.push_back({{"cell", cell}, {"tableaux", src.datum->tableaux(cell)}, {"phi", m}, {"rank", rk}});
    } else {
      out << "cell " << cell << ": rank " << rk << " of " << g.phi.rows() << '\n';
      const auto& labels = src.datum->tableaux(cell);
      std::vector<std::string> header{""};
      header.insert(header.end(), labels.begin(), labels.end());
      std::vector<std::vector<std::string>> rows;
      for (std::size_t i = 0; i < g.phi.rows(); ++i) {
        std::vector<std::string> row{labels[i]};
        for (std::size_t k = 0; k < g.phi.cols(); ++k) row.push_back(g.phi(i, k).to_string());
        rows.push_back(row);
      }
      print_table(out, header, rows);
    }
  }
  if (o.json) {
    auto j = base_report("gram", o);
    j["datum"] = src.datum->name();
    j["forms"] = forms;
    emit_json(out, j);
  }
  return kOk;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
}

int cmd_quotient(const Options& o, std::ostream& out) {
  if (!o.gens_given) throw UsageError("quotient needs --gens [LABEL...]");
  const auto src = resolve(o, false);
  if (o.gens.empty()) {
    if (o.json) {
      auto j = base_report("quotient", o);
      j["zero_algebra"] = true;
      j["dimension"] = 0;
      emit_json(out, j);
    } else {
      out << "empty generator set: the quotient by the empty coideal is the zero algebra (dimension 0)\n";
    }
    return kOk;
  }
  const auto p = coideal_generate(src.datum->poset_ptr(), o.gens);
  const QuotientAlgebra q(src.datum, p);
  const auto r = verify_cell_datum(*q.datum(), VerifyOptions{o.jobs, true});
  const json datum = export_datum(*q.datum());
  if (!o.output.empty()) write_file(o.output, datum.dump(2) + "\n");
  if (o.json) {
    auto j = base_report("quotient", o);
    j["coideal"] = p.members();
    j["dimension"] = q.dimension();
    j["report"] = report_json(r);
    j["datum"] = datum;
    emit_json(out, j);
  } else {
    out << "coideal: " << p.to_string() << '\n';
    out << "cells: " << p.size() << ", dimension: " << q.dimension() << '\n';
    print_report(out, r);
    if (!o.output.empty()) out << "datum written to " << o.output << '\n';
  }
  return r.all_passed() ? kOk : kFailure;
}

int cmd_smooth_tower(const Options& o, std::ostream& out) {
  if (o.bound.empty()) throw UsageError("smooth on the tower needs --bound PARTITION");
  const TableauTower tower(o.n);
  const auto& poset = *tower.poset();
  std::vector<Label> gens;
  for (const auto& b : o.bound) gens.push_back(poset.canonical_label(b));
  const auto p = coideal_generate(tower.poset(), gens);
  const auto profinite = profinite_check(poset, p.members(), kDefaultUpSetCap);

  CoherenceSummary total;
  std::vector<std::vector<std::string>> rows;
  json listing = json::array();
  for (const auto& w : p.members()) {
    const auto shape = parse_partition(w);
    const auto s = tower.coherence(shape);
    total.cells += s.cells;
    total.pairs += s.pairs;
    total.zero_cells += s.zero_cells;
    total.violations += s.violations;
    if (total.first_violation.empty()) total.first_violation = s.first_violation;
    const auto count = tower.tableaux(w).size();
    rows.push_back({w, std::to_string(partition_size(shape)), std::to_string(count)});
    listing.push_back({{"weight", w}, {"boxes", partition_size(shape)}, {"ssyt", count}});
  }
  if (o.json) {
    auto j = base_report("smooth", o);
    j["tower"] = {{"n", o.n}, {"poset", poset.name()}};
    j["coideal"] = listing;
    j["profinite"] = profinite.all_finite();
    j["coherence"] = {{"cells", total.cells},
                      {"pairs", total.pairs},
                      {"zero_cells", total.zero_cells},
                      {"violations", total.violations},
                      {"coherent", total.coherent()}};
    j["gram"] = nullptr;
    emit_json(out, j);
  } else {
    out << "tower: " << poset.name() << '\n';
    out << "coideal " << p.to_string() << " (" << p.size() << " weights)\n";
    print_table(out, {"weight", "boxes", "SSYT"}, rows);
    out << "principal coideals finite: " << (profinite.all_finite() ? "yes" : "no") << '\n';
    out << "column-removal coherence: " << total.cells << " cells, " << total.pairs << " pairs, " << total.zero_cells
        << " to zero, " << total.violations << " violations\n";
    if (!total.coherent()) out << "first violation: " << total.first_violation << '\n';
    out << "no Gram data: the tower ships label maps only, without structure constants\n";
  }
  return total.coherent() && profinite.all_finite() ? kOk : kFailure;
}

int cmd_smooth(const Options& o, std::ostream& out) {
  if (o.builtin == "tower") return cmd_smooth_tower(o, out);
  const auto src = resolve(o, false);
  const auto c = Completion::create(src.datum);
  std::vector<Label> gens = o.bound;
  if (gens.empty()) {
    if (!src.datum->is_finite()) throw UsageError("smooth on an infinite datum needs --bound LABEL");
    gens = src.datum->cells();
  }
  const auto s = smooth_classify(c, c->coideal(gens));
  std::vector<std::string> cells;
  for (const auto& r : s.rows) cells.push_back(r.cell);
  if (o.json) {
    auto j = base_report("smooth", o);
    j["datum"] = src.datum->name();
    j["bound"] = s.bound.members();
    json rows = json::array();
    for (const auto& r : s.rows) rows.push_back({{"cell", r.cell}, {"dim_simple", r.dim_simple}});
    j["simples"] = rows;
    j["finite_lambda0"] = s.finite_lambda0;
    j["agrees"] = s.agrees;
    emit_json(out, j);
  } else {
    out << "datum: " << src.datum->name() << '\n';
    out << "bound: " << s.bound.to_string() << '\n';
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : s.rows) rows.push_back({r.cell, std::to_string(r.dim_simple)});
    print_table(out, {"cell", "dim L^"}, rows);
    out << "smooth simples: {" << join(cells, ", ") << "}\n";
    out << "agrees with the finite quotient's Lambda0 {" << join(s.finite_lambda0, ", ")
        << "}: " << (s.agrees ? "yes" : "no") << '\n';
  }
  return s.agrees ? kOk : kFailure;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, s.find_last_not_of(" \t") - b + 1);
}

// "cell:s:t=c; cell:s:t=c" with the cell label possibly containing ':'.
Element parse_terms(const CellDatum& d, const std::string& spec) {
  Element e(d.field());
  std::stringstream in(spec);
  std::string term;
  while (std::getline(in, term, ';')) {
    term = trim(term);
    if (term.empty()) continue;
    const auto eq = term.find('=');
    const auto c2 = term.rfind(':', eq);
    const auto c1 = c2 == std::string::npos || c2 == 0 ? std::string::npos : term.rfind(':', c2 - 1);
    if (eq == std::string::npos || c1 == std::string::npos)
      throw UsageError("bad element term '" + term + "'; expected cell:s:t=coefficient");
    BasisIndex b;
    try {
      b.cell = term.substr(0, c1);
      b.s = static_cast<std::uint32_t>(std::stoul(term.substr(c1 + 1, c2 - c1 - 1)));
      b.t = static_cast<std::uint32_t>(std::stoul(term.substr(c2 + 1, eq - c2 - 1)));
    } catch (const std::logic_error&) {
      throw UsageError("bad basis index in '" + term + "'");
    }
    d.check_index(b);
    e.add(b, Scalar::parse(d.field(), trim(term.substr(eq + 1))));
  }
  return e;
}

CompletionElement parse_element(const CompletionPtr& c, const GeneratorRegistry& registry, const std::string& spec,
                                bool polynomial) {
  if (registry.contains(spec)) return registry.make(spec, c);
  if (spec.find('=') != std::string::npos) return CompletionElement::embed(c, parse_terms(*c->parent(), spec), spec);
  const bool identifier = !spec.empty() && std::isalpha(static_cast<unsigned char>(spec[0])) &&
                          std::all_of(spec.begin(), spec.end(), [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; });
  if (polynomial && (!identifier || spec == "x")) return CompletionElement::embed(c, parse_polynomial(c->field(), spec), spec);
  return registry.make(spec, c);
}

int cmd_complete_mul(const Options& o, std::ostream& out) {
  if (o.elements.size() != 2) throw UsageError("complete-mul needs exactly two elements");
  const auto src = resolve(o, false);
  const auto c = Completion::create(src.datum);
  std::vector<Label> gens = o.bound;
  if (gens.empty()) {
    if (!src.datum->is_finite()) throw UsageError("complete-mul on an infinite datum needs --bound LABEL");
    gens = src.datum->cells();
  }
  const auto p = c->coideal(gens);
  const GeneratorRegistry registry;
  const bool polynomial = o.builtin == "poly";
  const auto a = parse_element(c, registry, o.elements[0], polynomial);
  const auto b = parse_element(c, registry, o.elements[1], polynomial);
  const auto product = complete_mul(a, b);

  std::vector<std::string> coeffs;
  std::vector<std::vector<std::string>> rows;
  json terms = json::array();
  for (const auto& idx : src.datum->basis_of(p.members())) {
    const auto v = product.coefficient(idx).to_string();
    coeffs.push_back(v);
    rows.push_back({idx.to_string(), v});
    terms.push_back({{"index", idx.to_string()}, {"coefficient", v}});
  }
  if (o.json) {
    auto j = base_report("complete-mul", o);
    j["datum"] = src.datum->name();
    j["left"] = o.elements[0];
    j["right"] = o.elements[1];
    j["bound"] = p.members();
    j["coefficients"] = terms;
    emit_json(out, j);
  } else {
    out << "datum: " << src.datum->name() << '\n';
    out << "(" << o.elements[0] << ") * (" << o.elements[1] << ") mod I_P, P = " << p.to_string() << '\n';
    print_table(out, {"basis", "coefficient"}, rows);
    out << "coefficients: (" << join(coeffs, ",") << ")\n";
  }
  return kOk;
}

int cmd_export(const Options& o, std::ostream& out) {
  const auto src = resolve(o, true);
  const std::string text = export_datum(*src.datum).dump(2) + "\n";
  if (o.output.empty()) {
    out << text;
  } else {
    write_file(o.output, text);
    out << "datum written to " << o.output << '\n';
  }
  return kOk;
}

// --------------------------------------------------------------------- setup

void add_common(CLI::App* sub, Options& o) {
  sub->add_option("--builtin", o.builtin, "Builtin datum")->check(CLI::IsMember({"poly", "tl", "tower"}));
  sub->add_option("--file", o.file, "Datum JSON file");
  sub->add_option("--field", o.field, "Coefficient field: q or gf:p")->capture_default_str();
  sub->add_option("--n", o.n, "Strands (tl) or rank (tower)")->capture_default_str();
  sub->add_option("--delta", o.delta, "Loop parameter for tl")->capture_default_str();
  sub->add_option("--truncate", o.truncate, "Truncate to the principal coideal of this cell");
  sub->add_option("--bound", o.bound, "Coideal generators (repeatable)");
  sub->add_flag("--json", o.json, "Emit a JSON report");
  sub->add_option("--seed", o.seed, "Seed recorded in JSON reports")->capture_default_str();
  sub->add_option("--jobs", o.jobs, "Worker threads for per-cell work")->check(CLI::PositiveNumber)->capture_default_str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Cellular algebras, cell modules and procellular completions", "procell"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "Check the cell-datum axioms");
  auto* classify_cmd = app.add_subcommand("classify", "Classify the simple modules");
  auto* gram_cmd = app.add_subcommand("gram", "Print Gram forms");
  auto* quotient_cmd = app.add_subcommand("quotient", "Quotient by the ideal outside a coideal");
  auto* smooth = app.add_subcommand("smooth", "Smooth simple modules of the completion within a bound");
  auto* mul = app.add_subcommand("complete-mul", "Multiply two completion elements up to a bound");
  auto* exp = app.add_subcommand("export", "Write a finite datum as JSON");
  for (auto* s : {verify, classify_cmd, gram_cmd, quotient_cmd, smooth, mul, exp}) add_common(s, o);
  gram_cmd->add_option("--cell", o.cells, "Restrict to these cells");
  auto* gens = quotient_cmd->add_option("--gens", o.gens, "Coideal generators")->expected(0, 1 << 20);
  quotient_cmd->add_option("--output", o.output, "Write the quotient datum here");
  exp->add_option("--output", o.output, "Write the datum here");
  mul->add_option("elements", o.elements, "Two elements: generator name, polynomial, or cell:s:t=c;...")
      ->expected(2);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }
  o.gens_given = gens->count() > 0 || !o.gens.empty();
  std::erase(o.gens, std::string());

  try {
    if (verify->parsed()) return cmd_verify(o, out);
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (gram_cmd->parsed()) return cmd_gram(o, out);
    if (quotient_cmd->parsed()) return cmd_quotient(o, out);
    if (smooth->parsed()) return cmd_smooth(o, out);
    if (mul->parsed()) return cmd_complete_mul(o, out);
    if (exp->parsed()) return cmd_export(o, out);
  } catch (const InconsistencyError& e) {
    err << "error: " << e.what() << '\n';
    if (!e.witness().empty()) err << "witness: " << e.witness() << '\n';
    return kFailure;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace procell::cli
