#include "procell/datum_io.hpp"

#include "procell/error.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace procell {
namespace {

using nlohmann::json;

std::pair<std::size_t, std::size_t> line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, column = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

const json& member(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("datum file lacks \"") + key + "\"");
  return obj.at(key);
}

Scalar parse_scalar(const Field& field, const json& j) {
  if (j.is_string()) return Scalar::parse(field, j.get<std::string>());
  if (j.is_number_integer()) return Scalar(field, j.get<long long>());
  throw ParseError("scalar must be a string or an integer, got " + j.dump());
}

struct PairHash {
  std::size_t operator()(const std::pair<std::size_t, std::size_t>& p) const { return p.first * 1000003u ^ p.second; }
};

}  // namespace

LoadedDatum load_datum(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw ParseError(std::string("malformed datum JSON: ") + e.what(), line, column);
  }
  try {
    if (doc.contains("schema") && doc.at("schema") != 1) throw ParseError("unsupported datum schema " + doc.at("schema").dump());
    const Field field = Field::parse(member(doc, "field").get<std::string>());
    const std::string name = doc.value("name", std::string("datum"));

    const json& poset_json = member(doc, "poset");
    std::vector<Label> elements = member(poset_json, "elements").get<std::vector<Label>>();
    std::vector<std::pair<Label, Label>> covers;
    if (poset_json.contains("covers"))
      for (const auto& c : poset_json.at("covers")) {
        if (!c.is_array() || c.size() != 2) throw ParseError("cover relation must be a pair, got " + c.dump());
        covers.emplace_back(c[0].get<Label>(), c[1].get<Label>());
      }
    std::shared_ptr<FinitePoset> poset;
    try {
      poset = FinitePoset::from_covers(name + "-poset", elements, covers);
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string("bad poset: ") + e.what());
    } catch (const UnknownElement& e) {
      throw ParseError(std::string("bad poset: ") + e.what());
    }

    std::map<Label, std::vector<Label>> tableaux;
    const json& tab_json = member(doc, "tableaux");
    for (const auto& cell : elements) {
      if (!tab_json.contains(cell)) throw ParseError("tableaux block lacks cell '" + cell + "'");
      tableaux[cell] = tab_json.at(cell).get<std::vector<Label>>();
    }

    std::vector<BasisIndex> basis;
    for (const auto& cell : elements) {
      const auto m = static_cast<std::uint32_t>(tableaux[cell].size());
      for (std::uint32_t s = 0; s < m; ++s)
        for (std::uint32_t t = 0; t < m; ++t) basis.push_back({cell, s, t});
    }
    const std::size_t n = basis.size();

    LoadedDatum out;
    auto to_element = [&](const json& terms, const std::string& where) {
      if (!terms.is_array()) throw ParseError(where + ": term list must be an array");
      Element e(field);
      for (const auto& term : terms) {
        if (!term.is_array() || term.size() != 2 || !term[0].is_number_unsigned())
          throw ParseError(where + ": term must be [index, coefficient], got " + term.dump());
        const auto k = term[0].get<std::size_t>();
        if (k >= n) {
          out.table_issues.push_back(where + " references basis index " + std::to_string(k) + " of " + std::to_string(n));
          continue;
        }
        e.add(basis[k], parse_scalar(field, term[1]));
      }
      return e;
    };

    auto table = std::make_shared<std::map<std::pair<std::size_t, std::size_t>, Element>>();
    for (const auto& entry : member(doc, "table")) {
      if (!entry.is_array() || entry.size() != 3 || !entry[0].is_number_unsigned() || !entry[1].is_number_unsigned())
        throw ParseError("table entry must be [i, j, terms], got " + entry.dump());
      const auto i = entry[0].get<std::size_t>();
      const auto j = entry[1].get<std::size_t>();
      const std::string where = "table entry (" + std::to_string(i) + ", " + std::to_string(j) + ")";
      if (i >= n || j >= n) {
        out.table_issues.push_back(where + " is out of range for dimension " + std::to_string(n));
        continue;
      }
      if (!table->emplace(std::make_pair(i, j), to_element(entry[2], where)).second)
        out.table_issues.push_back(where + " is listed twice");
    }
    for (std::size_t i = 0; i < n && out.table_issues.size() < 20; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!table->count({i, j})) {
          out.table_issues.push_back("table lacks the product of basis " + std::to_string(i) + " and " + std::to_string(j));
          break;
        }

    std::optional<Element> unit;
    if (doc.contains("unit")) unit = to_element(doc.at("unit"), "unit");

    auto index = std::make_shared<std::map<BasisIndex, std::size_t>>();
    for (std::size_t i = 0; i < n; ++i) index->emplace(basis[i], i);
    auto mult = [field, table, index](const BasisIndex& a, const BasisIndex& b) {
      auto it = table->find({index->at(a), index->at(b)});
      return it == table->end() ? Element(field) : it->second;
    };
    out.datum = std::make_shared<CellDatum>(
        name, field, std::move(poset),
        [tableaux](const Label& cell) {
          auto it = tableaux.find(cell);
          return it == tableaux.end() ? std::vector<Label>{} : it->second;
        },
        std::move(mult), std::move(unit));
    return out;
  } catch (const json::exception& e) {
    throw ParseError(std::string("datum schema violation: ") + e.what());
  }
}

LoadedDatum load_datum_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open datum file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_datum(buffer.str());
}

nlohmann::json export_datum(const CellDatum& d) {
  const auto cells = d.cells();
  const auto basis = d.basis();
  std::map<BasisIndex, std::size_t> index;
  for (std::size_t i = 0; i < basis.size(); ++i) index.emplace(basis[i], i);

  json covers = json::array();
  if (auto fp = std::dynamic_pointer_cast<const FinitePoset>(d.poset_ptr())) {
    for (const auto& [a, b] : fp->covers()) covers.push_back({a, b});
  } else {
    const auto restricted = FinitePoset::restrict(d.poset(), cells);
    for (const auto& [a, b] : restricted->covers()) covers.push_back({a, b});
  }

  json tableaux = json::object();
  for (const auto& cell : cells) tableaux[cell] = d.tableaux(cell);

  auto terms = [&](const Element& e) {
    json out = json::array();
    for (const auto& [b, c] : e.terms()) out.push_back({index.at(b), c.to_string()});
    return out;
  };

  json table = json::array();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j)
      table.push_back({i, j, terms(d.multiply_basis(basis[i], basis[j]))});

  json doc;
  doc["schema"] = 1;
  doc["name"] = d.name();
  doc["field"] = d.field().to_string();
  doc["poset"] = {{"elements", cells}, {"covers", covers}};
  doc["tableaux"] = tableaux;
  doc["table"] = table;
  if (d.unit()) doc["unit"] = terms(*d.unit());
  return doc;
}

AxiomReport verify_loaded(const LoadedDatum& loaded, const VerifyOptions& options) {
  AxiomReport report = verify_cell_datum(*loaded.datum, options);
  if (!loaded.table_issues.empty())
    for (auto& c : report.checks)
      if (c.name == "basis") {
        c.passed = false;
        c.witness = loaded.table_issues.front() + (c.witness.empty() ? "" : "; " + c.witness);
      }
  return report;
}

}  // namespace procell
