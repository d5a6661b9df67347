#include "ringstab/plantfile.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "ringstab/errors.hpp"
#include "ringstab/parse.hpp"

namespace ringstab {

namespace {

struct RawValue {
  std::string text;
  int line = 0;
  int col = 0;  // column of the first value character
};

struct Sections {
  // section -> key -> value
  std::map<std::string, std::map<std::string, RawValue>> data;

  const RawValue* find(const std::string& sec, const std::string& key) const {
    auto s = data.find(sec);
    if (s == data.end()) return nullptr;
    auto k = s->second.find(key);
    if (k == s->second.end()) return nullptr;
    return &k->second;
  }

  const RawValue& require(const std::string& sec, const std::string& key) const {
    const RawValue* v = find(sec, key);
    if (!v)
      fail(ErrorCode::ParseError,
           "missing key '" + key + "' in section [" + sec + "]");
    return *v;
  }
};

std::string trim(const std::string& s, int* lead = nullptr) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  if (lead) *lead = static_cast<int>(b);
  return s.substr(b, e - b);
}

Sections split_sections(const std::string& text) {
  static const std::map<std::string, std::vector<std::string>> known = {
      {"ring", {"kind", "variables"}},
      {"causality", {"ideal"}},
      {"plant", {"inputs", "outputs", "N", "D"}},
      {"controller", {"C"}},
  };
  Sections out;
  std::istringstream in(text);
  std::string line;
  std::string section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    int lead = 0;
    std::string body = trim(line, &lead);
    if (body.empty()) continue;
    if (body.front() == '[') {
      if (body.back() != ']')
        fail(ErrorCode::ParseError,
             "line " + std::to_string(lineno) + ": malformed section header");
      section = trim(body.substr(1, body.size() - 2));
      if (!known.count(section))
        fail(ErrorCode::ParseError, "line " + std::to_string(lineno) +
                                        ": unknown section [" + section + "]");
      continue;
    }
    auto eq = body.find('=');
    if (eq == std::string::npos || section.empty())
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": expected 'key = value'");
    std::string key = trim(body.substr(0, eq));
    const auto& keys = known.at(section);
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno) +
                                      ": unknown key '" + key +
                                      "' in section [" + section + "]");
    int vlead = 0;
    std::string value = trim(body.substr(eq + 1), &vlead);
    if (out.data[section].count(key))
      fail(ErrorCode::ParseError, "line " + std::to_string(lineno) +
                                      ": duplicate key '" + key + "'");
    out.data[section][key] =
        RawValue{value, lineno, lead + static_cast<int>(eq) + 1 + vlead + 1};
  }
  return out;
}

std::vector<std::string> split_list(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

Ring parse_ring(const Sections& sec) {
  std::string kind = trim(sec.require("ring", "kind").text);
  const RawValue* vars = sec.find("ring", "variables");
  auto no_vars = [&](const char* what) {
    if (vars)
      fail(ErrorCode::ParseError,
           std::string("the ") + what + " ring takes no variable list");
  };
  if (kind == "integers") {
    no_vars("integers");
    return ring_integers();
  }
  if (kind == "rationals") {
    no_vars("rationals");
    return ring_rationals();
  }
  if (kind == "quadratic_sqrt_minus5") {
    no_vars("quadratic");
    return ring_quadratic();
  }
  if (kind == "cuspidal_cubic") {
    no_vars("cuspidal");
    return ring_cuspidal();
  }
  if (kind == "polynomial") {
    if (!vars)
      fail(ErrorCode::ParseError, "polynomial ring requires 'variables'");
    std::vector<std::string> names;
    for (const auto& v : split_list(vars->text, ',')) {
      std::string name = trim(v);
      if (name.empty())
        fail(ErrorCode::ParseError, "line " + std::to_string(vars->line) +
                                        ": empty variable name");
      names.push_back(name);
    }
    return ring_polynomial(names);
  }
  fail(ErrorCode::ParseError, "unknown ring kind '" + kind + "'");
}

// Row-major matrix value: entries split by ',', rows split by ';'.
template <typename Cell>
std::vector<std::vector<Cell>> parse_grid(
    const Ring& ring, const RawValue& raw,
    Cell (*parse_cell)(const Ring&, const std::string&, int, int)) {
  std::vector<std::vector<Cell>> grid;
  int col = raw.col;
  for (const auto& rowtext : split_list(raw.text, ';')) {
    std::vector<Cell> row;
    for (const auto& cell : split_list(rowtext, ',')) {
      row.push_back(parse_cell(ring, cell, raw.line, col));
      col += static_cast<int>(cell.size()) + 1;
    }
    grid.push_back(std::move(row));
  }
  return grid;
}

Matrix parse_ring_matrix(const Ring& ring, const RawValue& raw, int rows,
                         int cols, const std::string& name) {
  auto grid = parse_grid<RingElement>(ring, raw, parse_element);
  if (static_cast<int>(grid.size()) != rows)
    fail(ErrorCode::ParseError, "line " + std::to_string(raw.line) + ": " +
                                    name + " needs " + std::to_string(rows) +
                                    " rows, got " +
                                    std::to_string(grid.size()));
  Matrix m(ring, rows, cols);
  for (int i = 0; i < rows; ++i) {
    if (static_cast<int>(grid[i].size()) != cols)
      fail(ErrorCode::ParseError, "line " + std::to_string(raw.line) + ": " +
                                      name + " row " + std::to_string(i + 1) +
                                      " needs " + std::to_string(cols) +
                                      " entries, got " +
                                      std::to_string(grid[i].size()));
    for (int j = 0; j < cols; ++j) m.set(i, j, grid[i][j]);
  }
  return m;
}

int parse_count(const RawValue& raw, const std::string& name) {
  std::string t = trim(raw.text);
  try {
    std::size_t used = 0;
    int v = std::stoi(t, &used);
    if (v <= 0 || used != t.size()) throw std::invalid_argument("count");
    return v;
  } catch (const std::exception&) {
    fail(ErrorCode::ParseError, "line " + std::to_string(raw.line) + ": " +
                                    name + " must be a positive integer");
  }
}

}  // namespace

PlantFile parse_plant_file(const std::string& text) {
  Sections sec = split_sections(text);
  Ring ring = parse_ring(sec);

  std::optional<Ideal> z;
  if (const RawValue* zv = sec.find("causality", "ideal")) {
    std::vector<RingElement> gens;
    int col = zv->col;
    for (const auto& g : split_list(zv->text, ',')) {
      gens.push_back(parse_element(ring, g, zv->line, col));
      col += static_cast<int>(g.size()) + 1;
    }
    z = Ideal(ring, std::move(gens));
  }

  int m = parse_count(sec.require("plant", "inputs"), "inputs");
  int n = parse_count(sec.require("plant", "outputs"), "outputs");
  Matrix N = parse_ring_matrix(ring, sec.require("plant", "N"), n, m, "N");
  Matrix D = parse_ring_matrix(ring, sec.require("plant", "D"), m, m, "D");

  PlantFile pf{ring, plant_from_right_fraction(N, D, std::move(z)),
               std::nullopt};

  if (const RawValue* cv = sec.find("controller", "C")) {
    auto grid = parse_grid<FractionElement>(ring, *cv, parse_fraction);
    if (static_cast<int>(grid.size()) != m)
      fail(ErrorCode::ParseError,
           "line " + std::to_string(cv->line) + ": C needs " +
               std::to_string(m) + " rows, got " + std::to_string(grid.size()));
    FracMatrix c(ring, m, n);
    for (int i = 0; i < m; ++i) {
      if (static_cast<int>(grid[i].size()) != n)
        fail(ErrorCode::ParseError,
             "line " + std::to_string(cv->line) + ": C row " +
                 std::to_string(i + 1) + " needs " + std::to_string(n) +
                 " entries");
      for (int j = 0; j < n; ++j) c.set(i, j, grid[i][j]);
    }
    pf.controller = std::move(c);
  }
  return pf;
}

PlantFile load_plant_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ParseError, "cannot open plant file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_plant_file(buf.str());
}

}  // namespace ringstab
