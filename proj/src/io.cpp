#include "dcnewton/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace dcnewton {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

namespace {

std::string temp_sibling(const fs::path& path) {
  std::random_device rd;
  return path.string() + ".tmp" + std::to_string(rd());
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, sep)) {
    const auto b = cell.find_first_not_of(" \t\r");
    const auto e = cell.find_last_not_of(" \t\r");
    out.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

bool parse_number(const std::string& cell, double& out) {
  if (cell.empty()) return false;
  char* end = nullptr;
  errno = 0;
  out = std::strtod(cell.c_str(), &end);
  return end == cell.c_str() + cell.size() && errno != ERANGE;
}

}  // namespace

void write_file_atomic(const fs::path& path, const std::string& content) {
  const std::string tmp = temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + tmp + " for writing");
    out << content;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw std::runtime_error("write to " + tmp + " failed");
    }
  }
  fs::rename(tmp, path);
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

CsvTable parse_csv(const std::string& text) {
  CsvTable table;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos || line[line.find_first_not_of(" \t")] == '#') continue;
    const auto cells = split(line, ',');
    std::vector<double> row(cells.size());
    bool numeric = true;
    for (std::size_t k = 0; k < cells.size(); ++k) numeric = numeric && parse_number(cells[k], row[k]);
    if (!numeric) {
      if (first) {
        table.header = cells;
        first = false;
        continue;
      }
      throw std::invalid_argument("malformed CSV line " + std::to_string(lineno) + ": " + line);
    }
    first = false;
    const std::size_t width = table.header.empty() ? (table.rows.empty() ? row.size() : table.rows[0].size())
                                                   : table.header.size();
    if (row.size() != width) {
      throw std::invalid_argument("CSV line " + std::to_string(lineno) + " has " + std::to_string(row.size()) +
                                  " fields, expected " + std::to_string(width));
    }
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string coefficients_csv(const NewtonPolynomial& poly) {
  const auto& set = poly.grid().index_set();
  std::string out;
  for (std::size_t i = 0; i < set.dim(); ++i) out += "a" + std::to_string(i + 1) + ",";
  out += "c\n";
  for (std::size_t k = 0; k < set.size(); ++k) {
    for (std::size_t i = 0; i < set.dim(); ++i) out += std::to_string(set.exponent(k, i)) + ",";
    out += format_double(poly.coeffs()[k]) + "\n";
  }
  return out;
}

void write_bundle(const fs::path& dir, const NewtonPolynomial& poly) {
  const auto& grid = poly.grid();
  nlohmann::ordered_json header;
  header["m"] = grid.dim();
  header["num_coeffs"] = grid.size();
  header["node_family"] = to_string(grid.axes()[0].family);
  for (const auto& axis : grid.axes()) {
    if (axis.family != grid.axes()[0].family) header["node_family"] = to_string(NodeFamily::custom);
  }
  if (const auto& prov = grid.index_set().provenance()) {
    header["provenance"] = {{"m", prov->dim}, {"n", prov->degree}, {"p", prov->p.to_string()}};
  } else {
    header["provenance"] = nullptr;
  }

  const fs::path tmp = temp_sibling(dir);
  fs::create_directories(tmp);
  try {
    write_file_atomic(tmp / "header.json", header.dump(2) + "\n");
    write_file_atomic(tmp / "grid.csv", to_csv(grid));
    write_file_atomic(tmp / "coefficients.csv", coefficients_csv(poly));
    if (fs::exists(dir)) {
      if (!fs::exists(dir / "header.json")) {
        throw std::invalid_argument("refusing to replace " + dir.string() + ": not a polynomial bundle");
      }
      fs::remove_all(dir);
    }
    fs::rename(tmp, dir);
  } catch (...) {
    std::error_code ec;
    fs::remove_all(tmp, ec);
    throw;
  }
}

NewtonPolynomial read_bundle(const fs::path& dir) {
  nlohmann::json header;
  try {
    header = nlohmann::json::parse(read_file(dir / "header.json"));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("bad bundle header: " + std::string(e.what()));
  }
  const std::size_t m = header.at("m").get<std::size_t>();
  const std::size_t count = header.at("num_coeffs").get<std::size_t>();
  NodeFamily family = NodeFamily::custom;
  if (header.contains("node_family")) family = parse_node_family(header["node_family"].get<std::string>());

  const CsvTable grid_csv = parse_csv(read_file(dir / "grid.csv"));
  const CsvTable coef_csv = parse_csv(read_file(dir / "coefficients.csv"));
  if (grid_csv.rows.size() != count || coef_csv.rows.size() != count) {
    throw std::invalid_argument("bundle row counts disagree with num_coeffs = " + std::to_string(count));
  }
  if (!grid_csv.rows.empty() && grid_csv.rows[0].size() != 2 * m) {
    throw std::invalid_argument("grid.csv must have 2m columns");
  }
  if (!coef_csv.rows.empty() && coef_csv.rows[0].size() != m + 1) {
    throw std::invalid_argument("coefficients.csv must have m+1 columns");
  }

  std::vector<MultiIndex> indices(count, MultiIndex(m));
  std::vector<double> coeffs(count);
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      const double a = grid_csv.rows[k][i];
      if (a < 0 || a != std::floor(a)) throw std::invalid_argument("grid.csv: non-integer exponent");
      indices[k][i] = static_cast<int>(a);
      if (coef_csv.rows[k][i] != a) throw std::invalid_argument("coefficients.csv index order differs from grid.csv");
    }
    coeffs[k] = coef_csv.rows[k][m];
  }
  MultiIndexSet set = MultiIndexSet::from_indices(m, indices);
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::equal(indices[k].begin(), indices[k].end(), set[k].begin())) {
      throw std::invalid_argument("grid.csv rows are not in canonical order");
    }
  }

  std::vector<Nodes1D> axes(m);
  for (std::size_t i = 0; i < m; ++i) {
    axes[i].family = family;
    axes[i].points.resize(static_cast<std::size_t>(max_exponent(set, i)) + 1);
    MultiIndex probe(m, 0);
    for (std::size_t j = 0; j < axes[i].points.size(); ++j) {
      probe[i] = static_cast<int>(j);
      axes[i].points[j] = grid_csv.rows[*set.find(probe)][m + i];
    }
  }
  GridPtr grid = build_grid(std::move(set), std::move(axes));
  for (std::size_t k = 0; k < count; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (grid->coordinate(k, i) != grid_csv.rows[k][m + i]) {
        throw std::invalid_argument("grid.csv node " + std::to_string(k + 1) + " is not on the axis product");
      }
    }
  }
  return NewtonPolynomial(std::move(grid), std::move(coeffs));
}

}  // namespace dcnewton
