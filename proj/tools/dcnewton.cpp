#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "dcnewton/analysis.hpp"
#include "dcnewton/error.hpp"
#include "dcnewton/grid.hpp"
#include "dcnewton/io.hpp"
#include "dcnewton/multi_index.hpp"
#include "dcnewton/newton.hpp"

namespace fs = std::filesystem;
using namespace dcnewton;
using ojson = nlohmann::ordered_json;

namespace {

struct Globals {
  std::uint64_t seed = 0;
  std::size_t samples = 10000;
  std::string out;
  std::string format = "csv";
};

struct GridArgs {
  std::size_t m = 0;
  int n = -1;
  std::string p = "2";
  std::string family = "lcl";
  int resolution = 100000;
};

struct FunctionArgs {
  std::string id = "runge";
  double r = 1.0;
  double s = 1.0;
  double a = 1.25;
  double k1 = 1.0;
  double k2 = 1.0;
};

std::vector<int> parse_int_list(const std::string& text, const char* what) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("bad ") + what + " entry '" + item + "'");
    }
  }
  return out;
}

// lo:hi[:step] or a comma list.
std::vector<int> parse_degrees(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_int_list(text, "degree");
  std::string list = text;
  for (char& ch : list) ch = ch == ':' ? ',' : ch;
  const auto parts = parse_int_list(list, "degree range");
  if (parts.size() < 2 || parts.size() > 3) throw std::invalid_argument("degree range must be lo:hi[:step]");
  const int step = parts.size() == 3 ? parts[2] : 1;
  if (step <= 0 || parts[0] < 0 || parts[1] < parts[0]) throw std::invalid_argument("invalid degree range " + text);
  std::vector<int> out;
  for (int n = parts[0]; n <= parts[1]; n += step) out.push_back(n);
  return out;
}

std::vector<int> parse_order(const std::string& text, std::size_t m) {
  if (text.empty()) return {};
  auto order = parse_int_list(text, "order");
  if (order.size() != m) throw std::invalid_argument("--order needs " + std::to_string(m) + " entries");
  for (int o : order) {
    if (o < 0) throw std::invalid_argument("--order entries must be >= 0");
  }
  return order;
}

NodeFamily grid_family(const std::string& text) {
  if (text == "lcl") return NodeFamily::leja_ordered_chebyshev_lobatto;
  if (text == "leja") return NodeFamily::leja;
  throw std::invalid_argument("--family must be lcl or leja");
}

void check_dim(std::size_t m) {
  if (m == 0) throw std::invalid_argument("-m must be >= 1");
}

void check_format(const Globals& g) {
  if (g.format != "csv" && g.format != "json") throw std::invalid_argument("--format must be csv or json");
}

BenchmarkFunction make_function(const FunctionArgs& a, std::size_t m) {
  BenchmarkFunction f{parse_benchmark_id(a.id), m, a.r, a.s, a.a, a.k1, a.k2};
  f.validate();
  return f;
}

void add_function_options(CLI::App* cmd, FunctionArgs& f) {
  cmd->add_option("--function", f.id, "runge | f1 | f3 | f4 | f5");
  cmd->add_option("--r", f.r, "pole parameter r (runge, f1)");
  cmd->add_option("--s", f.s, "runge offset s");
  cmd->add_option("--a", f.a, "f4 shift a");
  cmd->add_option("--k1", f.k1, "f5 frequency k1");
  cmd->add_option("--k2", f.k2, "f5 frequency k2");
}

void add_grid_options(CLI::App* cmd, GridArgs& g, bool need_degree) {
  cmd->add_option("-m", g.m, "dimension")->required();
  auto* n = cmd->add_option("-n", g.n, "degree");
  if (need_degree) n->required();
  cmd->add_option("-p", g.p, "l_p degree: 1, 2, inf or a positive decimal");
  cmd->add_option("--family", g.family, "lcl | leja");
  cmd->add_option("--resolution", g.resolution, "Leja candidate grid size");
}

// Artifact to --out (summary on stdout) or to stdout (summary on stderr).
void emit(const Globals& g, const std::string& artifact, const std::string& summary) {
  if (!g.out.empty()) {
    write_file_atomic(g.out, artifact);
    std::cout << summary;
  } else {
    std::cout << artifact;
    std::cerr << summary;
  }
}

std::string axis_line(const Nodes1D& axis) {
  std::string s;
  for (std::size_t j = 0; j < axis.size(); ++j) s += (j ? " " : "") + format_double(axis[j]);
  return s;
}

int run_nodes(const Globals& g, const GridArgs& a) {
  check_dim(a.m);
  check_format(g);
  if (a.n < 0) throw std::invalid_argument("-n must be >= 0");
  const GridPtr grid = make_lp_grid(a.m, a.n, LpDegree::parse(a.p), grid_family(a.family), a.resolution);
  std::string artifact;
  if (g.format == "json") {
    ojson doc;
    doc["m"] = a.m;
    doc["n"] = a.n;
    doc["p"] = LpDegree::parse(a.p).to_string();
    doc["node_family"] = to_string(grid->axes()[0].family);
    doc["num_coeffs"] = grid->size();
    doc["axes"] = ojson::array();
    for (const auto& axis : grid->axes()) doc["axes"].push_back(axis.points);
    doc["nodes"] = ojson::array();
    for (std::size_t k = 0; k < grid->size(); ++k) {
      const auto alpha = grid->index_set()[k];
      doc["nodes"].push_back({{"alpha", std::vector<int>(alpha.begin(), alpha.end())}, {"x", grid->node(k)}});
    }
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = to_csv(*grid);
  }
  std::string summary = "num_coeffs " + std::to_string(grid->size()) + "\n";
  for (std::size_t i = 0; i < grid->dim(); ++i) {
    summary += "axis " + std::to_string(i + 1) + ": " + axis_line(grid->axes()[i]) + "\n";
  }
  emit(g, artifact, summary);
  return 0;
}

int run_interpolate(const Globals& g, const GridArgs& a, const FunctionArgs& fa, const std::string& values_path,
                    bool function_given) {
  check_dim(a.m);
  if (a.n < 0) throw std::invalid_argument("-n must be >= 0");
  if (g.out.empty()) throw std::invalid_argument("interpolate needs --out DIR for the polynomial bundle");
  if (values_path.empty() == !function_given) {
    throw std::invalid_argument("give exactly one of --function or --values");
  }
  const GridPtr grid = make_lp_grid(a.m, a.n, LpDegree::parse(a.p), grid_family(a.family), a.resolution);
  NewtonPolynomial poly = [&] {
    if (function_given) return interpolate(as_function(make_function(fa, a.m)), grid);
    const CsvTable table = parse_csv(read_file(values_path));
    if (table.rows.size() != grid->size()) {
      throw std::invalid_argument("values file has " + std::to_string(table.rows.size()) + " rows, expected |A| = " +
                                  std::to_string(grid->size()));
    }
    LagrangeCoefficients samples{grid, {}};
    for (const auto& row : table.rows) samples.values.push_back(row.back());
    return divided_differences(samples);
  }();
  write_bundle(g.out, poly);
  std::cout << "num_coeffs " << grid->size() << "\nbundle " << g.out << "\n";
  return 0;
}

int run_eval(const Globals& g, const std::string& bundle, const std::string& points_path,
             const std::string& order_text) {
  check_format(g);
  const NewtonPolynomial poly = read_bundle(bundle);
  const std::size_t m = poly.dim();
  const std::vector<int> order = parse_order(order_text, m);
  const CsvTable table = parse_csv(read_file(points_path));
  std::vector<double> flat;
  std::size_t outside = 0;
  for (const auto& row : table.rows) {
    if (row.size() != m) throw std::invalid_argument("points file rows need " + std::to_string(m) + " columns");
    for (double v : row) {
      if (!std::isfinite(v)) throw std::invalid_argument("points file contains a non-finite coordinate");
    }
    bool out = false;
    for (double v : row) out = out || std::abs(v) > 1.0;
    outside += out ? 1 : 0;
    flat.insert(flat.end(), row.begin(), row.end());
  }
  if (outside > 0) std::cerr << "warning: " << outside << " points lie outside [-1,1]^" << m << "\n";
  const std::vector<double> values = table.rows.empty() ? std::vector<double>{} : eval_batch(poly, flat, order);

  std::string artifact;
  if (g.format == "json") {
    ojson doc = ojson::array();
    for (std::size_t k = 0; k < values.size(); ++k) doc.push_back({{"x", table.rows[k]}, {"value", values[k]}});
    artifact = doc.dump(2) + "\n";
  } else {
    for (std::size_t i = 0; i < m; ++i) artifact += "x" + std::to_string(i + 1) + ",";
    artifact += "value\n";
    for (std::size_t k = 0; k < values.size(); ++k) {
      for (double v : table.rows[k]) artifact += format_double(v) + ",";
      artifact += format_double(values[k]) + "\n";
    }
  }
  emit(g, artifact, "points " + std::to_string(values.size()) + "\n");
  return 0;
}

int run_convergence(const Globals& g, const GridArgs& a, const FunctionArgs& fa, const std::string& degrees_text,
                    const std::string& order_text) {
  check_dim(a.m);
  check_format(g);
  const BenchmarkFunction f = make_function(fa, a.m);
  const LpDegree p = LpDegree::parse(a.p);
  const std::vector<int> degrees = parse_degrees(degrees_text);
  if (degrees.size() < 4) throw std::invalid_argument("the rate fit needs at least 4 degrees");
  ConvergenceOptions opts;
  opts.samples = g.samples;
  opts.seed = g.seed;
  opts.deriv_order = parse_order(order_text, a.m);
  opts.leja_resolution = a.resolution;
  if (opts.samples == 0) throw std::invalid_argument("--samples must be >= 1");

  const ConvergenceRecord record = convergence_run(f, p, grid_family(a.family), degrees, opts);
  const RateFit fit = fit_rate(record);
  const auto reference = optimal_rho(f, p);

  std::string artifact;
  if (g.format == "json") {
    ojson doc;
    doc["function"] = to_string(f.id);
    doc["params"] = f.describe();
    doc["m"] = a.m;
    doc["p"] = p.to_string();
    doc["family"] = to_string(record.family);
    doc["samples"] = record.samples;
    doc["seed"] = record.seed;
    doc["deriv_order"] = record.deriv_order;
    doc["rows"] = ojson::array();
    for (const auto& row : record.rows) {
      doc["rows"].push_back({{"n", row.n}, {"num_coeffs", row.num_coeffs}, {"error", row.error}});
    }
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = to_csv(record);
  }
  std::string summary = "c " + format_double(fit.c) + "\nrho " + format_double(fit.rho) + "\nr_squared " +
                        format_double(fit.r_squared) + "\nfit_range " + std::to_string(fit.n_lo) + ":" +
                        std::to_string(fit.n_hi) + "\noptimal_rho " +
                        (reference ? format_double(*reference) : std::string("unknown")) + "\n";
  if (!g.out.empty()) {
    fs::path fit_path = fs::path(g.out);
    fit_path.replace_extension(".fit.json");
    write_file_atomic(fit_path, to_json(fit));
    summary += "fit " + fit_path.string() + "\n";
  } else {
    summary += to_json(fit);
  }
  emit(g, artifact, summary);
  return 0;
}

int run_lebesgue(const Globals& g, const std::string& dims_text, const std::string& ps_text,
                 const std::string& degrees_text, const std::string& family, int k, std::size_t max_coeffs,
                 int resolution) {
  check_format(g);
  const std::vector<int> dims = parse_int_list(dims_text, "dimension");
  std::vector<LpDegree> ps;
  {
    std::stringstream in(ps_text);
    std::string item;
    while (std::getline(in, item, ',')) ps.push_back(LpDegree::parse(item));
  }
  const std::vector<int> degrees = parse_degrees(degrees_text);
  const NodeFamily fam = grid_family(family);
  if (k < 0) throw std::invalid_argument("--k must be >= 0");
  if (g.samples == 0) throw std::invalid_argument("--samples must be >= 1");
  for (int m : dims) check_dim(m < 0 ? 0 : static_cast<std::size_t>(m));

  std::vector<LebesgueRow> rows;
  for (int m : dims) {
    for (const auto& p : ps) {
      for (int n : degrees) {
        const GridPtr grid = make_lp_grid(static_cast<std::size_t>(m), n, p, fam, resolution);
        if (grid->size() > max_coeffs) {
          std::cerr << "warning: skipping m=" << m << " p=" << p.to_string() << " n=" << n << ": |A| = "
                    << grid->size() << " exceeds --max-coeffs " << max_coeffs << "\n";
          continue;
        }
        const double lambda = lebesgue_estimate(*grid, g.samples, g.seed, k, {max_coeffs});
        rows.push_back({static_cast<std::size_t>(m), p, n, grid->size(), lambda});
      }
    }
  }
  std::string artifact;
  if (g.format == "json") {
    ojson doc = ojson::array();
    for (const auto& row : rows) {
      doc.push_back({{"m", row.m}, {"p", row.p.to_string()}, {"n", row.n}, {"num_coeffs", row.num_coeffs},
                     {"lambda", row.lambda}});
    }
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = to_csv(rows);
  }
  emit(g, artifact, "rows " + std::to_string(rows.size()) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Multivariate Newton interpolation on downward-closed index sets"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->capture_default_str();
  app.add_option("--samples", g.samples, "sample count")->capture_default_str();
  app.add_option("--out", g.out, "output path");
  app.add_option("--format", g.format, "csv | json")->capture_default_str();
  app.fallthrough();

  GridArgs nodes_args;
  auto* nodes = app.add_subcommand("nodes", "write the unisolvent grid of A_{m,n,p}");
  add_grid_options(nodes, nodes_args, true);

  GridArgs interp_args;
  FunctionArgs interp_fn;
  std::string values_path;
  auto* interp = app.add_subcommand("interpolate", "interpolate a builtin function or sample file");
  add_grid_options(interp, interp_args, true);
  add_function_options(interp, interp_fn);
  interp->add_option("--values", values_path, "CSV of samples in grid order (last column used)");

  std::string bundle;
  std::string points_path;
  std::string eval_order;
  auto* eval = app.add_subcommand("eval", "evaluate or differentiate a polynomial bundle");
  eval->add_option("--bundle", bundle, "polynomial bundle directory")->required();
  eval->add_option("--points", points_path, "CSV of query points x1..xm")->required();
  eval->add_option("--order", eval_order, "derivative order, e.g. 1,0");

  GridArgs conv_args;
  FunctionArgs conv_fn;
  std::string conv_degrees;
  std::string conv_order;
  auto* conv = app.add_subcommand("convergence", "error sweep over degrees plus geometric rate fit");
  add_grid_options(conv, conv_args, false);
  add_function_options(conv, conv_fn);
  conv->add_option("--degrees", conv_degrees, "lo:hi[:step] or a comma list")->required();
  conv->add_option("--order", conv_order, "derivative order, e.g. 1,0,0");

  std::string leb_dims;
  std::string leb_ps = "inf";
  std::string leb_degrees;
  std::string leb_family = "lcl";
  int leb_k = 0;
  std::size_t leb_cap = 5000;
  int leb_resolution = 100000;
  auto* leb = app.add_subcommand("lebesgue", "Lebesgue constant sweep");
  leb->add_option("-m", leb_dims, "dimension or comma list")->required();
  leb->add_option("-p", leb_ps, "comma list of 1, 2, inf or decimals");
  leb->add_option("--degrees,-n", leb_degrees, "lo:hi[:step] or a comma list")->required();
  leb->add_option("--family", leb_family, "lcl | leja");
  leb->add_option("--k", leb_k, "derivative order of the Lebesgue constant");
  leb->add_option("--max-coeffs", leb_cap, "skip grids larger than this");
  leb->add_option("--resolution", leb_resolution, "Leja candidate grid size");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (nodes->parsed()) return run_nodes(g, nodes_args);
    if (interp->parsed()) return run_interpolate(g, interp_args, interp_fn, values_path, interp->count("--function") > 0);
    if (eval->parsed()) return run_eval(g, bundle, points_path, eval_order);
    if (conv->parsed()) return run_convergence(g, conv_args, conv_fn, conv_degrees, conv_order);
    if (leb->parsed()) {
      return run_lebesgue(g, leb_dims, leb_ps, leb_degrees, leb_family, leb_k, leb_cap, leb_resolution);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
