#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "distmod/analysis.hpp"
#include "distmod/benchgen.hpp"
#include "distmod/consensus.hpp"
#include "distmod/distance.hpp"
#include "distmod/errors.hpp"
#include "distmod/graph.hpp"
#include "distmod/kernels.hpp"
#include "distmod/modularity.hpp"
#include "distmod/null_models.hpp"
#include "distmod/optimize.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

std::string fmt_g(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// Scalar output keeps a decimal point so round numbers read as reals.
std::string fmt_scalar(double v) {
  std::string s = fmt_g(v);
  if (s.find_first_of(".einf") == std::string::npos) s += ".0";
  return s;
}

double wall_ms_since(std::chrono::steady_clock::time_point t0) {
  const auto dt = std::chrono::steady_clock::now() - t0;
  return std::chrono::duration<double, std::milli>(dt).count();
}

void warn_all(const std::vector<std::string>& warnings) {
  for (const std::string& w : warnings)
    std::fprintf(stderr, "warning: %s\n", w.c_str());
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path);
  if (!out) throw distmod::input_error("cannot write " + path.string());
  return out;
}

void write_json(const fs::path& path, const ordered_json& j) {
  auto out = open_out(path);
  out << j.dump(2) << "\n";
}

void write_partition_csv(const fs::path& path, const distmod::Graph& g,
                         const std::vector<int>& compact) {
  auto out = open_out(path);
  out << "node,community\n";
  for (int i = 0; i < g.size(); ++i)
    out << g.original_id(i) << "," << compact[static_cast<std::size_t>(i)] << "\n";
  if (!out) throw distmod::input_error("write failed: " + path.string());
}

// Reads node,community back; a header row is skipped when present.
std::map<long long, int> read_partition_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw distmod::input_error("cannot open partition file: " + path);
  std::map<long long, int> rows;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    for (char& ch : line)
      if (ch == ',' || ch == '\t') ch = ' ';
    std::istringstream is(line);
    long long node = 0;
    int label = 0;
    if (!(is >> node >> label)) {
      if (first) {
        first = false;
        continue;  // header
      }
      throw distmod::input_error(path + ": malformed partition row '" + line + "'");
    }
    first = false;
    std::string extra;
    if (is >> extra)
      throw distmod::input_error(path + ": trailing fields in '" + line + "'");
    if (!rows.emplace(node, label).second)
      throw distmod::input_error(path + ": duplicate node id " + std::to_string(node));
  }
  if (rows.empty()) throw distmod::input_error(path + ": no partition rows");
  return rows;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

double parse_full_double(const std::string& token, const std::string& what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size())
      throw distmod::input_error("cannot parse " + what + " '" + token + "'");
    return v;
  } catch (const distmod::input_error&) {
    throw;
  } catch (const std::exception&) {
    throw distmod::input_error("cannot parse " + what + " '" + token + "'");
  }
}

// A sigma token is a plain number, or a number scaled by the mean pairwise
// distance via the dbar suffix ("0.5dbar"; bare "dbar" means 1.0 of it).
double parse_sigma_token(std::string token, const distmod::PairDistances* distances) {
  while (!token.empty() && token.front() == ' ') token.erase(token.begin());
  while (!token.empty() && token.back() == ' ') token.pop_back();
  if (token.empty()) throw distmod::input_error("empty sigma value");
  if (ends_with(token, "dbar")) {
    token.resize(token.size() - 4);
    const double factor =
        token.empty() ? 1.0 : parse_full_double(token, "sigma");
    if (distances == nullptr)
      throw distmod::input_error(
          "a dbar-scaled sigma needs --attrs to define distances");
    return factor * distances->mean();
  }
  return parse_full_double(token, "sigma");
}

std::vector<double> parse_sigma_grid(const std::string& spec,
                                     const distmod::PairDistances* distances) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : spec) {
    if (c == ':') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  if (parts.size() != 3)
    throw distmod::input_error("sigma grid must be lo:hi:step, got '" + spec + "'");
  const double lo = parse_sigma_token(parts[0], distances);
  const double hi = parse_sigma_token(parts[1], distances);
  const double step = parse_sigma_token(parts[2], distances);
  if (!(step > 0.0)) throw distmod::input_error("sigma grid step must be > 0");
  if (hi < lo) throw distmod::input_error("sigma grid has hi < lo");
  std::vector<double> grid;
  for (int k = 0;; ++k) {
    const double v = lo + step * static_cast<double>(k);
    if (v > hi + 1e-9 * step) break;
    grid.push_back(v);
  }
  return grid;
}

// Options shared by the commands that read a network.
struct InputOptions {
  std::string edges_path;
  std::string attrs_path;
  long long declared_nodes = 0;
  std::vector<std::string> rho;
  std::string distance_name = "euclidean";
};

void add_input_options(CLI::App* cmd, InputOptions& in, bool attrs_needed) {
  cmd->add_option("--edges", in.edges_path, "edge list file: u v [w] per line")
      ->required();
  auto* attrs =
      cmd->add_option("--attrs", in.attrs_path, "node attribute table (csv)");
  if (attrs_needed) attrs->required();
  cmd->add_option("--nodes", in.declared_nodes,
                  "declared node count (ids 0..n-1, isolated nodes kept)");
  cmd->add_option("--rho", in.rho,
                  "attribute columns the distance uses (default: all numeric)")
      ->delimiter(',');
  cmd->add_option("--distance", in.distance_name,
                  "distance kind: euclidean, greatcircle, discrete");
}

struct LoadedInputs {
  distmod::Graph graph;
  distmod::AttributeTable attrs;     // aligned to the graph when present
  bool have_attrs = false;
};

LoadedInputs load_inputs(const InputOptions& in) {
  LoadedInputs loaded;
  loaded.graph = distmod::Graph::load_edge_list(in.edges_path, in.declared_nodes);
  if (!in.attrs_path.empty()) {
    loaded.attrs = distmod::AttributeTable::load(in.attrs_path).aligned(loaded.graph);
    loaded.have_attrs = true;
  }
  return loaded;
}

distmod::PairDistances build_distances(const LoadedInputs& loaded,
                                       const InputOptions& in) {
  if (!loaded.have_attrs)
    throw distmod::input_error("this run needs --attrs to define distances");
  distmod::DistanceSpec spec;
  spec.kind = distmod::distance_from_name(in.distance_name);
  spec.columns = in.rho;
  return distmod::PairDistances(spec, loaded.attrs);
}

std::vector<double> importance_column(const distmod::AttributeTable& attrs,
                                      const std::string& column) {
  const int c = attrs.column_index(column);
  if (c < 0)
    throw distmod::input_error("unknown importance column '" + column + "'");
  if (attrs.column_type(static_cast<std::size_t>(c)) !=
      distmod::AttributeTable::ColumnType::numeric)
    throw distmod::input_error("importance column '" + column +
                               "' must be numeric");
  std::vector<double> h(attrs.rows());
  for (std::size_t r = 0; r < attrs.rows(); ++r)
    h[r] = attrs.numeric_value(r, static_cast<std::size_t>(c));
  return h;
}

struct DetectOptions {
  InputOptions in;
  std::string model_name = "ng";
  std::string kernel_name;
  std::string sigma;
  double tau = 0.0;
  std::string importance;
  std::string algo_name = "lpamplus";
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int cmd_detect(const DetectOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedInputs loaded = load_inputs(opt.in);
  const distmod::ModelKind model_kind = distmod::model_from_name(opt.model_name);

  std::unique_ptr<distmod::PairDistances> distances;
  if (model_kind != distmod::ModelKind::ng)
    distances = std::make_unique<distmod::PairDistances>(
        build_distances(loaded, opt.in));

  std::unique_ptr<distmod::NullModel> model;
  double sigma_value = 0.0;
  distmod::KernelKind kernel_kind = distmod::KernelKind::constant;
  switch (model_kind) {
    case distmod::ModelKind::ng:
      model = std::make_unique<distmod::NgModel>(loaded.graph);
      break;
    case distmod::ModelKind::spa: {
      if (!(opt.tau > 0.0))
        throw distmod::input_error("--model spa needs --tau > 0");
      std::vector<double> h;
      if (!opt.importance.empty())
        h = importance_column(loaded.attrs, opt.importance);
      model = distmod::build_spa_model(loaded.graph, *distances, opt.tau, h);
      break;
    }
    case distmod::ModelKind::dist: {
      if (opt.kernel_name.empty())
        throw distmod::input_error("--model dist needs --kernel");
      kernel_kind = distmod::kernel_from_name(opt.kernel_name);
      if (distmod::kernel_has_parameter(kernel_kind)) {
        if (opt.sigma.empty())
          throw distmod::input_error("kernel '" + opt.kernel_name +
                                     "' needs --sigma");
        sigma_value = parse_sigma_token(opt.sigma, distances.get());
      }
      model = distmod::build_dist_model(
          loaded.graph, *distances,
          distmod::make_kernel(kernel_kind, sigma_value));
      break;
    }
  }

  distmod::OptimizerConfig cfg;
  cfg.algorithm = distmod::algorithm_from_name(opt.algo_name);
  cfg.seed = opt.seed;
  const distmod::OptimizeResult res =
      distmod::optimize(loaded.graph, *model, cfg);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  write_partition_csv(out / "partition.csv", loaded.graph,
                      res.partition.compact_labels());

  ordered_json metrics;
  metrics["command"] = "detect";
  metrics["model"] = opt.model_name;
  metrics["q"] = res.q;
  metrics["communities"] = res.partition.community_count();
  metrics["sweeps"] = res.sweeps;
  metrics["algorithm"] = opt.algo_name;
  metrics["seed"] = opt.seed;
  metrics["n"] = loaded.graph.size();
  metrics["total_weight"] = loaded.graph.total_weight();
  metrics["edges"] = opt.in.edges_path;
  if (loaded.have_attrs) metrics["attrs"] = opt.in.attrs_path;
  if (!opt.in.rho.empty()) metrics["rho"] = opt.in.rho;
  if (model_kind != distmod::ModelKind::ng)
    metrics["distance"] = opt.in.distance_name;
  if (model_kind == distmod::ModelKind::spa) {
    metrics["tau"] = opt.tau;
    if (!opt.importance.empty()) metrics["importance"] = opt.importance;
  }
  if (model_kind == distmod::ModelKind::dist) {
    metrics["kernel"] = opt.kernel_name;
    if (distmod::kernel_has_parameter(kernel_kind))
      metrics["sigma"] = sigma_value;
  }
  metrics["wall_ms"] = wall_ms_since(t0);
  write_json(out / "metrics.json", metrics);

  std::printf("q = %s communities = %d\n", fmt_g(res.q).c_str(),
              res.partition.community_count());
  return 0;
}

struct SweepOptions {
  InputOptions in;
  std::string kernel_name = "gaussian";
  std::string sigma_grid;
  std::string algo_name = "lpamplus";
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
};

int cmd_sweep(const SweepOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const LoadedInputs loaded = load_inputs(opt.in);
  const distmod::PairDistances distances = build_distances(loaded, opt.in);
  const distmod::KernelKind kind = distmod::kernel_from_name(opt.kernel_name);
  if (!distmod::kernel_has_parameter(kind))
    throw distmod::input_error("kernel '" + opt.kernel_name +
                               "' has no parameter to sweep");

  const std::vector<double> grid =
      opt.sigma_grid.empty()
          ? distmod::default_sigma_grid(kind, distances.mean())
          : parse_sigma_grid(opt.sigma_grid, &distances);

  distmod::OptimizerConfig cfg;
  cfg.algorithm = distmod::algorithm_from_name(opt.algo_name);
  cfg.seed = opt.seed;
  const distmod::SweepResult sweep =
      distmod::run_sweep(loaded.graph, distances, kind, grid, cfg, opt.threads);
  warn_all(sweep.warnings);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);

  {
    auto csv = open_out(out / "nmi_vs_sigma.csv");
    csv << "sigma,iavg,q,communities\n";
    for (const distmod::SweepPoint& pt : sweep.points) {
      if (!pt.ok) continue;
      csv << fmt_g(pt.sigma) << "," << fmt_g(pt.iavg) << "," << fmt_g(pt.q)
          << "," << pt.communities << "\n";
    }
  }

  for (std::size_t i = 0; i < sweep.points.size(); ++i) {
    if (!sweep.points[i].ok) continue;
    char name[48];
    std::snprintf(name, sizeof(name), "partition_sigma_%03zu.csv", i);
    write_partition_csv(out / name, loaded.graph,
                        sweep.points[i].partition.compact_labels());
  }

  const auto& best = sweep.points[static_cast<std::size_t>(sweep.consensus)];
  write_partition_csv(out / "consensus_partition.csv", loaded.graph,
                      best.partition.compact_labels());

  ordered_json metrics;
  metrics["command"] = "sweep";
  metrics["model"] = "dist";
  metrics["kernel"] = opt.kernel_name;
  metrics["edges"] = opt.in.edges_path;
  metrics["attrs"] = opt.in.attrs_path;
  if (!opt.in.rho.empty()) metrics["rho"] = opt.in.rho;
  metrics["distance"] = opt.in.distance_name;
  metrics["grid"] = grid;
  metrics["consensus_sigma"] = best.sigma;
  metrics["consensus_q"] = best.q;
  metrics["consensus_communities"] = best.communities;
  metrics["consensus_iavg"] = best.iavg;
  int failed = 0;
  for (const auto& pt : sweep.points) failed += pt.ok ? 0 : 1;
  metrics["points_ok"] = static_cast<int>(sweep.points.size()) - failed;
  metrics["points_failed"] = failed;
  metrics["algorithm"] = opt.algo_name;
  metrics["seed"] = opt.seed;
  metrics["threads"] = opt.threads;
  metrics["warnings"] = sweep.warnings;
  metrics["wall_ms"] = wall_ms_since(t0);
  write_json(out / "metrics.json", metrics);

  std::printf("consensus sigma = %s q = %s communities = %d\n",
              fmt_g(best.sigma).c_str(), fmt_g(best.q).c_str(),
              best.communities);
  return 0;
}

struct GenerateOptions {
  int n = 100;
  double eps = 0.1;
  double beta = 1.0;
  int links = 500;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
};

int cmd_generate(const GenerateOptions& opt) {
  distmod::BenchConfig cfg;
  cfg.n = opt.n;
  cfg.eps = opt.eps;
  cfg.beta = opt.beta;
  cfg.links = opt.links;
  cfg.seed = opt.seed;
  const distmod::BenchInstance inst = distmod::generate(cfg);
  warn_all(inst.warnings);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  {
    auto edges = open_out(out / "edges.txt");
    for (const distmod::Edge& e : inst.graph.edges())
      edges << inst.graph.original_id(e.u) << " " << inst.graph.original_id(e.v)
            << " " << fmt_g(e.w) << "\n";
  }
  inst.coords.write((out / "attributes.csv").string());
  write_partition_csv(out / "planted.csv", inst.graph,
                      inst.planted.compact_labels());

  ordered_json metrics;
  metrics["command"] = "generate";
  metrics["n"] = opt.n;
  metrics["eps"] = opt.eps;
  metrics["beta"] = opt.beta;
  metrics["links"] = opt.links;
  metrics["seed"] = opt.seed;
  metrics["warnings"] = inst.warnings;
  write_json(out / "metrics.json", metrics);
  return 0;
}

int cmd_nmi(const std::string& path_a, const std::string& path_b) {
  const std::map<long long, int> a = read_partition_csv(path_a);
  const std::map<long long, int> b = read_partition_csv(path_b);
  if (a.size() != b.size())
    throw distmod::input_error("partitions cover different node sets");
  std::vector<int> la, lb;
  la.reserve(a.size());
  lb.reserve(b.size());
  auto ita = a.begin();
  auto itb = b.begin();
  for (; ita != a.end(); ++ita, ++itb) {
    if (ita->first != itb->first)
      throw distmod::input_error("partitions cover different node sets");
    la.push_back(ita->second);
    lb.push_back(itb->second);
  }
  std::printf("%s\n", fmt_scalar(distmod::nmi_labels(la, lb)).c_str());
  return 0;
}

struct EffectOptions {
  InputOptions in;
  std::vector<std::string> models{"ng"};
  double tau = 0.0;
  std::string importance;
  std::string kernel_name;
  std::string sigma;
  int bins = 20;
  std::string out_dir = ".";
};

int cmd_effect(const EffectOptions& opt) {
  const LoadedInputs loaded = load_inputs(opt.in);
  const distmod::PairDistances distances = build_distances(loaded, opt.in);

  std::vector<std::unique_ptr<distmod::NullModel>> owned;
  std::vector<const distmod::NullModel*> models;
  std::vector<std::string> names;
  for (const std::string& name : opt.models) {
    switch (distmod::model_from_name(name)) {
      case distmod::ModelKind::ng:
        owned.push_back(std::make_unique<distmod::NgModel>(loaded.graph));
        break;
      case distmod::ModelKind::spa: {
        if (!(opt.tau > 0.0))
          throw distmod::input_error("the spa column needs --tau > 0");
        std::vector<double> h;
        if (!opt.importance.empty())
          h = importance_column(loaded.attrs, opt.importance);
        owned.push_back(
            distmod::build_spa_model(loaded.graph, distances, opt.tau, h));
        break;
      }
      case distmod::ModelKind::dist: {
        if (opt.kernel_name.empty())
          throw distmod::input_error("the dist column needs --kernel");
        const auto kind = distmod::kernel_from_name(opt.kernel_name);
        double sigma_value = 0.0;
        if (distmod::kernel_has_parameter(kind)) {
          if (opt.sigma.empty())
            throw distmod::input_error("kernel '" + opt.kernel_name +
                                       "' needs --sigma");
          sigma_value = parse_sigma_token(opt.sigma, &distances);
        }
        owned.push_back(distmod::build_dist_model(
            loaded.graph, distances, distmod::make_kernel(kind, sigma_value)));
        break;
      }
    }
    models.push_back(owned.back().get());
    names.push_back(name);
  }

  const std::vector<double> edges =
      distmod::distance_from_name(opt.in.distance_name) ==
              distmod::DistanceKind::discrete
          ? distmod::distinct_value_bins(distances)
          : distmod::equal_width_bins(distances.max(), opt.bins);
  const distmod::EffectCurve curve =
      distmod::effect_curve(loaded.graph, distances, edges, models, names);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  auto csv = open_out(out / "effect_curve.csv");
  csv << "bin_lo,bin_hi,observed";
  for (const std::string& name : curve.model_names) csv << ",expected_" << name;
  csv << "\n";
  for (std::size_t b = 0; b + 1 < curve.bin_edges.size(); ++b) {
    csv << fmt_g(curve.bin_edges[b]) << "," << fmt_g(curve.bin_edges[b + 1])
        << "," << fmt_g(curve.observed[b]);
    for (const auto& column : curve.expected) csv << "," << fmt_g(column[b]);
    csv << "\n";
  }
  return 0;
}

struct ChisqOptions {
  std::string attrs_path;
  std::string column_a;
  std::string column_b;
  bool yates = false;
};

int cmd_chisq(const ChisqOptions& opt) {
  const distmod::AttributeTable attrs =
      distmod::AttributeTable::load(opt.attrs_path);
  const distmod::ChiSquaredResult r = distmod::chi_squared_independence(
      attrs, opt.column_a, opt.column_b, opt.yates);
  ordered_json report;
  report["statistic"] = r.statistic;
  report["dof"] = r.dof;
  report["p_value"] = r.p_value;
  report["yates"] = opt.yates;
  std::printf("%s\n", report.dump(2).c_str());
  return 0;
}

struct GridOptions {
  std::vector<double> epsilons{0.1, 0.3, 0.5};
  std::vector<double> betas{0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int replicates = 100;
  std::vector<std::string> methods;
  int n = 100;
  int links = 500;
  std::uint64_t seed = 1;
  int threads = 1;
  std::string out_dir = ".";
};

int cmd_grid(const GridOptions& opt) {
  std::vector<distmod::BenchMethod> methods;
  if (opt.methods.empty()) {
    methods = {distmod::BenchMethod::ng, distmod::BenchMethod::spa_high,
               distmod::BenchMethod::spa_cons, distmod::BenchMethod::dist_high,
               distmod::BenchMethod::dist_cons};
  } else {
    for (const std::string& name : opt.methods)
      methods.push_back(distmod::bench_method_from_name(name));
  }

  distmod::GridConfig cfg;
  cfg.n = opt.n;
  cfg.links = opt.links;
  cfg.seed = opt.seed;
  cfg.threads = opt.threads;
  const distmod::GridResult res = distmod::grid_experiment(
      opt.epsilons, opt.betas, opt.replicates, methods, cfg);
  warn_all(res.warnings);

  const fs::path out(opt.out_dir);
  fs::create_directories(out);
  auto csv = open_out(out / "grid_nmi.csv");
  csv << "method,epsilon,beta,mean_nmi\n";
  for (std::size_t m = 0; m < methods.size(); ++m)
    for (std::size_t e = 0; e < res.epsilons.size(); ++e)
      for (std::size_t b = 0; b < res.betas.size(); ++b)
        csv << distmod::bench_method_name(methods[m]) << ","
            << fmt_g(res.epsilons[e]) << "," << fmt_g(res.betas[b]) << ","
            << fmt_g(res.mean(m, e, b)) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"community detection beyond node attributes"};
  app.require_subcommand(1);

  DetectOptions detect;
  auto* cmd_det = app.add_subcommand(
      "detect", "optimize modularity under one null model");
  add_input_options(cmd_det, detect.in, false);
  cmd_det->add_option("--model", detect.model_name, "null model: ng, spa, dist");
  cmd_det->add_option("--kernel", detect.kernel_name,
                      "dist kernel: gaussian, reciprocal, threshold, constant, "
                      "step, expdecay, expinverse");
  cmd_det->add_option("--sigma", detect.sigma,
                      "kernel parameter; suffix dbar scales by the mean distance");
  cmd_det->add_option("--tau", detect.tau, "spa bin width");
  cmd_det->add_option("--importance", detect.importance,
                      "numeric column with spa importance values (default: strength)");
  cmd_det->add_option("--algo", detect.algo_name, "optimizer: lpamplus, louvain");
  cmd_det->add_option("--seed", detect.seed, "rng seed");
  cmd_det->add_option("--out", detect.out_dir, "output directory");

  SweepOptions sweep;
  auto* cmd_swp = app.add_subcommand(
      "sweep", "sweep the kernel parameter and pick the consensus partition");
  add_input_options(cmd_swp, sweep.in, true);
  cmd_swp->add_option("--kernel", sweep.kernel_name, "kernel to sweep");
  cmd_swp->add_option("--sigma-grid", sweep.sigma_grid,
                      "grid lo:hi:step; tokens may carry the dbar suffix");
  cmd_swp->add_option("--algo", sweep.algo_name, "optimizer: lpamplus, louvain");
  cmd_swp->add_option("--seed", sweep.seed, "rng seed");
  cmd_swp->add_option("--threads", sweep.threads, "worker threads");
  cmd_swp->add_option("--out", sweep.out_dir, "output directory");

  GenerateOptions generate;
  auto* cmd_gen = app.add_subcommand(
      "generate", "write a synthetic spatial benchmark instance");
  cmd_gen->add_option("--n", generate.n, "node count (even)");
  cmd_gen->add_option("--eps", generate.eps, "membership flip probability");
  cmd_gen->add_option("--beta", generate.beta, "membership effect strength");
  cmd_gen->add_option("--links", generate.links, "number of links");
  cmd_gen->add_option("--seed", generate.seed, "rng seed");
  cmd_gen->add_option("--out", generate.out_dir, "output directory");

  std::vector<std::string> nmi_files;
  auto* cmd_nmi_app = app.add_subcommand(
      "nmi", "normalized mutual information between two partition files");
  cmd_nmi_app->add_option("files", nmi_files, "two partition csv files")
      ->expected(2);

  EffectOptions effect;
  auto* cmd_eff = app.add_subcommand(
      "effect", "observed vs expected link weight per distance bin");
  add_input_options(cmd_eff, effect.in, true);
  cmd_eff->add_option("--models", effect.models,
                      "expected columns to emit: ng, spa, dist")
      ->delimiter(',');
  cmd_eff->add_option("--tau", effect.tau, "spa bin width");
  cmd_eff->add_option("--importance", effect.importance,
                      "numeric column with spa importance values");
  cmd_eff->add_option("--kernel", effect.kernel_name, "dist kernel");
  cmd_eff->add_option("--sigma", effect.sigma, "dist kernel parameter");
  cmd_eff->add_option("--bins", effect.bins,
                      "equal-width bin count (ignored for discrete distances)");
  cmd_eff->add_option("--out", effect.out_dir, "output directory");

  ChisqOptions chisq;
  auto* cmd_chi = app.add_subcommand(
      "chisq", "chi-squared independence test between two attribute columns");
  cmd_chi->add_option("--attrs", chisq.attrs_path, "attribute table")->required();
  cmd_chi->add_option("--a", chisq.column_a, "first column")->required();
  cmd_chi->add_option("--b", chisq.column_b, "second column")->required();
  cmd_chi->add_flag("--yates", chisq.yates, "apply the continuity correction");

  GridOptions grid;
  auto* cmd_grd = app.add_subcommand(
      "grid", "mean NMI against the planted partition over an (eps, beta) grid");
  cmd_grd->add_option("--eps", grid.epsilons, "eps values")->delimiter(',');
  cmd_grd->add_option("--beta", grid.betas, "beta values")->delimiter(',');
  cmd_grd->add_option("--replicates", grid.replicates, "instances per cell");
  cmd_grd->add_option("--methods", grid.methods,
                      "NG, Spa-High, Spa-Cons, Dist-High, Dist-Cons")
      ->delimiter(',');
  cmd_grd->add_option("--n", grid.n, "benchmark node count");
  cmd_grd->add_option("--links", grid.links, "benchmark link count");
  cmd_grd->add_option("--seed", grid.seed, "rng seed");
  cmd_grd->add_option("--threads", grid.threads, "worker threads");
  cmd_grd->add_option("--out", grid.out_dir, "output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (cmd_det->parsed()) return cmd_detect(detect);
    if (cmd_swp->parsed()) return cmd_sweep(sweep);
    if (cmd_gen->parsed()) return cmd_generate(generate);
    if (cmd_nmi_app->parsed()) return cmd_nmi(nmi_files[0], nmi_files[1]);
    if (cmd_eff->parsed()) return cmd_effect(effect);
    if (cmd_chi->parsed()) return cmd_chisq(chisq);
    if (cmd_grd->parsed()) return cmd_grid(grid);
  } catch (const distmod::degeneracy_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 3;
  } catch (const distmod::input_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}
