// Command-line front end for the distribution-splitting active-learning
// pipeline: scoring, halving, ball splitting, query emission, the passive
// and querying benchmark harnesses, the perceptron theory lab, and the
// label-complexity bound calculator.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "da2/dataset.hpp"
#include "da2/evaluate.hpp"
#include "da2/kernel.hpp"
#include "da2/perceptron.hpp"
#include "da2/scoring.hpp"
#include "da2/serialize.hpp"
#include "da2/splitting.hpp"

namespace fs = std::filesystem;
using da2::json;

namespace {

struct RunConfig {
  double sigma = 1.8;
  double u = 0.1;
  double lambda = 1e-3;
  double eps = 0.01;
  int restarts = 10;
  std::uint64_t seed = 0;
  std::string objective = "min";
  std::string dataset;
  std::string format = "dense-csv";
  bool standardize = false;
};

void from_json_file(const std::string& path, RunConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file: " + path);
  json j = json::parse(in);
  if (j.contains("sigma")) cfg.sigma = j["sigma"].get<double>();
  if (j.contains("u")) cfg.u = j["u"].get<double>();
  if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
  if (j.contains("eps")) cfg.eps = j["eps"].get<double>();
  if (j.contains("restarts")) cfg.restarts = j["restarts"].get<int>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("objective")) cfg.objective = j["objective"].get<std::string>();
  if (j.contains("dataset")) cfg.dataset = j["dataset"].get<std::string>();
  if (j.contains("format")) cfg.format = j["format"].get<std::string>();
  if (j.contains("standardize")) cfg.standardize = j["standardize"].get<bool>();
}

json config_json(const RunConfig& cfg) {
  return json{{"sigma", cfg.sigma},       {"u", cfg.u},
              {"lambda", cfg.lambda},     {"eps", cfg.eps},
              {"restarts", cfg.restarts}, {"seed", cfg.seed},
              {"objective", cfg.objective}, {"dataset", cfg.dataset},
              {"format", cfg.format},     {"standardize", cfg.standardize}};
}

da2::PipelineConfig pipeline_config(const RunConfig& cfg) {
  da2::PipelineConfig p;
  p.sigma = cfg.sigma;
  p.u = cfg.u;
  p.lambda = cfg.lambda;
  p.eps = cfg.eps;
  p.restarts = cfg.restarts;
  p.seed = cfg.seed;
  if (cfg.objective == "min") {
    p.objective = da2::SplitObjective::minimize;
  } else if (cfg.objective == "max") {
    p.objective = da2::SplitObjective::maximize;
  } else {
    throw std::invalid_argument("objective must be 'min' or 'max'");
  }
  return p;
}

// Dataset spec: a file path, "blobs:CxP[:spread]", or "disk:N".
da2::Dataset resolve_dataset(const RunConfig& cfg) {
  if (cfg.dataset.empty())
    throw std::invalid_argument("no dataset given (use --dataset)");
  da2::Dataset d;
  if (cfg.dataset.rfind("blobs:", 0) == 0) {
    const std::string spec = cfg.dataset.substr(6);
    const auto x = spec.find('x');
    if (x == std::string::npos)
      throw std::invalid_argument("blobs spec must look like blobs:CxP[:spread]");
    const int classes = std::stoi(spec.substr(0, x));
    double spread = 0.2;
    std::string rest = spec.substr(x + 1);
    const auto colon = rest.find(':');
    if (colon != std::string::npos) {
      spread = std::stod(rest.substr(colon + 1));
      rest = rest.substr(0, colon);
    }
    d = da2::generate_gaussian_blobs(classes, std::stoi(rest), spread, cfg.seed);
  } else if (cfg.dataset.rfind("disk:", 0) == 0) {
    d = da2::generate_uniform_disk(std::stoi(cfg.dataset.substr(5)), cfg.seed).data;
  } else {
    const auto fmt = cfg.format == "sparse-text" ? da2::DatasetFormat::sparse_text
                                                 : da2::DatasetFormat::dense_csv;
    if (cfg.format != "dense-csv" && cfg.format != "sparse-text")
      throw std::invalid_argument("format must be dense-csv or sparse-text");
    d = da2::load_dataset(cfg.dataset, fmt);
  }
  if (cfg.standardize) d = da2::standardize(d);
  return d;
}

fs::path ensure_out_dir(std::string out_dir, const std::string& command,
                        std::uint64_t seed) {
  if (out_dir.empty())
    out_dir = "runs/" + command + "-seed" + std::to_string(seed);
  fs::create_directories(out_dir);
  return out_dir;
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  std::cout << "wrote " << path.string() << "\n";
}

void write_json(const fs::path& path, const json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::vector<int> parse_budgets(const std::string& spec) {
  std::vector<int> out;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(std::stoi(tok));
  if (out.empty()) throw std::invalid_argument("empty budget list");
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"DA2 distribution-splitting active learning"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string config_path, out_dir;
  app.add_option("--config", config_path, "JSON config file (flags override)");

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--dataset", cfg.dataset,
                    "file path, blobs:CxP[:spread], or disk:N");
    sub->add_option("--format", cfg.format, "dense-csv | sparse-text");
    sub->add_option("--sigma", cfg.sigma, "RBF bandwidth");
    sub->add_option("--u", cfg.u, "scoring penalty factor");
    sub->add_option("--lambda", cfg.lambda, "classifier ridge");
    sub->add_option("--eps", cfg.eps, "enclosing-ball slack");
    sub->add_option("--restarts", cfg.restarts, "splitting restarts");
    sub->add_option("--seed", cfg.seed, "global seed");
    sub->add_option("--objective", cfg.objective, "min | max");
    sub->add_option("--out-dir", out_dir, "artifact directory");
    sub->add_flag("--standardize", cfg.standardize, "per-column standardization");
  };

  int k = 4, trials = 10, steps = 1000;
  std::string budgets_spec = "5,10,15,20,25,30,35,40,45,50";
  std::string methods_spec = "da2,random,ted,kcenter";
  std::string query_method = "da2";
  std::string space = "both";
  bool dump_kernel = false;
  double theta_t = 0.0, theta_next = 0.0, bound_eps = 0.1, bound_delta = 0.05;
  long identity_n = 1000, bound_m = 2;

  CLI::App* score = app.add_subcommand("score", "per-point active scores");
  add_common(score);
  score->add_flag("--dump-kernel", dump_kernel, "also dump the kernel matrix CSV");

  CLI::App* halve = app.add_subcommand("halve", "select the halfspace");
  add_common(halve);
  halve->add_flag("--dump-kernel", dump_kernel, "also dump the kernel matrix CSV");

  CLI::App* split = app.add_subcommand("split", "split the halfspace into k balls");
  add_common(split);
  split->add_option("--k", k, "number of balls");

  CLI::App* query = app.add_subcommand("query", "emit an AL query set");
  add_common(query);
  query->add_option("--k", k, "query budget");
  query->add_option("--method", query_method, "da2 | random | ted | kcenter");

  CLI::App* passive = app.add_subcommand("passive", "passive-sampling curves");
  add_common(passive);
  passive->add_option("--budgets", budgets_spec, "comma-separated budgets");
  passive->add_option("--trials", trials, "trials per budget");
  passive->add_option("--space", space, "full | halfspace | both");
  bool best_of = false;
  passive->add_flag("--best-of", best_of, "also report the best error over trials");

  CLI::App* compare = app.add_subcommand("compare", "AL method comparison curves");
  add_common(compare);
  compare->add_option("--budgets", budgets_spec, "comma-separated budgets");
  compare->add_option("--trials", trials, "trials");
  compare->add_option("--methods", methods_spec, "comma-separated methods");
  compare->add_flag("--best-of", best_of, "also report the best error over trials");

  CLI::App* perceptron = app.add_subcommand("perceptron", "theory-lab runs");
  add_common(perceptron);
  std::string mode;
  perceptron->add_option("mode", mode, "trace | monotonic | identity")->required();
  perceptron->add_option("--steps", steps, "stream length");
  perceptron->add_option("--trials", trials, "independent streams");
  perceptron->add_option("--theta-t", theta_t, "current angle");
  perceptron->add_option("--theta-next", theta_next, "next angle");
  perceptron->add_option("--n", identity_n, "sample count in the circle");

  CLI::App* bounds = app.add_subcommand("bounds", "label-complexity bound");
  bounds->add_option("--eps", bound_eps, "target error");
  bounds->add_option("--delta", bound_delta, "failure probability");
  bounds->add_option("--m", bound_m, "unlabeled-pool count");
  bounds->add_option("--seed", cfg.seed, "global seed");
  bounds->add_option("--out-dir", out_dir, "artifact directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (!config_path.empty()) {
      RunConfig file_cfg = cfg;
      from_json_file(config_path, file_cfg);
      // re-apply flags on top of file values
      RunConfig merged = file_cfg;
      CLI::App* sub = app.get_subcommands().front();
      auto overridden = [&](const std::string& name) {
        const CLI::Option* o = sub->get_option_no_throw(name);
        return o != nullptr && o->count() > 0;
      };
      if (overridden("--sigma")) merged.sigma = cfg.sigma;
      if (overridden("--u")) merged.u = cfg.u;
      if (overridden("--lambda")) merged.lambda = cfg.lambda;
      if (overridden("--eps")) merged.eps = cfg.eps;
      if (overridden("--restarts")) merged.restarts = cfg.restarts;
      if (overridden("--seed")) merged.seed = cfg.seed;
      if (overridden("--objective")) merged.objective = cfg.objective;
      if (overridden("--dataset")) merged.dataset = cfg.dataset;
      if (overridden("--format")) merged.format = cfg.format;
      if (overridden("--standardize")) merged.standardize = cfg.standardize;
      cfg = merged;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    const fs::path dir = ensure_out_dir(out_dir, command, cfg.seed);
    const da2::PipelineConfig pcfg = pipeline_config(cfg);

    auto dump_kernel_csv = [&](const da2::KernelMatrix& km) {
      std::ostringstream os;
      os.precision(17);
      for (int i = 0; i < km.n(); ++i) {
        for (int j = 0; j < km.n(); ++j)
          os << (j ? "," : "") << km.entries(i, j);
        os << '\n';
      }
      write_text(dir / "kernel.csv", os.str());
    };

    if (command == "score") {
      const da2::Dataset d = resolve_dataset(cfg);
      const da2::KernelMatrix km = da2::rbf_kernel(d, cfg.sigma);
      const Eigen::VectorXd scores = da2::score_all(km, cfg.u);
      if (dump_kernel) dump_kernel_csv(km);
      write_json(dir / "score.json",
                 json{{"scores", std::vector<double>(scores.begin(), scores.end())},
                      {"config", config_json(cfg)}});
    } else if (command == "halve") {
      const da2::Dataset d = resolve_dataset(cfg);
      if (dump_kernel) dump_kernel_csv(da2::rbf_kernel(d, cfg.sigma));
      const da2::HalfspaceSelection sel =
          da2::select_halfspace(d, cfg.sigma, cfg.u);
      json j = da2::to_json(sel);
      j["config"] = config_json(cfg);
      write_json(dir / "halve.json", j);
    } else if (command == "split") {
      const da2::Dataset d = resolve_dataset(cfg);
      const da2::HalfspaceSelection sel =
          da2::select_halfspace(d, cfg.sigma, cfg.u);
      Eigen::MatrixXd pts(static_cast<int>(sel.indices.size()), d.dim());
      for (int i = 0; i < pts.rows(); ++i)
        pts.row(i) = d.features.row(sel.indices[i]);
      da2::SplitOptions opts;
      opts.objective = pcfg.objective;
      const da2::BallPartition part =
          da2::split_balls(pts, k, cfg.eps, cfg.restarts, cfg.seed, opts);
      json j = da2::to_json(part);
      j["halfspace"] = sel.indices;
      j["config"] = config_json(cfg);
      write_json(dir / "split.json", j);
      if (part.validation_warning)
        std::cerr << "warning: no restart satisfied all splitting constraints\n";
    } else if (command == "query") {
      const da2::Dataset d = resolve_dataset(cfg);
      const da2::QuerySet q =
          query_method == "da2"
              ? da2::da2_query(d, k, pcfg)
              : da2::baseline_query(d, k, query_method, cfg.seed, pcfg);
      json j = da2::to_json(q);
      j["config"] = config_json(cfg);
      write_json(dir / "query.json", j);
    } else if (command == "passive") {
      const da2::Dataset d = resolve_dataset(cfg);
      const std::vector<int> budgets = parse_budgets(budgets_spec);
      std::vector<da2::ErrorCurve> curves;
      if (space == "full" || space == "both")
        curves.push_back(da2::passive_sampling_curve(
            d, da2::SampleSpace::full, budgets, trials, cfg.seed, pcfg));
      if (space == "halfspace" || space == "both")
        curves.push_back(da2::passive_sampling_curve(
            d, da2::SampleSpace::halfspace, budgets, trials, cfg.seed, pcfg));
      if (curves.empty())
        throw std::invalid_argument("space must be full, halfspace, or both");
      std::ostringstream os;
      da2::write_curves_csv(curves, os, best_of);
      write_text(dir / "passive.csv", os.str());
    } else if (command == "compare") {
      const da2::Dataset d = resolve_dataset(cfg);
      std::vector<std::string> methods;
      std::stringstream ss(methods_spec);
      std::string tok;
      while (std::getline(ss, tok, ',')) methods.push_back(tok);
      const std::vector<da2::ErrorCurve> curves = da2::al_comparison(
          d, methods, parse_budgets(budgets_spec), trials, cfg.seed, pcfg);
      std::ostringstream os;
      da2::write_curves_csv(curves, os, best_of);
      write_text(dir / "compare.csv", os.str());
    } else if (command == "perceptron") {
      std::ostringstream os;
      os.precision(17);
      if (mode == "trace") {
        auto rng = da2::make_rng(cfg.seed, da2::SeedDomain::perceptron);
        const Eigen::Vector2d mu = da2::random_unit_vector(rng);
        da2::PerceptronState s =
            da2::make_perceptron(da2::random_unit_vector(rng), mu);
        os << "t,theta,error\n";
        os << s.updates << ',' << s.theta << ',' << da2::angle_error(s) << '\n';
        for (int i = 0; i < steps; ++i) {
          const Eigen::Vector2d x = da2::uniform_disk_point(rng);
          const int y = mu.dot(x) >= 0.0 ? 1 : -1;
          const da2::PerceptronState next = da2::perceptron_step(s, x, y);
          if (next.updates != s.updates)
            os << next.updates << ',' << next.theta << ','
               << da2::angle_error(next) << '\n';
          s = next;
        }
        write_text(dir / "perceptron_trace.csv", os.str());
      } else if (mode == "monotonic") {
        const double estimate =
            da2::monotonicity_experiment(steps, trials, cfg.seed);
        os << "steps,trials,nondecreasing_fraction\n"
           << steps << ',' << trials << ',' << estimate << '\n';
        write_text(dir / "perceptron_monotonic.csv", os.str());
        std::cout << "nondecreasing fraction: " << estimate << "\n";
      } else if (mode == "identity") {
        const da2::DensityIdentity r =
            da2::density_identity(theta_t, theta_next, identity_n);
        os << "lhs,rhs,gap\n" << r.lhs << ',' << r.rhs << ',' << r.gap << '\n';
        write_text(dir / "perceptron_identity.csv", os.str());
        std::cout << "lhs=" << r.lhs << " rhs=" << r.rhs << " gap=" << r.gap
                  << "\n";
      } else {
        throw std::invalid_argument("perceptron mode must be trace, monotonic, or identity");
      }
    } else if (command == "bounds") {
      const double value =
          da2::label_complexity_bound({bound_eps, bound_delta, bound_m});
      std::ostringstream os;
      os.precision(17);
      os << "eps=" << bound_eps << " delta=" << bound_delta << " m=" << bound_m
         << " bound=" << value << "\n";
      write_text(dir / "bounds.txt", os.str());
      std::cout << os.str();
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
