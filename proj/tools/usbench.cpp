#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ustitch/bench.hpp"
#include "ustitch/render.hpp"

namespace {

using namespace ustitch;

// Bad flag values, bad config content, unknown ids: exit code 2.
// I/O and malformed data files: exit code 1.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

double parse_double(const std::string& token, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(token, &used);
    if (used != token.size()) throw std::invalid_argument(token);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("invalid ") + what + ": " + token);
  }
}

StitchParams stitched_params(const std::optional<double>& lambda0,
                             const std::optional<std::string>& alpha) {
  StitchParams params;
  if (lambda0) {
    if (!(*lambda0 >= 0.0)) throw UsageError("lambda0 must be >= 0");
    params.lambda0 = *lambda0;
  }
  if (alpha) {
    if (*alpha == "-") {
      params.use_schedule = false;
    } else {
      const double a = parse_double(*alpha, "alpha");
      if (a < 0.0 || a > 1.0) throw UsageError("alpha must be in [0, 1]");
      params.alpha = a;
    }
  }
  return params;
}

std::vector<std::string> parse_methods(const std::string& csv) {
  const std::vector<std::string> methods = split_csv(csv);
  if (methods.empty()) throw UsageError("no methods given");
  BenchOptions probe;
  probe.methods = methods;
  try {
    probe.resolved_methods();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return methods;
}

void print_summary(const BenchResult& result,
                   const std::vector<std::string>& methods) {
  std::printf("evaluated %lld scenarios, skipped %lld\n", result.evaluated,
              result.skipped);
  if (result.table.empty()) return;
  std::printf("%-10s", "method");
  for (const int h : kEvalHorizonsSeconds) std::printf("%9ds", h);
  std::printf("\n");
  for (const std::string& m : methods) {
    std::printf("%-10s", m.c_str());
    for (const int h : kEvalHorizonsSeconds) {
      try {
        std::printf("%10.3f", result.table.overall_mean(m, h));
      } catch (const std::out_of_range&) {
        std::printf("%10s", "-");
      }
    }
    std::printf("\n");
  }
}

int run_generate(const std::string& config_path, const std::string& out_path,
                 const std::optional<std::uint64_t>& seed) {
  GeneratorConfig config;
  if (!config_path.empty()) {
    // Unreadable and malformed configs are both usage errors.
    try {
      config = load_generator_config(config_path);
    } catch (const std::exception& e) {
      throw UsageError(e.what());
    }
  }
  if (seed) config.seed = *seed;
  ScenarioSet set;
  set.config = config;
  try {
    set.records = generate_records(config);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  save_scenarios(out_path, set);
  std::printf("wrote %zu scenarios to %s\n", set.records.size(),
              out_path.c_str());
  return 0;
}

int run_run(const std::string& scenarios_path, const std::string& out_dir,
            const std::string& methods_csv,
            const std::optional<double>& lambda0,
            const std::optional<std::string>& alpha, int parallel) {
  BenchOptions options;
  options.methods = parse_methods(methods_csv);
  options.stitch = stitched_params(lambda0, alpha);
  const ScenarioSet set = load_scenarios(scenarios_path);
  const BenchResult result = run_benchmark(set.records, options, parallel);
  std::filesystem::create_directories(out_dir);
  write_file(out_dir + "/metrics.csv", result.table.to_csv());
  write_file(out_dir + "/details.csv", details_to_csv(result.details));
  print_summary(result, options.methods);
  return 0;
}

int run_sweep(const std::string& scenarios_path, const std::string& out_dir,
              const std::string& lambda_csv, const std::string& alpha_csv,
              int parallel) {
  const std::vector<std::string> lambdas = split_csv(lambda_csv);
  const std::vector<std::string> alphas = split_csv(alpha_csv);
  if (lambdas.empty() || lambdas.size() != alphas.size()) {
    throw UsageError("lambda0 and alpha lists must be non-empty and zipped "
                     "pairwise (equal length)");
  }
  const ScenarioSet set = load_scenarios(scenarios_path);
  std::filesystem::create_directories(out_dir);
  std::string combined = "lambda0,alpha,method,horizon_s,maneuver,mean_cte_m,count\n";
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    BenchOptions options;
    options.methods = {"us"};
    options.stitch = stitched_params(parse_double(lambdas[i], "lambda0"),
                                     alphas[i]);
    const BenchResult result = run_benchmark(set.records, options, parallel);
    const std::string alpha_label = alphas[i] == "-" ? "const" : alphas[i];
    const std::string cell_path =
        out_dir + "/sweep_l" + lambdas[i] + "_a" + alpha_label + ".csv";
    write_file(cell_path, result.table.to_csv());
    const std::string csv = result.table.to_csv();
    std::stringstream rows(csv);
    std::string line;
    std::getline(rows, line);  // header
    while (std::getline(rows, line)) {
      if (line.empty()) continue;
      combined += lambdas[i] + "," + alphas[i] + "," + line + "\n";
    }
    std::printf("cell lambda0=%s alpha=%s done (%lld scenarios)\n",
                lambdas[i].c_str(), alphas[i].c_str(), result.evaluated);
  }
  write_file(out_dir + "/sweep.csv", combined);
  return 0;
}

int run_render(const std::string& scenarios_path, const std::string& id,
               const std::string& out_path, const std::string& methods_csv,
               const std::optional<double>& lambda0,
               const std::optional<std::string>& alpha) {
  BenchOptions options;
  options.methods = parse_methods(methods_csv);
  options.stitch = stitched_params(lambda0, alpha);
  const ScenarioSet set = load_scenarios(scenarios_path);
  const ScenarioRecord* found = nullptr;
  for (const ScenarioRecord& rec : set.records) {
    if (rec.id == id) {
      found = &rec;
      break;
    }
  }
  if (found == nullptr) throw UsageError("no scenario with id " + id);
  const auto paths = method_spatial_paths(*found, options);
  write_file(out_path, render_scene(*found, paths));
  std::printf("wrote %s\n", out_path.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"benchmark for stitching uncertain trajectory predictions "
               "onto lane goal paths"};
  app.require_subcommand(1);

  std::string config_path;
  std::string scenarios_path;
  std::string out_path;
  std::string methods_csv = "ballistic,pp,raw,ls1,ls3,ls5,us";
  std::string render_methods_csv = "us,pp";
  std::string scenario_id;
  std::string lambda_csv = "10,0.01,0.55,0.55";
  std::string alpha_csv = "0.8,0.2,0.5,-";
  std::optional<double> lambda0;
  std::optional<std::string> alpha;
  std::optional<std::uint64_t> seed;
  int parallel = 1;

  CLI::App* generate = app.add_subcommand("generate", "generate a scenario set");
  generate->add_option("--config", config_path, "generator config json");
  generate->add_option("--out", out_path, "output scenario json")->required();
  generate->add_option("--seed", seed, "override the config seed");

  CLI::App* run = app.add_subcommand("run", "evaluate methods on a scenario set");
  run->add_option("--scenarios", scenarios_path, "scenario json")->required();
  run->add_option("--out", out_path, "output directory")->required();
  run->add_option("--methods", methods_csv, "comma separated method list");
  run->add_option("--lambda0", lambda0, "stitching strength");
  run->add_option("--alpha", alpha,
                  "compatibility threshold, or '-' for a constant lambda");
  run->add_option("--parallel", parallel, "worker threads");

  CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep for the stitcher");
  sweep->add_option("--scenarios", scenarios_path, "scenario json")->required();
  sweep->add_option("--out", out_path, "output directory")->required();
  sweep->add_option("--lambda0", lambda_csv, "comma separated lambda0 list");
  sweep->add_option("--alpha", alpha_csv,
                    "comma separated alpha list, '-' entries disable the "
                    "schedule; zipped with --lambda0");
  sweep->add_option("--parallel", parallel, "worker threads");

  CLI::App* render = app.add_subcommand("render", "render one scenario to svg");
  render->add_option("--scenarios", scenarios_path, "scenario json")->required();
  render->add_option("--id", scenario_id, "scenario id")->required();
  render->add_option("--out", out_path, "output svg path")->required();
  render->add_option("--methods", render_methods_csv, "methods to draw");
  render->add_option("--lambda0", lambda0, "stitching strength");
  render->add_option("--alpha", alpha,
                     "compatibility threshold, or '-' for a constant lambda");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (generate->parsed()) return run_generate(config_path, out_path, seed);
    if (run->parsed()) {
      return run_run(scenarios_path, out_path, methods_csv, lambda0, alpha,
                     parallel);
    }
    if (sweep->parsed()) {
      return run_sweep(scenarios_path, out_path, lambda_csv, alpha_csv,
                       parallel);
    }
    if (render->parsed()) {
      return run_render(scenarios_path, scenario_id, out_path,
                        render_methods_csv, lambda0, alpha);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
