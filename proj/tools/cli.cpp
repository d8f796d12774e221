// Copyright 2026 The Selene Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <CLI11.hpp>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "selene/checkpoint.hpp"
#include "selene/cluster.hpp"
#include "selene/dataset_io.hpp"
#include "selene/errors.hpp"
#include "selene/graph.hpp"
#include "selene/gradcheck.hpp"
#include "selene/syngen.hpp"
#include "selene/trainer.hpp"

namespace selene::cli {
namespace fs = std::filesystem;
namespace {

std::string format_double(double x) {
  std::ostringstream os;
  os << std::setprecision(6) << x;
  return os.str();
}

void write_text(const fs::path& file, const std::string& text) {
  std::ofstream out(file);
  if (!out) throw IoError("cannot write " + file.string());
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

// Returns -1 when parsing succeeded, otherwise the exit code (0 for --help).
int parse_args(CLI::App& app, const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  std::vector<std::string> argv(args.rbegin(), args.rend());
  try {
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }
  return -1;
}

// Training flags shared by train-eval and sweep. Lists are comma-separated.
struct TrainFlags {
  TrainConfig cfg;
  std::string struct_activation = "relu";
  std::vector<std::uint64_t> eval_seeds = default_eval_seeds();
  int kmeans_init = 10;
  int restarts = 1;

  void bind(CLI::App& app) {
    app.add_option("--radius", cfg.radius, "Ego-network radius r")->capture_default_str();
    app.add_option("--hop-cap", cfg.hop_cap, "Max sampled nodes per hop")->capture_default_str();
    app.add_option("--batch-size", cfg.batch_size, "Nodes per optimizer step")
        ->capture_default_str();
    app.add_option("--epochs", cfg.epochs, "Training epochs")->capture_default_str();
    app.add_option("--lr", cfg.lr, "Adam learning rate")->capture_default_str();
    app.add_option("--px", cfg.p_x, "Feature-column mask probability")->capture_default_str();
    app.add_option("--pe", cfg.p_e, "Edge drop probability")->capture_default_str();
    app.add_option("--lambda", cfg.lambda, "Barlow-Twins redundancy weight")
        ->capture_default_str();
    app.add_option("--attr-dims", cfg.attr_hidden, "Attribute encoder widths after the input")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--struct-dims", cfg.struct_hidden, "Structure encoder widths after the input")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--struct-activation", struct_activation, "relu or sigmoid")
        ->capture_default_str();
    app.add_option("--seed", cfg.seed, "Training seed")->capture_default_str();
    app.add_option("--restarts", restarts, "Independent trainings; lowest final loss is kept")
        ->capture_default_str();
    app.add_option("--eval-seeds", eval_seeds, "K-means seeds for the evaluation protocol")
        ->delimiter(',')
        ->capture_default_str();
    app.add_option("--kmeans-init", kmeans_init, "K-means restarts per evaluation seed")
        ->capture_default_str();
    app.add_flag("--no-shuffle", [this](std::int64_t) { cfg.shuffle = false; },
                 "Visit nodes in id order every epoch");
    app.add_flag("--disable-attr-channel", cfg.ablation.disable_attr_channel);
    app.add_flag("--disable-struct-channel", cfg.ablation.disable_struct_channel);
    app.add_flag("--disable-rec-loss", cfg.ablation.disable_rec_loss);
    app.add_flag("--disable-bt-attr", cfg.ablation.disable_bt_attr);
    app.add_flag("--disable-bt-struct", cfg.ablation.disable_bt_struct);
  }

  // Throws ConfigError.
  void finalize() {
    cfg.struct_activation = parse_activation(struct_activation);
    if (cfg.struct_activation == Activation::kIdentity) {
      throw ConfigError("--struct-activation must be relu or sigmoid");
    }
    if (restarts < 1) throw ConfigError("--restarts must be >= 1");
    if (kmeans_init < 1) throw ConfigError("--kmeans-init must be >= 1");
    if (eval_seeds.empty()) throw ConfigError("--eval-seeds must not be empty");
    cfg.validate();
  }

  KMeansOptions kmeans() const { return KMeansOptions{.n_init = kmeans_init}; }
};

struct SynthFlags {
  SynthConfig cfg;

  void bind(CLI::App& app, bool with_pin_fraction) {
    app.add_option("--classes", cfg.num_classes, "Number of classes")->capture_default_str();
    app.add_option("--per-class", cfg.nodes_per_class, "Nodes per class")->capture_default_str();
    app.add_option("--davg", cfg.d_avg, "Target mean degree")->capture_default_str();
    if (with_pin_fraction) {
      app.add_option("--pin-frac", cfg.pin_fraction, "p_in as a fraction of delta")
          ->capture_default_str();
    }
    app.add_option("--center-radius", cfg.center_radius, "Radius of the class-center circle")
        ->capture_default_str();
    app.add_option("--center-std", cfg.center_std, "Feature noise standard deviation")
        ->capture_default_str();
  }
};

nlohmann::json synth_manifest(const SynthConfig& cfg, const Graph& g) {
  const EdgeProbs probs = derive_edge_probs(cfg);
  const HomophilyReport h = homophily_metrics(g);
  nlohmann::json config = {
      {"num_classes", cfg.num_classes},   {"nodes_per_class", cfg.nodes_per_class},
      {"d_avg", cfg.d_avg},               {"pin_fraction", cfg.pin_fraction},
      {"feature_dim", cfg.feature_dim},   {"center_radius", cfg.center_radius},
      {"center_std", cfg.center_std},     {"seed", cfg.seed},
  };
  return {
      {"config", config},
      {"delta", probs.delta},
      {"p_in", probs.p_in},
      {"p_out", probs.p_out},
      {"node_count", g.node_count()},
      {"edge_count", g.edge_count()},
      {"mean_degree", 2.0 * static_cast<double>(g.edge_count()) /
                          static_cast<double>(g.node_count())},
      {"expected_h_edge", expected_edge_homophily(cfg)},
      {"h_edge", h.h_edge},
      {"h_node", h.h_node},
  };
}

int cmd_syngen(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Generate a synthetic graph with a prescribed homophily level", "selene syngen");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  SynthFlags synth;
  synth.bind(app, true);
  std::string out_dir;
  app.add_option("--seed", synth.cfg.seed, "Generator seed")->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->required();
  if (const int code = parse_args(app, args, out, err); code >= 0) return code;

  const Graph g = generate_synthetic(synth.cfg);
  write_dataset(out_dir, g);
  const nlohmann::json manifest = synth_manifest(synth.cfg, g);
  write_text(fs::path(out_dir) / "manifest.json", manifest.dump(2));
  out << "wrote " << g.node_count() << " nodes, " << g.edge_count() << " edges to " << out_dir
      << "\n"
      << "h_edge " << format_double(manifest["h_edge"].get<double>()) << " (expected "
      << format_double(manifest["expected_h_edge"].get<double>()) << ")\n";
  return kOk;
}

int cmd_train_eval(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Train embeddings on a TSV dataset and evaluate K-means clustering",
               "selene train-eval");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  TrainFlags flags;
  flags.bind(app);
  std::string data_dir;
  std::string out_dir;
  app.add_option("--data", data_dir, "Dataset directory (edges.tsv, features.tsv, labels.tsv)")
      ->required();
  app.add_option("--out", out_dir, "Output directory")->required();
  if (const int code = parse_args(app, args, out, err); code >= 0) return code;
  flags.finalize();

  const Graph g = load_dataset(data_dir);
  const Graph unlabeled = g.without_labels();
  fs::create_directories(out_dir);

  const auto start = std::chrono::steady_clock::now();
  TrainResult trained = train_with_restarts(unlabeled, flags.cfg, flags.restarts);
  TrainConfig embed_cfg = flags.cfg;
  embed_cfg.seed = trained.seed;
  const Matrix z = embed_all(trained.model, unlabeled, embed_cfg);
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  write_matrix_tsv(fs::path(out_dir) / "embeddings.tsv", z);
  save_checkpoint(fs::path(out_dir) / "checkpoint.json", trained.model);
  {
    std::ofstream log(fs::path(out_dir) / "losses.tsv");
    log << "epoch\tloss\n";
    for (std::size_t e = 0; e < trained.epoch_losses.size(); ++e) {
      log << e + 1 << '\t' << std::setprecision(17) << trained.epoch_losses[e] << '\n';
    }
  }
  out << "trained " << trained.epoch_losses.size() << " epochs in " << format_double(seconds)
      << " s; embeddings " << z.rows() << "x" << z.cols() << "\n";

  if (!g.has_labels()) {
    out << "no labels.tsv; skipping clustering evaluation\n";
    return kOk;
  }
  const ClusterEvaluation eval =
      evaluate_clustering(z, g.labels(), g.num_classes(), flags.eval_seeds, flags.kmeans());
  write_text(fs::path(out_dir) / "metrics.json", metrics_json(eval));
  out << "ACC " << format_double(eval.mean.acc) << "  NMI " << format_double(eval.mean.nmi)
      << "  ARI " << format_double(eval.mean.ari) << "\n";
  return kOk;
}

struct Variant {
  std::string name;
  AblationFlags flags;
};

Variant parse_variant(const std::string& name) {
  Variant v{name, {}};
  if (name == "full") return v;
  if (name == "attr-only") {
    v.flags.disable_struct_channel = true;
    return v;
  }
  if (name == "struct-only") {
    v.flags.disable_attr_channel = true;
    return v;
  }
  throw ConfigError("unknown variant '" + name + "' (expected full, attr-only, struct-only)");
}

int cmd_sweep(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Homophily sweep over synthetic graphs and channel variants", "selene sweep");
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  SynthFlags synth;
  synth.bind(app, false);
  TrainFlags flags;
  flags.bind(app);
  std::string out_dir;
  std::vector<double> fractions = standard_pin_fractions();
  std::vector<std::string> variants = {"full", "attr-only", "struct-only"};
  std::vector<std::uint64_t> sweep_seeds = {1};
  app.add_option("--pin-fracs", fractions, "pin_fraction grid")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--variants", variants, "Variants to train")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--seeds", sweep_seeds, "Graph and training seeds; one sweep cell per seed")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--out", out_dir, "Output directory")->required();
  if (const int code = parse_args(app, args, out, err); code >= 0) return code;
  flags.finalize();

  std::vector<Variant> variant_list;
  for (const std::string& name : variants) variant_list.push_back(parse_variant(name));
  if (fractions.empty() || sweep_seeds.empty() || variant_list.empty()) {
    throw ConfigError("sweep: --pin-fracs, --seeds and --variants must be non-empty");
  }
  for (double f : fractions) {
    SynthConfig check = synth.cfg;
    check.pin_fraction = f;
    derive_edge_probs(check);
  }
  for (const Variant& v : variant_list) {
    TrainConfig check = flags.cfg;
    check.ablation = v.flags;
    check.validate();
  }

  fs::create_directories(out_dir);
  std::ofstream csv(fs::path(out_dir) / "results.csv");
  if (!csv) throw IoError("cannot write results.csv");
  csv << "pin_fraction,h_edge,variant,seed,acc,nmi,ari\n";
  csv << std::setprecision(10);
  for (std::uint64_t seed : sweep_seeds) {
    for (double f : fractions) {
      SynthConfig sc = synth.cfg;
      sc.pin_fraction = f;
      sc.seed = seed;
      const Graph g = generate_synthetic(sc);
      const double h = homophily_metrics(g).h_edge;
      for (const Variant& v : variant_list) {
        TrainConfig tc = flags.cfg;
        tc.seed = seed;
        const AblationOutcome r = ablation_run(g, tc, v.flags, flags.eval_seeds, flags.kmeans());
        const ClusterReport& m = r.evaluation.mean;
        csv << f << ',' << h << ',' << v.name << ',' << seed << ',' << m.acc << ',' << m.nmi
            << ',' << m.ari << '\n';
        csv.flush();
        out << "pin_frac " << format_double(f) << "  h " << format_double(h) << "  "
            << v.name << "  seed " << seed << "  ACC " << format_double(m.acc) << "  NMI "
            << format_double(m.nmi) << "  ARI " << format_double(m.ari) << "\n";
      }
    }
  }
  return kOk;
}

int cmd_gradcheck(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app("Finite-difference check of the full objective on a micro instance",
               "selene gradcheck");
  std::uint64_t seed = 0;
  GradCheckOptions options;
  app.add_option("--seed", seed, "Micro-instance seed")->capture_default_str();
  app.add_option("--tol", options.tol, "Max allowed relative error")->capture_default_str();
  app.add_option("--step", options.step, "Central-difference step")->capture_default_str();
  if (const int code = parse_args(app, args, out, err); code >= 0) return code;
  if (!(options.tol >= 0.0)) throw ConfigError("--tol must be >= 0");

  const MicroInstance micro = micro_instance(seed);
  options.seed = seed;
  const GradCheckReport report = check_objective_gradients(micro.graph, micro.config, options);
  std::ostringstream rel;
  rel << std::setprecision(17) << report.max_rel_error;
  out << (report.passed ? "PASS" : "FAIL") << " max_rel_error " << rel.str() << " over "
      << report.coords_checked << " coordinates (tol " << options.tol << ")\n";
  if (!report.passed) {
    out << "worst: " << report.worst_param << "[" << report.worst_index << "] analytic "
        << std::setprecision(17) << report.worst_analytic << " numeric " << report.worst_numeric
        << "\n";
    return kCheckFailed;
  }
  return kOk;
}

const char* kUsage =
    "usage: selene <command> [options]\n"
    "\n"
    "commands:\n"
    "  syngen      generate a synthetic graph dataset\n"
    "  train-eval  train embeddings and evaluate clustering\n"
    "  sweep       homophily sweep over synthetic graphs\n"
    "  gradcheck   finite-difference check of the objective\n"
    "\n"
    "run 'selene <command> --help' for command options\n";

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  if (args.empty() || args[0] == "--help" || args[0] == "-h") {
    (args.empty() ? err : out) << kUsage;
    return args.empty() ? kConfigError : kOk;
  }
  const std::string& command = args[0];
  const std::vector<std::string> rest(args.begin() + 1, args.end());
  try {
    if (command == "syngen") return cmd_syngen(rest, out, err);
    if (command == "train-eval") return cmd_train_eval(rest, out, err);
    if (command == "sweep") return cmd_sweep(rest, out, err);
    if (command == "gradcheck") return cmd_gradcheck(rest, out, err);
    err << "unknown command '" << command << "'\n" << kUsage;
    return kConfigError;
  } catch (const NumericError& e) {
    err << "selene " << command << ": numeric failure: " << e.what() << "\n";
    return kNumericError;
  } catch (const Error& e) {
    err << "selene " << command << ": " << e.what() << "\n";
    return kConfigError;
  } catch (const std::exception& e) {
    err << "selene " << command << ": " << e.what() << "\n";
    return kConfigError;
  }
}

}  // namespace selene::cli
