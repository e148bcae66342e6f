// Command-line front end: train models, sweep noise scales, compare
// architectures, generate datasets, and plot CSV artifacts.
//
// Exit codes: 0 success, 1 usage/config error, 2 runtime failure.

#include <exception>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "config.hpp"
#include "runner.hpp"
#include "svg_plot.hpp"

namespace {

using qmlp::harness::ConfigError;
using qmlp::harness::ExperimentConfig;

struct CommonFlags {
  std::string config_path;
  std::string out_dir;
  std::string seeds;
  std::string scales;
  std::optional<int> shots;
};

// Config file first, then flag overrides.
ExperimentConfig resolve_config(const CommonFlags& flags) {
  ExperimentConfig config;
  if (!flags.config_path.empty()) {
    config = qmlp::harness::parse_config_file(flags.config_path);
  }
  if (!flags.out_dir.empty()) config.out_dir = flags.out_dir;
  if (!flags.seeds.empty()) config.training.seeds = qmlp::harness::parse_seed_list(flags.seeds);
  if (!flags.scales.empty()) {
    config.noise_sweep.scales = qmlp::harness::parse_scale_list(flags.scales);
  }
  if (flags.shots.has_value()) config.noise_sweep.shots = flags.shots;
  return config;
}

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "experiment config JSON");
  cmd->add_option("--out", flags.out_dir, "output directory");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hybrid quantum-classical classifier toolkit"};
  app.require_subcommand(1);

  CommonFlags train_flags;
  std::string train_family, train_iris, train_arch, train_layers;
  std::optional<int> train_epochs, train_batch, train_spc;
  std::optional<double> train_lr;
  std::optional<std::uint64_t> train_data_seed;
  CLI::App* train_cmd = app.add_subcommand("train", "train one model per seed");
  add_common_flags(train_cmd, train_flags);
  train_cmd->add_option("--seeds", train_flags.seeds, "comma-separated training seeds");
  train_cmd->add_option("--family", train_family, "synthetic dataset family");
  train_cmd->add_option("--iris", train_iris, "path to an iris CSV");
  train_cmd->add_option("--arch", train_arch, "QMLP or DeepQMLP");
  train_cmd->add_option("--layers", train_layers, "comma-separated L per hidden layer");
  train_cmd->add_option("--epochs", train_epochs, "training epochs");
  train_cmd->add_option("--batch-size", train_batch, "mini-batch size");
  train_cmd->add_option("--learning-rate", train_lr, "Adagrad initial learning rate");
  train_cmd->add_option("--samples-per-class", train_spc, "synthetic samples per class");
  train_cmd->add_option("--data-seed", train_data_seed, "synthetic generation seed");

  CommonFlags sweep_flags;
  std::vector<std::string> sweep_models;
  std::optional<double> sweep_p1, sweep_p2;
  CLI::App* sweep_cmd = app.add_subcommand("noise-sweep", "evaluate models across noise scales");
  add_common_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--models", sweep_models, "model JSON files")->required();
  sweep_cmd->add_option("--scales", sweep_flags.scales, "comma-separated noise scales");
  sweep_cmd->add_option("--shots", sweep_flags.shots, "samples per expectation");
  sweep_cmd->add_option("--p1", sweep_p1, "nominal single-qubit gate error");
  sweep_cmd->add_option("--p2", sweep_p2, "nominal two-qubit gate error");

  CommonFlags cmp_flags;
  std::vector<std::string> cmp_qmlp, cmp_deep;
  CLI::App* cmp_cmd = app.add_subcommand("compare", "paired QMLP vs DeepQMLP noise report");
  add_common_flags(cmp_cmd, cmp_flags);
  cmp_cmd->add_option("--qmlp", cmp_qmlp, "QMLP model files")->required();
  cmp_cmd->add_option("--deepqmlp", cmp_deep, "DeepQMLP model files")->required();
  cmp_cmd->add_option("--scales", cmp_flags.scales, "comma-separated noise scales");

  std::string gen_family, gen_out;
  int gen_spc = 90;
  std::uint64_t gen_seed = 7;
  CLI::App* gen_cmd = app.add_subcommand("gen-data", "write a synthetic dataset CSV");
  gen_cmd->add_option("--family", gen_family, "R1_sq, P1_sq, R2_sq, or P2_sq")->required();
  gen_cmd->add_option("--samples-per-class", gen_spc, "points per class");
  gen_cmd->add_option("--seed", gen_seed, "generation seed");
  gen_cmd->add_option("--out-file", gen_out, "destination CSV")->required();

  std::string plot_in, plot_out;
  CLI::App* plot_cmd = app.add_subcommand("plot", "render a history or sweep CSV as SVG");
  plot_cmd->add_option("--input", plot_in, "history or sweep CSV")->required();
  plot_cmd->add_option("--out-file", plot_out, "destination SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (train_cmd->parsed()) {
      ExperimentConfig config = resolve_config(train_flags);
      if (!train_family.empty() && !train_iris.empty()) {
        throw ConfigError("--family and --iris are mutually exclusive");
      }
      if (!train_family.empty()) {
        config.dataset.iris_path.clear();
        config.dataset.synthetic.family = qmlp::synthetic_family_from_name(train_family);
        config.dataset.synthetic.samples_per_class =
            train_spc.value_or(qmlp::synthetic_class_count(config.dataset.synthetic.family) == 2
                                   ? 90
                                   : 60);
      } else if (!train_iris.empty()) {
        config.dataset.iris_path = train_iris;
      } else if (train_flags.config_path.empty()) {
        throw ConfigError("train needs --config, --family, or --iris");
      }
      if (train_spc.has_value()) config.dataset.synthetic.samples_per_class = *train_spc;
      if (train_data_seed.has_value()) config.dataset.synthetic.seed = *train_data_seed;
      if (!train_arch.empty()) config.architecture.type = train_arch;
      if (!train_layers.empty()) {
        config.architecture.layers.clear();
        for (std::uint64_t v : qmlp::harness::parse_seed_list(train_layers)) {
          config.architecture.layers.push_back(static_cast<int>(v));
        }
      }
      if (train_epochs.has_value()) config.training.epochs = *train_epochs;
      if (train_batch.has_value()) config.training.batch_size = *train_batch;
      if (train_lr.has_value()) config.training.learning_rate = *train_lr;
      qmlp::harness::validate_config(config);
      const auto artifacts = qmlp::harness::cmd_train(config);
      for (const auto& artifact : artifacts) {
        std::cout << artifact.model_id << " final_loss="
                  << (artifact.history.empty() ? 0.0 : artifact.history.back().loss)
                  << " final_accuracy="
                  << (artifact.history.empty() ? 0.0 : artifact.history.back().accuracy) << "\n";
      }
    } else if (sweep_cmd->parsed()) {
      ExperimentConfig config = resolve_config(sweep_flags);
      if (sweep_p1.has_value()) config.noise_sweep.p1 = *sweep_p1;
      if (sweep_p2.has_value()) config.noise_sweep.p2 = *sweep_p2;
      qmlp::harness::validate_config(config);
      const std::string out_csv = config.out_dir + "/sweep.csv";
      qmlp::harness::cmd_noise_sweep(sweep_models, config, out_csv);
      std::cout << out_csv << "\n";
    } else if (cmp_cmd->parsed()) {
      ExperimentConfig config = resolve_config(cmp_flags);
      qmlp::harness::validate_config(config);
      const std::string out_json = config.out_dir + "/comparison.json";
      qmlp::harness::cmd_compare(cmp_qmlp, cmp_deep, config, out_json);
      std::cout << out_json << "\n";
    } else if (gen_cmd->parsed()) {
      qmlp::harness::cmd_gen_data(gen_family, gen_spc, gen_seed, gen_out);
      std::cout << gen_out << "\n";
    } else if (plot_cmd->parsed()) {
      qmlp::harness::cmd_plot(plot_in, plot_out);
      std::cout << plot_out << "\n";
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
