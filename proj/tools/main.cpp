// Command line front end: triplet generation, prior estimation, training,
// evaluation, the bound curve and the multi-trial benchmark.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcc/errors.hpp"
#include "tcc/eval.hpp"
#include "tcc/experiment.hpp"
#include "tcc/io.hpp"
#include "tcc/model.hpp"
#include "tcc/prior.hpp"
#include "tcc/train.hpp"

namespace {

using nlohmann::json;

std::uint64_t default_seed() {
  const char* env = std::getenv("TCC_SEED");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw std::invalid_argument("TCC_SEED must be an unsigned integer");
  }
  return value;
}

// "mu+;mu-;sigma", e.g. "1,1;-1,-1;1.0"
tcc::GaussianSpec parse_gaussian_spec(const std::string& text) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t semi = text.find(';', start);
    if (semi == std::string::npos) {
      parts.push_back(text.substr(start));
      break;
    }
    parts.push_back(text.substr(start, semi - start));
    start = semi + 1;
  }
  if (parts.size() != 3) {
    throw std::invalid_argument(
        "--gaussian expects \"mu_plus;mu_minus;sigma\", e.g. \"1,1;-1,-1;1.0\"");
  }
  auto parse_vector = [](const std::string& s) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos <= s.size()) {
      const std::size_t comma = s.find(',', pos);
      const std::string tok = s.substr(
          pos, comma == std::string::npos ? std::string::npos : comma - pos);
      try {
        std::size_t used = 0;
        v.push_back(std::stod(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("--gaussian: bad number '" + tok + "'");
      }
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
    return v;
  };
  tcc::GaussianSpec spec;
  spec.mu_plus = parse_vector(parts[0]);
  spec.mu_minus = parse_vector(parts[1]);
  const std::vector<double> sigma = parse_vector(parts[2]);
  if (sigma.size() != 1) {
    throw std::invalid_argument("--gaussian: sigma must be one number");
  }
  spec.sigma = sigma[0];
  return spec;
}

std::vector<tcc::LossKind> parse_loss_list(const std::string& text) {
  std::vector<tcc::LossKind> losses;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string tok = text.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!tok.empty()) losses.push_back(tcc::parse_loss_kind(tok));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return losses;
}

// Every run prints its fully resolved configuration; runs that write files
// also record it next to the output.
void emit_config(const json& config, const std::string& out_path) {
  std::cout << "config " << config.dump() << "\n";
  if (!out_path.empty()) {
    std::ofstream sidecar(out_path + ".run.json");
    if (!sidecar) throw tcc::DataError(out_path + ".run.json: cannot write");
    sidecar << config.dump(2) << "\n";
  }
}

struct GenArgs {
  std::string gaussian, data, out;
  double prior = -1.0;
  std::size_t triplets = 0;
  std::uint64_t seed = 0;
  bool without_replacement = false;
};

int run_gen(const GenArgs& args) {
  if (args.gaussian.empty() == args.data.empty()) {
    throw std::invalid_argument("gen needs exactly one of --gaussian or --data");
  }
  std::unique_ptr<tcc::LabeledSource> source;
  if (!args.gaussian.empty()) {
    if (args.prior < 0.0) throw std::invalid_argument("--gaussian requires --prior");
    tcc::GaussianSpec spec = parse_gaussian_spec(args.gaussian);
    spec.pi_plus = args.prior;
    source = std::make_unique<tcc::GaussianSource>(spec);
  } else {
    auto pool = tcc::load_labeled_csv(args.data);
    if (args.prior >= 0.0) {
      source = std::make_unique<tcc::PoolSource>(std::move(pool), args.prior,
                                                 !args.without_replacement);
    } else {
      source = std::make_unique<tcc::PoolSource>(std::move(pool),
                                                 !args.without_replacement);
    }
  }

  emit_config({{"command", "gen"},
               {"gaussian", args.gaussian},
               {"data", args.data},
               {"prior", args.prior},
               {"triplets", args.triplets},
               {"seed", args.seed},
               {"without_replacement", args.without_replacement},
               {"out", args.out}},
              args.out);

  const tcc::TripletDataset dataset =
      tcc::generate_triplets(*source, args.triplets, args.seed);
  tcc::save_triplets_jsonl(dataset, args.out);

  std::cout << "n1 " << dataset.keep.size() << "\n";
  std::cout << "n2 " << dataset.flip.size() << "\n";
  if (dataset.size() > 0) {
    const double pi_t =
        tcc::estimate_pi_t(dataset.keep.size(), dataset.flip.size());
    std::cout << "pi_t_hat " << tcc::format_double(pi_t) << "\n";
    try {
      std::cout << "pi_plus_hat "
                << tcc::format_double(tcc::prior_from_pi_t(pi_t)) << "\n";
    } catch (const tcc::NumericalError&) {
      std::cout << "pi_plus_hat nan\n";  // counts inconsistent with the model
    }
  }
  return 0;
}

int run_estimate_prior(const std::string& triplets_path) {
  emit_config({{"command", "estimate-prior"}, {"triplets", triplets_path}}, "");
  const tcc::TripletDataset dataset = tcc::load_triplets_jsonl(triplets_path);
  const double pi_t =
      tcc::estimate_pi_t(dataset.keep.size(), dataset.flip.size());
  std::cout << "n1 " << dataset.keep.size() << "\n";
  std::cout << "n2 " << dataset.flip.size() << "\n";
  std::cout << "pi_t_hat " << tcc::format_double(pi_t) << "\n";
  std::cout << "pi_plus_hat " << tcc::format_double(tcc::prior_from_pi_t(pi_t))
            << "\n";
  return 0;
}

struct TrainArgs {
  std::string triplets, out;
  std::string loss = "double-hinge";
  std::string model = "linear";
  std::size_t hidden = 100;
  std::size_t epochs = 200;
  double lr = 1e-3;
  std::size_t batch = 0;
  std::uint64_t seed = 0;
  double prior = -1.0;
  double pi_test = -1.0;
  double guard = tcc::kDefaultSingularGuard;
  bool floor_risk = false;
};

int run_train(const TrainArgs& args) {
  tcc::TrainConfig config;
  config.loss = tcc::parse_loss_kind(args.loss);
  config.model = tcc::parse_model_kind(args.model);
  config.hidden_width = args.hidden;
  config.epochs = args.epochs;
  config.learning_rate = args.lr;
  config.batch_size = args.batch;
  config.seed = args.seed;
  if (args.prior >= 0.0) config.pi_plus = args.prior;
  if (args.pi_test >= 0.0) config.pi_test = args.pi_test;
  config.singularity_guard = args.guard;
  config.floor_risk_at_zero = args.floor_risk;

  emit_config(
      {{"command", "train"},
       {"triplets", args.triplets},
       {"loss", args.loss},
       {"model", args.model},
       {"hidden_width", args.hidden},
       {"epochs", args.epochs},
       {"learning_rate", args.lr},
       {"batch_size", args.batch},
       {"seed", args.seed},
       {"prior", args.prior >= 0.0 ? json(args.prior) : json("estimate")},
       {"pi_test", args.pi_test >= 0.0 ? json(args.pi_test) : json("train prior")},
       {"guard", args.guard},
       {"floor_risk", args.floor_risk},
       {"out", args.out}},
      args.out);

  const tcc::TripletDataset dataset = tcc::load_triplets_jsonl(args.triplets);
  const tcc::PointwiseBags bags = tcc::aggregate_pointwise(dataset);
  const tcc::TrainResult result = tcc::train(bags, config);
  tcc::save_model(result.model, args.out);

  std::cout << "pi_plus " << tcc::format_double(result.pi_plus) << "\n";
  std::cout << "pi_test " << tcc::format_double(result.pi_test) << "\n";
  if (!result.risk_trace.empty()) {
    std::cout << "risk_final " << tcc::format_double(result.risk_trace.back())
              << "\n";
  }
  std::cout << "epochs " << args.epochs << "\n";
  return 0;
}

int run_eval(const std::string& model_path, const std::string& test_path) {
  emit_config({{"command", "eval"}, {"model", model_path}, {"test", test_path}},
              "");
  const tcc::Model model = tcc::load_model(model_path);
  const auto test = tcc::load_labeled_csv(test_path);
  const double accuracy = tcc::classification_accuracy(model, test);
  std::cout << "n_test " << test.size() << "\n";
  std::cout << "accuracy " << tcc::format_double(accuracy) << "\n";
  return 0;
}

struct CurveArgs {
  double from = 0.0, to = 0.0, step = 0.0;
  double pi_test = -1.0;
  double guard = tcc::kDefaultSingularGuard;
  std::string out;
};

int run_bound_curve(const CurveArgs& args) {
  emit_config({{"command", "bound-curve"},
               {"from", args.from},
               {"to", args.to},
               {"step", args.step},
               {"pi_test",
                args.pi_test >= 0.0 ? json(args.pi_test) : json("same as prior")},
               {"guard", args.guard},
               {"out", args.out}},
              args.out);

  std::optional<double> pi_test;
  if (args.pi_test >= 0.0) pi_test = args.pi_test;
  const auto rows = tcc::bound_curve(
      tcc::prior_grid(args.from, args.to, args.step), pi_test, args.guard);
  std::ofstream out(args.out);
  if (!out) throw tcc::DataError(args.out + ": cannot open file for writing");
  tcc::write_bound_curve_csv(out, rows);
  std::cout << "rows " << rows.size() << "\n";
  return 0;
}

struct ExperimentArgs {
  std::string gaussian, data, out;
  double prior = 0.7;
  std::size_t triplets = 1000;
  std::size_t trials = 20;
  std::string losses = "squared,double-hinge";
  bool kmeans = false;
  std::string model = "linear";
  std::size_t hidden = 100;
  std::size_t epochs = 200;
  double lr = 1e-3;
  std::size_t batch = 0;
  std::size_t test_size = 1000;
  bool no_standardize = false;
  std::uint64_t seed = 0;
};

int run_experiment(const ExperimentArgs& args) {
  if (args.gaussian.empty() == args.data.empty()) {
    throw std::invalid_argument(
        "experiment needs exactly one of --gaussian or --data");
  }
  tcc::ExperimentConfig config;
  if (!args.gaussian.empty()) {
    config.gaussian = parse_gaussian_spec(args.gaussian);
  } else {
    config.pool = tcc::load_labeled_csv(args.data);
  }
  config.pi_plus = args.prior;
  config.triplet_count = args.triplets;
  config.trials = args.trials;
  config.losses = parse_loss_list(args.losses);
  config.kmeans_baseline = args.kmeans;
  config.train.model = tcc::parse_model_kind(args.model);
  config.train.hidden_width = args.hidden;
  config.train.epochs = args.epochs;
  config.train.learning_rate = args.lr;
  config.train.batch_size = args.batch;
  config.test_size = args.test_size;
  config.standardize = !args.no_standardize;
  config.seed = args.seed;

  emit_config({{"command", "experiment"},
               {"gaussian", args.gaussian},
               {"data", args.data},
               {"prior", args.prior},
               {"triplets", args.triplets},
               {"trials", args.trials},
               {"losses", args.losses},
               {"kmeans", args.kmeans},
               {"model", args.model},
               {"hidden_width", args.hidden},
               {"epochs", args.epochs},
               {"learning_rate", args.lr},
               {"batch_size", args.batch},
               {"test_size", args.test_size},
               {"standardize", !args.no_standardize},
               {"seed", args.seed},
               {"out", args.out}},
              args.out);

  const auto reports = tcc::experiment_run(config);
  std::cout << tcc::format_report_table(reports);
  if (!args.out.empty()) {
    std::ofstream out(args.out);
    if (!out) throw tcc::DataError(args.out + ": cannot open file for writing");
    tcc::write_report_csv(out, reports);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Binary classification from passively collected triplet comparisons"};
  app.require_subcommand(1);

  GenArgs gen;
  TrainArgs train_args;
  CurveArgs curve;
  ExperimentArgs experiment;
  std::string estimate_triplets, eval_model, eval_test;

  try {
    const std::uint64_t seed0 = default_seed();
    gen.seed = train_args.seed = experiment.seed = seed0;
  } catch (const std::exception& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  }

  CLI::App* c_gen = app.add_subcommand("gen", "Generate a triplet comparison file");
  c_gen->add_option("--gaussian", gen.gaussian,
                    "Gaussian source \"mu_plus;mu_minus;sigma\"");
  c_gen->add_option("--data", gen.data, "Labeled CSV pool to draw from");
  c_gen->add_option("--prior", gen.prior, "Class prior pi+ of the generated labels");
  c_gen->add_option("--triplets", gen.triplets, "Number of triplets")->required();
  c_gen->add_option("--seed", gen.seed, "Master seed (default $TCC_SEED or 0)");
  c_gen->add_option("--out", gen.out, "Output JSONL path")->required();
  c_gen->add_flag("--without-replacement", gen.without_replacement,
                  "Pool draws without replacement (off-theory)");

  CLI::App* c_est = app.add_subcommand(
      "estimate-prior", "Estimate pi_t and pi+ from a triplet file");
  c_est->add_option("--triplets", estimate_triplets, "Triplet JSONL path")
      ->required();

  CLI::App* c_train = app.add_subcommand("train", "Train a classifier on triplets");
  c_train->add_option("--triplets", train_args.triplets, "Triplet JSONL path")
      ->required();
  c_train->add_option("--loss", train_args.loss, "squared | double-hinge | logistic");
  c_train->add_option("--model", train_args.model, "linear | mlp1");
  c_train->add_option("--hidden", train_args.hidden, "Hidden width for mlp1");
  c_train->add_option("--epochs", train_args.epochs, "Training epochs");
  c_train->add_option("--lr", train_args.lr, "Learning rate");
  c_train->add_option("--batch", train_args.batch, "Batch size, 0 = full batch");
  c_train->add_option("--seed", train_args.seed, "Seed (default $TCC_SEED or 0)");
  c_train->add_option("--prior", train_args.prior,
                      "Known pi+; omitted means estimate from counts");
  c_train->add_option("--pi-test", train_args.pi_test,
                      "Test prior when it differs from pi+");
  c_train->add_option("--guard", train_args.guard, "Singularity guard around 0.5");
  c_train->add_flag("--floor-risk", train_args.floor_risk,
                    "Clamp the training objective at zero");
  c_train->add_option("--out", train_args.out, "Model JSON path")->required();

  CLI::App* c_eval = app.add_subcommand("eval", "Evaluate a model on labeled CSV");
  c_eval->add_option("--model", eval_model, "Model JSON path")->required();
  c_eval->add_option("--test", eval_test, "Labeled CSV path")->required();

  CLI::App* c_curve = app.add_subcommand(
      "bound-curve", "Error-bound coefficient over a prior grid");
  c_curve->add_option("--from", curve.from, "Grid start")->required();
  c_curve->add_option("--to", curve.to, "Grid end")->required();
  c_curve->add_option("--step", curve.step, "Grid step")->required();
  c_curve->add_option("--pi-test", curve.pi_test, "Fixed test prior");
  c_curve->add_option("--guard", curve.guard, "Singularity guard around 0.5");
  c_curve->add_option("--out", curve.out, "Output CSV path")->required();

  CLI::App* c_exp = app.add_subcommand("experiment", "Multi-trial benchmark");
  c_exp->add_option("--gaussian", experiment.gaussian,
                    "Gaussian source \"mu_plus;mu_minus;sigma\"");
  c_exp->add_option("--data", experiment.data, "Labeled CSV pool");
  c_exp->add_option("--prior", experiment.prior, "Generation prior pi+");
  c_exp->add_option("--triplets", experiment.triplets, "Triplets per trial");
  c_exp->add_option("--trials", experiment.trials, "Number of trials");
  c_exp->add_option("--losses", experiment.losses, "Comma-separated loss list");
  c_exp->add_flag("--kmeans", experiment.kmeans, "Include the k-means baseline");
  c_exp->add_option("--model", experiment.model, "linear | mlp1");
  c_exp->add_option("--hidden", experiment.hidden, "Hidden width for mlp1");
  c_exp->add_option("--epochs", experiment.epochs, "Training epochs");
  c_exp->add_option("--lr", experiment.lr, "Learning rate");
  c_exp->add_option("--batch", experiment.batch, "Batch size, 0 = full batch");
  c_exp->add_option("--test-size", experiment.test_size,
                    "Held-out examples per trial");
  c_exp->add_flag("--no-standardize", experiment.no_standardize,
                  "Skip feature standardization");
  c_exp->add_option("--seed", experiment.seed, "Seed (default $TCC_SEED or 0)");
  c_exp->add_option("--out", experiment.out, "Report CSV path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (c_gen->parsed()) return run_gen(gen);
    if (c_est->parsed()) return run_estimate_prior(estimate_triplets);
    if (c_train->parsed()) return run_train(train_args);
    if (c_eval->parsed()) return run_eval(eval_model, eval_test);
    if (c_curve->parsed()) return run_bound_curve(curve);
    if (c_exp->parsed()) return run_experiment(experiment);
  } catch (const tcc::DataError& e) {
    std::cerr << "error: data: " << e.what() << "\n";
    return 3;
  } catch (const tcc::NumericalError& e) {
    std::cerr << "error: numerical: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: usage: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
