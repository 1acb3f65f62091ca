#include "nppe/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "nppe/matrix_io.hpp"
#include "nppe/model_io.hpp"

#ifndef NPPE_VERSION
#define NPPE_VERSION "unknown"
#endif

namespace nppe::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create directory " + dir.string() + ": " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw Error(ErrorCode::IoError, "write failed: " + path.string());
}

void write_manifest(const fs::path& path, const std::string& command, json config,
                    const std::vector<fs::path>& outputs) {
  json j;
  j["format_version"] = kManifestVersion;
  j["tool"] = "nppe";
  j["version"] = NPPE_VERSION;
  j["command"] = command;
  j["config"] = std::move(config);
  json files = json::array();
  for (const auto& p : outputs) files.push_back(p.filename().string());
  j["outputs"] = files;
  write_text(path, j.dump(2) + "\n");
}

fs::path sibling_manifest(const fs::path& output) {
  return fs::path(output.string() + ".manifest.json");
}

json settings_json(const FitSettings& s, Index resolved_k) {
  return json{{"k", resolved_k},
              {"k_default", !s.k.has_value()},
              {"p", s.degree},
              {"mode", std::string(to_string(s.mode))},
              {"m", s.dims},
              {"reg", s.reg},
              {"ridge", s.ridge},
              {"center", s.center},
              {"candidate_slack", s.candidate_slack}};
}

std::string eigenvalue_lines(const Eigen::VectorXd& values) {
  std::string text;
  for (Index i = 0; i < values.size(); ++i) text += format_double(values(i)) + "\n";
  return text;
}

// Fit flags shared by `fit` and `pipeline`.
struct FitFlags {
  Index k = 0;
  int degree = 2;
  std::string mode = "hadamard";
  Index dims = 2;
  double reg = kDefaultGramReg;
  double ridge = linalg::kDefaultRidge;
  bool no_center = false;
  Index slack = 5;
  CLI::Option* k_opt = nullptr;
  CLI::Option* mode_opt = nullptr;

  void attach(CLI::App* app) {
    k_opt = app->add_option("--k", k, "neighbors per sample (default: 1% of N, at least 2)")
                ->check(CLI::PositiveNumber);
    app->add_option("--p", degree, "polynomial degree")->check(CLI::PositiveNumber);
    mode_opt = app->add_option("--mode", mode, "lifting: hadamard or kronecker");
    app->add_option("--m", dims, "embedding dimension")->check(CLI::PositiveNumber);
    app->add_option("--reg", reg, "local Gram regularization (relative to its trace)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--ridge", ridge, "ridge added to the constraint matrix (relative)")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--no-center", no_center, "do not subtract the training mean before lifting");
    app->add_option("--slack", slack, "extra eigenpairs solved for filtering")
        ->check(CLI::NonNegativeNumber);
  }

  FitSettings resolve() const {
    FitSettings s;
    if (*k_opt) s.k = k;
    s.degree = degree;
    s.mode = parse_lift_mode(mode);
    s.dims = dims;
    s.reg = reg;
    s.ridge = ridge;
    s.center = !no_center;
    s.candidate_slack = slack;
    return s;
  }
};

// "snppe" is nppe with Hadamard lifting.
Method resolve_method(const std::string& name, FitFlags& flags) {
  const Method method = parse_method(name);
  if (name == "snppe") {
    if (*flags.mode_opt && parse_lift_mode(flags.mode) != LiftMode::Hadamard) {
      throw Error(ErrorCode::InvalidArgument, "snppe always uses hadamard lifting");
    }
    flags.mode = "hadamard";
  }
  return method;
}

void log_diagnostics(std::ostream& out, const FitOutcome& fit) {
  out << "method " << to_string(fit.method) << ", k = " << fit.k << "\n";
  if (fit.diagnostics) {
    const auto& d = *fit.diagnostics;
    out << "constraint error " << format_double(d.constraint_error)
        << (d.constraint_error <= 1e-6 ? " (ok)" : " (above 1e-6)") << "\n";
    out << "max scaled residual " << format_double(d.max_residual) << "\n";
    out << "discarded near-constant pairs " << d.discarded_pairs << "\n";
  }
  out << "eigenvalues";
  for (Index i = 0; i < fit.embedding.eigenvalues.size(); ++i) {
    out << ' ' << format_double(fit.embedding.eigenvalues(i));
  }
  out << "\n";
}

// ---- generate

struct GenerateCmd {
  std::string manifold;
  Index n = 1000;
  std::uint64_t seed = 1;
  std::string out_dir = ".";
  std::string format = "csv";

  void attach(CLI::App* app) {
    app->add_option("manifold", manifold, "swissroll, swisshole or gaussian")->required();
    app->add_option("--n", n, "number of samples");
    app->add_option("--seed", seed, "random seed");
    app->add_option("--out-dir", out_dir, "output directory");
    app->add_option("--format", format, "csv or pemb")->check(CLI::IsMember({"csv", "pemb"}));
  }

  void run(std::ostream& out) const {
    if (n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
    const auto name = datasets::parse_manifold(manifold);
    const auto sample = datasets::generate(name, n, seed);
    ensure_dir(out_dir);
    const fs::path x_path = fs::path(out_dir) / ("X." + format);
    const fs::path z_path = fs::path(out_dir) / ("Z." + format);
    save_matrix(x_path, sample.ambient);
    save_matrix(z_path, sample.generating);
    write_manifest(fs::path(out_dir) / "manifest.json", "generate",
                   {{"manifold", std::string(datasets::to_string(name))}, {"n", n}, {"seed", seed},
                    {"format", format}},
                   {x_path, z_path});
    out << "wrote " << n << " samples to " << x_path.string() << " and " << z_path.string() << "\n";
  }
};

// ---- fit

struct FitCmd {
  std::string method;
  std::string in;
  std::string out_dir = ".";
  FitFlags flags;

  void attach(CLI::App* app) {
    app->add_option("method", method, "nppe, snppe, npp, onpp or lle")->required();
    app->add_option("--in", in, "training samples (CSV or PEMB)")->required();
    app->add_option("--out-dir", out_dir, "output directory");
    flags.attach(app);
  }

  void run(std::ostream& out) {
    const Method m = resolve_method(method, flags);
    const FitSettings settings = flags.resolve();
    const DataMatrix x = load_matrix(in);
    const FitOutcome fit = fit_method(m, x, settings);

    ensure_dir(out_dir);
    const fs::path dir(out_dir);
    std::vector<fs::path> outputs{dir / "embedding.csv", dir / "eigenvalues.csv"};
    save_matrix(outputs[0], fit.embedding.coordinates);
    write_text(outputs[1], eigenvalue_lines(fit.embedding.eigenvalues));
    if (fit.model) {
      outputs.push_back(dir / "model.json");
      save_model(outputs.back(), *fit.model);
    }
    json config = settings_json(settings, fit.k);
    config["method"] = method;
    config["input"] = in;
    config["n_samples"] = x.cols();
    config["input_dim"] = x.rows();
    write_manifest(dir / "manifest.json", "fit", std::move(config), outputs);
    log_diagnostics(out, fit);
    if (!fit.model) out << "lle has no explicit map; no model file written\n";
  }
};

// ---- transform

struct TransformCmd {
  std::string model;
  std::string in;
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "model JSON written by fit")->required();
    app->add_option("--in", in, "samples to map")->required();
    app->add_option("--out", output, "output coordinates")->required();
  }

  void run(std::ostream& out) const {
    const ExplicitModel m = load_model(model);
    const DataMatrix x = load_matrix(in);
    const Eigen::MatrixXd y = transform(m, x);
    save_matrix(output, y);
    write_manifest(sibling_manifest(output), "transform",
                   {{"model", model}, {"input", in}, {"method", std::string(to_string(method_of(m)))}},
                   {fs::path(output)});
    out << "mapped " << x.cols() << " samples to " << output << "\n";
  }
};

// ---- eval

struct EvalCmd {
  std::string truth;
  std::vector<std::string> embeddings;
  std::string variant = "distance";
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("--truth", truth, "generating coordinates")->required();
    app->add_option("--embedding", embeddings, "[label=]path, repeatable")->required();
    app->add_option("--variant", variant, "distance or entries");
    app->add_option("--out", output, "metrics CSV (default: stdout)");
  }

  void run(std::ostream& out) const {
    const auto v = metrics::parse_variant(variant);
    const Eigen::MatrixXd z = load_matrix(truth);
    std::ostringstream table;
    table << "method,variant,rho\n";
    for (const auto& spec : embeddings) {
      std::string label;
      std::string path = spec;
      if (const auto eq = spec.find('='); eq != std::string::npos) {
        label = spec.substr(0, eq);
        path = spec.substr(eq + 1);
      } else {
        label = fs::path(path).stem().string();
      }
      const Eigen::MatrixXd y = load_matrix(path);
      const auto report = metrics::residual_variance(y, z, v);
      table << label << ',' << to_string(v) << ',' << format_double(report.rho) << '\n';
    }
    if (output.empty()) {
      out << table.str();
    } else {
      write_text(output, table.str());
      write_manifest(sibling_manifest(output), "eval",
                     {{"truth", truth}, {"embeddings", embeddings}, {"variant", std::string(to_string(v))}},
                     {fs::path(output)});
      out << table.str();
    }
  }
};

// ---- bench

struct BenchCmd {
  std::string model;
  std::string in;
  std::string output;
  std::vector<Index> batches;
  Index step = 500;
  int repeats = metrics::kDefaultRepeats;
  int threads = 1;

  void attach(CLI::App* app) {
    app->add_option("--model", model, "model JSON written by fit")->required();
    app->add_option("--in", in, "test samples")->required();
    app->add_option("--out", output, "timing CSV")->required();
    app->add_option("--batches", batches, "comma separated batch sizes")->delimiter(',');
    app->add_option("--step", step, "batch step when --batches is not given")->check(CLI::PositiveNumber);
    app->add_option("--repeats", repeats, "timed repetitions per batch")->check(CLI::PositiveNumber);
    app->add_option("--threads", threads, "must be 1");
  }

  void run(std::ostream& out) {
    if (threads != 1) {
      throw Error(ErrorCode::InvalidArgument, "bench runs single-threaded only; got --threads " +
                                                  std::to_string(threads));
    }
    const ExplicitModel m = load_model(model);
    const DataMatrix x = load_matrix(in);
    if (batches.empty()) {
      for (Index b = step; b <= x.cols(); b += step) batches.push_back(b);
      if (batches.empty()) {
        throw Error(ErrorCode::InvalidArgument, "input has fewer samples than one batch step");
      }
    }
    const auto report = metrics::time_transform(m, x, batches, repeats);
    std::ostringstream table;
    table << "batch_size,seconds,seconds_per_sample\n";
    std::vector<double> sizes;
    for (std::size_t i = 0; i < report.batch_sizes.size(); ++i) {
      const auto b = static_cast<double>(report.batch_sizes[i]);
      sizes.push_back(b);
      table << report.batch_sizes[i] << ',' << format_double(report.seconds[i]) << ','
            << format_double(report.seconds[i] / b) << '\n';
    }
    write_text(output, table.str());
    write_manifest(sibling_manifest(output), "bench",
                   {{"model", model}, {"input", in}, {"batches", report.batch_sizes},
                    {"repeats", repeats}, {"threads", threads}},
                   {fs::path(output)});
    out << table.str();
    if (sizes.size() >= 2) {
      out << "linear fit R^2 " << format_double(metrics::linear_fit_r2(sizes, report.seconds)) << "\n";
    }
  }
};

// ---- plot

struct PlotCmd {
  std::string in;
  std::string color;
  Index color_column = 0;
  std::string output;

  void attach(CLI::App* app) {
    app->add_option("--in", in, "2-column embedding")->required();
    app->add_option("--color", color, "optional file whose column colors the markers");
    app->add_option("--color-column", color_column, "column of --color used for coloring")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--out", output, "SVG path")->required();
  }

  void run(std::ostream& out) const {
    const Eigen::MatrixXd y = load_matrix(in);
    if (y.rows() != 2) {
      throw Error(ErrorCode::InvalidArgument,
                  "plot needs a 2-column embedding, " + in + " has " + std::to_string(y.rows()));
    }
    std::optional<Eigen::VectorXd> values;
    if (!color.empty()) {
      const Eigen::MatrixXd c = load_matrix(color);
      if (color_column >= c.rows()) {
        throw Error(ErrorCode::InvalidArgument, "--color-column " + std::to_string(color_column) +
                                                    " out of range for " + color);
      }
      values = c.row(color_column).transpose();
    }
    write_text(output, render_svg(y, values ? &*values : nullptr));
    write_manifest(sibling_manifest(output), "plot",
                   {{"input", in}, {"color", color}, {"color_column", color_column}},
                   {fs::path(output)});
    out << "wrote " << y.cols() << " markers to " << output << "\n";
  }
};

// ---- pipeline

struct PipelineCmd {
  std::string manifold = "swissroll";
  Index n_train = 1000;
  Index n_test = 0;
  std::uint64_t seed = 1;
  std::vector<std::string> methods{"nppe", "npp", "onpp", "lle"};
  std::string variant = "distance";
  std::string out_dir;
  FitFlags flags;

  void attach(CLI::App* app) {
    app->add_option("--manifold", manifold, "swissroll, swisshole or gaussian");
    app->add_option("--n-train", n_train, "training samples");
    app->add_option("--n-test", n_test, "held-out samples");
    app->add_option("--seed", seed, "random seed for generation and split");
    app->add_option("--methods", methods, "comma separated methods")->delimiter(',');
    app->add_option("--variant", variant, "distance or entries");
    app->add_option("--out-dir", out_dir, "write data, embeddings and models here");
    flags.attach(app);
  }

  void run(std::ostream& out) {
    PipelineConfig cfg;
    cfg.manifold = datasets::parse_manifold(manifold);
    cfg.n_train = n_train;
    cfg.n_test = n_test;
    cfg.seed = seed;
    cfg.variant = metrics::parse_variant(variant);
    cfg.methods.clear();
    for (const auto& name : methods) cfg.methods.push_back(resolve_method(name, flags));
    cfg.fit = flags.resolve();

    const PipelineResult result = run_pipeline(cfg);
    std::ostringstream table;
    write_comparison(table, result);
    out << table.str();
    for (const auto& m : result.methods) {
      out << "# " << to_string(m.fit.method) << " fit " << format_double(m.fit_seconds) << " s\n";
    }
    if (out_dir.empty()) return;

    ensure_dir(out_dir);
    const fs::path dir(out_dir);
    std::vector<fs::path> outputs{dir / "X.csv", dir / "Z.csv", dir / "comparison.csv"};
    save_matrix(outputs[0], result.data.ambient);
    save_matrix(outputs[1], result.data.generating);
    write_text(outputs[2], table.str());
    for (const auto& m : result.methods) {
      const std::string name(to_string(m.fit.method));
      outputs.push_back(dir / (name + "_train.csv"));
      save_matrix(outputs.back(), m.fit.embedding.coordinates);
      if (m.test_embedding) {
        outputs.push_back(dir / (name + "_test.csv"));
        save_matrix(outputs.back(), *m.test_embedding);
      }
      if (m.fit.model) {
        outputs.push_back(dir / (name + "_model.json"));
        save_model(outputs.back(), *m.fit.model);
      }
    }
    const Index k = result.methods.front().fit.k;
    json config = settings_json(cfg.fit, k);
    config["manifold"] = std::string(datasets::to_string(cfg.manifold));
    config["n_train"] = n_train;
    config["n_test"] = n_test;
    config["seed"] = seed;
    config["methods"] = methods;
    config["variant"] = std::string(to_string(cfg.variant));
    config["train_indices"] = result.split.train;
    config["test_indices"] = result.split.test;
    write_manifest(dir / "manifest.json", "pipeline", std::move(config), outputs);
  }
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Neighborhood preserving polynomial embedding", "nppe"};
  app.set_version_flag("--version", NPPE_VERSION);
  app.require_subcommand(1);

  GenerateCmd generate;
  FitCmd fit;
  TransformCmd transform_cmd;
  EvalCmd eval;
  BenchCmd bench;
  PlotCmd plot;
  PipelineCmd pipeline;
  generate.attach(app.add_subcommand("generate", "sample a synthetic manifold"));
  fit.attach(app.add_subcommand("fit", "fit an embedding and write the model"));
  transform_cmd.attach(app.add_subcommand("transform", "map new samples with a fitted model"));
  eval.attach(app.add_subcommand("eval", "residual variance against generating coordinates"));
  bench.attach(app.add_subcommand("bench", "time transform over batch sizes"));
  plot.attach(app.add_subcommand("plot", "render a 2-D embedding as SVG"));
  pipeline.attach(app.add_subcommand("pipeline", "generate, split, fit all methods and compare"));

  // CLI11 wants the arguments in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << NPPE_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    const auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    if (name == "generate") generate.run(out);
    else if (name == "fit") fit.run(out);
    else if (name == "transform") transform_cmd.run(out);
    else if (name == "eval") eval.run(out);
    else if (name == "bench") bench.run(out);
    else if (name == "plot") plot.run(out);
    else if (name == "pipeline") pipeline.run(out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return kExitOk;
}

int run(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, std::cout, std::cerr);
}

}  // namespace nppe::cli
