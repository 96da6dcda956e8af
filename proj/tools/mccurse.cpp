// mccurse: sample-complexity calculator and experiment runner for uniform
// random search over high-dimensional balls.
//
// Subcommands: nmin, nmin-lower, prob, cap, mode, expect, grid-card,
// validate-fact1, validate-fact2, run-max, run-image2d, calibrate, table1,
// table2, emit-series.
//
// Output is a human-readable table on a terminal and JSON when redirected;
// --format {json,csv,table} overrides. A flat key=value config file may
// preset any flag of a subcommand (--config); explicit flags win.
// MC_CURSE_SEED provides the default seed.

#include <unistd.h>

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mccurse/bounds.hpp"
#include "mccurse/distributions.hpp"
#include "mccurse/envelope.hpp"
#include "mccurse/experiments.hpp"
#include "mccurse/grids.hpp"
#include "mccurse/sampling.hpp"
#include "mccurse/specfun.hpp"

namespace {

using mccurse::bounds::AccuracySpec;
using mccurse::bounds::SampleCount;
using mccurse::cli::ResultEnvelope;
using mccurse::cli::json;
using mccurse::sampling::BallKind;

struct OutputOptions {
  std::string format;  // "", "json", "csv", "table"
};

void emit(const ResultEnvelope& env, const OutputOptions& opts) {
  std::string format = opts.format;
  if (format.empty()) format = isatty(fileno(stdout)) ? "table" : "json";
  if (format == "json")
    std::cout << mccurse::cli::to_json(env).dump(2) << "\n";
  else if (format == "csv")
    std::cout << mccurse::cli::to_csv(env);
  else
    mccurse::cli::render_text(std::cout, env);
}

json count_to_json(const SampleCount& c) {
  json j;
  j["value"] = c.value;
  j["is_ceiled"] = c.is_ceiled;
  j["printed"] = mccurse::cli::format_count(c);
  return j;
}

BallKind parse_ball(const std::string& name) {
  if (name == "l1") return BallKind::L1;
  if (name == "l2") return BallKind::L2;
  return BallKind::LInf;
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MC_CURSE_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw std::invalid_argument("MC_CURSE_SEED must be an unsigned integer");
    }
  }
  return 1;
}

// every subcommand gets --format and a flat key=value --config preset file
CLI::App* make_subcommand(CLI::App& app, OutputOptions& opts,
                          const std::string& name, const std::string& help) {
  CLI::App* cmd = app.add_subcommand(name, help);
  cmd->add_option("--format", opts.format, "output format: json | csv | table")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  return cmd;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Expand `--config FILE` (flat key=value lines) into flags before parsing.
// Keys already given on the command line win; file keys fill the rest.
void expand_config(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size())
        throw std::invalid_argument("--config needs a file path");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
                 args.begin() + static_cast<std::ptrdiff_t>(i) + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
      break;
    }
  }
  if (path.empty()) return;
  std::ifstream file(path);
  if (!file) throw std::runtime_error("cannot open config file: " + path);
  std::string line;
  while (std::getline(file, line)) {
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line is not key=value: " + stripped);
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line has an empty key: " + stripped);
    const std::string flag = "--" + key;
    bool present = false;
    for (const auto& arg : args)
      if (arg == flag || arg.rfind(flag + "=", 0) == 0) {
        present = true;
        break;
      }
    if (!present) {
      args.push_back(flag);
      args.push_back(value);
    }
  }
}

}  // namespace

int run(int argc, char** argv) {
  CLI::App app{
      "Monte Carlo sample-complexity toolkit for high-dimensional optimization"};
  app.require_subcommand(1);
  app.footer(
      "Any subcommand accepts --config FILE (flat key=value lines presetting "
      "flags;\nexplicit flags win) and --format {json,csv,table}. "
      "MC_CURSE_SEED sets the default seed.");

  OutputOptions opts;

  // ---- nmin --------------------------------------------------------------
  struct {
    std::string ball = "l2";
    int dim = 1;
    double delta = 0.05;
    double p = 0.95;
  } nmin_args;
  auto* nmin = make_subcommand(
      app, opts, "nmin",
      "minimal sample size for a delta-accurate empirical maximum");
  nmin->add_option("--ball", nmin_args.ball, "domain family")
      ->check(CLI::IsMember({"l2", "l1", "linf-axis", "linf-diag", "image2d"}));
  nmin->add_option("--dim", nmin_args.dim, "dimension n");
  nmin->add_option("--delta", nmin_args.delta, "relative accuracy in (0,1)")
      ->required();
  nmin->add_option("--p", nmin_args.p, "confidence in (0,1)")->required();
  nmin->callback([&] {
    const AccuracySpec spec{nmin_args.delta, nmin_args.p};
    const int n = nmin_args.dim;
    json payload;
    payload["ball"] = nmin_args.ball;
    payload["dim"] = n;
    payload["delta"] = spec.delta;
    payload["p"] = spec.p;
    if (nmin_args.ball == "l2") {
      payload["nmin"] = count_to_json(mccurse::bounds::nmin_l2(n, spec));
    } else if (nmin_args.ball == "l1") {
      payload["nmin"] = count_to_json(mccurse::bounds::nmin_l1(n, spec));
      payload["approx"] = mccurse::bounds::nmin_l1_approx(n, spec);
    } else if (nmin_args.ball == "linf-axis") {
      payload["nmin"] = count_to_json(mccurse::bounds::nmin_box_axis(spec));
    } else if (nmin_args.ball == "linf-diag") {
      payload["nmin"] = count_to_json(mccurse::bounds::nmin_box_diag(n, spec));
      payload["stirling_form"] =
          mccurse::bounds::nmin_box_diag_stirling(n, spec);
    } else {  // image2d
      payload["nmin"] =
          count_to_json(mccurse::bounds::nmin_multiobjective(n, spec));
      payload["approx"] = mccurse::bounds::nmin_multiobjective_approx(n, spec);
    }
    emit(mccurse::cli::make_envelope("nmin", "record", payload), opts);
  });

  // ---- nmin-lower ----------------------------------------------------------
  struct {
    int dim = 1;
    double delta = 0.05;
    double p = 0.95;
  } lower_args;
  auto* lower =
      make_subcommand(app, opts, "nmin-lower",
                      "closed-form lower bounds for the l2 sample size");
  lower->add_option("--dim", lower_args.dim, "dimension n")->required();
  lower->add_option("--delta", lower_args.delta, "relative accuracy")->required();
  lower->add_option("--p", lower_args.p, "confidence")->required();
  lower->callback([&] {
    const AccuracySpec spec{lower_args.delta, lower_args.p};
    const auto bounds = mccurse::bounds::nmin_l2_lower(lower_args.dim, spec);
    json payload;
    payload["dim"] = lower_args.dim;
    payload["delta"] = spec.delta;
    payload["p"] = spec.p;
    payload["n_appr"] = bounds.n_appr.value;
    payload["n_appr_simple"] = bounds.n_appr_simple.value;
    payload["nmin"] =
        count_to_json(mccurse::bounds::nmin_l2(lower_args.dim, spec));
    emit(mccurse::cli::make_envelope("nmin-lower", "record", payload), opts);
  });

  // ---- prob ------------------------------------------------------------------
  struct {
    int dim = 1;
    double delta = 0.05;
    double count = 1;
  } prob_args;
  auto* prob = make_subcommand(app, opts, "prob",
                               "success probability of N draws on the l2 ball");
  prob->add_option("--dim", prob_args.dim, "dimension n")->required();
  prob->add_option("--delta", prob_args.delta, "relative accuracy")->required();
  prob->add_option("--count", prob_args.count, "sample size N")->required();
  prob->callback([&] {
    json payload;
    payload["dim"] = prob_args.dim;
    payload["delta"] = prob_args.delta;
    payload["count"] = prob_args.count;
    payload["probability"] = mccurse::bounds::prob_empirical_max_l2(
        prob_args.dim, prob_args.delta, prob_args.count);
    emit(mccurse::cli::make_envelope("prob", "record", payload), opts);
  });

  // ---- cap -------------------------------------------------------------------
  struct {
    double r = 1.0;
    double h = 0.0;
    int dim = 1;
  } cap_args;
  auto* cap = make_subcommand(app, opts, "cap", "spherical-cap hit probability");
  cap->set_help_flag("--help", "print help");  // frees -h for the cap height
  cap->add_option("--r", cap_args.r, "ball radius")->required();
  cap->add_option("--h", cap_args.h, "cap height in [0, r]")->required();
  cap->add_option("--dim", cap_args.dim, "dimension n")->required();
  cap->callback([&] {
    json payload;
    payload["r"] = cap_args.r;
    payload["h"] = cap_args.h;
    payload["dim"] = cap_args.dim;
    payload["probability"] = mccurse::bounds::cap_success_probability(
        {cap_args.r, cap_args.h, cap_args.dim});
    emit(mccurse::cli::make_envelope("cap", "record", payload), opts);
  });

  // ---- mode / expect ------------------------------------------------------------
  struct {
    int dim = 3;
    double count = 1;
  } mode_args, expect_args;
  auto* mode = make_subcommand(
      app, opts, "mode",
      "mode of the empirical-maximum distribution (2D image runs)");
  mode->add_option("--dim", mode_args.dim, "dimension n (>= 3)")->required();
  mode->add_option("--count", mode_args.count, "sample size N")->required();
  mode->callback([&] {
    json payload;
    payload["dim"] = mode_args.dim;
    payload["count"] = mode_args.count;
    payload["mode"] =
        mccurse::bounds::mode_empirical_max(mode_args.dim, mode_args.count);
    payload["approximation"] = mccurse::bounds::mode_empirical_max_approx(
        mode_args.dim, mode_args.count);
    emit(mccurse::cli::make_envelope("mode", "record", payload), opts);
  });
  auto* expect = make_subcommand(
      app, opts, "expect",
      "expectation of the empirical maximum (2D image runs)");
  expect->add_option("--dim", expect_args.dim, "dimension n (>= 2)")->required();
  expect->add_option("--count", expect_args.count, "sample size N")->required();
  expect->callback([&] {
    json payload;
    payload["dim"] = expect_args.dim;
    payload["count"] = expect_args.count;
    payload["expectation"] =
        mccurse::bounds::expect_empirical_max(expect_args.dim, expect_args.count);
    payload["approximation"] = mccurse::bounds::expect_empirical_max_approx(
        expect_args.dim, expect_args.count);
    emit(mccurse::cli::make_envelope("expect", "record", payload), opts);
  });

  // ---- grid-card -------------------------------------------------------------------
  struct {
    int dim = 1;
    double delta = 0.1;
  } grid_args;
  auto* grid = make_subcommand(app, opts, "grid-card",
                               "uniform-mesh cardinality for accuracy delta");
  grid->add_option("--dim", grid_args.dim, "dimension n")->required();
  grid->add_option("--delta", grid_args.delta, "relative accuracy")->required();
  grid->callback([&] {
    json payload;
    payload["dim"] = grid_args.dim;
    payload["delta"] = grid_args.delta;
    payload["cardinality"] = count_to_json(
        mccurse::bounds::uniform_grid_cardinality(grid_args.dim, grid_args.delta));
    emit(mccurse::cli::make_envelope("grid-card", "record", payload), opts);
  });

  // ---- validate-fact1 / validate-fact2 ------------------------------------------------
  struct ValidateArgs {
    int dim = 10;
    int rank = 1;
    std::uint64_t count = 100000;
    std::uint64_t seed = 0;
    double alpha = 0.01;
    CLI::Option* seed_opt = nullptr;
  } fact1_args, fact2_args;
  auto add_validate_options = [](CLI::App* cmd, ValidateArgs& args) {
    cmd->add_option("--dim", args.dim, "dimension n")->required();
    cmd->add_option("--rank", args.rank, "projection rank m")->required();
    cmd->add_option("--count", args.count, "number of draws");
    args.seed_opt = cmd->add_option("--seed", args.seed, "rng seed");
    cmd->add_option("--alpha", args.alpha, "KS significance level");
  };
  auto ks_payload = [](const ValidateArgs& args,
                       const mccurse::dist::KsReport& ks) {
    json payload;
    payload["dim"] = args.dim;
    payload["rank"] = args.rank;
    payload["count"] = args.count;
    payload["alpha"] = args.alpha;
    payload["statistic"] = ks.statistic;
    payload["threshold"] = ks.threshold;
    payload["sample_size"] = ks.sample_size;
    payload["passed"] = ks.passed;
    return payload;
  };
  auto* fact1 = make_subcommand(
      app, opts, "validate-fact1",
      "KS test of projected draws against the beta law");
  add_validate_options(fact1, fact1_args);
  fact1->callback([&] {
    const std::uint64_t seed =
        fact1_args.seed_opt->count() ? fact1_args.seed : default_seed();
    const auto ks = mccurse::dist::validate_fact1(
        fact1_args.dim, fact1_args.rank, fact1_args.count, seed, fact1_args.alpha);
    emit(mccurse::cli::make_envelope("validate-fact1", "record",
                                     ks_payload(fact1_args, ks), seed),
         opts);
  });
  auto* fact2 = make_subcommand(
      app, opts, "validate-fact2",
      "KS test of n*rho against the chi-square limit law");
  add_validate_options(fact2, fact2_args);
  fact2->callback([&] {
    const std::uint64_t seed =
        fact2_args.seed_opt->count() ? fact2_args.seed : default_seed();
    const auto ks = mccurse::dist::validate_fact2(
        fact2_args.dim, fact2_args.rank, fact2_args.count, seed, fact2_args.alpha);
    emit(mccurse::cli::make_envelope("validate-fact2", "record",
                                     ks_payload(fact2_args, ks), seed),
         opts);
  });

  // ---- run-max -----------------------------------------------------------------------
  struct {
    std::string ball = "l2";
    std::string objective = "axis";
    int dim = 1;
    std::uint64_t count = 1000;
    int reps = 1;
    std::uint64_t seed = 0;
    std::uint64_t chunk = 1u << 16;
    double threshold = 0.0;
    CLI::Option* seed_opt = nullptr;
    CLI::Option* threshold_opt = nullptr;
  } runmax_args;
  auto* runmax = make_subcommand(app, opts, "run-max",
                                 "empirical-maximum experiment over a ball");
  runmax->add_option("--ball", runmax_args.ball, "l1 | l2 | linf")
      ->check(CLI::IsMember({"l1", "l2", "linf"}));
  runmax->add_option("--objective", runmax_args.objective, "axis | diag")
      ->check(CLI::IsMember({"axis", "diag"}));
  runmax->add_option("--dim", runmax_args.dim, "dimension n")->required();
  runmax->add_option("--count", runmax_args.count, "draws per repetition")
      ->required();
  runmax->add_option("--reps", runmax_args.reps, "repetitions");
  runmax_args.seed_opt = runmax->add_option("--seed", runmax_args.seed, "rng seed");
  runmax->add_option("--chunk", runmax_args.chunk,
                     "chunk size (part of the replay key)");
  runmax_args.threshold_opt =
      runmax->add_option("--threshold", runmax_args.threshold,
                         "count repetitions with maximum above this value");
  runmax->callback([&] {
    const std::uint64_t seed =
        runmax_args.seed_opt->count() ? runmax_args.seed : default_seed();
    mccurse::experiments::ExperimentSpec spec{
        parse_ball(runmax_args.ball),
        runmax_args.dim,
        runmax_args.objective == "diag"
            ? mccurse::experiments::diagonal_objective(runmax_args.dim)
            : mccurse::experiments::axis_objective(runmax_args.dim),
        runmax_args.count,
        seed,
        runmax_args.reps,
        runmax_args.chunk};
    if (runmax_args.threshold_opt->count())
      spec.success_threshold = runmax_args.threshold;
    const auto stats = mccurse::experiments::run_empirical_max(spec);
    json payload;
    payload["ball"] = runmax_args.ball;
    payload["objective"] = runmax_args.objective;
    payload["dim"] = runmax_args.dim;
    payload["count"] = runmax_args.count;
    payload["reps"] = runmax_args.reps;
    payload["empirical_max"] = stats.empirical_max;
    payload["mean_repetition_max"] = stats.mean_repetition_max();
    if (runmax_args.threshold_opt->count())
      payload["success_count"] = stats.success_count;
    payload["wall_time_s"] = stats.wall_time.count();
    emit(mccurse::cli::make_envelope("run-max", "record", payload, seed), opts);
  });

  // ---- run-image2d -----------------------------------------------------------------------
  struct {
    int dim = 2;
    std::uint64_t count = 1000;
    int reps = 1;
    std::uint64_t seed = 0;
    std::uint64_t chunk = 1u << 16;
    std::size_t scatter = 0;
    std::string scatter_out;
    CLI::Option* seed_opt = nullptr;
  } image_args;
  auto* image = make_subcommand(
      app, opts, "run-image2d",
      "2D-image boundary-proximity experiment on the l2 ball");
  image->add_option("--dim", image_args.dim, "dimension n (>= 2)")->required();
  image->add_option("--count", image_args.count, "draws per repetition")
      ->required();
  image->add_option("--reps", image_args.reps, "repetitions");
  image_args.seed_opt = image->add_option("--seed", image_args.seed, "rng seed");
  image->add_option("--chunk", image_args.chunk, "chunk size");
  image->add_option("--scatter", image_args.scatter,
                    "retain the first K image points (max 1e5)");
  image->add_option("--scatter-out", image_args.scatter_out,
                    "write the scatter subsample to this CSV file");
  image->callback([&] {
    const std::uint64_t seed =
        image_args.seed_opt->count() ? image_args.seed : default_seed();
    mccurse::experiments::ExperimentSpec spec{
        BallKind::L2,
        image_args.dim,
        mccurse::experiments::coordinate_image_objective(image_args.dim),
        image_args.count,
        seed,
        image_args.reps,
        image_args.chunk};
    spec.scatter_limit = image_args.scatter;
    const auto stats = mccurse::experiments::run_image2d(spec);
    json payload;
    payload["dim"] = image_args.dim;
    payload["count"] = image_args.count;
    payload["reps"] = image_args.reps;
    payload["empirical_max"] = stats.empirical_max;
    payload["kappa"] = stats.boundary_proximity;
    payload["mean_repetition_max"] = stats.mean_repetition_max();
    payload["wall_time_s"] = stats.wall_time.count();
    payload["scatter_points"] = stats.scatter.size();
    if (!image_args.scatter_out.empty()) {
      std::ofstream out(image_args.scatter_out);
      if (!out)
        throw std::runtime_error("cannot open scatter output file: " +
                                 image_args.scatter_out);
      out << "g1,g2\n";
      for (const auto& pt : stats.scatter)
        out << mccurse::cli::format_number(pt[0]) << ','
            << mccurse::cli::format_number(pt[1]) << '\n';
      payload["scatter_file"] = image_args.scatter_out;
    }
    emit(mccurse::cli::make_envelope("run-image2d", "record", payload, seed),
         opts);
  });

  // ---- calibrate -----------------------------------------------------------------------------
  struct {
    std::string law = "scalar-l2";
    int dim = 3;
    double delta = 0.2;
    std::uint64_t count = 100;
    int reps = 10000;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
  } cal_args;
  auto* cal = make_subcommand(
      app, opts, "calibrate",
      "compare a closed-form probability against simulation");
  cal->add_option("--law", cal_args.law, "scalar-l2 | image2d")
      ->check(CLI::IsMember({"scalar-l2", "image2d"}));
  cal->add_option("--dim", cal_args.dim, "dimension n")->required();
  cal->add_option("--delta", cal_args.delta, "accuracy threshold")->required();
  cal->add_option("--count", cal_args.count, "draws per repetition")->required();
  cal->add_option("--reps", cal_args.reps, "repetitions (>= 100)");
  cal_args.seed_opt = cal->add_option("--seed", cal_args.seed, "rng seed");
  cal->callback([&] {
    const std::uint64_t seed =
        cal_args.seed_opt->count() ? cal_args.seed : default_seed();
    const bool image_run = cal_args.law == "image2d";
    double formula;
    if (image_run) {
      const double log_eps =
          0.5 * cal_args.dim * std::log(cal_args.delta * (2.0 - cal_args.delta));
      formula = -std::expm1(static_cast<double>(cal_args.count) *
                            std::log1p(-std::exp(log_eps)));
    } else {
      formula = mccurse::bounds::prob_empirical_max_l2(
          cal_args.dim, cal_args.delta, static_cast<double>(cal_args.count));
    }
    mccurse::experiments::ExperimentSpec spec{
        BallKind::L2,
        cal_args.dim,
        image_run
            ? mccurse::experiments::coordinate_image_objective(cal_args.dim)
            : mccurse::experiments::axis_objective(cal_args.dim),
        cal_args.count,
        seed,
        cal_args.reps};
    const auto record =
        mccurse::experiments::calibrate_probability(spec, cal_args.delta, formula);
    json payload;
    payload["law"] = cal_args.law;
    payload["dim"] = cal_args.dim;
    payload["delta"] = cal_args.delta;
    payload["count"] = cal_args.count;
    payload["reps"] = cal_args.reps;
    payload["empirical_frequency"] = record.empirical_frequency;
    payload["formula_probability"] = record.formula_probability;
    payload["band_3sigma"] = record.band_3sigma;
    payload["agrees"] = record.agrees;
    emit(mccurse::cli::make_envelope("calibrate", "record", payload, seed), opts);
  });

  // ---- table1 --------------------------------------------------------------------------------
  auto* table1 = make_subcommand(
      app, opts, "table1", "minimal sample sizes over the three ball families");
  table1->callback([&] {
    const auto table = mccurse::experiments::reproduce_table1();
    json columns = json::array();
    for (int n : table.dimensions) columns.push_back("n=" + std::to_string(n));
    auto row = [](const std::string& label,
                  const std::vector<SampleCount>& counts) {
      json r;
      r["label"] = label;
      json values = json::array();
      for (const auto& c : counts) values.push_back(c.value);
      r["values"] = values;
      return r;
    };
    json payload;
    payload["columns"] = columns;
    payload["rows"] = json::array(
        {row("l2", table.l2), row("linf", table.linf), row("l1", table.l1)});
    emit(mccurse::cli::make_envelope("table1", "table", payload), opts);
  });

  // ---- table2 --------------------------------------------------------------------------------
  struct {
    std::uint64_t count = 1000000;
    int reps = 100;
    std::uint64_t seed = 0;
    CLI::Option* seed_opt = nullptr;
  } table2_args;
  auto* table2 = make_subcommand(
      app, opts, "table2",
      "empirical box maxima: uniform grid vs Sobol vs Monte Carlo");
  table2->add_option("--count", table2_args.count, "points per method");
  table2->add_option("--reps", table2_args.reps, "Monte Carlo repetitions");
  table2_args.seed_opt = table2->add_option("--seed", table2_args.seed, "rng seed");
  table2->callback([&] {
    const std::uint64_t seed =
        table2_args.seed_opt->count() ? table2_args.seed : default_seed();
    const auto table = mccurse::experiments::reproduce_table2(
        table2_args.count, table2_args.reps, seed);
    json columns = json::array();
    for (int n : table.dimensions) columns.push_back("n=" + std::to_string(n));
    auto row = [](const std::string& label, const std::vector<double>& values) {
      json r;
      r["label"] = label;
      r["values"] = values;
      return r;
    };
    json payload;
    payload["columns"] = columns;
    payload["rows"] = json::array({row("uniform-grid", table.uniform_grid),
                                   row("lp-tau", table.sobol),
                                   row("monte-carlo", table.monte_carlo)});
    emit(mccurse::cli::make_envelope("table2", "table", payload, seed), opts);
  });

  // ---- emit-series ----------------------------------------------------------------------------
  struct {
    std::string curve = "pdf-rho-scalar";
    std::vector<int> dims;
    std::vector<double> counts;
    double from = 0.001;
    double to = 0.999;
    int points = 1000;
    std::string out;
  } series_args;
  auto* series = make_subcommand(app, opts, "emit-series",
                                 "sample a density/cdf curve family to CSV");
  series->add_option("--curve", series_args.curve,
                     "pdf-rho-scalar | cdf-rho-m2 | pdf-empirical-max")
      ->check(CLI::IsMember({"pdf-rho-scalar", "cdf-rho-m2", "pdf-empirical-max"}));
  series->add_option("--dim", series_args.dims, "dimension(s) n");
  series->add_option("--count", series_args.counts,
                     "sample size(s) N for pdf-empirical-max");
  series->add_option("--from", series_args.from, "domain start");
  series->add_option("--to", series_args.to, "domain end");
  series->add_option("--points", series_args.points, "resolution (>= 2)");
  series->add_option("--out", series_args.out, "CSV output path (default stdout)");
  series->callback([&] {
    if (series_args.points < 2)
      throw std::invalid_argument("emit-series: resolution must be >= 2");
    if (series_args.dims.empty()) series_args.dims = {20};
    if (series_args.counts.empty()) series_args.counts = {100.0};
    json columns = json::array();
    columns.push_back("x");
    std::vector<std::function<double(double)>> curves;
    if (series_args.curve == "pdf-rho-scalar") {
      for (int n : series_args.dims) {
        columns.push_back("pdf_rho_n" + std::to_string(n));
        curves.push_back(
            [n](double x) { return mccurse::dist::pdf_rho_scalar(n, x); });
      }
    } else if (series_args.curve == "cdf-rho-m2") {
      for (int n : series_args.dims) {
        columns.push_back("cdf_rho_n" + std::to_string(n));
        curves.push_back(
            [n](double x) { return mccurse::dist::cdf_rho_m2(n, x); });
      }
    } else {
      const int n = series_args.dims.front();
      for (double count : series_args.counts) {
        char label[48];
        std::snprintf(label, sizeof(label), "pdf_eta_n%d_N%.6g", n, count);
        columns.push_back(label);
        curves.push_back([n, count](double x) {
          return mccurse::dist::pdf_empirical_max_m2(n, count, x);
        });
      }
    }
    json points = json::array();
    for (int i = 0; i < series_args.points; ++i) {
      const double x =
          series_args.from +
          (series_args.to - series_args.from) * i / (series_args.points - 1);
      json row = json::array();
      row.push_back(x);
      for (auto& f : curves) row.push_back(f(x));
      points.push_back(row);
    }
    json payload;
    payload["columns"] = columns;
    payload["points"] = points;
    auto env = mccurse::cli::make_envelope("emit-series", "series", payload);
    if (!series_args.out.empty()) {
      std::ofstream file(series_args.out);
      if (!file)
        throw std::runtime_error("cannot open series output file: " +
                                 series_args.out);
      file << mccurse::cli::to_csv(env);
      json summary;
      summary["file"] = series_args.out;
      summary["points"] = series_args.points;
      summary["columns"] = columns;
      emit(mccurse::cli::make_envelope("emit-series", "record", summary), opts);
    } else {
      emit(env, opts);
    }
  });

  std::vector<std::string> args;
  args.reserve(static_cast<std::size_t>(argc));
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  expand_config(args);
  std::reverse(args.begin(), args.end());  // CLI11 consumes from the back

  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    std::cerr << "run with --help for usage\n";
    return 2;
  }
  return 0;
}

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const std::invalid_argument& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
