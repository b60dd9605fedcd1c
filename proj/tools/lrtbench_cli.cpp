// lrtbench command-line interface.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "lrtbench/bench.hpp"
#include "lrtbench/error.hpp"
#include "lrtbench/gaussian_analytic.hpp"
#include "lrtbench/io.hpp"
#include "lrtbench/lrt.hpp"
#include "lrtbench/metrics.hpp"
#include "lrtbench/parallel.hpp"
#include "lrtbench/text.hpp"

using namespace lrtbench;

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(std::string stage)
      : stage_(std::move(stage)), start_(std::chrono::steady_clock::now()) {}
  ~Stopwatch() {
    const std::chrono::duration<double> s = std::chrono::steady_clock::now() - start_;
    std::fprintf(stderr, "timing stage=%s seconds=%.3f\n", stage_.c_str(), s.count());
  }

 private:
  std::string stage_;
  std::chrono::steady_clock::time_point start_;
};

std::pair<std::string, std::string> key_value(const std::string& text) {
  const auto eq = text.find('=');
  require(eq != std::string::npos && eq > 0, ErrorKind::invalid_argument,
          "expected key=value, got '" + text + "'");
  return {text.substr(0, eq), text.substr(eq + 1)};
}

// Splits --override entries into model.* and sim.* keys and applies them.
void apply_overrides(const std::vector<std::string>& overrides, CaseSetting& setting,
                     std::size_t& paths) {
  for (const std::string& item : overrides) {
    auto [key, value] = key_value(item);
    if (key.starts_with("model.")) {
      setting.overrides[key.substr(6)] = value;
    } else if (key == "sim.delta") {
      setting.delta = parse_double(value);
    } else if (key == "sim.dt") {
      setting.dt = parse_double(value);
      setting.t_end = setting.dt * static_cast<double>(setting.steps);
    } else if (key == "sim.L") {
      setting.steps = static_cast<std::size_t>(parse_int(value));
      setting.t_end = setting.dt * static_cast<double>(setting.steps);
    } else if (key == "sim.M") {
      paths = static_cast<std::size_t>(parse_int(value));
    } else {
      fail(ErrorKind::invalid_argument,
           "unknown override '" + key + "' (use model.<param>, sim.delta, sim.dt, sim.L, sim.M)");
    }
  }
  setting.pair();  // validates model keys against the family
}

void write_metrics(const std::string& file, const std::string& classifier,
                   const MetricsSummary& m) {
  std::ofstream out(file, std::ios::binary | std::ios::trunc);
  require(static_cast<bool>(out), ErrorKind::io, "cannot write " + file);
  out << "classifier,auc,acc_star,k_star,fnr_at_k,tnr_at_k\n"
      << classifier << ',' << format_double(m.auc) << ',' << format_double(m.acc_star) << ','
      << format_double(m.k_star) << ',' << format_double(m.fnr_at_k) << ','
      << format_double(m.tnr_at_k) << '\n';
  require(static_cast<bool>(out), ErrorKind::io, "failed writing " + file);
}

std::string escape_message(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (c == '"' || c == '\\') out += '\\';
    out += c == '\n' ? ' ' : c;
  }
  return out;
}

int report_error(std::string_view kind, const std::string& message) {
  std::fprintf(stderr, "error kind=%s message=\"%s\"\n", std::string(kind).c_str(),
               escape_message(message).c_str());
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood-ratio benchmarks for time-series classification"};
  app.require_subcommand(1);
  std::size_t threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  // generate
  auto* gen = app.add_subcommand("generate", "Simulate a labeled dataset bundle");
  std::string gen_case = "a", gen_out, gen_layout = "long";
  int gen_setting = 1;
  std::uint64_t gen_seed = 0;
  std::size_t gen_paths = 2000;
  bool gen_fine = false;
  std::vector<std::string> gen_overrides;
  gen->add_option("--case", gen_case, "Case id a..f")->required();
  gen->add_option("--setting", gen_setting, "Setting index 1..4")->required();
  gen->add_option("--seed", gen_seed, "Master seed");
  gen->add_option("--paths", gen_paths, "Total paths M (even)");
  gen->add_option("--out", gen_out, "Output directory")->required();
  gen->add_option("--layout", gen_layout, "long or wide");
  gen->add_flag("--keep-fine", gen_fine, "Also store the fine-grid paths");
  gen->add_option("--override", gen_overrides, "model.<param>=v or sim.<delta|dt|L|M>=v");

  // lrt
  auto* lrt = app.add_subcommand("lrt", "Score a bundle with a likelihood-ratio test");
  std::string lrt_data, lrt_mode = "numerical", lrt_out;
  lrt->add_option("--data", lrt_data, "Dataset bundle")->required();
  lrt->add_option("--mode", lrt_mode, "hidden, numerical, exact, exact-bm or exact-ou");
  lrt->add_option("--out", lrt_out, "Output directory")->required();

  // rocket
  auto* rocket = app.add_subcommand("rocket", "Train and score ROCKET on a bundle");
  std::string rocket_data, rocket_out;
  std::size_t rocket_kernels = 10000, rocket_runs = 1;
  std::uint64_t rocket_seed = 0;
  double rocket_fraction = 0.75;
  rocket->add_option("--data", rocket_data, "Dataset bundle")->required();
  rocket->add_option("--kernels", rocket_kernels, "Number of random kernels");
  rocket->add_option("--seed", rocket_seed, "Master seed");
  rocket->add_option("--runs", rocket_runs, "Independent splits");
  rocket->add_option("--train-fraction", rocket_fraction, "Training share of each class");
  rocket->add_option("--out", rocket_out, "Output directory")->required();

  // bench
  auto* bench = app.add_subcommand("bench", "Run the benchmark protocol for one case setting");
  std::string bench_case = "a", bench_classifiers = "hidden,numerical,rocket", bench_out,
              bench_data;
  int bench_setting = 1;
  std::size_t bench_runs = 40, bench_kernels = 10000, bench_paths = 2000;
  std::uint64_t bench_seed = 0;
  bool bench_regenerate = false;
  std::vector<std::string> bench_external, bench_overrides;
  bench->add_option("--case", bench_case, "Case id a..f");
  bench->add_option("--setting", bench_setting, "Setting index 1..4");
  bench->add_option("--runs", bench_runs, "Number of runs");
  bench->add_option("--seed", bench_seed, "Master seed");
  bench->add_option("--classifiers", bench_classifiers, "Comma list: hidden,numerical,exact,rocket");
  bench->add_option("--kernels", bench_kernels, "ROCKET kernels");
  bench->add_option("--paths", bench_paths, "Total paths M");
  bench->add_option("--data", bench_data, "Use an existing bundle instead of simulating");
  bench->add_option("--external", bench_external, "NAME=FILE scores to rank alongside");
  bench->add_option("--override", bench_overrides, "model.<param>=v or sim.<delta|dt|L|M>=v");
  bench->add_flag("--regenerate", bench_regenerate, "Fresh dataset per run");
  bench->add_option("--out", bench_out, "Report directory")->required();

  // sweep
  auto* sw = app.add_subcommand("sweep", "Interacting-particle sweeps over t_L, sigma or training size");
  std::string sw_kind, sw_values, sw_classifiers = "hidden,numerical,rocket", sw_out,
                               sw_case = "d";
  int sw_setting = 2;
  std::size_t sw_runs = 40, sw_kernels = 10000;
  std::uint64_t sw_seed = 0;
  sw->add_option("--kind", sw_kind, "time-length, noise or training-size")->required();
  sw->add_option("--values", sw_values, "Comma list (defaults per kind)");
  sw->add_option("--case", sw_case, "Base case id");
  sw->add_option("--setting", sw_setting, "Base setting index");
  sw->add_option("--runs", sw_runs, "Runs per value");
  sw->add_option("--seed", sw_seed, "Master seed");
  sw->add_option("--classifiers", sw_classifiers, "Comma list");
  sw->add_option("--kernels", sw_kernels, "ROCKET kernels");
  sw->add_option("--out", sw_out, "Output directory")->required();

  // report
  auto* rep = app.add_subcommand("report", "Re-render a report directory");
  std::string rep_in, rep_out;
  rep->add_option("--in", rep_in, "Report directory")->required();
  rep->add_option("--out", rep_out, "Output directory")->required();

  // analytic
  auto* ana = app.add_subcommand("analytic", "Closed-form (bm) or Monte-Carlo (ou) references");
  std::string ana_family = "bm", ana_out, ana_t = "1,2,4,8", ana_dims = "1";
  double ana_dt = 0.1, ana_k = 0.5;
  std::size_t ana_steps = 20, ana_samples = 100000;
  std::uint64_t ana_seed = 0;
  std::vector<std::string> ana_overrides;
  ana->add_option("--family", ana_family, "bm or ou");
  ana->add_option("--t-end", ana_t, "bm: comma list of t_L");
  ana->add_option("--dims", ana_dims, "ou: comma list of dimensions");
  ana->add_option("--steps", ana_steps, "ou: observations L");
  ana->add_option("--dt", ana_dt, "ou: observation gap");
  ana->add_option("--k", ana_k, "Posterior threshold in (0,1)");
  ana->add_option("--samples", ana_samples, "ou: Monte-Carlo paths per class");
  ana->add_option("--seed", ana_seed, "ou: Monte-Carlo seed");
  ana->add_option("--override", ana_overrides, "model.<param>=v");
  ana->add_option("--out", ana_out, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report_error("usage", e.what());
  }

  try {
    set_thread_count(static_cast<unsigned>(threads));

    if (*gen) {
      CaseSetting setting = resolve_case(gen_case, gen_setting);
      apply_overrides(gen_overrides, setting, gen_paths);
      Dataset dataset;
      {
        Stopwatch t("generate");
        dataset = generate_dataset(setting.pair(), setting.config(gen_paths, gen_seed), gen_fine);
      }
      export_dataset(dataset, gen_out, parse_layout(gen_layout));
      std::printf("dataset %s paths=%zu digest=%s\n", gen_out.c_str(), dataset.size(),
                  dataset.digest().c_str());
    } else if (*lrt) {
      const Dataset dataset = import_dataset(lrt_data);
      const auto names = parse_classifiers(lrt_mode, dataset.pair.family());
      require(names.size() == 1 && names.front().starts_with("lrt-"), ErrorKind::invalid_argument,
              "--mode takes one likelihood-ratio mode");
      const LrtMode mode = parse_lrt_mode(std::string_view(names.front()).substr(4));
      ScoreSet scores;
      {
        Stopwatch t("lrt");
        scores = lrt_scores(dataset, dataset.pair, mode);
      }
      ensure_directory(lrt_out);
      const std::string name(to_string(mode));
      write_scores_csv(lrt_out + "/scores_" + name + ".csv", scores);
      const MetricsSummary m = evaluate(scores);
      write_metrics(lrt_out + "/metrics_" + name + ".csv", name, m);
      std::printf("%s auc=%s acc_star=%s\n", name.c_str(), format_double(m.auc).c_str(),
                  format_double(m.acc_star).c_str());
    } else if (*rocket) {
      const Dataset dataset = import_dataset(rocket_data);
      BenchOptions options;
      options.runs = rocket_runs;
      options.seed = rocket_seed;
      options.kernels = rocket_kernels;
      options.train_fraction = rocket_fraction;
      options.classifiers = {std::string(kRocket)};
      CaseSetting setting;
      if (dataset.manifest.contains("bench.case")) {
        setting = resolve_case(dataset.manifest.at("bench.case"),
                               static_cast<int>(parse_int(dataset.manifest.at("bench.setting"))));
      }
      BenchmarkReport report;
      {
        Stopwatch t("rocket");
        report = run_dataset(dataset, setting, options);
      }
      report.name = "rocket";
      report.manifest["bench.name"] = report.name;
      emit_report(report, rocket_out);
      write_rocket_model(rocket_out + "/rocket_model.txt", report.rocket_models.front());
      const FiveNumberSummary s = report.summary(std::string(kRocket), "auc");
      std::printf("rocket runs=%zu median_auc=%s\n", s.count, format_double(s.median).c_str());
    } else if (*bench) {
      BenchOptions options;
      options.runs = bench_runs;
      options.seed = bench_seed;
      options.kernels = bench_kernels;
      options.paths = bench_paths;
      options.regenerate = bench_regenerate;
      CaseSetting setting = resolve_case(bench_case, bench_setting);
      apply_overrides(bench_overrides, setting, options.paths);
      BenchmarkReport report;
      if (!bench_data.empty()) {
        const Dataset dataset = import_dataset(bench_data);
        options.classifiers = parse_classifiers(bench_classifiers, dataset.pair.family());
        for (const std::string& item : bench_external) {
          auto [name, file] = key_value(item);
          options.external[name] = import_external_scores(file, dataset);
        }
        Stopwatch t("bench");
        report = run_dataset(dataset, setting, options);
      } else {
        require(bench_external.empty(), ErrorKind::invalid_argument,
                "--external needs --data so the scores refer to a known dataset");
        options.classifiers = parse_classifiers(bench_classifiers, setting.family);
        Stopwatch t("bench");
        report = run_case(setting, options);
      }
      emit_report(report, bench_out);
      for (const std::string& c : report.classifiers) {
        const FiveNumberSummary a = report.summary(c, "auc");
        const FiveNumberSummary s = report.summary(c, "acc_star");
        std::printf("%s %s median_auc=%s median_acc_star=%s\n", report.name.c_str(), c.c_str(),
                    format_double(a.median).c_str(), format_double(s.median).c_str());
      }
    } else if (*sw) {
      const SweepKind kind = parse_sweep_kind(sw_kind);
      const CaseSetting base = resolve_case(sw_case, sw_setting);
      const std::vector<double> values =
          sw_values.empty() ? default_sweep_values(kind) : parse_list(sw_values);
      BenchOptions options;
      options.runs = sw_runs;
      options.seed = sw_seed;
      options.kernels = sw_kernels;
      options.classifiers = parse_classifiers(sw_classifiers, base.family);
      std::vector<BenchmarkReport> reports;
      {
        Stopwatch t("sweep");
        reports = sweep(kind, values, base, options);
      }
      ensure_directory(sw_out);
      std::ofstream table(sw_out + "/sweep.csv", std::ios::binary | std::ios::trunc);
      require(static_cast<bool>(table), ErrorKind::io, "cannot write " + sw_out + "/sweep.csv");
      table << "kind,value,report,classifier,metric,median,q1,q3\n";
      for (std::size_t i = 0; i < reports.size(); ++i) {
        emit_report(reports[i], sw_out + "/" + reports[i].name);
        for (const std::string& c : reports[i].classifiers)
          for (const char* metric : {"auc", "acc_star"}) {
            const FiveNumberSummary s = reports[i].summary(c, metric);
            table << to_string(kind) << ',' << format_double(values[i]) << ','
                  << reports[i].name << ',' << c << ',' << metric << ','
                  << format_double(s.median) << ',' << format_double(s.q1) << ','
                  << format_double(s.q3) << '\n';
          }
      }
      require(static_cast<bool>(table), ErrorKind::io, "failed writing sweep.csv");
    } else if (*rep) {
      const BenchmarkReport report = read_report(rep_in);
      emit_report(report, rep_out);
    } else if (*ana) {
      ensure_directory(ana_out);
      ParameterTable overrides;
      for (const std::string& item : ana_overrides) {
        auto [key, value] = key_value(item);
        overrides[key] = value;
      }
      if (ana_family == "bm") {
        const ModelPair pair = make_model_pair(ModelFamily::constant_drift, overrides);
        std::ofstream out(ana_out + "/bm_reference.csv", std::ios::binary | std::ios::trunc);
        std::ofstream roc(ana_out + "/bm_roc.csv", std::ios::binary | std::ios::trunc);
        require(out && roc, ErrorKind::io, "cannot write into " + ana_out);
        out << "t_end,mean_shift,spread,acc_star,k_star,auc,k,fnr,tnr\n";
        roc << "t_end,threshold,fpr,tpr\n";
        for (double t : parse_list(ana_t)) {
          const BmClosedForm law = bm_closed_form(pair, t);
          const OptimalAccuracy opt = bm_optimal_accuracy(pair, t);
          const RatePair rates = bm_rates(pair, t, ana_k);
          out << format_double(t) << ',' << format_double(law.mean_shift) << ','
              << format_double(law.spread) << ',' << format_double(opt.acc_star) << ','
              << format_double(opt.k_star) << ',' << format_double(bm_auc(pair, t)) << ','
              << format_double(ana_k) << ',' << format_double(rates.fnr) << ','
              << format_double(rates.tnr) << '\n';
          // Score law: N(-m, v^2) under class 0, N(m, v^2) under class 1.
          for (int i = 0; i <= 200 && law.spread > 0.0; ++i) {
            const double c = law.spread * (6.0 - 12.0 * i / 200.0);
            const double fpr = normal_tail((c + law.mean_shift) / law.spread);
            const double tpr = normal_tail((c - law.mean_shift) / law.spread);
            roc << format_double(t) << ',' << format_double(c) << ',' << format_double(fpr) << ','
                << format_double(tpr) << '\n';
          }
        }
        require(out && roc, ErrorKind::io, "failed writing into " + ana_out);
      } else if (ana_family == "ou") {
        std::ofstream out(ana_out + "/ou_reference.csv", std::ios::binary | std::ios::trunc);
        require(static_cast<bool>(out), ErrorKind::io, "cannot write into " + ana_out);
        out << "d,steps,dt,k,samples,fnr,fnr_se,tnr,tnr_se,accuracy\n";
        Stopwatch t("analytic-ou");
        for (double dim : parse_list(ana_dims)) {
          ParameterTable table = overrides;
          table["d"] = std::to_string(static_cast<long long>(dim));
          const ModelPair pair = make_model_pair(ModelFamily::ou, table);
          SimConfig config = SimConfig::from_grid(ana_dt, ana_dt, ana_steps, 2, ana_seed);
          const RatePair r = ou_rates_montecarlo(pair, config, ana_k, ana_samples, ana_seed);
          out << pair.dim() << ',' << ana_steps << ',' << format_double(ana_dt) << ','
              << format_double(ana_k) << ',' << r.samples << ',' << format_double(r.fnr) << ','
              << format_double(r.fnr_se) << ',' << format_double(r.tnr) << ','
              << format_double(r.tnr_se) << ',' << format_double(r.accuracy()) << '\n';
        }
        require(static_cast<bool>(out), ErrorKind::io, "failed writing ou_reference.csv");
      } else {
        fail(ErrorKind::unknown_family, "analytic supports bm and ou, got '" + ana_family + "'");
      }
    }
  } catch (const Error& e) {
    return report_error(to_string(e.kind()), e.what());
  } catch (const std::exception& e) {
    return report_error("internal", e.what());
  }
  return 0;
}
