#include "cli.h"

#if __has_include(<CLI/CLI.hpp>)
#include <CLI/CLI.hpp>
#else
#include <CLI11.hpp>
#endif
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "swarmcit/combinations.h"
#include "swarmcit/corpus.h"
#include "swarmcit/errors.h"
#include "swarmcit/generator.h"
#include "swarmcit/model_io.h"
#include "swarmcit/suite_io.h"
#include "swarmcit/tuple_store.h"
#include "swarmcit/verify.h"

#ifndef SWARMCIT_VERSION
#define SWARMCIT_VERSION "0.0.0"
#endif

namespace swarmcit::cli {
namespace {

constexpr std::string_view kCorpusPrefix = "corpus:";

// A path, or corpus:<name> for an embedded model.
SystemModel load_any_model(const std::string& where) {
  if (std::string_view(where).starts_with(kCorpusPrefix)) {
    return corpus_model(std::string_view(where).substr(kCorpusPrefix.size()));
  }
  return load_model(where);
}

void add_swarm_flags(CLI::App* cmd, SwarmConfig& cfg) {
  cmd->add_option("--seed", cfg.seed, "Master random seed")->capture_default_str();
  cmd->add_option("--particles", cfg.particles, "Swarm size m")->capture_default_str();
  cmd->add_option("--workers", cfg.workers, "Evaluation threads J (m % J == 0)")
      ->capture_default_str();
  cmd->add_option("--inertia", cfg.inertia, "Inertia weight w")->capture_default_str();
  cmd->add_option("--c1", cfg.cognitive, "Cognitive coefficient")->capture_default_str();
  cmd->add_option("--c2", cfg.social, "Social coefficient")->capture_default_str();
  cmd->add_option("--max-iters", cfg.max_iterations, "Iteration cap per swarm round")
      ->capture_default_str();
  cmd->add_option("--stagnation", cfg.stagnation_window,
                  "Iterations without Pareto improvement before a round stops")
      ->capture_default_str();
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error("cannot write '" + path + "'");
  file << text;
}

void list_tuples(const std::vector<ValueTuple>& tuples, std::ostream& err) {
  for (const auto& t : tuples) err << "  " << to_string(t) << '\n';
}

std::string hex(std::uint64_t value) {
  char buffer[20];
  std::snprintf(buffer, sizeof buffer, "%016" PRIx64, value);
  return buffer;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Constrained combinatorial interaction test generation with a "
               "multi-objective particle swarm"};
  app.name("swarmcit");
  app.require_subcommand(0, 1);
  bool show_version = false;
  app.add_flag("--version", show_version, "Print version and corpus hash");

  // generate
  SwarmConfig gen_cfg;
  std::string gen_model;
  std::string gen_out;
  std::string gen_format = "plain";
  double gen_timeout = 0;
  int gen_failed_rounds = 3;
  std::uint64_t gen_completion_budget = GenerateOptions{}.completion_budget;
  auto* generate_cmd = app.add_subcommand("generate", "Generate a constrained covering array");
  generate_cmd->add_option("model", gen_model, "Model file, or corpus:<name>")->required();
  add_swarm_flags(generate_cmd, gen_cfg);
  generate_cmd->add_option("--out", gen_out, "Write the suite here instead of stdout");
  generate_cmd->add_option("--format", gen_format, "plain, csv or json-lines")
      ->capture_default_str();
  generate_cmd->add_option("--timeout", gen_timeout,
                           "Wall-clock budget in seconds (0 = none)");
  generate_cmd->add_option("--max-failed-rounds", gen_failed_rounds,
                           "Consecutive infeasible rounds before reporting stuck tuples")
      ->capture_default_str();
  generate_cmd->add_option("--completion-budget", gen_completion_budget,
                           "Search steps per open tuple once the swarm gives up (0 = off)")
      ->capture_default_str();

  // verify
  std::string verify_model;
  std::string verify_suite;
  std::string verify_report = "text";
  auto* verify_cmd = app.add_subcommand("verify", "Check a suite for coverage and constraints");
  verify_cmd->add_option("model", verify_model, "Model file, or corpus:<name>")->required();
  verify_cmd->add_option("suite", verify_suite, "Suite file in plain format")->required();
  verify_cmd->add_option("--report", verify_report, "text or json")->capture_default_str();

  // bench
  SwarmConfig bench_cfg;
  std::string bench_name;
  std::string bench_csv;
  int bench_reps = 50;
  bool bench_list = false;
  auto* bench_cmd = app.add_subcommand("bench", "Repeat generation on a corpus model");
  bench_cmd->add_option("name", bench_name, "Benchmark name");
  bench_cmd->add_option("--reps", bench_reps, "Repetitions")->capture_default_str();
  bench_cmd->add_option("--csv", bench_csv, "Write per-run CSV here instead of stdout");
  bench_cmd->add_flag("--list", bench_list, "List benchmark names and exit");
  add_swarm_flags(bench_cmd, bench_cfg);

  // tuples
  std::string tuples_model;
  std::string tuples_suite;
  auto* tuples_cmd = app.add_subcommand("tuples", "Dump the pruned t-tuple store");
  tuples_cmd->add_option("model", tuples_model, "Model file, or corpus:<name>")->required();
  tuples_cmd->add_option("--suite", tuples_suite, "Mark the rows of this suite covered first");

  // combinations
  int comb_k = 0;
  int comb_t = 0;
  auto* comb_cmd = app.add_subcommand("combinations", "Print all t-combinations of k");
  comb_cmd->add_option("-k", comb_k, "Parameter count")->required();
  comb_cmd->add_option("-t", comb_t, "Combination size")->required();

  // notation
  std::string notation_model;
  auto* notation_cmd = app.add_subcommand("notation", "Print the model in CA notation");
  notation_cmd->add_option("model", notation_model, "Model file, or corpus:<name>")->required();

  // corpus
  std::string corpus_show;
  auto* corpus_cmd = app.add_subcommand("corpus", "List or print the shipped models");
  corpus_cmd->add_option("--show", corpus_show, "Print this model's file");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (show_version) {
      out << "swarmcit " << SWARMCIT_VERSION << " corpus " << hex(corpus_hash()) << '\n';
      return kOk;
    }

    if (*generate_cmd) {
      const SystemModel model = load_any_model(gen_model);
      const SuiteFormat format = parse_suite_format(gen_format);
      GenerateOptions opts;
      opts.max_failed_rounds = gen_failed_rounds;
      opts.completion_budget = gen_completion_budget;
      if (gen_timeout > 0) {
        opts.timeout = std::chrono::milliseconds(static_cast<long long>(gen_timeout * 1000));
      }
      try {
        GenerationReport report = generate(model, gen_cfg, opts);
        write_text(gen_out, format_suite(report.suite, model, format), out);
        err << "rows=" << report.rows << " rounds=" << report.rounds
            << " tuples=" << report.initial_tuples << " pruned=" << report.pruned_tuples
            << " uncoverable=" << report.uncoverable.size()
            << " millis="
            << std::chrono::duration_cast<std::chrono::milliseconds>(report.wall_time).count()
            << '\n';
        for (const auto& t : report.uncoverable) err << "  uncoverable " << to_string(t) << '\n';
        return kOk;
      } catch (const StuckTuples& e) {
        err << "error: " << e.what() << "; possibly uncoverable under the constraints:\n";
        list_tuples(e.tuples(), err);
        return kStuck;
      } catch (const GenerationTimeout& e) {
        write_text(gen_out, format_suite(e.partial().suite, model, format), out);
        err << "error: " << e.what() << "; " << e.open_tuples().size()
            << " tuples still open:\n";
        list_tuples(e.open_tuples(), err);
        return kTimeout;
      }
    }

    if (*verify_cmd) {
      const SystemModel model = load_any_model(verify_model);
      const TestSuite suite = load_suite(verify_suite, model);
      const VerificationResult result = check(suite, model);
      if (verify_report == "json") {
        nlohmann::json j;
        j["passed"] = result.passed;
        j["valid_tuples"] = result.valid_tuples;
        j["covered"] = result.covered;
        j["missing"] = nlohmann::json::array();
        for (const auto& t : result.missing) {
          j["missing"].push_back({{"params", t.params}, {"values", t.values}});
        }
        j["uncoverable"] = nlohmann::json::array();
        for (const auto& t : result.uncoverable) {
          j["uncoverable"].push_back({{"params", t.params}, {"values", t.values}});
        }
        j["violating_rows"] = nlohmann::json::array();
        for (const auto& v : result.violating_rows) {
          nlohmann::json assignments = nlohmann::json::array();
          for (const auto& a : v.tuple.assignments()) {
            assignments.push_back({a.param, a.value});
          }
          j["violating_rows"].push_back({{"row", v.row}, {"forbidden", assignments}});
        }
        out << j.dump() << '\n';
      } else if (verify_report == "text") {
        out << (result.passed ? "PASS" : "FAIL") << " covered=" << result.covered << '/'
            << result.valid_tuples << " rows=" << suite.size()
            << " violating_rows=" << result.violating_rows.size() << '\n';
        for (const auto& t : result.missing) out << "missing " << to_string(t) << '\n';
        for (const auto& t : result.uncoverable) {
          out << "uncoverable " << to_string(t) << '\n';
        }
        for (const auto& v : result.violating_rows) {
          out << "violation row " << v.row << ':';
          for (const auto& a : v.tuple.assignments()) out << ' ' << a.param << ':' << a.value;
          out << '\n';
        }
      } else {
        err << "error: --report must be text or json\n";
        return kUsage;
      }
      return result.passed ? kOk : kVerifyFailed;
    }

    if (*bench_cmd) {
      if (bench_list) {
        for (const auto& name : benchmark_names()) out << name << '\n';
        return kOk;
      }
      if (bench_name.empty()) {
        err << "error: bench needs a benchmark name (see --list)\n";
        return kUsage;
      }
      BenchmarkStats stats;
      try {
        stats = run_benchmark(bench_name, bench_cfg, bench_reps);
      } catch (const StuckTuples& e) {
        err << "error: " << e.what() << '\n';
        list_tuples(e.tuples(), err);
        return kStuck;
      }
      std::ostringstream csv;
      csv << "name,rep,seed,size,millis,verified\n";
      for (const auto& r : stats.runs) {
        char millis[32];
        std::snprintf(millis, sizeof millis, "%.3f", r.millis);
        csv << stats.name << ',' << r.rep << ',' << r.seed << ',' << r.size << ',' << millis
            << ',' << (r.verified ? "true" : "false") << '\n';
      }
      write_text(bench_csv, csv.str(), out);
      err << stats.name << " best=" << stats.best_size << " mean=" << stats.mean_size
          << " mean_millis=" << stats.mean_millis << '\n';
      return kOk;
    }

    if (*tuples_cmd) {
      const SystemModel model = load_any_model(tuples_model);
      TupleStore store = TupleStore::build(model);
      store.prune_constrained(model.constraints());
      if (!tuples_suite.empty()) {
        for (const auto& row : load_suite(tuples_suite, model).rows) {
          store.mark_covered(row.values());
        }
      }
      std::ostringstream dump;
      for (std::size_t b = 0; b < store.bucket_count(); ++b) {
        const auto& bucket = store.bucket(b);
        for (std::size_t i = 0; i < bucket.size(); ++i) {
          auto values = bucket.tuple(i);
          for (std::size_t j = 0; j < values.size(); ++j) {
            dump << bucket.combination[j] << ':' << values[j] << ' ';
          }
          dump << to_string(bucket.states[i]) << '\n';
        }
      }
      out << dump.str();
      return kOk;
    }

    if (*comb_cmd) {
      std::ostringstream lines;
      for_each_combination(comb_k, comb_t, [&](std::span<const int> comb) {
        for (std::size_t j = 0; j < comb.size(); ++j) lines << (j ? " " : "") << comb[j];
        lines << '\n';
      });
      out << lines.str();
      return kOk;
    }

    if (*notation_cmd) {
      const Notation n = to_notation(load_any_model(notation_model));
      out << n.array << '\n';
      if (!n.constraints.empty()) out << "constraints " << n.constraints << '\n';
      return kOk;
    }

    if (*corpus_cmd) {
      if (!corpus_show.empty()) {
        out << corpus_entry(corpus_show).text;
        return kOk;
      }
      for (const auto& name : benchmark_names()) {
        out << name << '\t' << corpus_entry(name).provenance << '\n';
      }
      return kOk;
    }

    out << app.help();
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace swarmcit::cli
