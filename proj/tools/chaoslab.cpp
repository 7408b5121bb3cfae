// chaoslab command line: run | orbit | witness | sensitivity | report

#include <fstream>
#include <iostream>

#include "CLI11.hpp"

#include "chaoslab/cli_runner.hpp"
#include "chaoslab/systems.hpp"

using namespace chaoslab;

namespace {

struct Common {
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  std::string tol = "1/1073741824";
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--jobs", c.jobs, "worker threads (results do not depend on it)")->check(CLI::Range(1u, 1024u));
  app->add_option("--seed", c.seed, "random seed");
  app->add_option("--tol", c.tol, "distance tolerance for float output, as num/den");
}

Ball parse_ball_arg(const System& sys, const std::vector<std::string>& v) {
  Rat r = parse_rat(v.at(1));
  if (sgn(r) <= 0) throw Error(ErrorCode::invalid_argument, "ball radius must be positive");
  return Ball{sys.parse_point(v.at(0)), r};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chaotic group actions: constructions and budgeted chaos checks"};
  app.require_subcommand(1);

  Common run_c, orbit_c, witness_c, sens_c;

  auto* run = app.add_subcommand("run", "run every check of a config and write report.json");
  std::string config;
  std::string out_dir;
  bool run_recheck = false;
  run->add_option("config", config, "config JSON")->required();
  run->add_option("--out", out_dir, "output directory (default: the config's output field)");
  run->add_flag("--recheck", run_recheck, "re-evaluate every certificate after the run");
  add_common(run, run_c);

  auto* orbit = app.add_subcommand("orbit", "dump an orbit of the first generator as CSV");
  std::string orbit_sys, orbit_point, orbit_out;
  std::int64_t steps = 10;
  orbit->add_option("--system", orbit_sys, "system spec, e.g. anosov(3,3)")->required();
  orbit->add_option("--point", orbit_point, "start point")->required();
  orbit->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
  orbit->add_option("--out", orbit_out, "CSV file (default: stdout)");
  add_common(orbit, orbit_c);

  auto* witness = app.add_subcommand("witness", "one-shot transitivity search between two balls");
  std::string witness_sys;
  std::vector<std::string> ball_u, ball_v;
  std::int64_t witness_budget = 32;
  std::int64_t witness_samples = 16;
  witness->add_option("--system", witness_sys, "system spec")->required();
  witness->add_option("--ballU", ball_u, "center radius")->expected(2)->required();
  witness->add_option("--ballV", ball_v, "center radius")->expected(2)->required();
  witness->add_option("--budget", witness_budget, "maximal word length")->check(CLI::NonNegativeNumber);
  witness->add_option("--samples", witness_samples, "sampled points of U")->check(CLI::NonNegativeNumber);
  add_common(witness, witness_c);

  auto* sens = app.add_subcommand("sensitivity", "certify a sensitivity constant on random probes");
  std::string sens_sys, delta;
  std::vector<std::string> eps;
  std::int64_t probes = 20;
  std::int64_t sens_budget = 32;
  sens->add_option("--system", sens_sys, "system spec")->required();
  sens->add_option("--delta", delta, "separation to reach")->required();
  sens->add_option("--eps", eps, "neighbourhood radii")->required();
  sens->add_option("--probes", probes, "probe points")->check(CLI::PositiveNumber);
  sens->add_option("--budget", sens_budget, "maximal word length")->check(CLI::NonNegativeNumber);
  add_common(sens, sens_c);

  auto* report = app.add_subcommand("report", "summarize a report.json");
  std::string report_in;
  bool report_recheck = false;
  report->add_option("--in", report_in, "report.json")->required();
  report->add_flag("--recheck", report_recheck, "re-evaluate every certificate");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    if (*run) {
      RunOptions opts;
      opts.jobs = run_c.jobs;
      opts.seed = run_c.seed;
      opts.tol = parse_rat(run_c.tol);
      opts.recheck = run_recheck;
      if (!out_dir.empty()) opts.output = out_dir;
      return run_command(config, opts, std::cout, std::cerr);
    }
    if (*orbit) {
      auto sys = make_system(orbit_sys);
      std::string csv = orbit_csv(*sys, sys->parse_point(orbit_point), steps);
      if (orbit_out.empty()) {
        std::cout << csv;
      } else {
        std::ofstream f(orbit_out, std::ios::binary);
        if (!f) throw Error(ErrorCode::invalid_argument, "cannot write " + orbit_out);
        f << csv;
      }
      return 0;
    }
    if (*witness) {
      auto sys = make_system(witness_sys);
      SearchBudget b;
      b.word_len_max = witness_budget;
      b.samples = witness_samples;
      auto r = transitivity_witness(*sys, parse_ball_arg(*sys, ball_u), parse_ball_arg(*sys, ball_v), b,
                                    witness_c.seed.value_or(0));
      Json j = to_json(r, b);
      j["system"] = sys->name();
      std::cout << j.dump(2) << '\n';
      return r.status == Status::found ? 0 : 1;
    }
    if (*sens) {
      auto sys = make_system(sens_sys);
      SearchBudget b;
      b.word_len_max = sens_budget;
      std::vector<Rat> eps_list;
      for (const auto& e : eps) eps_list.push_back(parse_rat(e));
      auto r = sensitivity_lower_bound(*sys, parse_rat(delta), eps_list, probes, b,
                                       sens_c.seed.value_or(0), sens_c.jobs);
      Json j = to_json(r, b);
      j["system"] = sys->name();
      std::cout << j.dump(2) << '\n';
      return r.status == Status::certified_bound ? 0 : 1;
    }
    if (*report) {
      std::ifstream f(report_in);
      if (!f) throw Error(ErrorCode::invalid_argument, "cannot read " + report_in);
      Json doc = Json::parse(f);
      std::cout << summarize_report(doc);
      if (report_recheck) {
        auto failures = recheck_report(doc, std::cerr);
        std::cout << "recheck: " << failures << " failing claims\n";
        if (failures) return 1;
      }
      return doc.value("pass", false) ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 2;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "report: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
