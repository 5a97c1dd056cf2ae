// rfidsim — RFID access-control simulation over a four-node sensor network.
//
// Subcommands: simulate (run the polling chain against a tag-presence
// scenario), registry (manage the tag table), validate (annotate detections
// with verdicts), report (detection-count error analysis over a grid of
// runs).

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include <CLI11.hpp>

#include "rfidsim/metrics.hpp"
#include "rfidsim/simulation.hpp"

namespace {

using namespace rfidsim;

constexpr int kExitOk = 0;
constexpr int kExitDomain = 1;
constexpr int kExitUsage = 2;

std::string default_path(const char* env_var, const char* fallback) {
  const char* value = std::getenv(env_var);
  return value && *value ? value : fallback;
}

bool parse_flag_value(const std::string& text, bool& out) {
  if (text == "yes" || text == "true" || text == "1") { out = true; return true; }
  if (text == "no" || text == "false" || text == "0") { out = false; return true; }
  return false;
}

struct SimulateOptions {
  SimConfig cfg;
  std::string scenario_path;
  std::string log_path;
  std::string registry_path;
  bool trace = false;
  bool with_validator = false;
};

int run_simulate(SimulateOptions& opt) {
  FieldSchedule schedule;
  try {
    opt.cfg.validate();
    schedule = FieldSchedule::load(opt.scenario_path);
  } catch (const ParseError& e) {
    std::cerr << "rfidsim: scenario " << opt.scenario_path << ": " << e.what()
              << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  }
  if (opt.trace) opt.cfg.trace = &std::cerr;
  try {
    DetectionLog log(opt.log_path);
    if (opt.with_validator) {
      TagRegistry registry(opt.registry_path);
      ValidationParams validation{
          opt.cfg.runtime + 2 * opt.cfg.validation_delay,
          opt.cfg.validation_delay};
      CoRunReport report =
          run_with_validator(opt.cfg, schedule, log, registry, validation);
      std::cout << report.sim.summary() << '\n'
                << report.validation.summary() << '\n';
    } else {
      LogSink sink(log);
      std::cout << run_simulation(opt.cfg, schedule, sink).summary() << '\n';
    }
  } catch (const ConfigError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

struct ValidateOptions {
  ValidationParams params;
  std::string log_path;
  std::string registry_path;
  bool wall_clock = false;
};

int run_validate(ValidateOptions& opt) {
  if (opt.params.interval <= 0 || opt.params.duration < opt.params.interval) {
    std::cerr << "rfidsim: duration must be >= interval > 0\n";
    return kExitUsage;
  }
  if (!std::filesystem::exists(opt.log_path)) {
    std::cerr << "rfidsim: log file not found: " << opt.log_path << '\n';
    return kExitUsage;
  }
  try {
    DetectionLog log(opt.log_path);
    TagRegistry registry(opt.registry_path);
    std::function<void(double)> wait;
    if (opt.wall_clock) {
      wait = [](double seconds) {
        std::this_thread::sleep_for(std::chrono::duration<double>(seconds));
      };
    }
    ValidationCounters counters =
        run_validation(opt.params, log, registry, wait);
    std::cout << counters.summary() << '\n';
  } catch (const ConfigError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

struct ReportOptions {
  std::string grid;
  std::string scenario_path;
  double jitter_max = 0;
  std::uint64_t seed = 0;
  bool csv = false;
};

int run_report(ReportOptions& opt) {
  std::vector<double> delays, runtimes;
  FieldSchedule schedule;
  try {
    std::tie(delays, runtimes) = parse_grid(opt.grid);
    schedule = FieldSchedule::load(opt.scenario_path);
  } catch (const ParseError& e) {
    std::cerr << "rfidsim: scenario " << opt.scenario_path << ": " << e.what()
              << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  }
  try {
    std::vector<RunResult> results;
    for (double delay : delays) {
      for (double runtime : runtimes) {
        SimConfig cfg;
        cfg.poll_delay = delay;
        cfg.runtime = runtime;
        cfg.jitter_max = opt.jitter_max;
        cfg.seed = opt.seed;
        MemorySink sink;
        SimReport rep = run_simulation(cfg, schedule, sink);
        std::int64_t theory = theoretical_detections(runtime, delay);
        results.push_back(RunResult{delay, runtime, theory, rep.detections,
                                    percent_error(rep.detections, theory)});
      }
    }
    std::cout << (opt.csv ? report_csv(results) : report_text(results));
  } catch (const ConfigError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RFID access-control simulation over a four-node sensor network"};
  app.require_subcommand(1);

  // simulate
  SimulateOptions sim;
  sim.log_path = default_path("LOG", "detections.log");
  sim.registry_path = default_path("REGISTRY", "tags.tsv");
  auto* simulate = app.add_subcommand("simulate", "Run the polling chain");
  simulate->add_option("--poll-delay", sim.cfg.poll_delay,
                       "Seconds between polls (default 2)");
  simulate->add_option("--runtime", sim.cfg.runtime, "Run length in seconds")
      ->required();
  simulate->add_option("--scenario", sim.scenario_path,
                       "Tag-presence schedule file")
      ->required();
  simulate->add_option("--jitter-max", sim.cfg.jitter_max,
                       "Upper bound of the per-hop delay, seconds");
  simulate->add_option("--seed", sim.cfg.seed, "Jitter RNG seed");
  simulate->add_option("--log", sim.log_path, "Detection log path");
  simulate->add_option("--slave-addr", sim.cfg.slave_addr,
                       "Reader write address (even)");
  simulate->add_option("--start-epoch", sim.cfg.start_epoch,
                       "Unix time mapped to t=0 for log timestamps");
  simulate->add_flag("--trace", sim.trace, "Print the event trace to stderr");
  simulate->add_flag("--wall-clock", sim.cfg.wall_clock,
                     "Pace virtual delays against real time");
  simulate->add_flag("--with-validator", sim.with_validator,
                     "Run the log validator alongside the chain");
  simulate->add_option("--interval", sim.cfg.validation_delay,
                       "Validator scan interval for --with-validator");
  simulate->add_option("--registry", sim.registry_path,
                       "Tag registry path for --with-validator");

  // registry
  std::string registry_path = default_path("REGISTRY", "tags.tsv");
  std::string tag_arg, name_arg, authorized_arg = "yes";
  auto* registry_cmd = app.add_subcommand("registry", "Manage the tag table");
  registry_cmd->require_subcommand(1);
  registry_cmd->add_option("--registry", registry_path, "Tag registry path");
  auto* enroll = registry_cmd->add_subcommand("enroll", "Add a tag");
  enroll->add_option("tag", tag_arg, "Tag id (hex)")->required();
  enroll->add_option("--name", name_arg, "First name");
  enroll->add_option("--authorized", authorized_arg, "yes|no (default yes)");
  auto* revoke = registry_cmd->add_subcommand("revoke", "Clear authorization");
  revoke->add_option("tag", tag_arg, "Tag id (hex)")->required();
  auto* authorize =
      registry_cmd->add_subcommand("authorize", "Grant authorization");
  authorize->add_option("tag", tag_arg, "Tag id (hex)")->required();
  auto* list = registry_cmd->add_subcommand("list", "Print the table");

  // validate
  ValidateOptions val;
  val.log_path = default_path("LOG", "detections.log");
  val.registry_path = default_path("REGISTRY", "tags.tsv");
  auto* validate = app.add_subcommand("validate", "Annotate detections");
  validate->add_option("--duration", val.params.duration,
                       "Seconds the scan loop runs")
      ->required();
  validate->add_option("--interval", val.params.interval,
                       "Seconds between passes (default 2)");
  validate->add_option("--log", val.log_path, "Detection log path");
  validate->add_option("--registry", val.registry_path, "Tag registry path");
  validate->add_flag("--wall-clock", val.wall_clock,
                     "Sleep the real interval between passes");

  // report
  ReportOptions rep;
  auto* report = app.add_subcommand("report", "Detection-count error analysis");
  report->add_option("--grid", rep.grid, "`<delays>;<runtimes>`, e.g. 2,5;30,60")
      ->required();
  report->add_option("--scenario", rep.scenario_path,
                     "Tag-presence schedule file")
      ->required();
  report->add_option("--jitter-max", rep.jitter_max,
                     "Upper bound of the per-hop delay, seconds");
  report->add_option("--seed", rep.seed, "Jitter RNG seed");
  report->add_flag("--csv", rep.csv, "Emit CSV instead of the text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "rfidsim: " << e.what() << '\n';
    return kExitUsage;
  }

  if (*simulate) return run_simulate(sim);
  if (*validate) return run_validate(val);
  if (*report) return run_report(rep);

  if (*registry_cmd) {
    try {
      TagRegistry registry(registry_path);
      if (*enroll) {
        bool authorized = true;
        if (!parse_flag_value(authorized_arg, authorized)) {
          std::cerr << "rfidsim: --authorized expects yes or no, got \""
                    << authorized_arg << "\"\n";
          return kExitUsage;
        }
        registry.enroll(TagRecord{tag_arg, authorized, name_arg});
      } else if (*revoke) {
        registry.set_authorized(tag_arg, false);
      } else if (*authorize) {
        registry.set_authorized(tag_arg, true);
      } else if (*list) {
        std::cout << "Tag ID\tIs Authorized\tFirst Name\n";
        for (const TagRecord& r : registry.list()) {
          std::cout << r.tag_id << '\t' << (r.is_authorized ? "Yes" : "No")
                    << '\t' << r.first_name << '\n';
        }
      }
    } catch (const RegistryError& e) {
      if (e.kind() == RegistryError::Kind::InvalidTag) {
        std::cerr << "rfidsim: " << e.what() << '\n';
        return kExitUsage;
      }
      std::cerr << "rfidsim: " << e.what() << '\n';
      return kExitDomain;
    } catch (const ParseError& e) {
      std::cerr << "rfidsim: registry " << registry_path << ": " << e.what()
                << '\n';
      return kExitUsage;
    } catch (const std::exception& e) {
      std::cerr << "rfidsim: " << e.what() << '\n';
      return kExitDomain;
    }
    return kExitOk;
  }
  return kExitUsage;
}
