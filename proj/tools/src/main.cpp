// Copyright 2026 The mrbounds Authors
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

#include <CLI11.hpp>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <sstream>

#include "mrbounds/errors.hpp"
#include "mrbounds_cli/experiment.hpp"

namespace {

using mrbounds::cli::ExperimentConfig;

// Options bound to temporaries so that flags given on the command line can be
// applied on top of a JSON config after parsing.
class OptionSet {
 public:
  template <class T, class M>
  void add(CLI::App* app, const std::string& flag, M ExperimentConfig::*member,
           const std::string& help) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(flag, *value, help);
    appliers_.push_back([opt, value, member](ExperimentConfig& cfg) {
      if (opt->count() > 0) cfg.*member = *value;
    });
  }

  void add_flag(CLI::App* app, const std::string& flag, bool ExperimentConfig::*member,
                const std::string& help) {
    CLI::Option* opt = app->add_flag(flag, help);
    appliers_.push_back([opt, member](ExperimentConfig& cfg) {
      if (opt->count() > 0) cfg.*member = true;
    });
  }

  void apply(ExperimentConfig& cfg) const {
    for (const auto& f : appliers_) f(cfg);
  }

 private:
  std::vector<std::function<void(ExperimentConfig&)>> appliers_;
};

void add_common(CLI::App* app, OptionSet& o, std::string& config_path) {
  app->add_option("--config", config_path, "JSON config file; flags override its values");
  o.add<std::string>(app, "--model", &ExperimentConfig::model,
                     "tandem | tandem_slowdown | tandem_speedup | coupled | tandem_perturbed");
  o.add<std::string>(app, "--measure", &ExperimentConfig::measure, "blocking | qlen1 | qlen2 | one");
  o.add<double>(app, "--lambda", &ExperimentConfig::lambda, "arrival rate (node 1 for coupled)");
  o.add<double>(app, "--mu1", &ExperimentConfig::mu1, "service rate of node 1");
  o.add<double>(app, "--mu2", &ExperimentConfig::mu2, "service rate of node 2");
  o.add<double>(app, "--mu2-slow", &ExperimentConfig::mu2_slow, "slow-down rate of node 2");
  o.add<double>(app, "--mu2-fast", &ExperimentConfig::mu2_fast, "speed-up rate of node 2");
  o.add<double>(app, "--lambda2", &ExperimentConfig::lambda2, "arrival rate of node 2 (coupled)");
  o.add<double>(app, "--mu1-sat", &ExperimentConfig::mu1_sat, "node 1 rate while node 2 is full");
  o.add<double>(app, "--mu2-sat", &ExperimentConfig::mu2_sat, "node 2 rate while node 1 is full");
  o.add<int>(app, "--l-min", &ExperimentConfig::l_min, "smallest L of the sweep (L1 = L2)");
  o.add<int>(app, "--l-max", &ExperimentConfig::l_max, "largest L of the sweep");
  o.add<int>(app, "--l1", &ExperimentConfig::l1, "buffer size of node 1");
  o.add<int>(app, "--l2", &ExperimentConfig::l2, "buffer size of node 2");
  o.add_flag(app, "--oracle", &ExperimentConfig::oracle, "compute the exact value and check containment");
  o.add<int>(app, "--audit-horizon", &ExperimentConfig::audit_horizon,
             "audit certificates against value iteration up to this horizon");
  o.add<std::string>(app, "--emit-lp", &ExperimentConfig::emit_lp, "write LP files into DIR");
  o.add<std::string>(app, "--emit-cert", &ExperimentConfig::emit_cert, "write certificates into DIR");
  o.add<std::string>(app, "--out", &ExperimentConfig::out, "output file (default stdout)");
  o.add<std::string>(app, "--model-file", &ExperimentConfig::model_file, "original walk from a model file");
  o.add<std::string>(app, "--perturbed-file", &ExperimentConfig::perturbed_file,
                     "perturbed walk and measure from a model file");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = mrbounds::cli;

  CLI::App app{"Error bounds for finite random walks via product-form perturbation"};
  app.require_subcommand(1);

  struct Command {
    CLI::App* app;
    OptionSet options;
    std::string config_path;
  };
  std::vector<std::unique_ptr<Command>> commands;
  auto make = [&](const char* name, const char* help) {
    auto c = std::make_unique<Command>();
    c->app = app.add_subcommand(name, help);
    add_common(c->app, c->options, c->config_path);
    commands.push_back(std::move(c));
    return commands.back().get();
  };
  make("bound", "lower and upper bounds per grid");
  make("sweep", "bounds over a range of L (same as bound)");
  make("exact", "exact value from the stationary distribution");
  make("verify", "structural checks of the models and certificates");
  Command* model = make("model", "write a walk as a model file");
  bool perturbed = false;
  model->app->add_flag("--perturbed", perturbed, "write the perturbed walk with its measure");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kExitOk : cli::kExitConfig;
  }

  for (const auto& c : commands) {
    if (!c->app->parsed()) continue;
    ExperimentConfig cfg;
    try {
      if (!c->config_path.empty()) {
        std::ifstream in(c->config_path);
        if (!in) throw mrbounds::ConfigError("cannot read " + c->config_path);
        std::ostringstream ss;
        ss << in.rdbuf();
        cfg = cli::config_from_json(ss.str());
      }
      c->options.apply(cfg);
    } catch (const mrbounds::ConfigError& e) {
      std::cerr << "error: " << e.what() << "\n";
      return cli::kExitConfig;
    }

    std::ofstream file;
    if (!cfg.out.empty()) {
      file.open(cfg.out);
      if (!file) {
        std::cerr << "error: cannot write " << cfg.out << "\n";
        return cli::kExitConfig;
      }
    }
    std::ostream& out = cfg.out.empty() ? std::cout : file;

    const std::string name = c->app->get_name();
    if (name == "bound" || name == "sweep") return cli::cmd_bound(cfg, out, std::cerr);
    if (name == "exact") return cli::cmd_exact(cfg, out, std::cerr);
    if (name == "verify") return cli::cmd_verify(cfg, out, std::cerr);
    return cli::cmd_model(cfg, perturbed, out, std::cerr);
  }
  return cli::kExitConfig;
}
