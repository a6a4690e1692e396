#include <string>

#include <CLI11.hpp>

#include "runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"ion string reordering toolkit: rotating-quadrupole waveforms, "
               "N-ion dynamics and electrode design"};
  app.require_subcommand(1);

  struct SubArgs {
    std::string config;
    std::string out = "out";
    int jobs = 1;
    std::string format = "csv";
  };

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"swap", "run one exchange and export result + trajectory"},
      {"sweep", "heating vs swap duration over profiles and drive modes"},
      {"design", "electrode charge ratio and quadrupole strengths vs aspect"},
      {"zigzag", "critical transverse/longitudinal ratio vs ion number"},
      {"barrier", "RF barrier for a frequency triple and offset"},
      {"lossbound", "survival-statistics energy bound"},
      {"threepoint", "three-point turn through a spatially varying trap"},
  };

  std::map<std::string, SubArgs> args;
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    SubArgs& a = args[name];
    sub->add_option("--config", a.config, "run configuration file")
        ->required()
        ->check(CLI::ExistingFile);
    sub->add_option("--out", a.out, "output directory");
    sub->add_option("--jobs", a.jobs, "worker threads for sweep cells")
        ->check(CLI::PositiveNumber);
    sub->add_option("--format", a.format, "table output format")
        ->check(CLI::IsMember({"csv", "json"}));
  }

  CLI11_PARSE(app, argc, argv);

  const std::string name = app.get_subcommands().front()->get_name();
  const SubArgs& a = args[name];
  ionrot::cli::RunOptions opt;
  opt.out_dir = a.out;
  opt.jobs = a.jobs;
  opt.format = a.format == "json" ? ionrot::TableFormat::Json : ionrot::TableFormat::Csv;
  return ionrot::cli::run_command(name, a.config, opt);
}
