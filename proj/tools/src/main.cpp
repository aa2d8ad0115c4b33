#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"zener: Bloch electrons in a constant field, fiberwise"};
  app.require_subcommand(1);
  std::string config_path;
  std::string out_dir;
  zener::cli::RunOptions opt;
  for (const auto& name : zener::cli::command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("-c,--config", config_path, "JSON run configuration")->required();
    sub->add_option("-o,--out", out_dir, "output directory (ZENER_OUTPUT_DIR wins)");
    if (name == "lz-matrix")
      sub->add_flag("--dump-heff", opt.dump_heff, "also write the 2x2 h_eff samples");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  const std::string command = app.get_subcommands().front()->get_name();
  try {
    zener::cli::RunConfig cfg = zener::cli::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    return zener::cli::run(command, cfg, opt, std::cout);
  } catch (const std::exception& e) {
    const int rc = zener::cli::exit_code_for(e);
    std::cerr << "zener " << command << ": "
              << (rc == 2 ? "config error: " : rc == 3 ? "numerical abort: " : "error: ")
              << e.what() << "\n";
    return rc;
  }
}
