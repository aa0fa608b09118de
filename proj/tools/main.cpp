#include <iostream>

#include "commands.hpp"
#include "hypflow/error.hpp"

using namespace hypflow;
using namespace hypflow::cli;

int main(int argc, char** argv) {
  CLI::App app{"hypflow: growth, pressure and intersection numbers for hyperbolic groups"};
  app.require_subcommand(1);
  app.set_version_flag("--version", HYPFLOW_VERSION);

  Run run;
  run.argv.assign(argv, argv + argc);
  std::function<Json()> action;
  register_commands(app, run, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "hypflow: " << e.what() << '\n';
    return kExitError;
  }

  const std::string seed_flag = run.app && run.app->get_option_no_throw("--seed") && run.app->count("--seed")
                                    ? run.app->get_option("--seed")->as<std::string>()
                                    : "";
  try {
    Json out = action();
    out["manifest"] = run.manifest(seed_value(seed_flag));
    std::cout << out.dump(2) << '\n';
    return kExitOk;
  } catch (const ValidationFailure& f) {
    Json out = f.report;
    out["manifest"] = run.manifest(seed_value(seed_flag));
    std::cout << out.dump(2) << '\n';
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "hypflow: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "hypflow: " << e.what() << '\n';
    return kExitError;
  }
}
