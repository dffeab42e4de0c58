#include "kuga/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  CLI::App app{"Classify and certify symplectic representations of hermitian groups"};
  app.require_subcommand(1);

  kuga::ClassifyArgs ca;
  auto* classify = app.add_subcommand("classify", "enumerate minimal candidates and certify each");
  classify->add_option("--spec", ca.spec_path, "group spec file")->required();
  classify->add_option("--max-dim", ca.max_dim, "maximal real dimension")->required();
  classify->add_flag("--exact", ca.exact, "exact Gaussian-rational H-residuals");
  classify->add_option("--report", ca.report_path, "JSON report path");
  classify->add_option("--markdown", ca.markdown_path, "markdown report path");

  kuga::VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "rigidify and certify one candidate");
  verify->add_option("--spec", va.spec_path, "group spec file")->required();
  verify->add_option("--candidate", va.candidate, "canonical candidate key")->required();
  verify->add_flag("--exact", va.exact, "exact Gaussian-rational H-residuals");
  verify->add_option("--report", va.report_path, "JSON report path");
  verify->add_option("--dump-matrices", va.dump_dir, "directory for E and J dumps");

  kuga::ExampleArgs ea;
  auto* example = app.add_subcommand("example", "run the built-in worked example");
  example->add_option("name", ea.name, "example name (sec6)")->required();
  example->add_option("--max-dim", ea.max_dim, "maximal real dimension");
  example->add_flag("--exact", ea.exact, "exact Gaussian-rational H-residuals");
  example->add_option("--report", ea.report_path, "JSON report path");
  example->add_option("--markdown", ea.markdown_path, "markdown report path");
  example->add_option("--dump-matrices", ea.dump_dir, "directory for matrix dumps of family (5)")
      ->expected(0, 1)
      ->default_str("matrices");

  std::string render_path;
  auto* render = app.add_subcommand("render", "print the canonical form of a spec file");
  render->add_option("--spec", render_path, "group spec file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kuga::kExitParse;
  }

  try {
    if (*classify) return kuga::cmd_classify(ca, std::cout, std::cerr);
    if (*verify) return kuga::cmd_verify(va, std::cout, std::cerr);
    if (*example) return kuga::cmd_example(ea, std::cout, std::cerr);
    if (*render) return kuga::cmd_render(render_path, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kuga::kExitDeadZone;
  }
  return kuga::kExitParse;
}
