// Command-line front end; see `cremona --help`.

#include <iostream>

#include "CLI11.hpp"
#include "cremona/cli.hpp"

int main(int argc, char** argv) {
  namespace cli = cremona::cli;
  cli::JobManifest m;
  std::string manifest;
  unsigned degree = 0, degree_max = 0;
  std::size_t dim = 0;

  CLI::App app{"Exact projective linearization of birational maps and CR domain checks"};
  app.add_option("--task", m.task, "linearize | verify | compose | segre-variety | levi | decompose | degree-bound | domain-report")
      ->check(CLI::IsMember(cli::task_names()));
  app.add_option("--input", m.input, "input JSON file");
  auto* o_degree = app.add_option("--degree", degree, "degree m (first degree tried by linearize; map degree d for degree-bound)");
  auto* o_degree_max = app.add_option("--degree-max", degree_max, "last degree tried by linearize");
  auto* o_dim = app.add_option("--dim", dim, "projective dimension n for degree-bound");
  auto* o_cap = app.add_option("--dim-cap", m.dim_cap, "largest invariant space allowed")->capture_default_str();
  auto* o_samples = app.add_option("--samples", m.samples, "random sample points per check")->capture_default_str();
  auto* o_seed = app.add_option("--seed", m.seed, "seed for all sampling")->capture_default_str();
  app.add_option("--out", m.out, "output JSON file (stdout when absent)");
  app.add_option("--manifest", manifest, "JSON file with the same keys as the flags; flags take precedence");

  try {
    app.parse(argc, argv);
    if (o_degree->count()) m.degree = degree;
    if (o_degree_max->count()) m.degree_max = degree_max;
    if (o_dim->count()) m.dim = dim;
    if (!manifest.empty()) {
      cli::merge_manifest_file(m, manifest, o_degree->count() > 0, o_degree_max->count() > 0, o_dim->count() > 0,
                               o_cap->count() > 0, o_samples->count() > 0, o_seed->count() > 0);
    }
    if (m.task.empty()) throw CLI::RequiredError("--task");
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : cli::exit_input;
  } catch (const cremona::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_input;
  }
  return cli::run(m, std::cout, std::cerr);
}
