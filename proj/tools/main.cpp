#include <CLI11.hpp>

#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  lva::cli::RunConfig cfg;
  CLI::App app{"Exact computations in lattice vertex algebras and their automorphism groups"};
  app.set_version_flag("--version", std::string(lva::cli::kVersion));
  app.require_subcommand(1, 1);

  struct Spec {
    const char* name;
    const char* help;
  };
  const Spec commands[] = {
      {"analyze", "roots, Cartan type, Weyl and orthogonal groups of the lattice"},
      {"verify-axioms", "vertex algebra identities on the monomial basis (default max weight 3, exhaustive)"},
      {"graded-dims", "graded dimensions by enumeration vs theta series oracle (default max weight 6)"},
      {"aut-report", "cover group, Tits group and torus on a weight truncation (default truncation 1)"},
      {"conformal", "conformal vector over the ring and Virasoro relations (default max weight 2)"},
  };
  for (const auto& c : commands) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--lattice", cfg.lattice_source, "preset (A1, A2, A1A1, D4, E8) or lattice file")
        ->capture_default_str();
    sub->add_option("--ring", cfg.ring, "Q, Z, Fp:<p> or Zn:<n>")->capture_default_str();
    sub->add_option("--max-weight", cfg.max_weight, "weight bound (-1: command default)");
    sub->add_option("--max-mode", cfg.max_mode, "bound on |mode index|")->capture_default_str();
    sub->add_option("--truncation", cfg.truncation, "truncation weight N for aut-report")->capture_default_str();
    sub->add_option("--samples", cfg.samples, "0: exhaustive, k > 0: seeded samples, -1: command default");
    sub->add_option("--seed", cfg.seed, "64-bit seed for all sampling")->capture_default_str();
    sub->add_option("--output,-o", cfg.output, "output path (default standard output)");
    sub->add_option("--format", cfg.format, "text or structured")
        ->check(CLI::IsMember({"text", "structured", "json"}))
        ->capture_default_str();
    sub->add_flag("--timing", cfg.timing, "include wall time in the report (breaks byte-identity)");
    sub->add_option("--threads", cfg.threads, "worker threads (0: hardware concurrency)");
    sub->callback([&cfg, name = std::string(c.name)] { cfg.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(lva::cli::ExitCode::input_error);
  }
  return lva::cli::run_and_emit(cfg, std::cout, std::cerr);
}
