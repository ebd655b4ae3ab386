#include <CLI11.hpp>
#include <iostream>
#include <map>

#include "commands.hpp"

using namespace ermt;

int main(int argc, char** argv) {
  CLI::App app{"Finite-n largest-eigenvalue distributions of GUE/LUE and their edge expansions"};
  app.require_subcommand(1);
  cli::RunConfig cfg;
  std::vector<double> range;

  const std::map<std::string, Ensemble> ensembles{{"gue", Ensemble::GUE}, {"lue", Ensemble::LUE}};
  const std::map<std::string, cli::Format> formats{{"csv", cli::Format::Csv},
                                                   {"plot-script", cli::Format::PlotScript}};
  const std::map<std::string, ExpansionMode> modes{{"per-ensemble", ExpansionMode::PerEnsemble},
                                                   {"universal", ExpansionMode::Universal}};

  auto common = [&](CLI::App* sub) {
    sub->add_option("--out", cfg.output_path, "Output file (default: stdout)");
    sub->add_option("--format", cfg.format, "csv or plot-script")->transform(CLI::CheckedTransformer(formats));
  };
  auto ensemble_opts = [&](CLI::App* sub) {
    sub->add_option("--ensemble", cfg.ensemble, "gue or lue")->transform(CLI::CheckedTransformer(ensembles));
    sub->add_option("--n", cfg.n, "Matrix size")->check(CLI::Range(2, 100000));
    sub->add_option("--alpha", cfg.alpha, "Laguerre parameter (lue)");
    sub->add_option("--c", cfg.c, "Edge tuning constant c_G or c_L");
  };
  auto s_opts = [&](CLI::App* sub) {
    sub->add_option("--s", cfg.s_values, "Scaled points s (repeatable)");
    sub->add_option("--s-range", range, "lo hi count")->expected(3);
  };

  auto* tw2 = app.add_subcommand("tw2-table", "Hastings-McLeod solution, auxiliary integrals and F2 on a grid");
  common(tw2);
  s_opts(tw2);
  tw2->add_option("--c", cfg.c, "Tuning constant used in the E_G and E_L columns");

  auto* fig = app.add_subcommand("figure", "Exact vs Airy vs corrected curves of the three comparison figures");
  common(fig);
  fig->add_option("--which", cfg.which, "1, 2 or 3")->check(CLI::Range(1, 3))->required();

  auto* ex = app.add_subcommand("exact", "P(lambda_max <= t(s)) by Fredholm determinant");
  common(ex);
  ensemble_opts(ex);
  s_opts(ex);

  auto* ew = app.add_subcommand("edgeworth", "Edge expansion of the largest-eigenvalue distribution");
  common(ew);
  ensemble_opts(ew);
  s_opts(ew);
  ew->add_option("--mode", cfg.mode, "per-ensemble or universal")->transform(CLI::CheckedTransformer(modes));
  ew->add_option("--order", cfg.order, "Highest power of n^{-1/3} kept")->check(CLI::Range(0, 2));

  auto* cv = app.add_subcommand("converge", "Sup error of the expansion against the exact distribution");
  common(cv);
  ensemble_opts(cv);
  cv->add_option("--n-list", cfg.n_list, "Matrix sizes (at least three)")->delimiter(',');
  cv->add_option("--mode", cfg.mode, "per-ensemble or universal")->transform(CLI::CheckedTransformer(modes));
  cv->add_option("--order", cfg.order, "Highest power of n^{-1/3} kept")->check(CLI::Range(0, 2));

  CLI11_PARSE(app, argc, argv);
  cfg.command = app.get_subcommands().front()->get_name();
  if (cfg.command == "tw2-table" && range.empty() && cfg.s_values.empty()) cfg.s_range = {-8.0, 6.0, 141};
  if (!range.empty()) cfg.s_range = {range[0], range[1], static_cast<int>(range[2])};

  try {
    return cli::run(cfg, std::cout);
  } catch (const std::exception& e) {
    std::cerr << "edgeworth-rmt: " << e.what() << '\n';
    return 1;
  }
}
