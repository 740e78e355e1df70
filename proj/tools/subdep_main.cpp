// subdep: monotone dependence from empirical and parametric subcopulas.
//
//   subdep mu --input data.csv --cols x,y [--dump-subcopula]
//   subdep matrix --input data.csv [--cols a,b,c]
//   subdep bernoulli --theta1 0.3 --theta2 0.6 --alpha 0.3
//   subdep clayton-curve --theta-min -1 --theta-max 50 --steps 40
//   subdep validate --input subcopula.csv
//
// Exit codes: 0 success (possibly with warnings), 2 usage or input error,
// 3 internal numerical failure.

#include "subdep/commands.hpp"

#include "CLI11.hpp"

#include <iostream>

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;

}  // namespace

int main(int argc, char** argv) {
  using namespace subdep;

  CLI::App app{"Subcopula-based monotone dependence measure"};
  app.require_subcommand(1);

  std::string format = "json";
  unsigned threads = cli::threads_from_env();
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
  };

  cli::MuOptions mu;
  auto* mu_cmd = app.add_subcommand("mu", "mu of two columns of a CSV file");
  mu_cmd->add_option("--input", mu.input, "CSV file with a header row")->required();
  mu_cmd->add_option("--cols", mu.cols, "Two column names")->delimiter(',');
  mu_cmd->add_option("--na-token", mu.na_token, "Missing-value marker");
  mu_cmd->add_flag("--dump-subcopula", mu.dump_subcopula, "Include the empirical subcopula matrix");
  add_format(mu_cmd);

  cli::MatrixOptions mx;
  auto* mx_cmd = app.add_subcommand("matrix", "pairwise mu matrix of CSV columns");
  mx_cmd->add_option("--input", mx.input, "CSV file with a header row")->required();
  mx_cmd->add_option("--cols", mx.cols, "Subset of columns")->delimiter(',');
  mx_cmd->add_option("--na-token", mx.na_token, "Missing-value marker");
  add_format(mx_cmd);

  cli::BernoulliOptions be;
  std::size_t sample_size = 0;
  auto* be_cmd = app.add_subcommand("bernoulli", "closed form vs grid mu for a Bernoulli pair, with Pearson r");
  be_cmd->add_option("--theta1", be.theta1, "P(X = 1), decimal or p/q")->required();
  be_cmd->add_option("--theta2", be.theta2, "P(Y = 1), decimal or p/q")->required();
  be_cmd->add_option("--alpha", be.alpha, "P(X = 1, Y = 1), decimal or p/q")->required();
  be_cmd->add_option("--sample-size", sample_size, "Also simulate a sample of this size");
  be_cmd->add_option("--seed", be.seed, "Seed for the simulation");
  add_format(be_cmd);

  cli::CurveOptions cu;
  auto* cu_cmd = app.add_subcommand("clayton-curve", "mu, Kendall tau and Spearman rho along the Clayton family");
  cu_cmd->add_option("--theta-min", cu.theta_min, "Smallest theta (>= -1)");
  cu_cmd->add_option("--theta-max", cu.theta_max, "Largest theta");
  cu_cmd->add_option("--steps", cu.steps, "Number of theta values");
  cu_cmd->add_option("--resolution", cu.numeric.resolution, "Grid intervals per axis for the sup search");
  cu_cmd->add_option("--refine-tol", cu.numeric.refine_tol, "Step size at which refinement stops");
  cu_cmd->add_option("--quad-resolution", cu.quad_resolution, "Simpson intervals per axis for rho");
  add_format(cu_cmd);

  cli::ValidateOptions va;
  auto* va_cmd = app.add_subcommand("validate", "check the subcopula axioms of a grid + matrix file");
  va_cmd->add_option("--input", va.input, "Subcopula dump (JSON or three-block CSV)")->required();
  va_cmd->add_option("--tolerance", va.tolerance, "Axiom tolerance in floating mode");
  add_format(va_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    io::ReportDocument doc;
    if (*mu_cmd) {
      doc = cli::cmd_mu(mu);
    } else if (*mx_cmd) {
      mx.threads = threads;
      doc = cli::cmd_matrix(mx);
    } else if (*be_cmd) {
      if (be_cmd->count("--sample-size") > 0) be.sample_size = sample_size;
      doc = cli::cmd_bernoulli(be);
    } else if (*cu_cmd) {
      cu.threads = threads;
      doc = cli::cmd_clayton_curve(cu);
    } else {
      doc = cli::cmd_validate(va);
    }
    if (format == "csv") {
      std::cout << cli::to_csv(doc);
    } else {
      std::cout << io::dump_json(io::to_json(doc)) << '\n';
    }
    for (const auto& w : doc.warnings) std::cerr << "warning: " << w << '\n';
    return 0;
  } catch (const io::NumericalFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::overflow_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
}
