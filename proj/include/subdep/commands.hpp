#pragma once

// Subcommands of the `subdep` tool as library calls. Each returns the report
// document; errors surface as io::InputError / StructuralError (exit 2) or
// io::NumericalFailure / std::overflow_error (exit 3).

#include "subdep/io.hpp"
#include "subdep/parametric.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subdep::cli {

struct MuOptions {
  std::string input;
  std::vector<std::string> cols;  ///< exactly two; empty means "the only two columns"
  std::string na_token = "NA";
  bool dump_subcopula = false;
};

struct MatrixOptions {
  std::string input;
  std::vector<std::string> cols;  ///< empty means all columns
  std::string na_token = "NA";
  unsigned threads = 1;
};

struct BernoulliOptions {
  std::string theta1;
  std::string theta2;
  std::string alpha;
  std::optional<std::size_t> sample_size;  ///< also simulate a sample of this size
  std::uint64_t seed = 20170101;
};

struct CurveOptions {
  double theta_min = -1.0;
  double theta_max = 50.0;
  std::size_t steps = 40;
  NumericOptions numeric;
  std::size_t quad_resolution = 1024;
  unsigned threads = 1;
};

struct ValidateOptions {
  std::string input;
  double tolerance = kDefaultAxiomTolerance;
};

io::ReportDocument cmd_mu(const MuOptions& opt);
io::ReportDocument cmd_matrix(const MatrixOptions& opt);
io::ReportDocument cmd_bernoulli(const BernoulliOptions& opt);
io::ReportDocument cmd_clayton_curve(const CurveOptions& opt);
io::ReportDocument cmd_validate(const ValidateOptions& opt);

/// Tabular rendering of a report for `--format csv`.
std::string to_csv(const io::ReportDocument& doc);

/// Thread cap from SUBDEP_THREADS; 1 when unset or unparsable.
unsigned threads_from_env();

}  // namespace subdep::cli
