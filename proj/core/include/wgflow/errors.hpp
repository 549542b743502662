#ifndef WGFLOW_ERRORS_HPP
#define WGFLOW_ERRORS_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace wgflow {

struct invalid_parameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct domain_error : std::domain_error {
  using std::domain_error::domain_error;
};

struct degenerate_density : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The requested amplitude convention admits no single coupling constant;
/// carries the two contradictory candidates extracted from the two equations.
struct dispersion_inconsistency : std::runtime_error {
  std::complex<double> j0_from_main;
  std::complex<double> j0_from_aux;
  dispersion_inconsistency(const std::string& msg, std::complex<double> jm,
                           std::complex<double> ja)
      : std::runtime_error(msg), j0_from_main(jm), j0_from_aux(ja) {}
};

/// Phase-gradient velocity evaluated exactly at a node where the
/// removable-singularity limit does not exist.
struct node_singularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct direction_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct numerical_error : std::runtime_error {
  double achieved_tolerance;
  numerical_error(const std::string& msg, double achieved)
      : std::runtime_error(msg), achieved_tolerance(achieved) {}
};

struct integration_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace wgflow

#endif
