#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "muhankel/operator_assembly.hpp"

namespace muhankel {

struct ContributingPair {
  std::size_t pi = 0;
  std::size_t rho = 0;
  std::int64_t weight = 0;  // d_pi * d_rho
};

struct IndexReport {
  // Determinant-sign formula; unset when the formula is inapplicable.
  std::optional<std::int64_t> formula_index;
  std::vector<ContributingPair> contributing_pairs;
  std::string formula_error;

  std::int64_t numerical_kernel_dim = 0;
  std::int64_t numerical_cokernel_dim = 0;
  std::int64_t numerical_index = 0;
  std::int64_t numerical_rank = 0;
  double rank_tolerance = 0.0;
};

inline constexpr double kDefaultRankTolerance = 1e-8;

/// Sum of d_pi d_rho over stored blocks with det[mu a nu] < 0. Throws
/// Inapplicable for a non-square block or a materially complex determinant.
IndexReport index_formula(const BlockOperator& op);

/// dim ker - dim coker of the dense truncation, with rank counted as singular
/// values above rank_tolerance * sigma_max.
IndexReport numerical_index(const BlockOperator& op, double rank_tolerance = kDefaultRankTolerance);

/// Both parts; formula failures are recorded in formula_error instead of thrown.
IndexReport index_report(const BlockOperator& op, double rank_tolerance = kDefaultRankTolerance);

/// Winding number of a closed curve sampled at equispaced points. Throws
/// Validation for a sample with modulus <= tolerance and Numerical when
/// consecutive samples differ in phase by pi/2 or more.
std::int64_t winding_number(std::span<const Complex> samples, double tolerance = 1e-12);

/// phi(theta_j) = sum_k coeffs[k] e^{i k theta_j} at count equispaced points.
std::vector<Complex> sample_fourier_series(const std::map<std::int64_t, Complex>& coeffs, std::size_t count);

}  // namespace muhankel
