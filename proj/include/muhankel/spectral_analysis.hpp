#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "muhankel/operator_assembly.hpp"

namespace muhankel {

struct SvdResult {
  Eigen::VectorXd values;  // descending
  Matrix u;                // thin left singular vectors (empty unless requested)
  Matrix v;                // thin right singular vectors (empty unless requested)
};

/// Dense SVD; throws Numerical when the factorization produces non-finite values.
SvdResult dense_svd(const Matrix& m, bool with_vectors);

struct SpectrumReport {
  std::vector<double> singular_values;  // min(rows, cols) values, descending
  std::map<BlockKey, std::vector<double>> per_block_svd;
  double operator_norm = 0.0;
  std::map<double, double> schatten;

  /// Values above rel_tol * operator_norm.
  std::vector<double> nonzero(double rel_tol = 1e-12) const;
};

struct CriterionVerdict {
  std::string name;
  double bound_value = 0.0;
  double measured_value = 0.0;
  bool satisfied = false;
  std::string detail;
};

SpectrumReport spectrum(const BlockOperator& op, std::span<const double> schatten_orders = {});

/// (sum s_n^p)^{1/p}; throws Validation unless p > 0.
double schatten_norm(const SpectrumReport& report, double p);
double schatten_norm(std::span<const double> singular_values, double p);

/// sum over blocks of d_pi d_rho ||T(pi,rho)||_HS^p, the block series from the
/// Schatten-class criterion. Reported next to the exact norm, never in place of it.
double criterion_series(const BlockOperator& op, double p);

/// Frobenius-type constant C with C^2 = (sum_rho d_rho (1+lambda_rho)^{-n}) (sum_pi (1+lambda_pi)^{-m}).
double schur_constant(const DualCatalog& codomain, const DualCatalog& domain, double m, double n);

CriterionVerdict schur_bound(const Symbol& sym, const SymbolClassParams& params);
CriterionVerdict norm_equivalence_check(const Symbol& sym, const SymbolClassParams& params);

/// sup_pi (1/d_pi) sum_rho d_rho sigma(rho) / (1+lambda_rho)^t with sigma(rho) = d_rho nu(rho)^2.
double carleson_value(const Weight& nu, const DualCatalog& catalog, double t);
/// Compares carleson_value at cutoff/2 and cutoff; satisfied when relative growth < 5%.
CriterionVerdict carleson_test(const Weight& nu, const DualCatalog& catalog, double t);

struct CompactnessIndicators {
  bool decay_fired = false;
  bool spectral_fired = false;
  std::vector<double> decay_profile;      // outer-half column maxima, increasing casimir
  std::vector<double> spectral_cutoffs;   // cutoff/4, cutoff/2, cutoff
  std::vector<double> smallest_retained;  // smallest retained singular value per cutoff
};

CompactnessIndicators compactness_indicators(const BlockOperator& op, const SymbolClassParams& params);
CriterionVerdict compactness_report(const BlockOperator& op, const SymbolClassParams& params);

struct SchattenScanRung {
  std::int64_t l_max = 0;
  double cutoff = 0.0;
  double partial_sum = 0.0;
  double increment = 0.0;  // partial_sum minus previous rung's (first rung: the sum itself)
};

struct SchattenScan {
  CriterionVerdict verdict;
  std::vector<SchattenScanRung> rungs;
  /// Exact S_p norm and block series of the assembled diagonal operator
  /// a(l,l) = (1+l)^{-alpha} I at the first rung.
  double reference_schatten = 0.0;
  double reference_criterion_series = 0.0;
};

inline constexpr double kConvergenceRatio = 0.75;

/// Partial sums of (2l+1)^2 (1+l)^{-p alpha} over integer l <= l_max on the given
/// ladder. Converges when each increment ratio stays below kConvergenceRatio.
SchattenScan schatten_series_scan(double alpha, double p, const GroupKind& group,
                                  std::span<const std::int64_t> l_max_ladder);

/// Factor-2 ladder ending at l_max: {l_max/8, l_max/4, l_max/2, l_max}.
std::vector<std::int64_t> factor_two_ladder(std::int64_t l_max, int rungs = 4);

}  // namespace muhankel
