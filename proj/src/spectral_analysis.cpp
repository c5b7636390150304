#include "muhankel/spectral_analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "muhankel/error.hpp"

namespace muhankel {

namespace {

constexpr Eigen::Index kJacobiLimit = 200;
constexpr double kCriterionSlack = 1e-9;

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

template <class Svd>
SvdResult take(const Svd& svd, bool with_vectors) {
  SvdResult out;
  out.values = svd.singularValues();
  if (with_vectors) {
    out.u = svd.matrixU();
    out.v = svd.matrixV();
  }
  return out;
}

bool non_increasing(const std::vector<double>& seq) {
  for (std::size_t i = 1; i < seq.size(); ++i) {
    if (seq[i] > seq[i - 1] * (1.0 + 1e-12) + 1e-300) return false;
  }
  return true;
}

double smallest_retained(const BlockOperator& op) {
  if (op.weighted_blocks().empty()) return 0.0;
  const SvdResult svd = dense_svd(to_dense(op), false);
  if (svd.values.size() == 0 || svd.values(0) == 0.0) return 0.0;
  const double floor = 1e-12 * svd.values(0);
  double smallest = svd.values(0);
  for (Eigen::Index i = 0; i < svd.values.size(); ++i) {
    if (svd.values(i) > floor) smallest = svd.values(i);
  }
  return smallest;
}

}  // namespace

SvdResult dense_svd(const Matrix& m, bool with_vectors) {
  SvdResult out;
  if (m.size() == 0) return out;
  const unsigned opts = with_vectors ? (Eigen::ComputeThinU | Eigen::ComputeThinV) : 0u;
  if (std::min(m.rows(), m.cols()) <= kJacobiLimit) {
    out = take(Eigen::JacobiSVD<Matrix>(m, opts), with_vectors);
  } else {
    out = take(Eigen::BDCSVD<Matrix>(m, opts), with_vectors);
  }
  require(out.values.allFinite(), ErrorKind::Numerical, "SVD did not converge to finite singular values");
  if (with_vectors) {
    require(out.u.allFinite() && out.v.allFinite(), ErrorKind::Numerical, "SVD produced non-finite singular vectors");
  }
  return out;
}

std::vector<double> SpectrumReport::nonzero(double rel_tol) const {
  std::vector<double> out;
  for (double s : singular_values) {
    if (s > rel_tol * operator_norm && s > 0.0) out.push_back(s);
  }
  return out;
}

SpectrumReport spectrum(const BlockOperator& op, std::span<const double> schatten_orders) {
  SpectrumReport report;
  const SvdResult svd = dense_svd(to_dense(op), false);
  report.singular_values.assign(svd.values.data(), svd.values.data() + svd.values.size());
  report.operator_norm = report.singular_values.empty() ? 0.0 : report.singular_values.front();
  for (const auto& [key, block] : op.weighted_blocks()) {
    const SvdResult b = dense_svd(block, false);
    report.per_block_svd.emplace(key, std::vector<double>(b.values.data(), b.values.data() + b.values.size()));
  }
  for (double p : schatten_orders) report.schatten[p] = schatten_norm(report.singular_values, p);
  return report;
}

double schatten_norm(std::span<const double> singular_values, double p) {
  require(std::isfinite(p) && p > 0.0, ErrorKind::Validation, "Schatten order p must be positive");
  const double top = singular_values.empty() ? 0.0 : *std::max_element(singular_values.begin(), singular_values.end());
  if (top == 0.0) return 0.0;
  // Scale by the largest value so large p does not overflow.
  double sum = 0.0;
  for (double s : singular_values) sum += std::pow(s / top, p);
  return top * std::pow(sum, 1.0 / p);
}

double schatten_norm(const SpectrumReport& report, double p) { return schatten_norm(report.singular_values, p); }

double criterion_series(const BlockOperator& op, double p) {
  require(std::isfinite(p) && p > 0.0, ErrorKind::Validation, "Schatten order p must be positive");
  double sum = 0.0;
  for (const auto& [key, block] : op.weighted_blocks()) {
    const double d = static_cast<double>(block.rows()) * static_cast<double>(block.cols());
    sum += d * std::pow(block.norm(), p);
  }
  return sum;
}

double schur_constant(const DualCatalog& codomain, const DualCatalog& domain, double m, double n) {
  double rho_sum = 0.0;
  for (const auto& l : domain.labels()) rho_sum += l.dim() * std::pow(1.0 + l.casimir(), -n);
  double pi_sum = 0.0;
  for (const auto& l : codomain.labels()) pi_sum += std::pow(1.0 + l.casimir(), -m);
  return std::sqrt(rho_sum * pi_sum);
}

CriterionVerdict schur_bound(const Symbol& sym, const SymbolClassParams& params) {
  params.validate();
  const double c = schur_constant(sym.codomain(), sym.domain(), params.m, params.n);
  const double m = class_norm(sym, params);
  const SpectrumReport rep = spectrum(assemble(sym, params.mu, params.nu));
  CriterionVerdict v;
  v.name = "schur_bound";
  v.bound_value = c * m;
  v.measured_value = rep.operator_norm;
  v.satisfied = rep.operator_norm <= v.bound_value + kCriterionSlack;
  v.detail = "C=" + fmt(c) + " M=" + fmt(m) + " ||A||=" + fmt(rep.operator_norm);
  return v;
}

CriterionVerdict norm_equivalence_check(const Symbol& sym, const SymbolClassParams& params) {
  params.validate();
  const BlockOperator op = assemble(sym, params.mu, params.nu);
  double lower = 0.0;
  for (const auto& [key, block] : op.weighted_blocks()) lower = std::max(lower, spectral_norm(block));
  const double upper = schur_constant(sym.codomain(), sym.domain(), params.m, params.n) * class_norm(sym, params);
  const double measured = spectrum(op).operator_norm;
  CriterionVerdict v;
  v.name = "norm_equivalence";
  v.bound_value = upper;
  v.measured_value = measured;
  v.satisfied = lower - kCriterionSlack <= measured && measured <= upper + kCriterionSlack;
  v.detail = "lower=" + fmt(lower) + " measured=" + fmt(measured) + " upper=" + fmt(upper);
  return v;
}

double carleson_value(const Weight& nu, const DualCatalog& catalog, double t) {
  require(std::isfinite(t) && t > 0.0, ErrorKind::Validation, "Carleson exponent t must be positive");
  if (catalog.size() == 0) return 0.0;
  double sum = 0.0;
  int min_dim = std::numeric_limits<int>::max();
  for (const auto& l : catalog.labels()) {
    const double d = l.dim();
    const double w = nu(l);
    sum += d * (d * w * w) / std::pow(1.0 + l.casimir(), t);
    min_dim = std::min(min_dim, l.dim());
  }
  return sum / static_cast<double>(min_dim);
}

CriterionVerdict carleson_test(const Weight& nu, const DualCatalog& catalog, double t) {
  require(std::isfinite(t) && t > 0.0, ErrorKind::Validation, "Carleson exponent t must be positive");
  const double half = carleson_value(nu, catalog.truncated(catalog.cutoff() / 2.0), t);
  const double full = carleson_value(nu, catalog, t);
  double growth = 0.0;
  if (half > 0.0) {
    growth = (full - half) / half;
  } else if (full > 0.0) {
    growth = std::numeric_limits<double>::infinity();
  }
  CriterionVerdict v;
  v.name = "carleson";
  v.bound_value = 0.05;
  v.measured_value = growth;
  v.satisfied = growth < 0.05;
  v.detail = "value(cutoff/2)=" + fmt(half) + " value(cutoff)=" + fmt(full) + " relative_growth=" + fmt(growth);
  return v;
}

CompactnessIndicators compactness_indicators(const BlockOperator& op, const SymbolClassParams& params) {
  params.validate();
  CompactnessIndicators out;
  if (op.weighted_blocks().empty()) {
    out.decay_fired = true;
    out.spectral_fired = true;
    return out;
  }

  // Decay: column maxima of (1+lambda_rho)^{n/2} ||T(pi,rho)|| grouped by lambda_rho.
  const DualCatalog& dom = op.domain();
  const double top = dom.labels().back().casimir();
  std::map<double, double> profile;
  for (const auto& l : dom.labels()) {
    if (l.casimir() >= top / 2.0) profile.emplace(l.casimir(), 0.0);
  }
  for (const auto& [key, block] : op.weighted_blocks()) {
    const double lr = dom.label(key.second).casimir();
    const auto it = profile.find(lr);
    if (it == profile.end()) continue;
    it->second = std::max(it->second, std::pow(1.0 + lr, params.n / 2.0) * spectral_norm(block));
  }
  for (const auto& [lambda, value] : profile) out.decay_profile.push_back(value);
  const auto& dp = out.decay_profile;
  const bool all_zero = std::all_of(dp.begin(), dp.end(), [](double x) { return x == 0.0; });
  out.decay_fired = dp.size() >= 2 && non_increasing(dp) && (all_zero || dp.back() < dp.front());

  // Spectral: smallest retained singular value across cutoff/4, cutoff/2, cutoff.
  const double cutoff = std::max(op.codomain().labels().empty() ? 0.0 : op.codomain().labels().back().casimir(), top);
  for (double frac : {0.25, 0.5, 1.0}) {
    out.spectral_cutoffs.push_back(cutoff * frac);
    out.smallest_retained.push_back(smallest_retained(truncate(op, cutoff * frac)));
  }
  const auto& sr = out.smallest_retained;
  out.spectral_fired = non_increasing(sr) && sr.back() < sr.front() * (1.0 - 1e-9);
  return out;
}

CriterionVerdict compactness_report(const BlockOperator& op, const SymbolClassParams& params) {
  const CompactnessIndicators ind = compactness_indicators(op, params);
  CriterionVerdict v;
  v.name = "compactness";
  v.bound_value = 1.0;
  if (!ind.smallest_retained.empty() && ind.smallest_retained.front() > 0.0) {
    v.measured_value = ind.smallest_retained.back() / ind.smallest_retained.front();
  }
  v.satisfied = ind.decay_fired || ind.spectral_fired;
  if (op.weighted_blocks().empty()) {
    v.detail = "zero operator: vacuously compact";
  } else {
    v.detail = std::string("decay indicator ") + (ind.decay_fired ? "fired" : "did not fire") + "; spectral indicator " +
               (ind.spectral_fired ? "fired" : "did not fire") + " (smallest retained ratio " + fmt(v.measured_value) + ")";
  }
  return v;
}

std::vector<std::int64_t> factor_two_ladder(std::int64_t l_max, int rungs) {
  require(rungs >= 2 && l_max >= (std::int64_t{1} << (rungs - 1)), ErrorKind::Validation,
          "ladder needs at least two rungs and l_max >= 2^(rungs-1)");
  std::vector<std::int64_t> out;
  for (int i = rungs - 1; i >= 0; --i) out.push_back(l_max >> i);
  return out;
}

SchattenScan schatten_series_scan(double alpha, double p, const GroupKind& group,
                                  std::span<const std::int64_t> l_max_ladder) {
  const auto* su2 = std::get_if<GroupKind::SU2>(&group.kind);
  require(su2 != nullptr, ErrorKind::Validation, "Schatten series scan runs on SU(2) catalogs only");
  require(!su2->half_integers, ErrorKind::Validation, "Schatten series scan sums over integer l; use su2:int");
  require(std::isfinite(p) && p > 0.0 && std::isfinite(alpha), ErrorKind::Validation, "need p > 0 and finite alpha");
  require(l_max_ladder.size() >= 3, ErrorKind::Validation, "ladder needs at least three rungs");
  for (std::size_t i = 1; i < l_max_ladder.size(); ++i) {
    require(l_max_ladder[i] > l_max_ladder[i - 1], ErrorKind::Validation, "ladder must be strictly increasing");
  }
  require(l_max_ladder.front() >= 0, ErrorKind::Validation, "ladder entries must be nonnegative");

  SchattenScan scan;
  double sum = 0.0;
  double previous = 0.0;
  std::int64_t l = 0;
  for (std::int64_t l_max : l_max_ladder) {
    for (; l <= l_max; ++l) {
      const double d = 2.0 * static_cast<double>(l) + 1.0;
      sum += d * d * std::pow(1.0 + static_cast<double>(l), -p * alpha);
    }
    const double lm = static_cast<double>(l_max);
    scan.rungs.push_back({l_max, lm * (lm + 1.0), sum, sum - previous});
    previous = sum;
  }

  double worst = 0.0;
  for (std::size_t i = 2; i < scan.rungs.size(); ++i) {
    const double prev = scan.rungs[i - 1].increment;
    const double ratio = prev > 0.0 ? scan.rungs[i].increment / prev : std::numeric_limits<double>::infinity();
    worst = std::max(worst, ratio);
  }

  const auto catalog = std::make_shared<const DualCatalog>(DualCatalog::enumerate(group, scan.rungs.front().cutoff));
  const BlockOperator diag = assemble(diagonal_symbol(catalog, alpha), Weight::power_law(0.0), Weight::power_law(0.0));
  std::vector<double> values;
  for (const auto& [key, block] : diag.weighted_blocks()) {
    const SvdResult svd = dense_svd(block, false);
    values.insert(values.end(), svd.values.data(), svd.values.data() + svd.values.size());
  }
  scan.reference_schatten = schatten_norm(values, p);
  scan.reference_criterion_series = criterion_series(diag, p);

  scan.verdict.name = "schatten_series";
  scan.verdict.bound_value = kConvergenceRatio;
  scan.verdict.measured_value = worst;
  scan.verdict.satisfied = worst < kConvergenceRatio;
  scan.verdict.detail = std::string(scan.verdict.satisfied ? "converges" : "diverges") + ": p*alpha=" + fmt(p * alpha) +
                        " max increment ratio=" + fmt(worst) + " S(l<=" + std::to_string(scan.rungs.back().l_max) +
                        ")=" + fmt(sum);
  return scan;
}

}  // namespace muhankel
