#include "muhankel/fredholm.hpp"

#include <cmath>
#include <numbers>

#include "muhankel/error.hpp"
#include "muhankel/spectral_analysis.hpp"

namespace muhankel {

namespace {

constexpr double kDeterminantImagTolerance = 1e-9;
// Larger phase steps cannot be told apart from aliasing.
constexpr double kMaxPhaseStep = std::numbers::pi / 2.0;

std::string pair_text(const BlockOperator& op, std::size_t pi, std::size_t rho) {
  return "(" + describe(op.codomain().label(pi)) + ", " + describe(op.domain().label(rho)) + ")";
}

}  // namespace

IndexReport index_formula(const BlockOperator& op) {
  IndexReport report;
  std::int64_t total = 0;
  for (const auto& [key, block] : op.weighted_blocks()) {
    if (block.rows() != block.cols()) {
      fail(ErrorKind::Inapplicable, "formula inapplicable: block " + pair_text(op, key.first, key.second) + " is " +
                                        std::to_string(block.rows()) + "x" + std::to_string(block.cols()));
    }
    const Complex det = block.determinant();
    if (std::abs(det.imag()) > kDeterminantImagTolerance * std::abs(det)) {
      fail(ErrorKind::Inapplicable,
           "formula inapplicable: block " + pair_text(op, key.first, key.second) + " has a complex determinant");
    }
    if (det.real() < 0.0) {
      const std::int64_t w = static_cast<std::int64_t>(block.rows()) * static_cast<std::int64_t>(block.cols());
      report.contributing_pairs.push_back({key.first, key.second, w});
      total += w;
    }
  }
  report.formula_index = total;
  return report;
}

IndexReport numerical_index(const BlockOperator& op, double rank_tolerance) {
  require(std::isfinite(rank_tolerance) && rank_tolerance > 0.0, ErrorKind::Validation, "rank tolerance must be positive");
  IndexReport report;
  report.rank_tolerance = rank_tolerance;
  const SvdResult svd = dense_svd(to_dense(op), false);
  std::int64_t rank = 0;
  if (svd.values.size() > 0 && svd.values(0) > 0.0) {
    const double floor = rank_tolerance * svd.values(0);
    for (Eigen::Index i = 0; i < svd.values.size(); ++i) {
      if (svd.values(i) > floor) ++rank;
    }
  }
  report.numerical_rank = rank;
  report.numerical_kernel_dim = static_cast<std::int64_t>(op.cols()) - rank;
  report.numerical_cokernel_dim = static_cast<std::int64_t>(op.rows()) - rank;
  report.numerical_index = report.numerical_kernel_dim - report.numerical_cokernel_dim;
  return report;
}

IndexReport index_report(const BlockOperator& op, double rank_tolerance) {
  IndexReport report = numerical_index(op, rank_tolerance);
  try {
    IndexReport formula = index_formula(op);
    report.formula_index = formula.formula_index;
    report.contributing_pairs = std::move(formula.contributing_pairs);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::Inapplicable) throw;
    report.formula_error = e.what();
  }
  return report;
}

std::int64_t winding_number(std::span<const Complex> samples, double tolerance) {
  require(!samples.empty(), ErrorKind::Validation, "winding number needs samples");
  for (const Complex& z : samples) {
    require(std::abs(z) > tolerance, ErrorKind::Validation, "curve passes too close to the origin");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const Complex& a = samples[i];
    const Complex& b = samples[(i + 1) % samples.size()];
    const double step = std::arg(b / a);
    require(std::abs(step) < kMaxPhaseStep, ErrorKind::Numerical,
            "phase step between consecutive samples reaches pi/2; increase the sample count");
    total += step;
  }
  return static_cast<std::int64_t>(std::llround(total / (2.0 * std::numbers::pi)));
}

std::vector<Complex> sample_fourier_series(const std::map<std::int64_t, Complex>& coeffs, std::size_t count) {
  std::vector<Complex> out(count, Complex(0.0, 0.0));
  for (std::size_t j = 0; j < count; ++j) {
    const double theta = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
    for (const auto& [k, c] : coeffs) out[j] += c * std::polar(1.0, static_cast<double>(k) * theta);
  }
  return out;
}

}  // namespace muhankel
