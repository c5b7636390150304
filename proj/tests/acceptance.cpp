// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <string>

#include "muhankel/fredholm.hpp"
#include "muhankel/inverse_recovery.hpp"
#include "muhankel/spectral_analysis.hpp"
#include "test_support.hpp"

using namespace muhankel;
using namespace muhankel::testing;

namespace {

// Tolerances and budgets.
constexpr double kUnionTol = 1e-10;
constexpr double kUnionBudgetSeconds = 60.0;
constexpr double kStructureTol = 1e-10;
constexpr int kSchurInstances = 1000;
constexpr double kSchurSlack = 1e-9;
constexpr double kScanBudgetSeconds = 10.0;
constexpr double kPairingTol = 1e-10;
constexpr int kPairingCount = 100;
constexpr std::size_t kWindingSamples = 256;
constexpr int kRoundTripSymbols = 50;
constexpr std::size_t kRoundTripMaxDim = 30;
constexpr double kRoundTripTol = 1e-9;
constexpr double kDistinctGap = 1e-6;  // relative gap between singular values of different blocks
constexpr double kSlopeLow = 0.8;
constexpr double kSlopeHigh = 1.2;
constexpr int kStabilityTrials = 20;
constexpr double kStabilityBudgetSeconds = 120.0;
constexpr int kIndexInstances = 100;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Outcome union_property() {
  const auto start = std::chrono::steady_clock::now();
  const auto su2 = catalog("su2", 12.0);
  const auto circle = catalog("torus:1", 256.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const auto& c = k < 100 ? su2 : circle;
    const Symbol sym = random_matching_symbol(c, c, 0.5 + 0.5 * ((k % 10) / 9.0), 1000 + static_cast<std::uint64_t>(k));
    const SpectrumReport rep = spectrum(assemble(sym, Weight::power_law(-0.5), Weight::power_law(0.25)));
    std::vector<double> pooled;
    for (const auto& [key, values] : rep.per_block_svd) pooled.insert(pooled.end(), values.begin(), values.end());
    pooled.resize(rep.singular_values.size(), 0.0);
    pooled = sorted_desc(pooled);
    for (std::size_t i = 0; i < pooled.size(); ++i) worst = std::max(worst, std::abs(pooled[i] - rep.singular_values[i]));
  }
  const double elapsed = seconds_since(start);
  return {worst < kUnionTol && elapsed < kUnionBudgetSeconds,
          "200 symbols, max deviation " + num(worst) + ", " + num(elapsed) + " s"};
}

Outcome diagonal_structure() {
  const auto c = catalog("su2", 12.0);  // l <= 3
  const SpectrumReport rep = spectrum(assemble(diagonal_symbol(c, 0.0), Weight::power_law(1.0), Weight::power_law(1.0)));
  std::vector<double> expected;
  for (const auto& l : c->labels()) {
    const double half_l = l.index()[0] / 2.0;
    for (int m = 0; m < static_cast<int>(2.0 * half_l + 1.0); ++m) expected.push_back((1.0 + half_l) * (1.0 + half_l));
  }
  expected = sorted_desc(expected);
  if (expected.size() != rep.singular_values.size()) return {false, "multiplicity mismatch"};
  double worst = 0.0;
  for (std::size_t i = 0; i < expected.size(); ++i) worst = std::max(worst, std::abs(expected[i] - rep.singular_values[i]));
  return {worst < kStructureTol, std::to_string(expected.size()) + " values, max deviation " + num(worst)};
}

Outcome schur_bound_holds() {
  const char* groups[] = {"su2", "torus:1", "torus:2", "product(su2,torus:1)"};
  const double cutoffs[] = {2.0, 6.0, 12.0};
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> exponent(-2.0, 2.0);
  std::uniform_real_distribution<double> density(0.05, 1.0);
  int violations = 0;
  double tightest = 0.0;
  for (int k = 0; k < kSchurInstances; ++k) {
    const auto c = catalog(groups[k % 4], cutoffs[(k / 4) % 3]);
    const auto d = catalog(groups[(k / 12) % 4], cutoffs[(k / 48) % 3]);
    const Symbol sym = random_symbol(c, d, density(rng), 50000 + static_cast<std::uint64_t>(k));
    const double s = exponent(rng);
    const double t = exponent(rng);
    const CriterionVerdict v = schur_bound(sym, {2.0, 2.0, Weight::power_law(s), Weight::power_law(t)});
    if (!(v.measured_value <= v.bound_value + kSchurSlack)) ++violations;
    if (v.bound_value > 0.0) tightest = std::max(tightest, v.measured_value / v.bound_value);
  }
  return {violations == 0, std::to_string(kSchurInstances) + " instances, " + std::to_string(violations) +
                               " violations, max norm/bound " + num(tightest)};
}

Outcome schatten_threshold() {
  const auto start = std::chrono::steady_clock::now();
  const std::vector<std::int64_t> ladder = factor_two_ladder(512);
  const GroupKind g = GroupKind::su2(false);
  const bool a = schatten_series_scan(2.0, 2.0, g, ladder).verdict.satisfied;
  const bool b = schatten_series_scan(1.0, 2.0, g, ladder).verdict.satisfied;
  const bool c = schatten_series_scan(1.5, 2.0, g, ladder).verdict.satisfied;
  const double elapsed = seconds_since(start);
  auto word = [](bool conv) { return conv ? "converges" : "diverges"; };
  return {a && !b && !c && elapsed < kScanBudgetSeconds, std::string("(2,2) ") + word(a) + ", (2,1) " + word(b) +
                                                              ", (2,1.5) " + word(c) + ", " + num(elapsed) + " s"};
}

Outcome adjoint_identity() {
  const auto c = catalog("product(su2,torus:1)", 6.0);
  const auto d = catalog("su2", 12.0);
  const BlockOperator op = assemble(random_symbol(c, d, 0.4, 77), Weight::power_law(0.75), Weight::power_law(-1.25));
  const BlockOperator adj = adjoint(op);
  const bool exact = to_dense(adj) == Matrix(to_dense(op).adjoint());
  std::mt19937_64 rng(78);
  double worst = 0.0;
  for (int k = 0; k < kPairingCount; ++k) {
    const Vector f = random_vector(rng, static_cast<Eigen::Index>(op.cols()));
    const Vector g = random_vector(rng, static_cast<Eigen::Index>(op.rows()));
    const Complex lhs = g.dot(muhankel::apply(op, f));
    const Complex rhs = muhankel::apply(adj, g).dot(f);
    worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
  }
  return {exact && worst < kPairingTol,
          std::string("dense adjoint ") + (exact ? "exact" : "NOT exact") + ", pairing max rel. deviation " + num(worst)};
}

Outcome torus_reduction() {
  const std::int64_t n_max = 12;
  const auto h = circle_half(n_max);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  std::map<std::int64_t, Complex> coeffs;
  for (std::int64_t k = 0; k <= 2 * n_max; ++k) {
    const double re = g(rng);
    const double im = g(rng);
    coeffs[k] = Complex(re, im);
  }
  const Matrix dense = to_dense(assemble(hankel_symbol_from_fourier(coeffs, h, h), Weight::power_law(0.0), Weight::power_law(0.0)));
  Matrix classical(n_max + 1, n_max + 1);
  for (std::int64_t n = 0; n <= n_max; ++n) {
    for (std::int64_t m = 0; m <= n_max; ++m) classical(n, m) = coeffs.at(n + m);
  }
  const bool exact = dense == classical;
  const std::int64_t w = winding_number(sample_fourier_series({{3, Complex(1.0)}}, kWindingSamples));
  return {exact && w == 3, std::string("Hankel matrix ") + (exact ? "exact" : "NOT exact") + ", winding " + std::to_string(w)};
}

bool distinct_across_blocks(const BlockOperator& op) {
  std::vector<std::pair<double, BlockKey>> values;
  double top = 0.0;
  for (const auto& [key, block] : op.weighted_blocks()) {
    const SvdResult svd = dense_svd(block, false);
    for (Eigen::Index i = 0; i < svd.values.size(); ++i) {
      values.push_back({svd.values(i), key});
      top = std::max(top, svd.values(i));
    }
  }
  std::sort(values.begin(), values.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].second != values[i - 1].second && values[i].first - values[i - 1].first <= kDistinctGap * top) return false;
  }
  return true;
}

Outcome round_trip() {
  const std::pair<const char*, double> setups[] = {{"su2", 12.0}, {"torus:1", 196.0}, {"product(su2,torus:1)", 3.0}};
  double worst = 0.0;
  int done = 0;
  int rejected = 0;
  std::uint64_t seed = 7000;
  while (done < kRoundTripSymbols) {
    const auto& [group, cutoff] = setups[done % 3];
    const auto c = catalog(group, cutoff);
    if (c->dense_dim() > kRoundTripMaxDim) return {false, std::string("catalog too large for ") + group};
    const Weight mu = Weight::power_law(-0.5), nu = Weight::power_law(0.75);
    const Symbol truth = random_matching_symbol(c, c, 1.0, seed++);
    const BlockOperator op = assemble(truth, mu, nu);
    if (!distinct_across_blocks(op)) {
      ++rejected;
      continue;
    }
    const Symbol back = recover_bandlimited(forward(op), mu, nu);
    worst = std::max(worst, max_entry_difference(back, truth));
    ++done;
  }
  return {worst < kRoundTripTol, std::to_string(done) + " symbols (" + std::to_string(rejected) +
                                     " rejected), max entry error " + num(worst)};
}

Outcome stability_rate() {
  const auto start = std::chrono::steady_clock::now();
  const auto c = catalog("su2", 12.0);
  const Symbol truth = random_matching_symbol(c, c, 1.0, 8080);
  const std::vector<double> deltas{1e-4, 3e-4, 1e-3, 3e-3, 1e-2};
  const StabilityTable table =
      stability_scan(truth, Weight::power_law(-0.5), Weight::power_law(0.5), deltas, kStabilityTrials, 99);
  const double elapsed = seconds_since(start);
  return {table.slope >= kSlopeLow && table.slope <= kSlopeHigh && elapsed < kStabilityBudgetSeconds,
          "slope " + num(table.slope) + ", " + num(elapsed) + " s"};
}

Outcome compactness_and_index() {
  // Compactness indicators on a(l,l) = I with nu = (1+l)^{-s}.
  const auto c = catalog("su2", 30.0);
  const double exponents[] = {0.0, 0.25, 0.5, 1.0, 1.5, 2.0, 3.0};
  double prev_ratio = std::numeric_limits<double>::infinity();
  bool prev_fired = false;
  bool monotone = true;
  std::string fired_from = "never";
  for (double s : exponents) {
    const Weight nu = Weight::power_law(-s);
    const SymbolClassParams params{0.0, 0.0, Weight::power_law(0.0), nu};
    const BlockOperator op = assemble(diagonal_symbol(c, 0.0), params.mu, nu);
    const CompactnessIndicators ind = compactness_indicators(op, params);
    const double ratio = ind.smallest_retained.back() / ind.smallest_retained.front();
    const bool fired = ind.decay_fired || ind.spectral_fired;
    if (ratio > prev_ratio * (1.0 + 1e-12) || (prev_fired && !fired)) monotone = false;
    if (fired && !prev_fired) fired_from = num(s);
    prev_ratio = ratio;
    prev_fired = fired;
  }

  // numerical_index: invariant under nonzero scalars, additive over block-diagonal splits.
  const auto codomain = catalog("su2", 6.0);
  const auto domain = catalog("product(su2:int,torus:1)", 4.0);
  std::mt19937_64 rng(31337);
  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  int scalar_failures = 0;
  int additive_failures = 0;
  for (int k = 0; k < kIndexInstances; ++k) {
    std::vector<bool> row_side, col_side;
    for (std::size_t i = 0; i < codomain->size(); ++i) row_side.push_back(coin(rng));
    for (std::size_t i = 0; i < domain->size(); ++i) col_side.push_back(coin(rng));
    auto side_of = [](const std::shared_ptr<const DualCatalog>& cat, const std::vector<bool>& side, bool which) {
      return std::make_shared<const DualCatalog>(
          cat->restricted([&](const IrrepLabel& l) { return side[*cat->find(l.index())] == which; }));
    };
    const auto c1 = side_of(codomain, row_side, true), c2 = side_of(codomain, row_side, false);
    const auto d1 = side_of(domain, col_side, true), d2 = side_of(domain, col_side, false);
    const Symbol a = random_symbol(c1, d1, 0.6, 90000 + 2 * static_cast<std::uint64_t>(k));
    const Symbol b = random_symbol(c2, d2, 0.6, 90001 + 2 * static_cast<std::uint64_t>(k));
    std::map<BlockKey, Matrix> blocks;
    for (const Symbol* part : {&a, &b}) {
      for (const auto& [key, block] : part->blocks()) {
        blocks.emplace(BlockKey{*codomain->find(part->codomain().label(key.first).index()),
                                *domain->find(part->domain().label(key.second).index())},
                       block);
      }
    }
    const Symbol whole(codomain, domain, std::move(blocks));
    const Weight mu = Weight::power_law(0.5), nu = Weight::power_law(-0.5);
    const std::int64_t ia = numerical_index(assemble(a, mu, nu)).numerical_index;
    const std::int64_t ib = numerical_index(assemble(b, mu, nu)).numerical_index;
    const std::int64_t iw = numerical_index(assemble(whole, mu, nu)).numerical_index;
    if (iw != ia + ib) ++additive_failures;
    const Complex z = std::polar(0.1 + 9.9 * std::abs(std::sin(phase(rng))), phase(rng));
    if (numerical_index(assemble(whole.scaled(z), mu, nu)).numerical_index != iw) ++scalar_failures;
  }
  return {monotone && scalar_failures == 0 && additive_failures == 0,
          std::string("indicators ") + (monotone ? "monotone" : "NOT monotone") + " in s (compact from s=" + fired_from +
              "); index: " + std::to_string(scalar_failures) + " scalar / " + std::to_string(additive_failures) +
              " additivity failures over " + std::to_string(kIndexInstances)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"block/dense singular value union", union_property},
      {"scaled identity spectrum on SU(2)", diagonal_structure},
      {"Schur bound", schur_bound_holds},
      {"Schatten series threshold", schatten_threshold},
      {"adjoint identity", adjoint_identity},
      {"torus Hankel reduction and winding", torus_reduction},
      {"band-limited round trip", round_trip},
      {"Tikhonov stability rate", stability_rate},
      {"compactness monotonicity and index properties", compactness_and_index},
  };
  int failed = 0;
  int id = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failed;
    std::printf("%s [%d] %s: %s\n", o.pass ? "PASS" : "FAIL", id++, name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%d criteria passed\n", 9 - failed, 9);
  return failed;
}
