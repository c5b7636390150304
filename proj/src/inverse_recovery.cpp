#include "muhankel/inverse_recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "muhankel/error.hpp"
#include "muhankel/spectral_analysis.hpp"

namespace muhankel {

namespace {

constexpr double kRetainedRelative = 1e-12;

std::optional<std::size_t> dominant_label(const Vector& x, const DualCatalog& catalog) {
  const double total = x.squaredNorm();
  if (total == 0.0) return std::nullopt;
  for (std::size_t i = 0; i < catalog.size(); ++i) {
    const auto span = catalog.offset(i);
    const double mass = x.segment(span.start, span.length).squaredNorm();
    if (mass >= kAttributionMass * total) return i;
  }
  return std::nullopt;
}

// Noisy operator restricted to each attributed block: sum of s u_pi v_rho^H.
std::map<BlockKey, Matrix> reassemble_blocks(const SpectralData& data) {
  require(data.codomain && data.domain, ErrorKind::Validation, "spectral data carries no catalogs");
  SpectralData local;
  const SpectralData* src = &data;
  if (data.attribution.size() != data.triples.size()) {
    local = data;
    attribute(local);
    src = &local;
  }
  std::map<BlockKey, Matrix> blocks;
  for (std::size_t k = 0; k < src->triples.size(); ++k) {
    const auto& key = src->attribution[k];
    if (!key) {
      fail(ErrorKind::Attribution,
           "singular triple " + std::to_string(k) + " (s=" + std::to_string(src->triples[k].s) +
               ") cannot be attributed to a single block; increase the spectral gap or reduce the noise");
    }
    const auto r = data.codomain->offset(key->first);
    const auto c = data.domain->offset(key->second);
    const auto& t = src->triples[k];
    Matrix contribution = t.s * t.u.segment(r.start, r.length) * t.v.segment(c.start, c.length).adjoint();
    auto it = blocks.find(*key);
    if (it == blocks.end()) {
      blocks.emplace(*key, std::move(contribution));
    } else {
      it->second += contribution;
    }
  }
  return blocks;
}

void gram_schmidt(std::vector<Vector*>& vectors) {
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    Vector& x = *vectors[i];
    for (std::size_t j = 0; j < i; ++j) x -= vectors[j]->dot(x) * (*vectors[j]);
    const double n = x.norm();
    require(n > 0.0, ErrorKind::Numerical, "perturbed singular vectors became linearly dependent");
    x /= n;
  }
}

Vector random_direction(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector g(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    g(i) = Complex(re, im);
  }
  return g / g.norm();
}

}  // namespace

bool SpectralData::fully_attributed() const {
  if (attribution.size() != triples.size()) return false;
  return std::all_of(attribution.begin(), attribution.end(), [](const auto& a) { return a.has_value(); });
}

void SpectralData::validate(double unit_tolerance) const {
  require(codomain && domain, ErrorKind::Validation, "spectral data carries no catalogs");
  require(attribution.empty() || attribution.size() == triples.size(), ErrorKind::Validation,
          "attribution list length differs from the triple count");
  for (std::size_t k = 0; k < triples.size(); ++k) {
    const auto& t = triples[k];
    require(std::isfinite(t.s) && t.s >= 0.0, ErrorKind::Validation, "singular values must be nonnegative");
    require(k == 0 || triples[k - 1].s >= t.s, ErrorKind::Validation, "singular values must be sorted descending");
    require(static_cast<std::size_t>(t.u.size()) == codomain->dense_dim() &&
                static_cast<std::size_t>(t.v.size()) == domain->dense_dim(),
            ErrorKind::Validation, "singular vector length does not match the catalogs");
    require(std::abs(t.u.norm() - 1.0) <= unit_tolerance && std::abs(t.v.norm() - 1.0) <= unit_tolerance,
            ErrorKind::Validation, "singular vectors must have unit norm");
  }
  for (const auto& a : attribution) {
    require(!a || (a->first < codomain->size() && a->second < domain->size()), ErrorKind::Validation,
            "attribution outside the catalogs");
  }
}

std::optional<BlockKey> attribute_triple(const SingularTriple& t, const DualCatalog& codomain, const DualCatalog& domain) {
  const auto pi = dominant_label(t.u, codomain);
  const auto rho = dominant_label(t.v, domain);
  if (!pi || !rho) return std::nullopt;
  return BlockKey{*pi, *rho};
}

void attribute(SpectralData& data) {
  require(data.codomain && data.domain, ErrorKind::Validation, "spectral data carries no catalogs");
  data.attribution.clear();
  data.attribution.reserve(data.triples.size());
  for (const auto& t : data.triples) data.attribution.push_back(attribute_triple(t, *data.codomain, *data.domain));
}

SpectralData forward(const BlockOperator& op) {
  SpectralData data;
  data.codomain = op.symbol().codomain_ptr();
  data.domain = op.symbol().domain_ptr();
  const SvdResult svd = dense_svd(to_dense(op), true);
  if (svd.values.size() > 0 && svd.values(0) > 0.0) {
    const double floor = kRetainedRelative * svd.values(0);
    for (Eigen::Index k = 0; k < svd.values.size(); ++k) {
      if (svd.values(k) <= floor) break;
      data.triples.push_back({svd.values(k), svd.u.col(k), svd.v.col(k)});
    }
  }
  attribute(data);
  return data;
}

Symbol recover_bandlimited(const SpectralData& data, const Weight& mu, const Weight& nu) {
  std::map<BlockKey, Matrix> blocks = reassemble_blocks(data);
  for (auto& [key, block] : blocks) {
    block /= mu(data.codomain->label(key.first)) * nu(data.domain->label(key.second));
  }
  return Symbol(data.codomain, data.domain, std::move(blocks));
}

Symbol tikhonov_recover(const SpectralData& data, const Weight& mu, const Weight& nu, double alpha,
                        PenaltyVariant variant) {
  require(std::isfinite(alpha) && alpha >= 0.0, ErrorKind::Validation, "alpha must be nonnegative");
  std::map<BlockKey, Matrix> blocks = reassemble_blocks(data);
  for (auto& [key, block] : blocks) {
    const double w = mu(data.codomain->label(key.first)) * nu(data.domain->label(key.second));
    if (variant == PenaltyVariant::Unweighted) {
      block *= w / (w * w + alpha);
    } else {
      block /= w * (1.0 + alpha);
    }
  }
  return Symbol(data.codomain, data.domain, std::move(blocks));
}

SpectralData perturb(const SpectralData& data, double delta, std::mt19937_64& rng) {
  require(std::isfinite(delta) && delta >= 0.0, ErrorKind::Validation, "noise level must be nonnegative");
  SpectralData out;
  out.codomain = data.codomain;
  out.domain = data.domain;
  out.triples = data.triples;
  if (delta > 0.0) {
    std::normal_distribution<double> normal(0.0, delta);
    for (auto& t : out.triples) {
      t.s = std::max(0.0, t.s + normal(rng));
      t.u += delta * random_direction(rng, t.u.size());
      t.v += delta * random_direction(rng, t.v.size());
    }
    std::vector<Vector*> us, vs;
    for (auto& t : out.triples) {
      us.push_back(&t.u);
      vs.push_back(&t.v);
    }
    gram_schmidt(us);
    gram_schmidt(vs);
    std::stable_sort(out.triples.begin(), out.triples.end(),
                     [](const SingularTriple& a, const SingularTriple& b) { return a.s > b.s; });
  }
  attribute(out);
  return out;
}

StabilityTable stability_scan(const Symbol& truth, const Weight& mu, const Weight& nu, std::span<const double> deltas,
                              int trials, std::uint64_t seed, PenaltyVariant variant) {
  require(trials >= 1, ErrorKind::Validation, "stability scan needs at least one trial");
  const SpectralData clean = forward(assemble(truth, mu, nu));
  StabilityTable table;
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    const double delta = deltas[i];
    const double alpha = delta * delta;
    std::vector<double> errors;
    for (int trial = 0; trial < trials; ++trial) {
      std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                        static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(trial)};
      std::mt19937_64 rng(seq);
      const SpectralData noisy = perturb(clean, delta, rng);
      const Symbol recovered = tikhonov_recover(noisy, mu, nu, alpha, variant);
      errors.push_back(hs_sum_norm(difference(recovered, truth), mu, nu));
    }
    const double mean = std::accumulate(errors.begin(), errors.end(), 0.0) / static_cast<double>(errors.size());
    double var = 0.0;
    for (double e : errors) var += (e - mean) * (e - mean);
    const double sd = errors.size() > 1 ? std::sqrt(var / static_cast<double>(errors.size() - 1)) : 0.0;
    table.rows.push_back({delta, alpha, mean, sd});
  }

  std::vector<double> xs, ys;
  for (const auto& row : table.rows) {
    if (row.delta > 0.0 && row.mean_error > 0.0) {
      xs.push_back(std::log(row.delta));
      ys.push_back(std::log(row.mean_error));
    }
  }
  if (xs.size() >= 2) {
    const double n = static_cast<double>(xs.size());
    const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
    const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
      sxy += (xs[k] - mx) * (ys[k] - my);
      sxx += (xs[k] - mx) * (xs[k] - mx);
    }
    table.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return table;
}

}  // namespace muhankel
