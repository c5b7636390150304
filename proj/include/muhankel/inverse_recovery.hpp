#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "muhankel/operator_assembly.hpp"

namespace muhankel {

struct SingularTriple {
  double s = 0.0;
  Vector u;  // length N_out
  Vector v;  // length N_in
};

/// Ordered singular triples of an assembled operator, together with the
/// catalogs that fix the dense layout of u and v.
struct SpectralData {
  std::shared_ptr<const DualCatalog> codomain;
  std::shared_ptr<const DualCatalog> domain;
  std::vector<SingularTriple> triples;
  /// Empty when attribution was never attempted; otherwise one entry per triple.
  std::vector<std::optional<BlockKey>> attribution;

  bool fully_attributed() const;
  /// Throws Validation on ordering, length or normalization violations.
  void validate(double unit_tolerance = 1e-12) const;
};

inline constexpr double kAttributionMass = 0.99;

/// The block holding at least kAttributionMass of both |u|^2 and |v|^2, if any.
std::optional<BlockKey> attribute_triple(const SingularTriple& t, const DualCatalog& codomain, const DualCatalog& domain);
void attribute(SpectralData& data);

/// Nonzero singular triples of the dense operator, attributed to blocks.
SpectralData forward(const BlockOperator& op);

/// Per block: sum of s u_block v_block^H over attributed triples, divided by
/// mu(pi) nu(rho). Throws Attribution when any triple is unattributed.
Symbol recover_bandlimited(const SpectralData& data, const Weight& mu, const Weight& nu);

enum class PenaltyVariant {
  Unweighted,  // alpha ||a||_HS^2   -> a = mu nu T / (mu^2 nu^2 + alpha)
  Weighted,    // alpha ||mu a nu||^2 -> a = T / (mu nu (1 + alpha))
};

Symbol tikhonov_recover(const SpectralData& data, const Weight& mu, const Weight& nu, double alpha,
                        PenaltyVariant variant = PenaltyVariant::Unweighted);

/// Additive N(0, delta^2) noise on singular values (clamped at zero), a
/// delta-sized random direction added to each vector, then Gram-Schmidt over
/// the u's and over the v's. Triples are re-sorted and re-attributed.
SpectralData perturb(const SpectralData& data, double delta, std::mt19937_64& rng);

struct StabilityRow {
  double delta = 0.0;
  double alpha = 0.0;
  double mean_error = 0.0;
  double std_error = 0.0;
};

struct StabilityTable {
  std::vector<StabilityRow> rows;
  /// Least-squares slope of log(mean_error) against log(delta) over delta > 0.
  double slope = 0.0;
};

/// For each delta: `trials` perturbed copies of forward(truth), Tikhonov recovery
/// with alpha = delta^2, error measured in the weighted HS-sum norm.
StabilityTable stability_scan(const Symbol& truth, const Weight& mu, const Weight& nu, std::span<const double> deltas,
                              int trials, std::uint64_t seed, PenaltyVariant variant = PenaltyVariant::Unweighted);

}  // namespace muhankel
