#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <utility>

#include <Eigen/Dense>

#include "muhankel/dual_catalog.hpp"

namespace muhankel {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// (position of pi in the codomain catalog, position of rho in the domain catalog).
using BlockKey = std::pair<std::size_t, std::size_t>;

/// Sparse matrix-valued symbol a(pi, rho) : V_rho -> V_pi. Absent blocks are zero.
class Symbol {
 public:
  Symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
         std::map<BlockKey, Matrix> blocks = {});

  const DualCatalog& codomain() const { return *codomain_; }
  const DualCatalog& domain() const { return *domain_; }
  const std::shared_ptr<const DualCatalog>& codomain_ptr() const { return codomain_; }
  const std::shared_ptr<const DualCatalog>& domain_ptr() const { return domain_; }
  const std::map<BlockKey, Matrix>& blocks() const { return blocks_; }

  const Matrix* find(std::size_t pi, std::size_t rho) const;
  bool empty() const { return blocks_.empty(); }
  Symbol scaled(Complex factor) const;
  /// Every pi and every rho appears in at most one stored block.
  bool is_partial_matching() const;

 private:
  std::shared_ptr<const DualCatalog> codomain_;
  std::shared_ptr<const DualCatalog> domain_;
  std::map<BlockKey, Matrix> blocks_;
};

struct SymbolClassParams {
  double m = 0.0;
  double n = 0.0;
  Weight mu = Weight::power_law(0.0);
  Weight nu = Weight::power_law(0.0);

  void validate() const;
};

/// mu(pi) a(pi,rho) nu(rho); the zero d_pi x d_rho matrix when the block is absent.
Matrix weighted_block(const Symbol& sym, const Weight& mu, const Weight& nu, std::size_t pi, std::size_t rho);
Matrix weighted_block(const Symbol& sym, const Weight& mu, const Weight& nu, const IrrepLabel& pi, const IrrepLabel& rho);

double spectral_norm(const Matrix& m);

/// sup over stored blocks of (1+lambda_pi)^{m/2} (1+lambda_rho)^{n/2} ||mu a nu||_op.
double class_norm(const Symbol& sym, const SymbolClassParams& params);

/// (sum over blocks of ||mu a nu||_HS^2)^{1/2}; the Hilbert-space norm used by
/// the Tikhonov penalty and the recovery error.
double hs_sum_norm(const Symbol& sym, const Weight& mu, const Weight& nu);

/// 1x1 blocks a(n,m) = coeffs[n+m] on one-dimensional torus catalogs.
Symbol hankel_symbol_from_fourier(const std::map<std::int64_t, Complex>& coeffs,
                                  std::shared_ptr<const DualCatalog> codomain,
                                  std::shared_ptr<const DualCatalog> domain);

/// Each (pi, rho) pair is kept with probability `density`; entries are complex
/// standard normal. Deterministic in `seed`.
Symbol random_symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
                     double density, std::uint64_t seed);

/// Random partial matching: round(fill * min(|codomain|, |domain|)) disjoint
/// pairs, each carrying a complex standard normal block.
Symbol random_matching_symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
                              double fill, std::uint64_t seed);

/// a(pi,pi) = w(pi) I with w the power law of exponent -decay, i.e. (1+l)^{-decay} on SU(2).
Symbol diagonal_symbol(std::shared_ptr<const DualCatalog> catalog, double decay);

/// a - b blockwise; both symbols must share catalogs.
Symbol difference(const Symbol& a, const Symbol& b);

/// Largest entrywise modulus of a - b, treating absent blocks as zero.
double max_entry_difference(const Symbol& a, const Symbol& b);

}  // namespace muhankel
