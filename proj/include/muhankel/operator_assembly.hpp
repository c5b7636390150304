#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "muhankel/symbol_space.hpp"

namespace muhankel {

/// Upper bound on rows * cols of a dense materialization.
inline constexpr std::size_t kMaxDenseEntries = std::size_t{1} << 24;

/// The weighted Hankel-type operator in block form: the block from V_rho to V_pi
/// is T(pi,rho) = mu(pi) a(pi,rho) nu(rho). Immutable once assembled.
class BlockOperator {
 public:
  const Symbol& symbol() const { return symbol_; }
  const Weight& mu() const { return mu_; }
  const Weight& nu() const { return nu_; }
  const DualCatalog& codomain() const { return symbol_.codomain(); }
  const DualCatalog& domain() const { return symbol_.domain(); }
  std::size_t rows() const { return codomain().dense_dim(); }
  std::size_t cols() const { return domain().dense_dim(); }

  const std::map<BlockKey, Matrix>& weighted_blocks() const { return blocks_; }
  const Matrix* weighted(std::size_t pi, std::size_t rho) const;

 private:
  friend BlockOperator assemble(Symbol symbol, Weight mu, Weight nu);
  BlockOperator(Symbol symbol, Weight mu, Weight nu) : symbol_(std::move(symbol)), mu_(std::move(mu)), nu_(std::move(nu)) {}

  Symbol symbol_;
  Weight mu_;
  Weight nu_;
  std::map<BlockKey, Matrix> blocks_;
};

/// Throws Validation when a weight table misses a catalog label.
BlockOperator assemble(Symbol symbol, Weight mu, Weight nu);

/// Blockwise product with a coefficient vector of length cols().
Vector apply(const BlockOperator& op, const Vector& fhat);

/// Symbol a*(rho,pi) = a(pi,rho)^H with the weights swapped.
BlockOperator adjoint(const BlockOperator& op);

Matrix to_dense(const BlockOperator& op);

/// Restriction to labels with casimir <= cutoff on both sides.
BlockOperator truncate(const BlockOperator& op, double cutoff);

}  // namespace muhankel
