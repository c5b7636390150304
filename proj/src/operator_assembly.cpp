#include "muhankel/operator_assembly.hpp"

#include "muhankel/error.hpp"

namespace muhankel {

const Matrix* BlockOperator::weighted(std::size_t pi, std::size_t rho) const {
  const auto it = blocks_.find({pi, rho});
  return it == blocks_.end() ? nullptr : &it->second;
}

BlockOperator assemble(Symbol symbol, Weight mu, Weight nu) {
  for (const auto& l : symbol.codomain().labels()) {
    require(mu.covers(l), ErrorKind::Validation, "codomain weight table does not cover " + describe(l));
  }
  for (const auto& l : symbol.domain().labels()) {
    require(nu.covers(l), ErrorKind::Validation, "domain weight table does not cover " + describe(l));
  }
  BlockOperator op(std::move(symbol), std::move(mu), std::move(nu));
  for (const auto& [key, block] : op.symbol_.blocks()) {
    op.blocks_.emplace(key, weighted_block(op.symbol_, op.mu_, op.nu_, key.first, key.second));
  }
  return op;
}

Vector apply(const BlockOperator& op, const Vector& fhat) {
  require(static_cast<std::size_t>(fhat.size()) == op.cols(), ErrorKind::Validation,
          "coefficient vector has length " + std::to_string(fhat.size()) + ", expected " + std::to_string(op.cols()));
  Vector out = Vector::Zero(static_cast<Eigen::Index>(op.rows()));
  for (const auto& [key, block] : op.weighted_blocks()) {
    const auto r = op.codomain().offset(key.first);
    const auto c = op.domain().offset(key.second);
    out.segment(r.start, r.length).noalias() += block * fhat.segment(c.start, c.length);
  }
  return out;
}

BlockOperator adjoint(const BlockOperator& op) {
  std::map<BlockKey, Matrix> swapped;
  for (const auto& [key, block] : op.symbol().blocks()) {
    swapped.emplace(BlockKey{key.second, key.first}, block.adjoint());
  }
  Symbol sym(op.symbol().domain_ptr(), op.symbol().codomain_ptr(), std::move(swapped));
  return assemble(std::move(sym), op.nu(), op.mu());
}

Matrix to_dense(const BlockOperator& op) {
  const std::size_t rows = op.rows();
  const std::size_t cols = op.cols();
  require(cols == 0 || rows <= kMaxDenseEntries / cols, ErrorKind::Resource,
          "dense materialization " + std::to_string(rows) + "x" + std::to_string(cols) + " exceeds the size guard");
  Matrix dense = Matrix::Zero(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (const auto& [key, block] : op.weighted_blocks()) {
    const auto r = op.codomain().offset(key.first);
    const auto c = op.domain().offset(key.second);
    dense.block(r.start, c.start, r.length, c.length) = block;
  }
  return dense;
}

BlockOperator truncate(const BlockOperator& op, double cutoff) {
  auto codomain = std::make_shared<const DualCatalog>(op.codomain().truncated(cutoff));
  auto domain = std::make_shared<const DualCatalog>(op.domain().truncated(cutoff));
  std::map<BlockKey, Matrix> kept;
  for (const auto& [key, block] : op.symbol().blocks()) {
    const auto pi = codomain->find(op.codomain().label(key.first).index());
    const auto rho = domain->find(op.domain().label(key.second).index());
    if (pi && rho) kept.emplace(BlockKey{*pi, *rho}, block);
  }
  return assemble(Symbol(std::move(codomain), std::move(domain), std::move(kept)), op.mu(), op.nu());
}

}  // namespace muhankel
