#include "muhankel/symbol_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "muhankel/error.hpp"

namespace muhankel {

namespace {

Matrix random_block(std::mt19937_64& rng, int rows, int cols) {
  // Complex standard normal: real and imaginary parts with variance 1/2.
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  Matrix out(rows, cols);
  for (int j = 0; j < cols; ++j) {
    for (int i = 0; i < rows; ++i) {
      const double re = normal(rng);
      const double im = normal(rng);
      out(i, j) = Complex(re, im);
    }
  }
  return out;
}

bool is_circle(const DualCatalog& c) {
  const auto* t = std::get_if<GroupKind::Torus>(&c.group().kind);
  return t != nullptr && t->dim == 1;
}

}  // namespace

Symbol::Symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
               std::map<BlockKey, Matrix> blocks)
    : codomain_(std::move(codomain)), domain_(std::move(domain)), blocks_(std::move(blocks)) {
  require(codomain_ && domain_, ErrorKind::Validation, "symbol requires both catalogs");
  for (const auto& [key, block] : blocks_) {
    require(key.first < codomain_->size() && key.second < domain_->size(), ErrorKind::Validation,
            "symbol block key outside the catalogs");
    const int rows = codomain_->label(key.first).dim();
    const int cols = domain_->label(key.second).dim();
    require(block.rows() == rows && block.cols() == cols, ErrorKind::Validation,
            "block (" + describe(codomain_->label(key.first)) + ", " + describe(domain_->label(key.second)) +
                ") has shape " + std::to_string(block.rows()) + "x" + std::to_string(block.cols()) + ", expected " +
                std::to_string(rows) + "x" + std::to_string(cols));
  }
}

const Matrix* Symbol::find(std::size_t pi, std::size_t rho) const {
  const auto it = blocks_.find({pi, rho});
  return it == blocks_.end() ? nullptr : &it->second;
}

Symbol Symbol::scaled(Complex factor) const {
  std::map<BlockKey, Matrix> out;
  for (const auto& [key, block] : blocks_) out.emplace(key, factor * block);
  return Symbol(codomain_, domain_, std::move(out));
}

bool Symbol::is_partial_matching() const {
  std::set<std::size_t> rows, cols;
  for (const auto& [key, block] : blocks_) {
    if (!rows.insert(key.first).second || !cols.insert(key.second).second) return false;
  }
  return true;
}

void SymbolClassParams::validate() const {
  require(std::isfinite(m) && m >= 0.0 && std::isfinite(n) && n >= 0.0, ErrorKind::Validation,
          "symbol class exponents m, n must be nonnegative");
}

Matrix weighted_block(const Symbol& sym, const Weight& mu, const Weight& nu, std::size_t pi, std::size_t rho) {
  const IrrepLabel& p = sym.codomain().label(pi);
  const IrrepLabel& r = sym.domain().label(rho);
  const Matrix* a = sym.find(pi, rho);
  if (a == nullptr) return Matrix::Zero(p.dim(), r.dim());
  const double scale = mu(p) * nu(r);
  return scale * (*a);
}

Matrix weighted_block(const Symbol& sym, const Weight& mu, const Weight& nu, const IrrepLabel& pi,
                      const IrrepLabel& rho) {
  const auto p = sym.codomain().find(pi.index());
  const auto r = sym.domain().find(rho.index());
  require(p.has_value() && r.has_value(), ErrorKind::Validation,
          "pair (" + describe(pi) + ", " + describe(rho) + ") is outside the symbol catalogs");
  return weighted_block(sym, mu, nu, *p, *r);
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

double class_norm(const Symbol& sym, const SymbolClassParams& params) {
  params.validate();
  double best = 0.0;
  for (const auto& [key, block] : sym.blocks()) {
    const double lp = sym.codomain().label(key.first).casimir();
    const double lr = sym.domain().label(key.second).casimir();
    const double factor = std::pow(1.0 + lp, params.m / 2.0) * std::pow(1.0 + lr, params.n / 2.0);
    best = std::max(best, factor * spectral_norm(weighted_block(sym, params.mu, params.nu, key.first, key.second)));
  }
  return best;
}

double hs_sum_norm(const Symbol& sym, const Weight& mu, const Weight& nu) {
  double sq = 0.0;
  for (const auto& [key, block] : sym.blocks()) {
    sq += weighted_block(sym, mu, nu, key.first, key.second).squaredNorm();
  }
  return std::sqrt(sq);
}

Symbol hankel_symbol_from_fourier(const std::map<std::int64_t, Complex>& coeffs,
                                  std::shared_ptr<const DualCatalog> codomain,
                                  std::shared_ptr<const DualCatalog> domain) {
  require(codomain && domain && is_circle(*codomain) && is_circle(*domain), ErrorKind::Validation,
          "Hankel symbols from Fourier coefficients need one-dimensional torus catalogs");
  std::map<BlockKey, Matrix> blocks;
  for (std::size_t i = 0; i < codomain->size(); ++i) {
    for (std::size_t j = 0; j < domain->size(); ++j) {
      const std::int64_t k = codomain->label(i).index()[0] + domain->label(j).index()[0];
      const auto it = coeffs.find(k);
      if (it == coeffs.end() || it->second == Complex(0.0, 0.0)) continue;
      blocks.emplace(BlockKey{i, j}, Matrix::Constant(1, 1, it->second));
    }
  }
  return Symbol(std::move(codomain), std::move(domain), std::move(blocks));
}

Symbol random_symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
                     double density, std::uint64_t seed) {
  require(density >= 0.0 && density <= 1.0, ErrorKind::Validation, "density must lie in [0, 1]");
  require(codomain && domain, ErrorKind::Validation, "random symbol requires both catalogs");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::map<BlockKey, Matrix> blocks;
  for (std::size_t i = 0; i < codomain->size(); ++i) {
    for (std::size_t j = 0; j < domain->size(); ++j) {
      if (coin(rng) >= density) continue;
      blocks.emplace(BlockKey{i, j}, random_block(rng, codomain->label(i).dim(), domain->label(j).dim()));
    }
  }
  return Symbol(std::move(codomain), std::move(domain), std::move(blocks));
}

Symbol random_matching_symbol(std::shared_ptr<const DualCatalog> codomain, std::shared_ptr<const DualCatalog> domain,
                              double fill, std::uint64_t seed) {
  require(fill >= 0.0 && fill <= 1.0, ErrorKind::Validation, "fill must lie in [0, 1]");
  require(codomain && domain, ErrorKind::Validation, "random symbol requires both catalogs");
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> rows(codomain->size()), cols(domain->size());
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  std::iota(cols.begin(), cols.end(), std::size_t{0});
  std::shuffle(rows.begin(), rows.end(), rng);
  std::shuffle(cols.begin(), cols.end(), rng);
  const auto pairs = static_cast<std::size_t>(std::lround(fill * static_cast<double>(std::min(rows.size(), cols.size()))));
  std::map<BlockKey, Matrix> blocks;
  for (std::size_t k = 0; k < pairs; ++k) {
    blocks.emplace(BlockKey{rows[k], cols[k]},
                   random_block(rng, codomain->label(rows[k]).dim(), domain->label(cols[k]).dim()));
  }
  return Symbol(std::move(codomain), std::move(domain), std::move(blocks));
}

Symbol diagonal_symbol(std::shared_ptr<const DualCatalog> catalog, double decay) {
  require(catalog != nullptr, ErrorKind::Validation, "diagonal symbol requires a catalog");
  const Weight profile = Weight::power_law(-decay);
  std::map<BlockKey, Matrix> blocks;
  for (std::size_t i = 0; i < catalog->size(); ++i) {
    const IrrepLabel& l = catalog->label(i);
    blocks.emplace(BlockKey{i, i}, profile(l) * Matrix::Identity(l.dim(), l.dim()));
  }
  return Symbol(catalog, catalog, std::move(blocks));
}

Symbol difference(const Symbol& a, const Symbol& b) {
  require(a.codomain() == b.codomain() && a.domain() == b.domain(), ErrorKind::Validation,
          "symbols live on different catalogs");
  std::map<BlockKey, Matrix> out = a.blocks();
  for (const auto& [key, block] : b.blocks()) {
    auto it = out.find(key);
    if (it == out.end()) {
      out.emplace(key, -block);
    } else {
      it->second -= block;
    }
  }
  return Symbol(a.codomain_ptr(), a.domain_ptr(), std::move(out));
}

double max_entry_difference(const Symbol& a, const Symbol& b) {
  require(a.codomain() == b.codomain() && a.domain() == b.domain(), ErrorKind::Validation,
          "symbols live on different catalogs");
  double worst = 0.0;
  for (const auto& [key, block] : a.blocks()) {
    const Matrix* other = b.find(key.first, key.second);
    worst = std::max(worst, other ? (block - *other).cwiseAbs().maxCoeff() : block.cwiseAbs().maxCoeff());
  }
  for (const auto& [key, block] : b.blocks()) {
    if (a.find(key.first, key.second) == nullptr) worst = std::max(worst, block.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace muhankel
