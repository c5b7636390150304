#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace muhankel {

/// Integer coordinates of an irreducible representation. SU(2) stores k = 2l,
/// tori store the character n in Z^d, products concatenate their factors.
using Index = std::vector<std::int64_t>;

/// Upper bound on the dense coordinate range of a single catalog.
inline constexpr std::size_t kMaxDenseDim = 1'000'000;

struct GroupKind {
  struct SU2 {
    bool half_integers = true;
  };
  struct Torus {
    int dim = 1;
  };
  struct Product {
    std::vector<GroupKind> factors;
  };

  std::variant<SU2, Torus, Product> kind;

  static GroupKind su2(bool half_integers = true) { return {SU2{half_integers}}; }
  static GroupKind torus(int dim) { return {Torus{dim}}; }
  static GroupKind product(std::vector<GroupKind> factors) { return {Product{std::move(factors)}}; }

  bool is_su2() const { return std::holds_alternative<SU2>(kind); }
  bool is_torus() const { return std::holds_alternative<Torus>(kind); }
  bool is_product() const { return std::holds_alternative<Product>(kind); }

  /// Length of the index vector of every label of this group.
  std::size_t index_length() const;
  int nesting_depth() const;
  /// Throws Validation when a structural invariant is broken.
  void validate() const;

  friend bool operator==(const GroupKind& a, const GroupKind& b);
};

/// Text form used by the CLI and the JSON files: `su2`, `su2:int`, `torus:d`,
/// `product(f1,f2,...)`.
std::string to_string(const GroupKind& group);
GroupKind parse_group(std::string_view text);

class IrrepLabel {
 public:
  /// Validates the index against the group (length, SU(2) parity).
  IrrepLabel(std::shared_ptr<const GroupKind> group, Index index);

  const GroupKind& group() const { return *group_; }
  const std::shared_ptr<const GroupKind>& group_ptr() const { return group_; }
  const Index& index() const { return index_; }
  int dim() const { return dim_; }
  double casimir() const { return casimir_; }

  friend bool operator==(const IrrepLabel& a, const IrrepLabel& b) { return a.index_ == b.index_; }

 private:
  std::shared_ptr<const GroupKind> group_;
  Index index_;
  int dim_ = 1;
  double casimir_ = 0.0;
};

int dim(const IrrepLabel& label);
double casimir(const IrrepLabel& label);
/// Human-readable index: `l=3/2`, `n=(1,-2)`, `(l=1;n=3)`.
std::string describe(const IrrepLabel& label);

/// Positive function on the dual. Either (1+l)^s on SU(2), (1+|n|)^s on tori and
/// the product of the factor values on products, or an explicit table.
/// Both variants carry a positive overall scale.
class Weight {
 public:
  static Weight power_law(double exponent);
  static Weight table(std::map<Index, double> entries);
  Weight scaled(double factor) const;

  bool is_power_law() const { return power_law_; }
  double exponent() const { return exponent_; }
  double scale() const { return scale_; }
  const std::map<Index, double>& entries() const { return entries_; }

  /// Throws Lookup when a table lacks the label.
  double operator()(const IrrepLabel& label) const;
  bool covers(const IrrepLabel& label) const;

 private:
  bool power_law_ = true;
  double exponent_ = 0.0;
  double scale_ = 1.0;
  std::map<Index, double> entries_;
};

double weight_eval(const Weight& weight, const IrrepLabel& label);

class DualCatalog {
 public:
  struct Span {
    std::size_t start = 0;
    std::size_t length = 0;
  };

  /// All labels with Casimir eigenvalue <= cutoff, ordered by (casimir, index).
  static DualCatalog enumerate(const GroupKind& group, double cutoff);
  /// A chosen subset of the labels below the cutoff (e.g. a Hardy-type half of
  /// the dual). Duplicates and labels above the cutoff are rejected.
  static DualCatalog from_indices(const GroupKind& group, double cutoff, std::vector<Index> indices);

  DualCatalog restricted(const std::function<bool(const IrrepLabel&)>& keep) const;
  /// Labels with casimir <= cutoff, carrying the lowered cutoff.
  DualCatalog truncated(double cutoff) const;
  /// Same label set as enumerate(group(), cutoff()).
  bool is_full() const { return full_; }

  const GroupKind& group() const { return *group_; }
  const std::shared_ptr<const GroupKind>& group_ptr() const { return group_; }
  double cutoff() const { return cutoff_; }
  const std::vector<IrrepLabel>& labels() const { return labels_; }
  const IrrepLabel& label(std::size_t pos) const { return labels_.at(pos); }
  std::size_t size() const { return labels_.size(); }
  std::size_t dense_dim() const { return dense_dim_; }
  Span offset(std::size_t pos) const { return spans_.at(pos); }
  std::optional<std::size_t> find(const Index& index) const;

  friend bool operator==(const DualCatalog& a, const DualCatalog& b);

 private:
  DualCatalog(std::shared_ptr<const GroupKind> group, double cutoff, std::vector<IrrepLabel> labels, bool full);

  std::shared_ptr<const GroupKind> group_;
  double cutoff_ = 0.0;
  std::vector<IrrepLabel> labels_;
  std::vector<Span> spans_;
  std::map<Index, std::size_t> lookup_;
  std::size_t dense_dim_ = 0;
  bool full_ = true;
};

}  // namespace muhankel
