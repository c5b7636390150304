#include "muhankel/dual_catalog.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>
#include <sstream>

#include "muhankel/error.hpp"

namespace muhankel {

namespace {

struct LabelValues {
  int dim = 1;
  double casimir = 0.0;
};

LabelValues evaluate(const GroupKind& group, const std::int64_t* index) {
  return std::visit(
      [&](const auto& g) -> LabelValues {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          const std::int64_t k = index[0];
          return {static_cast<int>(k + 1), static_cast<double>(k * (k + 2)) / 4.0};
        } else if constexpr (std::is_same_v<T, GroupKind::Torus>) {
          double sq = 0.0;
          for (int i = 0; i < g.dim; ++i) sq += static_cast<double>(index[i] * index[i]);
          return {1, sq};
        } else {
          LabelValues out;
          std::size_t at = 0;
          for (const auto& f : g.factors) {
            const LabelValues v = evaluate(f, index + at);
            out.dim *= v.dim;
            out.casimir += v.casimir;
            at += f.index_length();
          }
          return out;
        }
      },
      group.kind);
}

void check_index(const GroupKind& group, const std::int64_t* index) {
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          require(index[0] >= 0, ErrorKind::Validation, "SU(2) label must have k = 2l >= 0");
          require(g.half_integers || index[0] % 2 == 0, ErrorKind::Validation,
                  "SU(2) catalog without half-integers admits only integer l");
        } else if constexpr (std::is_same_v<T, GroupKind::Product>) {
          std::size_t at = 0;
          for (const auto& f : g.factors) {
            check_index(f, index + at);
            at += f.index_length();
          }
        }
      },
      group.kind);
}

double power_law_value(const GroupKind& group, const std::int64_t* index, double s) {
  return std::visit(
      [&](const auto& g) -> double {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          return std::pow(1.0 + static_cast<double>(index[0]) / 2.0, s);
        } else if constexpr (std::is_same_v<T, GroupKind::Torus>) {
          double sq = 0.0;
          for (int i = 0; i < g.dim; ++i) sq += static_cast<double>(index[i] * index[i]);
          return std::pow(1.0 + std::sqrt(sq), s);
        } else {
          double out = 1.0;
          std::size_t at = 0;
          for (const auto& f : g.factors) {
            out *= power_law_value(f, index + at, s);
            at += f.index_length();
          }
          return out;
        }
      },
      group.kind);
}

std::string su2_text(std::int64_t k) {
  if (k % 2 == 0) return "l=" + std::to_string(k / 2);
  return "l=" + std::to_string(k) + "/2";
}

std::string describe_index(const GroupKind& group, const std::int64_t* index) {
  return std::visit(
      [&](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          return su2_text(index[0]);
        } else if constexpr (std::is_same_v<T, GroupKind::Torus>) {
          if (g.dim == 1) return "n=" + std::to_string(index[0]);
          std::string out = "n=(";
          for (int i = 0; i < g.dim; ++i) out += (i ? "," : "") + std::to_string(index[i]);
          return out + ")";
        } else {
          std::string out = "(";
          std::size_t at = 0;
          for (std::size_t i = 0; i < g.factors.size(); ++i) {
            out += (i ? ";" : "") + describe_index(g.factors[i], index + at);
            at += g.factors[i].index_length();
          }
          return out + ")";
        }
      },
      group.kind);
}

// Enumeration state shared by the recursive walkers below.
struct Walker {
  double cutoff;
  std::size_t dense = 0;
  std::vector<Index> out;

  void emit(Index idx, int d) {
    dense += static_cast<std::size_t>(d);
    require(dense <= kMaxDenseDim, ErrorKind::Resource,
            "catalog dense dimension exceeds " + std::to_string(kMaxDenseDim));
    out.push_back(std::move(idx));
  }
};

void walk_torus(Walker& w, int dim, Index& prefix, double partial) {
  if (static_cast<int>(prefix.size()) == dim) {
    w.emit(prefix, 1);
    return;
  }
  const auto r = static_cast<std::int64_t>(std::floor(std::sqrt(w.cutoff - partial)));
  for (std::int64_t n = -r; n <= r; ++n) {
    const double next = partial + static_cast<double>(n * n);
    if (next > w.cutoff) continue;
    prefix.push_back(n);
    walk_torus(w, dim, prefix, next);
    prefix.pop_back();
  }
}

std::vector<Index> enumerate_indices(const GroupKind& group, double cutoff);

void walk_product(Walker& w, const std::vector<GroupKind>& factors,
                  const std::vector<std::vector<std::pair<Index, LabelValues>>>& parts, std::size_t which,
                  Index& prefix, double partial, int d) {
  if (which == parts.size()) {
    w.emit(prefix, d);
    return;
  }
  for (const auto& [idx, vals] : parts[which]) {
    if (partial + vals.casimir > w.cutoff) break;  // parts sorted by casimir
    const std::size_t keep = prefix.size();
    prefix.insert(prefix.end(), idx.begin(), idx.end());
    walk_product(w, factors, parts, which + 1, prefix, partial + vals.casimir, d * vals.dim);
    prefix.resize(keep);
  }
}

std::vector<Index> enumerate_indices(const GroupKind& group, double cutoff) {
  Walker w{cutoff, 0, {}};
  std::visit(
      [&](const auto& g) {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          const std::int64_t step = g.half_integers ? 1 : 2;
          for (std::int64_t k = 0; static_cast<double>(k * (k + 2)) / 4.0 <= cutoff; k += step) {
            w.emit({k}, static_cast<int>(k + 1));
          }
        } else if constexpr (std::is_same_v<T, GroupKind::Torus>) {
          Index prefix;
          walk_torus(w, g.dim, prefix, 0.0);
        } else {
          std::vector<std::vector<std::pair<Index, LabelValues>>> parts;
          for (const auto& f : g.factors) {
            std::vector<std::pair<Index, LabelValues>> part;
            for (auto& idx : enumerate_indices(f, cutoff)) {
              const LabelValues v = evaluate(f, idx.data());
              part.emplace_back(std::move(idx), v);
            }
            std::stable_sort(part.begin(), part.end(),
                             [](const auto& a, const auto& b) { return a.second.casimir < b.second.casimir; });
            parts.push_back(std::move(part));
          }
          Index prefix;
          walk_product(w, g.factors, parts, 0, prefix, 0.0, 1);
        }
      },
      group.kind);
  return std::move(w.out);
}

class GroupParser {
 public:
  explicit GroupParser(std::string_view text) : text_(text) {}

  GroupKind parse() {
    GroupKind g = parse_one();
    require(pos_ == text_.size(), ErrorKind::Validation, "trailing characters in group spec '" + std::string(text_) + "'");
    g.validate();
    return g;
  }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;

  std::string_view word() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  bool accept(char c) {
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  GroupKind parse_one() {
    const std::string_view name = word();
    if (name == "su2") {
      if (accept(':')) {
        const std::string_view mode = word();
        if (mode == "int") return GroupKind::su2(false);
        if (mode == "half") return GroupKind::su2(true);
        fail(ErrorKind::Validation, "unknown su2 mode '" + std::string(mode) + "'");
      }
      return GroupKind::su2(true);
    }
    if (name == "torus") {
      int d = 1;
      if (accept(':')) {
        const std::string digits(word());
        require(!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit), ErrorKind::Validation,
                "torus dimension must be a positive integer");
        d = std::stoi(digits);
      }
      return GroupKind::torus(d);
    }
    if (name == "product") {
      require(accept('('), ErrorKind::Validation, "expected '(' after product");
      std::vector<GroupKind> factors;
      do {
        factors.push_back(parse_one());
      } while (accept(','));
      require(accept(')'), ErrorKind::Validation, "expected ')' closing product");
      return GroupKind::product(std::move(factors));
    }
    fail(ErrorKind::Validation, "unknown group '" + std::string(name) + "' in '" + std::string(text_) + "'");
  }
};

}  // namespace

std::size_t GroupKind::index_length() const {
  return std::visit(
      [](const auto& g) -> std::size_t {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, SU2>) {
          return 1;
        } else if constexpr (std::is_same_v<T, Torus>) {
          return static_cast<std::size_t>(g.dim);
        } else {
          std::size_t n = 0;
          for (const auto& f : g.factors) n += f.index_length();
          return n;
        }
      },
      kind);
}

int GroupKind::nesting_depth() const {
  if (const auto* p = std::get_if<Product>(&kind)) {
    int deepest = 0;
    for (const auto& f : p->factors) deepest = std::max(deepest, f.nesting_depth());
    return deepest + 1;
  }
  return 0;
}

void GroupKind::validate() const {
  if (const auto* t = std::get_if<Torus>(&kind)) {
    require(t->dim >= 1, ErrorKind::Validation, "torus dimension must be >= 1");
  } else if (const auto* p = std::get_if<Product>(&kind)) {
    require(p->factors.size() >= 2, ErrorKind::Validation, "product needs at least two factors");
    require(nesting_depth() <= 2, ErrorKind::Validation, "product nesting depth exceeds 2");
    for (const auto& f : p->factors) f.validate();
  }
}

bool operator==(const GroupKind& a, const GroupKind& b) {
  if (a.kind.index() != b.kind.index()) return false;
  if (const auto* s = std::get_if<GroupKind::SU2>(&a.kind)) return s->half_integers == std::get<GroupKind::SU2>(b.kind).half_integers;
  if (const auto* t = std::get_if<GroupKind::Torus>(&a.kind)) return t->dim == std::get<GroupKind::Torus>(b.kind).dim;
  return std::get<GroupKind::Product>(a.kind).factors == std::get<GroupKind::Product>(b.kind).factors;
}

std::string to_string(const GroupKind& group) {
  return std::visit(
      [](const auto& g) -> std::string {
        using T = std::decay_t<decltype(g)>;
        if constexpr (std::is_same_v<T, GroupKind::SU2>) {
          return g.half_integers ? "su2" : "su2:int";
        } else if constexpr (std::is_same_v<T, GroupKind::Torus>) {
          return "torus:" + std::to_string(g.dim);
        } else {
          std::string out = "product(";
          for (std::size_t i = 0; i < g.factors.size(); ++i) out += (i ? "," : "") + to_string(g.factors[i]);
          return out + ")";
        }
      },
      group.kind);
}

GroupKind parse_group(std::string_view text) { return GroupParser(text).parse(); }

IrrepLabel::IrrepLabel(std::shared_ptr<const GroupKind> group, Index index)
    : group_(std::move(group)), index_(std::move(index)) {
  require(group_ != nullptr, ErrorKind::Validation, "label without group");
  require(index_.size() == group_->index_length(), ErrorKind::Validation,
          "label index length " + std::to_string(index_.size()) + " does not match group " + to_string(*group_));
  check_index(*group_, index_.data());
  const LabelValues v = evaluate(*group_, index_.data());
  dim_ = v.dim;
  casimir_ = v.casimir;
}

int dim(const IrrepLabel& label) { return label.dim(); }
double casimir(const IrrepLabel& label) { return label.casimir(); }
std::string describe(const IrrepLabel& label) { return describe_index(label.group(), label.index().data()); }

Weight Weight::power_law(double exponent) {
  require(std::isfinite(exponent), ErrorKind::Validation, "power-law exponent must be finite");
  Weight w;
  w.exponent_ = exponent;
  return w;
}

Weight Weight::table(std::map<Index, double> entries) {
  for (const auto& [idx, value] : entries) {
    require(std::isfinite(value) && value > 0.0, ErrorKind::Validation, "weight table values must be positive");
  }
  Weight w;
  w.power_law_ = false;
  w.entries_ = std::move(entries);
  return w;
}

Weight Weight::scaled(double factor) const {
  require(std::isfinite(factor) && factor > 0.0, ErrorKind::Validation, "weight scale must be positive");
  Weight w = *this;
  w.scale_ *= factor;
  return w;
}

bool Weight::covers(const IrrepLabel& label) const { return power_law_ || entries_.count(label.index()) > 0; }

double Weight::operator()(const IrrepLabel& label) const {
  if (power_law_) return scale_ * power_law_value(label.group(), label.index().data(), exponent_);
  const auto it = entries_.find(label.index());
  if (it == entries_.end()) fail(ErrorKind::Lookup, "weight table has no entry for " + describe(label));
  return scale_ * it->second;
}

double weight_eval(const Weight& weight, const IrrepLabel& label) { return weight(label); }

DualCatalog::DualCatalog(std::shared_ptr<const GroupKind> group, double cutoff, std::vector<IrrepLabel> labels, bool full)
    : group_(std::move(group)), cutoff_(cutoff), labels_(std::move(labels)), full_(full) {
  std::sort(labels_.begin(), labels_.end(), [](const IrrepLabel& a, const IrrepLabel& b) {
    if (a.casimir() != b.casimir()) return a.casimir() < b.casimir();
    return a.index() < b.index();
  });
  spans_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const auto d = static_cast<std::size_t>(labels_[i].dim());
    spans_.push_back({dense_dim_, d});
    dense_dim_ += d;
    const bool fresh = lookup_.emplace(labels_[i].index(), i).second;
    require(fresh, ErrorKind::Validation, "duplicate label " + describe(labels_[i]));
  }
  require(dense_dim_ <= kMaxDenseDim, ErrorKind::Resource, "catalog dense dimension exceeds " + std::to_string(kMaxDenseDim));
}

DualCatalog DualCatalog::enumerate(const GroupKind& group, double cutoff) {
  require(std::isfinite(cutoff) && cutoff >= 0.0, ErrorKind::Validation, "cutoff must be a finite nonnegative number");
  group.validate();
  auto shared = std::make_shared<const GroupKind>(group);
  std::vector<IrrepLabel> labels;
  for (auto& idx : enumerate_indices(group, cutoff)) labels.emplace_back(shared, std::move(idx));
  return DualCatalog(std::move(shared), cutoff, std::move(labels), true);
}

DualCatalog DualCatalog::from_indices(const GroupKind& group, double cutoff, std::vector<Index> indices) {
  require(std::isfinite(cutoff) && cutoff >= 0.0, ErrorKind::Validation, "cutoff must be a finite nonnegative number");
  group.validate();
  auto shared = std::make_shared<const GroupKind>(group);
  std::vector<IrrepLabel> labels;
  labels.reserve(indices.size());
  for (auto& idx : indices) {
    IrrepLabel label(shared, std::move(idx));
    require(label.casimir() <= cutoff, ErrorKind::Validation, "label " + describe(label) + " lies above the cutoff");
    labels.push_back(std::move(label));
  }
  const std::size_t full_size = enumerate(group, cutoff).size();
  const bool full = labels.size() == full_size;
  return DualCatalog(std::move(shared), cutoff, std::move(labels), full);
}

DualCatalog DualCatalog::restricted(const std::function<bool(const IrrepLabel&)>& keep) const {
  std::vector<IrrepLabel> kept;
  for (const auto& l : labels_) {
    if (keep(l)) kept.push_back(l);
  }
  const bool full = full_ && kept.size() == labels_.size();
  return DualCatalog(group_, cutoff_, std::move(kept), full);
}

DualCatalog DualCatalog::truncated(double cutoff) const {
  require(std::isfinite(cutoff) && cutoff >= 0.0, ErrorKind::Validation, "cutoff must be a finite nonnegative number");
  std::vector<IrrepLabel> kept;
  for (const auto& l : labels_) {
    if (l.casimir() <= cutoff) kept.push_back(l);
  }
  return DualCatalog(group_, std::min(cutoff, cutoff_), std::move(kept), full_);
}

std::optional<std::size_t> DualCatalog::find(const Index& index) const {
  const auto it = lookup_.find(index);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

bool operator==(const DualCatalog& a, const DualCatalog& b) {
  if (a.cutoff_ != b.cutoff_ || !(*a.group_ == *b.group_) || a.labels_.size() != b.labels_.size()) return false;
  for (std::size_t i = 0; i < a.labels_.size(); ++i) {
    if (a.labels_[i].index() != b.labels_[i].index()) return false;
  }
  return true;
}

}  // namespace muhankel
