#include "doctest.h"

#include "muhankel/error.hpp"
#include "test_support.hpp"

using namespace muhankel;
using muhankel::testing::catalog;

namespace {

std::vector<std::int64_t> first_coords(const DualCatalog& c) {
  std::vector<std::int64_t> out;
  for (const auto& l : c.labels()) out.push_back(l.index()[0]);
  return out;
}

std::shared_ptr<const GroupKind> su2_ptr(bool half = true) { return std::make_shared<const GroupKind>(GroupKind::su2(half)); }

}  // namespace

TEST_CASE("enumerate SU(2) with half-integers up to cutoff 6") {
  const auto c = DualCatalog::enumerate(GroupKind::su2(), 6.0);
  // l(l+1) <= 6 for l in {0, 1/2, 1, 3/2, 2}; k = 2l.
  CHECK(first_coords(c) == std::vector<std::int64_t>{0, 1, 2, 3, 4});
  std::vector<int> dims;
  for (const auto& l : c.labels()) dims.push_back(l.dim());
  CHECK(dims == std::vector<int>{1, 2, 3, 4, 5});
  CHECK(c.dense_dim() == 15);
}

TEST_CASE("enumerate circle up to cutoff 4") {
  const auto c = DualCatalog::enumerate(GroupKind::torus(1), 4.0);
  CHECK(c.size() == 5);
  CHECK(c.dense_dim() == 5);
  // Ties in casimir are broken lexicographically: -1 before 1.
  CHECK(first_coords(c) == std::vector<std::int64_t>{0, -1, 1, -2, 2});
}

TEST_CASE("cutoff zero keeps only the trivial representation") {
  const auto c = DualCatalog::enumerate(GroupKind::su2(), 0.0);
  REQUIRE(c.size() == 1);
  CHECK(c.label(0).index() == Index{0});
  CHECK(c.dense_dim() == 1);
}

TEST_CASE("enumerate rejects bad cutoffs") {
  CHECK_THROWS_AS(DualCatalog::enumerate(GroupKind::su2(), -1.0), Error);
  try {
    DualCatalog::enumerate(GroupKind::torus(3), 1e6);
    FAIL("expected resource guard");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Resource);
  }
}

TEST_CASE("dimensions") {
  CHECK(dim(IrrepLabel(su2_ptr(), {2})) == 3);
  CHECK(dim(IrrepLabel(std::make_shared<const GroupKind>(GroupKind::torus(1)), {7})) == 1);
  auto prod = std::make_shared<const GroupKind>(GroupKind::product({GroupKind::su2(), GroupKind::torus(1)}));
  CHECK(dim(IrrepLabel(prod, {2, 3})) == 3);
}

TEST_CASE("Casimir eigenvalues") {
  CHECK(casimir(IrrepLabel(su2_ptr(), {4})) == 6.0);
  CHECK(casimir(IrrepLabel(std::make_shared<const GroupKind>(GroupKind::torus(1)), {-3})) == 9.0);
  CHECK(casimir(IrrepLabel(su2_ptr(), {0})) == 0.0);
  auto prod = std::make_shared<const GroupKind>(GroupKind::product({GroupKind::su2(), GroupKind::torus(2)}));
  CHECK(casimir(IrrepLabel(prod, {2, 1, -2})) == doctest::Approx(2.0 + 5.0));
}

TEST_CASE("labels are validated against their group") {
  CHECK_THROWS_AS(IrrepLabel(su2_ptr(false), {1}), Error);
  CHECK_THROWS_AS(IrrepLabel(su2_ptr(), {-2}), Error);
  CHECK_THROWS_AS(IrrepLabel(su2_ptr(), {1, 2}), Error);
}

TEST_CASE("group specs") {
  CHECK(to_string(parse_group("su2")) == "su2");
  CHECK(to_string(parse_group("su2:int")) == "su2:int");
  CHECK(to_string(parse_group("torus:3")) == "torus:3");
  CHECK(to_string(parse_group("product(su2,torus:1)")) == "product(su2,torus:1)");
  CHECK(parse_group("product(product(su2,su2),torus:2)").nesting_depth() == 2);
  CHECK_THROWS_AS(parse_group("product(su2)"), Error);
  CHECK_THROWS_AS(parse_group("torus:0"), Error);
  CHECK_THROWS_AS(parse_group("product(product(product(su2,su2),su2),su2)"), Error);
  CHECK_THROWS_AS(parse_group("so3"), Error);
}

TEST_CASE("weights") {
  const IrrepLabel l1(su2_ptr(), {2});
  CHECK(weight_eval(Weight::power_law(2.0), l1) == doctest::Approx(4.0));
  CHECK(weight_eval(Weight::power_law(0.0), IrrepLabel(su2_ptr(), {7})) == 1.0);
  const IrrepLabel half(su2_ptr(), {1});
  const Weight table = Weight::table({{Index{1}, 0.25}});
  CHECK(weight_eval(table, half) == 0.25);
  try {
    weight_eval(table, l1);
    FAIL("expected lookup error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Lookup);
  }
  CHECK_THROWS_AS(Weight::table({{Index{1}, 0.0}}), Error);
  // Torus power law uses the Euclidean length of n.
  auto t2 = std::make_shared<const GroupKind>(GroupKind::torus(2));
  CHECK(weight_eval(Weight::power_law(1.0), IrrepLabel(t2, {3, 4})) == doctest::Approx(6.0));
  CHECK(weight_eval(Weight::power_law(2.0).scaled(3.0), l1) == doctest::Approx(12.0));
}

TEST_CASE("integer-l catalog is the integer subset of the full catalog") {
  for (double cutoff : {0.0, 2.0, 6.0, 30.0, 110.5}) {
    const auto full = DualCatalog::enumerate(GroupKind::su2(true), cutoff);
    const auto ints = DualCatalog::enumerate(GroupKind::su2(false), cutoff);
    std::vector<std::int64_t> expected;
    for (auto k : first_coords(full)) {
      if (k % 2 == 0) expected.push_back(k);
    }
    CHECK(first_coords(ints) == expected);
  }
}

TEST_CASE("enumeration is monotone and offsets are gap-free") {
  const char* groups[] = {"su2", "torus:1", "torus:2", "product(su2,torus:1)", "product(su2:int,su2)"};
  for (const char* g : groups) {
    CAPTURE(g);
    double previous = 0.0;
    std::shared_ptr<const DualCatalog> smaller;
    for (double cutoff : {0.0, 1.0, 2.5, 6.0, 12.0, 20.0}) {
      const auto c = catalog(g, cutoff);
      std::size_t at = 0;
      for (std::size_t i = 0; i < c->size(); ++i) {
        CHECK(c->offset(i).start == at);
        CHECK(c->offset(i).length == static_cast<std::size_t>(c->label(i).dim()));
        CHECK(c->label(i).casimir() <= cutoff);
        if (i > 0) CHECK(c->label(i - 1).casimir() <= c->label(i).casimir());
        at += c->offset(i).length;
      }
      CHECK(at == c->dense_dim());
      if (smaller) {
        // Sorted by casimir, so a smaller cutoff gives a prefix.
        REQUIRE(smaller->size() <= c->size());
        for (std::size_t i = 0; i < smaller->size(); ++i) CHECK(smaller->label(i).index() == c->label(i).index());
        CHECK(*smaller == c->truncated(previous));
      }
      smaller = c;
      previous = cutoff;
    }
  }
}

TEST_CASE("product enumeration matches brute force over factor catalogs") {
  const double cutoff = 9.0;
  const auto prod = DualCatalog::enumerate(parse_group("product(su2,torus:1)"), cutoff);
  std::size_t count = 0;
  for (std::int64_t k = 0; k <= 8; ++k) {
    for (std::int64_t n = -4; n <= 4; ++n) {
      if (k * (k + 2) / 4.0 + static_cast<double>(n * n) <= cutoff) {
        ++count;
        CHECK(prod.find({k, n}).has_value());
      }
    }
  }
  CHECK(prod.size() == count);
}

TEST_CASE("chosen subsets") {
  const auto half = DualCatalog::from_indices(GroupKind::torus(1), 4.0, {{2}, {0}, {1}});
  CHECK(first_coords(half) == std::vector<std::int64_t>{0, 1, 2});
  CHECK_FALSE(half.is_full());
  CHECK(DualCatalog::enumerate(GroupKind::torus(1), 4.0).is_full());
  CHECK_THROWS_AS(DualCatalog::from_indices(GroupKind::torus(1), 4.0, {{3}}), Error);
  CHECK_THROWS_AS(DualCatalog::from_indices(GroupKind::torus(1), 4.0, {{1}, {1}}), Error);
  const auto empty = DualCatalog::from_indices(GroupKind::su2(), 4.0, {});
  CHECK(empty.size() == 0);
  CHECK(empty.dense_dim() == 0);
}
