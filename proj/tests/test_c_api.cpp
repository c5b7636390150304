#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "json.hpp"
#include "muhankel/muhankel.h"

using nlohmann::json;

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  mh_string_free(s);
  return out;
}

struct Fixture {
  mh_catalog* cat = nullptr;
  mh_weight* unit = nullptr;
  Fixture() {
    REQUIRE(mh_catalog_enumerate("su2", 6.0, &cat) == MH_OK);
    REQUIRE(mh_weight_power_law(0.0, &unit) == MH_OK);
  }
  ~Fixture() {
    mh_catalog_free(cat);
    mh_weight_free(unit);
  }
};

}  // namespace

TEST_CASE("version and error state") {
  CHECK(std::strlen(mh_version()) > 0);
  mh_catalog* c = nullptr;
  CHECK(mh_catalog_enumerate("so3", 1.0, &c) == MH_ERR_VALIDATION);
  CHECK(c == nullptr);
  CHECK(std::string(mh_last_error()).size() > 0);
  CHECK(mh_catalog_enumerate("su2", 1.0, &c) == MH_OK);
  CHECK(std::string(mh_last_error()).empty());
  mh_catalog_free(c);
  CHECK(mh_catalog_enumerate(nullptr, 1.0, &c) == MH_ERR_VALIDATION);
  CHECK(mh_catalog_enumerate("torus:3", 1e6, &c) == MH_ERR_RESOURCE);
}

TEST_CASE_FIXTURE(Fixture, "catalogs") {
  CHECK(mh_catalog_size(cat) == 5);
  CHECK(mh_catalog_dense_dim(cat) == 15);
  int dim = 0;
  double cas = 0.0;
  CHECK(mh_catalog_label(cat, 4, &dim, &cas) == MH_OK);
  CHECK(dim == 5);
  CHECK(cas == 6.0);
  CHECK(mh_catalog_label(cat, 5, &dim, &cas) == MH_ERR_VALIDATION);

  char* text = nullptr;
  REQUIRE(mh_catalog_to_json(cat, &text) == MH_OK);
  const std::string doc = take(text);
  CHECK(json::parse(doc).at("labels").size() == 5);
  mh_catalog* back = nullptr;
  REQUIRE(mh_catalog_from_json(doc.c_str(), &back) == MH_OK);
  CHECK(mh_catalog_dense_dim(back) == 15);
  mh_catalog_free(back);
  CHECK(mh_catalog_from_json("{not json", &back) == MH_ERR_VALIDATION);

  mh_catalog* circle = nullptr;
  mh_catalog* half = nullptr;
  REQUIRE(mh_catalog_enumerate("torus:1", 9.0, &circle) == MH_OK);
  REQUIRE(mh_catalog_nonnegative(circle, &half) == MH_OK);
  CHECK(mh_catalog_size(half) == 4);
  mh_catalog_free(circle);
  mh_catalog_free(half);
}

TEST_CASE_FIXTURE(Fixture, "weights") {
  mh_weight* w = nullptr;
  REQUIRE(mh_weight_power_law(2.0, &w) == MH_OK);
  double v = 0.0;
  CHECK(mh_weight_eval(w, cat, 2, &v) == MH_OK);  // l = 1
  CHECK(v == doctest::Approx(4.0));
  mh_weight_free(w);

  REQUIRE(mh_weight_from_json(R"({"entries":[{"index":[1],"value":0.25}]})", &w) == MH_OK);
  CHECK(mh_weight_eval(w, cat, 1, &v) == MH_OK);
  CHECK(v == 0.25);
  CHECK(mh_weight_eval(w, cat, 2, &v) == MH_ERR_LOOKUP);

  mh_symbol* sym = nullptr;
  REQUIRE(mh_symbol_diagonal(cat, 0.0, &sym) == MH_OK);
  mh_operator* op = nullptr;
  CHECK(mh_operator_assemble(sym, w, unit, &op) == MH_ERR_VALIDATION);
  CHECK(op == nullptr);
  mh_symbol_free(sym);
  mh_weight_free(w);
}

TEST_CASE_FIXTURE(Fixture, "operators through the C interface") {
  mh_symbol* sym = nullptr;
  REQUIRE(mh_symbol_random(cat, cat, 0.5, 42, &sym) == MH_OK);
  CHECK(mh_symbol_block_count(sym) > 0);
  mh_operator* op = nullptr;
  REQUIRE(mh_operator_assemble(sym, unit, unit, &op) == MH_OK);
  size_t rows = 0, cols = 0;
  mh_operator_shape(op, &rows, &cols);
  CHECK(rows == 15);
  CHECK(cols == 15);

  std::vector<double> dense(2 * rows * cols);
  REQUIRE(mh_operator_to_dense(op, dense.data(), dense.size()) == MH_OK);
  CHECK(mh_operator_to_dense(op, dense.data(), 3) == MH_ERR_VALIDATION);

  mh_operator* adj = nullptr;
  REQUIRE(mh_operator_adjoint(op, &adj) == MH_OK);
  std::vector<double> dense_adj(2 * rows * cols);
  REQUIRE(mh_operator_to_dense(adj, dense_adj.data(), dense_adj.size()) == MH_OK);
  for (size_t i = 0; i < rows; ++i) {
    for (size_t k = 0; k < cols; ++k) {
      CHECK(dense_adj[2 * (k * rows + i)] == dense[2 * (i * cols + k)]);
      CHECK(dense_adj[2 * (k * rows + i) + 1] == -dense[2 * (i * cols + k) + 1]);
    }
  }

  std::vector<double> x(2 * cols, 0.0), y(2 * rows, 0.0);
  x[2 * 3] = 1.0;
  REQUIRE(mh_operator_apply(op, x.data(), x.size(), y.data(), y.size()) == MH_OK);
  for (size_t i = 0; i < rows; ++i) {
    CHECK(y[2 * i] == doctest::Approx(dense[2 * (i * cols + 3)]));
    CHECK(y[2 * i + 1] == doctest::Approx(dense[2 * (i * cols + 3) + 1]));
  }
  CHECK(mh_operator_apply(op, x.data(), 2, y.data(), y.size()) == MH_ERR_VALIDATION);

  char* csv = nullptr;
  char* header = nullptr;
  REQUIRE(mh_operator_dense_csv(op, &csv, &header) == MH_OK);
  CHECK(json::parse(take(header)).at("shape") == json::array({15, 15}));
  const std::string body = take(csv);
  CHECK(std::count(body.begin(), body.end(), '\n') == 15);

  const double orders[] = {1.0, 2.0};
  char* sj = nullptr;
  char* sc = nullptr;
  REQUIRE(mh_spectrum(op, orders, 2, &sj, &sc) == MH_OK);
  const json report = json::parse(take(sj));
  CHECK(report.at("singular_values").size() == 15);
  CHECK(take(sc).rfind("index,singular_value", 0) == 0);

  char* cj = nullptr;
  REQUIRE(mh_criteria(sym, 1.0, 1.0, unit, unit, &cj, nullptr) == MH_OK);
  const json verdicts = json::parse(take(cj));
  REQUIRE(verdicts.size() == 3);
  CHECK(verdicts[0].at("name") == "schur_bound");
  CHECK(verdicts[0].at("satisfied") == true);

  mh_operator_free(adj);
  mh_operator_free(op);
  mh_symbol_free(sym);
}

TEST_CASE_FIXTURE(Fixture, "Hankel symbols, winding and index") {
  mh_catalog* circle = nullptr;
  mh_catalog* half = nullptr;
  REQUIRE(mh_catalog_enumerate("torus:1", 16.0, &circle) == MH_OK);
  REQUIRE(mh_catalog_nonnegative(circle, &half) == MH_OK);
  const int64_t keys[] = {1, 2};
  const double re[] = {1.0, 0.5};
  const double im[] = {0.0, 0.0};
  mh_symbol* sym = nullptr;
  REQUIRE(mh_symbol_hankel(keys, re, im, 2, half, half, &sym) == MH_OK);
  CHECK(mh_symbol_block_count(sym) == 2 + 3);

  int64_t w = 0;
  CHECK(mh_fourier_winding(keys, re, im, 1, 256, &w) == MH_OK);
  CHECK(w == 1);

  mh_operator* op = nullptr;
  REQUIRE(mh_operator_assemble(sym, unit, unit, &op) == MH_OK);
  char* ij = nullptr;
  REQUIRE(mh_index_report(op, 1e-8, &ij) == MH_OK);
  const json report = json::parse(take(ij));
  CHECK(report.at("numerical_index") == 0);
  CHECK(report.contains("formula_index"));

  const double cre[] = {1.0, 0.0, -1.0, 0.0};
  const double cim[] = {0.0, 1.0, 0.0, -1.0};
  CHECK(mh_winding_number(cre, cim, 4, 1e-12, &w) == MH_ERR_NUMERICAL);
  CHECK(mh_symbol_hankel(keys, re, im, 2, cat, cat, &sym) == MH_ERR_VALIDATION);

  mh_operator_free(op);
  mh_symbol_free(sym);
  mh_catalog_free(half);
  mh_catalog_free(circle);
}

TEST_CASE_FIXTURE(Fixture, "Schatten scan and Carleson test") {
  const int64_t ladder[] = {64, 128, 256, 512};
  int converges = -1;
  char* j = nullptr;
  REQUIRE(mh_schatten_scan(2.0, 2.0, "su2:int", ladder, 4, &converges, &j, nullptr) == MH_OK);
  CHECK(converges == 1);
  CHECK(json::parse(take(j)).at("rungs").size() == 4);
  REQUIRE(mh_schatten_scan(1.0, 2.0, "su2:int", ladder, 4, &converges, nullptr, nullptr) == MH_OK);
  CHECK(converges == 0);
  CHECK(mh_schatten_scan(1.0, 2.0, "su2", ladder, 4, &converges, nullptr, nullptr) == MH_ERR_VALIDATION);

  mh_catalog* circle = nullptr;
  REQUIRE(mh_catalog_enumerate("torus:1", 16.0, &circle) == MH_OK);
  mh_weight* nu = nullptr;
  REQUIRE(mh_weight_power_law(-1.0, &nu) == MH_OK);
  char* cj = nullptr;
  REQUIRE(mh_carleson_test(nu, circle, 3.0, &cj) == MH_OK);
  CHECK(json::parse(take(cj)).at("satisfied") == true);
  mh_weight_free(nu);
  mh_catalog_free(circle);
}

TEST_CASE_FIXTURE(Fixture, "inverse problem through the C interface") {
  mh_symbol* truth = nullptr;
  REQUIRE(mh_symbol_random_matching(cat, cat, 1.0, 9, &truth) == MH_OK);
  mh_weight* mu = nullptr;
  REQUIRE(mh_weight_power_law(1.0, &mu) == MH_OK);
  mh_operator* op = nullptr;
  REQUIRE(mh_operator_assemble(truth, mu, unit, &op) == MH_OK);
  mh_spectral_data* data = nullptr;
  REQUIRE(mh_forward(op, &data) == MH_OK);
  CHECK(mh_spectral_data_count(data) > 0);
  CHECK(mh_spectral_data_count(data) <= 15);
  CHECK(mh_spectral_data_attributed(data) == 1);

  char* text = nullptr;
  REQUIRE(mh_spectral_data_to_json(data, &text) == MH_OK);
  const std::string doc = take(text);
  mh_spectral_data* reread = nullptr;
  REQUIRE(mh_spectral_data_from_json(doc.c_str(), &reread) == MH_OK);

  mh_symbol* back = nullptr;
  REQUIRE(mh_recover_bandlimited(reread, mu, unit, &back) == MH_OK);
  double err = 1.0;
  REQUIRE(mh_symbol_max_difference(back, truth, &err) == MH_OK);
  CHECK(err < 1e-9);
  mh_symbol_free(back);

  REQUIRE(mh_tikhonov_recover(reread, mu, unit, 0.0, MH_PENALTY_WEIGHTED, &back) == MH_OK);
  REQUIRE(mh_symbol_max_difference(back, truth, &err) == MH_OK);
  CHECK(err < 1e-9);
  mh_symbol_free(back);

  const double deltas[] = {0.0, 1e-3};
  char* csv = nullptr;
  double slope = 0.0;
  REQUIRE(mh_stability_scan(truth, mu, unit, deltas, 2, 3, 1, MH_PENALTY_UNWEIGHTED, &csv, &slope) == MH_OK);
  CHECK(take(csv).rfind("delta,alpha,mean_error,std_error\n0,0,", 0) == 0);

  // Two blocks sharing a block row cannot be attributed.
  mh_catalog* small = nullptr;
  REQUIRE(mh_catalog_enumerate("su2", 2.0, &small) == MH_OK);
  mh_symbol* shared = nullptr;
  REQUIRE(mh_symbol_from_json(R"({"codomain":{"group":"su2","cutoff":2},"domain":{"group":"su2","cutoff":2},
      "blocks":[{"pi_index":[2],"rho_index":[1],"re":[[1,1],[1,1],[1,1]],"im":[[0,0],[0,0],[0,0]]},
                {"pi_index":[2],"rho_index":[2],"re":[[1,0,0],[0,1,0],[0,0,1]],"im":[[0,0,0],[0,0,0],[0,0,0]]}]})",
                              &shared) == MH_OK);
  mh_operator* sop = nullptr;
  REQUIRE(mh_operator_assemble(shared, unit, unit, &sop) == MH_OK);
  mh_spectral_data* sdata = nullptr;
  REQUIRE(mh_forward(sop, &sdata) == MH_OK);
  CHECK(mh_spectral_data_attributed(sdata) == 0);
  CHECK(mh_recover_bandlimited(sdata, unit, unit, &back) == MH_ERR_ATTRIBUTION);

  mh_spectral_data_free(sdata);
  mh_operator_free(sop);
  mh_symbol_free(shared);
  mh_catalog_free(small);
  mh_spectral_data_free(reread);
  mh_spectral_data_free(data);
  mh_operator_free(op);
  mh_weight_free(mu);
  mh_symbol_free(truth);
}

TEST_CASE("null handles are rejected, not dereferenced") {
  mh_symbol* s = nullptr;
  CHECK(mh_symbol_diagonal(nullptr, 0.0, &s) == MH_ERR_VALIDATION);
  CHECK(mh_catalog_size(nullptr) == 0);
  CHECK(mh_symbol_block_count(nullptr) == 0);
  mh_catalog_free(nullptr);
  mh_symbol_free(nullptr);
  mh_string_free(nullptr);
  char* j = nullptr;
  CHECK(mh_spectrum(nullptr, nullptr, 0, &j, nullptr) == MH_ERR_VALIDATION);
}
