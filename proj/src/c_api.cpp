#include "muhankel/muhankel.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "muhankel/error.hpp"
#include "muhankel/serialization.hpp"

using namespace muhankel;

struct mh_catalog {
  std::shared_ptr<const DualCatalog> catalog;
};
struct mh_weight {
  Weight weight;
};
struct mh_symbol {
  Symbol symbol;
};
struct mh_operator {
  BlockOperator op;
};
struct mh_spectral_data {
  SpectralData data;
};

namespace {

thread_local std::string g_last_error;

template <class F>
mh_status guarded(F&& body) {
  try {
    body();
    g_last_error.clear();
    return MH_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<mh_status>(static_cast<int>(e.kind()));
  } catch (const nlohmann::json::exception& e) {
    g_last_error = std::string("malformed JSON: ") + e.what();
    return MH_ERR_VALIDATION;
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return MH_ERR_RESOURCE;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return MH_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown error";
    return MH_ERR_INTERNAL;
  }
}

void need(const void* p, const char* what) {
  require(p != nullptr, ErrorKind::Validation, std::string("null argument: ") + what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const std::string& s) {
  if (out != nullptr) *out = copy_string(s);
}

json parse(const char* text) {
  need(text, "json");
  return json::parse(text);
}

std::map<std::int64_t, Complex> coefficient_map(const int64_t* keys, const double* re, const double* im, size_t count) {
  std::map<std::int64_t, Complex> coeffs;
  if (count > 0) {
    need(keys, "keys");
    need(re, "re");
    need(im, "im");
  }
  for (size_t i = 0; i < count; ++i) coeffs[keys[i]] += Complex(re[i], im[i]);
  return coeffs;
}

PenaltyVariant variant_of(mh_penalty p) {
  return p == MH_PENALTY_WEIGHTED ? PenaltyVariant::Weighted : PenaltyVariant::Unweighted;
}

}  // namespace

extern "C" {

const char* mh_version(void) { return MUHANKEL_VERSION; }
const char* mh_last_error(void) { return g_last_error.c_str(); }
void mh_string_free(char* s) { std::free(s); }

mh_status mh_catalog_enumerate(const char* group, double cutoff, mh_catalog** out) {
  return guarded([&] {
    need(group, "group");
    need(out, "out");
    *out = new mh_catalog{std::make_shared<const DualCatalog>(DualCatalog::enumerate(parse_group(group), cutoff))};
  });
}

mh_status mh_catalog_nonnegative(const mh_catalog* catalog, mh_catalog** out) {
  return guarded([&] {
    need(catalog, "catalog");
    need(out, "out");
    auto kept = catalog->catalog->restricted([](const IrrepLabel& l) {
      for (auto x : l.index()) {
        if (x < 0) return false;
      }
      return true;
    });
    *out = new mh_catalog{std::make_shared<const DualCatalog>(std::move(kept))};
  });
}

mh_status mh_catalog_from_json(const char* text, mh_catalog** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mh_catalog{std::make_shared<const DualCatalog>(catalog_from_json(parse(text)))};
  });
}

mh_status mh_catalog_to_json(const mh_catalog* catalog, char** out) {
  return guarded([&] {
    need(catalog, "catalog");
    emit(out, catalog_to_json(*catalog->catalog).dump(2));
  });
}

size_t mh_catalog_size(const mh_catalog* catalog) { return catalog ? catalog->catalog->size() : 0; }
size_t mh_catalog_dense_dim(const mh_catalog* catalog) { return catalog ? catalog->catalog->dense_dim() : 0; }

mh_status mh_catalog_label(const mh_catalog* catalog, size_t pos, int* dim, double* casimir) {
  return guarded([&] {
    need(catalog, "catalog");
    require(pos < catalog->catalog->size(), ErrorKind::Validation, "label position out of range");
    const IrrepLabel& l = catalog->catalog->label(pos);
    if (dim) *dim = l.dim();
    if (casimir) *casimir = l.casimir();
  });
}

void mh_catalog_free(mh_catalog* catalog) { delete catalog; }

mh_status mh_weight_power_law(double exponent, mh_weight** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mh_weight{Weight::power_law(exponent)};
  });
}

mh_status mh_weight_from_json(const char* text, mh_weight** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mh_weight{weight_from_json(parse(text))};
  });
}

mh_status mh_weight_eval(const mh_weight* weight, const mh_catalog* catalog, size_t pos, double* out) {
  return guarded([&] {
    need(weight, "weight");
    need(catalog, "catalog");
    need(out, "out");
    require(pos < catalog->catalog->size(), ErrorKind::Validation, "label position out of range");
    *out = weight->weight(catalog->catalog->label(pos));
  });
}

void mh_weight_free(mh_weight* weight) { delete weight; }

mh_status mh_symbol_from_json(const char* text, mh_symbol** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mh_symbol{symbol_from_json(parse(text))};
  });
}

mh_status mh_symbol_to_json(const mh_symbol* symbol, char** out) {
  return guarded([&] {
    need(symbol, "symbol");
    emit(out, symbol_to_json(symbol->symbol).dump(2));
  });
}

mh_status mh_symbol_random(const mh_catalog* codomain, const mh_catalog* domain, double density, uint64_t seed,
                           mh_symbol** out) {
  return guarded([&] {
    need(codomain, "codomain");
    need(domain, "domain");
    need(out, "out");
    *out = new mh_symbol{random_symbol(codomain->catalog, domain->catalog, density, seed)};
  });
}

mh_status mh_symbol_random_matching(const mh_catalog* codomain, const mh_catalog* domain, double fill, uint64_t seed,
                                    mh_symbol** out) {
  return guarded([&] {
    need(codomain, "codomain");
    need(domain, "domain");
    need(out, "out");
    *out = new mh_symbol{random_matching_symbol(codomain->catalog, domain->catalog, fill, seed)};
  });
}

mh_status mh_symbol_diagonal(const mh_catalog* catalog, double decay, mh_symbol** out) {
  return guarded([&] {
    need(catalog, "catalog");
    need(out, "out");
    *out = new mh_symbol{diagonal_symbol(catalog->catalog, decay)};
  });
}

mh_status mh_symbol_hankel(const int64_t* keys, const double* re, const double* im, size_t count,
                           const mh_catalog* codomain, const mh_catalog* domain, mh_symbol** out) {
  return guarded([&] {
    need(codomain, "codomain");
    need(domain, "domain");
    need(out, "out");
    *out = new mh_symbol{
        hankel_symbol_from_fourier(coefficient_map(keys, re, im, count), codomain->catalog, domain->catalog)};
  });
}

mh_status mh_symbol_class_norm(const mh_symbol* symbol, double m, double n, const mh_weight* mu, const mh_weight* nu,
                               double* out) {
  return guarded([&] {
    need(symbol, "symbol");
    need(mu, "mu");
    need(nu, "nu");
    need(out, "out");
    *out = class_norm(symbol->symbol, SymbolClassParams{m, n, mu->weight, nu->weight});
  });
}

mh_status mh_symbol_max_difference(const mh_symbol* a, const mh_symbol* b, double* out) {
  return guarded([&] {
    need(a, "a");
    need(b, "b");
    need(out, "out");
    *out = max_entry_difference(a->symbol, b->symbol);
  });
}

size_t mh_symbol_block_count(const mh_symbol* symbol) { return symbol ? symbol->symbol.blocks().size() : 0; }
void mh_symbol_free(mh_symbol* symbol) { delete symbol; }

mh_status mh_operator_assemble(const mh_symbol* symbol, const mh_weight* mu, const mh_weight* nu, mh_operator** out) {
  return guarded([&] {
    need(symbol, "symbol");
    need(mu, "mu");
    need(nu, "nu");
    need(out, "out");
    *out = new mh_operator{assemble(symbol->symbol, mu->weight, nu->weight)};
  });
}

mh_status mh_operator_adjoint(const mh_operator* op, mh_operator** out) {
  return guarded([&] {
    need(op, "op");
    need(out, "out");
    *out = new mh_operator{adjoint(op->op)};
  });
}

void mh_operator_shape(const mh_operator* op, size_t* rows, size_t* cols) {
  if (rows) *rows = op ? op->op.rows() : 0;
  if (cols) *cols = op ? op->op.cols() : 0;
}

mh_status mh_operator_apply(const mh_operator* op, const double* in, size_t in_len, double* out, size_t out_len) {
  return guarded([&] {
    need(op, "op");
    require(in_len == 2 * op->op.cols() && out_len == 2 * op->op.rows(), ErrorKind::Validation,
            "interleaved buffer lengths do not match the operator shape");
    require(in_len == 0 || in != nullptr, ErrorKind::Validation, "null input buffer");
    require(out_len == 0 || out != nullptr, ErrorKind::Validation, "null output buffer");
    Vector x(static_cast<Eigen::Index>(op->op.cols()));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = Complex(in[2 * i], in[2 * i + 1]);
    const Vector y = muhankel::apply(op->op, x);
    for (Eigen::Index i = 0; i < y.size(); ++i) {
      out[2 * i] = y(i).real();
      out[2 * i + 1] = y(i).imag();
    }
  });
}

mh_status mh_operator_to_dense(const mh_operator* op, double* out, size_t out_len) {
  return guarded([&] {
    need(op, "op");
    const Matrix dense = to_dense(op->op);
    require(out_len == 2 * static_cast<size_t>(dense.size()), ErrorKind::Validation, "dense buffer length mismatch");
    require(out_len == 0 || out != nullptr, ErrorKind::Validation, "null output buffer");
    size_t at = 0;
    for (Eigen::Index i = 0; i < dense.rows(); ++i) {
      for (Eigen::Index k = 0; k < dense.cols(); ++k) {
        out[at++] = dense(i, k).real();
        out[at++] = dense(i, k).imag();
      }
    }
  });
}

mh_status mh_operator_dense_csv(const mh_operator* op, char** csv, char** header_json) {
  return guarded([&] {
    need(op, "op");
    const std::string body = dense_csv(to_dense(op->op));
    const std::string header = dense_header(op->op).dump(2);
    emit(csv, body);
    emit(header_json, header);
  });
}

void mh_operator_free(mh_operator* op) { delete op; }

mh_status mh_spectrum(const mh_operator* op, const double* orders, size_t order_count, char** json_out, char** csv) {
  return guarded([&] {
    need(op, "op");
    require(order_count == 0 || orders != nullptr, ErrorKind::Validation, "null order list");
    const SpectrumReport report = spectrum(op->op, std::span<const double>(orders, order_count));
    const std::string j = spectrum_to_json(report, op->op).dump(2);
    const std::string c = spectrum_csv(report);
    emit(json_out, j);
    emit(csv, c);
  });
}

mh_status mh_criteria(const mh_symbol* symbol, double m, double n, const mh_weight* mu, const mh_weight* nu,
                      char** json_out, char** csv) {
  return guarded([&] {
    need(symbol, "symbol");
    need(mu, "mu");
    need(nu, "nu");
    const SymbolClassParams params{m, n, mu->weight, nu->weight};
    const BlockOperator op = assemble(symbol->symbol, mu->weight, nu->weight);
    const std::vector<CriterionVerdict> verdicts{schur_bound(symbol->symbol, params),
                                                 norm_equivalence_check(symbol->symbol, params),
                                                 compactness_report(op, params)};
    json arr = json::array();
    for (const auto& v : verdicts) arr.push_back(verdict_to_json(v));
    const std::string j = arr.dump(2);
    const std::string c = verdicts_csv(verdicts);
    emit(json_out, j);
    emit(csv, c);
  });
}

mh_status mh_carleson_test(const mh_weight* nu, const mh_catalog* catalog, double t, char** json_out) {
  return guarded([&] {
    need(nu, "nu");
    need(catalog, "catalog");
    emit(json_out, verdict_to_json(carleson_test(nu->weight, *catalog->catalog, t)).dump(2));
  });
}

mh_status mh_schatten_scan(double alpha, double p, const char* group, const int64_t* l_max_ladder, size_t rungs,
                           int* converges, char** json_out, char** csv) {
  return guarded([&] {
    need(group, "group");
    need(l_max_ladder, "ladder");
    const SchattenScan scan =
        schatten_series_scan(alpha, p, parse_group(group), std::span<const std::int64_t>(l_max_ladder, rungs));
    if (converges) *converges = scan.verdict.satisfied ? 1 : 0;
    const std::string j = schatten_scan_to_json(scan, alpha, p).dump(2);
    const std::string c = schatten_scan_csv(scan);
    emit(json_out, j);
    emit(csv, c);
  });
}

mh_status mh_index_report(const mh_operator* op, double rank_tolerance, char** json_out) {
  return guarded([&] {
    need(op, "op");
    IndexReport report;
    std::string numerical_error;
    try {
      report = numerical_index(op->op, rank_tolerance);
    } catch (const Error& e) {
      numerical_error = e.what();
    }
    try {
      IndexReport formula = index_formula(op->op);
      report.formula_index = formula.formula_index;
      report.contributing_pairs = std::move(formula.contributing_pairs);
    } catch (const Error& e) {
      report.formula_error = e.what();
    }
    if (!numerical_error.empty() && !report.formula_index) {
      fail(ErrorKind::Inapplicable, "formula: " + report.formula_error + "; numerical: " + numerical_error);
    }
    json j = index_report_to_json(report, op->op);
    if (!numerical_error.empty()) j["numerical_error"] = numerical_error;
    emit(json_out, j.dump(2));
  });
}

mh_status mh_winding_number(const double* re, const double* im, size_t count, double tolerance, int64_t* out) {
  return guarded([&] {
    need(re, "re");
    need(im, "im");
    need(out, "out");
    std::vector<Complex> samples(count);
    for (size_t i = 0; i < count; ++i) samples[i] = Complex(re[i], im[i]);
    *out = winding_number(samples, tolerance);
  });
}

mh_status mh_fourier_winding(const int64_t* keys, const double* re, const double* im, size_t count, size_t samples,
                             int64_t* out) {
  return guarded([&] {
    need(out, "out");
    require(samples >= 3, ErrorKind::Validation, "need at least three samples");
    *out = winding_number(sample_fourier_series(coefficient_map(keys, re, im, count), samples));
  });
}

mh_status mh_forward(const mh_operator* op, mh_spectral_data** out) {
  return guarded([&] {
    need(op, "op");
    need(out, "out");
    *out = new mh_spectral_data{forward(op->op)};
  });
}

mh_status mh_spectral_data_from_json(const char* text, mh_spectral_data** out) {
  return guarded([&] {
    need(out, "out");
    *out = new mh_spectral_data{spectral_data_from_json(parse(text))};
  });
}

mh_status mh_spectral_data_to_json(const mh_spectral_data* data, char** out) {
  return guarded([&] {
    need(data, "data");
    emit(out, spectral_data_to_json(data->data).dump(2));
  });
}

size_t mh_spectral_data_count(const mh_spectral_data* data) { return data ? data->data.triples.size() : 0; }
int mh_spectral_data_attributed(const mh_spectral_data* data) { return data && data->data.fully_attributed() ? 1 : 0; }
void mh_spectral_data_free(mh_spectral_data* data) { delete data; }

mh_status mh_recover_bandlimited(const mh_spectral_data* data, const mh_weight* mu, const mh_weight* nu,
                                 mh_symbol** out) {
  return guarded([&] {
    need(data, "data");
    need(mu, "mu");
    need(nu, "nu");
    need(out, "out");
    *out = new mh_symbol{recover_bandlimited(data->data, mu->weight, nu->weight)};
  });
}

mh_status mh_tikhonov_recover(const mh_spectral_data* data, const mh_weight* mu, const mh_weight* nu, double alpha,
                              mh_penalty penalty, mh_symbol** out) {
  return guarded([&] {
    need(data, "data");
    need(mu, "mu");
    need(nu, "nu");
    need(out, "out");
    *out = new mh_symbol{tikhonov_recover(data->data, mu->weight, nu->weight, alpha, variant_of(penalty))};
  });
}

mh_status mh_stability_scan(const mh_symbol* truth, const mh_weight* mu, const mh_weight* nu, const double* deltas,
                            size_t delta_count, int trials, uint64_t seed, mh_penalty penalty, char** csv,
                            double* slope) {
  return guarded([&] {
    need(truth, "truth");
    need(mu, "mu");
    need(nu, "nu");
    require(delta_count == 0 || deltas != nullptr, ErrorKind::Validation, "null delta grid");
    const StabilityTable table = stability_scan(truth->symbol, mu->weight, nu->weight,
                                                std::span<const double>(deltas, delta_count), trials, seed,
                                                variant_of(penalty));
    if (slope) *slope = table.slope;
    emit(csv, stability_csv(table));
  });
}

}  // extern "C"
