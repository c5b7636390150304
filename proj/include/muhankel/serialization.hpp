#pragma once

#include <string>

#include "json.hpp"

#include "muhankel/fredholm.hpp"
#include "muhankel/inverse_recovery.hpp"
#include "muhankel/spectral_analysis.hpp"

namespace muhankel {

using nlohmann::json;

/// { group, cutoff, full, labels: [{index, dim, casimir}] }
json catalog_to_json(const DualCatalog& catalog);
/// { group, cutoff } for full catalogs, plus `indices` for chosen subsets.
json catalog_ref(const DualCatalog& catalog);
/// Accepts both the full catalog document and a reference.
DualCatalog catalog_from_json(const json& j);

/// { power_law, scale } or { entries: [{index, value}], scale }.
json weight_to_json(const Weight& w);
Weight weight_from_json(const json& j);

/// { domain, codomain, blocks: [{pi_index, rho_index, re, im}] }, row-major.
json symbol_to_json(const Symbol& sym);
Symbol symbol_from_json(const json& j);

/// { codomain, domain, triples: [{s, u_re, u_im, v_re, v_im}], attribution: [{pi_index, rho_index} | null] }
json spectral_data_to_json(const SpectralData& data);
SpectralData spectral_data_from_json(const json& j);

json dense_header(const BlockOperator& op);
/// One line per row of interleaved re,im pairs.
std::string dense_csv(const Matrix& m);

json verdict_to_json(const CriterionVerdict& v);
json spectrum_to_json(const SpectrumReport& report, const BlockOperator& op);
/// index,singular_value
std::string spectrum_csv(const SpectrumReport& report);
/// name,bound_value,measured_value,satisfied,detail
std::string verdicts_csv(const std::vector<CriterionVerdict>& verdicts);

json index_report_to_json(const IndexReport& report, const BlockOperator& op);
json schatten_scan_to_json(const SchattenScan& scan, double alpha, double p);
/// l_max,cutoff,partial_sum,increment
std::string schatten_scan_csv(const SchattenScan& scan);
/// delta,alpha,mean_error,std_error
std::string stability_csv(const StabilityTable& table);

std::string format_double(double x);

}  // namespace muhankel
