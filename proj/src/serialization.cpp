#include "muhankel/serialization.hpp"

#include <cstdio>
#include <sstream>

#include "muhankel/error.hpp"

namespace muhankel {

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::Validation, std::string("missing field '") + key + "'");
  return j.at(key);
}

Index index_from(const json& j) {
  require(j.is_array(), ErrorKind::Validation, "index must be an integer array");
  Index out;
  for (const auto& x : j) {
    require(x.is_number_integer(), ErrorKind::Validation, "index entries must be integers");
    out.push_back(x.get<std::int64_t>());
  }
  return out;
}

json matrix_part(const Matrix& m, bool imag) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(imag ? m(i, k).imag() : m(i, k).real());
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from(const json& re, const json& im) {
  require(re.is_array() && im.is_array() && re.size() == im.size(), ErrorKind::Validation,
          "block re/im must be equally sized row arrays");
  const auto rows = static_cast<Eigen::Index>(re.size());
  const auto cols = rows ? static_cast<Eigen::Index>(re.at(0).size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& r = re.at(i);
    const json& c = im.at(i);
    require(r.is_array() && c.is_array() && static_cast<Eigen::Index>(r.size()) == cols &&
                static_cast<Eigen::Index>(c.size()) == cols,
            ErrorKind::Validation, "block rows must all have the same length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = Complex(r.at(k).get<double>(), c.at(k).get<double>());
  }
  return m;
}

json vector_part(const Vector& v, bool imag) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(imag ? v(i).imag() : v(i).real());
  return out;
}

Vector vector_from(const json& re, const json& im) {
  require(re.is_array() && im.is_array() && re.size() == im.size(), ErrorKind::Validation,
          "vector re/im must be equally sized arrays");
  Vector v(static_cast<Eigen::Index>(re.size()));
  for (std::size_t i = 0; i < re.size(); ++i) v(static_cast<Eigen::Index>(i)) = Complex(re[i].get<double>(), im[i].get<double>());
  return v;
}

json pair_json(const DualCatalog& codomain, const DualCatalog& domain, const BlockKey& key) {
  return {{"pi_index", codomain.label(key.first).index()}, {"rho_index", domain.label(key.second).index()}};
}

BlockKey pair_from(const json& j, const DualCatalog& codomain, const DualCatalog& domain) {
  const auto pi = codomain.find(index_from(field(j, "pi_index")));
  const auto rho = domain.find(index_from(field(j, "rho_index")));
  require(pi.has_value() && rho.has_value(), ErrorKind::Validation, "block index lies outside the catalogs");
  return {*pi, *rho};
}

}  // namespace

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

json catalog_to_json(const DualCatalog& catalog) {
  json labels = json::array();
  for (const auto& l : catalog.labels()) {
    labels.push_back({{"index", l.index()}, {"dim", l.dim()}, {"casimir", l.casimir()}});
  }
  return {{"group", to_string(catalog.group())},
          {"cutoff", catalog.cutoff()},
          {"full", catalog.is_full()},
          {"dense_dim", catalog.dense_dim()},
          {"labels", std::move(labels)}};
}

json catalog_ref(const DualCatalog& catalog) {
  json j = {{"group", to_string(catalog.group())}, {"cutoff", catalog.cutoff()}};
  if (!catalog.is_full()) {
    json indices = json::array();
    for (const auto& l : catalog.labels()) indices.push_back(l.index());
    j["indices"] = std::move(indices);
  }
  return j;
}

DualCatalog catalog_from_json(const json& j) {
  const GroupKind group = parse_group(field(j, "group").get<std::string>());
  const double cutoff = field(j, "cutoff").get<double>();
  if (j.contains("indices")) {
    std::vector<Index> indices;
    for (const auto& x : j.at("indices")) indices.push_back(index_from(x));
    return DualCatalog::from_indices(group, cutoff, std::move(indices));
  }
  if (j.contains("labels") && !j.value("full", true)) {
    std::vector<Index> indices;
    for (const auto& x : j.at("labels")) indices.push_back(index_from(field(x, "index")));
    return DualCatalog::from_indices(group, cutoff, std::move(indices));
  }
  return DualCatalog::enumerate(group, cutoff);
}

json weight_to_json(const Weight& w) {
  if (w.is_power_law()) return {{"power_law", w.exponent()}, {"scale", w.scale()}};
  json entries = json::array();
  for (const auto& [idx, value] : w.entries()) entries.push_back({{"index", idx}, {"value", value}});
  return {{"entries", std::move(entries)}, {"scale", w.scale()}};
}

Weight weight_from_json(const json& j) {
  require(j.is_object(), ErrorKind::Validation, "weight must be a JSON object");
  Weight w = Weight::power_law(0.0);
  if (j.contains("power_law")) {
    w = Weight::power_law(j.at("power_law").get<double>());
  } else {
    std::map<Index, double> entries;
    for (const auto& e : field(j, "entries")) entries[index_from(field(e, "index"))] = field(e, "value").get<double>();
    w = Weight::table(std::move(entries));
  }
  if (j.contains("scale")) w = w.scaled(j.at("scale").get<double>());
  return w;
}

json symbol_to_json(const Symbol& sym) {
  json blocks = json::array();
  for (const auto& [key, block] : sym.blocks()) {
    json b = pair_json(sym.codomain(), sym.domain(), key);
    b["re"] = matrix_part(block, false);
    b["im"] = matrix_part(block, true);
    blocks.push_back(std::move(b));
  }
  return {{"domain", catalog_ref(sym.domain())}, {"codomain", catalog_ref(sym.codomain())}, {"blocks", std::move(blocks)}};
}

Symbol symbol_from_json(const json& j) {
  auto codomain = std::make_shared<const DualCatalog>(catalog_from_json(field(j, "codomain")));
  auto domain = std::make_shared<const DualCatalog>(catalog_from_json(field(j, "domain")));
  std::map<BlockKey, Matrix> blocks;
  for (const auto& b : field(j, "blocks")) {
    const BlockKey key = pair_from(b, *codomain, *domain);
    const bool fresh = blocks.emplace(key, matrix_from(field(b, "re"), field(b, "im"))).second;
    require(fresh, ErrorKind::Validation, "duplicate block in symbol file");
  }
  return Symbol(std::move(codomain), std::move(domain), std::move(blocks));
}

json spectral_data_to_json(const SpectralData& data) {
  json triples = json::array();
  for (const auto& t : data.triples) {
    triples.push_back({{"s", t.s},
                       {"u_re", vector_part(t.u, false)},
                       {"u_im", vector_part(t.u, true)},
                       {"v_re", vector_part(t.v, false)},
                       {"v_im", vector_part(t.v, true)}});
  }
  json attribution = json::array();
  for (const auto& a : data.attribution) {
    attribution.push_back(a ? pair_json(*data.codomain, *data.domain, *a) : json(nullptr));
  }
  return {{"codomain", catalog_ref(*data.codomain)},
          {"domain", catalog_ref(*data.domain)},
          {"triples", std::move(triples)},
          {"attribution", std::move(attribution)}};
}

SpectralData spectral_data_from_json(const json& j) {
  SpectralData data;
  data.codomain = std::make_shared<const DualCatalog>(catalog_from_json(field(j, "codomain")));
  data.domain = std::make_shared<const DualCatalog>(catalog_from_json(field(j, "domain")));
  for (const auto& t : field(j, "triples")) {
    data.triples.push_back({field(t, "s").get<double>(), vector_from(field(t, "u_re"), field(t, "u_im")),
                            vector_from(field(t, "v_re"), field(t, "v_im"))});
  }
  if (j.contains("attribution")) {
    for (const auto& a : j.at("attribution")) {
      if (a.is_null()) {
        data.attribution.emplace_back(std::nullopt);
      } else {
        data.attribution.emplace_back(pair_from(a, *data.codomain, *data.domain));
      }
    }
  }
  // Values survive the text round trip to about 1e-15; allow slack on unit norms.
  data.validate(1e-9);
  return data;
}

json dense_header(const BlockOperator& op) {
  return {{"shape", {op.rows(), op.cols()}},
          {"layout", "row-major, interleaved re,im"},
          {"codomain", catalog_ref(op.codomain())},
          {"domain", catalog_ref(op.domain())},
          {"mu", weight_to_json(op.mu())},
          {"nu", weight_to_json(op.nu())}};
}

std::string dense_csv(const Matrix& m) {
  std::string out;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index k = 0; k < m.cols(); ++k) {
      if (k) out += ',';
      out += format_double(m(i, k).real());
      out += ',';
      out += format_double(m(i, k).imag());
    }
    out += '\n';
  }
  return out;
}

json verdict_to_json(const CriterionVerdict& v) {
  return {{"name", v.name},
          {"bound_value", v.bound_value},
          {"measured_value", v.measured_value},
          {"satisfied", v.satisfied},
          {"detail", v.detail}};
}

json spectrum_to_json(const SpectrumReport& report, const BlockOperator& op) {
  json schatten = json::array();
  for (const auto& [p, norm] : report.schatten) schatten.push_back({{"p", p}, {"norm", norm}});
  json blocks = json::array();
  for (const auto& [key, values] : report.per_block_svd) {
    json b = pair_json(op.codomain(), op.domain(), key);
    b["singular_values"] = values;
    blocks.push_back(std::move(b));
  }
  return {{"singular_values", report.singular_values},
          {"operator_norm", report.operator_norm},
          {"schatten", std::move(schatten)},
          {"per_block_svd", std::move(blocks)}};
}

std::string spectrum_csv(const SpectrumReport& report) {
  std::string out = "index,singular_value\n";
  for (std::size_t i = 0; i < report.singular_values.size(); ++i) {
    out += std::to_string(i) + "," + format_double(report.singular_values[i]) + "\n";
  }
  return out;
}

std::string verdicts_csv(const std::vector<CriterionVerdict>& verdicts) {
  std::string out = "name,bound_value,measured_value,satisfied,detail\n";
  for (const auto& v : verdicts) {
    std::string detail = v.detail;
    for (char& c : detail) {
      if (c == '"') c = '\'';
    }
    out += v.name + "," + format_double(v.bound_value) + "," + format_double(v.measured_value) + "," +
           (v.satisfied ? "true" : "false") + ",\"" + detail + "\"\n";
  }
  return out;
}

json index_report_to_json(const IndexReport& report, const BlockOperator& op) {
  json pairs = json::array();
  for (const auto& p : report.contributing_pairs) {
    json e = pair_json(op.codomain(), op.domain(), {p.pi, p.rho});
    e["weight"] = p.weight;
    pairs.push_back(std::move(e));
  }
  json j = {{"contributing_pairs", std::move(pairs)},
            {"numerical_kernel_dim", report.numerical_kernel_dim},
            {"numerical_cokernel_dim", report.numerical_cokernel_dim},
            {"numerical_index", report.numerical_index},
            {"numerical_rank", report.numerical_rank},
            {"rank_tolerance", report.rank_tolerance}};
  j["formula_index"] = report.formula_index ? json(*report.formula_index) : json(nullptr);
  if (!report.formula_error.empty()) j["formula_error"] = report.formula_error;
  return j;
}

json schatten_scan_to_json(const SchattenScan& scan, double alpha, double p) {
  json rungs = json::array();
  for (const auto& r : scan.rungs) {
    rungs.push_back({{"l_max", r.l_max}, {"cutoff", r.cutoff}, {"partial_sum", r.partial_sum}, {"increment", r.increment}});
  }
  return {{"alpha", alpha},
          {"p", p},
          {"verdict", verdict_to_json(scan.verdict)},
          {"rungs", std::move(rungs)},
          {"reference_schatten", scan.reference_schatten},
          {"reference_criterion_series", scan.reference_criterion_series}};
}

std::string schatten_scan_csv(const SchattenScan& scan) {
  std::string out = "l_max,cutoff,partial_sum,increment\n";
  for (const auto& r : scan.rungs) {
    out += std::to_string(r.l_max) + "," + format_double(r.cutoff) + "," + format_double(r.partial_sum) + "," +
           format_double(r.increment) + "\n";
  }
  return out;
}

std::string stability_csv(const StabilityTable& table) {
  std::string out = "delta,alpha,mean_error,std_error\n";
  for (const auto& r : table.rows) {
    out += format_double(r.delta) + "," + format_double(r.alpha) + "," + format_double(r.mean_error) + "," +
           format_double(r.std_error) + "\n";
  }
  return out;
}

}  // namespace muhankel
