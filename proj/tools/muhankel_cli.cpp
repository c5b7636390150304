// Command-line front end over the muhankel C interface.
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "muhankel/muhankel.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

// Exit codes.
constexpr int kExitOk = 0;
constexpr int kExitInternal = 1;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitInapplicable = 4;
constexpr int kExitAttribution = 5;

struct Failure {
  mh_status status;
  std::string message;
};

int exit_code(mh_status s) {
  switch (s) {
    case MH_OK: return kExitOk;
    case MH_ERR_NUMERICAL: return kExitNumerical;
    case MH_ERR_INAPPLICABLE: return kExitInapplicable;
    case MH_ERR_ATTRIBUTION: return kExitAttribution;
    case MH_ERR_VALIDATION:
    case MH_ERR_LOOKUP:
    case MH_ERR_RESOURCE:
    case MH_ERR_IO: return kExitValidation;
    default: return kExitInternal;
  }
}

void check(mh_status s) {
  if (s != MH_OK) throw Failure{s, mh_last_error()};
}

[[noreturn]] void invalid(const std::string& message) { throw Failure{MH_ERR_VALIDATION, message}; }

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
using Catalog = std::unique_ptr<mh_catalog, Deleter<mh_catalog, mh_catalog_free>>;
using WeightH = std::unique_ptr<mh_weight, Deleter<mh_weight, mh_weight_free>>;
using SymbolH = std::unique_ptr<mh_symbol, Deleter<mh_symbol, mh_symbol_free>>;
using OperatorH = std::unique_ptr<mh_operator, Deleter<mh_operator, mh_operator_free>>;
using DataH = std::unique_ptr<mh_spectral_data, Deleter<mh_spectral_data, mh_spectral_data_free>>;

std::string take(char* s) {
  std::string out = s ? s : "";
  mh_string_free(s);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{MH_ERR_IO, "cannot read " + path};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

json read_json(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::exception& e) {
    invalid(path + ": " + e.what());
  }
}

// Common settings shared by every subcommand.
struct Common {
  std::string out_dir = ".";
  std::string format = "json";
  std::uint64_t seed = 0;
};

class Run {
 public:
  Run(std::string command, const Common& common) : command_(std::move(command)), common_(common) {
    std::error_code ec;
    fs::create_directories(common_.out_dir, ec);
    if (ec) throw Failure{MH_ERR_IO, "cannot create " + common_.out_dir + ": " + ec.message()};
  }

  void input(const std::string& path) { inputs_.push_back(path); }
  json& config() { return config_; }
  json& results() { return results_; }

  std::string write(const std::string& name, const std::string& content) {
    const fs::path path = fs::path(common_.out_dir) / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{MH_ERR_IO, "cannot write " + path.string()};
    out << content;
    if (!content.empty() && content.back() != '\n') out << '\n';
    if (!out) throw Failure{MH_ERR_IO, "cannot write " + path.string()};
    outputs_.push_back(path.string());
    return path.string();
  }

  void finish() {
    json m = {{"command", command_},     {"inputs", inputs_},          {"outputs", outputs_},
              {"seed", common_.seed},    {"config", config_},          {"tool_version", mh_version()}};
    if (!results_.is_null()) m["results"] = results_;
    const fs::path path = fs::path(common_.out_dir) / (command_ + ".manifest.json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Failure{MH_ERR_IO, "cannot write " + path.string()};
    out << m.dump(2) << '\n';
  }

 private:
  std::string command_;
  Common common_;
  std::vector<std::string> inputs_;
  std::vector<std::string> outputs_;
  json config_ = json::object();
  json results_;
};

// --mu/--nu: a number is a power-law exponent, anything else a table file.
WeightH load_weight(const std::string& source, Run& run) {
  mh_weight* w = nullptr;
  char* end = nullptr;
  const double exponent = std::strtod(source.c_str(), &end);
  if (!source.empty() && end != nullptr && *end == '\0') {
    check(mh_weight_power_law(exponent, &w));
  } else {
    run.input(source);
    check(mh_weight_from_json(read_file(source).c_str(), &w));
  }
  return WeightH(w);
}

SymbolH load_symbol(const std::string& path, Run& run) {
  run.input(path);
  mh_symbol* s = nullptr;
  check(mh_symbol_from_json(read_file(path).c_str(), &s));
  return SymbolH(s);
}

Catalog make_catalog(const std::string& group, double cutoff, bool nonnegative) {
  mh_catalog* c = nullptr;
  check(mh_catalog_enumerate(group.c_str(), cutoff, &c));
  Catalog full(c);
  if (!nonnegative) return full;
  check(mh_catalog_nonnegative(full.get(), &c));
  return Catalog(c);
}

std::vector<double> parse_list(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || *end != '\0') invalid(std::string("malformed ") + what + " entry '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) invalid(std::string("empty ") + what);
  return out;
}

// "k:re[:im],..." Fourier coefficients.
struct Coefficients {
  std::vector<int64_t> keys;
  std::vector<double> re, im;
};

Coefficients parse_coefficients(const std::string& text) {
  Coefficients c;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::vector<std::string> parts;
    std::stringstream is(item);
    std::string part;
    while (std::getline(is, part, ':')) parts.push_back(part);
    if (parts.size() < 2 || parts.size() > 3) invalid("Fourier coefficient must be k:re or k:re:im, got '" + item + "'");
    try {
      c.keys.push_back(std::stoll(parts[0]));
      c.re.push_back(std::stod(parts[1]));
      c.im.push_back(parts.size() == 3 ? std::stod(parts[2]) : 0.0);
    } catch (const std::exception&) {
      invalid("malformed Fourier coefficient '" + item + "'");
    }
  }
  return c;
}

json coefficients_json(const Coefficients& c) {
  json out = json::array();
  for (std::size_t i = 0; i < c.keys.size(); ++i) out.push_back({{"k", c.keys[i]}, {"re", c.re[i]}, {"im", c.im[i]}});
  return out;
}

void require_format(const Common& common) {
  if (common.format != "json" && common.format != "csv") invalid("--format must be json or csv");
}

// ---- subcommands ----------------------------------------------------------

struct CatalogArgs {
  std::string group = "su2";
  double cutoff = 0.0;
  bool nonnegative = false;
};

int cmd_catalog(const CatalogArgs& a, const Common& common) {
  require_format(common);
  Run run("catalog", common);
  run.config() = {{"group", a.group}, {"cutoff", a.cutoff}, {"nonnegative", a.nonnegative}};
  const Catalog cat = make_catalog(a.group, a.cutoff, a.nonnegative);
  char* text = nullptr;
  check(mh_catalog_to_json(cat.get(), &text));
  const std::string doc = take(text);
  if (common.format == "json") {
    run.write("catalog.json", doc);
  } else {
    std::string csv = "position,index,dim,casimir\n";
    const json j = json::parse(doc);
    std::size_t pos = 0;
    for (const auto& l : j.at("labels")) {
      std::string idx;
      for (const auto& x : l.at("index")) idx += (idx.empty() ? "" : " ") + std::to_string(x.get<int64_t>());
      csv += std::to_string(pos++) + "," + idx + "," + l.at("dim").dump() + "," + l.at("casimir").dump() + "\n";
    }
    run.write("catalog.csv", csv);
  }
  std::printf("%zu labels, dense dimension %zu\n", mh_catalog_size(cat.get()), mh_catalog_dense_dim(cat.get()));
  run.results() = {{"labels", mh_catalog_size(cat.get())}, {"dense_dim", mh_catalog_dense_dim(cat.get())}};
  run.finish();
  return kExitOk;
}

struct SymbolArgs {
  std::string group = "su2";
  double cutoff = 0.0;
  std::string domain_group;
  double domain_cutoff = -1.0;
  std::string generator = "random";
  double density = 0.3;
  double fill = 1.0;
  double decay = 0.0;
  std::string coefficients;
  std::string out = "symbol.json";
};

int cmd_symbol(const SymbolArgs& a, const Common& common) {
  Run run("symbol", common);
  run.config() = {{"group", a.group},         {"cutoff", a.cutoff}, {"generator", a.generator},
                  {"density", a.density},     {"fill", a.fill},     {"decay", a.decay}};
  const bool hankel = a.generator == "hankel";
  const std::string dgroup = a.domain_group.empty() ? a.group : a.domain_group;
  const double dcutoff = a.domain_cutoff < 0.0 ? a.cutoff : a.domain_cutoff;
  run.config()["domain_group"] = dgroup;
  run.config()["domain_cutoff"] = dcutoff;
  const Catalog codomain = make_catalog(a.group, a.cutoff, hankel);
  const Catalog domain = make_catalog(dgroup, dcutoff, hankel);

  mh_symbol* s = nullptr;
  Coefficients coeffs;
  if (a.generator == "random") {
    check(mh_symbol_random(codomain.get(), domain.get(), a.density, common.seed, &s));
  } else if (a.generator == "matching") {
    check(mh_symbol_random_matching(codomain.get(), domain.get(), a.fill, common.seed, &s));
  } else if (a.generator == "diagonal") {
    if (dgroup != a.group || dcutoff != a.cutoff) invalid("diagonal symbols need identical domain and codomain");
    check(mh_symbol_diagonal(codomain.get(), a.decay, &s));
  } else if (hankel) {
    coeffs = parse_coefficients(a.coefficients);
    run.config()["coefficients"] = coefficients_json(coeffs);
    check(mh_symbol_hankel(coeffs.keys.data(), coeffs.re.data(), coeffs.im.data(), coeffs.keys.size(), codomain.get(),
                           domain.get(), &s));
  } else {
    invalid("unknown generator '" + a.generator + "' (random, matching, diagonal, hankel)");
  }
  const SymbolH sym(s);
  char* text = nullptr;
  check(mh_symbol_to_json(sym.get(), &text));
  json doc = json::parse(take(text));
  if (hankel) doc["fourier"] = coefficients_json(coeffs);
  run.write(a.out, doc.dump(2));
  std::printf("%zu blocks\n", mh_symbol_block_count(sym.get()));
  run.results() = {{"blocks", mh_symbol_block_count(sym.get())}};
  run.finish();
  return kExitOk;
}

struct OperatorArgs {
  std::string symbol;
  std::string mu = "0";
  std::string nu = "0";
};

struct Assembled {
  SymbolH symbol;
  WeightH mu, nu;
  OperatorH op;
};

Assembled assemble_from(const OperatorArgs& a, Run& run) {
  run.config()["mu"] = a.mu;
  run.config()["nu"] = a.nu;
  Assembled out{load_symbol(a.symbol, run), load_weight(a.mu, run), load_weight(a.nu, run), nullptr};
  mh_operator* op = nullptr;
  check(mh_operator_assemble(out.symbol.get(), out.mu.get(), out.nu.get(), &op));
  out.op.reset(op);
  return out;
}

int cmd_assemble(const OperatorArgs& a, const Common& common) {
  Run run("assemble", common);
  const Assembled as = assemble_from(a, run);
  char* csv = nullptr;
  char* header = nullptr;
  check(mh_operator_dense_csv(as.op.get(), &csv, &header));
  run.write("operator.csv", take(csv));
  run.write("operator_header.json", take(header));
  size_t rows = 0, cols = 0;
  mh_operator_shape(as.op.get(), &rows, &cols);
  std::printf("dense operator %zu x %zu\n", rows, cols);
  run.finish();
  return kExitOk;
}

struct SpectrumArgs {
  OperatorArgs op;
  double m = 0.0;
  double n = 0.0;
  std::string orders = "1,2";
};

int cmd_spectrum(const SpectrumArgs& a, const Common& common) {
  require_format(common);
  Run run("spectrum", common);
  run.config() = {{"m", a.m}, {"n", a.n}, {"p", a.orders}};
  const Assembled as = assemble_from(a.op, run);
  const std::vector<double> orders = parse_list(a.orders, "--p list");
  char* sj = nullptr;
  char* sc = nullptr;
  check(mh_spectrum(as.op.get(), orders.data(), orders.size(), &sj, &sc));
  const std::string spectrum_json = take(sj);
  const std::string spectrum_csv = take(sc);
  char* cj = nullptr;
  char* cc = nullptr;
  check(mh_criteria(as.symbol.get(), a.m, a.n, as.mu.get(), as.nu.get(), &cj, &cc));
  const std::string criteria_json = take(cj);
  const std::string criteria_csv = take(cc);
  run.write("spectrum.json", spectrum_json);
  run.write("spectrum.csv", spectrum_csv);
  if (common.format == "json") {
    run.write("criteria.json", criteria_json);
  } else {
    run.write("criteria.csv", criteria_csv);
  }
  const json report = json::parse(spectrum_json);
  const json verdicts = json::parse(criteria_json);
  std::printf("operator norm %.17g\n", report.at("operator_norm").get<double>());
  for (const auto& s : report.at("schatten")) {
    std::printf("S_%g norm %.17g\n", s.at("p").get<double>(), s.at("norm").get<double>());
  }
  for (const auto& v : verdicts) {
    std::printf("%s: %s (%s)\n", v.at("name").get<std::string>().c_str(),
                v.at("satisfied").get<bool>() ? "satisfied" : "not satisfied", v.at("detail").get<std::string>().c_str());
  }
  run.results() = {{"operator_norm", report.at("operator_norm")}, {"criteria", verdicts}};
  run.finish();
  return kExitOk;
}

struct CarlesonArgs {
  std::string group = "su2";
  double cutoff = 0.0;
  std::string nu = "0";
  double t = 1.0;
};

int cmd_carleson(const CarlesonArgs& a, const Common& common) {
  Run run("carleson", common);
  run.config() = {{"group", a.group}, {"cutoff", a.cutoff}, {"nu", a.nu}, {"t", a.t}};
  const Catalog cat = make_catalog(a.group, a.cutoff, false);
  const WeightH nu = load_weight(a.nu, run);
  char* j = nullptr;
  check(mh_carleson_test(nu.get(), cat.get(), a.t, &j));
  const std::string doc = take(j);
  run.write("carleson.json", doc);
  const json v = json::parse(doc);
  std::printf("carleson: %s (%s)\n", v.at("satisfied").get<bool>() ? "satisfied" : "not satisfied",
              v.at("detail").get<std::string>().c_str());
  run.results() = v;
  run.finish();
  return kExitOk;
}

struct ScanArgs {
  double p = 2.0;
  double alpha = 2.0;
  std::string group = "su2:int";
  std::string ladder = "64,128,256,512";
};

int cmd_schatten_scan(const ScanArgs& a, const Common& common) {
  Run run("schatten-scan", common);
  run.config() = {{"p", a.p}, {"alpha", a.alpha}, {"group", a.group}, {"ladder", a.ladder}};
  std::vector<int64_t> ladder;
  for (double x : parse_list(a.ladder, "ladder")) {
    if (x != static_cast<double>(static_cast<int64_t>(x))) invalid("ladder entries must be integers");
    ladder.push_back(static_cast<int64_t>(x));
  }
  int converges = 0;
  char* j = nullptr;
  char* c = nullptr;
  check(mh_schatten_scan(a.alpha, a.p, a.group.c_str(), ladder.data(), ladder.size(), &converges, &j, &c));
  const std::string doc = take(j);
  const std::string csv = take(c);
  run.write("schatten_scan.json", doc);
  run.write("schatten_scan.csv", csv);
  const json v = json::parse(doc);
  std::printf("p=%g alpha=%g: %s\n", a.p, a.alpha, converges ? "converges" : "diverges");
  std::printf("%s\n", v.at("verdict").at("detail").get<std::string>().c_str());
  run.results() = {{"converges", converges == 1}, {"verdict", v.at("verdict")}};
  run.finish();
  return kExitOk;
}

struct IndexArgs {
  OperatorArgs op;
  double tolerance = 1e-8;
  std::size_t samples = 1024;
};

int cmd_index(const IndexArgs& a, const Common& common) {
  Run run("index", common);
  run.config() = {{"tolerance", a.tolerance}, {"samples", a.samples}};
  const Assembled as = assemble_from(a.op, run);
  char* j = nullptr;
  const mh_status st = mh_index_report(as.op.get(), a.tolerance, &j);
  if (st == MH_ERR_INAPPLICABLE) {
    std::fprintf(stderr, "error: %s\n", mh_last_error());
    run.results() = {{"error", mh_last_error()}};
    run.finish();
    return kExitInapplicable;
  }
  check(st);
  json report = json::parse(take(j));

  const json symbol_doc = read_json(a.op.symbol);
  if (symbol_doc.contains("fourier")) {
    Coefficients c;
    for (const auto& e : symbol_doc.at("fourier")) {
      c.keys.push_back(e.at("k").get<int64_t>());
      c.re.push_back(e.at("re").get<double>());
      c.im.push_back(e.at("im").get<double>());
    }
    int64_t wind = 0;
    const mh_status ws = mh_fourier_winding(c.keys.data(), c.re.data(), c.im.data(), c.keys.size(), a.samples, &wind);
    if (ws == MH_OK) {
      report["winding_number"] = wind;
      report["minus_winding_vs_numerical"] = {{"minus_winding", -wind}, {"numerical_index", report.at("numerical_index")}};
    } else {
      report["winding_error"] = mh_last_error();
    }
  }
  run.write("index.json", report.dump(2));

  if (report.at("formula_index").is_null()) {
    std::printf("formula index: inapplicable (%s)\n", report.value("formula_error", std::string()).c_str());
  } else {
    std::printf("formula index: %lld\n", static_cast<long long>(report.at("formula_index").get<int64_t>()));
  }
  if (!report.at("contributing_pairs").empty()) {
    std::printf("%-24s %-24s %s\n", "pi", "rho", "d_pi*d_rho");
    for (const auto& p : report.at("contributing_pairs")) {
      std::printf("%-24s %-24s %lld\n", p.at("pi_index").dump().c_str(), p.at("rho_index").dump().c_str(),
                  static_cast<long long>(p.at("weight").get<int64_t>()));
    }
  }
  if (report.contains("numerical_error")) {
    std::printf("numerical index: failed (%s)\n", report.at("numerical_error").get<std::string>().c_str());
  } else {
    std::printf("numerical index: %lld (kernel %lld, cokernel %lld, rank %lld)\n",
                static_cast<long long>(report.at("numerical_index").get<int64_t>()),
                static_cast<long long>(report.at("numerical_kernel_dim").get<int64_t>()),
                static_cast<long long>(report.at("numerical_cokernel_dim").get<int64_t>()),
                static_cast<long long>(report.at("numerical_rank").get<int64_t>()));
  }
  if (report.contains("winding_number")) {
    const int64_t w = report.at("winding_number").get<int64_t>();
    std::printf("winding number: %lld\n", static_cast<long long>(w));
    std::printf("-winding %lld vs numerical index %lld\n", static_cast<long long>(-w),
                static_cast<long long>(report.at("numerical_index").get<int64_t>()));
  } else if (report.contains("winding_error")) {
    std::printf("winding number: unavailable (%s)\n", report.at("winding_error").get<std::string>().c_str());
  }
  run.results() = report;
  run.finish();
  return kExitOk;
}

int cmd_forward(const OperatorArgs& a, const Common& common) {
  Run run("forward", common);
  const Assembled as = assemble_from(a, run);
  mh_spectral_data* d = nullptr;
  check(mh_forward(as.op.get(), &d));
  const DataH data(d);
  char* text = nullptr;
  check(mh_spectral_data_to_json(data.get(), &text));
  run.write("spectral_data.json", take(text));
  const bool attributed = mh_spectral_data_attributed(data.get()) == 1;
  std::printf("%zu singular triples, %s\n", mh_spectral_data_count(data.get()),
              attributed ? "all attributed" : "some triples unattributed");
  run.results() = {{"triples", mh_spectral_data_count(data.get())}, {"attributed", attributed}};
  run.finish();
  return kExitOk;
}

struct RecoverArgs {
  std::string data;
  std::string mu = "0";
  std::string nu = "0";
  double alpha = -1.0;
  std::string penalty = "unweighted";
  std::string reference;
  std::string out = "recovered_symbol.json";
};

mh_penalty parse_penalty(const std::string& p) {
  if (p == "unweighted") return MH_PENALTY_UNWEIGHTED;
  if (p == "weighted") return MH_PENALTY_WEIGHTED;
  invalid("--penalty must be unweighted or weighted");
}

int cmd_recover(const RecoverArgs& a, const Common& common) {
  Run run("recover", common);
  run.config() = {{"mu", a.mu}, {"nu", a.nu}, {"penalty", a.penalty}};
  if (a.alpha >= 0.0) run.config()["alpha"] = a.alpha;
  const mh_penalty penalty = parse_penalty(a.penalty);
  run.input(a.data);
  mh_spectral_data* d = nullptr;
  check(mh_spectral_data_from_json(read_file(a.data).c_str(), &d));
  const DataH data(d);
  const WeightH mu = load_weight(a.mu, run);
  const WeightH nu = load_weight(a.nu, run);
  mh_symbol* s = nullptr;
  mh_status st = a.alpha >= 0.0 ? mh_tikhonov_recover(data.get(), mu.get(), nu.get(), a.alpha, penalty, &s)
                                : mh_recover_bandlimited(data.get(), mu.get(), nu.get(), &s);
  if (st == MH_ERR_ATTRIBUTION) {
    std::fprintf(stderr, "error: %s\n", mh_last_error());
    std::fprintf(stderr,
                 "hint: recovery needs every singular triple concentrated in one block; use symbols whose blocks "
                 "share no block row or column and have distinct singular values\n");
    return kExitAttribution;
  }
  check(st);
  const SymbolH recovered(s);
  char* text = nullptr;
  check(mh_symbol_to_json(recovered.get(), &text));
  run.write(a.out, take(text));
  std::printf("recovered %zu blocks\n", mh_symbol_block_count(recovered.get()));
  run.results() = {{"blocks", mh_symbol_block_count(recovered.get())}};
  if (!a.reference.empty()) {
    const SymbolH ref = load_symbol(a.reference, run);
    double err = 0.0;
    check(mh_symbol_max_difference(recovered.get(), ref.get(), &err));
    std::printf("max entry error %.6e\n", err);
    run.results()["max_entry_error"] = err;
  }
  run.finish();
  return kExitOk;
}

struct StabilityArgs {
  OperatorArgs op;
  std::string deltas = "1e-4,3e-4,1e-3,3e-3,1e-2";
  int trials = 20;
  std::string penalty = "unweighted";
};

int cmd_stability(const StabilityArgs& a, const Common& common) {
  Run run("stability", common);
  run.config() = {{"delta_grid", a.deltas}, {"trials", a.trials}, {"penalty", a.penalty}};
  const mh_penalty penalty = parse_penalty(a.penalty);
  const Assembled as = assemble_from(a.op, run);
  const std::vector<double> deltas = parse_list(a.deltas, "--delta-grid");
  char* csv = nullptr;
  double slope = 0.0;
  const mh_status st = mh_stability_scan(as.symbol.get(), as.mu.get(), as.nu.get(), deltas.data(), deltas.size(),
                                         a.trials, common.seed, penalty, &csv, &slope);
  if (st == MH_ERR_ATTRIBUTION) {
    std::fprintf(stderr, "error: %s\n", mh_last_error());
    return kExitAttribution;
  }
  check(st);
  const std::string table = take(csv);
  run.write("stability.csv", table);
  std::fputs(table.c_str(), stdout);
  std::printf("slope %.6f\n", slope);
  run.results() = {{"slope", slope}};
  run.finish();
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Hankel-type operators on compact groups"};
  app.set_version_flag("--version", std::string(mh_version()));
  app.require_subcommand(1);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out-dir", common.out_dir, "Directory for outputs and the run manifest")->capture_default_str();
    sub->add_option("--format", common.format, "Format for catalog and criteria reports: json or csv")->capture_default_str();
    sub->add_option("--seed", common.seed, "Seed for all randomness")->capture_default_str();
  };
  auto add_operator = [&](CLI::App* sub, OperatorArgs& o) {
    sub->add_option("--symbol", o.symbol, "Symbol JSON file")->required();
    sub->add_option("--mu", o.mu, "Codomain weight: power-law exponent or table JSON file")->capture_default_str();
    sub->add_option("--nu", o.nu, "Domain weight: power-law exponent or table JSON file")->capture_default_str();
  };

  CatalogArgs catalog_args;
  auto* catalog = app.add_subcommand("catalog", "Enumerate a truncated dual");
  catalog->add_option("--group", catalog_args.group, "su2, su2:int, torus:d or product(...)")->capture_default_str();
  catalog->add_option("--cutoff", catalog_args.cutoff, "Casimir cutoff")->required();
  catalog->add_flag("--nonnegative", catalog_args.nonnegative, "Keep labels with nonnegative indices only");
  add_common(catalog);

  SymbolArgs symbol_args;
  auto* symbol = app.add_subcommand("symbol", "Generate a symbol file");
  symbol->add_option("--group", symbol_args.group, "Codomain group")->capture_default_str();
  symbol->add_option("--cutoff", symbol_args.cutoff, "Codomain cutoff")->required();
  symbol->add_option("--domain-group", symbol_args.domain_group, "Domain group (default: codomain group)");
  symbol->add_option("--domain-cutoff", symbol_args.domain_cutoff, "Domain cutoff (default: codomain cutoff)");
  symbol->add_option("--generator", symbol_args.generator, "random, matching, diagonal or hankel")->capture_default_str();
  symbol->add_option("--density", symbol_args.density, "Block density for random symbols")->capture_default_str();
  symbol->add_option("--fill", symbol_args.fill, "Matched fraction for matching symbols")->capture_default_str();
  symbol->add_option("--decay", symbol_args.decay, "Diagonal decay exponent")->capture_default_str();
  symbol->add_option("--coeffs", symbol_args.coefficients, "Fourier coefficients k:re[:im],... for hankel");
  symbol->add_option("--out", symbol_args.out, "Output file name")->capture_default_str();
  add_common(symbol);

  OperatorArgs assemble_args;
  auto* assemble = app.add_subcommand("assemble", "Write the dense operator as CSV");
  add_operator(assemble, assemble_args);
  add_common(assemble);

  SpectrumArgs spectrum_args;
  auto* spectrum = app.add_subcommand("spectrum", "Singular values, Schatten norms and criteria");
  add_operator(spectrum, spectrum_args.op);
  spectrum->add_option("--m", spectrum_args.m, "Codomain decay order")->capture_default_str();
  spectrum->add_option("--n", spectrum_args.n, "Domain decay order")->capture_default_str();
  spectrum->add_option("--p", spectrum_args.orders, "Comma-separated Schatten orders")->capture_default_str();
  add_common(spectrum);

  CarlesonArgs carleson_args;
  auto* carleson = app.add_subcommand("carleson", "Carleson-type summability test");
  carleson->add_option("--group", carleson_args.group)->capture_default_str();
  carleson->add_option("--cutoff", carleson_args.cutoff)->required();
  carleson->add_option("--nu", carleson_args.nu, "Weight: exponent or table JSON file")->capture_default_str();
  carleson->add_option("--t", carleson_args.t, "Casimir exponent")->capture_default_str();
  add_common(carleson);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("schatten-scan", "Schatten series threshold scan");
  scan->add_option("--p", scan_args.p)->capture_default_str();
  scan->add_option("--alpha", scan_args.alpha, "Diagonal decay exponent")->capture_default_str();
  scan->add_option("--group", scan_args.group)->capture_default_str();
  scan->add_option("--ladder", scan_args.ladder, "Comma-separated l_max rungs")->capture_default_str();
  add_common(scan);

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Index formula, numerical index and winding number");
  add_operator(index, index_args.op);
  index->add_option("--tolerance", index_args.tolerance, "Relative rank tolerance")->capture_default_str();
  index->add_option("--samples", index_args.samples, "Samples for the winding number")->capture_default_str();
  add_common(index);

  OperatorArgs forward_args;
  auto* forward = app.add_subcommand("forward", "Singular triples of the assembled operator");
  add_operator(forward, forward_args);
  add_common(forward);

  RecoverArgs recover_args;
  auto* recover = app.add_subcommand("recover", "Recover a symbol from spectral data");
  recover->add_option("--data", recover_args.data, "Spectral data JSON file")->required();
  recover->add_option("--mu", recover_args.mu)->capture_default_str();
  recover->add_option("--nu", recover_args.nu)->capture_default_str();
  recover->add_option("--alpha", recover_args.alpha, "Tikhonov parameter (omit for exact recovery)");
  recover->add_option("--penalty", recover_args.penalty, "unweighted or weighted")->capture_default_str();
  recover->add_option("--reference", recover_args.reference, "Symbol to compare against");
  recover->add_option("--out", recover_args.out, "Output file name")->capture_default_str();
  add_common(recover);

  StabilityArgs stability_args;
  auto* stability = app.add_subcommand("stability", "Noise-level stability scan");
  add_operator(stability, stability_args.op);
  stability->add_option("--delta-grid", stability_args.deltas, "Comma-separated noise levels")->capture_default_str();
  stability->add_option("--trials", stability_args.trials)->capture_default_str();
  stability->add_option("--penalty", stability_args.penalty, "unweighted or weighted")->capture_default_str();
  add_common(stability);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (*catalog) return cmd_catalog(catalog_args, common);
    if (*symbol) return cmd_symbol(symbol_args, common);
    if (*assemble) return cmd_assemble(assemble_args, common);
    if (*spectrum) return cmd_spectrum(spectrum_args, common);
    if (*carleson) return cmd_carleson(carleson_args, common);
    if (*scan) return cmd_schatten_scan(scan_args, common);
    if (*index) return cmd_index(index_args, common);
    if (*forward) return cmd_forward(forward_args, common);
    if (*recover) return cmd_recover(recover_args, common);
    if (*stability) return cmd_stability(stability_args, common);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return exit_code(f.status);
  } catch (const json::exception& e) {
    std::fprintf(stderr, "error: malformed JSON: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitInternal;
  }
  return kExitInternal;
}
