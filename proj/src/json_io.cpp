#include "steercert/json_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

namespace steercert {

namespace {

constexpr int kMaxMatrixDim = 64;

std::string child(const std::string& path, const std::string& key) { return path + "." + key; }
std::string item(const std::string& path, size_t index) {
  return path + "[" + std::to_string(index) + "]";
}

const Json& need(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) throw JsonError(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) throw JsonError(child(path, key), "missing required key");
  return *it;
}

int need_positive_int(const Json& j, const char* key, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_number_integer() || v.get<long long>() < 1)
    throw JsonError(child(path, key), "expected a positive integer");
  return v.get<int>();
}

const Json& need_array(const Json& j, const char* key, size_t size, const std::string& path) {
  const Json& v = need(j, key, path);
  if (!v.is_array()) throw JsonError(child(path, key), "expected an array");
  if (size > 0 && v.size() != size)
    throw JsonError(child(path, key), "expected " + std::to_string(size) + " entries, found " +
                                          std::to_string(v.size()));
  return v;
}

void fill_grid(const Json& grid, int rows, int cols, const std::string& path, bool imaginary,
               CMat& out) {
  if (!grid.is_array() || grid.size() != static_cast<size_t>(rows))
    throw JsonError(path, "expected " + std::to_string(rows) + " rows");
  for (int r = 0; r < rows; ++r) {
    const Json& row = grid[r];
    if (!row.is_array() || row.size() != static_cast<size_t>(cols))
      throw JsonError(item(path, r), "expected " + std::to_string(cols) + " columns");
    for (int c = 0; c < cols; ++c) {
      const Json& cell = row[c];
      if (!cell.is_number()) throw JsonError(item(item(path, r), c), "expected a number");
      const double v = cell.get<double>();
      if (!std::isfinite(v)) throw JsonError(item(item(path, r), c), "expected a finite number");
      if (imaginary)
        out(r, c) += Complex(0.0, v);
      else
        out(r, c) += Complex(v, 0.0);
    }
  }
}

CMat rect_matrix_from_json(const Json& j, int rows, int cols, const std::string& path) {
  if (!j.is_object()) throw JsonError(path, "expected a matrix object");
  CMat m(rows, cols);
  fill_grid(need(j, "re", path), rows, cols, child(path, "re"), false, m);
  if (j.contains("im")) fill_grid(j.at("im"), rows, cols, child(path, "im"), true, m);
  return m;
}

// Write -0.0 as 0.0 so that serialization is canonical: reparsing through the
// hermitizing constructor would flip the sign of zero anyway.
double clean_zero(double v) { return v == 0.0 ? 0.0 : v; }

Json grids_of(const CMat& m) {
  Json re = Json::array();
  Json im = Json::array();
  for (int r = 0; r < m.rows(); ++r) {
    Json rr = Json::array();
    Json ri = Json::array();
    for (int c = 0; c < m.cols(); ++c) {
      rr.push_back(clean_zero(m(r, c).real()));
      ri.push_back(clean_zero(m(r, c).imag()));
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  Json j;
  j["re"] = std::move(re);
  j["im"] = std::move(im);
  return j;
}

/// Rethrow a domain-construction failure as a path-annotated error.
template <typename Build>
auto domain(const std::string& path, Build&& build) -> decltype(build()) {
  try {
    return build();
  } catch (const std::invalid_argument& e) {
    throw JsonError(path, e.what());
  }
}

Json optional_number(const std::optional<double>& v) {
  return v.has_value() ? Json(*v) : Json(nullptr);
}

}  // namespace

JsonError::JsonError(std::string path, const std::string& message)
    : std::runtime_error(path + ": " + message), path_(std::move(path)) {}

Json load_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw JsonError("$", "cannot open file: " + filename);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw JsonError("$", std::string("invalid JSON in ") + filename + ": " + e.what());
  }
}

void save_json_file(const std::string& filename, const Json& j) {
  std::ofstream out(filename);
  if (!out) throw JsonError("$", "cannot open file for writing: " + filename);
  out << j.dump(2) << "\n";
}

Json to_json(const CMat& m) {
  Json j = grids_of(m);
  if (m.rows() == m.cols()) j["dim"] = m.rows();
  return j;
}

Json to_json(const HermitianMatrix& m) { return to_json(m.mat()); }

CMat matrix_from_json(const Json& j, const std::string& path) {
  if (!j.is_object()) throw JsonError(path, "expected a matrix object");
  const int dim = need_positive_int(j, "dim", path);
  if (dim > kMaxMatrixDim)
    throw JsonError(child(path, "dim"),
                    "dimension above the supported limit of " + std::to_string(kMaxMatrixDim));
  return rect_matrix_from_json(j, dim, dim, path);
}

HermitianMatrix hermitian_from_json(const Json& j, const std::string& path) {
  const HermitianMatrix h(matrix_from_json(j, path));
  if (h.asymmetry_warning())
    throw JsonError(path, "matrix is not Hermitian (asymmetry " + std::to_string(h.asymmetry()) +
                              " exceeds 1e-9)");
  return h;
}

Json to_json(const MeasurementAssemblage& ma) {
  Json povms = Json::array();
  for (int x = 0; x < ma.settings(); ++x) {
    Json row = Json::array();
    for (int a = 0; a < ma.outcomes(); ++a) row.push_back(to_json(ma.element(x, a)));
    povms.push_back(std::move(row));
  }
  Json j;
  j["dim"] = ma.dim();
  j["m"] = ma.settings();
  j["n"] = ma.outcomes();
  j["povms"] = std::move(povms);
  return j;
}

MeasurementAssemblage measurement_assemblage_from_json(const Json& j, const std::string& path) {
  const int d = need_positive_int(j, "dim", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const Json& povms = need_array(j, "povms", m, path);
  const std::string povms_path = child(path, "povms");

  std::vector<Povm> parsed;
  parsed.reserve(m);
  for (int x = 0; x < m; ++x) {
    const std::string row_path = item(povms_path, x);
    const Json& row = povms[x];
    if (!row.is_array() || row.size() != static_cast<size_t>(n))
      throw JsonError(row_path, "expected " + std::to_string(n) + " outcome matrices");
    std::vector<HermitianMatrix> elements;
    elements.reserve(n);
    for (int a = 0; a < n; ++a) {
      HermitianMatrix e = hermitian_from_json(row[a], item(row_path, a));
      if (e.dim() != d)
        throw JsonError(item(row_path, a), "matrix dimension " + std::to_string(e.dim()) +
                                               " does not match dim " + std::to_string(d));
      elements.push_back(std::move(e));
    }
    parsed.push_back(domain(row_path, [&] { return Povm(std::move(elements)); }));
  }
  return domain(povms_path, [&] { return MeasurementAssemblage(std::move(parsed)); });
}

Json to_json(const Assemblage& assemblage) {
  Json blocks = Json::array();
  for (int x = 0; x < assemblage.settings(); ++x) {
    Json row = Json::array();
    for (int a = 0; a < assemblage.outcomes(); ++a) row.push_back(to_json(assemblage.block(x, a)));
    blocks.push_back(std::move(row));
  }
  Json j;
  j["dimB"] = assemblage.dim_b();
  j["m"] = assemblage.settings();
  j["n"] = assemblage.outcomes();
  j["blocks"] = std::move(blocks);
  return j;
}

Assemblage assemblage_from_json(const Json& j, const std::string& path) {
  const int d = need_positive_int(j, "dimB", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const Json& blocks = need_array(j, "blocks", m, path);
  const std::string blocks_path = child(path, "blocks");

  std::vector<std::vector<HermitianMatrix>> parsed(m);
  for (int x = 0; x < m; ++x) {
    const std::string row_path = item(blocks_path, x);
    const Json& row = blocks[x];
    if (!row.is_array() || row.size() != static_cast<size_t>(n))
      throw JsonError(row_path, "expected " + std::to_string(n) + " outcome blocks");
    parsed[x].reserve(n);
    for (int a = 0; a < n; ++a) {
      HermitianMatrix b = hermitian_from_json(row[a], item(row_path, a));
      if (b.dim() != d)
        throw JsonError(item(row_path, a), "matrix dimension " + std::to_string(b.dim()) +
                                               " does not match dimB " + std::to_string(d));
      parsed[x].push_back(std::move(b));
    }
  }
  return domain(blocks_path, [&] { return Assemblage(std::move(parsed)); });
}

Json to_json(const ChannelExtension& ext) {
  Json j;
  j["dimC"] = ext.dim_c();
  j["dimA"] = ext.dim_a();
  j["dimB"] = ext.dim_b();
  j["choi"] = to_json(ext.choi());
  return j;
}

ChannelExtension channel_extension_from_json(const Json& j, const std::string& path) {
  const int dc = need_positive_int(j, "dimC", path);
  const int da = need_positive_int(j, "dimA", path);
  const int db = need_positive_int(j, "dimB", path);
  const std::string choi_path = child(path, "choi");
  HermitianMatrix choi = hermitian_from_json(need(j, "choi", path), choi_path);
  if (choi.dim() != dc * da * db)
    throw JsonError(choi_path, "matrix dimension " + std::to_string(choi.dim()) +
                                   " does not match dimC*dimA*dimB = " +
                                   std::to_string(dc * da * db));
  return domain(path, [&] { return ChannelExtension(dc, da, db, std::move(choi)); });
}

Json to_json(const KrausChannel& ch) {
  Json kraus = Json::array();
  for (const CMat& k : ch.kraus()) kraus.push_back(grids_of(k));
  Json j;
  j["dimIn"] = ch.dim_in();
  j["dimOut"] = ch.dim_out();
  j["kraus"] = std::move(kraus);
  return j;
}

KrausChannel kraus_channel_from_json(const Json& j, const std::string& path) {
  const int din = need_positive_int(j, "dimIn", path);
  const int dout = need_positive_int(j, "dimOut", path);
  if (din > kMaxMatrixDim || dout > kMaxMatrixDim)
    throw JsonError(path, "dimension above the supported limit of " +
                              std::to_string(kMaxMatrixDim));
  const Json& kraus = need_array(j, "kraus", 0, path);
  if (kraus.empty()) throw JsonError(child(path, "kraus"), "expected at least one Kraus operator");
  std::vector<CMat> parsed;
  parsed.reserve(kraus.size());
  for (size_t k = 0; k < kraus.size(); ++k)
    parsed.push_back(rect_matrix_from_json(kraus[k], dout, din, item(child(path, "kraus"), k)));
  return domain(path, [&] { return KrausChannel(din, dout, std::move(parsed)); });
}

Json to_json(const ChannelAssemblage& ca) {
  Json blocks = Json::array();
  for (int x = 0; x < ca.settings(); ++x) {
    Json row = Json::array();
    for (int a = 0; a < ca.outcomes(); ++a) row.push_back(to_json(ca.block(x, a)));
    blocks.push_back(std::move(row));
  }
  Json j;
  j["dimIn"] = ca.dim_in();
  j["dimOut"] = ca.dim_out();
  j["m"] = ca.settings();
  j["n"] = ca.outcomes();
  j["blocks"] = std::move(blocks);
  return j;
}

ChannelAssemblage channel_assemblage_from_json(const Json& j, const std::string& path) {
  const int din = need_positive_int(j, "dimIn", path);
  const int dout = need_positive_int(j, "dimOut", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const Json& blocks = need_array(j, "blocks", m, path);
  const std::string blocks_path = child(path, "blocks");

  std::vector<std::vector<HermitianMatrix>> parsed(m);
  for (int x = 0; x < m; ++x) {
    const std::string row_path = item(blocks_path, x);
    const Json& row = blocks[x];
    if (!row.is_array() || row.size() != static_cast<size_t>(n))
      throw JsonError(row_path, "expected " + std::to_string(n) + " outcome blocks");
    parsed[x].reserve(n);
    for (int a = 0; a < n; ++a) {
      HermitianMatrix b = hermitian_from_json(row[a], item(row_path, a));
      if (b.dim() != din * dout)
        throw JsonError(item(row_path, a), "matrix dimension " + std::to_string(b.dim()) +
                                               " does not match dimIn*dimOut = " +
                                               std::to_string(din * dout));
      parsed[x].push_back(std::move(b));
    }
  }
  return domain(path, [&] { return ChannelAssemblage(din, dout, std::move(parsed)); });
}

Json to_json(const JointPovm& joint) {
  Json elements = Json::object();
  for (int q = 0; q < joint.element_count(); ++q)
    elements[std::to_string(q)] = to_json(joint.element(q));
  Json j;
  j["dim"] = joint.dim();
  j["m"] = joint.settings();
  j["n"] = joint.outcomes();
  j["elements"] = std::move(elements);
  return j;
}

JointPovm joint_povm_from_json(const Json& j, const std::string& path) {
  const int d = need_positive_int(j, "dim", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const size_t count = deterministic_strategies(m, n).size();
  const Json& elements = need(j, "elements", path);
  const std::string elements_path = child(path, "elements");
  if (!elements.is_object()) throw JsonError(elements_path, "expected an object keyed by index");
  if (elements.size() != count)
    throw JsonError(elements_path, "expected " + std::to_string(count) + " elements, found " +
                                       std::to_string(elements.size()));
  std::vector<HermitianMatrix> parsed;
  parsed.reserve(count);
  for (size_t q = 0; q < count; ++q) {
    const std::string key = std::to_string(q);
    const auto it = elements.find(key);
    if (it == elements.end())
      throw JsonError(child(elements_path, key), "missing element for this outcome-vector index");
    HermitianMatrix e = hermitian_from_json(*it, child(elements_path, key));
    if (e.dim() != d)
      throw JsonError(child(elements_path, key), "matrix dimension " + std::to_string(e.dim()) +
                                                     " does not match dim " + std::to_string(d));
    parsed.push_back(std::move(e));
  }
  return domain(path, [&] { return JointPovm(m, n, std::move(parsed)); });
}

Json to_json(const LhsModel& model) {
  Json states = Json::array();
  for (int k = 0; k < model.count(); ++k) states.push_back(to_json(model.state(k)));
  Json j;
  j["dim"] = model.dim();
  j["m"] = model.settings();
  j["n"] = model.outcomes();
  j["states"] = std::move(states);
  return j;
}

LhsModel lhs_model_from_json(const Json& j, const std::string& path) {
  const int d = need_positive_int(j, "dim", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const size_t count = deterministic_strategies(m, n).size();
  const Json& states = need_array(j, "states", count, path);
  const std::string states_path = child(path, "states");
  std::vector<HermitianMatrix> parsed;
  parsed.reserve(count);
  for (size_t k = 0; k < count; ++k) {
    HermitianMatrix s = hermitian_from_json(states[k], item(states_path, k));
    if (s.dim() != d)
      throw JsonError(item(states_path, k), "matrix dimension " + std::to_string(s.dim()) +
                                                " does not match dim " + std::to_string(d));
    parsed.push_back(std::move(s));
  }
  return domain(path, [&] { return LhsModel(m, n, std::move(parsed)); });
}

Json to_json(const InstrumentDecomposition& dec) {
  Json branches = Json::array();
  for (int k = 0; k < dec.instrument.branch_count(); ++k)
    branches.push_back(to_json(dec.instrument.branch(k)));
  Json strategies = Json::array();
  for (const DeterministicStrategy& s : dec.strategies) strategies.push_back(s.outcome_for);
  if (dec.strategies.empty())
    throw std::invalid_argument("instrument decomposition has no strategies");
  // The canonical enumeration always contains the all-(n-1) outcome vector,
  // so the largest outcome seen recovers n exactly.
  int n_max = 0;
  for (const DeterministicStrategy& s : dec.strategies)
    for (int a : s.outcome_for) n_max = std::max(n_max, a + 1);
  Json j;
  j["dimIn"] = dec.instrument.dim_in();
  j["dimOut"] = dec.instrument.dim_out();
  j["m"] = static_cast<int>(dec.strategies.front().outcome_for.size());
  j["n"] = n_max;
  j["branches"] = std::move(branches);
  j["strategies"] = std::move(strategies);
  return j;
}

InstrumentDecomposition instrument_decomposition_from_json(const Json& j,
                                                           const std::string& path) {
  const int din = need_positive_int(j, "dimIn", path);
  const int dout = need_positive_int(j, "dimOut", path);
  const int m = need_positive_int(j, "m", path);
  const int n = need_positive_int(j, "n", path);
  const auto strategies = deterministic_strategies(m, n);
  const Json& branches = need_array(j, "branches", strategies.size(), path);
  const std::string branches_path = child(path, "branches");
  std::vector<HermitianMatrix> parsed;
  parsed.reserve(strategies.size());
  for (size_t k = 0; k < strategies.size(); ++k) {
    HermitianMatrix b = hermitian_from_json(branches[k], item(branches_path, k));
    if (b.dim() != din * dout)
      throw JsonError(item(branches_path, k), "matrix dimension " + std::to_string(b.dim()) +
                                                  " does not match dimIn*dimOut = " +
                                                  std::to_string(din * dout));
    parsed.push_back(std::move(b));
  }
  if (j.contains("strategies")) {
    const Json& listed = j.at("strategies");
    const std::string strategies_path = child(path, "strategies");
    if (!listed.is_array() || listed.size() != strategies.size())
      throw JsonError(strategies_path,
                      "expected " + std::to_string(strategies.size()) + " outcome vectors");
    for (size_t k = 0; k < strategies.size(); ++k) {
      const std::vector<int> canonical = strategies[k].outcome_for;
      if (!listed[k].is_array() || listed[k].get<std::vector<int>>() != canonical)
        throw JsonError(item(strategies_path, k),
                        "strategies must follow the canonical mixed-radix enumeration");
    }
  }
  Instrument instrument =
      domain(branches_path, [&] { return Instrument(din, dout, std::move(parsed)); });
  return InstrumentDecomposition{strategies, std::move(instrument)};
}

Json to_json(const CertReport& rep) {
  Json j;
  j["task"] = rep.task;
  j["verdict"] = rep.verdict;
  j["decisive"] = rep.decisive;
  j["robustness"] = optional_number(rep.robustness);
  j["residual"] = rep.residual;
  j["witness_residual"] = rep.witness_residual;
  j["iterations"] = rep.iterations;
  j["near_boundary"] = rep.near_boundary;
  j["diagnostics"] = rep.diagnostics;
  if (rep.instrument_witness.has_value()) {
    Json w = to_json(*rep.instrument_witness);
    w["type"] = "instrument-decomposition";
    j["witness"] = std::move(w);
  } else if (rep.joint_witness.has_value()) {
    Json w = to_json(*rep.joint_witness);
    w["type"] = "joint-povm";
    j["witness"] = std::move(w);
  } else if (rep.lhs_witness.has_value()) {
    Json w = to_json(*rep.lhs_witness);
    w["type"] = "lhs-model";
    j["witness"] = std::move(w);
  } else {
    j["witness"] = nullptr;
  }
  j["ms"] = rep.ms;
  return j;
}

CertReport cert_report_from_json(const Json& j, const std::string& path) {
  CertReport rep;
  const Json& task = need(j, "task", path);
  const Json& verdict = need(j, "verdict", path);
  if (!task.is_string()) throw JsonError(child(path, "task"), "expected a string");
  if (!verdict.is_string()) throw JsonError(child(path, "verdict"), "expected a string");
  rep.task = task.get<std::string>();
  rep.verdict = verdict.get<std::string>();
  const Json& decisive = need(j, "decisive", path);
  if (!decisive.is_boolean()) throw JsonError(child(path, "decisive"), "expected a boolean");
  rep.decisive = decisive.get<bool>();
  const Json& rob = need(j, "robustness", path);
  if (rob.is_number())
    rep.robustness = rob.get<double>();
  else if (!rob.is_null())
    throw JsonError(child(path, "robustness"), "expected a number or null");
  const Json& residual = need(j, "residual", path);
  if (!residual.is_number()) throw JsonError(child(path, "residual"), "expected a number");
  rep.residual = residual.get<double>();
  const Json& wr = need(j, "witness_residual", path);
  if (!wr.is_number()) throw JsonError(child(path, "witness_residual"), "expected a number");
  rep.witness_residual = wr.get<double>();
  const Json& iters = need(j, "iterations", path);
  if (!iters.is_number_integer()) throw JsonError(child(path, "iterations"), "expected an integer");
  rep.iterations = iters.get<long>();
  const Json& nb = need(j, "near_boundary", path);
  if (!nb.is_boolean()) throw JsonError(child(path, "near_boundary"), "expected a boolean");
  rep.near_boundary = nb.get<bool>();
  const Json& diag = need(j, "diagnostics", path);
  if (!diag.is_string()) throw JsonError(child(path, "diagnostics"), "expected a string");
  rep.diagnostics = diag.get<std::string>();
  const Json& ms = need(j, "ms", path);
  if (!ms.is_number()) throw JsonError(child(path, "ms"), "expected a number");
  rep.ms = ms.get<double>();

  const Json& witness = need(j, "witness", path);
  const std::string witness_path = child(path, "witness");
  if (!witness.is_null()) {
    const Json& type = need(witness, "type", witness_path);
    if (!type.is_string()) throw JsonError(child(witness_path, "type"), "expected a string");
    const std::string kind = type.get<std::string>();
    if (kind == "joint-povm") {
      rep.joint_witness = joint_povm_from_json(witness, witness_path);
    } else if (kind == "lhs-model") {
      rep.lhs_witness = lhs_model_from_json(witness, witness_path);
    } else if (kind == "instrument-decomposition") {
      InstrumentDecomposition dec = instrument_decomposition_from_json(witness, witness_path);
      // The branch blocks double as the hidden states of the Choi assemblage.
      const int m = static_cast<int>(dec.strategies.front().outcome_for.size());
      int n_max = 0;
      for (const DeterministicStrategy& s : dec.strategies)
        for (int a : s.outcome_for) n_max = std::max(n_max, a + 1);
      rep.lhs_witness = LhsModel(m, n_max, dec.instrument.branches());
      rep.instrument_witness = std::move(dec);
    } else {
      throw JsonError(child(witness_path, "type"), "unknown witness type: " + kind);
    }
  }
  return rep;
}

ChannelAssemblage channel_steering_input_from_json(const Json& j, const std::string& path) {
  if (j.is_object() && (j.contains("extension") || j.contains("measurements"))) {
    const ChannelExtension ext =
        channel_extension_from_json(need(j, "extension", path), child(path, "extension"));
    const MeasurementAssemblage ma =
        measurement_assemblage_from_json(need(j, "measurements", path),
                                         child(path, "measurements"));
    return domain(path, [&] { return channel_assemblage_from_measurement(ext, ma); });
  }
  return channel_assemblage_from_json(j, path);
}

TheoremInput theorem_input_from_json(const Json& j, const std::string& path) {
  if (j.is_object() && j.contains("povms"))
    return TheoremInput{measurement_assemblage_from_json(j, path), {}};
  if (!j.is_object() || !j.contains("measurements"))
    throw JsonError(child(path, "measurements"),
                    "missing required key (or provide a bare measurement-assemblage document)");
  TheoremInput input{
      measurement_assemblage_from_json(j.at("measurements"), child(path, "measurements")), {}};
  if (j.contains("extensions")) {
    const Json& list = j.at("extensions");
    const std::string list_path = child(path, "extensions");
    if (!list.is_array()) throw JsonError(list_path, "expected an array");
    for (size_t k = 0; k < list.size(); ++k)
      input.extensions.push_back(channel_extension_from_json(list[k], item(list_path, k)));
  }
  return input;
}

Json to_json(const TheoremReport& rep) {
  Json rows = Json::array();
  for (const TheoremRow& row : rep.rows) {
    Json r;
    r["label"] = row.label;
    r["channel"] = to_json(row.channel);
    r["forward_residual"] = optional_number(row.forward_residual);
    rows.push_back(std::move(r));
  }
  Json j;
  j["jm"] = to_json(rep.jm);
  j["rows"] = std::move(rows);
  j["biconditional"] = rep.biconditional;
  j["boundary"] = rep.boundary;
  return j;
}

}  // namespace steercert
