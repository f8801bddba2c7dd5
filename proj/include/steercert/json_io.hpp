#pragma once

#include <stdexcept>
#include <string>

#include "json.hpp"
#include "steercert/certify.hpp"

namespace steercert {

using Json = nlohmann::json;

/// Parse or validation failure annotated with the JSON path of the offending
/// node (e.g. "$.povms[1][0].re").
class JsonError : public std::runtime_error {
 public:
  JsonError(std::string path, const std::string& message);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

Json load_json_file(const std::string& filename);
void save_json_file(const std::string& filename, const Json& j);

// Matrices serialize as { "dim": n, "re": [[..]], "im": [[..]] }; a missing
// "im" reads as all zeros. Ingested matrices are capped at dimension 64.
Json to_json(const CMat& m);
Json to_json(const HermitianMatrix& m);
CMat matrix_from_json(const Json& j, const std::string& path = "$");
/// Matrix that must be Hermitian: asymmetry above 1e-9 is rejected with the
/// node's path instead of being silently averaged away.
HermitianMatrix hermitian_from_json(const Json& j, const std::string& path = "$");

// { "dim": d, "m": m, "n": n, "povms": [[matrix, ..], ..] }, povms[x][a].
Json to_json(const MeasurementAssemblage& ma);
MeasurementAssemblage measurement_assemblage_from_json(const Json& j,
                                                       const std::string& path = "$");

// { "dimB": d, "m": m, "n": n, "blocks": [[matrix, ..], ..] }, blocks[x][a].
Json to_json(const Assemblage& assemblage);
Assemblage assemblage_from_json(const Json& j, const std::string& path = "$");

// { "dimC": , "dimA": , "dimB": , "choi": matrix } on (C', A, B).
Json to_json(const ChannelExtension& ext);
ChannelExtension channel_extension_from_json(const Json& j, const std::string& path = "$");

// { "dimIn": , "dimOut": , "kraus": [ { "re": [[..]], "im": [[..]] }, .. ] },
// each Kraus operator dimOut x dimIn.
Json to_json(const KrausChannel& ch);
KrausChannel kraus_channel_from_json(const Json& j, const std::string& path = "$");

// { "dimIn": , "dimOut": , "m": , "n": , "blocks": [[matrix, ..], ..] }.
Json to_json(const ChannelAssemblage& ca);
ChannelAssemblage channel_assemblage_from_json(const Json& j, const std::string& path = "$");

// { "dim": d, "m": m, "n": n, "elements": { "<index>": matrix, .. } } keyed by
// the mixed-radix outcome-vector index as a decimal string.
Json to_json(const JointPovm& joint);
JointPovm joint_povm_from_json(const Json& j, const std::string& path = "$");

// { "dim": d, "m": m, "n": n, "states": [matrix, ..] } over the canonical
// strategy enumeration.
Json to_json(const LhsModel& model);
LhsModel lhs_model_from_json(const Json& j, const std::string& path = "$");

// { "dimIn": , "dimOut": , "m": , "n": , "branches": [matrix, ..],
//   "strategies": [[a_1..a_m], ..] } with branches keyed by strategy index.
Json to_json(const InstrumentDecomposition& dec);
InstrumentDecomposition instrument_decomposition_from_json(const Json& j,
                                                           const std::string& path = "$");

// { "task", "verdict", "decisive", "robustness", "residual",
//   "witness_residual", "iterations", "near_boundary", "diagnostics",
//   "witness": { "type": .., .. } | null, "ms" }.
Json to_json(const CertReport& rep);
CertReport cert_report_from_json(const Json& j, const std::string& path = "$");

// { "jm": report, "rows": [ { "label", "channel": report,
//   "forward_residual" } ], "biconditional", "boundary" }.
Json to_json(const TheoremReport& rep);

// Channel-steering input: either a channel assemblage document or
// { "extension": .., "measurements": .. } to measure here.
ChannelAssemblage channel_steering_input_from_json(const Json& j, const std::string& path = "$");

// Equivalence-harness input: either a bare measurement-assemblage document or
// { "measurements": .., "extensions": [..] } (extensions optional).
struct TheoremInput {
  MeasurementAssemblage measurements;
  std::vector<ChannelExtension> extensions;
};
TheoremInput theorem_input_from_json(const Json& j, const std::string& path = "$");

}  // namespace steercert
