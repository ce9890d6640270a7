#pragma once

#include <string>

#include <json.hpp>

#include "momentforge/herglotz.hpp"
#include "momentforge/matpoly.hpp"
#include "momentforge/measures.hpp"
#include "momentforge/sequence.hpp"
#include "momentforge/verify.hpp"

namespace momentforge {

using json = nlohmann::json;

json to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j);

json to_json(const MatrixSeq& s);
MatrixSeq seq_from_json(const json& j);

json to_json(const MolecularMeasure& m);
MolecularMeasure measure_from_json(const json& j);

json to_json(const ResolventPoly& v);
ResolventPoly resolvent_from_json(const json& j);

json to_json(const HerglotzExpr& f);
HerglotzExpr expr_from_json(const json& j);

json to_json(const AsymptoticReport& r);
json to_json(const MomentEstimate& m);
json to_json(const DiagnosticsReport& r);
json to_json(const CompareReport& r);

json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const json& j);

}  // namespace momentforge
