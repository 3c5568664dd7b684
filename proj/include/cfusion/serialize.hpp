#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cfusion/frame.hpp"
#include "cfusion/morphism.hpp"
#include "cfusion/perturbation.hpp"

namespace cfusion::io {

using json = nlohmann::json;

inline constexpr const char *kReportVersion = "cstar-fusion/1";

// Scalars: complex as [re, im], quaternion as [w, x, y, z]; a bare number is accepted on input.
json scalar_to_json(ScalarKind kind, const Quaternion &q);
Quaternion scalar_from_json(ScalarKind kind, const json &j);

/// {"kind": ..., "values": flat fiber-ordered array}
json to_json(const AlgebraElement &a);
AlgebraElement algebra_from_json(const json &j);

/// {"N", "dims", "kind", "values": flat fiber-major array}
json to_json(const ModuleVector &x);
ModuleVector vector_from_json(const json &j);
/// Per-fiber lists of scalars, e.g. [[1, [0, 1]], [2]].
ModuleVector vector_from_fibers(const ModuleShape &shape, const json &fibers);

json to_json(const ModuleShape &shape);
ModuleShape shape_from_json(const json &j);

json matrix_to_json(const CMatrix &m);
CMatrix matrix_from_json(const json &j);

/// {"kind", "dims", "fibers": [{"selector": 0|1} | {"projection": rows} | {"span": vectors}]}
json to_json(const Submodule &u);
Submodule submodule_from_json(const json &j);
Submodule submodule_from_fibers(const ModuleShape &shape, const json &fibers);

/// {"kind", "dims", "fibers": [{"scale": c, "rotation": rows} | {"scale": c, "quaternion": [w,x,y,z]}]}
json to_json(const OrthoMap &psi);
OrthoMap map_from_json(const json &j);
OrthoMap map_from_fibers(const ModuleShape &shape, const json &fibers);

json to_json(const FrameBounds &b);
json to_json(const Tightness &t);
json to_json(const MultiplierCheck &m);
json to_json(const AngleCriteria &c);
json to_json(const PerturbReport &r);

/// {is_frame, A, B, c, d, tight, parseval, constant, per_fiber: [[lambda_min, lambda_max], ...]}
json frame_report(const WeightedFrame &f);

/// Serializes with every floating-point number printed to 17 significant digits.
std::string dump(const json &j, int indent = 2);

} // namespace cfusion::io
