#include "cfusion/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace cfusion::io {

namespace {

[[noreturn]] void fail(const std::string &what) { throw Error(ErrorCode::ParseError, what); }

const json &field(const json &j, const char *key) {
    if (!j.is_object() || !j.contains(key)) fail(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const json &j, const char *what) {
    if (!j.is_number()) fail(std::string(what) + " must be a number");
    return j.get<double>();
}

std::vector<double> flat_values(const AlgebraElement &a) {
    std::vector<double> v;
    for (const auto &q : a.fibers()) {
        v.push_back(q.w);
        v.push_back(q.x);
        if (a.kind() == ScalarKind::Quaternion) {
            v.push_back(q.y);
            v.push_back(q.z);
        }
    }
    return v;
}

std::size_t stride(ScalarKind kind) { return kind == ScalarKind::Complex ? 2 : 4; }

Quaternion from_flat(ScalarKind kind, const json &values, std::size_t pos) {
    if (kind == ScalarKind::Complex)
        return {number(values[pos], "value"), number(values[pos + 1], "value")};
    return {number(values[pos], "value"), number(values[pos + 1], "value"), number(values[pos + 2], "value"),
            number(values[pos + 3], "value")};
}

CVector complex_vector_from_json(const json &j) {
    if (!j.is_array()) fail("vector must be an array of scalars");
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = scalar_from_json(ScalarKind::Complex, j[i]).as_complex();
    return v;
}

void dump_value(const json &j, std::ostringstream &out, int indent, int depth) {
    const auto newline = [&](int d) {
        if (indent < 0) return;
        out << '\n' << std::string(static_cast<std::size_t>(indent * d), ' ');
    };
    switch (j.type()) {
    case json::value_t::object: {
        if (j.empty()) {
            out << "{}";
            return;
        }
        out << '{';
        bool first = true;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!first) out << ',';
            first = false;
            newline(depth + 1);
            out << json(it.key()).dump() << (indent < 0 ? ":" : ": ");
            dump_value(it.value(), out, indent, depth + 1);
        }
        newline(depth);
        out << '}';
        return;
    }
    case json::value_t::array: {
        if (j.empty()) {
            out << "[]";
            return;
        }
        // numeric arrays stay on one line
        const bool flat = std::all_of(j.begin(), j.end(), [](const json &e) { return e.is_primitive(); });
        out << '[';
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (i) out << (flat && indent >= 0 ? ", " : ",");
            if (!flat) newline(depth + 1);
            dump_value(j[i], out, indent, depth + 1);
        }
        if (!flat) newline(depth);
        out << ']';
        return;
    }
    case json::value_t::number_float: {
        const double v = j.get<double>();
        if (!std::isfinite(v)) {
            out << "null";
            return;
        }
        char buf[40];
        std::snprintf(buf, sizeof buf, "%.17g", v);
        std::string s(buf);
        if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
        out << s;
        return;
    }
    default:
        out << j.dump();
    }
}

} // namespace

json scalar_to_json(ScalarKind kind, const Quaternion &q) {
    if (kind == ScalarKind::Complex) return json::array({q.w, q.x});
    return json::array({q.w, q.x, q.y, q.z});
}

Quaternion scalar_from_json(ScalarKind kind, const json &j) {
    if (j.is_number()) return Quaternion(j.get<double>());
    if (!j.is_array()) fail("scalar must be a number, [re, im] or [w, x, y, z]");
    if (j.size() == 2) return {number(j[0], "scalar"), number(j[1], "scalar")};
    if (j.size() == 4) {
        if (kind == ScalarKind::Complex) fail("quaternion scalar given for a complex module");
        return {number(j[0], "scalar"), number(j[1], "scalar"), number(j[2], "scalar"), number(j[3], "scalar")};
    }
    fail("scalar arrays must have 2 or 4 entries");
}

json to_json(const AlgebraElement &a) {
    return {{"kind", std::string(to_string(a.kind()))}, {"values", flat_values(a)}};
}

AlgebraElement algebra_from_json(const json &j) {
    const auto kind = parse_scalar_kind(field(j, "kind").get<std::string>());
    const auto &values = field(j, "values");
    if (!values.is_array() || values.empty() || values.size() % stride(kind) != 0)
        fail("algebra values length must be a positive multiple of " + std::to_string(stride(kind)));
    std::vector<FiberScalar> f;
    for (std::size_t pos = 0; pos < values.size(); pos += stride(kind)) f.push_back(from_flat(kind, values, pos));
    return {kind, std::move(f)};
}

json to_json(const ModuleShape &shape) {
    return {{"N", shape.fiber_count()},
            {"dims", std::vector<std::size_t>(shape.dims().begin(), shape.dims().end())},
            {"kind", std::string(to_string(shape.kind()))}};
}

ModuleShape shape_from_json(const json &j) {
    const auto kind = parse_scalar_kind(field(j, "kind").get<std::string>());
    const auto dims = field(j, "dims").get<std::vector<std::size_t>>();
    if (j.contains("N") && j.at("N").get<std::size_t>() != dims.size()) fail("N disagrees with dims");
    return {kind, dims};
}

json to_json(const ModuleVector &x) {
    json j = to_json(x.shape());
    std::vector<double> v;
    for (std::size_t k = 0; k < x.fiber_count(); ++k) {
        if (x.kind() == ScalarKind::Complex) {
            for (const auto &c : x.complex_fiber(k)) {
                v.push_back(c.real());
                v.push_back(c.imag());
            }
        } else {
            const auto &q = x.quaternion_fiber(k);
            v.insert(v.end(), {q.w, q.x, q.y, q.z});
        }
    }
    j["values"] = v;
    return j;
}

ModuleVector vector_from_json(const json &j) {
    const auto shape = shape_from_json(j);
    const auto &values = field(j, "values");
    const std::size_t s = stride(shape.kind());
    if (!values.is_array() || values.size() != shape.total_dim() * s) fail("module vector has the wrong number of values");
    std::size_t pos = 0;
    if (shape.kind() == ScalarKind::Quaternion) {
        std::vector<Quaternion> f;
        for (std::size_t k = 0; k < shape.fiber_count(); ++k, pos += s) f.push_back(from_flat(shape.kind(), values, pos));
        return {shape, std::move(f)};
    }
    std::vector<CVector> f;
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        CVector v(static_cast<Eigen::Index>(shape.dim(k)));
        for (auto &e : v) {
            e = from_flat(shape.kind(), values, pos).as_complex();
            pos += s;
        }
        f.push_back(std::move(v));
    }
    return {shape, std::move(f)};
}

ModuleVector vector_from_fibers(const ModuleShape &shape, const json &fibers) {
    if (!fibers.is_array() || fibers.size() != shape.fiber_count()) fail("vector needs one entry per fiber");
    if (shape.kind() == ScalarKind::Quaternion) {
        std::vector<Quaternion> f;
        for (const auto &e : fibers) {
            const json &s = e.is_array() && e.size() == 1 ? e[0] : e;
            f.push_back(scalar_from_json(shape.kind(), s));
        }
        return {shape, std::move(f)};
    }
    std::vector<CVector> f;
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const json &e = fibers[k];
        f.push_back(e.is_array() ? complex_vector_from_json(e) : complex_vector_from_json(json::array({e})));
        if (static_cast<std::size_t>(f.back().size()) != shape.dim(k))
            fail("fiber " + std::to_string(k) + " has the wrong length");
    }
    return {shape, std::move(f)};
}

json matrix_to_json(const CMatrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

CMatrix matrix_from_json(const json &j) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) fail("matrix must be a non-empty list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) fail("matrix rows differ in length");
        for (Eigen::Index c = 0; c < cols; ++c)
            m(r, c) = scalar_from_json(ScalarKind::Complex, row[static_cast<std::size_t>(c)]).as_complex();
    }
    return m;
}

json to_json(const Submodule &u) {
    json j = to_json(u.shape());
    json fibers = json::array();
    for (std::size_t k = 0; k < u.shape().fiber_count(); ++k) {
        if (u.shape().kind() == ScalarKind::Quaternion)
            fibers.push_back({{"selector", u.selected(k) ? 1 : 0}});
        else
            fibers.push_back({{"projection", matrix_to_json(u.projection(k))}});
    }
    j["fibers"] = std::move(fibers);
    return j;
}

Submodule submodule_from_fibers(const ModuleShape &shape, const json &fibers) {
    if (!fibers.is_array() || fibers.size() != shape.fiber_count()) fail("submodule needs one entry per fiber");
    std::vector<CMatrix> p;
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const json &e = fibers[k];
        const auto m = static_cast<Eigen::Index>(shape.dim(k));
        if (e.contains("selector")) {
            const int s = e.at("selector").get<int>();
            if (s != 0 && s != 1) fail("selector must be 0 or 1");
            p.push_back(s ? CMatrix(CMatrix::Identity(m, m)) : CMatrix(CMatrix::Zero(m, m)));
        } else if (e.contains("projection")) {
            p.push_back(matrix_from_json(e.at("projection")));
        } else if (e.contains("span")) {
            if (shape.kind() != ScalarKind::Complex)
                throw Error(ErrorCode::QuaternionUnsupported, "span submodules need complex fibers");
            std::vector<CVector> vs;
            for (const auto &v : e.at("span")) vs.push_back(complex_vector_from_json(v));
            for (const auto &v : vs) {
                if (v.size() != m) fail("span vector in fiber " + std::to_string(k) + " has the wrong length");
            }
            p.push_back(linalg::span_projector(shape.dim(k), vs));
        } else {
            fail("fiber " + std::to_string(k) + " needs selector, projection or span");
        }
    }
    return Submodule::from_projections(shape, std::move(p));
}

Submodule submodule_from_json(const json &j) { return submodule_from_fibers(shape_from_json(j), field(j, "fibers")); }

json to_json(const OrthoMap &psi) {
    json j = to_json(psi.shape());
    json fibers = json::array();
    for (std::size_t k = 0; k < psi.shape().fiber_count(); ++k) {
        if (psi.shape().kind() == ScalarKind::Quaternion)
            fibers.push_back({{"scale", psi.scale(k)}, {"quaternion", scalar_to_json(ScalarKind::Quaternion, psi.unit(k))}});
        else
            fibers.push_back({{"scale", psi.scale(k)}, {"rotation", matrix_to_json(psi.rotation(k))}});
    }
    j["fibers"] = std::move(fibers);
    return j;
}

OrthoMap map_from_fibers(const ModuleShape &shape, const json &fibers) {
    if (!fibers.is_array() || fibers.size() != shape.fiber_count()) fail("map needs one entry per fiber");
    std::vector<double> scales;
    for (const auto &e : fibers) scales.push_back(e.contains("scale") ? number(e.at("scale"), "scale") : 1.0);
    if (shape.kind() == ScalarKind::Quaternion) {
        std::vector<Quaternion> units;
        for (const auto &e : fibers)
            units.push_back(e.contains("quaternion") ? scalar_from_json(ScalarKind::Quaternion, e.at("quaternion")) : Quaternion(1.0));
        return OrthoMap::quaternion(shape, std::move(scales), std::move(units));
    }
    std::vector<CMatrix> rot;
    for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
        const auto m = static_cast<Eigen::Index>(shape.dim(k));
        rot.push_back(fibers[k].contains("rotation") ? matrix_from_json(fibers[k].at("rotation"))
                                                     : CMatrix(CMatrix::Identity(m, m)));
    }
    return OrthoMap::complex(shape, std::move(scales), std::move(rot));
}

OrthoMap map_from_json(const json &j) { return map_from_fibers(shape_from_json(j), field(j, "fibers")); }

json to_json(const FrameBounds &b) {
    json per = json::array();
    for (const auto &r : b.per_fiber) per.push_back(json::array({r.min, r.max}));
    return {{"is_frame", b.is_frame}, {"A", to_json(b.lower)}, {"B", to_json(b.upper)}, {"c", b.c},
            {"d", b.d},               {"tolerance", b.threshold}, {"per_fiber", std::move(per)}};
}

json to_json(const Tightness &t) {
    return {{"tight", t.tight},
            {"parseval", t.parseval},
            {"constant", t.constant ? to_json(*t.constant) : json(nullptr)}};
}

json to_json(const MultiplierCheck &m) {
    return {{"member", m.member},
            {"fiber_sums", m.fiber_sums},
            {"tight_constant", m.tight_constant ? to_json(*m.tight_constant) : json(nullptr)},
            {"series_conditions", m.series_conditions}};
}

namespace {
json criterion(const CriterionValue &c) { return {{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}}; }
} // namespace

json to_json(const AngleCriteria &c) {
    return {{"weighted", criterion(c.weighted)},
            {"bounded", criterion(c.bounded)},
            {"holder", c.holder ? criterion(*c.holder) : json(nullptr)},
            {"p", c.p ? json(*c.p) : json(nullptr)}};
}

json to_json(const PerturbReport &r) {
    return {{"distances", r.distances},
            {"angles", r.angles},
            {"weights", r.weights},
            {"ecart", r.ecart},
            {"threshold", r.threshold},
            {"upper_norm", r.upper_norm},
            {"guaranteed", r.guaranteed},
            {"predicted_lower", r.predicted_lower},
            {"predicted_upper", r.predicted_upper},
            {"perturbed", r.perturbed ? to_json(*r.perturbed) : json(nullptr)},
            {"confirmed", r.confirmed},
            {"criteria", to_json(r.criteria)},
            {"criteria_consistent", r.criteria_consistent}};
}

json frame_report(const WeightedFrame &f) {
    const auto b = frame_bounds(f);
    json j = to_json(b);
    if (b.is_frame) {
        const auto t = tightness(f);
        j["tight"] = t.tight;
        j["parseval"] = t.parseval;
        j["constant"] = t.constant ? to_json(*t.constant) : json(nullptr);
    } else {
        j["tight"] = false;
        j["parseval"] = false;
        j["constant"] = nullptr;
    }
    return j;
}

std::string dump(const json &j, int indent) {
    std::ostringstream out;
    dump_value(j, out, indent, 0);
    return out.str();
}

} // namespace cfusion::io
