#include "cfusion/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "cfusion/oracle.hpp"

namespace cfusion::scenario {

using io::json;

LocatedError::LocatedError(ErrorCode code, std::string path, std::size_t line, std::size_t column,
                           const std::string &message)
    : Error(code, (path.empty() ? std::string("document") : path) +
                      (line ? " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")" : "") +
                      ": " + message),
      path_(std::move(path)), line_(line), column_(column), detail_(message) {}

namespace {

struct Located {
    YAML::Node node;
    std::string path;
};

std::size_t line_of(const YAML::Node &n) { return n.Mark().is_null() ? 0 : static_cast<std::size_t>(n.Mark().line) + 1; }
std::size_t column_of(const YAML::Node &n) {
    return n.Mark().is_null() ? 0 : static_cast<std::size_t>(n.Mark().column) + 1;
}

[[noreturn]] void invalid(const Located &at, const std::string &message) {
    throw LocatedError(ErrorCode::ValidationError, at.path, line_of(at.node), column_of(at.node), message);
}

Located child(const Located &parent, const std::string &key) {
    const YAML::Node &p = parent.node;
    return {p[key], parent.path.empty() ? key : parent.path + "." + key};
}

Located item(const Located &parent, std::size_t i) {
    const YAML::Node &p = parent.node;
    return {p[i], parent.path + "[" + std::to_string(i) + "]"};
}

bool has(const Located &at, const std::string &key) {
    const YAML::Node &n = at.node;
    return n.IsMap() && n[key].IsDefined();
}

Located require(const Located &parent, const std::string &key) {
    if (!parent.node.IsMap()) invalid(parent, "expected a mapping");
    if (!has(parent, key)) invalid(parent, "missing key '" + key + "'");
    return child(parent, key);
}

std::vector<std::pair<std::string, Located>> entries(const Located &at) {
    std::vector<std::pair<std::string, Located>> out;
    if (!at.node.IsDefined() || at.node.IsNull()) return out;
    if (!at.node.IsMap()) invalid(at, "expected a mapping of names");
    for (auto it = at.node.begin(); it != at.node.end(); ++it) {
        const auto name = it->first.Scalar();
        out.push_back({name, {it->second, at.path + "." + name}});
    }
    return out;
}

json scalar_value(const YAML::Node &n) {
    const std::string &s = n.Scalar();
    if (n.Tag() == "!") return s;
    if (s == "true" || s == "True" || s == "TRUE") return true;
    if (s == "false" || s == "False" || s == "FALSE") return false;
    if (s.empty() || s == "~" || s == "null" || s == "Null" || s == "NULL") return nullptr;
    std::int64_t i = 0;
    if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), i); ec == std::errc() && p == s.data() + s.size())
        return i;
    std::uint64_t u = 0;
    if (auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), u); ec == std::errc() && p == s.data() + s.size())
        return u;
    const std::string t = s.front() == '+' ? s.substr(1) : s;
    double d = 0.0;
    if (auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), d); ec == std::errc() && p == t.data() + t.size())
        return d;
    return s;
}

json to_json(const YAML::Node &n) {
    switch (n.Type()) {
    case YAML::NodeType::Scalar:
        return scalar_value(n);
    case YAML::NodeType::Sequence: {
        json a = json::array();
        for (const auto &e : n) a.push_back(to_json(e));
        return a;
    }
    case YAML::NodeType::Map: {
        json o = json::object();
        for (auto it = n.begin(); it != n.end(); ++it) o[it->first.Scalar()] = to_json(it->second);
        return o;
    }
    default:
        return nullptr;
    }
}

std::string string_at(const Located &at) {
    if (!at.node.IsScalar()) invalid(at, "expected a name");
    return at.node.Scalar();
}

double number_at(const Located &at) {
    const json j = at.node.IsScalar() ? scalar_value(at.node) : json();
    if (!j.is_number()) invalid(at, "expected a number");
    return j.get<double>();
}

std::vector<std::string> names_at(const Located &at) {
    if (!at.node.IsSequence()) invalid(at, "expected a list of names");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < at.node.size(); ++i) out.push_back(string_at(item(at, i)));
    return out;
}

// Runs a library call on a node, attaching the node's position to any failure.
template <class F> auto located(const Located &at, F &&fn) -> decltype(fn()) {
    try {
        return fn();
    } catch (const LocatedError &) {
        throw;
    } catch (const Error &e) {
        invalid(at, e.what());
    } catch (const json::exception &e) {
        invalid(at, e.what());
    }
}

struct PerturbPlan {
    enum class Mode { Candidates, Rotate, Random };
    std::string frame;
    Mode mode = Mode::Candidates;
    std::vector<std::string> candidates;
    double theta = 0.0;
    std::optional<double> theta_max;
};

struct Command {
    std::string op;
    Located at;
};

struct Model {
    std::uint64_t seed = 0;
    std::optional<ModuleShape> shape;
    std::map<std::string, Submodule> submodules;
    std::map<std::string, std::vector<AlgebraElement>> weights;
    std::map<std::string, WeightedFrame> frames;
    std::map<std::string, OrthoMap> maps;
    std::map<std::string, ModuleVector> vectors;
    std::map<std::string, PerturbPlan> perturbations;
    std::vector<Command> commands;
};

template <class M> const typename M::mapped_type &lookup(const M &table, const Located &at, const char *what) {
    const auto name = string_at(at);
    const auto it = table.find(name);
    if (it == table.end()) invalid(at, std::string("undefined ") + what + " '" + name + "'");
    return it->second;
}

void load_shape(Model &m, const Located &root) {
    const auto alg = require(root, "algebra");
    const auto kind_at = require(alg, "kind");
    const auto kind = located(kind_at, [&] { return parse_scalar_kind(string_at(kind_at)); });
    const auto n_at = require(alg, "N");
    const double n = number_at(n_at);
    if (n < 1 || n != std::floor(n)) invalid(n_at, "N must be a positive integer");
    std::vector<std::size_t> dims(static_cast<std::size_t>(n), 1);
    if (has(root, "module")) {
        const auto d_at = require(child(root, "module"), "dims");
        if (!d_at.node.IsSequence()) invalid(d_at, "dims must be a list");
        if (d_at.node.size() != dims.size()) invalid(d_at, "dims must have N entries");
        for (std::size_t k = 0; k < dims.size(); ++k) {
            const double v = number_at(item(d_at, k));
            if (v < 1 || v != std::floor(v)) invalid(item(d_at, k), "dimensions must be positive integers");
            dims[k] = static_cast<std::size_t>(v);
        }
    }
    m.shape = located(alg, [&] { return ModuleShape(kind, dims); });
}

void load_submodule(Model &m, const std::map<std::string, Located> &plans, const std::string &name,
                    std::set<std::string> &visiting) {
    if (m.submodules.count(name)) return;
    const Located &at = plans.at(name);
    const auto &shape = *m.shape;
    if (has(at, "block")) {
        const auto b = child(at, "block");
        if (!b.node.IsSequence()) invalid(b, "block must be a list of 1-based fiber indices");
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < b.node.size(); ++i) {
            const double v = number_at(item(b, i));
            if (v < 1 || v > static_cast<double>(shape.fiber_count()) || v != std::floor(v))
                invalid(item(b, i), "fiber index out of range 1.." + std::to_string(shape.fiber_count()));
            idx.push_back(static_cast<std::size_t>(v) - 1);
        }
        m.submodules.emplace(name, located(b, [&] { return Submodule::block(shape, idx); }));
    } else if (has(at, "fibers")) {
        const auto f = child(at, "fibers");
        auto u = located(f, [&] { return io::submodule_from_fibers(shape, to_json(f.node)); });
        if (!validate_projection(u, 1e-10)) invalid(f, "fiber matrices are not orthogonal projections");
        m.submodules.emplace(name, std::move(u));
    } else if (has(at, "complement")) {
        const auto c = child(at, "complement");
        const auto other = string_at(c);
        if (!plans.count(other)) invalid(c, "undefined submodule '" + other + "'");
        if (visiting.count(other)) invalid(c, "circular complement reference");
        visiting.insert(name);
        load_submodule(m, plans, other, visiting);
        visiting.erase(name);
        m.submodules.emplace(name, complement(m.submodules.at(other)));
    } else if (has(at, "full")) {
        m.submodules.emplace(name, Submodule::full(shape));
    } else if (has(at, "zero")) {
        m.submodules.emplace(name, Submodule::zero(shape));
    } else {
        invalid(at, "submodule needs one of block, fibers, complement, full, zero");
    }
}

std::vector<AlgebraElement> load_weight_rows(const Model &m, const Located &at) {
    if (!at.node.IsSequence() || at.node.size() == 0) invalid(at, "weights must be a non-empty list of rows");
    std::vector<AlgebraElement> out;
    for (std::size_t n = 0; n < at.node.size(); ++n) {
        const auto row = item(at, n);
        if (!row.node.IsSequence() || row.node.size() != m.shape->fiber_count())
            invalid(row, "each weight row needs one scalar per fiber");
        out.push_back(located(row, [&] {
            std::vector<FiberScalar> f;
            for (const auto &e : to_json(row.node)) f.push_back(io::scalar_from_json(m.shape->kind(), e));
            return AlgebraElement(m.shape->kind(), std::move(f));
        }));
    }
    return out;
}

void load_command(Model &m, const Located &at) {
    const auto op_at = require(at, "op");
    const auto op = string_at(op_at);
    if (std::find(kCommands.begin(), kCommands.end(), op) == kCommands.end()) invalid(op_at, "unknown command '" + op + "'");
    if (op == "perturb") {
        (void)lookup(m.perturbations, require(at, "perturbation"), "perturbation");
        if (has(at, "p")) {
            const double p = number_at(child(at, "p"));
            if (!(p > 1.0) || !std::isfinite(p)) invalid(child(at, "p"), "p must lie in (1, inf)");
        }
    } else {
        (void)lookup(m.frames, require(at, "frame"), "frame");
    }
    if (op == "reconstruct") (void)lookup(m.vectors, require(at, "vector"), "vector");
    if (op == "transport") (void)lookup(m.maps, require(at, "map"), "map");
    if (op == "cone") {
        if (has(at, "add") == has(at, "scale")) invalid(at, "cone needs exactly one of add, scale");
        if (has(at, "add")) {
            const auto &beta = lookup(m.weights, child(at, "add"), "weights");
            if (beta.size() != lookup(m.frames, child(at, "frame"), "frame").size())
                invalid(child(at, "add"), "weight count differs from the frame's submodule count");
        } else {
            (void)number_at(child(at, "scale"));
        }
    }
    if (op == "verify-oracle" && has(at, "samples")) {
        const double s = number_at(child(at, "samples"));
        if (s < 1 || s != std::floor(s)) invalid(child(at, "samples"), "samples must be a positive integer");
    }
    m.commands.push_back({op, at});
}

Model load(const YAML::Node &doc, const RunOptions &options) {
    Model m;
    const Located root{doc, ""};
    if (!doc.IsMap()) invalid(root, "scenario must be a mapping");
    if (has(root, "seed")) {
        const auto s = child(root, "seed");
        const json j = s.node.IsScalar() ? scalar_value(s.node) : json();
        if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<std::int64_t>() < 0))
            invalid(s, "seed must be a non-negative integer");
        m.seed = j.get<std::uint64_t>();
    }
    if (options.seed) m.seed = *options.seed;
    load_shape(m, root);
    const auto &shape = *m.shape;

    std::map<std::string, Located> sub_plans;
    for (const auto &[name, at] : entries(child(root, "submodules"))) sub_plans.emplace(name, at);
    for (const auto &[name, at] : sub_plans) {
        std::set<std::string> visiting{name};
        load_submodule(m, sub_plans, name, visiting);
    }

    for (const auto &[name, at] : entries(child(root, "weights"))) m.weights.emplace(name, load_weight_rows(m, at));

    for (const auto &[name, at] : entries(child(root, "frames"))) {
        const auto subs_at = require(at, "submodules");
        std::vector<Submodule> subs;
        for (std::size_t i = 0; i < names_at(subs_at).size(); ++i)
            subs.push_back(lookup(m.submodules, item(subs_at, i), "submodule"));
        const auto w_at = require(at, "weights");
        const auto &w = lookup(m.weights, w_at, "weights");
        if (w.size() != subs.size()) invalid(w_at, "weight count differs from submodule count");
        m.frames.emplace(name, located(at, [&] { return WeightedFrame(subs, w); }));
    }

    for (const auto &[name, at] : entries(child(root, "maps"))) {
        if (has(at, "identity")) {
            m.maps.emplace(name, OrthoMap::identity(shape));
            continue;
        }
        const auto f = require(at, "fibers");
        m.maps.emplace(name, located(f, [&] { return io::map_from_fibers(shape, to_json(f.node)); }));
    }

    for (const auto &[name, at] : entries(child(root, "vectors")))
        m.vectors.emplace(name, located(at, [&] { return io::vector_from_fibers(shape, to_json(at.node)); }));

    for (const auto &[name, at] : entries(child(root, "perturbations"))) {
        PerturbPlan p;
        const auto f_at = require(at, "frame");
        const auto &frame = lookup(m.frames, f_at, "frame");
        p.frame = string_at(f_at);
        const int modes = int(has(at, "candidates")) + int(has(at, "rotate")) + int(has(at, "random_rotation"));
        if (modes != 1) invalid(at, "perturbation needs exactly one of candidates, rotate, random_rotation");
        if (has(at, "candidates")) {
            const auto c = child(at, "candidates");
            p.candidates = names_at(c);
            if (p.candidates.size() != frame.size()) invalid(c, "candidate count differs from the frame's submodule count");
            for (std::size_t i = 0; i < p.candidates.size(); ++i) (void)lookup(m.submodules, item(c, i), "submodule");
        } else if (has(at, "rotate")) {
            p.mode = PerturbPlan::Mode::Rotate;
            p.theta = number_at(child(at, "rotate"));
        } else {
            p.mode = PerturbPlan::Mode::Random;
            const auto r = child(at, "random_rotation");
            if (has(r, "theta_max")) {
                p.theta_max = number_at(child(r, "theta_max"));
                if (*p.theta_max < 0) invalid(child(r, "theta_max"), "theta_max must be >= 0");
            }
        }
        m.perturbations.emplace(name, std::move(p));
    }

    const auto cmds = child(root, "commands");
    if (!cmds.node.IsDefined() || !cmds.node.IsSequence()) invalid(cmds.node.IsDefined() ? cmds : root, "commands must be a list");
    for (std::size_t i = 0; i < cmds.node.size(); ++i) load_command(m, item(cmds, i));
    if (options.only && std::find(kCommands.begin(), kCommands.end(), *options.only) == kCommands.end())
        throw LocatedError(ErrorCode::ValidationError, "--only", 0, 0, "unknown command '" + *options.only + "'");
    return m;
}

std::mt19937_64 command_stream(std::uint64_t seed, std::size_t index) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(index)};
    return std::mt19937_64(seq);
}

std::string name_of(const Located &cmd, const char *key) { return child(cmd, key).node.Scalar(); }

json weights_json(std::span<const AlgebraElement> w) {
    json a = json::array();
    for (const auto &e : w) a.push_back(io::to_json(e));
    return a;
}

json run_multiplier(const WeightedFrame &f) {
    const auto &shape = f.shape();
    std::vector<std::vector<std::size_t>> sets(f.size());
    std::vector<std::vector<double>> a(f.size(), std::vector<double>(shape.fiber_count()));
    for (std::size_t n = 0; n < f.size(); ++n) {
        const auto &u = f.submodules()[n];
        for (std::size_t k = 0; k < shape.fiber_count(); ++k) {
            const auto &p = u.projection(k);
            const auto m = p.rows();
            if (linalg::max_abs(p - CMatrix::Identity(m, m)) <= 1e-12)
                sets[n].push_back(k);
            else if (linalg::max_abs(p) > 1e-12)
                throw Error(ErrorCode::InvalidArgument, "multiplier check needs block submodules (each fiber kept or dropped)");
            const auto &w = f.weights()[n][k];
            a[n][k] = w.w;
        }
    }
    return io::to_json(block_multiplier_check(shape.kind(), shape.fiber_count(), sets, a));
}

json run_transport(const WeightedFrame &f, const OrthoMap &psi) {
    const auto g = transport_frame(psi, f);
    const auto pb = pullback_bounds(psi, g);
    const auto src = frame_bounds(f);
    const auto root_nu = sqrt_positive(nu_of(psi));
    const auto exp_lower = root_nu * src.lower;
    const auto exp_upper = root_nu * src.upper;
    double dev = 0.0;
    for (std::size_t k = 0; k < f.shape().fiber_count(); ++k) {
        dev = std::max(dev, std::abs(pb.lower[k].w - exp_lower[k].w));
        dev = std::max(dev, std::abs(pb.upper[k].w - exp_upper[k].w));
    }
    bool projections_valid = true;
    for (const auto &u : g.submodules()) projections_valid = projections_valid && validate_projection(u, 1e-10);
    return {{"nu", io::to_json(nu_of(psi))},
            {"intrinsic", io::frame_report(g)},
            {"pullback", {{"A", io::to_json(pb.lower)}, {"B", io::to_json(pb.upper)}}},
            {"expected", {{"A", io::to_json(exp_lower)}, {"B", io::to_json(exp_upper)}}},
            {"max_deviation", dev},
            {"projections_valid", projections_valid}};
}

json run_perturb(const Model &m, const Located &cmd, std::mt19937_64 &rng) {
    const auto &plan = m.perturbations.at(name_of(cmd, "perturbation"));
    const auto &f = m.frames.at(plan.frame);
    std::optional<double> p;
    if (has(cmd, "p")) p = number_at(child(cmd, "p"));
    std::vector<Submodule> ks;
    json mode;
    switch (plan.mode) {
    case PerturbPlan::Mode::Candidates:
        for (const auto &c : plan.candidates) ks.push_back(m.submodules.at(c));
        mode = {{"kind", "candidates"}, {"candidates", plan.candidates}};
        break;
    case PerturbPlan::Mode::Rotate:
        ks = rotate_all(f, plan.theta);
        mode = {{"kind", "rotate"}, {"theta", plan.theta}};
        break;
    case PerturbPlan::Mode::Random: {
        const double theta_max = plan.theta_max ? *plan.theta_max : rotation_budget(f);
        ks = random_rotations(f, theta_max, rng);
        mode = {{"kind", "random_rotation"}, {"theta_max", theta_max}};
        break;
    }
    }
    json out = io::to_json(perturbation_check(f, ks, p));
    out["frame"] = plan.frame;
    out["mode"] = std::move(mode);
    return out;
}

json run_oracle(const WeightedFrame &f, std::size_t samples, std::mt19937_64 &rng) {
    const auto bounds = frame_bounds(f);
    const auto dense = oracle::flatten_frame_operator(f);
    const auto oracle_spectra = oracle::block_eigen_bounds(dense);
    double dev = 0.0;
    json per = json::array();
    for (std::size_t k = 0; k < oracle_spectra.size(); ++k) {
        dev = std::max({dev, std::abs(oracle_spectra[k].min - f.fiber_spectra()[k].min),
                        std::abs(oracle_spectra[k].max - f.fiber_spectra()[k].max)});
        per.push_back(json::array({oracle_spectra[k].min, oracle_spectra[k].max}));
    }
    const auto brute = oracle::brute_force_frame_check(f, bounds, samples, rng);
    const bool agree = dev <= 1e-10;
    return {{"ok", brute.ok && agree},
            {"spectra_agree", agree},
            {"max_deviation", dev},
            {"oracle_per_fiber", std::move(per)},
            {"samples", brute.samples},
            {"observed_min", brute.observed_min},
            {"observed_max", brute.observed_max},
            {"c", bounds.c},
            {"d", bounds.d},
            {"scalar_violations", brute.scalar_violations},
            {"order_violations", brute.order_violations}};
}

json execute(const Model &m, const Command &c, std::mt19937_64 &rng) {
    const auto &cmd = c.at;
    if (c.op == "perturb") return run_perturb(m, cmd, rng);
    const auto &f = m.frames.at(name_of(cmd, "frame"));
    if (c.op == "check-frame") {
        const auto b = frame_bounds(f);
        return {{"is_frame", b.is_frame}, {"c", b.c}, {"d", b.d}, {"threshold", b.threshold}};
    }
    if (c.op == "bounds") return io::frame_report(f);
    if (c.op == "reconstruct") {
        const auto r = reconstruct(f, m.vectors.at(name_of(cmd, "vector")));
        return {{"rel_error", r.rel_error}, {"solution", io::to_json(r.solution)}, {"xhat", io::to_json(r.xhat)}};
    }
    if (c.op == "tightness") return io::to_json(tightness(f));
    if (c.op == "multiplier") return run_multiplier(f);
    if (c.op == "cone") {
        if (has(cmd, "add")) {
            const auto &beta = m.weights.at(name_of(cmd, "add"));
            const auto g = cone_add(f, beta);
            return {{"operation", "add"}, {"weights", weights_json(g.weights())}, {"report", io::frame_report(g)}};
        }
        const double lambda = number_at(child(cmd, "scale"));
        const auto g = cone_scale(f, lambda);
        return {{"operation", "scale"},
                {"lambda", lambda},
                {"weights", weights_json(g.weights())},
                {"report", io::frame_report(g)}};
    }
    if (c.op == "transport") return run_transport(f, m.maps.at(name_of(cmd, "map")));
    // verify-oracle
    const std::size_t samples = has(cmd, "samples") ? static_cast<std::size_t>(number_at(child(cmd, "samples"))) : 1000;
    return run_oracle(f, samples, rng);
}

json error_json(const Error &e) {
    json j = {{"code", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (const auto *le = dynamic_cast<const LocatedError *>(&e)) {
        j["path"] = le->path();
        j["message"] = le->detail();
        if (le->line()) {
            j["line"] = le->line();
            j["column"] = le->column();
        }
    }
    return j;
}

RunResult failure(const Error &e) {
    return {{{"version", io::kReportVersion}, {"error", error_json(e)}}, 2};
}

} // namespace

RunResult run_text(const std::string &text, const RunOptions &options) {
    YAML::Node doc;
    try {
        doc = YAML::Load(text);
    } catch (const YAML::Exception &e) {
        return failure(LocatedError(ErrorCode::ParseError, "", e.mark.is_null() ? 0 : std::size_t(e.mark.line) + 1,
                                    e.mark.is_null() ? 0 : std::size_t(e.mark.column) + 1, e.msg));
    }
    Model model;
    try {
        model = load(doc, options);
    } catch (const Error &e) {
        return failure(e);
    }

    json config = to_json(doc);
    config["seed"] = model.seed;
    json results = json::array();
    int exit_code = 0;
    for (std::size_t i = 0; i < model.commands.size(); ++i) {
        const auto &c = model.commands[i];
        if (options.only && c.op != *options.only) continue;
        auto rng = command_stream(model.seed, i);
        json entry = {{"index", i}, {"op", c.op}};
        try {
            entry["result"] = execute(model, c, rng);
            entry["status"] = "ok";
        } catch (const Error &e) {
            entry["status"] = "error";
            entry["error"] = error_json(e);
            exit_code = 1;
        }
        results.push_back(std::move(entry));
    }
    return {{{"version", io::kReportVersion}, {"seed", model.seed}, {"scenario", std::move(config)}, {"results", std::move(results)}},
            exit_code};
}

RunResult run_file(const std::string &path, const RunOptions &options) {
    std::ifstream in(path);
    if (!in) return failure(LocatedError(ErrorCode::ParseError, path, 0, 0, "cannot read file"));
    std::ostringstream buf;
    buf << in.rdbuf();
    return run_text(buf.str(), options);
}

} // namespace cfusion::scenario
