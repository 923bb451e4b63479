#include "levysim/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "levytype/errors.hpp"

namespace levysim {

using namespace levytype;

namespace {

class Reader {
public:
    Reader(const json& j, std::string where) : j_(j), where_(std::move(where)) {
        if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
    }

    bool has(const std::string& key) const { return j_.contains(key); }

    const json& raw(const std::string& key) {
        seen_.insert(key);
        if (!j_.contains(key)) throw ConfigError(path(key) + ": missing");
        return j_.at(key);
    }

    template <class T>
    T get(const std::string& key, T fallback) {
        if (!has(key)) {
            seen_.insert(key);
            return fallback;
        }
        return require<T>(key);
    }

    template <class T>
    T require(const std::string& key) {
        const json& v = raw(key);
        try {
            if constexpr (std::is_same_v<T, double>) {
                if (!v.is_number()) throw ConfigError(path(key) + ": expected a number");
            } else if constexpr (std::is_same_v<T, bool>) {
                if (!v.is_boolean()) throw ConfigError(path(key) + ": expected true or false");
            } else if constexpr (std::is_integral_v<T>) {
                if (!v.is_number_integer()) throw ConfigError(path(key) + ": expected an integer");
                if (std::is_unsigned_v<T> && v.is_number_integer() && v.get<long long>() < 0 && !v.is_number_unsigned())
                    throw ConfigError(path(key) + ": expected a non-negative integer");
            } else if constexpr (std::is_same_v<T, std::string>) {
                if (!v.is_string()) throw ConfigError(path(key) + ": expected a string");
            }
            return v.get<T>();
        } catch (const json::exception& e) {
            throw ConfigError(path(key) + ": " + e.what());
        }
    }

    std::string path(const std::string& key) const { return where_ + "." + key; }

    // Every key must have been consumed.
    void finish(const std::set<std::string>& ignored = {}) const {
        for (auto it = j_.begin(); it != j_.end(); ++it)
            if (!seen_.count(it.key()) && !ignored.count(it.key()))
                throw ConfigError(where_ + ": unknown key \"" + it.key() + "\"");
    }

private:
    const json& j_;
    std::string where_;
    std::set<std::string> seen_;
};

std::vector<double> number_list(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    std::vector<double> out;
    for (const auto& v : j) {
        if (!v.is_number()) throw ConfigError(where + ": expected an array of numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

JumpDistribution distribution_from_json(const json& j, const std::string& where) {
    Reader r(j, where);
    const auto type = r.require<std::string>("type");
    JumpDistribution d;
    if (type == "point") {
        d = PointJump{r.require<double>("value")};
    } else if (type == "normal") {
        d = NormalJump{r.require<double>("mean"), r.require<double>("sd")};
    } else if (type == "uniform") {
        d = UniformJump{r.require<double>("lo"), r.require<double>("hi")};
    } else {
        throw ConfigError(r.path("type") + ": unknown jump distribution \"" + type + "\"");
    }
    r.finish();
    return d;
}

json distribution_to_json(const JumpDistribution& d) {
    if (const auto* p = std::get_if<PointJump>(&d)) return {{"type", "point"}, {"value", p->value}};
    if (const auto* n = std::get_if<NormalJump>(&d)) return {{"type", "normal"}, {"mean", n->mean}, {"sd", n->sd}};
    const auto& u = std::get<UniformJump>(d);
    return {{"type", "uniform"}, {"lo", u.lo}, {"hi", u.hi}};
}

StabilityIndex alpha_from_json(const json& j, const std::string& where) {
    Reader r(j, where);
    std::vector<double> breaks;
    if (r.has("breakpoints")) breaks = number_list(r.raw("breakpoints"), r.path("breakpoints"));
    if (r.has("values") == r.has("pieces")) throw ConfigError(where + ": give exactly one of \"values\" or \"pieces\"");
    try {
        if (r.has("values")) {
            const auto values = number_list(r.raw("values"), r.path("values"));
            r.finish();
            return StabilityIndex::piecewise_constant(breaks, values);
        }
        const json& pj = r.raw("pieces");
        if (!pj.is_array()) throw ConfigError(r.path("pieces") + ": expected an array");
        std::vector<IndexPiece> pieces;
        for (std::size_t i = 0; i < pj.size(); ++i) {
            Reader pr(pj[i], r.path("pieces") + "[" + std::to_string(i) + "]");
            pieces.push_back({pr.require<double>("intercept"), pr.get<double>("slope", 0.0)});
            pr.finish();
        }
        r.finish();
        return StabilityIndex(breaks, pieces);
    } catch (const levytype::Error& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

json alpha_to_json(const StabilityIndex& a) {
    json pieces = json::array();
    for (std::size_t i = 0; i < a.piece_count(); ++i)
        pieces.push_back({{"intercept", a.piece(i).intercept}, {"slope", a.piece(i).slope}});
    return {{"breakpoints", std::vector<double>(a.breakpoints().begin(), a.breakpoints().end())}, {"pieces", pieces}};
}

InitialLaw law_from_json(const json& j, const std::string& where) {
    Reader r(j, where);
    const auto type = r.require<std::string>("type");
    InitialLaw law;
    if (type == "point") {
        law = PointMass{r.require<double>("x")};
    } else if (type == "uniform") {
        law = UniformLaw{r.require<double>("lo"), r.require<double>("hi")};
    } else if (type == "normal") {
        law = NormalLaw{r.require<double>("mean"), r.require<double>("sd")};
    } else {
        throw ConfigError(r.path("type") + ": unknown initial law \"" + type + "\"");
    }
    r.finish();
    return law;
}

json law_to_json(const InitialLaw& law) {
    if (const auto* p = std::get_if<PointMass>(&law)) return {{"type", "point"}, {"x", p->x}};
    if (const auto* u = std::get_if<UniformLaw>(&law)) return {{"type", "uniform"}, {"lo", u->lo}, {"hi", u->hi}};
    const auto& n = std::get<NormalLaw>(law);
    return {{"type", "normal"}, {"mean", n.mean}, {"sd", n.sd}};
}

void validate_triplet(const LevyTriplet& t, const std::string& where) {
    try {
        t.validate();
    } catch (const levytype::Error& e) {
        throw ConfigError(where + ": " + e.what());
    }
}

}  // namespace

const char* to_string(Scenario s) {
    switch (s) {
        case Scenario::Glued:
            return "glued";
        case Scenario::StableLike:
            return "stable_like";
        case Scenario::DiagnosticsOnly:
            return "diagnostics_only";
    }
    return "?";
}

LevyTriplet triplet_from_json(const json& j, const std::string& where) {
    Reader r(j, where);
    LevyTriplet t;
    t.drift = r.get<double>("drift", 0.0);
    t.diffusion = r.get<double>("diffusion", 0.0);
    if (r.has("jumps")) {
        Reader jr(r.raw("jumps"), r.path("jumps"));
        const auto type = jr.require<std::string>("type");
        if (type == "none") {
            t.jumps = NoJumps{};
        } else if (type == "stable") {
            const double alpha = jr.require<double>("alpha");
            if (!(alpha > 0.0 && alpha < 2.0)) throw ConfigError(jr.path("alpha") + ": must lie in (0, 2)");
            t.jumps = StableJumps{alpha, jr.get<double>("scale", stable_normalizer(alpha))};
        } else if (type == "tempered_stable") {
            t.jumps = TemperedStableJumps{jr.require<double>("alpha"), jr.require<double>("lambda"),
                                          jr.get<double>("scale", 1.0)};
        } else if (type == "compound_poisson") {
            t.jumps = CompoundPoissonJumps{jr.require<double>("rate"),
                                           distribution_from_json(jr.raw("distribution"), jr.path("distribution"))};
        } else if (type == "atoms") {
            const json& a = jr.raw("atoms");
            if (!a.is_array()) throw ConfigError(jr.path("atoms") + ": expected an array of [location, weight]");
            AtomicJumps atoms;
            for (const auto& pair : a) {
                const auto v = number_list(pair, jr.path("atoms"));
                if (v.size() != 2) throw ConfigError(jr.path("atoms") + ": expected [location, weight] pairs");
                atoms.atoms.push_back({v[0], v[1]});
            }
            t.jumps = atoms;
        } else {
            throw ConfigError(jr.path("type") + ": unknown jump family \"" + type + "\"");
        }
        jr.finish();
    }
    r.finish();
    validate_triplet(t, where);
    return t;
}

json triplet_to_json(const LevyTriplet& t) {
    json j{{"drift", t.drift}, {"diffusion", t.diffusion}};
    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, NoJumps>) {
                j["jumps"] = {{"type", "none"}};
            } else if constexpr (std::is_same_v<M, StableJumps>) {
                j["jumps"] = {{"type", "stable"}, {"alpha", m.alpha}, {"scale", m.scale}};
            } else if constexpr (std::is_same_v<M, TemperedStableJumps>) {
                j["jumps"] = {{"type", "tempered_stable"}, {"alpha", m.alpha}, {"lambda", m.lambda}, {"scale", m.scale}};
            } else if constexpr (std::is_same_v<M, CompoundPoissonJumps>) {
                j["jumps"] = {{"type", "compound_poisson"}, {"rate", m.rate},
                              {"distribution", distribution_to_json(m.distribution)}};
            } else {
                json atoms = json::array();
                for (const auto& a : m.atoms) atoms.push_back({a.location, a.weight});
                j["jumps"] = {{"type", "atoms"}, {"atoms", atoms}};
            }
        },
        t.jumps);
    return j;
}

ExperimentConfig parse_config(const json& j) {
    Reader r(j, "config");
    ExperimentConfig c;
    const auto scenario = r.require<std::string>("scenario");
    if (scenario == "glued") {
        c.scenario = Scenario::Glued;
    } else if (scenario == "stable_like") {
        c.scenario = Scenario::StableLike;
    } else if (scenario == "diagnostics_only") {
        c.scenario = Scenario::DiagnosticsOnly;
    } else {
        throw ConfigError("config.scenario: expected glued, stable_like or diagnostics_only");
    }
    c.seed = r.get<std::uint64_t>("seed", 1);

    if (c.scenario == Scenario::Glued) {
        c.left = triplet_from_json(r.raw("left"), "config.left");
        c.right = triplet_from_json(r.raw("right"), "config.right");
    } else if (c.scenario == Scenario::StableLike) {
        c.alpha = alpha_from_json(r.raw("alpha"), "config.alpha");
    } else {
        c.symbol = triplet_from_json(r.raw("symbol"), "config.symbol");
    }

    if (r.has("simulation")) {
        Reader s(r.raw("simulation"), "config.simulation");
        auto& sc = c.simulation;
        sc.horizon = s.get<double>("horizon", sc.horizon);
        sc.dt = s.get<double>("dt", sc.dt);
        sc.paths = s.get<std::size_t>("paths", sc.paths);
        sc.epsilon_jump = s.get<double>("epsilon_jump", sc.epsilon_jump);
        const auto inc = s.get<std::string>("increments", "exact_stable");
        if (inc == "exact_stable") {
            sc.increments = IncrementMode::ExactStable;
        } else if (inc == "truncated") {
            sc.increments = IncrementMode::Truncated;
        } else {
            throw ConfigError("config.simulation.increments: expected exact_stable or truncated");
        }
        if (s.has("x0")) sc.x0 = law_from_json(s.raw("x0"), "config.simulation.x0");
        s.finish();
        if (!(sc.dt > 0.0) || !(sc.horizon > 0.0)) throw ConfigError("config.simulation: dt and horizon must be positive");
        const double m = std::round(sc.horizon / sc.dt);
        if (std::abs(m * sc.dt - sc.horizon) > 1e-9 * sc.horizon)
            throw ConfigError("config.simulation: horizon must be a multiple of dt");
        if (sc.paths == 0) throw ConfigError("config.simulation.paths: must be positive");
    }
    if (c.scenario == Scenario::Glued && c.simulation.increments == IncrementMode::ExactStable) {
        for (const auto* t : {&c.left, &c.right})
            if (!std::holds_alternative<StableJumps>(t->jumps) && !std::holds_alternative<NoJumps>(t->jumps))
                throw ConfigError(
                    "config.simulation.increments: exact_stable needs stable (or no) jumps; use truncated");
    }

    if (r.has("schedule")) {
        Reader s(r.raw("schedule"), "config.schedule");
        auto& sc = c.schedule;
        sc.enabled = s.get<bool>("enabled", true);
        sc.n_max = s.get<int>("n_max", sc.n_max);
        sc.epsilon = s.get<double>("epsilon", sc.epsilon);
        sc.simulate_with_alpha_n = s.get<bool>("simulate_with_alpha_n", sc.simulate_with_alpha_n);
        sc.table_points = s.get<int>("table_points", sc.table_points);
        s.finish();
        if (c.scenario != Scenario::StableLike && sc.enabled)
            throw ConfigError("config.schedule: only the stable_like scenario builds a schedule");
        if (sc.n_max < 1) throw ConfigError("config.schedule.n_max: must be at least 1");
        if (c.alpha && !(sc.epsilon > 0.0 && sc.epsilon < std::min(c.alpha->inf(), 2.0 - c.alpha->sup())))
            throw ConfigError("config.schedule.epsilon: must lie in (0, min(inf alpha, 2 - sup alpha)) (S2)");
    }

    if (r.has("diagnostics")) {
        Reader d(r.raw("diagnostics"), "config.diagnostics");
        auto& dc = c.diagnostics;
        dc.conditions = d.get<bool>("conditions", dc.conditions);
        dc.hartman_wintner = d.get<bool>("hartman_wintner", dc.hartman_wintner);
        dc.density_bound = d.get<bool>("density_bound", dc.density_bound);
        dc.density_t = d.get<double>("density_t", dc.density_t);
        dc.glue_n_max = d.get<int>("glue_n_max", dc.glue_n_max);
        if (d.has("locality_m")) {
            dc.locality_m.clear();
            for (double v : number_list(d.raw("locality_m"), d.path("locality_m"))) dc.locality_m.push_back(static_cast<int>(v));
        }
        if (d.has("exit")) {
            Reader e(d.raw("exit"), "config.diagnostics.exit");
            dc.exit.enabled = e.get<bool>("enabled", true);
            dc.exit.radius = e.get<double>("radius", dc.exit.radius);
            dc.exit.t = e.get<double>("t", dc.exit.t);
            e.finish();
        }
        if (d.has("martingale")) {
            Reader m(d.raw("martingale"), "config.diagnostics.martingale");
            auto& mc = dc.martingale;
            mc.enabled = m.get<bool>("enabled", mc.enabled);
            mc.weight_time = m.get<double>("weight_time", mc.weight_time);
            mc.t_start = m.get<double>("t_start", mc.t_start);
            mc.t_end = m.get<double>("t_end", mc.t_end);
            mc.z_max = m.get<double>("z_max", mc.z_max);
            if (m.has("negative_control_alpha") && !m.raw("negative_control_alpha").is_null())
                mc.negative_control_alpha = m.require<double>("negative_control_alpha");
            m.finish();
            if (!(mc.weight_time <= mc.t_start && mc.t_start < mc.t_end))
                throw ConfigError("config.diagnostics.martingale: need weight_time <= t_start < t_end");
            if (mc.t_end > c.simulation.horizon * (1 + 1e-12))
                throw ConfigError("config.diagnostics.martingale.t_end: beyond the simulation horizon");
        }
        d.finish();
        if (dc.glue_n_max < 1) throw ConfigError("config.diagnostics.glue_n_max: must be at least 1");
    }

    if (r.has("output")) {
        Reader o(r.raw("output"), "config.output");
        c.output.csv_path_stride = o.get<std::size_t>("csv_path_stride", c.output.csv_path_stride);
        c.output.csv_step_stride = o.get<std::size_t>("csv_step_stride", c.output.csv_step_stride);
        c.output.histogram_bins = o.get<int>("histogram_bins", c.output.histogram_bins);
        o.finish();
        if (c.output.csv_path_stride == 0 || c.output.csv_step_stride == 0 || c.output.histogram_bins < 1)
            throw ConfigError("config.output: strides and bin count must be positive");
    }
    r.finish({"manifest"});
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ConfigError(path + ": " + e.what());
    }
    return parse_config(j);
}

json to_json(const ExperimentConfig& c) {
    json j;
    j["scenario"] = to_string(c.scenario);
    j["seed"] = c.seed;
    if (c.scenario == Scenario::Glued) {
        j["left"] = triplet_to_json(c.left);
        j["right"] = triplet_to_json(c.right);
    } else if (c.scenario == Scenario::StableLike) {
        j["alpha"] = alpha_to_json(*c.alpha);
    } else {
        j["symbol"] = triplet_to_json(c.symbol);
    }
    const auto& s = c.simulation;
    j["simulation"] = {{"horizon", s.horizon},
                       {"dt", s.dt},
                       {"paths", s.paths},
                       {"epsilon_jump", s.epsilon_jump},
                       {"increments", s.increments == IncrementMode::ExactStable ? "exact_stable" : "truncated"},
                       {"x0", law_to_json(s.x0)}};
    if (c.scenario == Scenario::StableLike) {
        j["schedule"] = {{"enabled", c.schedule.enabled},
                         {"n_max", c.schedule.n_max},
                         {"epsilon", c.schedule.epsilon},
                         {"simulate_with_alpha_n", c.schedule.simulate_with_alpha_n},
                         {"table_points", c.schedule.table_points}};
    }
    const auto& d = c.diagnostics;
    json mg{{"enabled", d.martingale.enabled},
            {"weight_time", d.martingale.weight_time},
            {"t_start", d.martingale.t_start},
            {"t_end", d.martingale.t_end},
            {"z_max", d.martingale.z_max},
            {"negative_control_alpha", nullptr}};
    if (d.martingale.negative_control_alpha) mg["negative_control_alpha"] = *d.martingale.negative_control_alpha;
    j["diagnostics"] = {{"conditions", d.conditions},
                        {"hartman_wintner", d.hartman_wintner},
                        {"density_bound", d.density_bound},
                        {"density_t", d.density_t},
                        {"glue_n_max", d.glue_n_max},
                        {"locality_m", d.locality_m},
                        {"exit", {{"enabled", d.exit.enabled}, {"radius", d.exit.radius}, {"t", d.exit.t}}},
                        {"martingale", mg}};
    j["output"] = {{"csv_path_stride", c.output.csv_path_stride},
                   {"csv_step_stride", c.output.csv_step_stride},
                   {"histogram_bins", c.output.histogram_bins}};
    return j;
}

}  // namespace levysim
