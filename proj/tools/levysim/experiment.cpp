#include "levysim/experiment.hpp"

#include <cmath>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>

#include "levytype/bounds.hpp"
#include "levytype/conditions.hpp"
#include "levytype/generator.hpp"
#include "levytype/glue.hpp"
#include "levytype/path_ensemble.hpp"
#include "levytype/schedule.hpp"
#include "levytype/simulate.hpp"
#include "levytype/symbol.hpp"

#ifndef LEVYSIM_VERSION
#define LEVYSIM_VERSION "unknown"
#endif

namespace levysim {

using namespace levytype;
namespace fs = std::filesystem;

namespace {

class OutputDir {
public:
    explicit OutputDir(fs::path dir) : dir_(std::move(dir)) {
        if (!fs::exists(dir_)) {
            fs::create_directories(dir_);
            created_ = true;
        } else if (!fs::is_directory(dir_)) {
            throw ConfigError("--out: " + dir_.string() + " is not a directory");
        }
    }

    std::ofstream open(const std::string& name, bool binary = false) {
        std::ofstream os(dir_ / name, binary ? std::ios::binary : std::ios::out);
        if (!os) throw ConfigError("cannot write " + (dir_ / name).string());
        files_.push_back(name);
        return os;
    }

    void rollback() noexcept {
        std::error_code ec;
        for (const auto& f : files_) fs::remove(dir_ / f, ec);
        if (created_) fs::remove(dir_, ec);
    }

    const std::vector<std::string>& files() const { return files_; }

private:
    fs::path dir_;
    bool created_ = false;
    std::vector<std::string> files_;
};

struct Reports {
    std::vector<ConditionReport> conditions;
    std::vector<MartingaleTestReport> martingale;
    std::vector<MartingaleTestReport> control;
    std::optional<DensityBound> density;
    std::optional<ExitCheck> exit;
};

std::vector<SymbolFn> glued_family(const ExperimentConfig& c) {
    std::vector<SymbolFn> family;
    for (int n = 1; n <= c.diagnostics.glue_n_max; ++n) family.push_back(glued_approx_symbol(c.left, c.right, n));
    return family;
}

// [-m, m] minus the open threshold neighbourhood (-1/m, 1/m).
std::vector<Interval> locality_region(int m) {
    const double mf = m;
    return {{-mf, -1.0 / mf}, {1.0 / mf, mf}};
}

ConditionReport locality_report(const ExperimentConfig& c, int m) {
    const auto fns = canonical_test_functions();
    const auto region = locality_region(m);
    const int n = std::max(m, c.diagnostics.glue_n_max);
    constexpr int kPointsPerUnit = 16;
    constexpr double kTolerance = 1e-8;
    double worst = 0.0;
    for (const auto& f : fns)
        worst = std::max(worst, generator_difference_sup(GluedApproxGenerator{c.left, c.right, n},
                                                         GluedGenerator{c.left, c.right}, f, region, kPointsPerUnit));
    ConditionReport r;
    r.id = "B2";
    std::ostringstream g;
    g << "m=" << m << " n=" << n << " region [-m,-1/m]u[1/m,m] at " << kPointsPerUnit << " points/unit, "
      << fns.size() << " bump functions";
    r.grid = g.str();
    r.value = worst;
    r.threshold = kTolerance;
    r.verdict = worst <= kTolerance ? Verdict::Pass : Verdict::Fail;
    r.detail = "sup |A_n f - A f| off the threshold neighbourhood";
    return r;
}

void append(std::vector<ConditionReport>& to, std::vector<ConditionReport> from) {
    to.insert(to.end(), std::make_move_iterator(from.begin()), std::make_move_iterator(from.end()));
}

void symbol_diagnostics(const ExperimentConfig& c, std::span<const SymbolFn> family, Reports& out) {
    const auto& d = c.diagnostics;
    if (d.conditions) append(out.conditions, check_symbol_conditions(family, default_condition_grid(family)));
    if (d.density_bound) out.density = transition_density_bound(family, d.density_t);
}

std::vector<MartingaleTestReport> martingale_suite(const PathEnsemble& e, const GeneratorSpec& spec,
                                                   const MartingaleConfig& mc, unsigned threads) {
    MartingaleOptions opts;
    opts.z_max = mc.z_max;
    opts.threads = threads;
    const auto weights = default_weight_functions();
    const double wt = mc.weight_time;
    std::vector<MartingaleTestReport> reports;
    for (const auto& f : canonical_test_functions()) {
        const auto cache = build_generator_cache(e, spec, f, opts);
        for (const auto& w : weights)
            reports.push_back(
                martingale_defect(e, cache, f, std::span(&w, 1), std::span(&wt, 1), mc.t_start, mc.t_end, opts));
    }
    return reports;
}

double max_abs_z(std::span<const MartingaleTestReport> reports) {
    double z = 0.0;
    for (const auto& r : reports) z = std::max(z, std::abs(r.z));
    return z;
}

void write_bounds(std::ostream& os, const Reports& r) {
    os.precision(16);
    if (r.density) {
        const auto& b = *r.density;
        os << "DENSITY " << (b.finite ? "FINITE" : "DIVERGENT") << " value=" << b.value
           << " envelope_c=" << b.envelope_c << " envelope_gamma=" << b.envelope_gamma << " cutoff=" << b.cutoff
           << " body=" << b.body << " tail=" << b.tail;
        if (!b.detail.empty()) os << " detail=\"" << b.detail << '"';
        os << '\n';
    }
    if (r.exit) {
        const auto& x = *r.exit;
        os << "EXIT " << to_string(x.verdict) << " radius=" << x.radius << " t=" << x.t << " paths=" << x.paths
           << " exceedances=" << x.exceedances << " frequency=" << x.frequency << " stderr=" << x.stderr_
           << " bound=" << x.bound << " constant=" << x.constant << " claimed_constant=" << x.claimed_constant
           << " empirical_constant=" << x.empirical_constant << " margin=" << x.margin;
        if (!x.detail.empty()) os << " detail=\"" << x.detail << '"';
        os << '\n';
    }
}

json manifest_of(const ExperimentConfig& c, const std::vector<std::string>& outputs) {
    json j = to_json(c);
    j["manifest"] = {{"tool", "levysim"}, {"version", LEVYSIM_VERSION}, {"seed", c.seed},
                     {"ensemble_format", "LVTPATHS v1"}, {"outputs", outputs}};
    return j;
}

ExperimentSummary run(const ExperimentConfig& c, OutputDir& out, unsigned threads) {
    Reports reports;
    std::optional<PathEnsemble> ensemble;
    std::optional<ApproximationSchedule> schedule;
    std::optional<GeneratorSpec> spec;

    const SimulationParams params{c.simulation.horizon, c.simulation.dt, c.simulation.paths, c.seed, threads};
    const SamplerOptions sampler{c.simulation.epsilon_jump, c.simulation.increments};

    switch (c.scenario) {
        case Scenario::Glued: {
            const auto family = glued_family(c);
            symbol_diagnostics(c, family, reports);
            if (c.diagnostics.hartman_wintner) {
                for (const auto* t : {&c.left, &c.right}) {
                    auto r = hartman_wintner(levy_symbol(*t));
                    r.detail = (t == &c.left ? "left driver " : "right driver ") + describe(*t) +
                               (r.detail.empty() ? "" : "; " + r.detail);
                    reports.conditions.push_back(std::move(r));
                }
            }
            for (int m : c.diagnostics.locality_m) reports.conditions.push_back(locality_report(c, m));
            ensemble = simulate_glued_sde(c.left, c.right, c.simulation.x0, params, sampler);
            spec = GluedGenerator{c.left, c.right};
            if (c.diagnostics.exit.enabled)
                reports.exit = exit_probability_check(*ensemble, glued_symbol(c.left, c.right),
                                                      c.diagnostics.exit.radius, c.diagnostics.exit.t);
            break;
        }
        case Scenario::StableLike: {
            const StabilityIndex& alpha = *c.alpha;
            std::vector<SymbolFn> family;
            if (c.schedule.enabled) {
                schedule = select_schedule(alpha, c.schedule.epsilon, c.schedule.n_max);
                for (const auto& cert : schedule->certificates)
                    if (!cert.passed)
                        throw ConfigError("approximation schedule certificate failed (" + cert.id + "): " +
                                          cert.detail);
                reports.conditions.push_back(check_b1(schedule->sets));
                append(reports.conditions, schedule_reports(*schedule));
                for (const auto& entry : schedule->entries) {
                    auto a = entry.alpha_n;
                    family.push_back(stable_like_symbol([a](double x) { return (*a)(x); }, a->inf(), a->sup(),
                                                        "stable_like(alpha_" + std::to_string(entry.n) + ")"));
                }
            } else {
                family.push_back(stable_like_symbol(alpha));
            }
            symbol_diagnostics(c, family, reports);
            if (c.diagnostics.hartman_wintner && alpha.piece_count() == 1 && alpha.piece(0).slope == 0.0)
                reports.conditions.push_back(hartman_wintner(stable_like_symbol(alpha)));

            if (schedule && c.schedule.simulate_with_alpha_n) {
                auto a = schedule->entries.back().alpha_n;
                ensemble = simulate_stable_like([a](double x) { return (*a)(x); }, c.simulation.x0, params);
                spec = StableLikeApproxGenerator{a};
            } else {
                ensemble = simulate_stable_like(alpha, c.simulation.x0, params);
                spec = StableLikeGenerator{alpha};
            }
            if (c.diagnostics.exit.enabled)
                reports.exit = exit_probability_check(*ensemble, stable_like_symbol(alpha), c.diagnostics.exit.radius,
                                                      c.diagnostics.exit.t);
            break;
        }
        case Scenario::DiagnosticsOnly: {
            const std::vector<SymbolFn> family{levy_symbol(c.symbol)};
            symbol_diagnostics(c, family, reports);
            if (c.diagnostics.hartman_wintner) reports.conditions.push_back(hartman_wintner(family.front()));
            break;
        }
    }

    const auto& mc = c.diagnostics.martingale;
    if (ensemble && mc.enabled) {
        reports.martingale = martingale_suite(*ensemble, *spec, mc, threads);
        if (mc.negative_control_alpha && c.scenario == Scenario::StableLike)
            reports.control = martingale_suite(
                *ensemble, StableLikeGenerator{StabilityIndex::constant(*mc.negative_control_alpha)}, mc, threads);
    }

    // Everything is computed; write the artifacts.
    ExperimentSummary summary;
    if (ensemble) {
        auto bin = out.open("ensemble.bin", true);
        write_binary(*ensemble, bin);
        auto csv = out.open("paths.csv");
        write_csv(*ensemble, csv, c.output.csv_path_stride, c.output.csv_step_stride);
    }
    if (!reports.conditions.empty()) {
        auto txt = out.open("conditions.txt");
        write_reports_text(txt, reports.conditions);
        auto csv = out.open("conditions.csv");
        write_reports_csv(csv, reports.conditions);
        auto shells = out.open("shells.csv");
        write_shell_csv(shells, reports.conditions);
    }
    if (reports.density || reports.exit) {
        auto os = out.open("bounds.txt");
        write_bounds(os, reports);
    }
    if (!reports.martingale.empty()) {
        auto txt = out.open("martingale.txt");
        write_martingale_text(txt, reports.martingale);
        auto csv = out.open("martingale.csv");
        write_martingale_csv(csv, reports.martingale);
    }
    if (!reports.control.empty()) {
        auto txt = out.open("martingale_control.txt");
        write_martingale_text(txt, reports.control);
        const double z = max_abs_z(reports.control);
        txt.precision(8);
        txt << "CONTROL " << (z > 5.0 ? "DETECTED" : "MISSED") << " max|z|=" << z << " threshold=5\n";
        auto csv = out.open("martingale_control.csv");
        write_martingale_csv(csv, reports.control);
    }
    if (schedule) {
        const double n = c.schedule.n_max;
        auto a = out.open("alpha_n.csv");
        write_schedule_csv(a, *schedule, -n - 1.0, n + 1.0, c.schedule.table_points);
        auto u = out.open("exceptional_sets.csv");
        write_exceptional_sets_csv(u, schedule->sets);
    }

    std::vector<std::string> outputs = out.files();
    outputs.push_back("manifest.json");
    {
        auto m = out.open("manifest.json");
        m << manifest_of(c, outputs).dump(2) << '\n';
    }

    for (const auto& r : reports.conditions)
        if (r.verdict == Verdict::Fail) summary.failed_checks.push_back(r.id);
    for (const auto& r : reports.martingale)
        if (!r.pass) summary.failed_checks.push_back("MG " + r.f_id + "/" + r.h_ids.front());
    if (!reports.control.empty() && max_abs_z(reports.control) <= 5.0)
        summary.failed_checks.push_back("MG negative control");
    if (reports.exit && reports.exit->verdict == Verdict::Fail) summary.failed_checks.push_back("EXIT");
    if (reports.density && !reports.density->finite) summary.failed_checks.push_back("DENSITY");
    summary.files = out.files();
    return summary;
}

}  // namespace

std::vector<WeightFn> default_weight_functions() {
    return {{"one", [](double) { return 1.0; }},
            {"bump", [](double x) { return std::exp(1.0) * bump_profile(x / 2.0); }}};
}

ExperimentSummary run_experiment(const ExperimentConfig& config, const fs::path& out_dir, unsigned threads) {
    OutputDir out(out_dir);
    try {
        return run(config, out, std::max(1u, threads));
    } catch (...) {
        out.rollback();
        throw;
    }
}

}  // namespace levysim
