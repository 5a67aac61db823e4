#include <cstdio>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "urel/cli.hpp"
#include "urel/riemann.hpp"
#include "urel/wavecurves.hpp"

namespace urel::cli {

namespace fs = std::filesystem;

namespace {

using ojson = nlohmann::ordered_json;

class Csv {
public:
    Csv(const fs::path& path, const std::string& header) : out_(path) {
        if (!out_) throw Error("cannot write '" + path.string() + "'");
        out_ << header << '\n';
    }

    void row(std::initializer_list<double> values) {
        bool first = true;
        for (double v : values) {
            if (!first) out_ << ',';
            first = false;
            out_ << format_number(v);
        }
        out_ << '\n';
    }

    std::ostream& stream() { return out_; }

private:
    std::ofstream out_;
};

void write_text(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write '" + path.string() + "'");
    out << text;
}

ojson state_json(const PrimitiveState& p, const Eos& eos) {
    const InvariantState i = to_invariants(p, eos);
    return ojson{{"rho", p.rho}, {"v", p.v}, {"S", p.S}, {"r", i.r}, {"s", i.s}, {"Sigma", i.sigma}};
}

ojson eos_json(const Eos& eos) {
    const char* family = eos.family() == EosFamily::polytropic ? "polytropic"
                         : eos.family() == EosFamily::radiation ? "radiation"
                                                                : "tabulated";
    return ojson{{"family", family}, {"gamma", eos.gamma()}, {"sound_speed", eos.sound_speed()},
                 {"family_constant", eos.family_constant()}};
}

ojson constants_json(const OmegaConstants& c) {
    return ojson{{"diameter", c.diameter}, {"slope", c.slope}, {"C0", c.C0}, {"C0_floor_binds", c.floor_binds},
                 {"M_bar", c.M_bar}, {"M", c.M}, {"M0", c.M0}};
}

ojson strengths_json(const WaveStrengths& w) {
    return ojson{{"alpha", w.alpha}, {"beta", w.beta}, {"mu", w.mu}, {"eta", w.eta}, {"delta", w.delta},
                 {"delta_alpha", w.delta_alpha}, {"delta_beta", w.delta_beta}};
}

ojson wave_json(const NonlinearWave& w) {
    return ojson{{"kind", wave_kind_name(w.kind)}, {"head", w.head}, {"tail", w.tail}};
}

void write_profile(const fs::path& path, const GridSolution& sol, const Eos& eos) {
    Csv csv(path, "x,rho,v,S,r,s,Sigma");
    for (std::size_t i = 0; i < sol.cells.size(); ++i) {
        const PrimitiveState& p = sol.cells[i];
        const InvariantState inv = to_invariants(p, eos);
        csv.row({sol.center(i), p.rho, p.v, p.S, inv.r, inv.s, inv.sigma});
    }
}

std::string profile_name(std::size_t level) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "profile_%06zu.csv", level);
    return buf;
}

int cmd_riemann(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const Eos& eos = cfg.eos;
    const RiemannSolver solver(eos);
    const WaveFan fan = solver.solve(cfg.left, cfg.right);
    const double t = cfg.grid.t_end;

    ojson j;
    j["eos"] = eos_json(eos);
    j["time"] = t;
    j["x0"] = cfg.x0;
    j["region"] = region_name(fan.region);
    j["eps"] = ojson::array({fan.eps1, fan.eps2, fan.eps3});
    j["strengths"] = strengths_json(wave_strengths(fan));
    j["shock_amplitudes"] = ojson{{"sigma1", fan.sigma1}, {"sigma3", fan.sigma3}};
    j["wave1"] = wave_json(fan.wave1);
    j["contact_speed"] = fan.contact_speed;
    j["wave3"] = wave_json(fan.wave3);
    j["states"] = ojson{{"left", state_json(fan.left, eos)},
                        {"mid_left", state_json(fan.mid_left, eos)},
                        {"mid_right", state_json(fan.mid_right, eos)},
                        {"right", state_json(fan.right, eos)}};
    j["residual"] = fan.residual;
    write_text(out / "fan.json", dump_json(j));

    GridSolution sol;
    sol.x_min = cfg.grid.x_min;
    sol.dx = cfg.grid.dx;
    sol.time = t;
    sol.cells.resize(cfg.grid.cells);
    for (std::size_t i = 0; i < sol.cells.size(); ++i) sol.cells[i] = solver.sample(fan, (sol.center(i) - cfg.x0) / t);
    write_profile(out / "profile.csv", sol, eos);
    log << "riemann: region " << region_name(fan.region) << ", eps = (" << format_number(fan.eps1) << ", "
        << format_number(fan.eps2) << ", " << format_number(fan.eps3) << ")\n";
    return kOk;
}

void write_diagnostics(const fs::path& out, const RunDiagnostics& d) {
    Csv csv(out / "diagnostics.csv", "level,t,F,L,var_rs,var_lnrho,var_rapidity,var_sigma");
    for (const LevelRecord& r : d.levels)
        csv.row({static_cast<double>(r.level), r.time, r.F, r.L, r.var_rs, r.var_lnrho, r.var_rapidity, r.var_sigma});

    Csv census(out / "census.csv",
               "level,alpha,beta,mu,eta,abs_delta,delta_alpha,delta_beta,shocks1,shocks3,rarefactions1,"
               "rarefactions3,contacts,L_display,max_char_speed");
    for (const LevelRecord& r : d.levels) {
        const WaveCensus& c = r.census;
        census.row({static_cast<double>(r.level), c.alpha, c.beta, c.mu, c.eta, c.abs_delta, c.delta_alpha,
                    c.delta_beta, static_cast<double>(c.shocks1), static_cast<double>(c.shocks3),
                    static_cast<double>(c.rarefactions1), static_cast<double>(c.rarefactions3),
                    static_cast<double>(c.contacts), r.L_display, r.max_char_speed});
    }
}

ojson failures_json(const RunDiagnostics& d) {
    ojson arr = ojson::array();
    for (const MonitorFailure& f : d.failures)
        arr.push_back(ojson{{"level", f.level}, {"cell", f.cell}, {"quantity", f.quantity}, {"value", f.value},
                            {"bound", f.bound}});
    return arr;
}

int cmd_glimm(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const Eos& eos = cfg.eos;
    std::set<std::size_t> written;
    RunOptions options;
    options.abort_on_violation = true;
    options.on_level = [&](const GridSolution& sol) {
        if (!cfg.output.profiles) return;
        if (sol.level == 0 || (cfg.output.stride > 0 && sol.level % cfg.output.stride == 0)) {
            write_profile(out / profile_name(sol.level), sol, eos);
            written.insert(sol.level);
        }
    };

    RunResult result;
    try {
        result = run(*cfg.profile, cfg.grid, cfg.sampling.make(), eos, options);
    } catch (const MonitorViolation& e) {
        write_diagnostics(out, e.diagnostics());
        ojson j{{"status", "monitor violation"}, {"failures", failures_json(e.diagnostics())}};
        write_text(out / "summary.json", dump_json(j));
        log << "glimm: " << e.what() << '\n';
        return kViolation;
    }
    const RunDiagnostics& d = result.diagnostics;
    const GridSolution& last = result.trajectory.back();
    if (cfg.output.profiles && !written.count(last.level)) write_profile(out / profile_name(last.level), last, eos);
    write_diagnostics(out, d);

    ojson j;
    j["status"] = d.ok() ? "ok" : "monitor violation";
    j["eos"] = eos_json(eos);
    j["grid"] = ojson{{"cells", cfg.grid.cells}, {"x_min", cfg.grid.x_min}, {"x_max", cfg.grid.x_max},
                      {"dx", cfg.grid.dx}, {"dt", cfg.grid.dt}, {"steps", cfg.grid.steps()},
                      {"t_final", last.time}};
    j["sampling"] = cfg.sampling.kind == SamplingKind::pseudorandom
                        ? ojson{{"kind", "pseudorandom"}, {"seed", cfg.sampling.seed}}
                        : ojson{{"kind", "van_der_corput"}, {"base", ojson::array({cfg.sampling.k1, cfg.sampling.k2})}};
    j["V"] = d.V;
    j["V_full"] = d.V_full;
    j["omega_box"] = ojson{{"r", ojson::array({d.r_min, d.r_max})}, {"s", ojson::array({d.s_min, d.s_max})}};
    j["constants"] = constants_json(d.constants);
    j["F_first"] = d.levels.front().F;
    j["F_last"] = d.levels.back().F;
    j["L_first"] = d.levels.front().L;
    j["L_last"] = d.levels.back().L;
    j["bounds"] = ojson{{"var_lnrho", ojson{{"max", d.max_var_lnrho}, {"bound", d.bound_lnrho}}},
                        {"var_rapidity", ojson{{"max", d.max_var_rapidity}, {"bound", d.bound_rapidity}}},
                        {"var_sigma", ojson{{"max", d.max_var_sigma}, {"bound", d.bound_sigma}}},
                        {"ball", ojson{{"max_distance", d.max_ball_distance}, {"radius", d.ball_radius}}}};
    j["failures"] = failures_json(d);
    write_text(out / "summary.json", dump_json(j));
    log << "glimm: " << d.levels.size() << " levels, F " << format_number(d.levels.front().F) << " -> "
        << format_number(d.levels.back().F) << '\n';
    return d.ok() ? kOk : kViolation;
}

int cmd_curves(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const Eos& eos = cfg.eos;
    const PrimitiveState& base = cfg.curves.base;
    const InvariantState b = to_invariants(base, eos);
    const double k = invariant_coupling(eos);
    const std::size_t n = cfg.curves.points;
    auto sigma_at = [&](std::size_t j) { return cfg.curves.sigma_max * static_cast<double>(j) / static_cast<double>(n - 1); };
    const std::string header = "sigma,r,s,Sigma,speed,dr,ds,dSigma";

    for (Family fam : {Family::one, Family::three}) {
        const int idx = fam == Family::one ? 0 : 2;
        const std::string tag = fam == Family::one ? "1" : "3";
        Csv shocks(out / ("shock_" + tag + ".csv"), header);
        Csv fans(out / ("rarefaction_" + tag + ".csv"), header);
        for (std::size_t j = 0; j < n; ++j) {
            const double sigma = sigma_at(j);
            const ShockPoint p = shock_curve(base, fam, sigma, eos);
            const InvariantState i = to_invariants(p.state, eos);
            shocks.row({sigma, i.r, i.s, i.sigma, p.speed, i.r - b.r, i.s - b.s, i.sigma - b.sigma});
            // equal |d ln rho| along the rarefaction
            const PrimitiveState q = rarefaction_curve(base, fam, 2.0 * k * sigma, eos);
            const InvariantState iq = to_invariants(q, eos);
            fans.row({sigma, iq.r, iq.s, iq.sigma, char_speeds(q, eos)[idx], iq.r - b.r, iq.s - b.s,
                      iq.sigma - b.sigma});
        }
    }

    const ShockGeometry geo(eos);
    Csv jump(out / "sigma_jump.csv", "sigma,delta,ddelta_dsigma,omega,ddelta_domega");
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = sigma_at(j);
        const double omega = geo.strength(sigma);
        jump.row({sigma, sigma_jump(sigma, eos.gamma()), sigma_jump_rate(sigma, eos.gamma()), omega,
                  omega > 0.0 ? geo.entropy_jump_rate(omega) : 0.0});
    }

    ojson j;
    j["eos"] = eos_json(eos);
    j["base"] = state_json(base, eos);
    j["invariant_coupling"] = k;
    j["slope_bound"] = shock_slope_bound(eos);
    j["sigma_max"] = cfg.curves.sigma_max;
    j["points"] = n;
    write_text(out / "curves.json", dump_json(j));
    log << "curves: " << n << " points per table\n";
    return kOk;
}

int cmd_interactions(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    const Eos& eos = cfg.eos;
    const SweepConfig& sc = cfg.sweep.sweep;
    const SweepStats stats = random_sweep(sc, eos, cfg.sweep.samples_csv);

    ojson j;
    j["eos"] = eos_json(eos);
    j["config"] = ojson{{"omega_box", ojson::array({ojson::array({sc.r_min, sc.r_max}), ojson::array({sc.s_min, sc.s_max})})},
                        {"sigma_max", sc.sigma_max},
                        {"contact_max", sc.contact_max},
                        {"sigma_range", ojson::array({sc.sigma_lo, sc.sigma_hi})},
                        {"count", sc.count},
                        {"seed", sc.seed}};
    j["constants"] = constants_json(stats.constants);
    j["count"] = stats.count;
    j["interaction_violations"] = stats.interaction_violations;
    j["entropy_violations"] = stats.entropy_violations;
    j["min_interaction_margin"] = stats.min_interaction_margin;
    j["min_entropy_margin"] = stats.min_entropy_margin;
    j["max_net_entropy_residual"] = stats.max_net_entropy_residual;
    j["rejected_draws"] = stats.rejected_draws;
    ojson topo = ojson::object();
    for (const auto& [name, count] : stats.topologies) topo[name] = count;
    j["topologies"] = topo;

    std::size_t violations = stats.interaction_violations + stats.entropy_violations;
    if (cfg.sweep.curated) {
        const auto cases = curated_suite(eos);
        const OmegaConstants c = enclosing_constants(cases, eos);
        std::size_t bad_i = 0, bad_e = 0;
        double min_i = HUGE_VAL, min_e = HUGE_VAL, max_res = 0.0;
        std::set<std::string> labels;
        for (const auto& cc : cases) {
            labels.insert(cc.label);
            if (!check_interaction_estimate(cc.report, c.C0)) ++bad_i;
            if (!check_entropy_estimate(cc.report, c.M)) ++bad_e;
            min_i = std::min(min_i, interaction_margin(cc.report, c.C0));
            min_e = std::min(min_e, entropy_margin(cc.report, c.M));
            max_res = std::max(max_res, std::abs(cc.report.net_entropy_residual));
        }
        violations += bad_i + bad_e;
        j["curated"] = ojson{{"cases", cases.size()},
                             {"topologies", labels.size()},
                             {"constants", constants_json(c)},
                             {"interaction_violations", bad_i},
                             {"entropy_violations", bad_e},
                             {"min_interaction_margin", min_i},
                             {"min_entropy_margin", min_e},
                             {"max_net_entropy_residual", max_res}};
    }
    write_text(out / "sweep.json", dump_json(j));

    if (cfg.sweep.samples_csv) {
        Csv csv(out / "samples.csv",
                "index,topology,A,B,E,interaction_margin,entropy_margin,interaction_ok,entropy_ok,"
                "net_entropy_residual,rho_L,v_L,S_L,rho_M,v_M,S_M,rho_R,v_R,S_R");
        for (const SweepSample& s : stats.samples) {
            const InteractionReport& r = s.report;
            std::ostream& o = csv.stream();
            o << s.index << ',' << r.topology;
            for (double x : {r.A, r.B, r.E, s.interaction_margin, s.entropy_margin}) o << ',' << format_number(x);
            o << ',' << (s.interaction_ok ? 1 : 0) << ',' << (s.entropy_ok ? 1 : 0);
            for (double x : {r.net_entropy_residual, r.left.rho, r.left.v, r.left.S, r.middle.rho, r.middle.v,
                             r.middle.S, r.right.rho, r.right.v, r.right.S})
                o << ',' << format_number(x);
            o << '\n';
        }
    }
    log << "interactions: " << stats.count << " samples, " << violations << " violations\n";
    return violations == 0 ? kOk : kViolation;
}

}  // namespace

int execute(const RunConfig& cfg, const fs::path& out, std::ostream& log) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec) throw Error("cannot create output directory '" + out.string() + "': " + ec.message());
    switch (cfg.command) {
        case Command::riemann: return cmd_riemann(cfg, out, log);
        case Command::glimm: return cmd_glimm(cfg, out, log);
        case Command::curves: return cmd_curves(cfg, out, log);
        case Command::interactions: return cmd_interactions(cfg, out, log);
    }
    return kOk;
}

int run_command(Command command, const fs::path& config, const fs::path& out, std::optional<std::uint64_t> seed,
                std::ostream& log) {
    RunConfig cfg;
    try {
        cfg = load_config(config, command, seed);
    } catch (const ConfigError& e) {
        log << "error: " << e.what() << '\n';
        return kConfigError;
    }
    try {
        return execute(cfg, out, log);
    } catch (const MonitorViolation& e) {
        log << "error: " << e.what() << '\n';
        return kViolation;
    } catch (const std::exception& e) {
        log << "error: " << e.what() << '\n';
        return kNumericalFailure;
    }
}

}  // namespace urel::cli
