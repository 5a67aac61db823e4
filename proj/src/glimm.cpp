#include "urel/glimm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace urel {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double bump(double x, double center, double width) {
    const double t = (x - center) / width;
    return std::abs(t) < 1.0 ? 0.5 * (1.0 + std::cos(kPi * t)) : 0.0;
}

double field_value(const PrimitiveState& p, const InvariantState& i, Field f) {
    switch (f) {
        case Field::r: return i.r;
        case Field::s: return i.s;
        case Field::ln_rho: return std::log(p.rho);
        case Field::rapidity: return rapidity(p.v);
        case Field::sigma: return i.sigma;
        case Field::rho: return p.rho;
        case Field::v: return p.v;
        case Field::S: return p.S;
        case Field::rs: break;
    }
    return 0.0;
}

struct Extent {
    double r_min = HUGE_VAL, r_max = -HUGE_VAL, s_min = HUGE_VAL, s_max = -HUGE_VAL;
    double max_distance = 0.0;
    double r0 = 0.0, s0 = 0.0;

    void add(const InvariantState& i) {
        r_min = std::min(r_min, i.r);
        r_max = std::max(r_max, i.r);
        s_min = std::min(s_min, i.s);
        s_max = std::max(s_max, i.s);
        max_distance = std::max(max_distance, std::hypot(i.r - r0, i.s - s0));
    }
};

// Left/right neighbours of interface j on a level (ghosts copy the edge cells).
std::pair<std::size_t, std::size_t> interface_cells(const GridSolution& sol, std::size_t j) {
    const std::size_t m = sol.cells.size();
    if (sol.level % 2 == 0) return {j == 0 ? 0 : j - 1, j == m ? m - 1 : j};
    return {j, j + 1};
}

std::size_t interface_count(const GridSolution& sol) {
    return sol.level % 2 == 0 ? sol.cells.size() + 1 : sol.cells.size() - 1;
}

}  // namespace

std::size_t GridConfig::steps() const {
    if (t_end <= 0.0) return 0;
    const double n = t_end / dt;
    const double nearest = std::round(n);
    if (std::abs(n - nearest) <= 1e-9 * std::max(1.0, nearest)) return static_cast<std::size_t>(nearest);
    return static_cast<std::size_t>(std::ceil(n));
}

GridConfig make_grid(std::size_t cells, double x_min, double x_max, double t_end, double cfl_ratio) {
    GridConfig g;
    g.x_min = x_min;
    g.x_max = x_max;
    g.cells = cells;
    g.t_end = t_end;
    g.dx = cells > 0 ? (x_max - x_min) / (2.0 * static_cast<double>(cells)) : 0.0;
    g.dt = g.dx / cfl_ratio;
    validate(g);
    return g;
}

void validate(const GridConfig& g) {
    if (g.cells < 1) throw DomainError("grid needs at least one cell");
    if (!(g.x_max > g.x_min)) throw DomainError("grid domain must satisfy x_min < x_max");
    if (!(g.dx > 0.0) || !(g.dt > 0.0)) throw DomainError("dx and dt must be positive");
    if (!(g.dx / g.dt > 1.0)) throw DomainError("CFL condition dx/dt > 1 violated");
    if (!(g.t_end >= 0.0) || !std::isfinite(g.t_end)) throw DomainError("t_end must be finite and >= 0");
    const double width = 2.0 * g.dx * static_cast<double>(g.cells);
    if (std::abs(width - (g.x_max - g.x_min)) > 1e-9 * (g.x_max - g.x_min))
        throw DomainError("dx inconsistent with domain and cell count");
}

SamplingSequence SamplingSequence::pseudorandom(std::uint64_t seed) {
    SamplingSequence s;
    s.kind_ = SamplingKind::pseudorandom;
    s.rng_.seed(seed);
    return s;
}

SamplingSequence SamplingSequence::van_der_corput(unsigned k1, unsigned k2) {
    if (k1 < 2) throw DomainError("van der Corput base must be >= 2");
    if (k2 < 1 || k2 >= k1 || std::gcd(k1, k2) != 1)
        throw DomainError("van der Corput multiplier must be coprime to the base and in [1, base)");
    SamplingSequence s;
    s.kind_ = SamplingKind::van_der_corput;
    s.k1_ = k1;
    s.k2_ = k2;
    s.index_ = 1;
    return s;
}

double SamplingSequence::next() {
    double u = 0.0;
    if (kind_ == SamplingKind::pseudorandom) {
        u = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    } else {
        std::uint64_t n = index_++;
        double scale = 1.0 / k1_;
        while (n > 0) {
            const std::uint64_t digit = n % k1_;
            u += static_cast<double>((k2_ * digit) % k1_) * scale;
            scale /= k1_;
            n /= k1_;
        }
    }
    return 2.0 * u - 1.0;
}

Profile Profile::riemann(const PrimitiveState& left, const PrimitiveState& right, double x0) {
    return piecewise({x0}, {left, right});
}

Profile Profile::piecewise(std::vector<double> breakpoints, std::vector<PrimitiveState> states) {
    if (states.size() != breakpoints.size() + 1)
        throw DomainError("piecewise profile needs exactly one more state than breakpoints");
    for (std::size_t i = 1; i < breakpoints.size(); ++i)
        if (!(breakpoints[i] > breakpoints[i - 1])) throw DomainError("breakpoints must be strictly increasing");
    for (const auto& s : states) require_physical(s);
    Profile p;
    p.kind_ = Kind::piecewise;
    p.breaks_ = std::move(breakpoints);
    p.states_ = std::move(states);
    return p;
}

Profile Profile::smooth(const std::string& name, const PrimitiveState& base, double amplitude, double center,
                        double width) {
    require_physical(base);
    if (!(width > 0.0)) throw DomainError("smooth profile width must be positive");
    Profile p;
    if (name == "density_bump") p.kind_ = Kind::density_bump;
    else if (name == "entropy_bump") p.kind_ = Kind::entropy_bump;
    else if (name == "velocity_bump") p.kind_ = Kind::velocity_bump;
    else throw DomainError("unknown smooth profile '" + name + "'");
    p.base_ = base;
    p.amplitude_ = amplitude;
    p.center_ = center;
    p.width_ = width;
    // extreme value of the bump is reached at the centre
    require_physical(p.at(center));
    return p;
}

PrimitiveState Profile::at(double x) const {
    switch (kind_) {
        case Kind::piecewise: {
            const auto it = std::upper_bound(breaks_.begin(), breaks_.end(), x);
            return states_[static_cast<std::size_t>(it - breaks_.begin())];
        }
        case Kind::density_bump: {
            PrimitiveState p = base_;
            p.rho *= 1.0 + amplitude_ * bump(x, center_, width_);
            return p;
        }
        case Kind::entropy_bump: {
            PrimitiveState p = base_;
            p.S *= 1.0 + amplitude_ * bump(x, center_, width_);
            return p;
        }
        case Kind::velocity_bump: {
            PrimitiveState p = base_;
            p.v += amplitude_ * bump(x, center_, width_);
            return p;
        }
    }
    return base_;
}

std::pair<double, double> Profile::support() const {
    if (kind_ == Kind::piecewise) {
        if (breaks_.empty()) return {HUGE_VAL, -HUGE_VAL};
        return {breaks_.front(), breaks_.back()};
    }
    return {center_ - width_, center_ + width_};
}

double GridSolution::center(std::size_t i) const {
    const double k = level % 2 == 0 ? 2.0 * static_cast<double>(i) + 1.0 : 2.0 * static_cast<double>(i);
    return x_min + k * dx;
}

double variation(const GridSolution& sol, Field field, const Eos& eos) {
    if (field == Field::rs) return variation(sol, Field::r, eos) + variation(sol, Field::s, eos);
    double total = 0.0;
    double prev = 0.0;
    for (std::size_t i = 0; i < sol.cells.size(); ++i) {
        const InvariantState inv = to_invariants(sol.cells[i], eos);
        const double x = field_value(sol.cells[i], inv, field);
        if (i > 0) total += std::abs(x - prev);
        prev = x;
    }
    return total;
}

void WaveCensus::add(const WaveStrengths& w) {
    if (w.alpha > 0.0) ++shocks1;
    if (w.beta > 0.0) ++shocks3;
    if (w.mu > 0.0) ++rarefactions1;
    if (w.eta > 0.0) ++rarefactions3;
    if (w.delta != 0.0) ++contacts;
    alpha += w.alpha;
    beta += w.beta;
    mu += w.mu;
    eta += w.eta;
    abs_delta += std::abs(w.delta);
    delta_alpha += w.delta_alpha;
    delta_beta += w.delta_beta;
}

std::string MonitorFailure::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << "monitor '" << quantity << "' failed at level " << level;
    if (cell >= 0) os << ", cell " << cell;
    os << ": value " << value << " exceeds bound " << bound;
    return os.str();
}

MonitorViolation::MonitorViolation(MonitorFailure failure, std::shared_ptr<const RunDiagnostics> diagnostics)
    : Error(failure.describe()), failure_(std::move(failure)), diagnostics_(std::move(diagnostics)) {}

GridSolution init(const Profile& profile, const GridConfig& grid, double theta0) {
    validate(grid);
    if (!(theta0 >= -1.0 && theta0 <= 1.0)) throw DomainError("theta must lie in [-1, 1]");
    GridSolution sol;
    sol.level = 0;
    sol.time = 0.0;
    sol.x_min = grid.x_min;
    sol.dx = grid.dx;
    sol.cells.resize(grid.cells);
    for (std::size_t i = 0; i < grid.cells; ++i) {
        sol.cells[i] = profile.at(sol.center(i) + theta0 * grid.dx);
        require_physical(sol.cells[i]);
    }
    return sol;
}

std::vector<WaveFan> interface_fans(const GridSolution& sol, const RiemannSolver& solver) {
    const std::size_t count = interface_count(sol);
    std::vector<WaveFan> fans;
    fans.reserve(count);
    for (std::size_t j = 0; j < count; ++j) {
        const auto [l, r] = interface_cells(sol, j);
        fans.push_back(solver.solve(sol.cells[l], sol.cells[r]));
    }
    return fans;
}

namespace {

GridSolution sample_level(const GridSolution& sol, const std::vector<WaveFan>& fans, double theta,
                          const RiemannSolver& solver, const GridConfig& grid) {
    GridSolution next;
    next.level = sol.level + 1;
    next.time = sol.time + grid.dt;
    next.x_min = sol.x_min;
    next.dx = sol.dx;
    const double xi = theta * grid.dx / grid.dt;
    next.cells.resize(fans.size());
    for (std::size_t j = 0; j < fans.size(); ++j) next.cells[j] = solver.sample(fans[j], xi);
    return next;
}

}  // namespace

GridSolution step(const GridSolution& sol, double theta, const Eos& eos, const GridConfig& grid) {
    if (!(theta >= -1.0 && theta <= 1.0)) throw DomainError("theta must lie in [-1, 1]");
    const RiemannSolver solver(eos);
    return sample_level(sol, interface_fans(sol, solver), theta, solver, grid);
}

double functional_F(const LevelRecord& rec, double V) { return rec.census.alpha + rec.census.beta + V; }

double functional_L(const LevelRecord& rec, double V, double M0) {
    const WaveCensus& c = rec.census;
    return (c.alpha - M0 * c.delta_alpha) + (c.beta - M0 * c.delta_beta) + M0 * c.abs_delta + V;
}

namespace {

void report(RunDiagnostics& diag, MonitorFailure f, bool abort) {
    diag.failures.push_back(f);
    if (abort) throw MonitorViolation(std::move(f), std::make_shared<const RunDiagnostics>(diag));
}

void finalize(RunDiagnostics& diag, const Eos& eos, bool abort) {
    const double a = eos.sound_speed();
    const double diameter = std::hypot(diag.r_max - diag.r_min, diag.s_max - diag.s_min);
    diag.constants = omega_constants(diameter, eos);
    const double M0 = diag.constants.M0;
    for (auto& rec : diag.levels) {
        rec.L = functional_L(rec, diag.V, M0);
        const WaveCensus& c = rec.census;
        rec.L_display = (c.alpha - M0 * c.delta_alpha) + (c.beta - M0 * c.delta_beta) - M0 * c.abs_delta + diag.V;
    }
    if (diag.levels.empty()) return;

    const double F0 = diag.levels.front().F;
    const double L0 = diag.levels.front().L;
    diag.ball_radius = 2.0 * 8.0 * diag.V;
    diag.bound_lnrho = 16.0 * ((1.0 + a * a) / a) * diag.V;
    diag.bound_rapidity = 8.0 * diag.V;
    // M = 0 only when Omega is a point: contacts alone, each new cell copies a neighbour,
    // so the initial Sigma variation bounds every level
    diag.bound_sigma = diag.constants.M > 0.0 ? 2.0 * (4.0 + diag.constants.M) * L0 : diag.levels.front().var_sigma;
    auto tol = [&](double bound) { return 1e-12 * (bound + F0); };

    if (F0 > 2.0 * diag.V + tol(2.0 * diag.V)) report(diag, {0, -1, "F(0) <= 2 Var_rs", F0, 2.0 * diag.V}, abort);
    if (diag.max_ball_distance > diag.ball_radius + tol(diag.ball_radius))
        report(diag, {0, -1, "Omega within ball", diag.max_ball_distance, diag.ball_radius}, abort);

    for (std::size_t n = 0; n < diag.levels.size(); ++n) {
        const LevelRecord& rec = diag.levels[n];
        diag.max_var_lnrho = std::max(diag.max_var_lnrho, rec.var_lnrho);
        diag.max_var_rapidity = std::max(diag.max_var_rapidity, rec.var_rapidity);
        diag.max_var_sigma = std::max(diag.max_var_sigma, rec.var_sigma);
        if (n > 0 && rec.L > diag.levels[n - 1].L + diag.monotone_slack)
            report(diag, {rec.level, -1, "L non-increasing", rec.L, diag.levels[n - 1].L}, abort);
        if (rec.var_rs > 4.0 * rec.F + tol(4.0 * rec.F))
            report(diag, {rec.level, -1, "Var_rs <= 4F", rec.var_rs, 4.0 * rec.F}, abort);
        if (rec.var_lnrho > diag.bound_lnrho + tol(diag.bound_lnrho))
            report(diag, {rec.level, -1, "Var ln(rho) bound", rec.var_lnrho, diag.bound_lnrho}, abort);
        if (rec.var_rapidity > diag.bound_rapidity + tol(diag.bound_rapidity))
            report(diag, {rec.level, -1, "Var rapidity bound", rec.var_rapidity, diag.bound_rapidity}, abort);
        if (rec.var_sigma > diag.bound_sigma + tol(diag.bound_sigma))
            report(diag, {rec.level, -1, "Var Sigma bound", rec.var_sigma, diag.bound_sigma}, abort);
    }
}

}  // namespace

RunResult run(const Profile& profile, const GridConfig& grid, SamplingSequence seq, const Eos& eos,
              const RunOptions& options) {
    validate(grid);
    const std::size_t steps = grid.steps();
    {
        // a sampled discontinuity moves at most dx per step
        const auto [lo, hi] = profile.support();
        const double reach = static_cast<double>(steps + 1) * grid.dx;
        if (lo <= hi && (lo - reach < grid.x_min + 2.0 * grid.dx || hi + reach > grid.x_max - 2.0 * grid.dx))
            throw DomainError("domain too small: waves can reach the boundary before t_end");
    }

    const RiemannSolver solver(eos);
    RunResult result;
    RunDiagnostics& diag = result.diagnostics;
    GridSolution sol = init(profile, grid, seq.next());
    const bool abort = options.abort_on_violation;

    Extent extent;
    {
        const InvariantState left = to_invariants(sol.cells.front(), eos);
        extent.r0 = diag.r_left = left.r;
        extent.s0 = diag.s_left = left.s;
    }

    std::vector<InvariantState> inv;
    for (std::size_t n = 0;; ++n) {
        LevelRecord rec;
        rec.level = sol.level;
        rec.time = sol.time;

        inv.resize(sol.cells.size());
        for (std::size_t i = 0; i < sol.cells.size(); ++i) {
            inv[i] = to_invariants(sol.cells[i], eos);
            extent.add(inv[i]);
            const Vec3 lam = char_speeds(sol.cells[i], eos);
            rec.max_char_speed = std::max({rec.max_char_speed, std::abs(lam[0]), std::abs(lam[2])});
        }
        Extent local;
        for (std::size_t i = 0; i < inv.size(); ++i) local.add(inv[i]);
        rec.r_min = local.r_min;
        rec.r_max = local.r_max;
        rec.s_min = local.s_min;
        rec.s_max = local.s_max;
        for (std::size_t i = 1; i < sol.cells.size(); ++i) {
            rec.var_r += std::abs(inv[i].r - inv[i - 1].r);
            rec.var_s += std::abs(inv[i].s - inv[i - 1].s);
            rec.var_sigma += std::abs(inv[i].sigma - inv[i - 1].sigma);
            rec.var_lnrho += std::abs(std::log(sol.cells[i].rho) - std::log(sol.cells[i - 1].rho));
            rec.var_rapidity += std::abs(rapidity(sol.cells[i].v) - rapidity(sol.cells[i - 1].v));
        }
        rec.var_rs = rec.var_r + rec.var_s;
        if (n == 0) {
            diag.V = rec.var_rs;
            diag.V_full = rec.var_rs + rec.var_sigma;
        }
        if (!(rec.max_char_speed < 1.0 && grid.dx / grid.dt > 1.0))
            report(diag, {rec.level, -1, "CFL", rec.max_char_speed, 1.0}, abort);

        const std::vector<WaveFan> fans = interface_fans(sol, solver);
        for (const WaveFan& fan : fans) {
            rec.census.add(wave_strengths(fan));
            if (fan.eps1 != 0.0 || fan.eps3 != 0.0) extent.add(fan.mid_left_inv);
        }
        rec.F = functional_F(rec, diag.V);
        if (n == 0) diag.monotone_slack = 1e-12 * rec.F;
        if (n > 0 && rec.F > diag.levels.back().F + diag.monotone_slack)
            report(diag, {rec.level, -1, "F non-increasing", rec.F, diag.levels.back().F}, abort);
        diag.levels.push_back(rec);

        if (options.on_level) options.on_level(sol);
        const bool last = n == steps;
        if (n == 0 || last || (options.keep_stride > 0 && n % options.keep_stride == 0))
            result.trajectory.push_back(sol);
        if (last) break;

        GridSolution next = sample_level(sol, fans, seq.next(), solver, grid);
        for (std::size_t i = 0; i < next.cells.size(); ++i)
            if (!is_physical(next.cells[i]))
                report(diag, {next.level, static_cast<long>(i), "state validity", next.cells[i].rho, 0.0}, abort);
        sol = std::move(next);
    }

    diag.r_min = extent.r_min;
    diag.r_max = extent.r_max;
    diag.s_min = extent.s_min;
    diag.s_max = extent.s_max;
    diag.max_ball_distance = extent.max_distance;
    finalize(diag, eos, abort);
    return result;
}

}  // namespace urel
