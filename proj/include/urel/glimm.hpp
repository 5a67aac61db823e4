#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "urel/eos.hpp"
#include "urel/errors.hpp"
#include "urel/riemann.hpp"
#include "urel/states.hpp"
#include "urel/wavecurves.hpp"

namespace urel {

// Staggered grid: even levels hold `cells` cells of width 2dx centred at
// x_min + (2i+1)dx, odd levels hold cells + 1 cells centred at x_min + 2i dx.
struct GridConfig {
    double x_min = -1.0;
    double x_max = 1.0;
    std::size_t cells = 100;
    double dx = 0.01;
    double dt = 0.01 / 1.05;
    double t_end = 0.0;

    std::size_t steps() const;
};

GridConfig make_grid(std::size_t cells, double x_min, double x_max, double t_end, double cfl_ratio = 1.05);
void validate(const GridConfig& grid);

enum class SamplingKind { pseudorandom, van_der_corput };

// theta_0, theta_1, ... in [-1, 1].
class SamplingSequence {
public:
    static SamplingSequence pseudorandom(std::uint64_t seed);
    // Scrambled van der Corput: digits of n in base k1 permuted by i -> k2 i mod k1.
    static SamplingSequence van_der_corput(unsigned k1 = 5, unsigned k2 = 3);

    SamplingKind kind() const { return kind_; }
    double next();

private:
    SamplingSequence() = default;

    SamplingKind kind_ = SamplingKind::pseudorandom;
    std::mt19937_64 rng_;
    unsigned k1_ = 5, k2_ = 3;
    std::uint64_t index_ = 1;
};

class Profile {
public:
    static Profile riemann(const PrimitiveState& left, const PrimitiveState& right, double x0 = 0.0);
    // states.size() == breakpoints.size() + 1; breakpoints strictly increasing.
    static Profile piecewise(std::vector<double> breakpoints, std::vector<PrimitiveState> states);
    // Cosine bump of half-width `width` on a constant background.
    // name: "density_bump" (rho), "entropy_bump" (S) or "velocity_bump" (v).
    static Profile smooth(const std::string& name, const PrimitiveState& base, double amplitude, double center,
                          double width);

    PrimitiveState at(double x) const;
    // Interval outside which the data is constant.
    std::pair<double, double> support() const;

private:
    enum class Kind { piecewise, density_bump, entropy_bump, velocity_bump };
    Kind kind_ = Kind::piecewise;
    std::vector<double> breaks_;
    std::vector<PrimitiveState> states_;
    PrimitiveState base_;
    double amplitude_ = 0.0, center_ = 0.0, width_ = 1.0;
};

struct GridSolution {
    std::size_t level = 0;
    double time = 0.0;
    double x_min = 0.0;
    double dx = 0.0;
    std::vector<PrimitiveState> cells;

    double center(std::size_t i) const;
};

enum class Field { r, s, rs, ln_rho, rapidity, sigma, rho, v, S };

double variation(const GridSolution& sol, Field field, const Eos& eos);

struct WaveCensus {
    std::size_t shocks1 = 0, shocks3 = 0, rarefactions1 = 0, rarefactions3 = 0, contacts = 0;
    double alpha = 0.0, beta = 0.0, mu = 0.0, eta = 0.0, abs_delta = 0.0;
    double delta_alpha = 0.0, delta_beta = 0.0;

    void add(const WaveStrengths& w);
};

struct LevelRecord {
    std::size_t level = 0;
    double time = 0.0;
    WaveCensus census;
    double var_r = 0.0, var_s = 0.0, var_rs = 0.0;
    double var_lnrho = 0.0, var_rapidity = 0.0, var_sigma = 0.0;
    double r_min = 0.0, r_max = 0.0, s_min = 0.0, s_max = 0.0;
    double max_char_speed = 0.0;
    double F = 0.0;
    double L = 0.0;          // +M0 sum|delta| (the form the monotonicity argument uses)
    double L_display = 0.0;  // -M0 sum|delta|
};

struct MonitorFailure {
    std::size_t level = 0;
    long cell = -1;
    std::string quantity;
    double value = 0.0;
    double bound = 0.0;

    std::string describe() const;
};

struct RunDiagnostics {
    std::vector<LevelRecord> levels;
    double V = 0.0;       // Var_rs of the initial level
    double V_full = 0.0;  // Var_rs + Var_Sigma of the initial level
    double r_min = 0.0, r_max = 0.0, s_min = 0.0, s_max = 0.0;  // Omega
    double r_left = 0.0, s_left = 0.0;                          // left limit state
    OmegaConstants constants;
    double ball_radius = 0.0;     // 2N, N = 8V
    double max_ball_distance = 0.0;
    double bound_lnrho = 0.0, bound_rapidity = 0.0, bound_sigma = 0.0;
    double max_var_lnrho = 0.0, max_var_rapidity = 0.0, max_var_sigma = 0.0;
    double monotone_slack = 0.0;
    std::vector<MonitorFailure> failures;

    bool ok() const { return failures.empty(); }
};

class MonitorViolation : public Error {
public:
    MonitorViolation(MonitorFailure failure, std::shared_ptr<const RunDiagnostics> diagnostics);

    const MonitorFailure& failure() const { return failure_; }
    const RunDiagnostics& diagnostics() const { return *diagnostics_; }

private:
    MonitorFailure failure_;
    std::shared_ptr<const RunDiagnostics> diagnostics_;
};

struct RunOptions {
    bool abort_on_violation = true;
    // Keep every `keep_stride`-th level in the trajectory (0: first and last only).
    std::size_t keep_stride = 0;
    // Called once per level, in order, before the level is advanced.
    std::function<void(const GridSolution&)> on_level;
};

struct RunResult {
    std::vector<GridSolution> trajectory;
    RunDiagnostics diagnostics;
};

GridSolution init(const Profile& profile, const GridConfig& grid, double theta0);
GridSolution step(const GridSolution& sol, double theta, const Eos& eos, const GridConfig& grid);
// Interface fans of a level (those the next step samples), in cell order.
std::vector<WaveFan> interface_fans(const GridSolution& sol, const RiemannSolver& solver);

RunResult run(const Profile& profile, const GridConfig& grid, SamplingSequence seq, const Eos& eos,
              const RunOptions& options = {});

double functional_F(const LevelRecord& rec, double V);
double functional_L(const LevelRecord& rec, double V, double M0);

}  // namespace urel
