#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "urel/eos.hpp"
#include "urel/riemann.hpp"
#include "urel/states.hpp"
#include "urel/wavecurves.hpp"

namespace urel {

// <L,M> + <M,R> -> <L,R>.
struct InteractionReport {
    PrimitiveState left, middle, right;
    WaveStrengths first, second, merged;
    double A = 0.0;  // alpha' - alpha1 - alpha2
    double B = 0.0;  // beta' - beta1 - beta2
    double E = 0.0;  // entropy combination
    double net_entropy_residual = 0.0;
    double scale = 1.0;  // 1 + total strength, sets the verdict tolerance
    std::string topology;
    InvariantState merged_middle;  // middle state of <L,R>
};

InteractionReport interact(const PrimitiveState& left, const PrimitiveState& middle, const PrimitiveState& right,
                           const RiemannSolver& solver);
InteractionReport interact(const PrimitiveState& left, const PrimitiveState& middle, const PrimitiveState& right,
                           const Eos& eos);

double interaction_tolerance(const InteractionReport& report);
// Largest slack over the admissible alternatives; negative means violated.
double interaction_margin(const InteractionReport& report, double C0);
double entropy_margin(const InteractionReport& report, double M);
bool check_interaction_estimate(const InteractionReport& report, double C0);
bool check_entropy_estimate(const InteractionReport& report, double M);

// Waves present in a fan, e.g. "1S+C+3R"; "0" when empty.
std::string fan_topology(const WaveStrengths& w);

struct SweepConfig {
    double r_min = -2.0, r_max = 2.0, s_min = -2.0, s_max = 2.0;
    double sigma_max = 2.0;       // largest shock amplitude |d ln rho|
    double contact_max = 0.5;     // largest |delta| of generated contacts
    double sigma_lo = 2.0, sigma_hi = 3.0;  // range of Sigma at the left state
    std::size_t count = 10000;
    std::uint64_t seed = 1;
    unsigned threads = 1;
};

struct SweepSample {
    std::size_t index = 0;
    InteractionReport report;
    double interaction_margin = 0.0;
    double entropy_margin = 0.0;
    bool interaction_ok = true;
    bool entropy_ok = true;
};

struct SweepStats {
    std::size_t count = 0;
    std::size_t interaction_violations = 0;
    std::size_t entropy_violations = 0;
    std::size_t rejected_draws = 0;
    double min_interaction_margin = 0.0;
    double min_entropy_margin = 0.0;
    double max_net_entropy_residual = 0.0;
    OmegaConstants constants;
    std::map<std::string, std::size_t> topologies;
    std::vector<SweepSample> samples;  // filled when requested
};

SweepStats random_sweep(const SweepConfig& config, const Eos& eos, bool keep_samples = false);

struct CuratedCase {
    std::string label;  // e.g. "1S|3R"
    InteractionReport report;
};

// Every (family, kind) x (family, kind) pair of single incoming waves, at each
// combination of the given amplitudes (shock sigma; rarefactions of equal strength).
std::vector<CuratedCase> curated_suite(const Eos& eos, const std::vector<double>& amplitudes = {0.05, 0.4, 1.2});

// Constants of the (r, s) bounding box of every state met in the given reports.
OmegaConstants enclosing_constants(const std::vector<CuratedCase>& cases, const Eos& eos);

// Composes 1-wave (eps1), contact (delta), 3-wave (eps3) from `from` along exact wave curves.
PrimitiveState compose_fan(const PrimitiveState& from, double eps1, double delta, double eps3,
                           const RiemannSolver& solver);

}  // namespace urel
