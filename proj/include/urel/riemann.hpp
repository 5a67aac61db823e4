#pragma once

#include "urel/eos.hpp"
#include "urel/states.hpp"
#include "urel/wavecurves.hpp"

namespace urel {

enum class WaveKind { none, shock, rarefaction };

// Shock: head == tail == speed. Rarefaction: head is the leading (left) edge.
struct NonlinearWave {
    WaveKind kind = WaveKind::none;
    double head = 0.0;
    double tail = 0.0;
};

// Classification of the right state relative to the left one:
// I 1-rarefaction + 3-rarefaction, II 1-shock + 3-rarefaction,
// III 1-shock + 3-shock, IV 1-rarefaction + 3-shock.
enum class Region { I, II, III, IV };

const char* region_name(Region r);
const char* wave_kind_name(WaveKind k);

struct WaveFan {
    PrimitiveState left, right;
    PrimitiveState mid_left, mid_right;
    InvariantState left_inv, right_inv, mid_left_inv, mid_right_inv;
    double eps1 = 0.0;  // change of r over the 1-wave
    double eps2 = 0.0;  // change of Sigma over the contact
    double eps3 = 0.0;  // change of s over the 3-wave
    double sigma1 = 0.0;  // |d ln rho| over a 1-shock, 0 otherwise
    double sigma3 = 0.0;
    double entropy_jump1 = 0.0;  // delta over the 1-shock
    double entropy_jump3 = 0.0;
    NonlinearWave wave1, wave3;
    double contact_speed = 0.0;
    Region region = Region::I;
    double residual = 0.0;  // of the curve-intersection system in (r, s)
};

struct WaveStrengths {
    double alpha = 0.0;  // 1-shock
    double beta = 0.0;   // 3-shock
    double mu = 0.0;     // 1-rarefaction
    double eta = 0.0;    // 3-rarefaction
    double delta = 0.0;  // contact (signed)
    double delta_alpha = 0.0;  // Sigma jump carried by the 1-shock
    double delta_beta = 0.0;
};

class RiemannSolver {
public:
    explicit RiemannSolver(const Eos& eos);

    const Eos& eos() const { return eos_; }
    const ShockGeometry& geometry() const { return geo_; }

    WaveFan solve(const PrimitiveState& left, const PrimitiveState& right) const;
    // Self-similar solution at xi = x / t; right-continuous at discontinuities.
    PrimitiveState sample(const WaveFan& fan, double xi) const;

    // Minor invariant change across a wave of signed strength eps (0 for rarefactions)
    // and its derivative.
    double minor_change(double eps) const;
    double minor_change_rate(double eps) const;

private:
    double solve_first(double dr, double ds) const;

    Eos eos_;
    ShockGeometry geo_;
};

WaveFan solve(const PrimitiveState& left, const PrimitiveState& right, const Eos& eos);
PrimitiveState sample(const WaveFan& fan, double xi, const Eos& eos);
WaveStrengths wave_strengths(const WaveFan& fan);

}  // namespace urel
