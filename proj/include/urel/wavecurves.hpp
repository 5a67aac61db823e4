#pragma once

#include "urel/eos.hpp"
#include "urel/states.hpp"

namespace urel {

enum class Family { one, contact, three };

// Point on an i-shock curve based at a left state. sigma = |ln(rho_R / rho_L)|.
// Family one: the right state is denser; family three: the left state is.
// sigma_jump is the (non-negative) jump of Sigma from pre- to post-shock side.
struct ShockPoint {
    double sigma = 0.0;
    PrimitiveState state;
    double speed = 0.0;
    double mass_flux = 0.0;
    double sigma_jump = 0.0;
};

// n / n_L across a shock with rho / rho_L = rho_ratio (Taub adiabat, p = a^2 rho).
double taub_n_ratio(double rho_ratio, const Eos& eos);

// Jump of Sigma across a shock of amplitude sigma, and its first derivative.
double sigma_jump(double sigma, double gamma);
double sigma_jump_rate(double sigma, double gamma);

// |relative velocity| between the two sides of a shock of amplitude sigma.
double shock_relative_velocity(double sigma, double a);

// Shock geometry in the (r, s) plane, identical for every base state.
// Strength omega is the change of the leading invariant (r for 1-shocks,
// s for 3-shocks); the other invariant changes by cross(omega) <= 0.
class ShockGeometry {
public:
    explicit ShockGeometry(const Eos& eos);
    ShockGeometry(double a, double gamma);

    double a() const { return a_; }
    double gamma() const { return gamma_; }

    // atanh of the relative velocity at amplitude sigma.
    double relative_rapidity(double sigma) const;
    double relative_rapidity_rate(double sigma) const;

    double strength(double sigma) const;       // omega(sigma)
    double strength_rate(double sigma) const;  // d omega / d sigma
    double cross(double sigma) const;          // minor invariant change, <= 0
    double cross_rate(double sigma) const;

    double amplitude(double omega) const;      // sigma(omega), inverse of strength
    double cross_at(double omega) const;       // minor change as a function of omega
    double slope_at(double omega) const;       // |d cross / d omega| in [0, slope bound)
    double entropy_jump(double omega) const;   // delta_omega
    double entropy_jump_rate(double omega) const;

private:
    double a_;
    double gamma_;
    double k_;
};

ShockPoint shock_curve(const PrimitiveState& left, Family family, double sigma, const Eos& eos);
PrimitiveState rarefaction_curve(const PrimitiveState& left, Family family, double strength, const Eos& eos);
PrimitiveState contact(const PrimitiveState& left, double delta, const Eos& eos);

struct LaxVerdict {
    bool admissible = false;
    bool degenerate = false;
    double right_slack = 0.0;  // speed - lambda_i(right)
    double left_slack = 0.0;   // lambda_i(left) - speed
};

LaxVerdict lax_check(const PrimitiveState& left, const PrimitiveState& right, double speed, Family family,
                     const Eos& eos);

// ((1 - a) / (1 + a))^2 = (1 - sqrt(2K)) / (1 + sqrt(2K)), K = 2a^2/(1+a^2)^2.
double shock_slope_bound(const Eos& eos);

// Speed fitting s [[U]] = [[F]] in the momentum and energy components.
double rh_speed(const PrimitiveState& left, const PrimitiveState& right, const Eos& eos);
// max_i |s [[U_i]] - [[F_i]]| / (2 max_i(|[[U_i]]|, |[[F_i]]|)), floored at roundoff of the states.
double rh_residual(const PrimitiveState& left, const PrimitiveState& right, double speed, const Eos& eos);

// Constants of a compact set Omega in the (r, s) plane, from its diameter.
struct OmegaConstants {
    double diameter = 0.0;
    double slope = 0.0;       // shock-curve slope at omega = diameter
    double C0 = 0.5;          // max(1/2, slope)
    bool floor_binds = true;  // C0 fixed by the 1/2 floor
    double M_bar = 0.0;       // 2 d(delta)/d(omega) at the diameter
    double M = 0.0;           // M_bar / (1 - C0)
    double M0 = 0.0;          // 1 / (2M), 0 when M = 0
};

OmegaConstants omega_constants(double diameter, const Eos& eos);

}  // namespace urel
