#include "urel/wavecurves.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "urel/errors.hpp"

namespace urel {

namespace {

// below this amplitude the RH fit loses more to cancellation than the
// characteristic average loses to curvature
constexpr double kTinyShock = 1e-5;

void require_amplitude(double sigma) {
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw DomainError("shock amplitude must be finite and >= 0, got " + std::to_string(sigma));
}

int field_index(Family f) { return f == Family::one ? 0 : (f == Family::three ? 2 : 1); }

}  // namespace

double taub_n_ratio(double rho_ratio, const Eos& eos) {
    if (!(rho_ratio > 0.0) || !std::isfinite(rho_ratio))
        throw DomainError("density ratio must be positive, got " + std::to_string(rho_ratio));
    const double a2 = eos.sound_speed_squared();
    return rho_ratio * std::sqrt((1.0 + a2 / rho_ratio) / (1.0 + a2 * rho_ratio));
}

double sigma_jump(double sigma, double gamma) {
    require_amplitude(sigma);
    if (sigma < 1.0) {
        // delta = O(sigma^3): the closed form cancels two O(sigma) terms, the rate does not
        auto rate = [gamma](double t) { return sigma_jump_rate(t, gamma); };
        return boost::math::quadrature::gauss<double, 15>::integrate(rate, 0.0, sigma);
    }
    const double a2 = gamma - 1.0;
    const double y = std::exp(-sigma);
    const double m = -std::expm1(-sigma);
    // (gamma/2) ln((1 + a^2 e^s)/(1 + a^2 e^-s)) - a^2 s, rewritten without overflow
    return 0.5 * (2.0 - gamma) * sigma + 0.5 * gamma * std::log1p(-m * (2.0 - gamma) / (1.0 + a2 * y));
}

double sigma_jump_rate(double sigma, double gamma) {
    require_amplitude(sigma);
    const double a2 = gamma - 1.0;
    const double y = std::exp(-sigma);
    const double m = -std::expm1(-sigma);
    return m * m * (2.0 - gamma) * a2 / (2.0 * (y + a2) * (1.0 + a2 * y));
}

double shock_relative_velocity(double sigma, double a) {
    require_amplitude(sigma);
    const double a2 = a * a;
    const double y = std::exp(-sigma);
    const double m = -std::expm1(-sigma);
    return a * m / std::sqrt((y + a2) * (1.0 + a2 * y));
}

ShockGeometry::ShockGeometry(const Eos& eos) : ShockGeometry(eos.sound_speed(), eos.gamma()) {}

ShockGeometry::ShockGeometry(double a, double gamma) : a_(a), gamma_(gamma), k_(a / (1.0 + a * a)) {}

double ShockGeometry::relative_rapidity(double sigma) const {
    const double a2 = a_ * a_;
    const double y = std::exp(-sigma);
    const double m = -std::expm1(-sigma);
    const double sp = std::sqrt(a2 + (1.0 + a2 * a2) * y + a2 * y * y);
    const double bracket = a_ - (1.0 + a2 * a2 + a2 * (1.0 + y)) / (sp + 1.0 + a2);
    return 0.5 * sigma + std::log1p(m * bracket / (1.0 + a2));
}

double ShockGeometry::relative_rapidity_rate(double sigma) const {
    const double a2 = a_ * a_;
    const double y = std::exp(-sigma);
    const double m = -std::expm1(-sigma);
    const double sp = std::sqrt(a2 + (1.0 + a2 * a2) * y + a2 * y * y);
    return ((2.0 * a2 + (1.0 + a2 * a2) * y) / (2.0 * sp) + a_) / (sp + a_ * m) - 0.5;
}

double ShockGeometry::strength(double sigma) const { return k_ * sigma + relative_rapidity(sigma); }
double ShockGeometry::strength_rate(double sigma) const { return k_ + relative_rapidity_rate(sigma); }
double ShockGeometry::cross(double sigma) const { return k_ * sigma - relative_rapidity(sigma); }
double ShockGeometry::cross_rate(double sigma) const { return k_ - relative_rapidity_rate(sigma); }

double ShockGeometry::amplitude(double omega) const {
    if (!(omega >= 0.0) || !std::isfinite(omega))
        throw DomainError("shock strength must be finite and >= 0, got " + std::to_string(omega));
    if (omega == 0.0) return 0.0;
    // omega' runs from 2k up to k + 1/2, which brackets the root
    double lo = omega / (k_ + 0.5);
    double hi = omega / (2.0 * k_);
    double x = hi;
    for (int it = 0; it < 100; ++it) {
        const double f = strength(x) - omega;
        if (f == 0.0) return x;
        if (f > 0.0) hi = std::min(hi, x);
        else lo = std::max(lo, x);
        double next = x - f / strength_rate(x);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::abs(next - x) <= 2.0 * std::numeric_limits<double>::epsilon() * x) return next;
        x = next;
    }
    return x;
}

double ShockGeometry::cross_at(double omega) const { return cross(amplitude(omega)); }

double ShockGeometry::slope_at(double omega) const {
    const double sigma = amplitude(omega);
    return -cross_rate(sigma) / strength_rate(sigma);
}

double ShockGeometry::entropy_jump(double omega) const { return sigma_jump(amplitude(omega), gamma_); }

double ShockGeometry::entropy_jump_rate(double omega) const {
    const double sigma = amplitude(omega);
    return sigma_jump_rate(sigma, gamma_) / strength_rate(sigma);
}

ShockPoint shock_curve(const PrimitiveState& left, Family family, double sigma, const Eos& eos) {
    require_physical(left);
    require_amplitude(sigma);
    if (family == Family::contact) throw DomainError("the contact field has no shock curve");
    const int idx = field_index(family);

    ShockPoint out;
    out.sigma = sigma;
    const double n_left = number_density(left, eos);
    if (sigma == 0.0) {
        out.state = left;
        out.speed = char_speeds(left, eos)[idx];
        out.mass_flux = n_left / std::sqrt(1.0 - left.v * left.v) * (left.v - out.speed);
        return out;
    }

    const ShockGeometry geo(eos);
    const bool one = family == Family::one;
    const double rho_r = left.rho * std::exp(one ? sigma : -sigma);
    const double rel = geo.relative_rapidity(sigma);
    const double phi_l = rapidity(left.v);
    // the relative rapidity of the two sides is exact in closed form; a root polish on
    // the jump conditions in (v, rho) loses digits once |v| is close to 1
    const double phi_r = phi_l - rel;

    const double taub = taub_n_ratio(std::exp(sigma), eos);
    const double n_r = one ? n_left * taub : n_left / taub;
    PrimitiveState right;
    right.rho = rho_r;
    right.v = std::tanh(phi_r);
    right.S = eos.entropy_from_rho_n(rho_r, n_r);
    require_physical(right);
    out.state = right;

    if (sigma < kTinyShock) {
        out.speed = 0.5 * (char_speeds(left, eos)[idx] + char_speeds(right, eos)[idx]);
    } else {
        out.speed = rh_speed(left, right, eos);
    }
    out.mass_flux = n_left / std::sqrt(1.0 - left.v * left.v) * (left.v - out.speed);
    const double jump = eos.sigma_of_entropy(right.S) - eos.sigma_of_entropy(left.S);
    // roundoff can push a tiny jump below zero
    out.sigma_jump = std::max(0.0, one ? jump : -jump);
    return out;
}

PrimitiveState rarefaction_curve(const PrimitiveState& left, Family family, double strength, const Eos& eos) {
    if (!(strength >= 0.0) || !std::isfinite(strength))
        throw DomainError("rarefaction strength must be finite and >= 0, got " + std::to_string(strength));
    if (family == Family::contact) throw DomainError("the contact field has no rarefaction curve");
    if (strength == 0.0) return left;
    InvariantState inv = to_invariants(left, eos);
    (family == Family::one ? inv.r : inv.s) += strength;
    PrimitiveState out = from_invariants(inv, eos);
    out.S = left.S;
    return out;
}

PrimitiveState contact(const PrimitiveState& left, double delta, const Eos& eos) {
    require_physical(left);
    if (delta == 0.0) return left;
    PrimitiveState out = left;
    out.S = eos.entropy_of_sigma(eos.sigma_of_entropy(left.S) + delta);
    require_physical(out);
    return out;
}

LaxVerdict lax_check(const PrimitiveState& left, const PrimitiveState& right, double speed, Family family,
                     const Eos& eos) {
    const int idx = field_index(family);
    LaxVerdict out;
    out.right_slack = speed - char_speeds(right, eos)[idx];
    out.left_slack = char_speeds(left, eos)[idx] - speed;
    constexpr double tiny = 1e-14;
    out.degenerate = std::abs(out.right_slack) <= tiny && std::abs(out.left_slack) <= tiny;
    out.admissible = !out.degenerate && out.right_slack > 0.0 && out.left_slack > 0.0;
    return out;
}

double shock_slope_bound(const Eos& eos) {
    const double a = eos.sound_speed();
    const double t = (1.0 - a) / (1.0 + a);
    return t * t;
}

double rh_speed(const PrimitiveState& left, const PrimitiveState& right, const Eos& eos) {
    const Vec3 ul = to_conserved(left, eos).as_array(), ur = to_conserved(right, eos).as_array();
    const Vec3 fl = flux(left, eos), fr = flux(right, eos);
    double num = 0.0, den = 0.0;
    for (int i = 1; i < 3; ++i) {
        num += (ur[i] - ul[i]) * (fr[i] - fl[i]);
        den += (ur[i] - ul[i]) * (ur[i] - ul[i]);
    }
    if (den == 0.0) return char_speeds(left, eos)[1];
    return num / den;
}

double rh_residual(const PrimitiveState& left, const PrimitiveState& right, double speed, const Eos& eos) {
    const Vec3 ul = to_conserved(left, eos).as_array(), ur = to_conserved(right, eos).as_array();
    const Vec3 fl = flux(left, eos), fr = flux(right, eos);
    constexpr double eps = std::numeric_limits<double>::epsilon();
    // one scale for all components: a single jump component can vanish by cancellation
    double worst = 0.0, jump = 0.0, size = 0.0;
    for (int i = 0; i < 3; ++i) {
        const double du = ur[i] - ul[i], df = fr[i] - fl[i];
        worst = std::max(worst, std::abs(speed * du - df));
        jump = std::max({jump, std::abs(du), std::abs(df)});
        size = std::max({size, std::abs(ul[i]), std::abs(ur[i]), std::abs(fl[i]), std::abs(fr[i])});
    }
    const double den = 2.0 * jump + eps * size;
    return den > 0.0 ? worst / den : 0.0;
}

OmegaConstants omega_constants(double diameter, const Eos& eos) {
    if (!(diameter >= 0.0) || !std::isfinite(diameter))
        throw DomainError("Omega diameter must be finite and >= 0");
    const ShockGeometry geo(eos);
    OmegaConstants c;
    c.diameter = diameter;
    c.slope = diameter > 0.0 ? geo.slope_at(diameter) : 0.0;
    c.C0 = std::max(0.5, c.slope);
    c.floor_binds = c.slope <= 0.5;
    c.M_bar = diameter > 0.0 ? 2.0 * geo.entropy_jump_rate(diameter) : 0.0;
    c.M = c.M_bar / (1.0 - c.C0);
    c.M0 = c.M > 0.0 ? 1.0 / (2.0 * c.M) : 0.0;
    return c;
}

}  // namespace urel
