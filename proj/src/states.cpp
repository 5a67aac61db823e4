#include "urel/states.hpp"

#include <cmath>
#include <sstream>

#include "urel/errors.hpp"

namespace urel {

bool is_physical(const PrimitiveState& p) {
    return std::isfinite(p.rho) && p.rho > 0.0 && std::isfinite(p.v) && std::abs(p.v) < 1.0 &&
           std::isfinite(p.S) && p.S > 0.0;
}

void require_physical(const PrimitiveState& p) {
    if (is_physical(p)) return;
    std::ostringstream os;
    os.precision(17);
    os << "unphysical state (rho=" << p.rho << ", v=" << p.v << ", S=" << p.S << ")";
    throw DomainError(os.str());
}

double rapidity(double v) { return 0.5 * std::log1p(2.0 * v / (1.0 - v)); }

double invariant_coupling(const Eos& eos) {
    const double a = eos.sound_speed();
    return a / (1.0 + a * a);
}

double number_density(const PrimitiveState& p, const Eos& eos) { return eos.number_density(p.rho, p.S); }

double temperature(const PrimitiveState& p, const Eos& eos) {
    return eos.temperature(number_density(p, eos), p.S);
}

ConservedState to_conserved(const PrimitiveState& p, const Eos& eos) {
    require_physical(p);
    const double a2 = eos.sound_speed_squared();
    const double w = 1.0 / (1.0 - p.v * p.v);
    const double h = (1.0 + a2) * p.rho;
    return {number_density(p, eos) * std::sqrt(w), h * p.v * w, h * p.v * p.v * w + p.rho};
}

Vec3 flux(const PrimitiveState& p, const Eos& eos) {
    require_physical(p);
    const double a2 = eos.sound_speed_squared();
    const double w = 1.0 / (1.0 - p.v * p.v);
    const double h = (1.0 + a2) * p.rho;
    return {number_density(p, eos) * p.v * std::sqrt(w), h * p.v * p.v * w + a2 * p.rho, h * p.v * w};
}

PrimitiveState to_primitive(const ConservedState& c, const Eos& eos) {
    if (!(c.number > 0.0) || !(c.energy > 0.0) || !(std::abs(c.momentum) < c.energy) ||
        !std::isfinite(c.number) || !std::isfinite(c.energy)) {
        std::ostringstream os;
        os.precision(17);
        os << "conserved state (" << c.number << ", " << c.momentum << ", " << c.energy
           << ") has no preimage with |v| < 1";
        throw DecodeError(os.str());
    }
    const double a2 = eos.sound_speed_squared();
    const double q = c.momentum / c.energy;
    double v = 0.0;
    if (std::abs(q) >= 1e-14) {
        // root of a^2 q v^2 - (1+a^2) v + q = 0 with |v| < 1, rationalised
        const double b = 1.0 + a2;
        v = 2.0 * q / (b + std::sqrt(b * b - 4.0 * a2 * q * q));
    }
    const double w = 1.0 / (1.0 - v * v);
    PrimitiveState p;
    p.v = v;
    p.rho = c.energy / ((1.0 + a2) * v * v * w + 1.0);
    p.S = eos.entropy_from_rho_n(p.rho, c.number * std::sqrt(1.0 - v * v));
    if (!is_physical(p)) throw DecodeError("decoded state is unphysical");
    return p;
}

InvariantState to_invariants(const PrimitiveState& p, const Eos& eos) {
    require_physical(p);
    const double k = invariant_coupling(eos);
    const double phi = rapidity(p.v);
    const double lr = std::log(p.rho);
    return {phi - k * lr, phi + k * lr, eos.sigma_of_entropy(p.S)};
}

PrimitiveState from_invariants(const InvariantState& i, const Eos& eos) {
    const double k = invariant_coupling(eos);
    PrimitiveState p;
    p.v = std::tanh(0.5 * (i.r + i.s));
    p.rho = std::exp((i.s - i.r) / (2.0 * k));
    p.S = eos.entropy_of_sigma(i.sigma);
    require_physical(p);
    return p;
}

Vec3 char_speeds(const PrimitiveState& p, const Eos& eos) {
    require_physical(p);
    const double a = eos.sound_speed();
    return {(p.v - a) / (1.0 - p.v * a), p.v, (p.v + a) / (1.0 + p.v * a)};
}

std::array<CharacteristicField, 3> char_fields(const PrimitiveState& p, const Eos& eos) {
    const Vec3 lam = char_speeds(p, eos);
    const double a = eos.sound_speed();
    const double a2 = a * a;
    const double v = p.v;
    const double c = (a2 + 1.0) * p.rho / (a * (1.0 - v * v));

    std::array<CharacteristicField, 3> f;
    f[0].speed = lam[0];
    f[0].right_eigenvector = {-c, 1.0, 0.0};
    f[0].speed_gradient = {0.0, (1.0 - a2) / ((1.0 - a * v) * (1.0 - a * v)), 0.0};
    f[1].speed = lam[1];
    f[1].right_eigenvector = {0.0, 0.0, 1.0};
    f[1].speed_gradient = {0.0, 1.0, 0.0};
    f[2].speed = lam[2];
    f[2].right_eigenvector = {c, 1.0, 0.0};
    f[2].speed_gradient = {0.0, (1.0 - a2) / ((1.0 + a * v) * (1.0 + a * v)), 0.0};
    for (auto& field : f) {
        field.nonlinearity = 0.0;
        for (int j = 0; j < 3; ++j) field.nonlinearity += field.right_eigenvector[j] * field.speed_gradient[j];
    }
    return f;
}

double jacobian_det(const PrimitiveState& p, const Eos& eos) {
    require_physical(p);
    const double n = number_density(p, eos);
    const double T = eos.temperature(n, p.S);
    const double a2 = eos.sound_speed_squared();
    const double g = 1.0 - p.v * p.v;
    // dU1/dS carries the Lorentz factor, hence the 5/2 power
    return n * n * T * (1.0 - a2 * p.v * p.v) / (g * g * std::sqrt(g));
}

}  // namespace urel
