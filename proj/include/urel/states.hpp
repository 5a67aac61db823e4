#pragma once

#include <array>

#include "urel/eos.hpp"

namespace urel {

using Vec3 = std::array<double, 3>;

// rho: proper energy density, v: velocity (units of c), S: specific entropy.
struct PrimitiveState {
    double rho = 1.0;
    double v = 0.0;
    double S = 1.0;
};

struct ConservedState {
    double number = 0.0;    // n / sqrt(1 - v^2)
    double momentum = 0.0;  // (rho + p) v / (1 - v^2)
    double energy = 0.0;    // (rho + p) v^2 / (1 - v^2) + rho

    Vec3 as_array() const { return {number, momentum, energy}; }
};

struct InvariantState {
    double r = 0.0;
    double s = 0.0;
    double sigma = 0.0;
};

struct CharacteristicField {
    double speed = 0.0;
    Vec3 right_eigenvector{};  // in (rho, v, S)
    Vec3 speed_gradient{};     // d(lambda)/d(rho, v, S)
    double nonlinearity = 0.0; // R . grad(lambda)
};

bool is_physical(const PrimitiveState& p);
void require_physical(const PrimitiveState& p);

// atanh(v), written to stay accurate as |v| -> 1.
double rapidity(double v);
// a / (1 + a^2): couples ln rho into the invariants r, s.
double invariant_coupling(const Eos& eos);

double number_density(const PrimitiveState& p, const Eos& eos);
double temperature(const PrimitiveState& p, const Eos& eos);

ConservedState to_conserved(const PrimitiveState& p, const Eos& eos);
Vec3 flux(const PrimitiveState& p, const Eos& eos);
PrimitiveState to_primitive(const ConservedState& c, const Eos& eos);

InvariantState to_invariants(const PrimitiveState& p, const Eos& eos);
PrimitiveState from_invariants(const InvariantState& i, const Eos& eos);

Vec3 char_speeds(const PrimitiveState& p, const Eos& eos);
std::array<CharacteristicField, 3> char_fields(const PrimitiveState& p, const Eos& eos);

// det d(U1,U2,U3)/d(rho,v,S).
double jacobian_det(const PrimitiveState& p, const Eos& eos);

}  // namespace urel
