#pragma once

// Reference computations built from the flux definitions alone. They share no
// code with the library beyond the EOS closure and the state structs.

#include <array>
#include <cmath>
#include <functional>
#include <random>

#include "urel/eos.hpp"
#include "urel/states.hpp"

namespace oracle {

using urel::Eos;
using urel::PrimitiveState;

struct Conserved {
    double U1, U2, U3, F1, F2, F3;
};

inline Conserved conserved(double rho, double v, double n, double a2) {
    const double g2 = 1.0 / (1.0 - v * v);
    const double g = std::sqrt(g2);
    const double p = a2 * rho;
    const double w = (rho + p) * g2;
    return {n * g, w * v, w - p, n * g * v, w * v * v + p, w * v};
}

inline Conserved conserved(const PrimitiveState& s, const Eos& eos) {
    return conserved(s.rho, s.v, eos.number_density(s.rho, s.S), eos.sound_speed_squared());
}

inline double bisect(const std::function<double(double)>& f, double lo, double hi, int iters = 200) {
    double flo = f(lo);
    for (int i = 0; i < iters; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Velocity of the unknown side of a shock, given the known side (rho_k, v_k)
// and the unknown density. `above` selects the root with v > v_k.
// Roots of [[F2]][[U3]] - [[U2]]^2 are located by scanning in rapidity.
inline double shock_velocity(double rho_k, double v_k, double rho_x, bool above, double a2, int n = 4000) {
    const Conserved K = conserved(rho_k, v_k, 1.0, a2);
    auto g = [&](double phi) {
        const Conserved X = conserved(rho_x, std::tanh(phi), 1.0, a2);
        const double d2 = X.U2 - K.U2, d3 = X.U3 - K.U3, df = X.F2 - K.F2;
        return (df * d3 - d2 * d2) / (1.0 + std::abs(df * d3) + d2 * d2);
    };
    const double phik = std::atanh(v_k);
    const double span = 12.0;
    double prev = above ? phik + 1e-12 : phik - 1e-12;
    double gprev = g(prev);
    for (int i = 1; i <= n; ++i) {
        const double t = span * std::pow(static_cast<double>(i) / n, 2.0);
        const double phi = above ? phik + t : phik - t;
        const double gv = g(phi);
        if ((gv < 0.0) != (gprev < 0.0)) {
            const double lo = std::min(prev, phi), hi = std::max(prev, phi);
            return std::tanh(bisect(g, lo, hi, 80));
        }
        prev = phi;
        gprev = gv;
    }
    return std::nan("");
}

inline double shock_speed(const Conserved& A, const Conserved& B) {
    return (B.U2 - A.U2) / (B.U3 - A.U3);
}

// Number density behind a shock from conservation of particle number.
inline double shock_number(double rho_k, double v_k, double n_k, double rho_x, double v_x, double a2) {
    const Conserved K = conserved(rho_k, v_k, 1.0, a2);
    const Conserved X = conserved(rho_x, v_x, 1.0, a2);
    const double s = shock_speed(K, X);
    const double gk = 1.0 / std::sqrt(1.0 - v_k * v_k), gx = 1.0 / std::sqrt(1.0 - v_x * v_x);
    return n_k * gk * (v_k - s) / (gx * (v_x - s));
}

// State on the 1-wave curve from `left` (is_left) or on the backward 3-wave
// curve from `right`, at density rho. Rarefaction branch keeps the Riemann
// invariant phi -/+ k ln rho; shock branch solves the jump conditions.
inline PrimitiveState wave_state(const PrimitiveState& known, double rho, bool is_left, const Eos& eos, int scan = 4000) {
    const double a2 = eos.sound_speed_squared();
    const double a = std::sqrt(a2);
    const double k = a / (1.0 + a2);
    const double phik = std::atanh(known.v);
    const double sgn = is_left ? -1.0 : 1.0;
    if (rho <= known.rho) {
        const double phi = phik + sgn * k * std::log(rho / known.rho);
        return {rho, std::tanh(phi), known.S};
    }
    const double v = shock_velocity(known.rho, known.v, rho, !is_left, a2, scan);
    const double nk = eos.number_density(known.rho, known.S);
    const double n = shock_number(known.rho, known.v, nk, rho, v, a2);
    return {rho, v, eos.entropy_from_rho_n(rho, n)};
}

struct RiemannMid {
    double rho = 0.0, v = 0.0, S_left = 0.0, S_right = 0.0;
};

// Brute force: scan ln rho_M on a uniform grid for the velocity crossing,
// then bisect the bracketing cell.
inline RiemannMid riemann(const PrimitiveState& L, const PrimitiveState& R, const Eos& eos, int scan = 4000) {
    auto h = [&](double u) {
        const double rho = std::exp(u);
        return std::atanh(wave_state(L, rho, true, eos, scan).v) - std::atanh(wave_state(R, rho, false, eos, scan).v);
    };
    const double lo = std::log(std::min(L.rho, R.rho)) - 40.0, hi = std::log(std::max(L.rho, R.rho)) + 12.0;
    const int n = 520;
    double prev = lo, hprev = h(lo);
    double root = std::nan("");
    for (int i = 1; i <= n; ++i) {
        const double u = lo + (hi - lo) * i / n;
        const double hv = h(u);
        if ((hv < 0.0) != (hprev < 0.0)) {
            root = bisect(h, prev, u, 64);
            break;
        }
        prev = u;
        hprev = hv;
    }
    const double rho = std::exp(root);
    const PrimitiveState ml = wave_state(L, rho, true, eos, scan), mr = wave_state(R, rho, false, eos, scan);
    return {rho, 0.5 * (ml.v + mr.v), ml.S, mr.S};
}

// Central differences of a vector map R^3 -> R^3.
inline std::array<std::array<double, 3>, 3> jacobian(const std::function<std::array<double, 3>(std::array<double, 3>)>& f,
                                                     std::array<double, 3> x, std::array<double, 3> h) {
    std::array<std::array<double, 3>, 3> J{};
    for (int c = 0; c < 3; ++c) {
        auto xp = x, xm = x;
        xp[c] += h[c];
        xm[c] -= h[c];
        const auto fp = f(xp), fm = f(xm);
        for (int r = 0; r < 3; ++r) J[r][c] = (fp[r] - fm[r]) / (2.0 * h[c]);
    }
    return J;
}

inline double det3(const std::array<std::array<double, 3>, 3>& m) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

inline double relerr(double a, double b) { return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)}); }

}  // namespace oracle

namespace oracle {

// |a - b| <= rel * max(|a|, |b|) + abs
inline bool close(double a, double b, double rel, double abs = 0.0) {
    return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs;
}

}  // namespace oracle
