#include "urel/riemann.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "urel/errors.hpp"

namespace urel {

namespace {

constexpr double kZeroStrength = 1e-13;
constexpr double kTinyShock = 1e-5;

double normalized(double eps) { return std::abs(eps) < kZeroStrength ? 0.0 : eps; }

bool same_state(const PrimitiveState& x, const PrimitiveState& y) {
    return x.rho == y.rho && x.v == y.v && x.S == y.S;
}

Region classify(double e1, double e3) {
    if (e1 >= 0.0) return e3 >= 0.0 ? Region::I : Region::IV;
    return e3 >= 0.0 ? Region::II : Region::III;
}

}  // namespace

const char* region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

const char* wave_kind_name(WaveKind k) {
    switch (k) {
        case WaveKind::none: return "none";
        case WaveKind::shock: return "shock";
        case WaveKind::rarefaction: return "rarefaction";
    }
    return "?";
}

RiemannSolver::RiemannSolver(const Eos& eos) : eos_(eos), geo_(eos) {}

double RiemannSolver::minor_change(double eps) const { return eps < 0.0 ? geo_.cross_at(-eps) : 0.0; }

double RiemannSolver::minor_change_rate(double eps) const { return eps < 0.0 ? geo_.slope_at(-eps) : 0.0; }

// Solves e1 + H(ds - H(e1)) = dr; the left side is increasing with slope in [1 - b^2, 1].
double RiemannSolver::solve_first(double dr, double ds) const {
    auto f = [&](double x) { return x - dr + minor_change(ds - minor_change(x)); };
    double lo = dr;  // H <= 0, so f(dr) <= 0
    const double f_lo = f(lo);
    if (f_lo == 0.0) return lo;

    double step = std::abs(f_lo) + std::numeric_limits<double>::min();
    double hi = dr + step;
    int expansions = 0;
    while (f(hi) < 0.0) {
        step *= 2.0;
        hi = dr + step;
        if (++expansions > 200) throw NumericalError("Riemann solver: could not bracket the 1-wave strength");
    }

    double x = std::clamp(dr - minor_change(ds), lo, hi);
    for (int it = 0; it < 100; ++it) {
        const double fx = f(x);
        if (fx == 0.0) return x;
        if (fx < 0.0) lo = x;
        else hi = x;
        const double y = ds - minor_change(x);
        const double slope = 1.0 - minor_change_rate(y) * minor_change_rate(x);
        double next = x - fx / slope;
        if (!(next >= lo && next <= hi)) next = 0.5 * (lo + hi);
        const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(x), 1e-300);
        if (std::abs(next - x) <= tol || hi - lo <= tol) return next;
        x = next;
    }
    std::ostringstream os;
    os.precision(17);
    os << "Riemann solver: no convergence for dr=" << dr << ", ds=" << ds << " (region "
       << region_name(classify(x, ds - minor_change(x))) << ")";
    throw NumericalError(os.str());
}

WaveFan RiemannSolver::solve(const PrimitiveState& left, const PrimitiveState& right) const {
    require_physical(left);
    require_physical(right);
    WaveFan fan;
    fan.left = left;
    fan.right = right;
    fan.left_inv = to_invariants(left, eos_);
    fan.right_inv = to_invariants(right, eos_);

    if (same_state(left, right)) {
        fan.mid_left = fan.mid_right = left;
        fan.mid_left_inv = fan.mid_right_inv = fan.left_inv;
        fan.contact_speed = left.v;
        fan.wave1 = {WaveKind::none, char_speeds(left, eos_)[0], char_speeds(left, eos_)[0]};
        fan.wave3 = {WaveKind::none, char_speeds(left, eos_)[2], char_speeds(left, eos_)[2]};
        return fan;
    }

    const double dr = fan.right_inv.r - fan.left_inv.r;
    const double ds = fan.right_inv.s - fan.left_inv.s;
    const double e1 = normalized(solve_first(dr, ds));
    const double e3 = normalized(ds - minor_change(e1));
    fan.eps1 = e1;
    fan.eps3 = e3;
    fan.region = classify(e1, e3);

    const double r_mid = fan.left_inv.r + e1;
    const double s_mid = fan.left_inv.s + minor_change(e1);
    fan.residual = std::max(std::abs(r_mid + minor_change(e3) - fan.right_inv.r),
                            std::abs(s_mid + e3 - fan.right_inv.s));

    if (e1 < 0.0) {
        fan.sigma1 = geo_.amplitude(-e1);
        fan.entropy_jump1 = sigma_jump(fan.sigma1, eos_.gamma());
    }
    if (e3 < 0.0) {
        fan.sigma3 = geo_.amplitude(-e3);
        fan.entropy_jump3 = sigma_jump(fan.sigma3, eos_.gamma());
    }

    fan.mid_left_inv = {r_mid, s_mid, fan.left_inv.sigma + fan.entropy_jump1};
    fan.mid_right_inv = {r_mid, s_mid, fan.right_inv.sigma + fan.entropy_jump3};
    fan.eps2 = normalized(fan.mid_right_inv.sigma - fan.mid_left_inv.sigma);

    // zero-strength waves reuse the outer states exactly; rarefactions keep S exactly
    if (e1 == 0.0) {
        fan.mid_left = left;
    } else {
        fan.mid_left = from_invariants(fan.mid_left_inv, eos_);
        if (e1 > 0.0) fan.mid_left.S = left.S;
    }
    if (e3 == 0.0) {
        fan.mid_right = right;
    } else {
        PrimitiveState m = fan.mid_left;
        m.S = e3 > 0.0 ? right.S : eos_.entropy_of_sigma(fan.mid_right_inv.sigma);
        require_physical(m);
        fan.mid_right = m;
    }
    fan.contact_speed = fan.mid_left.v;

    const Vec3 lam_l = char_speeds(left, eos_), lam_ml = char_speeds(fan.mid_left, eos_);
    const Vec3 lam_r = char_speeds(right, eos_), lam_mr = char_speeds(fan.mid_right, eos_);
    if (e1 < 0.0) {
        const double s = fan.sigma1 < kTinyShock ? 0.5 * (lam_l[0] + lam_ml[0])
                                                 : rh_speed(left, fan.mid_left, eos_);
        fan.wave1 = {WaveKind::shock, s, s};
    } else if (e1 > 0.0) {
        fan.wave1 = {WaveKind::rarefaction, lam_l[0], lam_ml[0]};
    } else {
        fan.wave1 = {WaveKind::none, lam_l[0], lam_l[0]};
    }
    if (e3 < 0.0) {
        const double s = fan.sigma3 < kTinyShock ? 0.5 * (lam_mr[2] + lam_r[2])
                                                 : rh_speed(fan.mid_right, right, eos_);
        fan.wave3 = {WaveKind::shock, s, s};
    } else if (e3 > 0.0) {
        fan.wave3 = {WaveKind::rarefaction, lam_mr[2], lam_r[2]};
    } else {
        fan.wave3 = {WaveKind::none, lam_r[2], lam_r[2]};
    }
    return fan;
}

PrimitiveState RiemannSolver::sample(const WaveFan& fan, double xi) const {
    const double a = eos_.sound_speed();
    const double k = invariant_coupling(eos_);

    if (fan.wave1.kind != WaveKind::none) {
        if (xi < fan.wave1.head) return fan.left;
        if (fan.wave1.kind == WaveKind::rarefaction && xi < fan.wave1.tail) {
            const double phi = rapidity((xi + a) / (1.0 + xi * a));
            const double r = 2.0 * phi - fan.left_inv.s;
            PrimitiveState p;
            p.rho = std::exp((fan.left_inv.s - r) / (2.0 * k));
            p.v = std::tanh(phi);
            p.S = fan.left.S;
            return p;
        }
    }
    if (xi < fan.contact_speed) return fan.mid_left;

    switch (fan.wave3.kind) {
        case WaveKind::none:
            return fan.mid_right;
        case WaveKind::shock:
            return xi < fan.wave3.head ? fan.mid_right : fan.right;
        case WaveKind::rarefaction: {
            if (xi < fan.wave3.head) return fan.mid_right;
            if (xi >= fan.wave3.tail) return fan.right;
            const double phi = rapidity((xi - a) / (1.0 - xi * a));
            const double s = 2.0 * phi - fan.right_inv.r;
            PrimitiveState p;
            p.rho = std::exp((s - fan.right_inv.r) / (2.0 * k));
            p.v = std::tanh(phi);
            p.S = fan.right.S;
            return p;
        }
    }
    return fan.right;
}

WaveFan solve(const PrimitiveState& left, const PrimitiveState& right, const Eos& eos) {
    return RiemannSolver(eos).solve(left, right);
}

PrimitiveState sample(const WaveFan& fan, double xi, const Eos& eos) { return RiemannSolver(eos).sample(fan, xi); }

WaveStrengths wave_strengths(const WaveFan& fan) {
    WaveStrengths w;
    w.alpha = std::max(-fan.eps1, 0.0);
    w.mu = std::max(fan.eps1, 0.0);
    w.beta = std::max(-fan.eps3, 0.0);
    w.eta = std::max(fan.eps3, 0.0);
    w.delta = fan.eps2;
    w.delta_alpha = fan.entropy_jump1;
    w.delta_beta = fan.entropy_jump3;
    return w;
}

}  // namespace urel
