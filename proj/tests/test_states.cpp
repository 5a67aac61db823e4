#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "urel/errors.hpp"
#include "urel/states.hpp"

using namespace urel;

namespace {

PrimitiveState random_state(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> lr(std::log(0.1), std::log(10.0)), v(-0.95, 0.95), S(0.3, 3.0);
    return {std::exp(lr(rng)), v(rng), S(rng)};
}

}  // namespace

TEST_CASE("conserved variables and flux match the direct formulas") {
    std::mt19937_64 rng(11);
    const Eos eos = Eos::polytropic(1.5);
    for (int i = 0; i < 200; ++i) {
        const PrimitiveState p = random_state(rng);
        const auto ref = oracle::conserved(p, eos);
        const ConservedState c = to_conserved(p, eos);
        const Vec3 f = flux(p, eos);
        CHECK(c.number == doctest::Approx(ref.U1).epsilon(1e-14));
        CHECK(c.momentum == doctest::Approx(ref.U2).epsilon(1e-14));
        CHECK(c.energy == doctest::Approx(ref.U3).epsilon(1e-14));
        CHECK(f[0] == doctest::Approx(ref.F1).epsilon(1e-14));
        CHECK(f[1] == doctest::Approx(ref.F2).epsilon(1e-14));
        CHECK(f[2] == doctest::Approx(ref.F3).epsilon(1e-14));
    }
}

TEST_CASE("to_primitive inverts to_conserved") {
    std::mt19937_64 rng(12);
    for (const Eos& eos : {Eos::polytropic(4.0 / 3.0), Eos::radiation(1.1, 1.0), Eos::polytropic(1.9)}) {
        for (int i = 0; i < 300; ++i) {
            const PrimitiveState p = random_state(rng);
            const PrimitiveState q = to_primitive(to_conserved(p, eos), eos);
            CHECK(q.rho == doctest::Approx(p.rho).epsilon(1e-12));
            CHECK(q.v == doctest::Approx(p.v).epsilon(1e-12));
            CHECK(q.S == doctest::Approx(p.S).epsilon(1e-11));
        }
    }
    const Eos eos = Eos::polytropic(4.0 / 3.0);
    const PrimitiveState rest{2.0, 0.0, 1.0};
    CHECK(to_primitive(to_conserved(rest, eos), eos).v == 0.0);
    const PrimitiveState fast{1.0, 0.999999, 1.0};
    CHECK(to_primitive(to_conserved(fast, eos), eos).v == doctest::Approx(0.999999).epsilon(1e-12));
}

TEST_CASE("undecodable conserved states") {
    const Eos eos = Eos::polytropic(4.0 / 3.0);
    CHECK_THROWS_AS(to_primitive({1.0, 2.0, 1.0}, eos), DecodeError);
    CHECK_THROWS_AS(to_primitive({-1.0, 0.0, 1.0}, eos), DecodeError);
    CHECK_THROWS_AS(to_primitive({1.0, 0.0, 0.0}, eos), DecodeError);
    CHECK_THROWS_AS(to_primitive({1.0, 1.0, 1.0}, eos), DecodeError);
    CHECK_THROWS_AS(to_conserved({1.0, 1.0, 1.0}, eos), DomainError);
    CHECK_THROWS_AS(to_conserved({0.0, 0.1, 1.0}, eos), DomainError);
}

TEST_CASE("invariants round trip") {
    std::mt19937_64 rng(13);
    const Eos eos = Eos::radiation(4.0 / 3.0, 0.5);
    for (int i = 0; i < 200; ++i) {
        const PrimitiveState p = random_state(rng);
        const InvariantState inv = to_invariants(p, eos);
        const double k = invariant_coupling(eos);
        CHECK(inv.r == doctest::Approx(std::atanh(p.v) - k * std::log(p.rho)).epsilon(1e-13));
        CHECK(inv.s == doctest::Approx(std::atanh(p.v) + k * std::log(p.rho)).epsilon(1e-13));
        const PrimitiveState q = from_invariants(inv, eos);
        CHECK(q.rho == doctest::Approx(p.rho).epsilon(1e-13));
        CHECK(q.v == doctest::Approx(p.v).epsilon(1e-13));
        CHECK(q.S == doctest::Approx(p.S).epsilon(1e-13));
    }
    CHECK(rapidity(0.0) == 0.0);
    CHECK(rapidity(-0.5) == doctest::Approx(std::atanh(-0.5)));
}

TEST_CASE("characteristic fields diagonalise the numerical flux Jacobian") {
    std::mt19937_64 rng(14);
    const Eos eos = Eos::polytropic(1.4);
    using Arr = std::array<double, 3>;
    auto U = [&](Arr w) {
        const auto c = to_conserved({w[0], w[1], w[2]}, eos);
        return Arr{c.number, c.momentum, c.energy};
    };
    auto F = [&](Arr w) { return flux({w[0], w[1], w[2]}, eos); };
    for (int t = 0; t < 40; ++t) {
        const PrimitiveState p = random_state(rng);
        const Arr w{p.rho, p.v, p.S}, h{1e-6 * p.rho, 1e-6, 1e-6 * p.S};
        const auto dU = oracle::jacobian(U, w, h), dF = oracle::jacobian(F, w, h);
        const auto fields = char_fields(p, eos);
        for (const auto& f : fields) {
            // dF R = lambda dU R
            for (int r = 0; r < 3; ++r) {
                double lhs = 0.0, rhs = 0.0;
                for (int c = 0; c < 3; ++c) {
                    lhs += dF[r][c] * f.right_eigenvector[c];
                    rhs += f.speed * dU[r][c] * f.right_eigenvector[c];
                }
                CHECK(oracle::relerr(lhs, rhs) < 1e-6);
            }
        }
        // speed gradient and genuine nonlinearity of the acoustic fields
        for (int i : {0, 2}) {
            auto lam = [&](Arr x) { return char_speeds({x[0], x[1], x[2]}, eos)[i]; };
            for (int c = 0; c < 3; ++c) {
                Arr xp = w, xm = w;
                xp[c] += h[c];
                xm[c] -= h[c];
                CHECK(fields[i].speed_gradient[c] == doctest::Approx((lam(xp) - lam(xm)) / (2 * h[c])).epsilon(1e-6));
            }
            CHECK(std::abs(fields[i].nonlinearity) > 0.0);
        }
        CHECK(fields[1].nonlinearity == 0.0);
        const Vec3 lam = char_speeds(p, eos);
        CHECK(lam[0] < lam[1]);
        CHECK(lam[1] < lam[2]);
    }
}

TEST_CASE("Jacobian determinant of (rho, v, S) -> U") {
    std::mt19937_64 rng(15);
    using Arr = std::array<double, 3>;
    for (const Eos& eos : {Eos::polytropic(4.0 / 3.0), Eos::radiation(1.7, 2.0)}) {
        auto U = [&](Arr w) {
            const auto c = to_conserved({w[0], w[1], w[2]}, eos);
            return Arr{c.number, c.momentum, c.energy};
        };
        for (int t = 0; t < 50; ++t) {
            const PrimitiveState p = random_state(rng);
            const Arr w{p.rho, p.v, p.S}, h{1e-6 * p.rho, 1e-7, 1e-6 * p.S};
            const double fd = oracle::det3(oracle::jacobian(U, w, h));
            CHECK(jacobian_det(p, eos) == doctest::Approx(std::abs(fd)).epsilon(1e-6));
            CHECK(jacobian_det(p, eos) > 0.0);
        }
    }
}
