#include <doctest.h>

#include <cmath>

#include "urel/eos.hpp"
#include "urel/errors.hpp"

using namespace urel;

TEST_CASE("polytropic closure") {
    const Eos eos = Eos::polytropic(4.0 / 3.0, 2.0);
    CHECK(eos.sound_speed() == doctest::Approx(std::sqrt(1.0 / 3.0)));
    CHECK(eos.pressure(3.0) == doctest::Approx(1.0));
    // A(S) = exp((gamma-1) S / R)
    CHECK(eos.coefficient(1.5) == doctest::Approx(std::exp(0.25)));
    CHECK(eos.sigma_of_entropy(1.5) == doctest::Approx(0.25));
    CHECK(eos.entropy_of_sigma(0.25) == doctest::Approx(1.5));
    CHECK_THROWS_AS(eos.entropy_of_sigma(-0.1), RangeError);
    CHECK_THROWS_AS(eos.coefficient(-1.0), DomainError);
}

TEST_CASE("radiation closure") {
    const double g = 4.0 / 3.0;
    const Eos eos = Eos::radiation(g, 2.0);
    const double S = 3.0;
    CHECK(eos.coefficient(S) == doctest::Approx(2.0 * std::pow(S / (g * 2.0), g)));
    CHECK(eos.sigma_of_entropy(S) == doctest::Approx(std::log(eos.coefficient(S))).epsilon(1e-13));
    CHECK(eos.entropy_of_sigma(eos.sigma_of_entropy(S)) == doctest::Approx(S).epsilon(1e-14));
    // Sigma is unbounded below for this family
    CHECK(eos.entropy_of_sigma(-30.0) > 0.0);
    CHECK(Eos::radiation(g).family_constant() == kRadiationConstant);
}

TEST_CASE("gamma outside (1, 2) is rejected") {
    CHECK_THROWS_AS(Eos::polytropic(1.0), DomainError);
    CHECK_THROWS_AS(Eos::polytropic(2.0), DomainError);
    CHECK_THROWS_AS(Eos::radiation(0.5), DomainError);
}

TEST_CASE("temperature is dE/dS at fixed n") {
    for (const Eos& eos : {Eos::polytropic(1.4), Eos::radiation(1.6, 0.3)}) {
        for (double n : {0.1, 1.0, 7.0}) {
            for (double S : {0.5, 1.0, 2.5}) {
                const double h = 1e-5 * S;
                const double fd = (eos.internal_energy(n, S + h) - eos.internal_energy(n, S - h)) / (2.0 * h);
                CHECK(eos.temperature(n, S) == doctest::Approx(fd).epsilon(1e-8));
            }
        }
    }
}

TEST_CASE("number density and entropy are mutually inverse") {
    const Eos eos = Eos::radiation(1.25, 0.7);
    for (double rho : {1e-3, 0.4, 12.0}) {
        for (double S : {0.2, 1.0, 6.0}) {
            const double n = eos.number_density(rho, S);
            CHECK(eos.entropy_from_rho_n(rho, n) == doctest::Approx(S).epsilon(1e-13));
            // rho = A(S) n^gamma
            CHECK(eos.coefficient(S) * std::pow(n, eos.gamma()) == doctest::Approx(rho).epsilon(1e-13));
        }
    }
}

TEST_CASE("tabulated closure") {
    std::vector<double> S{0.5, 1.0, 1.5, 2.0, 3.0, 4.0};
    std::vector<double> A;
    for (double s : S) A.push_back(std::exp(0.4 * s));
    const Eos eos = Eos::tabulated(1.4, S, A);

    SUBCASE("interpolates nodes and stays monotone") {
        for (std::size_t i = 0; i < S.size(); ++i) CHECK(eos.coefficient(S[i]) == doctest::Approx(A[i]));
        double prev = 0.0;
        for (double s = 0.5; s <= 4.0; s += 0.01) {
            const double a = eos.coefficient(s);
            CHECK(a > prev);
            CHECK(eos.coefficient_derivative(s) > 0.0);
            prev = a;
        }
        CHECK(eos.coefficient(2.5) == doctest::Approx(std::exp(1.0)).epsilon(2e-3));
    }
    SUBCASE("inverse") {
        for (double s : {0.5, 0.77, 2.2, 3.9, 4.0})
            CHECK(eos.entropy_of_sigma(eos.sigma_of_entropy(s)) == doctest::Approx(s).epsilon(1e-12));
        CHECK(eos.sigma_min() == doctest::Approx(0.2));
        CHECK(eos.sigma_max() == doctest::Approx(1.6));
        CHECK_THROWS_AS(eos.entropy_of_sigma(1.7), RangeError);
        CHECK_THROWS_AS(eos.coefficient(4.5), DomainError);
    }
    SUBCASE("malformed tables") {
        CHECK_THROWS_AS(Eos::tabulated(1.4, {1, 2, 3}, {1, 2, 3}), DomainError);
        CHECK_THROWS_AS(Eos::tabulated(1.4, {1, 2, 2, 3}, {1, 2, 3, 4}), DomainError);
        CHECK_THROWS_AS(Eos::tabulated(1.4, {1, 2, 3, 4}, {1, 3, 2, 4}), DomainError);
        CHECK_THROWS_AS(Eos::tabulated(1.4, {1, 2, 3, 4}, {1, 2, 3}), DomainError);
    }
}
