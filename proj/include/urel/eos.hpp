#pragma once

#include <memory>
#include <vector>

namespace urel {

enum class EosFamily { polytropic, radiation, tabulated };

inline constexpr double kRadiationConstant = 7.56e-15;

// eps(n, S) = A(S) n^(gamma-1) with the ultra-relativistic closure rho = n eps,
// hence p = (gamma-1) rho. Sigma = ln A(S) is the entropy coordinate.
class Eos {
public:
    static Eos polytropic(double gamma, double gas_constant = 1.0);
    static Eos radiation(double gamma, double radiation_constant = kRadiationConstant);
    // Monotone cubic through (S_i, A_i); both columns strictly increasing, S_0 > 0.
    static Eos tabulated(double gamma, std::vector<double> entropy, std::vector<double> coefficient);

    EosFamily family() const { return family_; }
    double gamma() const { return gamma_; }
    double sound_speed() const { return a_; }
    double sound_speed_squared() const { return gamma_ - 1.0; }
    // Constant of the family: R (polytropic), a_R (radiation), 0 for tables.
    double family_constant() const { return constant_; }

    double pressure(double rho) const;

    double coefficient(double S) const;             // A(S)
    double coefficient_derivative(double S) const;  // A'(S)
    double sigma_of_entropy(double S) const;
    double entropy_of_sigma(double sigma) const;
    // S with A(S) = rho / n^gamma.
    double entropy_from_rho_n(double rho, double n) const;

    double number_density(double rho, double S) const;
    double internal_energy(double n, double S) const;
    double temperature(double n, double S) const;

    // Sigma interval covered by a table; the whole real line otherwise
    // (polytropic: Sigma > 0).
    double sigma_min() const;
    double sigma_max() const;

private:
    struct Table;

    Eos(EosFamily family, double gamma, double constant);

    EosFamily family_;
    double gamma_;
    double a_;
    double constant_;
    std::shared_ptr<const Table> table_;
};

}  // namespace urel
