#include "urel/eos.hpp"

#include <cmath>
// boost 1.74 pchip calls isnan unqualified
using std::isnan;
#include <boost/math/interpolators/pchip.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <string>

#include "urel/errors.hpp"

namespace urel {

struct Eos::Table {
    std::vector<double> entropy;
    std::vector<double> coefficient;
    boost::math::interpolators::pchip<std::vector<double>> spline;

    Table(std::vector<double> s, std::vector<double> a)
        : entropy(s), coefficient(a), spline(make_spline(std::move(s), std::move(a))) {}

    static boost::math::interpolators::pchip<std::vector<double>> make_spline(std::vector<double> s,
                                                                               std::vector<double> a) {
        // one-sided secants at the ends keep A' > 0 up to the table edges
        const std::size_t n = s.size();
        const double left = (a[1] - a[0]) / (s[1] - s[0]);
        const double right = (a[n - 1] - a[n - 2]) / (s[n - 1] - s[n - 2]);
        return {std::move(s), std::move(a), left, right};
    }

    double s_min() const { return entropy.front(); }
    double s_max() const { return entropy.back(); }
};

namespace {

void require_gamma(double gamma) {
    if (!(gamma > 1.0 && gamma < 2.0))
        throw DomainError("gamma must lie in (1, 2), got " + std::to_string(gamma));
}

void require_positive(double x, const char* what) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(what) + " must be positive and finite, got " + std::to_string(x));
}

}  // namespace

Eos::Eos(EosFamily family, double gamma, double constant)
    : family_(family), gamma_(gamma), a_(std::sqrt(gamma - 1.0)), constant_(constant) {}

Eos Eos::polytropic(double gamma, double gas_constant) {
    require_gamma(gamma);
    require_positive(gas_constant, "gas constant R");
    return Eos(EosFamily::polytropic, gamma, gas_constant);
}

Eos Eos::radiation(double gamma, double radiation_constant) {
    require_gamma(gamma);
    require_positive(radiation_constant, "radiation constant a_R");
    return Eos(EosFamily::radiation, gamma, radiation_constant);
}

Eos Eos::tabulated(double gamma, std::vector<double> entropy, std::vector<double> coefficient) {
    require_gamma(gamma);
    if (entropy.size() != coefficient.size())
        throw DomainError("entropy table and coefficient table differ in length");
    if (entropy.size() < 4) throw DomainError("a tabulated EOS needs at least four (S, A) pairs");
    require_positive(entropy.front(), "first tabulated entropy");
    for (std::size_t i = 0; i < entropy.size(); ++i) {
        require_positive(coefficient[i], "tabulated A(S)");
        if (i > 0 && !(entropy[i] > entropy[i - 1]))
            throw DomainError("tabulated entropies must be strictly increasing");
        if (i > 0 && !(coefficient[i] > coefficient[i - 1]))
            throw DomainError("tabulated A(S) must be strictly increasing");
    }
    Eos eos(EosFamily::tabulated, gamma, 0.0);
    eos.table_ = std::make_shared<const Table>(std::move(entropy), std::move(coefficient));
    return eos;
}

double Eos::pressure(double rho) const {
    require_positive(rho, "rho");
    return (gamma_ - 1.0) * rho;
}

double Eos::coefficient(double S) const {
    require_positive(S, "entropy S");
    switch (family_) {
        case EosFamily::polytropic:
            return std::exp((gamma_ - 1.0) / constant_ * S);
        case EosFamily::radiation:
            return constant_ * std::pow(S / (gamma_ * constant_), gamma_);
        case EosFamily::tabulated:
            if (S < table_->s_min() || S > table_->s_max())
                throw DomainError("entropy " + std::to_string(S) + " outside the tabulated range");
            return table_->spline(S);
    }
    return 0.0;
}

double Eos::coefficient_derivative(double S) const {
    require_positive(S, "entropy S");
    switch (family_) {
        case EosFamily::polytropic:
            return (gamma_ - 1.0) / constant_ * std::exp((gamma_ - 1.0) / constant_ * S);
        case EosFamily::radiation:
            return std::pow(S / (gamma_ * constant_), gamma_ - 1.0);
        case EosFamily::tabulated:
            if (S < table_->s_min() || S > table_->s_max())
                throw DomainError("entropy " + std::to_string(S) + " outside the tabulated range");
            return table_->spline.prime(S);
    }
    return 0.0;
}

double Eos::sigma_of_entropy(double S) const {
    require_positive(S, "entropy S");
    switch (family_) {
        case EosFamily::polytropic:
            return (gamma_ - 1.0) / constant_ * S;
        case EosFamily::radiation:
            return gamma_ * std::log(S / (gamma_ * std::pow(constant_, (gamma_ - 1.0) / gamma_)));
        case EosFamily::tabulated:
            return std::log(coefficient(S));
    }
    return 0.0;
}

double Eos::entropy_of_sigma(double sigma) const {
    if (!std::isfinite(sigma)) throw RangeError("Sigma must be finite");
    switch (family_) {
        case EosFamily::polytropic:
            if (!(sigma > 0.0))
                throw RangeError("polytropic Sigma must be positive (S > 0), got " + std::to_string(sigma));
            return constant_ / (gamma_ - 1.0) * sigma;
        case EosFamily::radiation:
            return gamma_ * std::pow(constant_, (gamma_ - 1.0) / gamma_) * std::exp(sigma / gamma_);
        case EosFamily::tabulated: {
            const double target = std::exp(sigma);
            const auto& t = *table_;
            if (target < t.coefficient.front() || target > t.coefficient.back())
                throw RangeError("Sigma " + std::to_string(sigma) + " outside the tabulated range");
            if (target == t.coefficient.front()) return t.s_min();
            if (target == t.coefficient.back()) return t.s_max();
            std::uintmax_t iterations = 200;
            auto f = [&](double S) { return t.spline(S) - target; };
            auto [lo, hi] = boost::math::tools::toms748_solve(f, t.s_min(), t.s_max(),
                                                              boost::math::tools::eps_tolerance<double>(52),
                                                              iterations);
            return 0.5 * (lo + hi);
        }
    }
    return 0.0;
}

double Eos::entropy_from_rho_n(double rho, double n) const {
    require_positive(rho, "rho");
    require_positive(n, "number density n");
    const double log_ratio = std::log(rho) - gamma_ * std::log(n);
    return entropy_of_sigma(log_ratio);
}

double Eos::number_density(double rho, double S) const {
    require_positive(rho, "rho");
    return std::exp((std::log(rho) - sigma_of_entropy(S)) / gamma_);
}

double Eos::internal_energy(double n, double S) const {
    require_positive(n, "number density n");
    return coefficient(S) * std::pow(n, gamma_ - 1.0);
}

double Eos::temperature(double n, double S) const {
    require_positive(n, "number density n");
    return coefficient_derivative(S) * std::pow(n, gamma_ - 1.0);
}

double Eos::sigma_min() const {
    switch (family_) {
        case EosFamily::polytropic: return 0.0;
        case EosFamily::radiation: return -HUGE_VAL;
        case EosFamily::tabulated: return std::log(table_->coefficient.front());
    }
    return 0.0;
}

double Eos::sigma_max() const {
    if (family_ == EosFamily::tabulated) return std::log(table_->coefficient.back());
    return HUGE_VAL;
}

}  // namespace urel
