#include "urel/interactions.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "urel/errors.hpp"

namespace urel {

namespace {

constexpr double kTol = 1e-10;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

// Small counter-based stream so every sample is reproducible on its own.
class SampleRng {
public:
    SampleRng(std::uint64_t seed, std::uint64_t index) : state_(splitmix64(seed ^ splitmix64(index))) {}
    double uniform() { return static_cast<double>(splitmix64(state_++) >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::uint64_t state_;
};

double total_strength(const WaveStrengths& w) { return w.alpha + w.beta + w.mu + w.eta + std::abs(w.delta); }

bool inside(const InvariantState& i, const SweepConfig& c) {
    return i.r >= c.r_min && i.r <= c.r_max && i.s >= c.s_min && i.s <= c.s_max;
}

}  // namespace

std::string fan_topology(const WaveStrengths& w) {
    std::string out;
    auto add = [&](const char* tag) {
        if (!out.empty()) out += '+';
        out += tag;
    };
    if (w.alpha > 0.0) add("1S");
    if (w.mu > 0.0) add("1R");
    if (w.delta != 0.0) add("C");
    if (w.beta > 0.0) add("3S");
    if (w.eta > 0.0) add("3R");
    return out.empty() ? "0" : out;
}

InteractionReport interact(const PrimitiveState& left, const PrimitiveState& middle, const PrimitiveState& right,
                           const RiemannSolver& solver) {
    InteractionReport rep;
    rep.left = left;
    rep.middle = middle;
    rep.right = right;
    rep.first = wave_strengths(solver.solve(left, middle));
    rep.second = wave_strengths(solver.solve(middle, right));
    const WaveFan merged = solver.solve(left, right);
    rep.merged = wave_strengths(merged);
    rep.merged_middle = merged.mid_left_inv;
    const WaveStrengths &w1 = rep.first, &w2 = rep.second, &w = rep.merged;
    rep.A = w.alpha - w1.alpha - w2.alpha;
    rep.B = w.beta - w1.beta - w2.beta;
    rep.E = std::abs(w.delta) - std::abs(w1.delta) - std::abs(w2.delta) +
            (w1.delta_alpha + w2.delta_alpha - w.delta_alpha) + (w1.delta_beta + w2.delta_beta - w.delta_beta);
    rep.net_entropy_residual = (w.delta_alpha + w.delta - w.delta_beta) -
                               (w1.delta_alpha + w1.delta - w1.delta_beta + w2.delta_alpha + w2.delta - w2.delta_beta);
    rep.scale = 1.0 + total_strength(w1) + total_strength(w2) + total_strength(w);
    rep.topology = fan_topology(w1) + "|" + fan_topology(w2);
    return rep;
}

InteractionReport interact(const PrimitiveState& left, const PrimitiveState& middle, const PrimitiveState& right,
                           const Eos& eos) {
    return interact(left, middle, right, RiemannSolver(eos));
}

double interaction_tolerance(const InteractionReport& report) { return kTol * report.scale; }

double interaction_margin(const InteractionReport& report, double C0) {
    const double A = report.A, B = report.B;
    const double both = std::min(-A, -B);
    const double first = std::min(-A, C0 * (-A) - B);
    const double second = std::min(-B, C0 * (-B) - A);
    return std::max({both, first, second});
}

double entropy_margin(const InteractionReport& report, double M) { return -M * (report.A + report.B) - report.E; }

bool check_interaction_estimate(const InteractionReport& report, double C0) {
    return interaction_margin(report, C0) >= -interaction_tolerance(report);
}

bool check_entropy_estimate(const InteractionReport& report, double M) {
    return entropy_margin(report, M) >= -interaction_tolerance(report);
}

PrimitiveState compose_fan(const PrimitiveState& from, double eps1, double delta, double eps3,
                           const RiemannSolver& solver) {
    const Eos& eos = solver.eos();
    const ShockGeometry& geo = solver.geometry();
    InvariantState inv = to_invariants(from, eos);
    if (eps1 < 0.0) inv.sigma += geo.entropy_jump(-eps1);
    inv.s += solver.minor_change(eps1);
    inv.r += eps1;
    inv.sigma += delta;
    inv.r += solver.minor_change(eps3);
    inv.s += eps3;
    if (eps3 < 0.0) inv.sigma -= geo.entropy_jump(-eps3);
    PrimitiveState out = from_invariants(inv, eos);
    if (eps1 >= 0.0 && delta == 0.0 && eps3 >= 0.0) out.S = from.S;
    return out;
}

SweepStats random_sweep(const SweepConfig& config, const Eos& eos, bool keep_samples) {
    if (!(config.r_max > config.r_min && config.s_max > config.s_min))
        throw DomainError("sweep box must have positive extent");
    if (!(config.sigma_max > 0.0)) throw DomainError("sigma_max must be positive");
    if (!(config.sigma_hi >= config.sigma_lo)) throw DomainError("Sigma range must be ordered");
    if (!(config.contact_max >= 0.0)) throw DomainError("contact_max must be >= 0");

    const RiemannSolver solver(eos);
    SweepStats stats;
    stats.constants = omega_constants(std::hypot(config.r_max - config.r_min, config.s_max - config.s_min), eos);
    const double omega_max = solver.geometry().strength(config.sigma_max);
    const double C0 = stats.constants.C0, M = stats.constants.M;

    std::vector<SweepSample> samples(config.count);
    std::vector<std::size_t> rejected(config.count, 0);

    auto work = [&](std::size_t begin, std::size_t end) {
        for (std::size_t idx = begin; idx < end; ++idx) {
            SampleRng rng(config.seed, idx);
            auto maybe = [&](double bound) {
                const double x = rng.uniform(-bound, bound);
                return rng.uniform() < 0.25 ? 0.0 : x;
            };
            for (std::size_t attempt = 0;; ++attempt) {
                if (attempt > 100000) throw NumericalError("interaction sweep: rejection sampling did not terminate");
                InvariantState li{rng.uniform(config.r_min, config.r_max), rng.uniform(config.s_min, config.s_max),
                                  rng.uniform(config.sigma_lo, config.sigma_hi)};
                const double f1[3] = {maybe(omega_max), maybe(config.contact_max), maybe(omega_max)};
                const double f2[3] = {maybe(omega_max), maybe(config.contact_max), maybe(omega_max)};
                try {
                    const PrimitiveState L = from_invariants(li, eos);
                    const PrimitiveState Mid = compose_fan(L, f1[0], f1[1], f1[2], solver);
                    const PrimitiveState R = compose_fan(Mid, f2[0], f2[1], f2[2], solver);
                    if (!inside(to_invariants(Mid, eos), config) || !inside(to_invariants(R, eos), config)) {
                        ++rejected[idx];
                        continue;
                    }
                    // outgoing middle state must stay in Omega as well
                    const WaveFan merged = solver.solve(L, R);
                    if (!inside(merged.mid_left_inv, config)) {
                        ++rejected[idx];
                        continue;
                    }
                    SweepSample& s = samples[idx];
                    s.index = idx;
                    s.report = interact(L, Mid, R, solver);
                    s.interaction_margin = interaction_margin(s.report, C0);
                    s.entropy_margin = entropy_margin(s.report, M);
                    s.interaction_ok = check_interaction_estimate(s.report, C0);
                    s.entropy_ok = check_entropy_estimate(s.report, M);
                    break;
                } catch (const RangeError&) {
                    ++rejected[idx];
                } catch (const DomainError&) {
                    ++rejected[idx];
                }
            }
        }
    };

    const unsigned threads = std::max(1u, std::min<unsigned>(config.threads, 64));
    if (threads == 1 || config.count < 2) {
        work(0, config.count);
    } else {
        std::vector<std::thread> pool;
        std::vector<std::exception_ptr> errors(threads);
        const std::size_t chunk = (config.count + threads - 1) / threads;
        for (unsigned t = 0; t < threads; ++t) {
            const std::size_t b = std::min(config.count, t * chunk), e = std::min(config.count, b + chunk);
            pool.emplace_back([&, b, e, t] {
                try {
                    work(b, e);
                } catch (...) {
                    errors[t] = std::current_exception();
                }
            });
        }
        for (auto& th : pool) th.join();
        for (auto& err : errors)
            if (err) std::rethrow_exception(err);
    }

    stats.count = config.count;
    bool first = true;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SweepSample& s = samples[i];
        stats.rejected_draws += rejected[i];
        if (!s.interaction_ok) ++stats.interaction_violations;
        if (!s.entropy_ok) ++stats.entropy_violations;
        stats.max_net_entropy_residual = std::max(stats.max_net_entropy_residual, std::abs(s.report.net_entropy_residual));
        stats.min_interaction_margin = first ? s.interaction_margin : std::min(stats.min_interaction_margin, s.interaction_margin);
        stats.min_entropy_margin = first ? s.entropy_margin : std::min(stats.min_entropy_margin, s.entropy_margin);
        first = false;
        ++stats.topologies[s.report.topology];
    }
    if (keep_samples) stats.samples = std::move(samples);
    return stats;
}

std::vector<CuratedCase> curated_suite(const Eos& eos, const std::vector<double>& amplitudes) {
    const RiemannSolver solver(eos);
    const ShockGeometry& geo = solver.geometry();
    const PrimitiveState base{1.0, 0.0, eos.entropy_of_sigma(std::max(2.0, eos.sigma_min() + 2.0))};

    struct Wave {
        int family;
        bool shock;
    };
    const Wave kinds[4] = {{1, true}, {1, false}, {3, true}, {3, false}};
    auto tag = [](const Wave& w) { return std::to_string(w.family) + (w.shock ? "S" : "R"); };
    auto single = [&](const PrimitiveState& from, const Wave& w, double sigma) {
        const double omega = geo.strength(sigma);
        const double eps = w.shock ? -omega : omega;
        return w.family == 1 ? compose_fan(from, eps, 0.0, 0.0, solver) : compose_fan(from, 0.0, 0.0, eps, solver);
    };

    std::vector<CuratedCase> out;
    for (const Wave& w1 : kinds)
        for (const Wave& w2 : kinds)
            for (double a1 : amplitudes)
                for (double a2 : amplitudes) {
                    const PrimitiveState M = single(base, w1, a1);
                    const PrimitiveState R = single(M, w2, a2);
                    out.push_back({tag(w1) + "|" + tag(w2), interact(base, M, R, solver)});
                }
    return out;
}

OmegaConstants enclosing_constants(const std::vector<CuratedCase>& cases, const Eos& eos) {
    double r_min = HUGE_VAL, r_max = -HUGE_VAL, s_min = HUGE_VAL, s_max = -HUGE_VAL;
    auto add = [&](const InvariantState& i) {
        r_min = std::min(r_min, i.r);
        r_max = std::max(r_max, i.r);
        s_min = std::min(s_min, i.s);
        s_max = std::max(s_max, i.s);
    };
    for (const auto& c : cases) {
        add(to_invariants(c.report.left, eos));
        add(to_invariants(c.report.middle, eos));
        add(to_invariants(c.report.right, eos));
        add(c.report.merged_middle);
    }
    if (cases.empty()) return omega_constants(0.0, eos);
    return omega_constants(std::hypot(r_max - r_min, s_max - s_min), eos);
}

}  // namespace urel
