#include <algorithm>
#include <cmath>
#include <fstream>
#include <initializer_list>
#include <string_view>

#include "urel/cli.hpp"

namespace urel::cli {

namespace {

using json = nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& msg) {
    throw ConfigError("config error at " + (path.empty() ? std::string("/") : path) + ": " + msg);
}

std::string join(const std::string& path, const std::string& key) { return path + "/" + key; }

void check_keys(const json& obj, const std::string& path, std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object()) fail(path, "expected an object");
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
            fail(join(path, it.key()), "unknown key");
}

const json& require(const json& obj, const std::string& path, const std::string& key) {
    if (!obj.contains(key)) fail(join(path, key), "missing required key");
    return obj.at(key);
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) fail(path, "expected a finite number");
    return x;
}

double number(const json& obj, const std::string& path, const std::string& key) {
    return as_number(require(obj, path, key), join(path, key));
}

double number(const json& obj, const std::string& path, const std::string& key, double fallback) {
    return obj.contains(key) ? as_number(obj.at(key), join(path, key)) : fallback;
}

std::uint64_t as_unsigned(const json& j, const std::string& path) {
    if (!j.is_number_integer() || (j.is_number_integer() && !j.is_number_unsigned() && j.get<long long>() < 0))
        fail(path, "expected a non-negative integer");
    return j.get<std::uint64_t>();
}

std::uint64_t unsigned_value(const json& obj, const std::string& path, const std::string& key,
                             std::uint64_t fallback) {
    return obj.contains(key) ? as_unsigned(obj.at(key), join(path, key)) : fallback;
}

bool boolean(const json& obj, const std::string& path, const std::string& key, bool fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_boolean()) fail(join(path, key), "expected true or false");
    return obj.at(key).get<bool>();
}

std::string string_value(const json& obj, const std::string& path, const std::string& key,
                         const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj.at(key).is_string()) fail(join(path, key), "expected a string");
    return obj.at(key).get<std::string>();
}

std::pair<double, double> interval(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected [lo, hi]");
    const double lo = as_number(j[0], path + "/0"), hi = as_number(j[1], path + "/1");
    if (!(hi > lo)) fail(path, "expected lo < hi");
    return {lo, hi};
}

PrimitiveState state(const json& j, const std::string& path) {
    check_keys(j, path, {"rho", "v", "S"});
    PrimitiveState p{number(j, path, "rho"), number(j, path, "v"), number(j, path, "S")};
    if (!is_physical(p)) fail(path, "state must satisfy rho > 0, |v| < 1, S > 0");
    return p;
}

Eos parse_eos(const json& j, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::string family = string_value(j, path, "family", "polytropic");
    const double gamma = number(j, path, "gamma");
    try {
        if (family == "polytropic") {
            check_keys(j, path, {"gamma", "family", "R"});
            return Eos::polytropic(gamma, number(j, path, "R", 1.0));
        }
        if (family == "radiation") {
            check_keys(j, path, {"gamma", "family", "a_R"});
            return Eos::radiation(gamma, number(j, path, "a_R", kRadiationConstant));
        }
        if (family == "tabulated") {
            check_keys(j, path, {"gamma", "family", "table"});
            const json& table = require(j, path, "table");
            const std::string tp = join(path, "table");
            if (!table.is_array()) fail(tp, "expected an array of [S, A] pairs");
            std::vector<double> S, A;
            for (std::size_t i = 0; i < table.size(); ++i) {
                const std::string ep = tp + "/" + std::to_string(i);
                if (!table[i].is_array() || table[i].size() != 2) fail(ep, "expected [S, A]");
                S.push_back(as_number(table[i][0], ep + "/0"));
                A.push_back(as_number(table[i][1], ep + "/1"));
            }
            return Eos::tabulated(gamma, std::move(S), std::move(A));
        }
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(join(path, "family"), "expected polytropic, radiation or tabulated");
}

void parse_problem(const json& j, const std::string& path, RunConfig& cfg) {
    if (!j.is_object()) fail(path, "expected an object");
    const std::string type = string_value(j, path, "type", "");
    try {
        if (type == "riemann") {
            check_keys(j, path, {"type", "left", "right", "x0"});
            cfg.left = state(require(j, path, "left"), join(path, "left"));
            cfg.right = state(require(j, path, "right"), join(path, "right"));
            cfg.x0 = number(j, path, "x0", 0.0);
            cfg.profile = Profile::riemann(cfg.left, cfg.right, cfg.x0);
            return;
        }
        if (cfg.command == Command::riemann) fail(join(path, "type"), "the riemann command needs type \"riemann\"");
        if (type == "piecewise") {
            check_keys(j, path, {"type", "breakpoints", "states"});
            const json& b = require(j, path, "breakpoints");
            const json& s = require(j, path, "states");
            if (!b.is_array()) fail(join(path, "breakpoints"), "expected an array");
            if (!s.is_array()) fail(join(path, "states"), "expected an array");
            std::vector<double> breaks;
            std::vector<PrimitiveState> states;
            for (std::size_t i = 0; i < b.size(); ++i)
                breaks.push_back(as_number(b[i], join(path, "breakpoints") + "/" + std::to_string(i)));
            for (std::size_t i = 0; i < s.size(); ++i)
                states.push_back(state(s[i], join(path, "states") + "/" + std::to_string(i)));
            cfg.profile = Profile::piecewise(std::move(breaks), std::move(states));
            return;
        }
        if (type == "smooth") {
            check_keys(j, path, {"type", "name", "base", "amplitude", "center", "width"});
            cfg.profile = Profile::smooth(string_value(j, path, "name", ""),
                                          state(require(j, path, "base"), join(path, "base")),
                                          number(j, path, "amplitude"), number(j, path, "center", 0.0),
                                          number(j, path, "width"));
            return;
        }
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    fail(join(path, "type"), "expected riemann, piecewise or smooth");
}

GridConfig parse_grid(const json& j, const std::string& path) {
    check_keys(j, path, {"cells", "dx", "domain", "cfl_ratio", "t_end"});
    const auto [lo, hi] = interval(require(j, path, "domain"), join(path, "domain"));
    const double cfl = number(j, path, "cfl_ratio", 1.05);
    if (!(cfl > 1.0)) fail(join(path, "cfl_ratio"), "must exceed 1 (dx/dt > 1)");
    const double t_end = number(j, path, "t_end");
    if (!(t_end >= 0.0)) fail(join(path, "t_end"), "must be >= 0");
    std::size_t cells = 0;
    if (j.contains("cells") == j.contains("dx")) fail(path, "give exactly one of cells and dx");
    if (j.contains("cells")) {
        cells = as_unsigned(j.at("cells"), join(path, "cells"));
    } else {
        const double dx = number(j, path, "dx");
        if (!(dx > 0.0)) fail(join(path, "dx"), "must be positive");
        const double n = (hi - lo) / (2.0 * dx);
        if (std::abs(n - std::round(n)) > 1e-9 * n)
            fail(join(path, "dx"), "domain length must be an even multiple of dx");
        cells = static_cast<std::size_t>(std::round(n));
    }
    if (cells < 1) fail(join(path, "cells"), "need at least one cell");
    try {
        return make_grid(cells, lo, hi, t_end, cfl);
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
}

SamplingConfig parse_sampling(const json& j, const std::string& path) {
    check_keys(j, path, {"kind", "base", "seed"});
    SamplingConfig s;
    const std::string kind = string_value(j, path, "kind", "van_der_corput");
    if (kind == "van_der_corput") {
        s.kind = SamplingKind::van_der_corput;
        if (j.contains("seed")) fail(join(path, "seed"), "van der Corput sampling takes no seed");
        if (j.contains("base")) {
            const json& b = j.at("base");
            if (!b.is_array() || b.size() != 2) fail(join(path, "base"), "expected [k1, k2]");
            s.k1 = static_cast<unsigned>(as_unsigned(b[0], join(path, "base") + "/0"));
            s.k2 = static_cast<unsigned>(as_unsigned(b[1], join(path, "base") + "/1"));
        }
    } else if (kind == "pseudorandom") {
        s.kind = SamplingKind::pseudorandom;
        if (j.contains("base")) fail(join(path, "base"), "pseudorandom sampling takes no base pair");
        s.seed = unsigned_value(j, path, "seed", 1);
    } else {
        fail(join(path, "kind"), "expected van_der_corput or pseudorandom");
    }
    try {
        (void)s.make();
    } catch (const DomainError& e) {
        fail(path, e.what());
    }
    return s;
}

OutputConfig parse_output(const json& j, const std::string& path) {
    check_keys(j, path, {"stride", "profiles"});
    OutputConfig o;
    o.stride = unsigned_value(j, path, "stride", 0);
    o.profiles = boolean(j, path, "profiles", true);
    return o;
}

CurvesConfig parse_curves(const json& j, const std::string& path) {
    check_keys(j, path, {"base", "sigma_max", "points"});
    CurvesConfig c;
    if (j.contains("base")) c.base = state(j.at("base"), join(path, "base"));
    c.sigma_max = number(j, path, "sigma_max", 3.0);
    if (!(c.sigma_max > 0.0)) fail(join(path, "sigma_max"), "must be positive");
    c.points = unsigned_value(j, path, "points", 61);
    if (c.points < 2) fail(join(path, "points"), "need at least two points");
    return c;
}

SweepBlock parse_sweep(const json& j, const std::string& path) {
    check_keys(j, path, {"omega_box", "sigma_max", "contact_max", "sigma_range", "count", "seed", "threads",
                         "samples_csv", "curated"});
    SweepBlock b;
    SweepConfig& s = b.sweep;
    if (j.contains("omega_box")) {
        const json& box = j.at("omega_box");
        const std::string bp = join(path, "omega_box");
        if (!box.is_array() || box.size() != 2) fail(bp, "expected [[r_min, r_max], [s_min, s_max]]");
        std::tie(s.r_min, s.r_max) = interval(box[0], bp + "/0");
        std::tie(s.s_min, s.s_max) = interval(box[1], bp + "/1");
    }
    s.sigma_max = number(j, path, "sigma_max", 2.0);
    if (!(s.sigma_max > 0.0)) fail(join(path, "sigma_max"), "must be positive");
    s.contact_max = number(j, path, "contact_max", 0.5);
    if (!(s.contact_max >= 0.0)) fail(join(path, "contact_max"), "must be >= 0");
    if (j.contains("sigma_range")) std::tie(s.sigma_lo, s.sigma_hi) = interval(j.at("sigma_range"), join(path, "sigma_range"));
    s.count = unsigned_value(j, path, "count", 10000);
    s.seed = unsigned_value(j, path, "seed", 1);
    s.threads = static_cast<unsigned>(unsigned_value(j, path, "threads", 1));
    if (s.threads < 1 || s.threads > 64) fail(join(path, "threads"), "must lie in [1, 64]");
    b.samples_csv = boolean(j, path, "samples_csv", false);
    b.curated = boolean(j, path, "curated", true);
    return b;
}

}  // namespace

Command parse_command(const std::string& name) {
    if (name == "riemann") return Command::riemann;
    if (name == "glimm") return Command::glimm;
    if (name == "curves") return Command::curves;
    if (name == "interactions") return Command::interactions;
    throw ConfigError("unknown command '" + name + "'");
}

const char* command_name(Command c) {
    switch (c) {
        case Command::riemann: return "riemann";
        case Command::glimm: return "glimm";
        case Command::curves: return "curves";
        case Command::interactions: return "interactions";
    }
    return "?";
}

SamplingSequence SamplingConfig::make() const {
    return kind == SamplingKind::pseudorandom ? SamplingSequence::pseudorandom(seed)
                                              : SamplingSequence::van_der_corput(k1, k2);
}

RunConfig parse_config(const json& doc, Command command, std::optional<std::uint64_t> seed) {
    RunConfig cfg;
    cfg.command = command;
    switch (command) {
        case Command::riemann: check_keys(doc, "", {"description", "eos", "problem", "grid"}); break;
        case Command::glimm:
            check_keys(doc, "", {"description", "eos", "problem", "grid", "sampling", "output"});
            break;
        case Command::curves: check_keys(doc, "", {"description", "eos", "curves"}); break;
        case Command::interactions: check_keys(doc, "", {"description", "eos", "sweep"}); break;
    }
    if (doc.contains("description") && !doc.at("description").is_string()) fail("/description", "expected a string");
    cfg.eos = parse_eos(require(doc, "", "eos"), "/eos");

    if (command == Command::riemann || command == Command::glimm) {
        parse_problem(require(doc, "", "problem"), "/problem", cfg);
        cfg.grid = parse_grid(require(doc, "", "grid"), "/grid");
    }
    if (command == Command::riemann && !(cfg.grid.t_end > 0.0)) fail("/grid/t_end", "sampling time must be positive");
    if (command == Command::glimm) {
        if (doc.contains("sampling")) cfg.sampling = parse_sampling(doc.at("sampling"), "/sampling");
        if (doc.contains("output")) cfg.output = parse_output(doc.at("output"), "/output");
        if (seed) {
            if (cfg.sampling.kind != SamplingKind::pseudorandom)
                fail("/sampling/kind", "--seed needs pseudorandom sampling");
            cfg.sampling.seed = *seed;
        }
        // same light-cone check the run performs, so bad domains are config errors
        const auto [lo, hi] = cfg.profile->support();
        const double reach = static_cast<double>(cfg.grid.steps() + 1) * cfg.grid.dx;
        if (lo <= hi && (lo - reach < cfg.grid.x_min + 2.0 * cfg.grid.dx || hi + reach > cfg.grid.x_max - 2.0 * cfg.grid.dx))
            fail("/grid/domain", "too small: waves can reach the boundary before t_end");
    }
    if (command == Command::curves) {
        cfg.curves.base = PrimitiveState{1.0, 0.0, cfg.eos.entropy_of_sigma(std::max(1.0, cfg.eos.sigma_min() + 1.0))};
        if (doc.contains("curves")) {
            const PrimitiveState fallback = cfg.curves.base;
            cfg.curves = parse_curves(doc.at("curves"), "/curves");
            if (!doc.at("curves").contains("base")) cfg.curves.base = fallback;
        }
    }
    if (command == Command::interactions) {
        if (doc.contains("sweep")) cfg.sweep = parse_sweep(doc.at("sweep"), "/sweep");
        if (seed) cfg.sweep.sweep.seed = *seed;
    }
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path, Command command, std::optional<std::uint64_t> seed) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config '" + path.string() + "': " + e.what());
    }
    return parse_config(doc, command, seed);
}

}  // namespace urel::cli
