#include "peterlin/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "peterlin/diagnostics.hpp"

namespace peterlin {

namespace {

struct Entry {
    std::string value;
    int line;
};

const std::set<std::string>& known_keys() {
    static const std::set<std::string> keys = {
        "mode", "nx", "ny", "n_hermite", "dt", "t_end", "output_every", "snapshot_every",
        "k_tau", "zeta", "U0", "L0", "l0", "d0", "nu", "n_density",
        "gamma1_kind", "gamma1_coeff", "gamma1_exponent", "gamma1_lower", "gamma1_upper",
        "gamma2_kind", "gamma2_coeff", "gamma2_exponent", "gamma2_lower", "gamma2_upper",
        "gamma3_kind", "gamma3_coeff", "gamma3_exponent", "gamma3_lower", "gamma3_upper",
        "cutoff_L", "gamma_source", "init_u", "init_c0_11", "init_c0_12", "init_c0_22",
        "output_dir", "u_star_path", "c_star_path",
    };
    return keys;
}

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

class KeyTable {
public:
    explicit KeyTable(const std::string& text) {
        std::istringstream is(text);
        std::string raw;
        int line = 0;
        while (std::getline(is, raw)) {
            ++line;
            const size_t hash = raw.find('#');
            if (hash != std::string::npos) raw.erase(hash);
            const std::string s = trim(raw);
            if (s.empty()) continue;
            const size_t eq = s.find('=');
            if (eq == std::string::npos)
                throw ConfigError(line, "expected key = value");
            const std::string key = trim(s.substr(0, eq));
            const std::string value = trim(s.substr(eq + 1));
            if (key.empty()) throw ConfigError(line, "empty key");
            if (value.empty()) throw ConfigError(line, "empty value for key '" + key + "'");
            if (!known_keys().count(key)) throw ConfigError(line, "unknown key '" + key + "'");
            if (entries_.count(key))
                throw ConfigError(line, "duplicate key '" + key + "' (first on line " +
                                            std::to_string(entries_[key].line) + ")");
            entries_[key] = Entry{value, line};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    int line_of(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    std::string get_string(const std::string& key, const std::string& def) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? def : it->second.value;
    }

    std::string require_string(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(0, "missing required key '" + key + "'");
        return it->second.value;
    }

    double get_real(const std::string& key, double def) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        return parse_real(it->second);
    }

    double require_real(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(0, "missing required key '" + key + "'");
        return parse_real(it->second);
    }

    long get_int(const std::string& key, long def) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        const Entry& e = it->second;
        long v = 0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto [p, ec] = std::from_chars(b, end, v);
        if (ec != std::errc{} || p != end)
            throw ConfigError(e.line, "expected integer for key '" + key + "', got '" +
                                          e.value + "'");
        return v;
    }

private:
    double parse_real(const Entry& e) const {
        double v = 0.0;
        const char* b = e.value.data();
        const char* end = b + e.value.size();
        auto [p, ec] = std::from_chars(b, end, v);
        if (ec != std::errc{} || p != end)
            throw ConfigError(e.line, "expected real number, got '" + e.value + "'");
        return v;
    }

    std::map<std::string, Entry> entries_;
};

GammaSpec parse_gamma(const KeyTable& t, const std::string& prefix) {
    const std::string kind_key = prefix + "_kind";
    const std::string kind = t.get_string(kind_key, "constant");
    const double coeff = t.get_real(prefix + "_coeff", 1.0);
    const double lower = t.get_real(prefix + "_lower", coeff);
    const double upper = t.get_real(prefix + "_upper", coeff);
    const int line = t.has(kind_key) ? t.line_of(kind_key) : t.line_of(prefix + "_coeff");
    try {
        if (kind == "constant") {
            if (t.has(prefix + "_exponent") && t.get_real(prefix + "_exponent", 0.0) != 0.0)
                throw ConfigError(t.line_of(prefix + "_exponent"),
                                  prefix + ": constant kind requires exponent 0");
            return GammaSpec::constant(coeff, lower, upper);
        }
        if (kind == "affine") {
            if (t.has(prefix + "_exponent") && t.get_real(prefix + "_exponent", 1.0) != 1.0)
                throw ConfigError(t.line_of(prefix + "_exponent"),
                                  prefix + ": affine kind requires exponent 1");
            GammaSpec s{GammaKind::affine, 1.0, lower, upper, coeff};
            s.validate();
            return s;
        }
        if (kind == "power_law") {
            const double expo = t.get_real(prefix + "_exponent", 1.0);
            return GammaSpec::power_law(coeff, expo, lower, upper);
        }
    } catch (const ConfigError&) {
        throw;
    } catch (const InvalidParameterError& e) {
        throw ConfigError(line, prefix + ": " + e.what());
    }
    throw ConfigError(t.line_of(kind_key),
                      prefix + "_kind must be power_law, constant or affine, got '" + kind + "'");
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    KeyTable t(text);
    RunConfig cfg;

    const std::string mode = t.require_string("mode");
    if (mode == "mp")
        cfg.mode = RunMode::mp;
    else if (mode == "fp_given")
        cfg.mode = RunMode::fp_given;
    else if (mode == "kp")
        cfg.mode = RunMode::kp;
    else if (mode == "closure_compare")
        cfg.mode = RunMode::closure_compare;
    else
        throw ConfigError(t.line_of("mode"), "mode must be mp, fp_given, kp or closure_compare");

    cfg.nx = static_cast<int>(t.get_int("nx", 64));
    cfg.ny = static_cast<int>(t.get_int("ny", 64));
    if (cfg.nx < 8 || cfg.ny < 8 || cfg.nx % 2 != 0 || cfg.ny % 2 != 0)
        throw ConfigError(t.has("nx") ? t.line_of("nx") : t.line_of("ny"),
                          "nx, ny must be even and >= 8");
    cfg.n_hermite = static_cast<int>(t.get_int("n_hermite", 8));
    if (cfg.n_hermite < 2)
        throw ConfigError(t.line_of("n_hermite"), "n_hermite must be >= 2");

    cfg.dt = t.require_real("dt");
    if (!(cfg.dt > 0.0)) throw ConfigError(t.line_of("dt"), "dt must be positive");
    cfg.t_end = t.require_real("t_end");
    if (!(cfg.t_end > 0.0)) throw ConfigError(t.line_of("t_end"), "t_end must be positive");
    cfg.output_every = t.get_int("output_every", 1);
    if (cfg.output_every < 1)
        throw ConfigError(t.line_of("output_every"), "output_every must be >= 1");
    cfg.snapshot_every = t.get_int("snapshot_every", 0);
    if (cfg.snapshot_every < 0)
        throw ConfigError(t.line_of("snapshot_every"), "snapshot_every must be >= 0");

    cfg.k_tau = t.get_real("k_tau", 1.0);
    cfg.zeta = t.get_real("zeta", 4.0);
    cfg.U0 = t.get_real("U0", 1.0);
    cfg.L0 = t.get_real("L0", 1.0);
    cfg.l0 = t.get_real("l0", 1.0);
    cfg.d0 = t.get_real("d0", 1.0);
    cfg.nu = t.get_real("nu", 1.0);
    cfg.n_density = t.get_real("n_density", 1.0);

    cfg.gamma1 = parse_gamma(t, "gamma1");
    cfg.gamma2 = parse_gamma(t, "gamma2");
    cfg.gamma3 = parse_gamma(t, "gamma3");

    if (t.has("cutoff_L")) {
        const double L = t.get_real("cutoff_L", 0.0);
        if (!(L > 1.0)) throw ConfigError(t.line_of("cutoff_L"), "cutoff_L must be > 1");
        if (cfg.dt > 1.0 / (4.0 * L * L))
            throw ConfigError(t.line_of("cutoff_L"),
                              "dt violates the cut-off step constraint Δt ≤ (4L²)⁻¹: dt = " +
                                  format_double(cfg.dt) + " > " +
                                  format_double(1.0 / (4.0 * L * L)));
        cfg.cutoff_L = L;
    }

    const std::string gs_default =
        cfg.mode == RunMode::closure_compare ? "macro"
        : cfg.mode == RunMode::fp_given      ? "given"
                                             : "self";
    const std::string gs = t.get_string("gamma_source", gs_default);
    if (gs == "self") {
        if (cfg.mode == RunMode::fp_given)
            throw ConfigError(t.line_of("gamma_source"),
                              "fp_given evaluates Gamma from the given conformation field");
        cfg.gamma_source = GammaSource::self_consistent;
        cfg.compare_self_consistent = true;
    } else if (gs == "macro") {
        if (cfg.mode != RunMode::closure_compare)
            throw ConfigError(t.line_of("gamma_source"),
                              "gamma_source=macro is only meaningful for closure_compare");
        cfg.gamma_source = GammaSource::given_field;
        cfg.compare_self_consistent = false;
    } else if (gs == "given") {
        if (cfg.mode != RunMode::fp_given)
            throw ConfigError(t.line_of("gamma_source"),
                              "gamma_source=given is only meaningful for fp_given");
        cfg.gamma_source = GammaSource::given_field;
    } else {
        throw ConfigError(t.line_of("gamma_source"),
                          "gamma_source must be self, macro or given");
    }

    const std::string iu = t.get_string("init_u", "rest");
    if (iu == "rest")
        cfg.init_u = InitVelocity::rest;
    else if (iu == "taylor_green")
        cfg.init_u = InitVelocity::taylor_green;
    else
        throw ConfigError(t.line_of("init_u"), "init_u must be rest or taylor_green");

    cfg.output_dir = t.get_string("output_dir", "out");
    cfg.u_star_path = t.get_string("u_star_path", "");
    cfg.c_star_path = t.get_string("c_star_path", "");
    if (cfg.mode == RunMode::fp_given) {
        if (cfg.u_star_path.empty()) throw ConfigError(0, "missing required key 'u_star_path'");
        if (cfg.c_star_path.empty()) throw ConfigError(0, "missing required key 'c_star_path'");
    }

    // derived quantities
    try {
        cfg.params = derive_nondim(cfg.k_tau, cfg.zeta, cfg.U0, cfg.L0, cfg.l0, cfg.d0,
                                   cfg.nu, cfg.n_density, gamma_eval(cfg.gamma1, 2.0),
                                   gamma_eval(cfg.gamma2, 2.0));
        cfg.maxwellian = make_maxwellian(cfg.k_tau, gamma_eval(cfg.gamma1, 2.0),
                                         gamma_eval(cfg.gamma2, 2.0), 2);
    } catch (const InvalidParameterError& e) {
        throw ConfigError(0, e.what());
    }

    cfg.init_c0.xx = t.get_real("init_c0_11", cfg.maxwellian.a);
    cfg.init_c0.xy = t.get_real("init_c0_12", 0.0);
    cfg.init_c0.yy = t.get_real("init_c0_22", cfg.maxwellian.a);
    if (cfg.mode != RunMode::mp) {
        // the kinetic initial data N(0, C0)/M must lie in the weighted L2 space
        const int c0_line = t.has("init_c0_11")   ? t.line_of("init_c0_11")
                            : t.has("init_c0_12") ? t.line_of("init_c0_12")
                            : t.has("init_c0_22") ? t.line_of("init_c0_22")
                                                  : 0;
        if (!cfg.init_c0.is_spd())
            throw ConfigError(c0_line, "init_c0 must be symmetric positive definite");
        if (!(cfg.init_c0.max_eigenvalue() < 2.0 * cfg.maxwellian.a))
            throw ConfigError(c0_line,
                              "init_c0 is not representable: largest eigenvalue must be "
                              "< 2a = " + format_double(2.0 * cfg.maxwellian.a));
    }

    // The ratio condition underpins the kinetic rewriting; only the purely
    // macroscopic constant-coefficient (Oldroyd-B) run may skip it.
    const bool hookean_mp = cfg.mode == RunMode::mp &&
                            cfg.gamma1.kind == GammaKind::constant &&
                            cfg.gamma2.kind == GammaKind::constant;
    if (!hookean_mp && !check_ratio_condition(cfg.gamma1, cfg.gamma2, cfg.k_tau)) {
        const int line = t.has("gamma1_kind") ? t.line_of("gamma1_kind") : 0;
        throw ConfigError(line,
                          "gamma_1/gamma_2 must equal k_tau identically (ratio condition); "
                          "rejected for mode " + std::string(to_string(cfg.mode)));
    }

    return cfg;
}

RunConfig load_config_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return parse_config(ss.str());
}

AdmissibilityReport admissibility_report(const RunConfig& cfg) {
    AdmissibilityReport rep;
    const double alpha = cfg.gamma1.structural_exponent();
    const double beta = cfg.gamma3.structural_exponent();
    const double gamma_exp = cfg.gamma2.structural_exponent();
    rep.classical = check_admissibility(alpha, beta, gamma_exp, cfg.gamma1.lower_const,
                                        cfg.gamma1.upper_const, cfg.gamma3.lower_const,
                                        cfg.gamma3.upper_const, cfg.gamma2.lower_const,
                                        cfg.gamma2.upper_const, 2,
                                        TheoremFamily::classical_thm31);
    rep.regular = check_admissibility(alpha, beta, gamma_exp, cfg.gamma1.lower_const,
                                      cfg.gamma1.upper_const, cfg.gamma3.lower_const,
                                      cfg.gamma3.upper_const, cfg.gamma2.lower_const,
                                      cfg.gamma2.upper_const, 2,
                                      TheoremFamily::regular_thm32_cor33);
    rep.ratio_ok = check_ratio_condition(cfg.gamma1, cfg.gamma2, cfg.k_tau);
    return rep;
}

const char* to_string(RunMode m) {
    switch (m) {
        case RunMode::mp: return "mp";
        case RunMode::fp_given: return "fp_given";
        case RunMode::kp: return "kp";
        case RunMode::closure_compare: return "closure_compare";
    }
    return "?";
}

}  // namespace peterlin
