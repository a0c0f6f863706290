#include "tempfrac/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "tempfrac/calibration.hpp"
#include "tempfrac/errors.hpp"
#include "tempfrac/verification.hpp"

namespace tempfrac {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t");
    return s.substr(begin, end - begin + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_number(const std::string& value, const std::string& key, int line) {
    try {
        std::size_t used = 0;
        const double x = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("value of '" + key + "' is not a number: '" + value + "'", line);
    }
}

std::size_t parse_count(const std::string& value, const std::string& key, int line) {
    const double x = parse_number(value, key, line);
    if (x < 0.0 || x != std::floor(x)) {
        throw ConfigError("value of '" + key + "' must be a nonnegative integer", line);
    }
    return static_cast<std::size_t>(x);
}

struct KeySpec {
    const char* section;
    const char* key;
    void (*apply)(RunConfig&, const std::string&, int);
};

// One entry per (section, key); bare keys resolve through the same list
// because every key name is unique across sections, except that a bare
// "forcing" aliases the forcing preset.
const KeySpec kKeys[] = {
    {"model", "alpha",
     [](RunConfig& c, const std::string& v, int ln) { c.alpha = parse_number(v, "alpha", ln); }},
    {"model", "lambda",
     [](RunConfig& c, const std::string& v, int ln) { c.lambda = parse_number(v, "lambda", ln); }},
    {"model", "v",
     [](RunConfig& c, const std::string& v, int ln) { c.v = parse_number(v, "v", ln); }},
    {"model", "d",
     [](RunConfig& c, const std::string& v, int ln) { c.D = parse_number(v, "D", ln); }},
    {"model", "l",
     [](RunConfig& c, const std::string& v, int ln) { c.L = parse_number(v, "L", ln); }},
    {"model", "t",
     [](RunConfig& c, const std::string& v, int ln) { c.T = parse_number(v, "T", ln); }},
    {"discretization", "n",
     [](RunConfig& c, const std::string& v, int ln) { c.n = parse_count(v, "n", ln); }},
    {"discretization", "r",
     [](RunConfig& c, const std::string& v, int ln) {
         if (lower(v) == "auto") {
             c.r_auto = true;
         } else {
             c.r = parse_number(v, "r", ln);
             c.r_auto = false;
         }
     }},
    {"discretization", "k",
     [](RunConfig& c, const std::string& v, int ln) { c.K = parse_count(v, "K", ln); }},
    {"initial", "preset",
     [](RunConfig& c, const std::string& v, int ln) {
         const std::string p = lower(v);
         if (p == "zero") {
             c.init = RunConfig::InitKind::zero;
         } else if (p == "gaussian") {
             c.init = RunConfig::InitKind::gaussian;
         } else {
             throw ConfigError("initial preset must be 'zero' or 'gaussian', got '" + v + "'",
                               ln);
         }
     }},
    {"initial", "x_c",
     [](RunConfig& c, const std::string& v, int ln) { c.gauss_xc = parse_number(v, "x_c", ln); }},
    {"initial", "w",
     [](RunConfig& c, const std::string& v, int ln) { c.gauss_w = parse_number(v, "w", ln); }},
    {"initial", "a",
     [](RunConfig& c, const std::string& v, int ln) { c.gauss_A = parse_number(v, "A", ln); }},
    {"forcing", "preset",
     [](RunConfig& c, const std::string& v, int ln) {
         const std::string p = lower(v);
         if (p == "zero") {
             c.forcing = RunConfig::ForcingKind::zero;
         } else if (p == "manufactured") {
             c.forcing = RunConfig::ForcingKind::manufactured;
         } else {
             throw ConfigError(
                 "forcing preset must be 'zero' or 'manufactured', got '" + v + "'", ln);
         }
     }},
    {"output", "dir",
     [](RunConfig& c, const std::string& v, int) { c.out_dir = v; }},
    {"output", "field",
     [](RunConfig& c, const std::string& v, int) { c.field_path = v; }},
    {"output", "current",
     [](RunConfig& c, const std::string& v, int) { c.current_path = v; }},
    {"output", "report",
     [](RunConfig& c, const std::string& v, int) { c.report_path = v; }},
    {"output", "table",
     [](RunConfig& c, const std::string& v, int) { c.table_path = v; }},
    {"output", "fit_csv",
     [](RunConfig& c, const std::string& v, int) { c.fit_csv_path = v; }},
    {"output", "fit_report",
     [](RunConfig& c, const std::string& v, int) { c.fit_report_path = v; }},
    {"output", "precision",
     [](RunConfig& c, const std::string& v, int ln) {
         c.precision = static_cast<int>(parse_count(v, "precision", ln));
     }},
};

const KeySpec* find_key(const std::string& section, const std::string& key) {
    if (section.empty() && key == "forcing") {
        return find_key("forcing", "preset");
    }
    for (const auto& spec : kKeys) {
        if (key != spec.key) continue;
        if (section.empty()) {
            // "preset" is the only duplicated key name; bare use means initial.
            if (key == "preset" && std::string(spec.section) != "initial") continue;
            return &spec;
        }
        if (section == spec.section) return &spec;
    }
    return nullptr;
}

void apply_line(RunConfig& config, const std::string& section, const std::string& key,
                const std::string& value, int line) {
    const KeySpec* spec = find_key(section, key);
    if (spec == nullptr) {
        throw ConfigError("unknown key '" + key + "'" +
                              (section.empty() ? "" : " in section [" + section + "]"),
                          line);
    }
    spec->apply(config, value, line);
}

void parse_into(RunConfig& config, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#' || stripped[0] == ';') continue;
        if (stripped.front() == '[') {
            if (stripped.back() != ']') {
                throw ConfigError("unterminated section header", line_no);
            }
            section = lower(trim(stripped.substr(1, stripped.size() - 2)));
            bool known = false;
            for (const auto& spec : kKeys) {
                if (section == spec.section) {
                    known = true;
                    break;
                }
            }
            if (!known) throw ConfigError("unknown section [" + section + "]", line_no);
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("expected 'key = value'", line_no);
        }
        const std::string key = lower(trim(stripped.substr(0, eq)));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty()) throw ConfigError("empty key", line_no);
        apply_line(config, section, key, value, line_no);
    }
}

void apply_env_overrides(RunConfig& config) {
    for (const auto& spec : kKeys) {
        std::string name = "TEMPFRAC_" + lower(spec.section) + "_" + spec.key;
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
        if (const char* value = std::getenv(name.c_str())) {
            spec.apply(config, value, -1);
        }
    }
}

}  // namespace

void RunConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
    if (!(lambda >= 0.0)) throw ConfigError("lambda must be >= 0");
    if (!(v > 0.0)) throw ConfigError("v must be positive");
    if (!(D > 0.0)) throw ConfigError("D must be positive");
    if (!(L > 0.0)) throw ConfigError("L must be positive");
    if (!(T > 0.0)) throw ConfigError("T must be positive");
    if (n < 1) throw ConfigError("n must be >= 1");
    if (K < 2) throw ConfigError("K must be >= 2");
    if (!r_auto && !(r >= 1.0)) throw ConfigError("r must be >= 1 or 'auto'");
    if (init == InitKind::gaussian) {
        if (!(gauss_xc > 0.0 && gauss_xc < L)) throw ConfigError("x_c must lie in (0,L)");
        if (!(gauss_w > 0.0)) throw ConfigError("w must be positive");
        if (!(gauss_A > 0.0)) throw ConfigError("A must be positive");
    }
    if (init == InitKind::custom && !custom_g) {
        throw ConfigError("custom initial profile selected but no hook installed");
    }
    if (precision < 1 || precision > 17) throw ConfigError("precision must lie in [1,17]");
}

std::function<double(double)> RunConfig::initial_profile() const {
    switch (init) {
        case InitKind::zero:
            return {};
        case InitKind::gaussian:
            return gaussian_packet(gauss_xc, gauss_w, gauss_A);
        case InitKind::custom:
            return custom_g;
    }
    return {};
}

ProblemSpec RunConfig::to_problem() const {
    ProblemSpec spec;
    spec.params = {alpha, lambda};
    spec.v = v;
    spec.D = D;
    spec.L = L;
    spec.T = T;
    spec.g = initial_profile();
    if (forcing == ForcingKind::manufactured) {
        const double a = alpha, lam = lambda, vv = v, DD = D;
        spec.f = [a, lam, vv, DD](double x, double t) {
            return manufactured_forcing(a, lam, vv, DD, x, t);
        };
    }
    return spec;
}

std::string RunConfig::output_path(const std::string& file) const {
    if (out_dir.empty() || out_dir == ".") return file;
    if (out_dir.back() == '/') return out_dir + file;
    return out_dir + "/" + file;
}

RunConfig parse_config_text(const std::string& text) {
    RunConfig config;
    parse_into(config, text);
    config.validate();
    return config;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config file " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    RunConfig config;
    parse_into(config, buffer.str());
    apply_env_overrides(config);
    config.validate();
    return config;
}

}  // namespace tempfrac
