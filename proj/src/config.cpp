#include "fkpp/config.hpp"

#include <cctype>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "fkpp/errors.hpp"
#include "fkpp/properties.hpp"

namespace fkpp {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_number(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument(value);
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: key '" + key + "' has non-numeric value '" +
                          value + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(parse_number(key, item));
    }
    if (out.empty()) {
        throw ConfigError("config: key '" + key + "' must list at least one value");
    }
    return out;
}

}  // namespace

RunConfig parse_config_text(const std::string& text) {
    RunConfig cfg;
    std::map<std::string, std::string> kv;
    std::stringstream ss(text);
    std::string line;
    int line_no = 0;
    while (std::getline(ss, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " is not a key = value assignment");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty()) {
            throw ConfigError("config: line " + std::to_string(line_no) +
                              " has an empty key or value");
        }
        if (!kv.emplace(key, value).second) {
            throw ConfigError("config: duplicate key '" + key + "'");
        }
    }

    double gm = NAN, g0m = NAN, gp = NAN, g0p = NAN;
    for (const auto& [key, value] : kv) {
        if (key == "family") cfg.family = value;
        else if (key == "p") cfg.p = parse_number(key, value);
        else if (key == "s0") cfg.s0 = parse_number(key, value);
        else if (key == "alpha") cfg.alpha = parse_number(key, value);
        else if (key == "kappa") cfg.kappa = parse_number(key, value);
        else if (key == "a") cfg.a = parse_number(key, value);
        else if (key == "b") cfg.b = parse_number(key, value);
        else if (key == "c") cfg.c = parse_number(key, value);
        else if (key == "table_path") cfg.table_path = value;
        else if (key == "gamma_minus") gm = parse_number(key, value);
        else if (key == "gamma0_minus") g0m = parse_number(key, value);
        else if (key == "gamma_plus") gp = parse_number(key, value);
        else if (key == "gamma0_plus") g0p = parse_number(key, value);
        else if (key == "tol_c") cfg.tol_c = parse_number(key, value);
        else if (key == "tol_ode") cfg.tol_ode = parse_number(key, value);
        else if (key == "tol_quad") cfg.tol_quad = parse_number(key, value);
        else if (key == "anchor_x0") cfg.anchor_x0 = parse_number(key, value);
        else if (key == "samples") cfg.samples = static_cast<int>(parse_number(key, value));
        else if (key == "out_dir") cfg.out_dir = value;
        else if (key == "sweep_p") cfg.sweep_p = parse_list(key, value);
        else if (key == "sweep_values") cfg.sweep_values = parse_list(key, value);
        else throw ConfigError("config: unknown key '" + key + "'");
    }

    const int given = int(!std::isnan(gm)) + int(!std::isnan(g0m)) +
                      int(!std::isnan(gp)) + int(!std::isnan(g0p));
    if (given == 4) {
        cfg.exponents = AsymptoticExponents{
            .gamma_minus = gm,
            .gamma0_minus = g0m,
            .gamma_plus = gp,
            .gamma0_plus = g0p,
            .source = ExponentSource::UserSupplied,
        };
    } else if (given != 0) {
        throw ConfigError("config: supply all four of gamma_minus, "
                          "gamma0_minus, gamma_plus, gamma0_plus or none");
    }

    if (!(cfg.tol_c > 0.0) || !(cfg.tol_ode > 0.0) || !(cfg.tol_quad > 0.0)) {
        throw ConfigError("config: tolerances must be positive");
    }
    if (cfg.samples < 16) {
        throw ConfigError("config: samples must be at least 16");
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    RunConfig cfg = parse_config_text(buffer.str());
    if (!cfg.table_path.empty()) {
        // Relative table paths resolve against the config file's directory.
        const std::filesystem::path table(cfg.table_path);
        if (table.is_relative()) {
            cfg.table_path =
                (std::filesystem::path(path).parent_path() / table).string();
        }
    }
    return cfg;
}

void read_table_csv(const std::string& path, std::vector<double>& s,
                    std::vector<double>& g) {
    std::ifstream in(path);
    if (!in) throw ConfigError("table: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line) || trim(line) != "s,g") {
        throw ConfigError("table: first line must be the header 's,g'");
    }
    s.clear();
    g.clear();
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("table: line " + std::to_string(line_no) +
                              " is not 's,g'");
        }
        s.push_back(parse_number("s", trim(line.substr(0, comma))));
        g.push_back(parse_number("g", trim(line.substr(comma + 1))));
    }
}

namespace {

ProblemSpec build_family(const RunConfig& cfg, double p, double value) {
    BuildOptions opts;
    opts.exponents = cfg.exponents;
    if (cfg.family == "cubic") {
        return make_cubic_bistable(value, p, opts);
    }
    if (cfg.family == "double_well") {
        return make_double_well(value, p, opts);
    }
    if (cfg.family == "alpha_bistable") {
        return make_alpha_bistable(cfg.alpha, value, p, opts);
    }
    if (cfg.family == "tabulated") {
        std::vector<double> s, g;
        read_table_csv(cfg.table_path, s, g);
        return make_tabulated(std::move(s), std::move(g), p, opts);
    }
    if (cfg.family == "manufactured") {
        // The swept parameter of this family is the planted speed.
        return manufactured_problem(cfg.kappa, cfg.a, cfg.b, value, p).spec;
    }
    throw ConfigError("config: unknown family '" + cfg.family + "'");
}

}  // namespace

std::string family_parameter_name(const RunConfig& cfg) {
    if (cfg.family == "cubic" || cfg.family == "alpha_bistable") return "s0";
    if (cfg.family == "double_well") return "alpha";
    if (cfg.family == "manufactured") return "c";
    return "value";
}

ProblemSpec build_from_config(const RunConfig& cfg) {
    double value = cfg.s0;
    if (cfg.family == "double_well") value = cfg.alpha;
    if (cfg.family == "manufactured") value = cfg.c;
    return build_from_config(cfg, cfg.p, value);
}

ProblemSpec build_from_config(const RunConfig& cfg, double p, double value) {
    return build_family(cfg, p, value);
}

}  // namespace fkpp
