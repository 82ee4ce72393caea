#pragma once

#include <string>
#include <vector>

#include "fkpp/problem.hpp"

namespace fkpp {

/// Parsed key = value configuration. The grammar is documented in the README:
/// one assignment per line, '#' starts a comment, lists are comma separated.
struct RunConfig {
    std::string family = "cubic";  // cubic | double_well | alpha_bistable |
                                   // tabulated | manufactured
    double p = 2.0;
    double s0 = 0.3;
    double alpha = 1.5;
    double kappa = 1.0;
    double a = 2.0;
    double b = 2.0;
    double c = -1.0;
    std::string table_path;
    std::optional<AsymptoticExponents> exponents;  // all four gamma keys given

    double tol_c = 1e-10;
    double tol_ode = 1e-10;
    double tol_quad = 1e-10;
    double anchor_x0 = 0.0;
    int samples = 2048;
    std::string out_dir = "out";

    std::vector<double> sweep_p;       // sweep grid over p (optional)
    std::vector<double> sweep_values;  // sweep grid over the family parameter
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Instantiates the problem described by the configuration (family dispatch,
/// optional user-supplied exponents, tabulated CSV loading).
ProblemSpec build_from_config(const RunConfig& config);

/// Same, with the family parameter (s0 or alpha or manufactured c) replaced
/// by `value` — used by sweeps.
ProblemSpec build_from_config(const RunConfig& config, double p, double value);

/// Name of the swept family parameter ("s0", "alpha" or "c").
std::string family_parameter_name(const RunConfig& config);

/// Reads a two-column CSV with header "s,g".
void read_table_csv(const std::string& path, std::vector<double>& s,
                    std::vector<double>& g);

}  // namespace fkpp
