#include "fkpp/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "fkpp/errors.hpp"

namespace fkpp {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // Trim to the shortest representation that still round-trips.
    for (int prec = 1; prec < 17; ++prec) {
        char shorter[40];
        std::snprintf(shorter, sizeof(shorter), "%.*g", prec, v);
        if (std::strtod(shorter, nullptr) == v) return shorter;
    }
    return buf;
}

ordered_json json_number_or_inf(double v) {
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

std::string branch_name(Branch branch) {
    return branch == Branch::Stationary ? "Stationary" : "TravellingWave";
}

std::string finiteness_name(Finiteness f) {
    switch (f) {
        case Finiteness::Finite: return "Finite";
        case Finiteness::Infinite: return "Infinite";
        case Finiteness::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

ordered_json summary_json(const CStarResult& result, const std::string& family) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["family"] = family;
    j["c_star"] = result.c_star;
    j["branch"] = branch_name(result.branch);
    j["terminal_residual"] = result.terminal_residual;
    j["iterations"] = result.iterations;
    j["a_priori_cap"] = std::isnan(result.a_priori_cap)
                            ? ordered_json(nullptr)
                            : ordered_json(result.a_priori_cap);
    if (!result.note.empty()) j["note"] = result.note;
    return j;
}

ordered_json profile_json(const WaveProfile& profile) {
    ordered_json j;
    j["schema_version"] = kSchemaVersion;
    j["c_star"] = profile.c_star;
    j["x0"] = profile.x0;
    j["x1"] = json_number_or_inf(profile.x1);
    j["x_minus1"] = json_number_or_inf(profile.x_minus1);
    j["left_class"] = finiteness_name(profile.iface.left);
    j["right_class"] = finiteness_name(profile.iface.right);
    j["x1_error_bar"] = profile.x1_err;
    j["x_minus1_error_bar"] = profile.x_minus1_err;
    return j;
}

ordered_json reports_json(const std::vector<PropertyReport>& reports) {
    ordered_json arr = ordered_json::array();
    for (const auto& rep : reports) {
        ordered_json j;
        j["check_name"] = rep.check_name;
        j["passed"] = rep.passed;
        j["margin"] = rep.margin;
        j["context"] = rep.context;
        j["negative_control"] = rep.negative_control;
        arr.push_back(std::move(j));
    }
    return arr;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "r,y\n";
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
        out << format_number(t.nodes[i]) << ',' << format_number(t.values[i])
            << '\n';
    }
}

void write_profile_csv(const std::filesystem::path& path, const WaveProfile& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "xi,u,du\n";
    for (std::size_t i = 0; i < p.xi.size(); ++i) {
        out << format_number(p.xi[i]) << ',' << format_number(p.u[i]) << ','
            << format_number(p.du[i]) << '\n';
    }
}

void write_xi_u_csv(const std::filesystem::path& path, const WaveProfile& p) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << "xi,u\n";
    for (std::size_t i = 0; i < p.xi.size(); ++i) {
        out << format_number(p.xi[i]) << ',' << format_number(p.u[i]) << '\n';
    }
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

}  // namespace fkpp
