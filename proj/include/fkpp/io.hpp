#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "fkpp/properties.hpp"
#include "fkpp/shoot.hpp"
#include "fkpp/speed.hpp"
#include "fkpp/wave.hpp"

namespace fkpp {

using ordered_json = nlohmann::ordered_json;

/// Shortest round-trip decimal text for a double, locale independent.
std::string format_number(double v);

/// "+inf" / "-inf" strings for unbounded values, numbers otherwise.
ordered_json json_number_or_inf(double v);

constexpr int kSchemaVersion = 1;

std::string branch_name(Branch branch);
std::string finiteness_name(Finiteness f);

/// Solve summary: {schema_version, c_star, branch, terminal_residual,
/// iterations, a_priori_cap, ...}.
ordered_json summary_json(const CStarResult& result, const std::string& family);

/// Profile sidecar: {schema_version, c_star, x0, x1, x_minus1, left_class,
/// right_class, error bars}.
ordered_json profile_json(const WaveProfile& profile);

ordered_json reports_json(const std::vector<PropertyReport>& reports);

/// CSV writers; header row, '.' decimal separator, no locale dependence.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& t);
void write_profile_csv(const std::filesystem::path& path, const WaveProfile& p);
void write_xi_u_csv(const std::filesystem::path& path, const WaveProfile& p);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fkpp
