#pragma once

#include "uqkf/enkf.hpp"
#include "uqkf/ensemble.hpp"
#include "uqkf/grid_density.hpp"
#include "uqkf/kde.hpp"
#include "uqkf/oracle.hpp"
#include "uqkf/pce.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace uqkf {

using Json = nlohmann::ordered_json;

Json to_json(const Vector& v);
Json to_json(const Matrix& m);  ///< array of rows
Vector vector_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);

/// {germ: [...], indices: [[...]], coeffs: [[...]]}, coeffs one row per index.
Json pce_to_json(const PceExpansion& pce);
PceExpansion pce_from_json(const Json& j);

Json posterior_summary_to_json(const PosteriorSummary& s);
/// {gain, forecast_mean, analysis_mean, analysis_cov}.
Json record_to_json(const AssimilationRecord& r);

/// Shortest round-trip text for a double; identical input gives identical text.
std::string format_double(double x);

/// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);
std::string hex64(std::uint64_t h);

void write_text(const std::filesystem::path& path, std::string_view text);
void write_json(const std::filesystem::path& path, const Json& j);

// CSV writers. A non-empty comment goes first as a "# ..." line.

/// One member per row, header dim0,dim1,...
void write_ensemble_csv(const std::filesystem::path& path, const Ensemble& e, const std::string& comment = {});
Ensemble read_ensemble_csv(const std::filesystem::path& path);
/// One grid point per row (x0,...,density) plus path + ".json" with the axes.
void write_grid_csv(const std::filesystem::path& path, const GridDensity& g, const std::string& comment = {});
/// left,right,count,density per bin.
void write_histogram_csv(const std::filesystem::path& path, const Histogram& h, const std::string& comment = {});

}  // namespace uqkf
