#pragma once

#include "dogtilt/run_config.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dogtilt
{

inline constexpr const char* kToolVersion = "dogtilt 0.1.0";

struct Stimulus
{
	Image image;
	std::optional<StimulusGeometry> geometry; ///< absent for external PNGs
	Json provenance;
};

Stimulus make_stimulus(const RunConfig& cfg);

enum class Stage
{
	Generate, ///< stimulus only
	Dog,      ///< stimulus and response stack
	Full      ///< plus binarization, grouping and Hough tilt
};

struct RunResult
{
	Stimulus stimulus;
	EdgeMapStack<double> stack;
	HoughConfig hough;
	TiltReport tilt;
	std::vector<GroupingStats> grouping;
	std::vector<std::pair<double, std::vector<MortarLineTilt>>> mortar_tilt;
	Json manifest;
	std::vector<std::string> files;
	bool complete = true;
};

/// Runs the configured stages in memory.
RunResult compute(const RunConfig& cfg, Stage stage = Stage::Full);

/// compute() and then writes every artifact plus manifest.json into
/// cfg.output_dir. Write failures are recorded in the manifest (status
/// "partial") and rethrown.
RunResult run_pipeline(const RunConfig& cfg, Stage stage = Stage::Full);

/// Binarize-and-Hough analysis of existing binary edge maps (foreground =
/// pixels >= 128). Sigma values label the outputs.
struct BinaryInput
{
	std::filesystem::path path;
	double sigma_c = 0.0;
};

RunResult analyze_binaries(const RunConfig& cfg, const std::vector<BinaryInput>& inputs);

std::string tilt_csv(const TiltReport& report);
std::string segments_csv(const TiltReport& report);
std::string grouping_csv(const std::vector<GroupingStats>& rows);
std::string mortar_tilt_csv(const std::vector<std::pair<double, std::vector<MortarLineTilt>>>& rows);

/// Shortest round-trip text for a scale value, used in file names.
std::string sigma_label(double sigma);

} // namespace dogtilt
