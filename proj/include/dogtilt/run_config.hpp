#pragma once

#include "dogtilt/binarize.hpp"
#include "dogtilt/dog.hpp"
#include "dogtilt/hough.hpp"
#include "dogtilt/render.hpp"
#include "dogtilt/synthesis.hpp"

#include "json.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace dogtilt
{

using Json = nlohmann::ordered_json;

enum class StimulusKind
{
	CafeWall,
	Munsterberg,
	Bulge,
	Png
};

std::string_view to_string(StimulusKind k);
StimulusKind parse_stimulus_kind(std::string_view s);

struct LadderSpec
{
	double start = 4.0;
	double stop = 24.0;
	double step = 4.0;
	std::vector<double> sigmas; ///< explicit list; overrides the range when non-empty

	ScaleLadder ladder() const;
};

/// Everything a run consumes. Geometry-dependent Hough defaults stay
/// unset until resolve_hough() sees the stimulus.
struct RunConfig
{
	std::string preset = "custom";
	StimulusKind stimulus = StimulusKind::CafeWall;
	CafeWallSpec cafe;
	BulgeSpec bulge;
	double dot_ring_radius = 4.5; ///< used when dot_layout is "default"
	int dot_offset_px = 2;
	bool default_dot_layout = true;
	std::string input_png;
	std::optional<Rect> crop;

	LadderSpec ladder;
	double surround_ratio = 2.0;
	double window_ratio = 8.0;
	BinarizePolicy binarize;

	HoughConfig hough;
	std::optional<double> min_length_px;
	std::optional<double> fill_gap_px;

	std::filesystem::path output_dir = "out";
	ResponseRender render = ResponseRender::Gray;
	bool overlays = true;
};

void validate(const RunConfig& cfg);

/// Applies a flat JSON object of overrides (the config-file schema).
/// Unknown keys and ill-typed values raise InvalidSpec naming the key.
void apply_overrides(RunConfig& cfg, const Json& overrides);

/// Every configuration key, in schema order.
const std::vector<std::string>& config_keys();

/// Effective Hough settings. Unset lengths default from the stimulus:
/// min length 1.5 tiles, fill gap 3 mortar heights (a tenth of a tile
/// without mortar). Without geometry they fall back to 40 px and 5 px.
HoughConfig resolve_hough(const RunConfig& cfg, const StimulusGeometry* geometry);

/// The bulge spec with its layout filled in.
BulgeSpec effective_bulge(const RunConfig& cfg);

/// Full configuration as JSON in the config-file schema.
Json to_json(const RunConfig& cfg);

struct PresetInfo
{
	std::string name;
	std::string description;
};

const std::vector<PresetInfo>& list_presets();
RunConfig preset(const std::string& name);

} // namespace dogtilt
