#include "dogtilt/run_config.hpp"

#include <fmt/format.h>

#include <functional>
#include <map>

namespace dogtilt
{

std::string_view to_string(StimulusKind k)
{
	switch (k)
	{
	case StimulusKind::CafeWall: return "cafe_wall";
	case StimulusKind::Munsterberg: return "munsterberg";
	case StimulusKind::Bulge: return "bulge";
	case StimulusKind::Png: return "png";
	}
	return "?";
}

StimulusKind parse_stimulus_kind(std::string_view s)
{
	for (auto k : {StimulusKind::CafeWall, StimulusKind::Munsterberg, StimulusKind::Bulge, StimulusKind::Png})
		if (to_string(k) == s)
			return k;
	throw InvalidSpec("stimulus", fmt::format("unknown stimulus '{}'", s));
}

ScaleLadder LadderSpec::ladder() const
{
	if (!sigmas.empty())
	{
		try
		{
			return ScaleLadder(sigmas);
		}
		catch (const InvalidSpec& e)
		{
			throw InvalidSpec("sigmas", std::string(e.what()).substr(e.field().size() + 2));
		}
	}
	if (!(step > 0.0))
		throw InvalidSpec("sigma_step", "must be positive");
	if (!(start > 0.0))
		throw InvalidSpec("sigma_start", "must be positive");
	if (stop < start)
		throw InvalidSpec("sigma_stop", "below sigma_start");
	return ScaleLadder::range(start, stop, step);
}

namespace
{

using Setter = std::function<void(RunConfig&, const Json&)>;

template <typename T>
T value_of(const std::string& key, const Json& v)
{
	try
	{
		if constexpr (std::is_same_v<T, int>)
		{
			if (!v.is_number_integer())
				throw InvalidSpec(key, "expected an integer");
		}
		else if constexpr (std::is_same_v<T, double>)
		{
			if (!v.is_number())
				throw InvalidSpec(key, "expected a number");
		}
		return v.get<T>();
	}
	catch (const nlohmann::json::exception& e)
	{
		throw InvalidSpec(key, e.what());
	}
}

bool uses_cafe(const RunConfig& c)
{
	return c.stimulus == StimulusKind::CafeWall || c.stimulus == StimulusKind::Munsterberg;
}

std::vector<DotPlacement> parse_layout(const Json& v)
{
	if (!v.is_array())
		throw InvalidSpec("dot_layout", "expected \"default\" or an array of placements");
	std::vector<DotPlacement> out;
	for (std::size_t i = 0; i < v.size(); ++i)
	{
		const std::string key = fmt::format("dot_layout[{}]", i);
		const Json& p = v[i];
		if (!p.is_object() || !p.contains("row") || !p.contains("col") || !p.contains("corner"))
			throw InvalidSpec(key, "expected {row, col, corner, offset_px}");
		out.push_back({value_of<int>(key, p["row"]), value_of<int>(key, p["col"]),
		               parse_corner(value_of<std::string>(key, p["corner"])),
		               p.contains("offset_px") ? value_of<int>(key, p["offset_px"]) : 2});
	}
	return out;
}

// Keys other than "preset" and "stimulus", which apply_overrides handles first.
const std::vector<std::pair<std::string, Setter>>& setters()
{
	static const std::vector<std::pair<std::string, Setter>> table = {
		{"rows", [](RunConfig& c, const Json& v) { c.cafe.rows = value_of<int>("rows", v); }},
		{"cols", [](RunConfig& c, const Json& v) { c.cafe.cols = value_of<int>("cols", v); }},
		{"tile_px",
		 [](RunConfig& c, const Json& v) {
			 (uses_cafe(c) ? c.cafe.tile_px : c.bulge.tile_px) = value_of<int>("tile_px", v);
		 }},
		{"mortar_px", [](RunConfig& c, const Json& v) { c.cafe.mortar_px = value_of<int>("mortar_px", v); }},
		{"mortar_lum", [](RunConfig& c, const Json& v) { c.cafe.mortar_lum = value_of<double>("mortar_lum", v); }},
		{"phase_frac", [](RunConfig& c, const Json& v) { c.cafe.phase_frac = value_of<double>("phase_frac", v); }},
		{"lum_dark",
		 [](RunConfig& c, const Json& v) {
			 (uses_cafe(c) ? c.cafe.lum_dark : c.bulge.lum_dark) = value_of<double>("lum_dark", v);
		 }},
		{"lum_light",
		 [](RunConfig& c, const Json& v) {
			 (uses_cafe(c) ? c.cafe.lum_light : c.bulge.lum_light) = value_of<double>("lum_light", v);
		 }},
		{"board_rows", [](RunConfig& c, const Json& v) { c.bulge.board_rows = value_of<int>("board_rows", v); }},
		{"board_cols", [](RunConfig& c, const Json& v) { c.bulge.board_cols = value_of<int>("board_cols", v); }},
		{"dot_px", [](RunConfig& c, const Json& v) { c.bulge.dot_px = value_of<int>("dot_px", v); }},
		{"dot_lum_on_dark",
		 [](RunConfig& c, const Json& v) { c.bulge.dot_lum_on_dark = value_of<double>("dot_lum_on_dark", v); }},
		{"dot_lum_on_light",
		 [](RunConfig& c, const Json& v) { c.bulge.dot_lum_on_light = value_of<double>("dot_lum_on_light", v); }},
		{"dot_layout",
		 [](RunConfig& c, const Json& v) {
			 if (v.is_string() && v.get<std::string>() == "default")
			 {
				 c.default_dot_layout = true;
				 c.bulge.dot_layout.clear();
			 }
			 else
			 {
				 c.default_dot_layout = false;
				 c.bulge.dot_layout = parse_layout(v);
			 }
		 }},
		{"dot_ring_radius",
		 [](RunConfig& c, const Json& v) { c.dot_ring_radius = value_of<double>("dot_ring_radius", v); }},
		{"dot_offset_px", [](RunConfig& c, const Json& v) { c.dot_offset_px = value_of<int>("dot_offset_px", v); }},
		{"input", [](RunConfig& c, const Json& v) { c.input_png = value_of<std::string>("input", v); }},
		{"crop",
		 [](RunConfig& c, const Json& v) {
			 if (v.is_null())
			 {
				 c.crop.reset();
				 return;
			 }
			 auto r = value_of<std::vector<int>>("crop", v);
			 if (r.size() != 4)
				 throw InvalidSpec("crop", "expected [x0, y0, width, height]");
			 c.crop = Rect{r[0], r[1], r[2], r[3]};
		 }},
		{"sigma_start",
		 [](RunConfig& c, const Json& v) {
			 c.ladder.start = value_of<double>("sigma_start", v);
			 c.ladder.sigmas.clear();
		 }},
		{"sigma_stop",
		 [](RunConfig& c, const Json& v) {
			 c.ladder.stop = value_of<double>("sigma_stop", v);
			 c.ladder.sigmas.clear();
		 }},
		{"sigma_step",
		 [](RunConfig& c, const Json& v) {
			 c.ladder.step = value_of<double>("sigma_step", v);
			 c.ladder.sigmas.clear();
		 }},
		{"sigmas",
		 [](RunConfig& c, const Json& v) {
			 c.ladder.sigmas = value_of<std::vector<double>>("sigmas", v);
			 if (c.ladder.sigmas.empty())
				 throw InvalidSpec("sigmas", "must list at least one scale");
		 }},
		{"surround_ratio",
		 [](RunConfig& c, const Json& v) { c.surround_ratio = value_of<double>("surround_ratio", v); }},
		{"window_ratio", [](RunConfig& c, const Json& v) { c.window_ratio = value_of<double>("window_ratio", v); }},
		{"binarize",
		 [](RunConfig& c, const Json& v) {
			 c.binarize.mode = parse_binarize_mode(value_of<std::string>("binarize", v));
		 }},
		{"threshold_frac",
		 [](RunConfig& c, const Json& v) { c.binarize.threshold_frac = value_of<double>("threshold_frac", v); }},
		{"zero_tolerance",
		 [](RunConfig& c, const Json& v) { c.binarize.zero_tolerance = value_of<double>("zero_tolerance", v); }},
		{"theta_step_deg",
		 [](RunConfig& c, const Json& v) { c.hough.theta_step_deg = value_of<double>("theta_step_deg", v); }},
		{"rho_step_px", [](RunConfig& c, const Json& v) { c.hough.rho_step_px = value_of<double>("rho_step_px", v); }},
		{"num_peaks", [](RunConfig& c, const Json& v) { c.hough.num_peaks = value_of<int>("num_peaks", v); }},
		{"angular_window_deg",
		 [](RunConfig& c, const Json& v) {
			 c.hough.angular_window_deg = value_of<double>("angular_window_deg", v);
		 }},
		{"min_length_px",
		 [](RunConfig& c, const Json& v) {
			 if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto"))
				 c.min_length_px.reset();
			 else
				 c.min_length_px = value_of<double>("min_length_px", v);
		 }},
		{"fill_gap_px",
		 [](RunConfig& c, const Json& v) {
			 if (v.is_null() || (v.is_string() && v.get<std::string>() == "auto"))
				 c.fill_gap_px.reset();
			 else
				 c.fill_gap_px = value_of<double>("fill_gap_px", v);
		 }},
		{"output_dir", [](RunConfig& c, const Json& v) { c.output_dir = value_of<std::string>("output_dir", v); }},
		{"render",
		 [](RunConfig& c, const Json& v) { c.render = parse_response_render(value_of<std::string>("render", v)); }},
		{"overlays", [](RunConfig& c, const Json& v) { c.overlays = value_of<bool>("overlays", v); }},
	};
	return table;
}

} // namespace

const std::vector<std::string>& config_keys()
{
	static const std::vector<std::string> keys = [] {
		std::vector<std::string> k{"preset", "stimulus"};
		for (const auto& [name, fn] : setters())
			k.push_back(name);
		return k;
	}();
	return keys;
}

void apply_overrides(RunConfig& cfg, const Json& overrides)
{
	if (!overrides.is_object())
		throw InvalidSpec("config", "expected a JSON object");
	if (overrides.contains("preset"))
		cfg = preset(value_of<std::string>("preset", overrides["preset"]));
	if (overrides.contains("stimulus"))
		cfg.stimulus = parse_stimulus_kind(value_of<std::string>("stimulus", overrides["stimulus"]));

	static const std::map<std::string, Setter> by_name(setters().begin(), setters().end());
	for (const auto& [key, value] : overrides.items())
	{
		if (key == "preset" || key == "stimulus")
			continue;
		auto it = by_name.find(key);
		if (it == by_name.end())
			throw InvalidSpec(key, "unknown configuration key");
		it->second(cfg, value);
	}
}

BulgeSpec effective_bulge(const RunConfig& cfg)
{
	BulgeSpec b = cfg.bulge;
	if (cfg.default_dot_layout)
		b.dot_layout = default_bulge_layout(b.board_rows, b.board_cols, cfg.dot_ring_radius, cfg.dot_offset_px);
	return b;
}

void validate(const RunConfig& cfg)
{
	switch (cfg.stimulus)
	{
	case StimulusKind::CafeWall:
	case StimulusKind::Munsterberg: validate(cfg.cafe); break;
	case StimulusKind::Bulge: validate(effective_bulge(cfg)); break;
	case StimulusKind::Png:
		if (cfg.input_png.empty())
			throw InvalidSpec("input", "png stimulus needs an input path");
		break;
	}
	if (cfg.stimulus != StimulusKind::Png && !cfg.input_png.empty())
		throw InvalidSpec("input", "an input PNG conflicts with a synthesized stimulus");
	const ScaleLadder ladder = cfg.ladder.ladder();
	for (double sigma : ladder.sigmas())
		validate(DogParams{sigma, cfg.surround_ratio, cfg.window_ratio});
	validate(cfg.binarize);
	HoughConfig h = cfg.hough;
	h.min_length_px = cfg.min_length_px.value_or(1.0);
	h.fill_gap_px = cfg.fill_gap_px.value_or(1.0);
	validate(h);
	if (cfg.output_dir.empty())
		throw InvalidSpec("output_dir", "must not be empty");
}

HoughConfig resolve_hough(const RunConfig& cfg, const StimulusGeometry* g)
{
	HoughConfig h = cfg.hough;
	if (g && g->tile_px > 0)
	{
		h.min_length_px = 1.5 * g->tile_px;
		h.fill_gap_px = g->mortar_px > 0 ? 3.0 * g->mortar_px : g->tile_px / 10.0;
	}
	else
	{
		h.min_length_px = 40.0;
		h.fill_gap_px = 5.0;
	}
	if (cfg.min_length_px)
		h.min_length_px = *cfg.min_length_px;
	if (cfg.fill_gap_px)
		h.fill_gap_px = *cfg.fill_gap_px;
	validate(h);
	return h;
}

Json to_json(const RunConfig& c)
{
	Json j;
	j["preset"] = c.preset;
	j["stimulus"] = std::string(to_string(c.stimulus));
	if (c.stimulus == StimulusKind::CafeWall || c.stimulus == StimulusKind::Munsterberg)
	{
		j["rows"] = c.cafe.rows;
		j["cols"] = c.cafe.cols;
		j["tile_px"] = c.cafe.tile_px;
		j["mortar_px"] = c.stimulus == StimulusKind::Munsterberg ? 0 : c.cafe.mortar_px;
		j["mortar_lum"] = c.cafe.mortar_lum;
		j["phase_frac"] = c.cafe.phase_frac;
		j["lum_dark"] = c.cafe.lum_dark;
		j["lum_light"] = c.cafe.lum_light;
	}
	else if (c.stimulus == StimulusKind::Bulge)
	{
		const BulgeSpec b = effective_bulge(c);
		j["board_rows"] = b.board_rows;
		j["board_cols"] = b.board_cols;
		j["tile_px"] = b.tile_px;
		j["dot_px"] = b.dot_px;
		j["lum_dark"] = b.lum_dark;
		j["lum_light"] = b.lum_light;
		j["dot_lum_on_dark"] = b.dot_lum_on_dark;
		j["dot_lum_on_light"] = b.dot_lum_on_light;
		if (c.default_dot_layout)
		{
			j["dot_ring_radius"] = c.dot_ring_radius;
			j["dot_offset_px"] = c.dot_offset_px;
		}
		Json layout = Json::array();
		for (const auto& p : b.dot_layout)
			layout.push_back({{"row", p.tile_row},
			                  {"col", p.tile_col},
			                  {"corner", std::string(to_string(p.corner))},
			                  {"offset_px", p.offset_px}});
		j["dot_layout"] = layout;
	}
	else
	{
		j["input"] = c.input_png;
	}
	j["crop"] = c.crop ? Json{c.crop->x0, c.crop->y0, c.crop->width, c.crop->height} : Json(nullptr);
	j["sigmas"] = c.ladder.ladder().sigmas();
	j["surround_ratio"] = c.surround_ratio;
	j["window_ratio"] = c.window_ratio;
	j["binarize"] = std::string(to_string(c.binarize.mode));
	j["threshold_frac"] = c.binarize.threshold_frac;
	j["zero_tolerance"] = c.binarize.zero_tolerance;
	j["theta_step_deg"] = c.hough.theta_step_deg;
	j["rho_step_px"] = c.hough.rho_step_px;
	j["num_peaks"] = c.hough.num_peaks;
	j["angular_window_deg"] = c.hough.angular_window_deg;
	j["min_length_px"] = c.min_length_px ? Json(*c.min_length_px) : Json("auto");
	j["fill_gap_px"] = c.fill_gap_px ? Json(*c.fill_gap_px) : Json("auto");
	j["output_dir"] = c.output_dir.string();
	j["render"] = std::string(to_string(c.render));
	j["overlays"] = c.overlays;
	return j;
}

namespace
{

RunConfig cafe_preset(const std::string& name, StimulusKind kind, int tile, int mortar, double start, double stop,
                      double step)
{
	RunConfig c;
	c.preset = name;
	c.stimulus = kind;
	c.cafe = CafeWallSpec{3, 8, tile, mortar, 0.5, 0.5, 0.0, 1.0};
	c.ladder = {start, stop, step, {}};
	c.output_dir = "out/" + name;
	return c;
}

RunConfig bulge_preset(const std::string& name, std::vector<double> sigmas)
{
	RunConfig c;
	c.preset = name;
	c.stimulus = StimulusKind::Bulge;
	c.bulge = BulgeSpec{};
	c.ladder = {1.0, 8.0, 1.0, std::move(sigmas)};
	c.surround_ratio = 1.6;
	c.output_dir = "out/" + name;
	return c;
}

const std::map<std::string, std::function<RunConfig()>>& preset_table()
{
	static const std::map<std::string, std::function<RunConfig()>> table = {
		{"fig3_cafewall",
		 [] { return cafe_preset("fig3_cafewall", StimulusKind::CafeWall, 200, 8, 4, 24, 4); }},
		{"fig4_munsterberg",
		 [] { return cafe_preset("fig4_munsterberg", StimulusKind::Munsterberg, 200, 8, 4, 24, 4); }},
		{"fig5_crop_hough",
		 [] {
			 RunConfig c = cafe_preset("fig5_crop_hough", StimulusKind::CafeWall, 200, 8, 8, 28, 4);
			 c.cafe.rows = 9;
			 c.cafe.cols = 14;
			 // Tile rows 2..5 and tile columns 2..6: four rows with their
			 // three interior mortar bands, five tiles wide.
			 c.crop = Rect{400, 416, 1000, 824};
			 return c;
		 }},
		{"fig6_bulge", [] { return bulge_preset("fig6_bulge", {}); }},
		{"fig7_bulge_hough", [] { return bulge_preset("fig7_bulge_hough", {2.0, 4.0}); }},
		{"desk_cafewall", [] { return cafe_preset("desk_cafewall", StimulusKind::CafeWall, 50, 2, 1, 6, 1); }},
		{"desk_munsterberg",
		 [] { return cafe_preset("desk_munsterberg", StimulusKind::Munsterberg, 50, 2, 1, 6, 1); }},
	};
	return table;
}

} // namespace

const std::vector<PresetInfo>& list_presets()
{
	static const std::vector<PresetInfo> info = {
		{"fig3_cafewall", "Cafe Wall 3x8, 200 px tiles, 8 px mortar; sigma_c 4..24 step 4, s=2, h=8"},
		{"fig4_munsterberg", "Munsterberg 3x8, 200 px tiles, no mortar; sigma_c 4..24 step 4, s=2, h=8"},
		{"fig5_crop_hough",
		 "4x5-tile crop of a 9x14 Cafe Wall (200 px tiles, 8 px mortar); sigma_c 8..28 step 4, Hough overlays"},
		{"fig6_bulge", "Complex Bulge approximation, 16x16 board, 36 px tiles, 10 px dots; sigma_c 1..8, s=1.6"},
		{"fig7_bulge_hough", "Complex Bulge approximation at sigma_c 2 and 4 with Hough overlays, s=1.6"},
		{"desk_cafewall", "Cafe Wall 3x8 at quarter scale (50 px tiles, 2 px mortar); sigma_c 1..6"},
		{"desk_munsterberg", "Munsterberg 3x8 at quarter scale (50 px tiles); sigma_c 1..6"},
	};
	return info;
}

RunConfig preset(const std::string& name)
{
	auto it = preset_table().find(name);
	if (it == preset_table().end())
		throw InvalidSpec("preset", fmt::format("unknown preset '{}'", name));
	return it->second();
}

} // namespace dogtilt
