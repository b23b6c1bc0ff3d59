#include "dogtilt/pipeline.hpp"

#include "dogtilt/png_io.hpp"
#include "dogtilt/render.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>

namespace dogtilt
{

namespace fs = std::filesystem;

std::string sigma_label(double sigma)
{
	return fmt::format("{}", sigma);
}

namespace
{

std::string num(double v)
{
	if (std::abs(v) < 5e-7)
		v = 0.0;
	return fmt::format("{:.6f}", v);
}

Json hough_json(const HoughConfig& h)
{
	return {{"theta_step_deg", h.theta_step_deg},
	        {"rho_step_px", h.rho_step_px},
	        {"num_peaks", h.num_peaks},
	        {"angular_window_deg", h.angular_window_deg},
	        {"min_length_px", h.min_length_px},
	        {"fill_gap_px", h.fill_gap_px},
	        {"rho_binning_origin", "image centre"},
	        {"reported_rho_origin", "top-left"},
	        {"peak_rule", "strict 3x3 local maximum, ties to smaller theta then rho"}};
}

Json config_json(const RunConfig& cfg)
{
	Json j = to_json(cfg);
	j.erase("output_dir");
	return j;
}

std::string_view stage_name(Stage s)
{
	switch (s)
	{
	case Stage::Generate: return "generate";
	case Stage::Dog: return "dog";
	case Stage::Full: return "run";
	}
	return "?";
}

Json base_manifest(const RunConfig& cfg, const RunResult& r, std::string_view stage)
{
	Json m;
	m["tool"] = kToolVersion;
	m["stage"] = std::string(stage);
	m["config"] = config_json(cfg);
	m["stimulus"] = r.stimulus.provenance;

	Json eff;
	std::vector<double> sigmas;
	Json windows = Json::object();
	for (const auto& e : r.stack.entries)
	{
		sigmas.push_back(e.sigma_c);
		if (e.response.size())
			windows[sigma_label(e.sigma_c)] = window_size(e.sigma_c, cfg.window_ratio);
	}
	eff["sigmas"] = sigmas;
	eff["surround_ratio"] = cfg.surround_ratio;
	eff["window_ratio"] = cfg.window_ratio;
	eff["window_sizes"] = windows;
	eff["kernel_normalization"] = "each Gaussian sampled on the window and scaled to unit sum";
	eff["padding"] = "replicate";
	eff["binarize"] = {{"mode", std::string(to_string(cfg.binarize.mode))},
	                   {"threshold_frac", cfg.binarize.threshold_frac},
	                   {"zero_tolerance", cfg.binarize.zero_tolerance}};
	eff["connectivity"] = 8;
	eff["hough"] = hough_json(r.hough);
	eff["response_render"] = std::string(to_string(cfg.render));
	m["effective"] = eff;
	return m;
}

} // namespace

Stimulus make_stimulus(const RunConfig& cfg)
{
	validate(cfg);
	Stimulus s;
	Json prov;
	prov["kind"] = std::string(to_string(cfg.stimulus));
	switch (cfg.stimulus)
	{
	case StimulusKind::CafeWall:
		s.image = generate_cafe_wall(cfg.cafe);
		s.geometry = cafe_wall_geometry(cfg.cafe);
		break;
	case StimulusKind::Munsterberg:
	{
		CafeWallSpec spec = cfg.cafe;
		spec.mortar_px = 0;
		s.image = generate_munsterberg(spec);
		s.geometry = cafe_wall_geometry(spec);
		break;
	}
	case StimulusKind::Bulge:
	{
		BulgeSpec spec = effective_bulge(cfg);
		s.image = generate_bulge(spec);
		s.geometry = bulge_geometry(spec);
		prov["dot_count"] = spec.dot_layout.size();
		prov["layout_note"] = cfg.default_dot_layout ? "default approximate layout" : "explicit layout";
		break;
	}
	case StimulusKind::Png:
		s.image = from_gray8(read_png_gray(cfg.input_png));
		prov["source"] = cfg.input_png;
		break;
	}
	prov["source_width"] = s.image.cols();
	prov["source_height"] = s.image.rows();
	if (cfg.crop)
	{
		const Rect& c = *cfg.crop;
		s.image = crop(s.image, c.x0, c.y0, c.width, c.height);
		if (s.geometry)
			s.geometry = crop(*s.geometry, c.x0, c.y0, c.width, c.height);
		prov["crop"] = {c.x0, c.y0, c.width, c.height};
	}
	prov["width"] = s.image.cols();
	prov["height"] = s.image.rows();
	s.provenance = prov;
	return s;
}

RunResult compute(const RunConfig& cfg, Stage stage)
{
	RunResult r;
	r.stimulus = make_stimulus(cfg);
	r.hough = resolve_hough(cfg, r.stimulus.geometry ? &*r.stimulus.geometry : nullptr);
	if (stage != Stage::Generate)
		r.stack = edge_map_stack(r.stimulus.image, cfg.ladder.ladder(), cfg.surround_ratio, cfg.window_ratio);

	if (stage == Stage::Full)
	{
		for (auto& e : r.stack.entries)
		{
			e.binary = binarize(e.response, cfg.binarize);
			if (r.stimulus.geometry)
				r.grouping.push_back(grouping_stats(*e.binary, *r.stimulus.geometry, e.sigma_c));
		}
		r.tilt = tilt_report(r.stack, r.hough);
		if (r.stimulus.geometry && !r.stimulus.geometry->inter_rows.empty())
			for (const auto& s : r.tilt.scales)
				r.mortar_tilt.push_back({s.sigma_c, mortar_line_tilt(s.segments, *r.stimulus.geometry)});
	}
	r.manifest = base_manifest(cfg, r, stage_name(stage));
	return r;
}

namespace
{

class ArtifactWriter
{
public:
	ArtifactWriter(const fs::path& dir, RunResult& r) : dir_(dir), r_(r) { fs::create_directories(dir_); }

	template <typename Img>
	void png(const std::string& name, const Img& img)
	{
		write_png(dir_ / name, img);
		r_.files.push_back(name);
	}

	void text(const std::string& name, const std::string& body)
	{
		std::ofstream out(dir_ / name, std::ios::binary);
		out << body;
		if (!out)
			throw std::runtime_error("cannot write " + (dir_ / name).string());
		r_.files.push_back(name);
	}

	void manifest()
	{
		r_.manifest["files"] = r_.files;
		std::ofstream out(dir_ / "manifest.json", std::ios::binary);
		out << r_.manifest.dump(2) << '\n';
	}

private:
	fs::path dir_;
	RunResult& r_;
};

void write_analysis(ArtifactWriter& w, const RunConfig& cfg, const RunResult& r)
{
	if (cfg.overlays)
		for (std::size_t i = 0; i < r.stack.entries.size(); ++i)
		{
			const auto& e = r.stack.entries[i];
			w.png("overlay_sigma" + sigma_label(e.sigma_c) + ".png",
			      render_overlay(*e.binary, r.tilt.scales[i].segments));
		}
	w.text("tilt.csv", tilt_csv(r.tilt));
	w.text("segments.csv", segments_csv(r.tilt));
	if (!r.grouping.empty())
		w.text("grouping.csv", grouping_csv(r.grouping));
	if (!r.mortar_tilt.empty())
		w.text("mortar_tilt.csv", mortar_tilt_csv(r.mortar_tilt));
}

template <typename Fn>
void guarded(ArtifactWriter& w, RunResult& r, Fn&& body)
{
	try
	{
		body();
		r.manifest["status"] = "complete";
		w.manifest();
	}
	catch (const std::exception& e)
	{
		r.complete = false;
		r.manifest["status"] = "partial";
		r.manifest["error"] = e.what();
		try
		{
			w.manifest();
		}
		catch (...)
		{
		}
		throw;
	}
}

} // namespace

RunResult run_pipeline(const RunConfig& cfg, Stage stage)
{
	RunResult r = compute(cfg, stage);
	ArtifactWriter w(cfg.output_dir, r);
	guarded(w, r, [&] {
		w.png("stimulus.png", to_gray8(r.stimulus.image));
		for (const auto& e : r.stack.entries)
		{
			const std::string label = sigma_label(e.sigma_c);
			if (cfg.render == ResponseRender::Gray)
				w.png("response_sigma" + label + ".png", render_gray(e.response));
			else
				w.png("response_sigma" + label + ".png", render_diverging(e.response));
			if (e.binary)
				w.png("binary_sigma" + label + ".png", render_binary(*e.binary));
		}
		if (stage == Stage::Full)
			write_analysis(w, cfg, r);
	});
	return r;
}

RunResult analyze_binaries(const RunConfig& cfg, const std::vector<BinaryInput>& inputs)
{
	if (inputs.empty())
		throw InvalidSpec("binary", "no binary edge maps given");
	RunResult r;
	if (cfg.stimulus != StimulusKind::Png)
		r.stimulus = make_stimulus(cfg);
	else
		r.stimulus.provenance = {{"kind", "binary edge maps"}};
	const StimulusGeometry* geom = r.stimulus.geometry ? &*r.stimulus.geometry : nullptr;
	r.hough = resolve_hough(cfg, geom);

	Json sources = Json::array();
	for (const auto& in : inputs)
	{
		const Gray8 g = read_png_gray(in.path);
		if (geom && (g.cols() != geom->width || g.rows() != geom->height))
			throw DimensionError(fmt::format("{} is {}x{}, stimulus is {}x{}", in.path.string(), g.cols(), g.rows(),
			                                 geom->width, geom->height));
		StackEntry<double> e;
		e.sigma_c = in.sigma_c;
		e.binary = (g.array() >= 128).cast<std::uint8_t>();
		if (geom)
			r.grouping.push_back(grouping_stats(*e.binary, *geom, e.sigma_c));
		r.stack.entries.push_back(std::move(e));
		sources.push_back({{"path", in.path.string()}, {"sigma_c", in.sigma_c}});
	}
	r.tilt = tilt_report(r.stack, r.hough);
	if (geom && !geom->inter_rows.empty())
		for (const auto& s : r.tilt.scales)
			r.mortar_tilt.push_back({s.sigma_c, mortar_line_tilt(s.segments, *geom)});

	r.manifest = base_manifest(cfg, r, "analyze");
	r.manifest["binary_inputs"] = sources;

	ArtifactWriter w(cfg.output_dir, r);
	guarded(w, r, [&] { write_analysis(w, cfg, r); });
	return r;
}

std::string tilt_csv(const TiltReport& report)
{
	std::string out = "sigma_c,ref_orientation,count,mean_abs_deviation_deg,max_length_px,longest_deviation_deg\n";
	for (const auto& t : report.rows)
		out += fmt::format("{},{},{},{},{},{}\n", sigma_label(t.sigma_c), to_string(t.ref), t.count,
		                   num(t.mean_abs_deviation_deg), num(t.max_length_px), num(t.longest_deviation_deg));
	return out;
}

std::string segments_csv(const TiltReport& report)
{
	std::string out = "sigma_c,ref_orientation,theta_deg,rho_px,x0,y0,x1,y1,length_px,deviation_deg,votes\n";
	for (const auto& s : report.scales)
		for (const auto& seg : s.segments)
			out += fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", sigma_label(s.sigma_c), to_string(seg.ref),
			                   num(seg.theta_deg), num(seg.rho_px), seg.start.x, seg.start.y, seg.end.x, seg.end.y,
			                   num(seg.length_px), num(seg.deviation_deg), seg.votes);
	return out;
}

std::string grouping_csv(const std::vector<GroupingStats>& rows)
{
	std::string out = "sigma_c,component_count,largest_component_px,row_spanning_components,"
	                  "mortar_bridged_components,dot_components,small_dot_components\n";
	for (const auto& g : rows)
		out += fmt::format("{},{},{},{},{},{},{}\n", sigma_label(g.sigma_c), g.component_count,
		                   g.largest_component_px, g.row_spanning_components, g.mortar_bridged_components,
		                   g.dot_components, g.small_dot_components);
	return out;
}

std::string mortar_tilt_csv(const std::vector<std::pair<double, std::vector<MortarLineTilt>>>& rows)
{
	std::string out = "sigma_c,mortar_row,count,mean_signed_deviation_deg,min_deviation_deg,max_deviation_deg\n";
	for (const auto& [sigma, lines] : rows)
		for (const auto& l : lines)
			out += fmt::format("{},{},{},{},{},{}\n", sigma_label(sigma), l.mortar_row, l.count,
			                   num(l.mean_signed_deviation_deg), num(l.min_deviation_deg), num(l.max_deviation_deg));
	return out;
}

} // namespace dogtilt
