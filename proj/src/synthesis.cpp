#include "dogtilt/synthesis.hpp"

#include <cmath>
#include <fmt/format.h>

namespace dogtilt
{

namespace
{

void require(bool ok, const char* field, const std::string& why)
{
	if (!ok)
		throw InvalidSpec(field, why);
}

bool unit(double v) { return v >= 0.0 && v <= 1.0; }

int floor_div(int a, int b)
{
	int q = a / b;
	return (a % b != 0 && (a < 0) != (b < 0)) ? q - 1 : q;
}

} // namespace

std::string_view to_string(Corner c)
{
	switch (c)
	{
	case Corner::NE: return "NE";
	case Corner::NW: return "NW";
	case Corner::SE: return "SE";
	case Corner::SW: return "SW";
	}
	return "?";
}

Corner parse_corner(std::string_view s)
{
	if (s == "NE") return Corner::NE;
	if (s == "NW") return Corner::NW;
	if (s == "SE") return Corner::SE;
	if (s == "SW") return Corner::SW;
	throw InvalidSpec("corner", fmt::format("unknown corner '{}'", s));
}

void validate(const CafeWallSpec& s)
{
	require(s.rows >= 1, "rows", "must be >= 1");
	require(s.cols >= 1, "cols", "must be >= 1");
	require(s.tile_px >= 1, "tile_px", "must be >= 1");
	require(s.mortar_px >= 0, "mortar_px", "must be >= 0");
	require(unit(s.mortar_lum), "mortar_lum", "must lie in [0,1]");
	require(unit(s.lum_dark), "lum_dark", "must lie in [0,1]");
	require(unit(s.lum_light), "lum_light", "must lie in [0,1]");
	require(s.lum_dark < s.lum_light, "lum_dark", "must be below lum_light");
	require(s.phase_frac >= 0.0 && s.phase_frac < 1.0, "phase_frac", "must lie in [0,1)");
}

void validate(const BulgeSpec& s)
{
	require(s.board_rows >= 1, "board_rows", "must be >= 1");
	require(s.board_cols >= 1, "board_cols", "must be >= 1");
	require(s.tile_px >= 1, "tile_px", "must be >= 1");
	require(s.dot_px >= 1, "dot_px", "must be >= 1");
	require(s.dot_px < s.tile_px, "dot_px", "must be smaller than tile_px");
	require(unit(s.lum_dark), "lum_dark", "must lie in [0,1]");
	require(unit(s.lum_light), "lum_light", "must lie in [0,1]");
	require(s.lum_dark < s.lum_light, "lum_dark", "must be below lum_light");
	require(unit(s.dot_lum_on_dark), "dot_lum_on_dark", "must lie in [0,1]");
	require(unit(s.dot_lum_on_light), "dot_lum_on_light", "must lie in [0,1]");
	require(s.dot_lum_on_dark != s.lum_dark, "dot_lum_on_dark", "must contrast with the dark tiles");
	require(s.dot_lum_on_light != s.lum_light, "dot_lum_on_light", "must contrast with the light tiles");
	for (std::size_t i = 0; i < s.dot_layout.size(); ++i)
	{
		const auto& p = s.dot_layout[i];
		bool inside = p.tile_row >= 0 && p.tile_row < s.board_rows && p.tile_col >= 0 &&
		              p.tile_col < s.board_cols && p.offset_px >= 0 && p.offset_px + s.dot_px <= s.tile_px;
		if (!inside)
			throw InvalidSpec(fmt::format("dot_layout[{}]", i), "placement falls outside the image");
	}
}

int row_phase_offset(int k, double phase_frac, int tile_px)
{
	auto shift = static_cast<long long>(std::floor(k * phase_frac * tile_px));
	auto m = shift % tile_px;
	return static_cast<int>(m < 0 ? m + tile_px : m);
}

Image generate_cafe_wall(const CafeWallSpec& spec)
{
	validate(spec);
	const int T = spec.tile_px, M = spec.mortar_px;
	const int width = spec.cols * T;
	const int height = spec.rows * T + (spec.rows - 1) * M;
	Image img = Image::Constant(height, width, spec.mortar_lum);

	Eigen::Array<double, 1, Eigen::Dynamic> line(width);
	for (int k = 0; k < spec.rows; ++k)
	{
		const int off = row_phase_offset(k, spec.phase_frac, T);
		for (int x = 0; x < width; ++x)
			line(x) = floor_div(x - off, T) % 2 == 0 ? spec.lum_dark : spec.lum_light;
		img.middleRows(k * (T + M), T).rowwise() = line;
	}
	return img;
}

Image generate_munsterberg(const CafeWallSpec& spec)
{
	CafeWallSpec s = spec;
	s.mortar_px = 0;
	return generate_cafe_wall(s);
}

namespace
{

bool tile_is_dark(int r, int c) { return (r + c) % 2 == 0; }

Rect dot_rect(const BulgeSpec& s, const DotPlacement& p)
{
	const int T = s.tile_px, d = s.dot_px, o = p.offset_px;
	const int tx = p.tile_col * T, ty = p.tile_row * T;
	const bool north = p.corner == Corner::NE || p.corner == Corner::NW;
	const bool west = p.corner == Corner::NW || p.corner == Corner::SW;
	return {west ? tx + o : tx + T - o - d, north ? ty + o : ty + T - o - d, d, d};
}

} // namespace

Image generate_bulge(const BulgeSpec& spec)
{
	validate(spec);
	const int T = spec.tile_px;
	Image img(spec.board_rows * T, spec.board_cols * T);
	for (int r = 0; r < spec.board_rows; ++r)
		for (int c = 0; c < spec.board_cols; ++c)
			img.block(r * T, c * T, T, T).setConstant(tile_is_dark(r, c) ? spec.lum_dark : spec.lum_light);

	for (const auto& p : spec.dot_layout)
	{
		Rect d = dot_rect(spec, p);
		double v = tile_is_dark(p.tile_row, p.tile_col) ? spec.dot_lum_on_dark : spec.dot_lum_on_light;
		img.block(d.y0, d.x0, d.height, d.width).setConstant(v);
	}
	return img;
}

std::vector<DotPlacement> default_bulge_layout(int board_rows, int board_cols, double radius, int offset_px)
{
	std::vector<DotPlacement> layout;
	const double cy = board_rows / 2.0, cx = board_cols / 2.0;
	for (int r = 0; r < board_rows; ++r)
		for (int c = 0; c < board_cols; ++c)
		{
			double dy = r + 0.5 - cy, dx = c + 0.5 - cx;
			if (std::max(std::abs(dy), std::abs(dx)) > radius)
				continue;
			// Tiles on a centre line have no inward corner along that axis.
			if (dy == 0.0 || dx == 0.0)
				continue;
			bool south = dy < 0, east = dx < 0;
			Corner corner = south ? (east ? Corner::SE : Corner::SW) : (east ? Corner::NE : Corner::NW);
			layout.push_back({r, c, corner, offset_px});
		}
	return layout;
}

StimulusGeometry cafe_wall_geometry(const CafeWallSpec& spec)
{
	validate(spec);
	const int T = spec.tile_px, M = spec.mortar_px;
	StimulusGeometry g;
	g.width = spec.cols * T;
	g.height = spec.rows * T + (spec.rows - 1) * M;
	g.tile_px = T;
	g.mortar_px = M;
	g.lum_light = spec.lum_light;
	for (int k = 0; k < spec.rows; ++k)
	{
		const int y0 = k * (T + M);
		g.tile_rows.push_back({k, Rect{0, y0, g.width, T}});
		if (k + 1 < spec.rows && M > 0)
			g.inter_rows.push_back({k, Rect{0, y0 + T, g.width, M}});

		const int off = row_phase_offset(k, spec.phase_frac, T);
		const Rect band{0, y0, g.width, T};
		for (int t = off > 0 ? -1 : 0; t * T + off < g.width; ++t)
		{
			Rect cell = intersect(Rect{t * T + off, y0, T, T}, band);
			if (cell.empty())
				continue;
			bool dark = ((t % 2) + 2) % 2 == 0;
			g.tiles.push_back({k, t, cell, dark ? spec.lum_dark : spec.lum_light});
		}
	}
	return g;
}

StimulusGeometry bulge_geometry(const BulgeSpec& spec)
{
	validate(spec);
	const int T = spec.tile_px;
	StimulusGeometry g;
	g.width = spec.board_cols * T;
	g.height = spec.board_rows * T;
	g.tile_px = T;
	g.lum_light = spec.lum_light;
	for (int r = 0; r < spec.board_rows; ++r)
	{
		g.tile_rows.push_back({r, Rect{0, r * T, g.width, T}});
		for (int c = 0; c < spec.board_cols; ++c)
			g.tiles.push_back({r, c, Rect{c * T, r * T, T, T}, tile_is_dark(r, c) ? spec.lum_dark : spec.lum_light});
	}
	for (const auto& p : spec.dot_layout)
		g.dots.push_back(dot_rect(spec, p));
	return g;
}

StimulusGeometry crop(const StimulusGeometry& geom, int x0, int y0, int w, int h)
{
	if (w <= 0 || h <= 0 || x0 < 0 || y0 < 0 || x0 + w > geom.width || y0 + h > geom.height)
		throw std::out_of_range("crop rectangle outside stimulus geometry");
	const Rect window{x0, y0, w, h};
	auto shift = [&](Rect r) {
		r = intersect(r, window);
		r.x0 -= x0;
		r.y0 -= y0;
		return r;
	};

	StimulusGeometry g = geom;
	g.width = w;
	g.height = h;
	g.tile_rows.clear();
	g.inter_rows.clear();
	g.tiles.clear();
	g.dots.clear();
	for (const auto& [k, band] : geom.tile_rows)
		if (Rect r = shift(band); !r.empty())
			g.tile_rows.push_back({k, r});
	for (const auto& [k, band] : geom.inter_rows)
		if (Rect r = shift(band); !r.empty())
			g.inter_rows.push_back({k, r});
	for (auto cell : geom.tiles)
		if (cell.rect = shift(cell.rect); !cell.rect.empty())
			g.tiles.push_back(cell);
	for (const auto& d : geom.dots)
		if (Rect r = shift(d); !r.empty())
			g.dots.push_back(r);
	return g;
}

} // namespace dogtilt
