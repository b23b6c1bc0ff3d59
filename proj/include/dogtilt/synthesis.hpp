#pragma once

#include "dogtilt/image.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace dogtilt
{

/// Café Wall layout: rows of alternating dark/light tiles, each row shifted
/// by a phase fraction of a tile, separated by mortar bands of uniform
/// luminance. A mortar height of zero gives the Munsterberg figure.
struct CafeWallSpec
{
	int rows = 3;
	int cols = 8;
	int tile_px = 200;
	int mortar_px = 8;
	double mortar_lum = 0.5;
	double phase_frac = 0.5;
	double lum_dark = 0.0;
	double lum_light = 1.0;
};

enum class Corner
{
	NE,
	NW,
	SE,
	SW
};

std::string_view to_string(Corner c);
Corner parse_corner(std::string_view s);

struct DotPlacement
{
	int tile_row = 0;
	int tile_col = 0;
	Corner corner = Corner::SE;
	int offset_px = 2;
};

/// Checkerboard with square dots painted over chosen tile corners.
/// Tile (r, c) is dark when r + c is even.
struct BulgeSpec
{
	int board_rows = 16;
	int board_cols = 16;
	int tile_px = 36;
	int dot_px = 10;
	double lum_dark = 0.0;
	double lum_light = 1.0;
	double dot_lum_on_dark = 1.0;
	double dot_lum_on_light = 0.0;
	std::vector<DotPlacement> dot_layout;
};

void validate(const CafeWallSpec& spec);
void validate(const BulgeSpec& spec);

/// Horizontal offset of tile row k: floor(k * phase_frac * tile_px) mod tile_px.
int row_phase_offset(int k, double phase_frac, int tile_px);

Image generate_cafe_wall(const CafeWallSpec& spec);
Image generate_munsterberg(const CafeWallSpec& spec);
Image generate_bulge(const BulgeSpec& spec);

/// Dots at the corner facing the board centre, for every tile within
/// `radius` tiles (Chebyshev distance from the centre, in tile units) of
/// the board centre. An approximation of the published Complex Bulge; the
/// original placements are not recoverable.
std::vector<DotPlacement> default_bulge_layout(int board_rows, int board_cols, double radius = 4.5,
                                               int offset_px = 2);

/// Pixel-exact sub-raster. Throws std::out_of_range if the rectangle leaves the image.
template <typename Scalar>
Plane<Scalar> crop(const Plane<Scalar>& img, int x0, int y0, int w, int h)
{
	if (w <= 0 || h <= 0 || x0 < 0 || y0 < 0 || x0 + w > img.cols() || y0 + h > img.rows())
		throw std::out_of_range("crop rectangle outside image");
	return img.block(y0, x0, h, w);
}

/// Known layout of a synthesized stimulus, in image pixel coordinates.
struct TileCell
{
	int row = 0; ///< tile-row index in the uncropped stimulus
	int col = 0;
	Rect rect;
	double luminance = 0.0;
};

struct StimulusGeometry
{
	int width = 0;
	int height = 0;
	int tile_px = 0;
	int mortar_px = 0;
	double lum_light = 1.0;
	std::vector<std::pair<int, Rect>> tile_rows;  ///< (row index, band)
	std::vector<std::pair<int, Rect>> inter_rows; ///< (index of the row above, band)
	std::vector<TileCell> tiles;
	std::vector<Rect> dots;
};

StimulusGeometry cafe_wall_geometry(const CafeWallSpec& spec);
StimulusGeometry bulge_geometry(const BulgeSpec& spec);

/// Geometry of the same crop taken from the stimulus; cells are clipped and
/// those falling entirely outside are dropped.
StimulusGeometry crop(const StimulusGeometry& geom, int x0, int y0, int w, int h);

} // namespace dogtilt
