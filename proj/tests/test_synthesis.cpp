#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "dogtilt/synthesis.hpp"

#include <random>
#include <set>

using namespace dogtilt;

namespace
{

std::set<double> levels(const Image& img)
{
	return std::set<double>(img.data(), img.data() + img.size());
}

Image rot90(const Image& img)
{
	// Counter-clockwise on screen: (x, y) -> (y, W - 1 - x).
	Image out(img.cols(), img.rows());
	for (int y = 0; y < img.rows(); ++y)
		for (int x = 0; x < img.cols(); ++x)
			out(img.cols() - 1 - x, y) = img(y, x);
	return out;
}

} // namespace

TEST_CASE("cafe wall dimensions")
{
	CafeWallSpec s{3, 8, 200, 8, 0.5, 0.5, 0.0, 1.0};
	Image img = generate_cafe_wall(s);
	CHECK(img.cols() == 1600);
	CHECK(img.rows() == 616);

	s.rows = 9;
	s.cols = 14;
	img = generate_cafe_wall(s);
	CHECK(img.cols() == 2800);
	CHECK(img.rows() == 1864);
}

TEST_CASE("degenerate cafe wall is a two-tile strip")
{
	CafeWallSpec s{1, 2, 4, 0, 0.5, 0.0, 0.0, 1.0};
	Image img = generate_cafe_wall(s);
	REQUIRE(img.cols() == 8);
	REQUIRE(img.rows() == 4);
	CHECK((img.leftCols(4) == 0.0).all());
	CHECK((img.rightCols(4) == 1.0).all());
	CHECK(levels(img) == std::set<double>{0.0, 1.0});
}

TEST_CASE("cafe wall layout")
{
	CafeWallSpec s{3, 4, 10, 2, 0.5, 0.5, 0.0, 1.0};
	Image img = generate_cafe_wall(s);
	// Mortar bands only between rows.
	CHECK((img.middleRows(10, 2) == 0.5).all());
	CHECK((img.middleRows(22, 2) == 0.5).all());
	CHECK((img.row(0) != 0.5).all());
	CHECK((img.row(img.rows() - 1) != 0.5).all());
	// Row 1 shifted by five pixels: light wraps in on the left.
	CHECK((img.block(12, 0, 10, 5) == 1.0).all());
	CHECK((img.block(12, 5, 10, 10) == 0.0).all());
	CHECK(row_phase_offset(2, 0.5, 10) == 0);
}

TEST_CASE("munsterberg equals cafe wall without mortar")
{
	CafeWallSpec s{3, 8, 200, 8, 0.5, 0.5, 0.0, 1.0};
	Image m = generate_munsterberg(s);
	CHECK(m.cols() == 1600);
	CHECK(m.rows() == 600);
	CHECK(levels(m) == std::set<double>{0.0, 1.0});
	s.mortar_px = 0;
	CHECK((m == generate_cafe_wall(s)).all());
}

TEST_CASE("invalid specs name the field")
{
	CafeWallSpec s;
	s.rows = 0;
	try
	{
		generate_cafe_wall(s);
		FAIL("expected InvalidSpec");
	}
	catch (const InvalidSpec& e)
	{
		CHECK(e.field() == "rows");
	}
	s = CafeWallSpec{};
	s.phase_frac = 1.0;
	CHECK_THROWS_AS(generate_cafe_wall(s), InvalidSpec);
	s = CafeWallSpec{};
	s.lum_dark = 1.0;
	CHECK_THROWS_AS(generate_cafe_wall(s), InvalidSpec);

	BulgeSpec b;
	b.dot_layout = {{0, 0, Corner::SE, 2}, {16, 0, Corner::NW, 2}};
	try
	{
		generate_bulge(b);
		FAIL("expected InvalidSpec");
	}
	catch (const InvalidSpec& e)
	{
		CHECK(e.field() == "dot_layout[1]");
	}
	b.dot_layout = {{0, 0, Corner::SE, 30}};
	CHECK_THROWS_AS(generate_bulge(b), InvalidSpec);
	b = BulgeSpec{};
	b.dot_px = b.tile_px;
	CHECK_THROWS_AS(generate_bulge(b), InvalidSpec);
	b = BulgeSpec{};
	b.dot_lum_on_dark = b.lum_dark;
	CHECK_THROWS_AS(generate_bulge(b), InvalidSpec);
}

TEST_CASE("bulge dot placement")
{
	BulgeSpec b;
	b.dot_layout = {{0, 0, Corner::SE, 2}};
	Image img = generate_bulge(b);
	REQUIRE(img.cols() == 576);
	REQUIRE(img.rows() == 576);
	// Tile (0,0) is dark; its dot ends 2 px from the south and east edges.
	CHECK((img.block(24, 24, 10, 10) == 1.0).all());
	CHECK((img.block(0, 0, 24, 36) == 0.0).all());
	CHECK((img.block(34, 0, 2, 36) == 0.0).all());
	CHECK((img.block(0, 34, 36, 2) == 0.0).all());
	CHECK((img.array() == 1.0).count() == 100 + 128 * 36 * 36);
}

TEST_CASE("plain checkerboard has two levels")
{
	BulgeSpec b;
	Image img = generate_bulge(b);
	CHECK(levels(img) == std::set<double>{0.0, 1.0});
	CHECK((img == 1.0).count() == img.size() / 2);
}

TEST_CASE("central four-corner layout is rotation symmetric")
{
	// Odd board: the checkerboard itself survives a quarter turn.
	BulgeSpec b;
	b.board_rows = b.board_cols = 5;
	for (int r : {1, 2, 3})
		for (int c : {1, 2, 3})
			for (Corner k : {Corner::NE, Corner::NW, Corner::SE, Corner::SW})
				b.dot_layout.push_back({r, c, k, 2});
	Image img = generate_bulge(b);
	CHECK((rot90(img) == img).all());

	// Even board: a quarter turn swaps tile colours, and with contrasting
	// dots the raster maps onto its luminance inverse.
	BulgeSpec e;
	e.board_rows = e.board_cols = 16;
	for (int r : {7, 8})
		for (int c : {7, 8})
			for (Corner k : {Corner::NE, Corner::NW, Corner::SE, Corner::SW})
				e.dot_layout.push_back({r, c, k, 2});
	Image even = generate_bulge(e);
	CHECK((rot90(even) == 1.0 - even).all());
}

TEST_CASE("default bulge layout faces the centre")
{
	auto layout = default_bulge_layout(16, 16);
	CHECK(layout.size() == 100);
	BulgeSpec b;
	b.dot_layout = layout;
	Image img = generate_bulge(b);
	CHECK((rot90(img) == 1.0 - img).all());
	for (const auto& p : layout)
	{
		CHECK(p.offset_px == 2);
		if (p.tile_row == 7 && p.tile_col == 7)
			CHECK(p.corner == Corner::SE);
		if (p.tile_row == 8 && p.tile_col == 8)
			CHECK(p.corner == Corner::NW);
	}
}

TEST_CASE("crop")
{
	CafeWallSpec s{3, 4, 10, 2, 0.5, 0.5, 0.0, 1.0};
	Image img = generate_cafe_wall(s);
	CHECK((crop(img, 0, 0, int(img.cols()), int(img.rows())) == img).all());
	Image one = crop(img, 0, 0, 1, 1);
	CHECK(one.size() == 1);
	CHECK(one(0, 0) == img(0, 0));
	Image part = crop(img, 3, 5, 7, 9);
	CHECK((part == img.block(5, 3, 9, 7)).all());
	CHECK_THROWS_AS(crop(img, 0, 0, int(img.cols()) + 1, 1), std::out_of_range);
	CHECK_THROWS_AS(crop(img, -1, 0, 1, 1), std::out_of_range);
}

TEST_CASE("fig 5 crop section")
{
	CafeWallSpec s{9, 14, 200, 8, 0.5, 0.5, 0.0, 1.0};
	Image img = generate_cafe_wall(s);
	Image sec = crop(img, 400, 416, 1000, 824);
	CHECK(sec.cols() == 1000);
	CHECK(sec.rows() == 824);
	auto g = crop(cafe_wall_geometry(s), 400, 416, 1000, 824);
	CHECK(g.tile_rows.size() == 4);
	CHECK(g.inter_rows.size() == 3);
	CHECK(g.tile_rows.front().second.y0 == 0);
	CHECK(g.tile_rows.back().second.y1() == 824);
}

TEST_CASE("geometry matches the raster")
{
	CafeWallSpec s{4, 5, 12, 3, 0.5, 0.3, 0.1, 0.9};
	Image img = generate_cafe_wall(s);
	auto g = cafe_wall_geometry(s);
	CHECK(g.width == img.cols());
	CHECK(g.height == img.rows());
	long covered = 0;
	for (const auto& t : g.tiles)
	{
		CHECK((img.block(t.rect.y0, t.rect.x0, t.rect.height, t.rect.width) == t.luminance).all());
		covered += t.rect.area();
	}
	CHECK(covered == 4L * 12 * img.cols());
	for (const auto& [k, band] : g.inter_rows)
		CHECK((img.block(band.y0, band.x0, band.height, band.width) == 0.5).all());
}

TEST_CASE("property: layout arithmetic, luminance closure, phase wrap")
{
	std::mt19937 rng(7);
	std::uniform_int_distribution<int> small(1, 6), tile(1, 24), mortar(0, 5);
	std::uniform_real_distribution<double> u(0.0, 1.0);
	for (int trial = 0; trial < 200; ++trial)
	{
		CafeWallSpec s;
		s.rows = small(rng);
		s.cols = small(rng);
		s.tile_px = tile(rng);
		s.mortar_px = mortar(rng);
		s.phase_frac = u(rng) * 0.999;
		s.mortar_lum = u(rng);
		s.lum_dark = u(rng) * 0.5;
		s.lum_light = 0.5 + u(rng) * 0.5 + 1e-3;
		s.lum_light = std::min(s.lum_light, 1.0);
		Image img = generate_cafe_wall(s);
		CHECK(img.cols() == s.cols * s.tile_px);
		CHECK(img.rows() == s.rows * s.tile_px + (s.rows - 1) * s.mortar_px);
		for (double v : levels(img))
			CHECK((v == s.lum_dark || v == s.lum_light || v == s.mortar_lum));
		for (int k = 0; k < s.rows; ++k)
			CHECK(row_phase_offset(k, s.phase_frac + 1.0, s.tile_px) ==
			      row_phase_offset(k, s.phase_frac, s.tile_px));
		CafeWallSpec m = s;
		m.mortar_px = 0;
		CHECK((generate_munsterberg(s) == generate_cafe_wall(m)).all());
	}
}
