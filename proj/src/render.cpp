#include "dogtilt/render.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>

namespace dogtilt
{

std::string_view to_string(ResponseRender r)
{
	return r == ResponseRender::Gray ? "gray" : "diverging";
}

ResponseRender parse_response_render(std::string_view s)
{
	if (s == "gray") return ResponseRender::Gray;
	if (s == "diverging") return ResponseRender::Diverging;
	throw InvalidSpec("render", fmt::format("unknown render mode '{}'", s));
}

Rgb8 render_diverging(const Plane<double>& plane)
{
	Rgb8 out(int(plane.cols()), int(plane.rows()));
	const double scale = plane.abs().maxCoeff();
	for (int y = 0; y < out.height; ++y)
		for (int x = 0; x < out.width; ++x)
		{
			const double v = scale > 0.0 ? plane(y, x) / scale : 0.0;
			const auto fade = std::uint8_t(std::lround(255.0 * (1.0 - std::abs(v))));
			if (v >= 0.0)
				out.set(x, y, 255, fade, fade);
			else
				out.set(x, y, fade, fade, 255);
		}
	return out;
}

Gray8 render_binary(const Mask& mask)
{
	return (mask != 0).cast<std::uint8_t>() * std::uint8_t(255);
}

namespace
{

void draw_line(Rgb8& img, Point a, Point b, std::uint8_t r, std::uint8_t g, std::uint8_t bl)
{
	int dx = std::abs(b.x - a.x), dy = -std::abs(b.y - a.y);
	int sx = a.x < b.x ? 1 : -1, sy = a.y < b.y ? 1 : -1;
	int err = dx + dy;
	for (;;)
	{
		img.set(a.x, a.y, r, g, bl);
		if (a == b)
			break;
		int e2 = 2 * err;
		if (e2 >= dy)
			err += dy, a.x += sx;
		if (e2 <= dx)
			err += dx, a.y += sy;
	}
}

void draw_cross(Rgb8& img, Point p, std::uint8_t r, std::uint8_t g, std::uint8_t b)
{
	for (int d = -3; d <= 3; ++d)
	{
		img.set(p.x + d, p.y, r, g, b);
		img.set(p.x, p.y + d, r, g, b);
	}
}

} // namespace

Rgb8 render_overlay(const Mask& mask, const std::vector<LineSegment>& segments)
{
	Rgb8 out(int(mask.cols()), int(mask.rows()));
	for (int y = 0; y < out.height; ++y)
		for (int x = 0; x < out.width; ++x)
			if (mask(y, x))
				out.set(x, y, 255, 255, 255);

	std::map<RefOrientation, const LineSegment*> longest;
	for (const auto& s : segments)
	{
		auto& best = longest[s.ref];
		if (!best || s.length_px > best->length_px)
			best = &s;
	}
	for (const auto& s : segments)
		draw_line(out, s.start, s.end, 0, 200, 0);
	for (const auto& [ref, s] : longest)
		draw_line(out, s->start, s->end, 0, 64, 255);
	for (const auto& s : segments)
	{
		draw_cross(out, s.start, 255, 0, 0);
		draw_cross(out, s.end, 255, 220, 0);
	}
	return out;
}

} // namespace dogtilt
