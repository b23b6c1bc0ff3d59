#pragma once

#include "dogtilt/hough.hpp"
#include "dogtilt/png_io.hpp"

#include <string_view>

namespace dogtilt
{

enum class ResponseRender
{
	Gray,     ///< per-plane min -> 0, max -> 255
	Diverging ///< blue (negative) through white (zero) to red (positive)
};

std::string_view to_string(ResponseRender r);
ResponseRender parse_response_render(std::string_view s);

template <typename Scalar>
Gray8 render_gray(const Plane<Scalar>& plane)
{
	const double lo = double(plane.minCoeff()), hi = double(plane.maxCoeff());
	if (!(hi > lo))
		return Gray8::Zero(plane.rows(), plane.cols());
	return ((plane.template cast<double>() - lo) * (255.0 / (hi - lo))).round().template cast<std::uint8_t>();
}

Rgb8 render_diverging(const Plane<double>& plane);

Gray8 render_binary(const Mask& mask);

/// Segments in green over the binary map, the longest per orientation in
/// blue, start points marked with red crosses and end points with yellow.
Rgb8 render_overlay(const Mask& mask, const std::vector<LineSegment>& segments);

} // namespace dogtilt
