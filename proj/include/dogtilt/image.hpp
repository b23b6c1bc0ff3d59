#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dogtilt
{

/// Row-major raster indexed (y, x), origin at the top-left corner.
template <typename Scalar>
using Plane = Eigen::Array<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Luminance raster with values in [0,1].
using Image = Plane<double>;

/// Binary raster, 1 = foreground.
using Mask = Plane<std::uint8_t>;

template <typename Scalar>
using Taps = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

/// A spec or parameter block failed validation. field() names the offender.
class InvalidSpec : public std::invalid_argument
{
public:
	InvalidSpec(std::string field, const std::string& what)
		: std::invalid_argument(field + ": " + what), field_(std::move(field))
	{
	}

	const std::string& field() const noexcept { return field_; }

private:
	std::string field_;
};

class DimensionError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

class StateError : public std::logic_error
{
public:
	using std::logic_error::logic_error;
};

struct Rect
{
	int x0 = 0;
	int y0 = 0;
	int width = 0;
	int height = 0;

	int x1() const { return x0 + width; }
	int y1() const { return y0 + height; }
	bool empty() const { return width <= 0 || height <= 0; }
	long area() const { return empty() ? 0 : long(width) * height; }
	bool contains(int x, int y) const { return x >= x0 && x < x1() && y >= y0 && y < y1(); }
};

inline Rect intersect(const Rect& a, const Rect& b)
{
	int x0 = std::max(a.x0, b.x0), y0 = std::max(a.y0, b.y0);
	int x1 = std::min(a.x1(), b.x1()), y1 = std::min(a.y1(), b.y1());
	return {x0, y0, std::max(0, x1 - x0), std::max(0, y1 - y0)};
}

} // namespace dogtilt
