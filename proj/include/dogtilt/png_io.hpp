#pragma once

#include "dogtilt/image.hpp"

#include <filesystem>

namespace dogtilt
{

using Gray8 = Plane<std::uint8_t>;

/// Interleaved RGB raster: rows x (3 * width).
struct Rgb8
{
	int width = 0;
	int height = 0;
	std::vector<std::uint8_t> data;

	Rgb8() = default;
	Rgb8(int w, int h) : width(w), height(h), data(std::size_t(w) * h * 3, 0) {}
	void set(int x, int y, std::uint8_t r, std::uint8_t g, std::uint8_t b)
	{
		if (x < 0 || y < 0 || x >= width || y >= height)
			return;
		auto* p = &data[(std::size_t(y) * width + x) * 3];
		p[0] = r, p[1] = g, p[2] = b;
	}
};

class PngError : public std::runtime_error
{
public:
	using std::runtime_error::runtime_error;
};

void write_png(const std::filesystem::path& path, const Gray8& img);
void write_png(const std::filesystem::path& path, const Rgb8& img);

/// Any PNG, converted to 8-bit grayscale.
Gray8 read_png_gray(const std::filesystem::path& path);

/// Luminance v stored as round(255 v).
Gray8 to_gray8(const Image& img);
Image from_gray8(const Gray8& img);

} // namespace dogtilt
