#include "dogtilt/png_io.hpp"

#include <png.h>

#include <cmath>
#include <cstdio>
#include <memory>

namespace dogtilt
{

namespace
{

struct FileCloser
{
	void operator()(std::FILE* f) const { std::fclose(f); }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

File open(const std::filesystem::path& path, const char* mode)
{
	File f(std::fopen(path.c_str(), mode));
	if (!f)
		throw PngError("cannot open " + path.string());
	return f;
}

[[noreturn]] void on_error(png_structp, png_const_charp msg)
{
	throw PngError(msg);
}

void on_warning(png_structp, png_const_charp) {}

void write_rows(const std::filesystem::path& path, int width, int height, int color_type,
                const std::uint8_t* data, std::size_t stride)
{
	File f = open(path, "wb");
	png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, on_error, on_warning);
	png_infop info = png ? png_create_info_struct(png) : nullptr;
	if (!info)
	{
		png_destroy_write_struct(&png, nullptr);
		throw PngError("libpng initialisation failed");
	}
	struct Guard
	{
		png_structp& p;
		png_infop& i;
		~Guard() { png_destroy_write_struct(&p, &i); }
	} guard{png, info};

	png_init_io(png, f.get());
	png_set_IHDR(png, info, width, height, 8, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
	             PNG_FILTER_TYPE_DEFAULT);
	png_write_info(png, info);
	for (int y = 0; y < height; ++y)
		png_write_row(png, data + std::size_t(y) * stride);
	png_write_end(png, nullptr);
}

} // namespace

void write_png(const std::filesystem::path& path, const Gray8& img)
{
	write_rows(path, int(img.cols()), int(img.rows()), PNG_COLOR_TYPE_GRAY, img.data(), std::size_t(img.cols()));
}

void write_png(const std::filesystem::path& path, const Rgb8& img)
{
	write_rows(path, img.width, img.height, PNG_COLOR_TYPE_RGB, img.data.data(), std::size_t(img.width) * 3);
}

Gray8 read_png_gray(const std::filesystem::path& path)
{
	File f = open(path, "rb");
	png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, on_error, on_warning);
	png_infop info = png ? png_create_info_struct(png) : nullptr;
	if (!info)
	{
		png_destroy_read_struct(&png, nullptr, nullptr);
		throw PngError("libpng initialisation failed");
	}
	struct Guard
	{
		png_structp& p;
		png_infop& i;
		~Guard() { png_destroy_read_struct(&p, &i, nullptr); }
	} guard{png, info};

	png_init_io(png, f.get());
	png_read_info(png, info);
	const auto color = png_get_color_type(png, info);
	const auto depth = png_get_bit_depth(png, info);
	if (color == PNG_COLOR_TYPE_PALETTE)
		png_set_palette_to_rgb(png);
	if (color == PNG_COLOR_TYPE_GRAY && depth < 8)
		png_set_expand_gray_1_2_4_to_8(png);
	if (depth == 16)
		png_set_strip_16(png);
	if (color & PNG_COLOR_MASK_ALPHA)
		png_set_strip_alpha(png);
	if (color == PNG_COLOR_TYPE_RGB || color == PNG_COLOR_TYPE_RGB_ALPHA || color == PNG_COLOR_TYPE_PALETTE)
		png_set_rgb_to_gray_fixed(png, 1, -1, -1);
	png_read_update_info(png, info);

	const int w = int(png_get_image_width(png, info)), h = int(png_get_image_height(png, info));
	if (png_get_channels(png, info) != 1)
		throw PngError("unsupported PNG layout in " + path.string());
	Gray8 img(h, w);
	for (int y = 0; y < h; ++y)
		png_read_row(png, img.row(y).data(), nullptr);
	png_read_end(png, nullptr);
	return img;
}

Gray8 to_gray8(const Image& img)
{
	return (img.cwiseMax(0.0).cwiseMin(1.0) * 255.0).round().cast<std::uint8_t>();
}

Image from_gray8(const Gray8& img)
{
	return img.cast<double>() / 255.0;
}

} // namespace dogtilt
