#pragma once

// Straight-line Hough analysis of binary edge maps.
//
// Lines use the normal parameterization rho = x cos(theta) + y sin(theta)
// with theta in [0, 180) degrees, x to the right and y down. Votes are
// binned with rho measured from the image centre so that a 90 degree
// rotation of the input permutes the accumulator exactly; reported rho
// values are converted back to the top-left origin.
//
// Tilt is the signed angle between a line and its reference orientation,
// positive counter-clockwise as seen on screen. A line with normal angle
// theta runs at screen angle 90 - theta.

#include "dogtilt/dog.hpp"
#include "dogtilt/image.hpp"
#include "dogtilt/synthesis.hpp"

#include <array>
#include <string_view>
#include <vector>

namespace dogtilt
{

enum class RefOrientation
{
	H,     ///< horizontal, screen angle 0
	V,     ///< vertical, 90
	DPlus, ///< rising diagonal, 45
	DMinus ///< falling diagonal, -45
};

inline constexpr std::array<RefOrientation, 4> kRefOrientations = {RefOrientation::H, RefOrientation::V,
                                                                   RefOrientation::DPlus, RefOrientation::DMinus};

std::string_view to_string(RefOrientation r);
double screen_angle(RefOrientation r);

/// Signed deviation of the line with normal angle theta from `ref`, in [-90, 90).
double deviation_from(double theta_deg, RefOrientation ref);

struct HoughConfig
{
	double theta_step_deg = 0.25;
	double rho_step_px = 1.0;
	int num_peaks = 20;
	double angular_window_deg = 10.0;
	double min_length_px = 75.0;
	double fill_gap_px = 6.0;
};

void validate(const HoughConfig& c);

struct Accumulator
{
	double theta_step = 0.25;
	double rho_step = 1.0;
	double cx = 0.0; ///< rho origin
	double cy = 0.0;
	int rho_offset = 0; ///< bin index of rho = 0
	std::vector<double> cos_t;
	std::vector<double> sin_t;
	Plane<std::int32_t> votes; ///< theta index x rho index

	int theta_count() const { return int(votes.rows()); }
	int rho_count() const { return int(votes.cols()); }
	double theta_deg(int i) const { return i * theta_step; }
	/// Centre-origin rho of a bin.
	double rho(int j) const { return (j - rho_offset) * rho_step; }
	int bin(int x, int y, int i) const
	{
		double r = ((x - cx) * cos_t[i] + (y - cy) * sin_t[i]) / rho_step;
		return int(std::lround(r)) + rho_offset;
	}
};

Accumulator hough_accumulate(const Mask& binary, const HoughConfig& config);

struct Point
{
	int x = 0;
	int y = 0;
	bool operator==(const Point&) const = default;
};

struct LineSegment
{
	double theta_deg = 0.0;
	double rho_px = 0.0; ///< top-left origin
	Point start;
	Point end;
	double length_px = 0.0;
	RefOrientation ref = RefOrientation::H;
	double deviation_deg = 0.0;
	int votes = 0;
};

struct Peak
{
	int theta_index = 0;
	int rho_index = 0;
	int votes = 0;
};

/// Local maxima of the accumulator whose theta lies in the band around
/// `ref`, strongest first, at most config.num_peaks. A cell is a peak when
/// it beats every 3x3 neighbour; equal votes are won by the smaller theta,
/// then the smaller rho. Theta wraps at 180 degrees with rho negated.
std::vector<Peak> find_peaks(const Accumulator& acc, RefOrientation ref, const HoughConfig& config);

std::vector<LineSegment> extract_segments(const Accumulator& acc, const Mask& binary, const HoughConfig& config);

struct TiltStats
{
	double sigma_c = 0.0;
	RefOrientation ref = RefOrientation::H;
	int count = 0;
	double mean_abs_deviation_deg = 0.0; ///< 0 when count is 0
	double max_length_px = 0.0;
	double longest_deviation_deg = 0.0;
};

struct ScaleSegments
{
	double sigma_c = 0.0;
	std::vector<LineSegment> segments;
};

struct TiltReport
{
	std::vector<TiltStats> rows; ///< per scale, in kRefOrientations order
	std::vector<ScaleSegments> scales;

	const TiltStats& at(double sigma_c, RefOrientation ref) const;
};

/// Segments of one binary plane plus the per-orientation summary rows.
ScaleSegments analyze_plane(const Mask& binary, double sigma_c, const HoughConfig& config);
std::vector<TiltStats> summarize(const ScaleSegments& s);

template <typename Scalar>
TiltReport tilt_report(const EdgeMapStack<Scalar>& stack, const HoughConfig& config)
{
	TiltReport report;
	for (const auto& e : stack.entries)
	{
		if (!e.binary)
			throw StateError("tilt_report: scale without a binary edge map");
		report.scales.push_back(analyze_plane(*e.binary, e.sigma_c, config));
		auto rows = summarize(report.scales.back());
		report.rows.insert(report.rows.end(), rows.begin(), rows.end());
	}
	return report;
}

/// H-band segments grouped by the nearest mortar band, accepting segments
/// whose midpoint lies within half a tile of it.
struct MortarLineTilt
{
	int mortar_row = 0; ///< index of the tile row above the band
	int count = 0;
	double mean_signed_deviation_deg = 0.0;
	double min_deviation_deg = 0.0;
	double max_deviation_deg = 0.0;
};

std::vector<MortarLineTilt> mortar_line_tilt(const std::vector<LineSegment>& segments,
                                             const StimulusGeometry& geometry);

} // namespace dogtilt
