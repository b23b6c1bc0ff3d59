#pragma once

#include "dogtilt/image.hpp"
#include "dogtilt/synthesis.hpp"

#include <string_view>
#include <vector>

namespace dogtilt
{

enum class BinarizeMode
{
	Sign,    ///< foreground = positive (ON-centre) response
	Fraction ///< foreground = response above a fraction of the plane maximum
};

std::string_view to_string(BinarizeMode m);
BinarizeMode parse_binarize_mode(std::string_view s);

struct BinarizePolicy
{
	BinarizeMode mode = BinarizeMode::Sign;
	double threshold_frac = 0.5;
	/// Responses at or below this magnitude count as zero. Uniform regions
	/// leave floating-point residue of either sign after filtering.
	double zero_tolerance = 1e-9;
};

void validate(const BinarizePolicy& p);

template <typename Derived>
Mask binarize(const Eigen::ArrayBase<Derived>& plane, const BinarizePolicy& policy)
{
	validate(policy);
	if (plane.size() == 0)
		throw DimensionError("binarize: empty plane");
	using Scalar = typename Derived::Scalar;
	double cut = policy.zero_tolerance;
	if (policy.mode == BinarizeMode::Fraction)
		cut = std::max(cut, policy.threshold_frac * double(plane.maxCoeff()));
	return (plane > static_cast<Scalar>(cut)).template cast<std::uint8_t>();
}

/// 8-connected component labelling. Labels run 1..count in raster order of
/// each component's first pixel; 0 is background.
struct Components
{
	Plane<int> labels;
	int count = 0;
	std::vector<long> areas; ///< areas[i] is the size of label i + 1
	std::vector<Rect> boxes;
};

Components label_components(const Mask& mask);

struct GroupingStats
{
	double sigma_c = 0.0;
	int component_count = 0;
	long largest_component_px = 0;
	/// Components whose bounding box meets two or more tile-row bands.
	int row_spanning_components = 0;
	/// Components that join light tiles of adjacent rows which do not
	/// overlap horizontally, so the link runs along the mortar band between
	/// them (twisted-cord units). Zero when the stimulus has no mortar.
	int mortar_bridged_components = 0;
	/// Components that intersect a dot rectangle.
	int dot_components = 0;
	/// Dot-intersecting components smaller than one dot.
	int small_dot_components = 0;
};

GroupingStats grouping_stats(const Mask& binary, const StimulusGeometry& geometry, double sigma_c = 0.0);

} // namespace dogtilt
