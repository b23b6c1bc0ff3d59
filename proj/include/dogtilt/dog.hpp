#pragma once

// Difference-of-Gaussians receptive-field filtering.
//
// A DoG kernel models a centre-surround ganglion cell: a narrow centre
// Gaussian (sigma_c) minus a wide surround Gaussian (s * sigma_c), both
// sampled on a square window of side h * sigma_c + 1 and normalized to unit
// sum, so the kernel sums to zero and constant regions produce no response.
// Because each normalized 2-D Gaussian is the outer product of a normalized
// 1-D profile with itself, convolution runs as two separable passes.

#include "dogtilt/image.hpp"

#include <cmath>
#include <future>
#include <optional>
#include <vector>

namespace dogtilt
{

struct DogParams
{
	double sigma_c = 1.0;
	double surround_ratio = 2.0;
	double window_ratio = 8.0;
};

/// Odd window side: round(h * sigma_c) + 1, bumped by one when even.
inline int window_size(double sigma_c, double window_ratio)
{
	if (!(sigma_c > 0.0))
		throw InvalidSpec("sigma_c", "must be positive");
	if (!(window_ratio > 0.0))
		throw InvalidSpec("window_ratio", "must be positive");
	int side = static_cast<int>(std::lround(window_ratio * sigma_c)) + 1;
	return side % 2 == 0 ? side + 1 : side;
}

inline void validate(const DogParams& p)
{
	if (!(p.surround_ratio > 1.0))
		throw InvalidSpec("surround_ratio", "must exceed 1");
	if (window_size(p.sigma_c, p.window_ratio) < 3)
		throw InvalidSpec("window_ratio", "window smaller than 3 px");
}

/// Unit-sum sampled Gaussian over [-radius, radius].
template <typename Scalar>
Taps<Scalar> normalized_gaussian(double sigma, int radius)
{
	Taps<Scalar> g(2 * radius + 1);
	for (int i = -radius; i <= radius; ++i)
		g(i + radius) = static_cast<Scalar>(std::exp(-double(i) * i / (2.0 * sigma * sigma)));
	return g / g.sum();
}

template <typename Scalar>
struct DogKernel
{
	DogParams params;
	int side = 0;
	Taps<Scalar> center;   ///< normalized 1-D centre profile
	Taps<Scalar> surround; ///< normalized 1-D surround profile
	Plane<Scalar> weights; ///< center (x) center - surround (x) surround

	int radius() const { return side / 2; }
};

template <typename Scalar = double>
DogKernel<Scalar> build_dog_kernel(const DogParams& params)
{
	validate(params);
	DogKernel<Scalar> k;
	k.params = params;
	k.side = window_size(params.sigma_c, params.window_ratio);
	const int r = k.side / 2;
	k.center = normalized_gaussian<Scalar>(params.sigma_c, r);
	k.surround = normalized_gaussian<Scalar>(params.surround_ratio * params.sigma_c, r);
	k.weights = (k.center.matrix() * k.center.matrix().transpose() -
	             k.surround.matrix() * k.surround.matrix().transpose())
	                .array();
	return k;
}

/// Mass of the continuous surround Gaussian captured by the window, per
/// axis: the sampled 1-D density summed over [-radius, radius].
inline double surround_mass(const DogParams& p)
{
	const int r = window_size(p.sigma_c, p.window_ratio) / 2;
	const double sigma = p.surround_ratio * p.sigma_c;
	double mass = 0.0;
	for (int i = -r; i <= r; ++i)
		mass += std::exp(-double(i) * i / (2.0 * sigma * sigma));
	return mass / (std::sqrt(2.0 * M_PI) * sigma);
}

/// Same as surround_mass over the full square window (the per-axis value squared).
inline double surround_mass_2d(const DogParams& p)
{
	const double m = surround_mass(p);
	return m * m;
}

/// Same-size correlation with a symmetric 1-D kernel along rows then
/// columns, replicating border pixels.
template <typename Derived>
Plane<typename Derived::Scalar> separable_filter(const Eigen::ArrayBase<Derived>& img,
                                                 const Taps<typename Derived::Scalar>& taps)
{
	using Scalar = typename Derived::Scalar;
	const Eigen::Index h = img.rows(), w = img.cols(), r = taps.size() / 2;

	Plane<Scalar> tmp(h, w);
	Eigen::Array<Scalar, 1, Eigen::Dynamic> padded(w + 2 * r);
	for (Eigen::Index y = 0; y < h; ++y)
	{
		padded.segment(r, w) = img.row(y);
		padded.head(r).setConstant(img(y, 0));
		padded.tail(r).setConstant(img(y, w - 1));
		auto out = tmp.row(y);
		out.setZero();
		for (Eigen::Index k = 0; k < taps.size(); ++k)
			out += taps(k) * padded.segment(k, w);
	}

	Plane<Scalar> res = Plane<Scalar>::Zero(h, w);
	for (Eigen::Index y = 0; y < h; ++y)
		for (Eigen::Index k = 0; k < taps.size(); ++k)
		{
			Eigen::Index src = std::clamp<Eigen::Index>(y + k - r, 0, h - 1);
			res.row(y) += taps(k) * tmp.row(src);
		}
	return res;
}

/// DoG response of `img`; unclipped, same size, replicate borders.
template <typename Derived>
Plane<typename Derived::Scalar> convolve(const Eigen::ArrayBase<Derived>& img,
                                         const DogKernel<typename Derived::Scalar>& kernel)
{
	if (img.size() == 0)
		throw DimensionError("convolve: empty image");
	return separable_filter(img, kernel.center) - separable_filter(img, kernel.surround);
}

/// Strictly increasing list of centre scales.
class ScaleLadder
{
public:
	explicit ScaleLadder(std::vector<double> sigmas) : sigmas_(std::move(sigmas))
	{
		if (sigmas_.empty())
			throw InvalidSpec("ladder", "empty");
		for (std::size_t i = 0; i < sigmas_.size(); ++i)
		{
			if (!(sigmas_[i] > 0.0))
				throw InvalidSpec("ladder", "scales must be positive");
			if (i > 0 && !(sigmas_[i] > sigmas_[i - 1]))
				throw InvalidSpec("ladder", "scales must be strictly increasing");
		}
	}

	/// start, start + step, ... up to and including stop.
	static ScaleLadder range(double start, double stop, double step)
	{
		if (!(step > 0.0))
			throw InvalidSpec("ladder", "step must be positive");
		if (stop < start)
			throw InvalidSpec("ladder", "stop below start");
		std::vector<double> s;
		const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
		for (long i = 0; i <= n; ++i)
			s.push_back(start + double(i) * step);
		return ScaleLadder(std::move(s));
	}

	const std::vector<double>& sigmas() const { return sigmas_; }
	std::size_t size() const { return sigmas_.size(); }

private:
	std::vector<double> sigmas_;
};

template <typename Scalar>
struct StackEntry
{
	double sigma_c = 0.0;
	Plane<Scalar> response;
	std::optional<Mask> binary;
};

template <typename Scalar>
struct EdgeMapStack
{
	double surround_ratio = 2.0;
	double window_ratio = 8.0;
	std::vector<StackEntry<Scalar>> entries;
};

/// One DoG response plane per ladder scale, ascending. Scales are filtered
/// concurrently; the result order does not depend on completion order.
template <typename Derived>
EdgeMapStack<typename Derived::Scalar> edge_map_stack(const Eigen::ArrayBase<Derived>& img,
                                                      const ScaleLadder& ladder, double s, double h)
{
	using Scalar = typename Derived::Scalar;
	const Plane<Scalar> source = img;

	std::vector<DogKernel<Scalar>> kernels;
	for (double sigma : ladder.sigmas())
		kernels.push_back(build_dog_kernel<Scalar>({sigma, s, h}));

	std::vector<std::future<Plane<Scalar>>> jobs;
	for (const auto& k : kernels)
		jobs.push_back(std::async(std::launch::async, [&source, &k] { return convolve(source, k); }));

	EdgeMapStack<Scalar> stack{s, h, {}};
	for (std::size_t i = 0; i < jobs.size(); ++i)
		stack.entries.push_back({ladder.sigmas()[i], jobs[i].get(), std::nullopt});
	return stack;
}

} // namespace dogtilt
