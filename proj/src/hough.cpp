#include "dogtilt/hough.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <tuple>

namespace dogtilt
{

std::string_view to_string(RefOrientation r)
{
	switch (r)
	{
	case RefOrientation::H: return "H";
	case RefOrientation::V: return "V";
	case RefOrientation::DPlus: return "D+";
	case RefOrientation::DMinus: return "D-";
	}
	return "?";
}

double screen_angle(RefOrientation r)
{
	switch (r)
	{
	case RefOrientation::H: return 0.0;
	case RefOrientation::V: return 90.0;
	case RefOrientation::DPlus: return 45.0;
	case RefOrientation::DMinus: return -45.0;
	}
	return 0.0;
}

double deviation_from(double theta_deg, RefOrientation ref)
{
	double a = (90.0 - theta_deg) - screen_angle(ref);
	return a - 180.0 * std::floor((a + 90.0) / 180.0);
}

void validate(const HoughConfig& c)
{
	if (!(c.theta_step_deg > 0.0))
		throw InvalidSpec("theta_step_deg", "must be positive");
	if (!(c.rho_step_px > 0.0))
		throw InvalidSpec("rho_step_px", "must be positive");
	if (c.num_peaks < 1)
		throw InvalidSpec("num_peaks", "must be positive");
	if (!(c.angular_window_deg > 0.0 && c.angular_window_deg < 22.5))
		throw InvalidSpec("angular_window_deg", "must lie in (0, 22.5)");
	if (!(c.min_length_px > 0.0))
		throw InvalidSpec("min_length_px", "must be positive");
	if (!(c.fill_gap_px > 0.0))
		throw InvalidSpec("fill_gap_px", "must be positive");
}

namespace
{

constexpr double kDeg = M_PI / 180.0;

std::vector<Point> foreground(const Mask& m)
{
	std::vector<Point> pts;
	for (int y = 0; y < m.rows(); ++y)
		for (int x = 0; x < m.cols(); ++x)
			if (m(y, x))
				pts.push_back({x, y});
	return pts;
}

} // namespace

Accumulator hough_accumulate(const Mask& binary, const HoughConfig& config)
{
	validate(config);
	if (binary.size() == 0)
		throw DimensionError("hough_accumulate: empty plane");

	Accumulator acc;
	acc.theta_step = config.theta_step_deg;
	acc.rho_step = config.rho_step_px;
	acc.cx = (binary.cols() - 1) / 2.0;
	acc.cy = (binary.rows() - 1) / 2.0;

	const double steps = 180.0 / config.theta_step_deg;
	const long rounded = std::lround(steps);
	const bool exact = std::abs(steps - double(rounded)) < 1e-9;
	const int n = exact ? int(rounded) : int(std::ceil(steps));
	acc.cos_t.resize(n);
	acc.sin_t.resize(n);
	if (exact && n % 2 == 0)
	{
		// Build [90, 180) from [0, 90) so that theta + 90 is an exact
		// quarter turn of the table.
		const int half = n / 2;
		for (int i = 0; i < half; ++i)
		{
			acc.cos_t[i] = i == 0 ? 1.0 : std::cos(i * config.theta_step_deg * kDeg);
			acc.sin_t[i] = i == 0 ? 0.0 : std::sin(i * config.theta_step_deg * kDeg);
			acc.cos_t[i + half] = -acc.sin_t[i];
			acc.sin_t[i + half] = acc.cos_t[i];
		}
	}
	else
	{
		for (int i = 0; i < n; ++i)
		{
			acc.cos_t[i] = std::cos(i * config.theta_step_deg * kDeg);
			acc.sin_t[i] = std::sin(i * config.theta_step_deg * kDeg);
		}
	}

	const double half_diag = std::hypot(acc.cx, acc.cy);
	acc.rho_offset = int(std::ceil(half_diag / acc.rho_step)) + 1;
	acc.votes = Plane<std::int32_t>::Zero(n, 2 * acc.rho_offset + 1);

	for (const Point& p : foreground(binary))
	{
		const double dx = p.x - acc.cx, dy = p.y - acc.cy;
		for (int i = 0; i < n; ++i)
		{
			double r = (dx * acc.cos_t[i] + dy * acc.sin_t[i]) / acc.rho_step;
			++acc.votes(i, int(std::lround(r)) + acc.rho_offset);
		}
	}
	return acc;
}

std::vector<Peak> find_peaks(const Accumulator& acc, RefOrientation ref, const HoughConfig& config)
{
	const int nt = acc.theta_count(), nr = acc.rho_count();
	const bool wraps = std::abs(nt * acc.theta_step - 180.0) < 1e-9;

	auto beats = [&](int i, int j, int ni, int nj) {
		const int a = acc.votes(i, j), b = acc.votes(ni, nj);
		return a > b || (a == b && std::tie(i, j) < std::tie(ni, nj));
	};

	std::vector<Peak> peaks;
	for (int i = 0; i < nt; ++i)
	{
		if (std::abs(deviation_from(acc.theta_deg(i), ref)) > config.angular_window_deg + 1e-9)
			continue;
		for (int j = 0; j < nr; ++j)
		{
			if (acc.votes(i, j) <= 0)
				continue;
			bool is_peak = true;
			for (int di = -1; di <= 1 && is_peak; ++di)
				for (int dj = -1; dj <= 1 && is_peak; ++dj)
				{
					if (di == 0 && dj == 0)
						continue;
					int ni = i + di, nj = j + dj;
					if (ni < 0 || ni >= nt)
					{
						if (!wraps)
							continue;
						ni = (ni + nt) % nt;
						nj = nr - 1 - nj;
					}
					if (nj < 0 || nj >= nr)
						continue;
					is_peak = beats(i, j, ni, nj);
				}
			if (is_peak)
				peaks.push_back({i, j, acc.votes(i, j)});
		}
	}
	std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
		return std::tie(b.votes, a.theta_index, a.rho_index) < std::tie(a.votes, b.theta_index, b.rho_index);
	});
	if (peaks.size() > std::size_t(config.num_peaks))
		peaks.resize(config.num_peaks);
	return peaks;
}

std::vector<LineSegment> extract_segments(const Accumulator& acc, const Mask& binary, const HoughConfig& config)
{
	validate(config);
	const std::vector<Point> pts = foreground(binary);
	std::vector<LineSegment> out;

	for (RefOrientation ref : kRefOrientations)
		for (const Peak& peak : find_peaks(acc, ref, config))
		{
			const int i = peak.theta_index;
			const double c = acc.cos_t[i], s = acc.sin_t[i];

			// Pixels within one rho step of the peak line, ordered along the
			// screen direction (sin, -cos). A raster line straddling a bin
			// boundary splits its votes between neighbouring bins, so the
			// peak bin alone would leave gaps.
			const double rho = acc.rho(peak.rho_index);
			const double reach = acc.rho_step + 1e-9;
			std::vector<std::pair<double, Point>> on_line;
			for (const Point& p : pts)
			{
				const double dx = p.x - acc.cx, dy = p.y - acc.cy;
				if (std::abs(dx * c + dy * s - rho) <= reach)
					on_line.push_back({dx * s - dy * c, p});
			}
			std::sort(on_line.begin(), on_line.end(), [](const auto& a, const auto& b) {
				return std::tie(a.first, a.second.y, a.second.x) < std::tie(b.first, b.second.y, b.second.x);
			});

			const double theta = acc.theta_deg(i);
			const double rho_tl = acc.rho(peak.rho_index) + acc.cx * c + acc.cy * s;
			auto emit = [&](std::size_t first, std::size_t last) {
				const Point a = on_line[first].second, b = on_line[last].second;
				const double len = std::hypot(double(b.x - a.x), double(b.y - a.y));
				if (len >= config.min_length_px)
					out.push_back({theta, rho_tl, a, b, len, ref, deviation_from(theta, ref), peak.votes});
			};

			std::size_t run = 0;
			for (std::size_t k = 1; k <= on_line.size(); ++k)
			{
				if (k < on_line.size())
				{
					const Point a = on_line[k - 1].second, b = on_line[k].second;
					if (std::hypot(double(b.x - a.x), double(b.y - a.y)) <= config.fill_gap_px)
						continue;
				}
				if (!on_line.empty())
					emit(run, k - 1);
				run = k;
			}
		}
	return out;
}

ScaleSegments analyze_plane(const Mask& binary, double sigma_c, const HoughConfig& config)
{
	const Accumulator acc = hough_accumulate(binary, config);
	return {sigma_c, extract_segments(acc, binary, config)};
}

std::vector<TiltStats> summarize(const ScaleSegments& s)
{
	std::vector<TiltStats> rows;
	for (RefOrientation ref : kRefOrientations)
	{
		TiltStats t;
		t.sigma_c = s.sigma_c;
		t.ref = ref;
		double sum = 0.0;
		for (const auto& seg : s.segments)
		{
			if (seg.ref != ref)
				continue;
			++t.count;
			sum += std::abs(seg.deviation_deg);
			if (seg.length_px > t.max_length_px)
			{
				t.max_length_px = seg.length_px;
				t.longest_deviation_deg = seg.deviation_deg;
			}
		}
		t.mean_abs_deviation_deg = t.count ? sum / t.count : 0.0;
		rows.push_back(t);
	}
	return rows;
}

const TiltStats& TiltReport::at(double sigma_c, RefOrientation ref) const
{
	for (const auto& r : rows)
		if (r.sigma_c == sigma_c && r.ref == ref)
			return r;
	throw std::out_of_range(fmt::format("no tilt row for sigma {} {}", sigma_c, to_string(ref)));
}

std::vector<MortarLineTilt> mortar_line_tilt(const std::vector<LineSegment>& segments,
                                             const StimulusGeometry& geometry)
{
	std::vector<MortarLineTilt> lines;
	std::vector<double> sums;
	for (const auto& [k, band] : geometry.inter_rows)
	{
		lines.push_back({k, 0, 0.0, 0.0, 0.0});
		sums.push_back(0.0);
	}
	for (const auto& seg : segments)
	{
		if (seg.ref != RefOrientation::H || lines.empty())
			continue;
		const double mid = (seg.start.y + seg.end.y) / 2.0;
		std::size_t best = 0;
		double best_d = 1e300;
		for (std::size_t b = 0; b < geometry.inter_rows.size(); ++b)
		{
			const Rect& band = geometry.inter_rows[b].second;
			double d = std::abs(mid - (band.y0 + (band.height - 1) / 2.0));
			if (d < best_d)
				best_d = d, best = b;
		}
		if (best_d > geometry.tile_px / 2.0)
			continue;
		auto& l = lines[best];
		l.min_deviation_deg = l.count ? std::min(l.min_deviation_deg, seg.deviation_deg) : seg.deviation_deg;
		l.max_deviation_deg = l.count ? std::max(l.max_deviation_deg, seg.deviation_deg) : seg.deviation_deg;
		++l.count;
		sums[best] += seg.deviation_deg;
	}
	for (std::size_t b = 0; b < lines.size(); ++b)
		lines[b].mean_signed_deviation_deg = lines[b].count ? sums[b] / lines[b].count : 0.0;
	return lines;
}

} // namespace dogtilt
