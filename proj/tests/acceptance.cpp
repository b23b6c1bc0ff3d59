// Acceptance checks, one line per criterion. Exit status is the number of
// failed criteria.

#include "oracles.hpp"

#include "dogtilt/binarize.hpp"
#include "dogtilt/dog.hpp"
#include "dogtilt/hough.hpp"
#include "dogtilt/pipeline.hpp"

#include <fmt/format.h>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

using namespace dogtilt;
namespace fs = std::filesystem;

namespace
{

struct Outcome
{
	bool pass = false;
	std::string detail;
};

int failures = 0;

void criterion(int n, const std::string& name, double budget_s, const std::function<Outcome()>& fn)
{
	const auto t0 = std::chrono::steady_clock::now();
	Outcome o;
	try
	{
		o = fn();
	}
	catch (const std::exception& e)
	{
		o = {false, std::string("exception: ") + e.what()};
	}
	const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
	if (dt > budget_s)
	{
		o.pass = false;
		o.detail += fmt::format(" (over budget of {}s)", budget_s);
	}
	if (!o.pass)
		++failures;
	fmt::print("[{}] {} {}: {} ({:.2f}s)\n", o.pass ? "PASS" : "FAIL", n, name, o.detail, dt);
	std::fflush(stdout);
}

std::string slurp(const fs::path& p)
{
	std::ifstream in(p, std::ios::binary);
	std::stringstream ss;
	ss << in.rdbuf();
	return ss.str();
}

CafeWallSpec desk_wall()
{
	return {3, 8, 50, 2, 0.5, 0.5, 0.0, 1.0};
}

CafeWallSpec desk_munsterberg()
{
	CafeWallSpec s = desk_wall();
	s.mortar_px = 0;
	s.mortar_lum = 0.0;
	return s;
}

struct LadderRun
{
	std::vector<GroupingStats> grouping;
	TiltReport tilt;
};

LadderRun run_ladder(const Image& img, const StimulusGeometry& g, const ScaleLadder& ladder, double s,
                     const HoughConfig& hough)
{
	auto stack = edge_map_stack(img, ladder, s, 8);
	LadderRun out;
	for (auto& e : stack.entries)
	{
		e.binary = binarize(e.response, {});
		out.grouping.push_back(grouping_stats(*e.binary, g, e.sigma_c));
	}
	out.tilt = tilt_report(stack, hough);
	return out;
}

HoughConfig desk_hough(const StimulusGeometry& g)
{
	RunConfig c;
	return resolve_hough(c, &g);
}

} // namespace

int main()
{
	criterion(1, "window sizing", 1, [] {
		const int a = window_size(8, 8), b = window_size(1, 8);
		return Outcome{a == 65 && b == 9, fmt::format("window(8,8)={} window(1,8)={}", a, b)};
	});

	criterion(2, "kernel invariants", 1, [] {
		std::mt19937 rng(20240601);
		std::uniform_real_distribution<double> sig(0.5, 30.0);
		double worst_sum = 0, min_mass = 1;
		bool symmetric = true;
		for (int i = 0; i < 50; ++i)
		{
			const DogParams p{sig(rng), i % 2 ? 2.0 : 1.6, 8.0};
			auto k = build_dog_kernel(p);
			worst_sum = std::max(worst_sum, std::abs(k.weights.sum()));
			symmetric = symmetric && (k.weights == k.weights.reverse()).all();
			if (p.window_ratio * p.sigma_c >= 2.44 * p.surround_ratio * p.sigma_c)
				min_mass = std::min(min_mass, surround_mass(p));
		}
		return Outcome{worst_sum <= 1e-12 && symmetric && min_mass >= 0.95,
		               fmt::format("max |sum|={:.2e} point-symmetric={} min surround mass={:.4f}", worst_sum,
		                           symmetric, min_mass)};
	});

	criterion(3, "convolution oracle", 10, [] {
		std::mt19937 rng(77);
		std::uniform_real_distribution<double> sig(0.5, 4.0);
		double worst = 0, flat = 0;
		for (int i = 0; i < 20; ++i)
		{
			Image img = oracle::random_image(32, 32, rng);
			auto k = build_dog_kernel({sig(rng), i % 2 ? 2.0 : 1.6, 8});
			worst = std::max(worst, (convolve(img, k) - oracle::direct_convolve(img, k.weights)).abs().maxCoeff());
			Image c = Image::Constant(32, 32, 0.1 + 0.04 * i);
			flat = std::max(flat, convolve(c, k).abs().maxCoeff());
		}
		return Outcome{worst <= 1e-9 && flat <= 1e-9,
		               fmt::format("max |fast-direct|={:.2e} max constant response={:.2e}", worst, flat)};
	});

	criterion(4, "hough angle recovery", 5, [] {
		HoughConfig c;
		c.angular_window_deg = 22.4; // bands tile the circle except the 45 degree midpoints
		c.min_length_px = 40;
		c.fill_gap_px = 3;
		const double tol = std::max(0.5, c.theta_step_deg);
		double worst = 0;
		int missed = 0;
		for (int deg = -40; deg <= 40; deg += 5)
		{
			Mask m = oracle::raster_line(256, deg, 128, 128, 100);
			auto segs = extract_segments(hough_accumulate(m, c), m, c);
			if (segs.empty())
			{
				++missed;
				continue;
			}
			auto best = std::max_element(segs.begin(), segs.end(),
			                             [](auto& a, auto& b) { return a.length_px < b.length_px; });
			const double got = screen_angle(best->ref) + best->deviation_deg;
			worst = std::max(worst, std::abs(got - deg));
		}
		Mask blank = Mask::Zero(256, 256);
		const bool empty = extract_segments(hough_accumulate(blank, c), blank, c).empty();
		return Outcome{missed == 0 && worst <= tol && empty,
		               fmt::format("17 angles, missed={} max error={:.3f} deg (tol {}) blank empty={}", missed, worst,
		                           tol, empty)};
	});

	criterion(5, "cafe wall grouping and mortar tilt", 60, [] {
		const auto spec = desk_wall();
		const auto g = cafe_wall_geometry(spec);
		auto r = run_ladder(generate_cafe_wall(spec), g, ScaleLadder::range(1, 6, 1), 2, desk_hough(g));
		std::string counts;
		for (auto& s : r.grouping)
			counts += fmt::format("{}{}", counts.empty() ? "" : ",", s.mortar_bridged_components);
		const bool a = r.grouping[0].mortar_bridged_components > 0 && r.grouping[1].mortar_bridged_components > 0 &&
		               r.grouping[4].mortar_bridged_components == 0 && r.grouping[5].mortar_bridged_components == 0;

		// Divergence/convergence: every segment on a mortar line shares one
		// sign, and the sign flips from one line to the next.
		bool b = true;
		int scales_with_lines = 0;
		std::string signs;
		for (auto& sc : r.tilt.scales)
		{
			auto lines = mortar_line_tilt(sc.segments, g);
			std::vector<int> sg;
			for (auto& l : lines)
			{
				if (l.count == 0)
					continue;
				if (l.min_deviation_deg > 0)
					sg.push_back(1);
				else if (l.max_deviation_deg < 0)
					sg.push_back(-1);
				else
					sg.push_back(0);
			}
			if (sg.size() < 2)
				continue;
			++scales_with_lines;
			signs += fmt::format(" s{}:", sigma_label(sc.sigma_c));
			for (std::size_t i = 0; i < sg.size(); ++i)
			{
				signs += sg[i] > 0 ? "+" : sg[i] < 0 ? "-" : "0";
				b = b && sg[i] != 0 && (i == 0 || sg[i] == -sg[i - 1]);
			}
		}
		b = b && scales_with_lines >= 2;
		return Outcome{a && b, fmt::format("bridged components per scale [{}]; mortar-line signs{}", counts, signs)};
	});

	criterion(6, "cafe wall vs munsterberg tilt", 60, [] {
		const ScaleLadder fine({1, 2, 3});
		const auto cw = desk_wall(), mu = desk_munsterberg();
		const auto gc = cafe_wall_geometry(cw), gm = cafe_wall_geometry(mu);
		auto rc = run_ladder(generate_cafe_wall(cw), gc, fine, 2, desk_hough(gc));
		auto rm = run_ladder(generate_munsterberg(mu), gm, fine, 2, desk_hough(gm));
		const double cap = HoughConfig{}.theta_step_deg + 0.25;
		bool ok = true;
		std::string detail;
		for (double s : fine.sigmas())
		{
			const auto& c = rc.tilt.at(s, RefOrientation::H);
			const auto& m = rm.tilt.at(s, RefOrientation::H);
			ok = ok && c.mean_abs_deviation_deg > m.mean_abs_deviation_deg && m.mean_abs_deviation_deg <= cap;
			detail += fmt::format(" s{}: cafe {:.3f} (n={}) munsterberg {:.3f} (n={});", sigma_label(s),
			                      c.mean_abs_deviation_deg, c.count, m.mean_abs_deviation_deg, m.count);
		}
		return Outcome{ok, detail.substr(1)};
	});

	criterion(7, "bulge dot grouping", 60, [] {
		BulgeSpec b;
		b.dot_layout = default_bulge_layout(b.board_rows, b.board_cols);
		const auto g = bulge_geometry(b);
		auto stack = edge_map_stack(generate_bulge(b), ScaleLadder::range(1, 8, 1), 1.6, 8);
		std::vector<GroupingStats> st;
		for (auto& e : stack.entries)
			st.push_back(grouping_stats(binarize(e.response, {}), g, e.sigma_c));
		const bool ok = st[2].dot_components < st[0].dot_components && st[7].small_dot_components == 0;
		return Outcome{ok, fmt::format("dot components s1={} s3={} s8={}; small at s8={}", st[0].dot_components,
		                               st[2].dot_components, st[7].dot_components, st[7].small_dot_components)};
	});

	criterion(8, "determinism", 60, [] {
		const fs::path root = fs::temp_directory_path() / "dogtilt_acceptance";
		fs::remove_all(root);
		int compared = 0, differing = 0;
		for (std::string name : {"desk_cafewall", "desk_munsterberg", "fig7_bulge_hough"})
		{
			for (int run = 0; run < 2; ++run)
			{
				RunConfig c = preset(name);
				c.output_dir = root / fmt::format("{}_{}", name, run);
				run_pipeline(c);
			}
			for (auto& f : fs::directory_iterator(root / (name + "_0")))
			{
				if (f.path().extension() != ".csv")
					continue;
				++compared;
				if (slurp(f.path()) != slurp(root / (name + "_1") / f.path().filename()))
					++differing;
			}
		}
		fs::remove_all(root);
		return Outcome{compared > 0 && differing == 0,
		               fmt::format("{} CSV reports compared across 3 presets, {} differ", compared, differing)};
	});

	fmt::print("{} of 8 criteria failed\n", failures);
	return failures;
}
