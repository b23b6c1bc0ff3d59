#include "dogtilt/binarize.hpp"

#include <fmt/format.h>

#include <set>

namespace dogtilt
{

std::string_view to_string(BinarizeMode m)
{
	return m == BinarizeMode::Sign ? "sign" : "fraction";
}

BinarizeMode parse_binarize_mode(std::string_view s)
{
	if (s == "sign") return BinarizeMode::Sign;
	if (s == "fraction") return BinarizeMode::Fraction;
	throw InvalidSpec("binarize", fmt::format("unknown mode '{}'", s));
}

void validate(const BinarizePolicy& p)
{
	if (p.mode == BinarizeMode::Fraction && !(p.threshold_frac >= 0.0 && p.threshold_frac < 1.0))
		throw InvalidSpec("threshold_frac", "must lie in [0,1)");
	if (!(p.zero_tolerance >= 0.0))
		throw InvalidSpec("zero_tolerance", "must be >= 0");
}

Components label_components(const Mask& mask)
{
	const int h = int(mask.rows()), w = int(mask.cols());
	Components c;
	c.labels = Plane<int>::Zero(h, w);
	std::vector<std::pair<int, int>> stack;

	for (int y = 0; y < h; ++y)
		for (int x = 0; x < w; ++x)
		{
			if (!mask(y, x) || c.labels(y, x))
				continue;
			const int id = ++c.count;
			long area = 0;
			int x0 = x, x1 = x, y0 = y, y1 = y;
			c.labels(y, x) = id;
			stack.push_back({y, x});
			while (!stack.empty())
			{
				auto [cy, cx] = stack.back();
				stack.pop_back();
				++area;
				x0 = std::min(x0, cx);
				x1 = std::max(x1, cx);
				y0 = std::min(y0, cy);
				y1 = std::max(y1, cy);
				for (int dy = -1; dy <= 1; ++dy)
					for (int dx = -1; dx <= 1; ++dx)
					{
						int ny = cy + dy, nx = cx + dx;
						if (ny < 0 || ny >= h || nx < 0 || nx >= w)
							continue;
						if (mask(ny, nx) && !c.labels(ny, nx))
						{
							c.labels(ny, nx) = id;
							stack.push_back({ny, nx});
						}
					}
			}
			c.areas.push_back(area);
			c.boxes.push_back({x0, y0, x1 - x0 + 1, y1 - y0 + 1});
		}
	return c;
}

namespace
{

std::set<int> labels_in(const Components& c, const Rect& r)
{
	std::set<int> ids;
	for (int y = r.y0; y < r.y1(); ++y)
		for (int x = r.x0; x < r.x1(); ++x)
			if (int id = c.labels(y, x))
				ids.insert(id);
	return ids;
}

} // namespace

GroupingStats grouping_stats(const Mask& binary, const StimulusGeometry& g, double sigma_c)
{
	if (binary.rows() != g.height || binary.cols() != g.width)
		throw DimensionError(fmt::format("grouping_stats: plane is {}x{}, geometry is {}x{}", binary.cols(),
		                                 binary.rows(), g.width, g.height));
	const Components c = label_components(binary);

	GroupingStats s;
	s.sigma_c = sigma_c;
	s.component_count = c.count;
	for (long a : c.areas)
		s.largest_component_px = std::max(s.largest_component_px, a);

	for (const Rect& box : c.boxes)
	{
		int rows = 0;
		for (const auto& [k, band] : g.tile_rows)
			rows += intersect(box, band).empty() ? 0 : 1;
		s.row_spanning_components += rows >= 2 ? 1 : 0;
	}

	// Light tiles touched by each component.
	std::vector<std::vector<const TileCell*>> touched(c.count + 1);
	for (const auto& cell : g.tiles)
		if (cell.luminance == g.lum_light)
			for (int id : labels_in(c, cell.rect))
				touched[id].push_back(&cell);

	std::set<int> mortar_rows;
	for (const auto& [k, band] : g.inter_rows)
		mortar_rows.insert(k);
	for (int id = 1; id <= c.count; ++id)
	{
		bool bridged = false;
		for (const TileCell* a : touched[id])
			for (const TileCell* b : touched[id])
				if (b->row == a->row + 1 && mortar_rows.count(a->row) &&
				    (a->rect.x1() <= b->rect.x0 || b->rect.x1() <= a->rect.x0))
					bridged = true;
		s.mortar_bridged_components += bridged ? 1 : 0;
	}

	std::set<int> dot_ids;
	long dot_area = 0;
	for (const Rect& d : g.dots)
	{
		auto ids = labels_in(c, d);
		dot_ids.insert(ids.begin(), ids.end());
		dot_area = dot_area == 0 ? d.area() : std::min(dot_area, d.area());
	}
	s.dot_components = int(dot_ids.size());
	for (int id : dot_ids)
		s.small_dot_components += c.areas[id - 1] < dot_area ? 1 : 0;
	return s;
}

} // namespace dogtilt
