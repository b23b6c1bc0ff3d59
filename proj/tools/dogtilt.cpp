// Command-line front end: stimulus synthesis, DoG edge-map stacks, binary
// edge-map analysis and the full pipeline.

#include "dogtilt/pipeline.hpp"
#include "dogtilt/png_io.hpp"

#include "CLI11.hpp"

#include <fmt/format.h>

#include <fstream>
#include <iostream>
#include <map>
#include <regex>

using namespace dogtilt;

namespace
{

struct Common
{
	std::string preset;
	std::string config;
	std::vector<std::string> sets;
	std::map<std::string, std::string> flags;
};

void add_common(CLI::App* cmd, Common& c)
{
	cmd->add_option("--preset", c.preset, "Start from a bundled preset (see `presets`)");
	cmd->add_option("--config", c.config, "JSON config file of flat key/value overrides")->check(CLI::ExistingFile);
	cmd->add_option("--set", c.sets, "Override any config key: --set key=value");
	for (const auto& key : config_keys())
	{
		if (key == "preset")
			continue;
		std::string flag = "--" + key;
		std::replace(flag.begin(), flag.end(), '_', '-');
		cmd->add_option_function<std::string>(
			flag, [&c, key](const std::string& v) { c.flags[key] = v; }, "Config key " + key);
	}
}

Json parse_value(const std::string& text)
{
	Json v = Json::parse(text, nullptr, false);
	if (!v.is_discarded())
		return v;
	if (text.find(',') != std::string::npos)
	{
		Json arr = Json::array();
		std::stringstream ss(text);
		for (std::string item; std::getline(ss, item, ',');)
			arr.push_back(parse_value(item));
		return arr;
	}
	return text;
}

RunConfig build_config(const Common& c)
{
	RunConfig cfg;
	if (!c.preset.empty())
		cfg = preset(c.preset);
	if (!c.config.empty())
	{
		std::ifstream in(c.config);
		Json j = Json::parse(in, nullptr, false);
		if (j.is_discarded())
			throw InvalidSpec("config", "not valid JSON: " + c.config);
		apply_overrides(cfg, j);
	}
	Json overrides = Json::object();
	for (const auto& s : c.sets)
	{
		auto eq = s.find('=');
		if (eq == std::string::npos)
			throw InvalidSpec(s, "expected key=value");
		overrides[s.substr(0, eq)] = parse_value(s.substr(eq + 1));
	}
	for (const auto& [k, v] : c.flags)
		overrides[k] = parse_value(v);
	if (!overrides.empty())
		apply_overrides(cfg, overrides);
	return cfg;
}

double sigma_from_name(const std::string& name, double fallback)
{
	static const std::regex re(R"(sigma([0-9]+(?:\.[0-9]+)?))");
	std::smatch m;
	if (std::regex_search(name, m, re))
		return std::stod(m[1]);
	return fallback;
}

void report(const RunResult& r, const RunConfig& cfg)
{
	fmt::print("{} files written to {}\n", r.files.size() + 1, cfg.output_dir.string());
}

} // namespace

int main(int argc, char** argv)
{
	CLI::App app{"Multiscale difference-of-Gaussians edge maps and Hough tilt analysis"};
	app.require_subcommand(1);

	Common gen_opts, dog_opts, run_opts, ana_opts;
	auto* gen = app.add_subcommand("generate", "Write the stimulus PNG only");
	add_common(gen, gen_opts);
	auto* dog = app.add_subcommand("dog", "Write the stimulus and its DoG response stack");
	add_common(dog, dog_opts);
	auto* run = app.add_subcommand("run", "Full pipeline: stimulus, DoG stack, binary maps, grouping, Hough tilt");
	add_common(run, run_opts);

	auto* ana = app.add_subcommand("analyze", "Hough tilt (and grouping, given a stimulus) for binary edge maps");
	add_common(ana, ana_opts);
	std::vector<std::string> binaries;
	std::vector<double> binary_sigmas;
	ana->add_option("--binary", binaries, "Binary edge-map PNG (foreground >= 128)")
		->required();
	ana->add_option("--binary-sigma", binary_sigmas, "Scale of each --binary input (default: parsed from name)");

	app.add_subcommand("presets", "List bundled presets");

	try
	{
		app.parse(argc, argv);
	}
	catch (const CLI::ParseError& e)
	{
		return app.exit(e);
	}

	try
	{
		if (app.got_subcommand("presets"))
		{
			for (const auto& p : list_presets())
				fmt::print("{:<18} {}\n", p.name, p.description);
			return 0;
		}
		if (gen->parsed())
		{
			RunConfig cfg = build_config(gen_opts);
			report(run_pipeline(cfg, Stage::Generate), cfg);
		}
		else if (dog->parsed())
		{
			RunConfig cfg = build_config(dog_opts);
			report(run_pipeline(cfg, Stage::Dog), cfg);
		}
		else if (run->parsed())
		{
			RunConfig cfg = build_config(run_opts);
			report(run_pipeline(cfg, Stage::Full), cfg);
		}
		else if (ana->parsed())
		{
			RunConfig cfg = build_config(ana_opts);
			if (ana_opts.preset.empty() && ana_opts.config.empty() && !ana_opts.flags.count("stimulus"))
				cfg.stimulus = StimulusKind::Png;
			if (!binary_sigmas.empty() && binary_sigmas.size() != binaries.size())
				throw InvalidSpec("binary-sigma", "one value per --binary input");
			std::vector<BinaryInput> inputs;
			for (std::size_t i = 0; i < binaries.size(); ++i)
				inputs.push_back({binaries[i], binary_sigmas.empty() ? sigma_from_name(binaries[i], double(i + 1))
				                                                     : binary_sigmas[i]});
			report(analyze_binaries(cfg, inputs), cfg);
		}
	}
	catch (const InvalidSpec& e)
	{
		std::cerr << "invalid config: " << e.what() << '\n';
		return 2;
	}
	catch (const PngError& e)
	{
		std::cerr << "I/O error: " << e.what() << '\n';
		return 3;
	}
	catch (const std::filesystem::filesystem_error& e)
	{
		std::cerr << "I/O error: " << e.what() << '\n';
		return 3;
	}
	catch (const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 1;
	}
	return 0;
}
