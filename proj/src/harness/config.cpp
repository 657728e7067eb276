#include "epimoea/harness/config.hpp"

#include "epimoea/errors.hpp"
#include "epimoea/rng.hpp"

#include <algorithm>
#include <charconv>
#include <fmt/format.h>
#include <fmt/ranges.h>
#include <fstream>
#include <sstream>

namespace epimoea::harness {

std::size_t ExperimentConfig::generations_per_cycle() const
{
    return static_cast<std::size_t>(std::llround(time_period * time.n_t)) * static_cast<std::size_t>(time.tau_t);
}

std::size_t ExperimentConfig::total_generations() const
{
    return generations != 0 ? generations : cycles * generations_per_cycle();
}

std::uint64_t ExperimentConfig::schedule_evals() const
{
    const std::size_t gens = schedule_per_cycle ? generations_per_cycle() : total_generations();
    return static_cast<std::uint64_t>(gens) * population;
}

BlockingPolicy ExperimentConfig::policy_for(BlockingVariant v) const
{
    BlockingPolicy p = blocking;
    p.variant = v;
    return p;
}

void ExperimentConfig::validate() const
{
    if (problems.empty()) {
        throw ConfigError("no problems selected");
    }
    for (const auto& p : problems) {
        make_problem(p, dimension, time_period);
    }
    if (variants.empty()) {
        throw ConfigError("no variants selected");
    }
    if (runs < 1) {
        throw ConfigError("runs must be at least 1");
    }
    if (interval < 1) {
        throw ConfigError("interval must be at least 1");
    }
    if (pf_points < 2) {
        throw ConfigError("pf_points must be at least 2");
    }
    if (!(reinit_fraction >= 0.0 && reinit_fraction <= 1.0)) {
        throw ConfigError(fmt::format("reinit_fraction must lie in [0, 1] (got {})", reinit_fraction));
    }
    time.validate();
    if (time_period == 0.0 && generations == 0) {
        throw ConfigError("generations must be given explicitly when time_period is 0");
    }
    if (total_generations() < 1) {
        throw ConfigError("experiment has no generations");
    }
    if (population < 3) {
        throw ConfigError("population must be at least 3");
    }
    de.validate(population);
    blocking.validate();
    for (auto v : variants) {
        if (std::count(variants.begin(), variants.end(), v) > 1) {
            throw ConfigError(fmt::format("variant '{}' listed twice", to_string(v)));
        }
    }
    if (schedule_evals() == 0) {
        throw ConfigError("blocking schedule span is empty");
    }
}

std::string ExperimentConfig::canonical_text() const
{
    std::vector<std::string> vnames;
    for (auto v : variants) {
        vnames.emplace_back(to_string(v));
    }
    std::string out;
    auto line = [&out](std::string_view k, const auto& v) { out += fmt::format("{} = {}\n", k, v); };
    line("problems", fmt::format("{}", fmt::join(problems, ",")));
    line("variants", fmt::format("{}", fmt::join(vnames, ",")));
    line("population", population);
    line("dimension", dimension);
    line("generations", total_generations());
    line("tau_t", time.tau_t);
    line("n_t", time.n_t);
    line("time_period", time_period);
    line("runs", runs);
    line("base_seed", base_seed);
    line("common_seeds", common_seeds);
    line("interval", interval);
    line("reinit_fraction", reinit_fraction);
    line("pf_points", pf_points);
    line("de_f", de.F);
    line("de_cr", de.CR);
    line("de_pm", de.pm);
    line("de_eta_m", de.eta_m);
    line("de_delta", de.delta);
    line("de_nr", de.nr);
    line("de_t", de.T);
    line("block_probability", blocking.base_probability);
    line("block_size", blocking.base_block_size);
    line("max_probability", blocking.max_probability);
    line("probability_quantum", blocking.probability_quantum);
    line("block_shields_mutation", blocking.shields_mutation);
    line("schedule_span", schedule_per_cycle ? "cycle" : "total");
    return out;
}

std::string ExperimentConfig::fingerprint() const
{
    return fmt::format("{:016x}", fnv1a64(canonical_text()));
}

void apply_preset(ExperimentConfig& cfg, std::string_view preset)
{
    if (preset == "paper") {
        cfg.population = 500;
        cfg.dimension = 0;
        cfg.runs = 20;
        cfg.cycles = 2;
        cfg.generations = 0;
        cfg.time = TimeModel{5, 10};
    } else if (preset == "desk") {
        cfg.population = 100;
        cfg.dimension = 10;
        cfg.runs = 10;
        cfg.cycles = 2;
        cfg.generations = 0;
        cfg.time = TimeModel{5, 10};
    } else {
        throw ConfigError(fmt::format("unknown preset '{}' (expected 'paper' or 'desk')", preset));
    }
}

namespace {

std::string_view trim(std::string_view s)
{
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

template <typename T>
T parse_number(std::string_view key, std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw ConfigError(fmt::format("{}: cannot parse '{}'", key, text));
    }
    return value;
}

bool parse_bool(std::string_view key, std::string_view text)
{
    if (text == "true" || text == "1" || text == "yes") {
        return true;
    }
    if (text == "false" || text == "0" || text == "no") {
        return false;
    }
    throw ConfigError(fmt::format("{}: expected true/false, got '{}'", key, text));
}

std::vector<std::string> split_list(std::string_view text)
{
    std::vector<std::string> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        const auto comma = text.find(',', start);
        const auto item = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
        if (!item.empty()) {
            out.emplace_back(item);
        }
        if (comma == std::string_view::npos) {
            break;
        }
        start = comma + 1;
    }
    return out;
}

} // namespace

const std::vector<std::string>& config_keys()
{
    static const std::vector<std::string> keys = {
        "problems", "variants", "population", "dimension", "cycles", "generations", "tau_t", "n_t", "time_period",
        "runs", "base_seed", "common_seeds", "interval", "reinit_fraction", "pf_points", "de_f", "de_cr", "de_pm",
        "de_eta_m", "de_delta", "de_nr", "de_t", "block_probability", "block_size", "max_probability",
        "probability_quantum", "block_shields_mutation", "schedule_span", "output_dir",
    };
    return keys;
}

void set_config_value(ExperimentConfig& cfg, std::string_view key, std::string_view raw)
{
    const auto value = trim(raw);
    if (key == "problems") {
        cfg.problems.clear();
        for (auto& p : split_list(value)) {
            std::transform(p.begin(), p.end(), p.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
            const auto& known = catalog_names();
            if (std::find(known.begin(), known.end(), p) == known.end()) {
                throw ConfigError(fmt::format("problems: unknown problem '{}'", p));
            }
            cfg.problems.push_back(p);
        }
    } else if (key == "variants") {
        cfg.variants.clear();
        for (const auto& v : split_list(value)) {
            cfg.variants.push_back(parse_blocking_variant(v));
        }
    } else if (key == "population") {
        cfg.population = parse_number<std::size_t>(key, value);
    } else if (key == "dimension") {
        cfg.dimension = parse_number<std::size_t>(key, value);
    } else if (key == "cycles") {
        cfg.cycles = parse_number<std::size_t>(key, value);
    } else if (key == "generations") {
        cfg.generations = parse_number<std::size_t>(key, value);
    } else if (key == "tau_t") {
        cfg.time.tau_t = parse_number<int>(key, value);
    } else if (key == "n_t") {
        cfg.time.n_t = parse_number<int>(key, value);
    } else if (key == "time_period") {
        cfg.time_period = parse_number<double>(key, value);
    } else if (key == "runs") {
        cfg.runs = parse_number<std::size_t>(key, value);
    } else if (key == "base_seed") {
        cfg.base_seed = parse_number<std::uint64_t>(key, value);
    } else if (key == "common_seeds") {
        cfg.common_seeds = parse_bool(key, value);
    } else if (key == "interval") {
        cfg.interval = parse_number<std::size_t>(key, value);
    } else if (key == "reinit_fraction") {
        cfg.reinit_fraction = parse_number<double>(key, value);
    } else if (key == "pf_points") {
        cfg.pf_points = parse_number<std::size_t>(key, value);
    } else if (key == "de_f") {
        cfg.de.F = parse_number<double>(key, value);
    } else if (key == "de_cr") {
        cfg.de.CR = parse_number<double>(key, value);
    } else if (key == "de_pm") {
        cfg.de.pm = parse_number<double>(key, value);
    } else if (key == "de_eta_m") {
        cfg.de.eta_m = parse_number<double>(key, value);
    } else if (key == "de_delta") {
        cfg.de.delta = parse_number<double>(key, value);
    } else if (key == "de_nr") {
        cfg.de.nr = parse_number<std::size_t>(key, value);
    } else if (key == "de_t") {
        cfg.de.T = parse_number<std::size_t>(key, value);
    } else if (key == "block_probability") {
        cfg.blocking.base_probability = parse_number<double>(key, value);
    } else if (key == "block_size") {
        cfg.blocking.base_block_size = parse_number<std::size_t>(key, value);
    } else if (key == "max_probability") {
        cfg.blocking.max_probability = parse_number<double>(key, value);
    } else if (key == "probability_quantum") {
        cfg.blocking.probability_quantum = parse_number<double>(key, value);
    } else if (key == "block_shields_mutation") {
        cfg.blocking.shields_mutation = parse_bool(key, value);
    } else if (key == "schedule_span") {
        if (value == "total") {
            cfg.schedule_per_cycle = false;
        } else if (value == "cycle") {
            cfg.schedule_per_cycle = true;
        } else {
            throw ConfigError(fmt::format("schedule_span: expected 'total' or 'cycle', got '{}'", value));
        }
    } else if (key == "output_dir") {
        cfg.output_dir = std::string(value);
    } else {
        throw ConfigError(fmt::format("unknown config key '{}'", key));
    }
}

void load_config_text(ExperimentConfig& cfg, std::string_view text)
{
    std::size_t lineno = 0;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        ++lineno;
        std::string_view view = line;
        if (const auto hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        view = trim(view);
        if (view.empty()) {
            continue;
        }
        const auto eq = view.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError(fmt::format("line {}: expected 'key = value'", lineno));
        }
        set_config_value(cfg, trim(view.substr(0, eq)), view.substr(eq + 1));
    }
}

void load_config_file(ExperimentConfig& cfg, const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError(fmt::format("cannot read config file '{}'", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    load_config_text(cfg, buf.str());
}

} // namespace epimoea::harness
