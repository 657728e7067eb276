#include "epimoea/harness/runner.hpp"

#include "epimoea/errors.hpp"
#include "epimoea/moead.hpp"
#include "epimoea/rng.hpp"

#include <atomic>
#include <charconv>
#include <chrono>
#include <exception>
#include <fmt/format.h>
#include <fstream>
#include <map>
#include <optional>
#include <mutex>
#include <json.hpp>
#include <sstream>
#include <thread>

namespace epimoea::harness {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::uint64_t run_seed(const ExperimentConfig& cfg, const std::string& problem, BlockingVariant variant, std::size_t run_index)
{
    const std::string key = cfg.common_seeds ? fmt::format("{}|{}", problem, run_index)
                                             : fmt::format("{}|{}|{}", problem, to_string(variant), run_index);
    return cfg.base_seed ^ fnv1a64(key);
}

RunRecord run_single(const ExperimentConfig& cfg, const std::string& problem_name, BlockingVariant variant, std::size_t run_index)
{
    const auto started = std::chrono::steady_clock::now();
    const auto problem = make_problem(problem_name, cfg.dimension, cfg.time_period);

    RunRecord rec;
    rec.fingerprint = cfg.fingerprint();
    rec.problem = problem_name;
    rec.variant = variant;
    rec.run_index = run_index;
    rec.seed = run_seed(cfg, problem_name, variant, run_index);
    rec.trace.problem = problem_name;
    rec.trace.algorithm = std::string(to_string(variant));
    rec.trace.run_seed = rec.seed;

    Rng rng(rec.seed);
    BlockingContext blocking(cfg.policy_for(variant), cfg.schedule_evals(), cfg.schedule_per_cycle, Rng::derive(rec.seed, 1));

    const std::size_t gens = cfg.total_generations();
    double t = time_of_generation(0, cfg.time);
    AlgorithmState state = initialize_state(*problem, cfg.population, cfg.de, t, rng);

    std::map<double, Front> fronts;  // keyed by phase; the front repeats with the problem
    rec.trace.values.reserve(gens);
    for (std::size_t g = 0; g < gens; ++g) {
        const double now = time_of_generation(g, cfg.time);
        if (g > 0 && now != t) {
            reinitialize_on_change(state, *problem, now, cfg.reinit_fraction, rng);
        }
        t = now;
        evolve_generation(state, *problem, blocking, cfg.de, t, rng);

        const double key = problem->phase(t);
        auto it = fronts.find(key);
        if (it == fronts.end()) {
            it = fronts.emplace(key, problem->pareto_front(t, cfg.pf_points)).first;
        }
        const double value = igd(nondominated(population_objectives(state)), it->second);
        rec.trace.values.push_back(TracePoint{g, t, value});
    }
    rec.evals = state.evals;
    rec.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return rec;
}

fs::path trace_path(const fs::path& dir, const std::string& problem, BlockingVariant v, std::size_t run)
{
    return dir / "runs" / problem / std::string(to_string(v)) / fmt::format("run_{:03}.csv", run);
}

fs::path manifest_path(const fs::path& dir)
{
    return dir / "manifest.json";
}

std::string format_trace_csv(const IGDTrace& trace)
{
    std::string out = "generation,t,igd\n";
    for (const auto& p : trace.values) {
        out += fmt::format("{},{},{}\n", p.generation, p.time, p.igd);
    }
    return out;
}

namespace {

template <typename T>
T parse_field(std::string_view text)
{
    T value{};
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc{} || ptr != end) {
        throw std::runtime_error(fmt::format("malformed trace field '{}'", text));
    }
    return value;
}

void write_atomically(const fs::path& path, const std::string& content)
{
    fs::create_directories(path.parent_path());
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw std::runtime_error(fmt::format("cannot write '{}'", tmp.string()));
        }
        out << content;
        if (!out.flush()) {
            throw std::runtime_error(fmt::format("write failed for '{}'", tmp.string()));
        }
    }
    fs::rename(tmp, path);
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(fmt::format("cannot read '{}'", path.string()));
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

fs::path meta_path(const fs::path& csv)
{
    fs::path p = csv;
    p.replace_extension(".json");
    return p;
}

json record_meta(const RunRecord& r)
{
    return json{
        {"fingerprint", r.fingerprint},
        {"problem", r.problem},
        {"variant", std::string(to_string(r.variant))},
        {"run", r.run_index},
        {"seed", r.seed},
        {"evals", r.evals},
        {"generations", r.trace.values.size()},
        {"wall_seconds", r.wall_seconds},
    };
}

// A persisted cell, or nullopt when it is missing, partial or from another config.
std::optional<RunRecord> load_cell(const fs::path& dir, const std::string& fingerprint, const std::string& problem, BlockingVariant v,
                                   std::size_t run, std::size_t generations)
{
    const fs::path csv = trace_path(dir, problem, v, run);
    const fs::path meta = meta_path(csv);
    if (!fs::exists(csv) || !fs::exists(meta)) {
        return std::nullopt;
    }
    const json j = json::parse(read_file(meta), nullptr, false);
    if (j.is_discarded() || j.value("fingerprint", std::string{}) != fingerprint) {
        return std::nullopt;
    }
    RunRecord r;
    r.fingerprint = fingerprint;
    r.problem = problem;
    r.variant = v;
    r.run_index = run;
    r.seed = j.at("seed").get<std::uint64_t>();
    r.evals = j.at("evals").get<std::uint64_t>();
    r.wall_seconds = j.at("wall_seconds").get<double>();
    r.trace = parse_trace_csv(read_file(csv));
    r.trace.problem = problem;
    r.trace.algorithm = std::string(to_string(v));
    r.trace.run_seed = r.seed;
    if (r.trace.values.size() != generations) {
        return std::nullopt;
    }
    return r;
}

json config_json(const ExperimentConfig& cfg)
{
    std::vector<std::string> vnames;
    for (auto v : cfg.variants) {
        vnames.emplace_back(to_string(v));
    }
    return json{
        {"problems", cfg.problems},
        {"variants", vnames},
        {"population", cfg.population},
        {"dimension", cfg.dimension},
        {"generations", cfg.total_generations()},
        {"tau_t", cfg.time.tau_t},
        {"n_t", cfg.time.n_t},
        {"time_period", cfg.time_period},
        {"runs", cfg.runs},
        {"base_seed", cfg.base_seed},
        {"common_seeds", cfg.common_seeds},
        {"interval", cfg.interval},
        {"reinit_fraction", cfg.reinit_fraction},
        {"pf_points", cfg.pf_points},
        {"de_f", cfg.de.F},
        {"de_cr", cfg.de.CR},
        {"de_pm", cfg.de.pm},
        {"de_eta_m", cfg.de.eta_m},
        {"de_delta", cfg.de.delta},
        {"de_nr", cfg.de.nr},
        {"de_t", cfg.de.T},
        {"block_probability", cfg.blocking.base_probability},
        {"block_size", cfg.blocking.base_block_size},
        {"max_probability", cfg.blocking.max_probability},
        {"probability_quantum", cfg.blocking.probability_quantum},
        {"block_shields_mutation", cfg.blocking.shields_mutation},
        {"schedule_span", cfg.schedule_per_cycle ? "cycle" : "total"},
    };
}

ExperimentConfig config_from_json(const json& j)
{
    ExperimentConfig cfg;
    for (const auto& [key, value] : j.items()) {
        std::string text;
        if (value.is_array()) {
            for (const auto& item : value) {
                text += (text.empty() ? "" : ",") + item.get<std::string>();
            }
        } else if (value.is_string()) {
            text = value.get<std::string>();
        } else if (value.is_boolean()) {
            text = value.get<bool>() ? "true" : "false";
        } else if (value.is_number_float()) {
            text = fmt::format("{}", value.get<double>());
        } else {
            text = value.dump();
        }
        set_config_value(cfg, key, text);
    }
    return cfg;
}

std::string manifest_text(const ExperimentConfig& cfg, const std::vector<std::optional<RunRecord>>& records)
{
    json cells = json::array();
    for (const auto& r : records) {
        if (!r) {
            continue;
        }
        json m = record_meta(*r);
        m["trace"] = fs::relative(trace_path(cfg.output_dir, r->problem, r->variant, r->run_index), cfg.output_dir).generic_string();
        cells.push_back(std::move(m));
    }
    json doc{
        {"fingerprint", cfg.fingerprint()},
        {"config", config_json(cfg)},
        {"pairing", "per-interval mean IGD, baseline vs variant"},
        {"cells", std::move(cells)},
    };
    return doc.dump(2) + "\n";
}

} // namespace

IGDTrace parse_trace_csv(const std::string& text)
{
    IGDTrace trace;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line) || line != "generation,t,igd") {
        throw std::runtime_error("trace CSV lacks the 'generation,t,igd' header");
    }
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error(fmt::format("malformed trace row '{}'", line));
        }
        std::string_view v(line);
        trace.values.push_back(TracePoint{parse_field<std::size_t>(v.substr(0, c1)), parse_field<double>(v.substr(c1 + 1, c2 - c1 - 1)),
                                          parse_field<double>(v.substr(c2 + 1))});
    }
    return trace;
}

std::vector<RunRecord> run_experiment(const ExperimentConfig& cfg, const RunOptions& options)
{
    cfg.validate();
    const fs::path& dir = cfg.output_dir;
    const std::string fingerprint = cfg.fingerprint();
    try {
        fs::create_directories(dir);
    } catch (const fs::filesystem_error& e) {
        throw std::runtime_error(fmt::format("cannot create output directory '{}': {}", dir.string(), e.what()));
    }
    if (fs::exists(manifest_path(dir))) {
        const json existing = json::parse(read_file(manifest_path(dir)), nullptr, false);
        if (!existing.is_discarded() && existing.value("fingerprint", std::string{}) != fingerprint) {
            throw std::runtime_error(fmt::format("'{}' holds results of a different configuration ({}); choose another output directory",
                                                 dir.string(), existing.value("fingerprint", std::string{"?"})));
        }
    }

    struct Cell {
        std::string problem;
        BlockingVariant variant;
        std::size_t run;
    };
    std::vector<Cell> cells;
    for (const auto& p : cfg.problems) {
        for (auto v : cfg.variants) {
            for (std::size_t r = 0; r < cfg.runs; ++r) {
                cells.push_back({p, v, r});
            }
        }
    }
    std::vector<std::optional<RunRecord>> results(cells.size());
    write_atomically(manifest_path(dir), manifest_text(cfg, results));

    const std::size_t gens = cfg.total_generations();
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t k = next.fetch_add(1);
            if (k >= cells.size()) {
                return;
            }
            {
                std::lock_guard lock(failure_mutex);
                if (failure) {
                    return;
                }
            }
            try {
                const auto& c = cells[k];
                auto cached = load_cell(dir, fingerprint, c.problem, c.variant, c.run, gens);
                const bool resumed = cached.has_value();
                if (!cached) {
                    RunRecord rec = run_single(cfg, c.problem, c.variant, c.run);
                    const fs::path csv = trace_path(dir, c.problem, c.variant, c.run);
                    write_atomically(csv, format_trace_csv(rec.trace));
                    write_atomically(meta_path(csv), record_meta(rec).dump(2) + "\n");
                    cached = std::move(rec);
                }
                if (options.on_record) {
                    options.on_record(*cached, resumed);
                }
                results[k] = std::move(cached);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    const std::size_t jobs = std::max<std::size_t>(1, std::min(options.jobs, cells.size()));
    if (jobs == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < jobs; ++i) {
            pool.emplace_back(worker);
        }
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    write_atomically(manifest_path(dir), manifest_text(cfg, results));

    std::vector<RunRecord> out;
    out.reserve(results.size());
    for (auto& r : results) {
        out.push_back(std::move(*r));
    }
    return out;
}

ProtocolPlan plan_protocol(const ExperimentConfig& cfg)
{
    cfg.validate();
    ProtocolPlan plan;
    plan.generations = cfg.total_generations();
    plan.generations_per_cycle = cfg.generations_per_cycle();
    plan.cycles = plan.generations_per_cycle == 0 ? 0 : (plan.generations + plan.generations_per_cycle - 1) / plan.generations_per_cycle;
    plan.intervals = (plan.generations + cfg.interval - 1) / cfg.interval;
    plan.total_runs = cfg.problems.size() * cfg.variants.size() * cfg.runs;
    plan.evaluations_per_run = static_cast<std::uint64_t>(plan.generations) * cfg.population;
    plan.times.reserve(plan.generations);
    for (std::size_t g = 0; g < plan.generations; ++g) {
        plan.times.push_back(time_of_generation(g, cfg.time));
    }
    return plan;
}

LoadedExperiment load_experiment(const fs::path& dir)
{
    if (!fs::exists(manifest_path(dir))) {
        throw std::runtime_error(fmt::format("no manifest.json in '{}'", dir.string()));
    }
    const json doc = json::parse(read_file(manifest_path(dir)));
    LoadedExperiment out;
    out.config = config_from_json(doc.at("config"));
    out.config.output_dir = dir;
    out.fingerprint = doc.at("fingerprint").get<std::string>();
    if (out.config.fingerprint() != out.fingerprint) {
        throw std::runtime_error(fmt::format("manifest in '{}' is inconsistent: fingerprint {} does not match its config ({})", dir.string(),
                                             out.fingerprint, out.config.fingerprint()));
    }
    const std::size_t gens = out.config.total_generations();
    for (const auto& p : out.config.problems) {
        for (auto v : out.config.variants) {
            for (std::size_t r = 0; r < out.config.runs; ++r) {
                if (auto rec = load_cell(dir, out.fingerprint, p, v, r, gens)) {
                    out.records.push_back(std::move(*rec));
                }
            }
        }
    }
    return out;
}

} // namespace epimoea::harness
