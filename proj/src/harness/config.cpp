#include "mqga/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <string_view>

#include "mqga/errors.hpp"
#include "mqga/problems/registry.hpp"
#include "mqga/strings.hpp"

namespace mqga::harness {

const char* mode_name(Mode mode) {
    return mode == Mode::Sequential ? "sequential" : "distributed";
}

namespace {

struct Field {
    std::string value;
    int line = 0;
};

[[noreturn]] void fail(const std::string& origin, int line, const std::string& why) {
    throw ConfigError(origin + ":" + std::to_string(line) + ": " + why);
}

double parse_double(const std::string& origin, const Field& f, const std::string& key) {
    double value = 0.0;
    const char* end = f.value.data() + f.value.size();
    const auto [ptr, ec] = std::from_chars(f.value.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        fail(origin, f.line, key + " must be a number, got \"" + f.value + "\"");
    return value;
}

std::uint64_t parse_u64(const std::string& origin, const Field& f, const std::string& key) {
    std::uint64_t value = 0;
    const char* end = f.value.data() + f.value.size();
    const auto [ptr, ec] = std::from_chars(f.value.data(), end, value);
    if (ec != std::errc{} || ptr != end)
        fail(origin, f.line, key + " must be a non-negative integer, got \"" + f.value + "\"");
    return value;
}

std::uint32_t parse_u32(const std::string& origin, const Field& f, const std::string& key) {
    const std::uint64_t v = parse_u64(origin, f, key);
    if (v > 0xffffffffull)
        fail(origin, f.line, key + " is out of range");
    return static_cast<std::uint32_t>(v);
}

bool parse_bool(const std::string& origin, const Field& f, const std::string& key) {
    if (f.value == "true" || f.value == "1")
        return true;
    if (f.value == "false" || f.value == "0")
        return false;
    fail(origin, f.line, key + " must be true or false, got \"" + f.value + "\"");
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& origin) {
    std::map<std::string, Field> fields;
    std::map<std::string, Field> params; // param.<name> entries

    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const std::string_view line = trim(raw);
        if (line.empty() || line[0] == '#')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            fail(origin, line_no, "expected key = value");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (key.empty())
            fail(origin, line_no, "empty key");
        auto& target = key.rfind("param.", 0) == 0 ? params : fields;
        const std::string name = key.rfind("param.", 0) == 0 ? key.substr(6) : key;
        if (name.empty())
            fail(origin, line_no, "empty param name");
        if (!target.emplace(name, Field{value, line_no}).second)
            fail(origin, line_no, "duplicate key \"" + key + "\"");
    }

    static const std::set<std::string> kKnown = {
        "mode",          "problem",         "genome_kind",     "population_size",
        "genome_length", "max_generations", "crossover_rate",  "mutation_rate",
        "tournament_size", "elite_count",   "seed",            "maximize",
        "generation_timeout_ms", "broker_addr", "worker_count", "report_path",
        "run_id",        "delay_ms",        "busy_spin",
    };
    for (const auto& [key, field] : fields) {
        if (!kKnown.contains(key))
            fail(origin, field.line, "unknown key \"" + key + "\"");
    }

    const auto take = [&](const char* key) -> const Field* {
        const auto it = fields.find(key);
        return it == fields.end() ? nullptr : &it->second;
    };
    const auto require = [&](const char* key) -> const Field& {
        const Field* f = take(key);
        if (!f)
            throw ConfigError(origin + ": missing required key \"" + std::string(key) + "\"");
        return *f;
    };

    RunConfig cfg;
    cfg.ga.problem_id = require("problem").value;
    cfg.ga.population_size = parse_u32(origin, require("population_size"), "population_size");
    cfg.ga.genome_length = parse_u32(origin, require("genome_length"), "genome_length");
    cfg.ga.max_generations = parse_u32(origin, require("max_generations"), "max_generations");

    for (const auto& [name, field] : params)
        cfg.ga.problem_params[name] = parse_double(origin, field, "param." + name);
    if (const Field* f = take("delay_ms"))
        cfg.ga.problem_params["delay_ms"] = parse_double(origin, *f, "delay_ms");
    if (const Field* f = take("busy_spin"))
        cfg.ga.problem_params["busy_spin"] = parse_bool(origin, *f, "busy_spin") ? 1.0 : 0.0;

    // The registry supplies everything the problem dictates; explicit keys
    // may only repeat it, not contradict it.
    const problems::Problem problem =
        problems::lookup_problem(cfg.ga.problem_id, cfg.ga.problem_params);
    cfg.ga.genome_kind = problem.spec.genome_kind;
    cfg.ga.maximize = problem.spec.maximize;
    if (problem.spec.has_bounds) {
        cfg.ga.bound_low = problem.spec.bounds.low;
        cfg.ga.bound_high = problem.spec.bounds.high;
    }
    if (const Field* f = take("genome_kind")) {
        const std::string& v = f->value;
        if (v != "bitstring" && v != "real_vector")
            fail(origin, f->line, "genome_kind must be bitstring or real_vector");
        const auto kind =
            v == "bitstring" ? ga::GenomeKind::Bitstring : ga::GenomeKind::RealVector;
        if (kind != problem.spec.genome_kind)
            fail(origin, f->line,
                 "genome_kind " + v + " contradicts problem \"" + cfg.ga.problem_id + "\"");
    }
    if (const Field* f = take("maximize"))
        cfg.ga.maximize = parse_bool(origin, *f, "maximize");

    if (const Field* f = take("crossover_rate"))
        cfg.ga.crossover_rate = parse_double(origin, *f, "crossover_rate");
    if (const Field* f = take("mutation_rate"))
        cfg.ga.mutation_rate = parse_double(origin, *f, "mutation_rate");
    else
        cfg.ga.mutation_rate = 1.0 / static_cast<double>(cfg.ga.genome_length);
    if (const Field* f = take("tournament_size"))
        cfg.ga.tournament_size = parse_u32(origin, *f, "tournament_size");
    if (const Field* f = take("elite_count"))
        cfg.ga.elite_count = parse_u32(origin, *f, "elite_count");
    if (const Field* f = take("seed"))
        cfg.ga.seed = parse_u64(origin, *f, "seed");
    else
        cfg.ga.seed = 42;

    if (const Field* f = take("generation_timeout_ms")) {
        const auto ms = parse_u64(origin, *f, "generation_timeout_ms");
        if (ms == 0)
            fail(origin, f->line, "generation_timeout_ms must be positive");
        cfg.ga.generation_timeout = std::chrono::milliseconds(ms);
    } else {
        // Default: ten times the serial evaluation cost of one generation,
        // floored at 10 s. Loose on purpose; the timeout is a stall detector,
        // not a performance target.
        const double delay_ms = cfg.ga.problem_params.count("delay_ms")
                                    ? cfg.ga.problem_params.at("delay_ms")
                                    : 0.0;
        const double expected = 10.0 * delay_ms * cfg.ga.population_size;
        cfg.ga.generation_timeout = std::chrono::milliseconds(
            std::max<std::int64_t>(10000, static_cast<std::int64_t>(expected)));
    }

    if (const Field* f = take("mode")) {
        if (f->value == "sequential")
            cfg.mode = Mode::Sequential;
        else if (f->value == "distributed")
            cfg.mode = Mode::Distributed;
        else
            fail(origin, f->line, "mode must be sequential or distributed");
    }
    if (const Field* f = take("broker_addr"))
        cfg.broker_addr = f->value;
    if (const Field* f = take("worker_count"))
        cfg.worker_count = parse_u32(origin, *f, "worker_count");
    if (const Field* f = take("report_path"))
        cfg.report_path = f->value;
    if (const Field* f = take("run_id")) {
        if (f->value.empty() || f->value.find(':') != std::string::npos)
            fail(origin, f->line, "run_id must be non-empty and contain no ':'");
        cfg.run_id = f->value;
    }

    ga::validate(cfg.ga);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file \"" + path + "\"");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str(), path);
}

std::string emit_config(const RunConfig& cfg) {
    std::ostringstream out;
    out << "mode = " << mode_name(cfg.mode) << "\n";
    out << "problem = " << cfg.ga.problem_id << "\n";
    out << "population_size = " << cfg.ga.population_size << "\n";
    out << "genome_length = " << cfg.ga.genome_length << "\n";
    out << "max_generations = " << cfg.ga.max_generations << "\n";
    out << "crossover_rate = " << format_double(cfg.ga.crossover_rate) << "\n";
    out << "mutation_rate = " << format_double(cfg.ga.mutation_rate) << "\n";
    out << "tournament_size = " << cfg.ga.tournament_size << "\n";
    out << "elite_count = " << cfg.ga.elite_count << "\n";
    out << "seed = " << cfg.ga.seed << "\n";
    out << "maximize = " << (cfg.ga.maximize ? "true" : "false") << "\n";
    out << "generation_timeout_ms = " << cfg.ga.generation_timeout.count() << "\n";
    out << "broker_addr = " << cfg.broker_addr << "\n";
    out << "worker_count = " << cfg.worker_count << "\n";
    out << "report_path = " << cfg.report_path << "\n";
    out << "run_id = " << cfg.run_id << "\n";
    for (const auto& [name, value] : cfg.ga.problem_params)
        out << "param." << name << " = " << format_double(value) << "\n";
    return out.str();
}

} // namespace mqga::harness
