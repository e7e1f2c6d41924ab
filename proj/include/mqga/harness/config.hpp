#pragma once

#include <cstdint>
#include <string>

#include "mqga/ga/config.hpp"

namespace mqga::harness {

enum class Mode { Sequential, Distributed };

const char* mode_name(Mode mode);

// Everything a single run needs: the GA parameters plus where the broker
// lives and how the run is wired up locally.
struct RunConfig {
    ga::GaConfig ga;
    Mode mode = Mode::Sequential;
    std::string broker_addr = "127.0.0.1:5672";
    std::uint32_t worker_count = 0;
    std::string report_path;
    std::string run_id = "run";

    bool operator==(const RunConfig&) const = default;
};

// Flat key=value format, one pair per line, '#' comments. Unknown keys are
// rejected so a typo can never silently fall back to a default. Problem
// parameters are spelled param.<name>; delay_ms and busy_spin exist as
// shorthand for the corresponding params. genome_kind, maximize and the
// coordinate bounds come from the problem registry unless overridden.
// Throws ConfigError naming the offending key/field and line.
RunConfig parse_config_text(const std::string& text, const std::string& origin);
RunConfig parse_config(const std::string& path);

// Inverse of parsing: parse_config_text(emit_config(c), ...) == c.
std::string emit_config(const RunConfig& config);

} // namespace mqga::harness
