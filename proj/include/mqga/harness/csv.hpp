#pragma once

#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "mqga/ga/report.hpp"

namespace mqga::harness {

inline constexpr const char* kReportCsvHeader = "generation,best,mean,wall_ms,dups,republished";
inline constexpr const char* kBenchCsvHeader =
    "worker_count,generation,wall_ms,best,mean,dups,republished";

// One report row. best/mean use shortest round-trip formatting, so two runs
// with equal trajectories produce byte-equal columns.
std::string report_csv_row(const ga::GenerationReport& r);
std::string bench_csv_row(std::uint32_t worker_count, const ga::GenerationReport& r);

// Streams rows as generations complete and flushes each one, so an aborted
// run still leaves every finished generation on disk.
class ReportWriter {
  public:
    explicit ReportWriter(const std::string& path); // throws ConfigError on open failure
    void write(const ga::GenerationReport& r);

  private:
    std::ofstream out_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws ConfigError when absent.
    std::size_t column(const std::string& name) const;
};

// Strict reader for our own output: no quoting, every row must match the
// header width.
CsvTable read_csv(const std::string& path);

} // namespace mqga::harness
