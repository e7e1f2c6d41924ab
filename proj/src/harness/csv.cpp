#include "mqga/harness/csv.hpp"

#include <sstream>

#include "mqga/errors.hpp"
#include "mqga/strings.hpp"

namespace mqga::harness {

std::string report_csv_row(const ga::GenerationReport& r) {
    std::ostringstream out;
    out << r.generation << ',' << format_double(r.best_fitness) << ','
        << format_double(r.mean_fitness) << ',' << r.wall_time.count() << ','
        << r.duplicate_responses << ',' << r.republished_requests;
    return out.str();
}

std::string bench_csv_row(std::uint32_t worker_count, const ga::GenerationReport& r) {
    std::ostringstream out;
    out << worker_count << ',' << r.generation << ',' << r.wall_time.count() << ','
        << format_double(r.best_fitness) << ',' << format_double(r.mean_fitness) << ','
        << r.duplicate_responses << ',' << r.republished_requests;
    return out.str();
}

ReportWriter::ReportWriter(const std::string& path) : out_(path, std::ios::trunc) {
    if (!out_)
        throw ConfigError("cannot open report file \"" + path + "\" for writing");
    out_ << kReportCsvHeader << '\n';
    out_.flush();
}

void ReportWriter::write(const ga::GenerationReport& r) {
    out_ << report_csv_row(r) << '\n';
    out_.flush();
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name)
            return i;
    throw ConfigError("CSV has no column \"" + name + "\"");
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open CSV \"" + path + "\"");
    CsvTable table;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        std::vector<std::string> cells = split(line, ',');
        if (table.header.empty()) {
            table.header = std::move(cells);
            continue;
        }
        if (cells.size() != table.header.size())
            throw ConfigError("ragged CSV row in \"" + path + "\"");
        table.rows.push_back(std::move(cells));
    }
    if (table.header.empty())
        throw ConfigError("CSV \"" + path + "\" is empty");
    return table;
}

} // namespace mqga::harness
