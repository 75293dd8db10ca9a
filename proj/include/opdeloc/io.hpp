#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "opdeloc/battery.hpp"
#include "opdeloc/krylov.hpp"

namespace opdeloc {

// Ordered key/value pairs written as "# key = value" header lines.
using Metadata = std::vector<std::pair<std::string, std::string>>;

// Shortest decimal form that round-trips to the same double.
std::string format_double(double x);

class CsvWriter {
public:
    CsvWriter(std::ostream& out, const Metadata& meta, std::vector<std::string> columns);

    // Fields are written verbatim; use cell() for numbers.
    void row(const std::vector<std::string>& fields);

    static std::string cell(double x) { return format_double(x); }
    static std::string cell(long long x) { return std::to_string(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(const std::string& x) { return x; }

private:
    std::ostream& out_;
    std::size_t width_;
};

Metadata series_metadata(const SeriesMetadata& m);

// Columns t, ck.
void write_complexity_csv(std::ostream& out, const ComplexitySeries& series);
// Columns t, E, P.
void write_power_csv(std::ostream& out, const PowerSeries& series, const Metadata& meta = {});

nlohmann::json power_summary_json(const PowerSeries& series, const Metadata& meta = {});

// Writes `text` to `path`, creating parent directories.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace opdeloc
