#include "opdeloc/io.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>

namespace opdeloc {

std::string format_double(double x) {
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, end);
}

CsvWriter::CsvWriter(std::ostream& out, const Metadata& meta, std::vector<std::string> columns)
    : out_(out), width_(columns.size()) {
    for (const auto& [k, v] : meta) out_ << "# " << k << " = " << v << '\n';
    row(columns);
}

void CsvWriter::row(const std::vector<std::string>& fields) {
    if (fields.size() != width_) throw std::invalid_argument("CsvWriter: row has the wrong number of fields");
    for (std::size_t i = 0; i < fields.size(); ++i) out_ << (i ? "," : "") << fields[i];
    out_ << '\n';
}

Metadata series_metadata(const SeriesMetadata& m) {
    return {{"model", m.model},
            {"L", std::to_string(m.num_modes)},
            {"k", std::to_string(m.half_degree)},
            {"p", format_double(m.rewire_prob)},
            {"size", std::to_string(m.size)},
            {"seed", std::to_string(m.seed)}};
}

void write_complexity_csv(std::ostream& out, const ComplexitySeries& series) {
    CsvWriter w(out, series_metadata(series.meta), {"t", "ck"});
    for (std::size_t i = 0; i < series.times.size(); ++i)
        w.row({CsvWriter::cell(series.times[i]), CsvWriter::cell(series.ck[i])});
}

void write_power_csv(std::ostream& out, const PowerSeries& series, const Metadata& meta) {
    Metadata m = meta;
    m.emplace_back("p_max", format_double(series.p_max));
    m.emplace_back("t_star", format_double(series.t_star));
    CsvWriter w(out, m, {"t", "E", "P"});
    for (std::size_t i = 0; i < series.times.size(); ++i)
        w.row({CsvWriter::cell(series.times[i]), CsvWriter::cell(series.energy[i]), CsvWriter::cell(series.power[i])});
}

nlohmann::json power_summary_json(const PowerSeries& series, const Metadata& meta) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [k, v] : meta) j[k] = v;
    j["p_max"] = series.p_max;
    j["t_star"] = series.t_star;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open " + path.string() + " for writing");
    f << text;
    if (!f) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace opdeloc
