#include "terasense/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace terasense::io {

std::string format_double(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string spectrum_to_csv(const physics::Spectrum& spectrum)
{
    std::ostringstream out;
    out << "frequency_hz,value\n";
    for (std::size_t i = 0; i < spectrum.grid.size(); ++i)
        out << format_double(spectrum.grid.frequencies[i]) << ','
            << format_double(spectrum.values[i]) << '\n';
    return out.str();
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

double parse_double(const std::string& s, std::size_t line_no)
{
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing");
        return v;
    } catch (const std::exception&) {
        throw FormatError("csv line " + std::to_string(line_no) +
                          ": unparsable number '" + s + "'");
    }
}

} // namespace

physics::Spectrum spectrum_from_csv(const std::string& text,
                                    physics::SpectrumKind kind)
{
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    physics::Spectrum s;
    s.kind = kind;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line_no == 1) {
            if (line != "frequency_hz,value")
                throw FormatError("spectrum csv: unexpected header '" + line +
                                  "'");
            continue;
        }
        const auto fields = split_csv_line(line);
        if (fields.size() != 2)
            throw FormatError("csv line " + std::to_string(line_no) +
                              ": expected 2 fields");
        s.grid.frequencies.push_back(parse_double(fields[0], line_no));
        s.values.push_back(parse_double(fields[1], line_no));
    }
    s.grid.validate();
    return s;
}

std::map<std::string, physics::Spectrum>
load_materials_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line))
        throw FormatError("materials csv: empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto header = split_csv_line(line);
    if (header.size() < 2 || header[0] != "frequency_hz")
        throw FormatError("materials csv: header must start with frequency_hz");
    std::set<std::string> seen;
    for (std::size_t i = 1; i < header.size(); ++i)
        if (!seen.insert(header[i]).second)
            throw FormatError("materials csv: duplicate column '" + header[i] +
                              "'");

    std::vector<double> freq;
    std::vector<std::vector<double>> columns(header.size() - 1);
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto fields = split_csv_line(line);
        if (fields.size() != header.size())
            throw FormatError("materials csv line " + std::to_string(line_no) +
                              ": ragged row (" + std::to_string(fields.size()) +
                              " fields, expected " +
                              std::to_string(header.size()) + ")");
        const double f = parse_double(fields[0], line_no);
        if (!freq.empty() && f <= freq.back())
            throw FormatError("materials csv line " + std::to_string(line_no) +
                              ": non-monotone frequency column");
        freq.push_back(f);
        for (std::size_t c = 1; c < fields.size(); ++c)
            columns[c - 1].push_back(parse_double(fields[c], line_no));
    }

    physics::SpectralGrid grid{freq};
    grid.validate();
    std::map<std::string, physics::Spectrum> out;
    for (std::size_t c = 1; c < header.size(); ++c) {
        physics::Spectrum s;
        s.grid = grid;
        s.values = columns[c - 1];
        s.kind = physics::SpectrumKind::Transmittance;
        out.emplace(header[c], std::move(s));
    }
    return out;
}

void write_file_atomic(const std::string& path, const std::string& content)
{
    namespace fs = std::filesystem;
    const fs::path target(path);
    const fs::path dir =
        target.has_parent_path() ? target.parent_path() : fs::path(".");
    const fs::path tmp = dir / (target.filename().string() + ".tmp");
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw FormatError("cannot write " + tmp.string());
        out << content;
        if (!out) throw FormatError("write failed for " + tmp.string());
    }
    fs::rename(tmp, target);
}

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::string resolve_data_path(const std::string& path)
{
    namespace fs = std::filesystem;
    if (fs::exists(path)) return path;
    if (const char* root = std::getenv("TERASENSE_DATA_DIR")) {
        const fs::path candidate = fs::path(root) / path;
        if (fs::exists(candidate)) return candidate.string();
    }
    return path;
}

} // namespace terasense::io
