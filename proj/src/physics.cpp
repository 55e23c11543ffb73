#include "terasense/physics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace terasense::physics {

namespace {

const double kPi = 3.14159265358979323846;

double parse_field(const std::string& record, std::size_t line_no,
                   std::size_t col0, std::size_t len, const char* name)
{
    const std::string field = record.substr(col0, len);
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(field, &pos);
    } catch (const std::exception&) {
        throw FormatError("line " + std::to_string(line_no) +
                          ": unparsable field '" + std::string(name) + "': '" +
                          field + "'");
    }
    // Trailing garbage after the number also counts as malformed.
    for (std::size_t i = pos; i < field.size(); ++i) {
        if (field[i] != ' ') {
            throw FormatError("line " + std::to_string(line_no) +
                              ": unparsable field '" + std::string(name) +
                              "': '" + field + "'");
        }
    }
    return v;
}

int parse_int_field(const std::string& record, std::size_t line_no,
                    std::size_t col0, std::size_t len, const char* name)
{
    return static_cast<int>(parse_field(record, line_no, col0, len, name));
}

// HITRAN F-format drops the leading zero of |v| < 1 to fit the column
// (".0700", "-.008160").
std::string fixed_nolead(double v, int width, int prec)
{
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*f", prec, v);
    std::string s(buf);
    if (s.rfind("0.", 0) == 0) s.erase(0, 1);
    else if (s.rfind("-0.", 0) == 0) s.erase(1, 1);
    if (s.size() < static_cast<std::size_t>(width))
        s.insert(0, static_cast<std::size_t>(width) - s.size(), ' ');
    return s;
}

} // namespace

double GasSpecies::total_mixing_ratio() const
{
    double total = 0.0;
    for (const auto& [iso, q] : mixing_ratio) total += q;
    return total;
}

void MediumState::validate() const
{
    if (pressure <= 0.0) throw DomainError("medium pressure must be > 0");
    if (temperature <= 0.0) throw DomainError("medium temperature must be > 0");
    if (path_length <= 0.0) throw DomainError("medium path length must be > 0");
    double total = 0.0;
    for (const auto& sp : species) {
        for (const auto& [iso, q] : sp.mixing_ratio) {
            if (q < 0.0 || q > 1.0)
                throw DomainError("mixing ratio of " + sp.name +
                                  " out of [0,1]");
            total += q;
        }
    }
    if (total > 1.0 + 1e-12)
        throw DomainError("total mixing ratio exceeds 1");
}

void SpectralGrid::validate() const
{
    for (std::size_t i = 0; i < frequencies.size(); ++i) {
        if (frequencies[i] <= 0.0)
            throw DomainError("grid frequencies must be > 0");
        if (i > 0 && frequencies[i] <= frequencies[i - 1])
            throw DomainError("grid frequencies must be strictly increasing");
    }
}

double LineWingCutoff::window(double half_width, double pressure,
                              const PhysicalConstants& c) const
{
    if (halfwidths <= 0.0) return std::numeric_limits<double>::infinity();
    return halfwidths * half_width *
           std::max(1.0, pressure / c.reference_pressure);
}

std::vector<LineRecord> parse_hitran(const std::string& par_text,
                                     const PhysicalConstants& c)
{
    // HITRAN 2004 column spans (1-indexed): molecule 1-2, isotopologue 3,
    // wavenumber 4-15, intensity 16-25, Einstein-A 26-35, gamma_air 36-40,
    // gamma_self 41-45, E'' 46-55, n_air 56-59, delta_air 60-67.
    std::vector<LineRecord> lines;
    std::istringstream in(par_text);
    std::string record;
    std::size_t line_no = 0;
    const double wavenumber_to_hz = 100.0 * c.speed_of_light;   // cm^-1 -> Hz
    const double per_atm_to_per_pa = 1.0 / c.reference_pressure;
    while (std::getline(in, record)) {
        ++line_no;
        if (!record.empty() && record.back() == '\r') record.pop_back();
        if (record.empty()) continue;
        if (record.size() < 67)
            throw FormatError("line " + std::to_string(line_no) +
                              ": record too short (" +
                              std::to_string(record.size()) +
                              " chars, need at least 67)");
        LineRecord lr;
        lr.molecule_id = parse_int_field(record, line_no, 0, 2, "molecule");
        lr.isotopologue_id =
            parse_int_field(record, line_no, 2, 1, "isotopologue");
        const double nu = parse_field(record, line_no, 3, 12, "wavenumber");
        const double S = parse_field(record, line_no, 15, 10, "intensity");
        const double g_air = parse_field(record, line_no, 35, 5, "gamma_air");
        const double g_self = parse_field(record, line_no, 40, 5, "gamma_self");
        const double n_air = parse_field(record, line_no, 55, 4, "n_air");
        const double d_air = parse_field(record, line_no, 59, 8, "delta_air");
        lr.zero_pressure_resonance = wavenumber_to_hz * nu;
        lr.absorption_strength = S;
        lr.air_broadening = g_air * wavenumber_to_hz * per_atm_to_per_pa;
        lr.self_broadening = g_self * wavenumber_to_hz * per_atm_to_per_pa;
        lr.temperature_exponent = n_air;
        lr.pressure_shift = d_air * wavenumber_to_hz * per_atm_to_per_pa;
        if (lr.zero_pressure_resonance <= 0.0)
            throw FormatError("line " + std::to_string(line_no) +
                              ": non-positive resonance frequency");
        if (lr.absorption_strength < 0.0)
            throw FormatError("line " + std::to_string(line_no) +
                              ": negative intensity");
        lines.push_back(lr);
    }
    return lines;
}

std::string format_hitran(const LineRecord& line, const PhysicalConstants& c)
{
    const double wavenumber_to_hz = 100.0 * c.speed_of_light;
    const double nu = line.zero_pressure_resonance / wavenumber_to_hz;
    const double g_air =
        line.air_broadening * c.reference_pressure / wavenumber_to_hz;
    const double g_self =
        line.self_broadening * c.reference_pressure / wavenumber_to_hz;
    const double d_air =
        line.pressure_shift * c.reference_pressure / wavenumber_to_hz;
    char buf[96];
    std::snprintf(buf, sizeof(buf), "%2d%1d%12.6f%10.3E%10.3E",
                  line.molecule_id, line.isotopologue_id, nu,
                  line.absorption_strength, 0.0);
    std::string record(buf);
    record += fixed_nolead(g_air, 5, 4);
    record += fixed_nolead(g_self, 5, 4);
    std::snprintf(buf, sizeof(buf), "%10.4f%4.2f", 0.0,
                  line.temperature_exponent);
    record += buf;
    record += fixed_nolead(d_air, 8, 6);
    record.resize(160, ' ');
    return record;
}

double lorentz_halfwidth(const LineRecord& line, double q, double p, double t,
                         const PhysicalConstants& c)
{
    if (p <= 0.0 || t <= 0.0) throw DomainError("lorentz_halfwidth: p, t > 0");
    if (q < 0.0 || q > 1.0) throw DomainError("lorentz_halfwidth: q in [0,1]");
    // Broadening coefficients are stored in Hz/Pa, so the pressure scaling
    // is a plain multiply by p (w0 * p0 * (p/p0)).
    const double blended =
        (1.0 - q) * line.air_broadening + q * line.self_broadening;
    return blended * p *
           std::pow(c.reference_temperature / t, line.temperature_exponent);
}

double vvw_lineshape(double f, double f_c, double w_L,
                     const PhysicalConstants& c)
{
    const double dm = f - f_c;
    const double dp = f + f_c;
    return (c.speed_of_light * w_L * f) / (kPi * f_c) *
           (100.0 / (dm * dm + w_L * w_L) + 100.0 / (dp * dp + w_L * w_L));
}

double absorption_cross_section(double f, const LineRecord& line, double f_c,
                                double w_L, double t,
                                const PhysicalConstants& c)
{
    const double hc_over_2kt =
        c.planck * c.speed_of_light / (2.0 * c.boltzmann * t);
    return vvw_lineshape(f, f_c, w_L, c) * line.absorption_strength *
           (f / f_c) * std::tanh(hc_over_2kt * f) / std::tanh(hc_over_2kt * f_c);
}

double molecular_absorption(double f, const MediumState& medium,
                            const PhysicalConstants& c,
                            const LineWingCutoff& cutoff)
{
    if (medium.species.empty())
        throw DomainError("molecular_absorption: medium has no species");
    medium.validate();
    if (f <= 0.0) throw DomainError("molecular_absorption: f must be > 0");

    const double p = medium.pressure;
    const double t = medium.temperature;
    const double density_factor = (p / c.reference_pressure) *
                                  (c.stp_temperature / t) *
                                  (p / (c.gas_constant * t)) * c.avogadro;
    double total = 0.0;
    for (const auto& sp : medium.species) {
        for (const auto& line : sp.lines) {
            auto it = sp.mixing_ratio.find(line.isotopologue_id);
            if (it == sp.mixing_ratio.end()) continue;
            const double q = it->second;
            if (q == 0.0) continue;
            const double f_c =
                line.zero_pressure_resonance + line.pressure_shift * p;
            const double w_L = lorentz_halfwidth(line, q, p, t, c);
            if (std::abs(f - f_c) > cutoff.window(w_L, p, c)) continue;
            total += density_factor * q *
                     absorption_cross_section(f, line, f_c, w_L, t, c);
        }
    }
    return total;
}

std::complex<double> path_gain(double f, const MediumState& medium,
                               const PhysicalConstants& c,
                               const LineWingCutoff& cutoff)
{
    if (f <= 0.0) throw DomainError("path_gain: f must be > 0");
    const double D = medium.path_length;
    const double K = molecular_absorption(f, medium, c, cutoff);
    const double magnitude =
        c.speed_of_light / (4.0 * kPi * f * D) * std::exp(-0.5 * K * D);
    const double phase = -2.0 * kPi * f * D / c.speed_of_light;
    return std::polar(magnitude, phase);
}

Spectrum absorption_spectrum_serial(const SpectralGrid& grid,
                                    const MediumState& medium,
                                    const PhysicalConstants& c,
                                    const LineWingCutoff& cutoff)
{
    grid.validate();
    Spectrum s;
    s.grid = grid;
    s.kind = SpectrumKind::AbsorptionCoefficient;
    s.values.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i)
        s.values[i] = molecular_absorption(grid.frequencies[i], medium, c, cutoff);
    return s;
}

Spectrum absorption_spectrum(const SpectralGrid& grid, const MediumState& medium,
                             const PhysicalConstants& c,
                             const LineWingCutoff& cutoff)
{
    grid.validate();
    medium.validate();
    if (medium.species.empty())
        throw DomainError("absorption_spectrum: medium has no species");
    Spectrum s;
    s.grid = grid;
    s.kind = SpectrumKind::AbsorptionCoefficient;
    s.values.resize(grid.size());
    const auto n = static_cast<std::ptrdiff_t>(grid.size());
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i)
        s.values[i] = molecular_absorption(grid.frequencies[i], medium, c, cutoff);
    return s;
}

} // namespace terasense::physics
