#ifndef TERASENSE_PHYSICS_HPP
#define TERASENSE_PHYSICS_HPP

#include <complex>
#include <map>
#include <string>
#include <vector>

#include "terasense/constants.hpp"
#include "terasense/errors.hpp"

namespace terasense::physics {

// One spectral line of one gas isotopologue. All quantities in the
// internal unit system (Hz, Hz/Pa); absorption strength is kept in the
// database's native units (cm^-1 / (molecule cm^-2)) and never rescaled.
struct LineRecord {
    int molecule_id = 0;
    int isotopologue_id = 0;
    double zero_pressure_resonance = 0.0; // f_c0, Hz
    double absorption_strength = 0.0;     // S, database native units
    double air_broadening = 0.0;          // w0_air, Hz/Pa
    double self_broadening = 0.0;         // w0_self, Hz/Pa
    double temperature_exponent = 0.0;    // gamma, dimensionless
    double pressure_shift = 0.0;          // delta, Hz/Pa
};

struct GasSpecies {
    std::string name;
    std::map<int, double> mixing_ratio; // isotopologue_id -> q
    std::vector<LineRecord> lines;

    double total_mixing_ratio() const;
};

struct MediumState {
    std::vector<GasSpecies> species;
    double pressure = 101325.0;    // Pa
    double temperature = 296.0;    // K
    double path_length = 1.0;      // m

    void validate() const; // throws DomainError on invariant violation
};

struct SpectralGrid {
    std::vector<double> frequencies; // Hz, strictly increasing, > 0

    std::size_t size() const { return frequencies.size(); }
    void validate() const;
};

enum class SpectrumKind { Transmittance, AbsorptionCoefficient, PathGainMagnitude };

struct Spectrum {
    SpectralGrid grid;
    std::vector<double> values;
    SpectrumKind kind = SpectrumKind::AbsorptionCoefficient;
};

// Half-widths beyond which a line's contribution is dropped. <= 0 disables
// truncation entirely (used by the oracle tests).
struct LineWingCutoff {
    double halfwidths = 25.0;
    double window(double half_width, double pressure,
                  const PhysicalConstants& c) const;
};

// HITRAN 2004 .par fixed-width records, one line each.
std::vector<LineRecord> parse_hitran(const std::string& par_text,
                                     const PhysicalConstants& c = constants());

// Re-serializes one record into the .par column layout (used for the
// parser round-trip property; quantum-number columns are blank).
std::string format_hitran(const LineRecord& line,
                          const PhysicalConstants& c = constants());

// w_L = [(1-q) w0_air + q w0_self] (p/p0) (t0/t)^gamma
double lorentz_halfwidth(const LineRecord& line, double q, double p, double t,
                         const PhysicalConstants& c = constants());

// Van Vleck-Weisskopf line shape. The 100 numerators follow the source
// formulation's mixed-unit convention; the whole chain is kept internally
// consistent in Hz and validated by the composition and linearity tests.
double vvw_lineshape(double f, double f_c, double w_L,
                     const PhysicalConstants& c = constants());

double absorption_cross_section(double f, const LineRecord& line, double f_c,
                                double w_L, double t,
                                const PhysicalConstants& c = constants());

// K(f), summed over every line of every isotopologue of every species. 1/m.
double molecular_absorption(double f, const MediumState& medium,
                            const PhysicalConstants& c = constants(),
                            const LineWingCutoff& cutoff = {});

// alpha = c/(4 pi f D) exp(-K(f) D / 2) exp(-j 2 pi f D / c)
std::complex<double> path_gain(double f, const MediumState& medium,
                               const PhysicalConstants& c = constants(),
                               const LineWingCutoff& cutoff = {});

// Serial reference evaluation of K over a grid.
Spectrum absorption_spectrum_serial(const SpectralGrid& grid,
                                    const MediumState& medium,
                                    const PhysicalConstants& c = constants(),
                                    const LineWingCutoff& cutoff = {});

// OpenMP evaluation; grid points are independent so results are bitwise
// identical to the serial path.
Spectrum absorption_spectrum(const SpectralGrid& grid, const MediumState& medium,
                             const PhysicalConstants& c = constants(),
                             const LineWingCutoff& cutoff = {});

} // namespace terasense::physics

#endif
