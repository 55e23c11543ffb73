#ifndef TERASENSE_CONSTANTS_HPP
#define TERASENSE_CONSTANTS_HPP

namespace terasense {

// Physical constants (CODATA 2018 exact/recommended values).
// Internal unit system: Hz, Pa, K, m throughout.
struct PhysicalConstants {
    double speed_of_light = 299792458.0;        // m/s
    double planck = 6.62607015e-34;             // J s
    double boltzmann = 1.380649e-23;            // J/K
    double gas_constant = 8.31446261815324;     // J/(mol K)
    double avogadro = 6.02214076e23;            // 1/mol
    double reference_pressure = 101325.0;       // Pa (1 atm)
    double reference_temperature = 296.0;       // K (HITRAN reference)
    double stp_temperature = 273.15;            // K
};

inline const PhysicalConstants& constants()
{
    static const PhysicalConstants c{};
    return c;
}

} // namespace terasense

#endif
