#ifndef TERASENSE_SPECTROSCOPY_HPP
#define TERASENSE_SPECTROSCOPY_HPP

#include <complex>
#include <vector>

#include "terasense/constants.hpp"
#include "terasense/errors.hpp"

namespace terasense::spectroscopy {

struct OpticalConstants {
    double refractive_index = 1.0;     // n
    double extinction_coefficient = 0; // chi
    // K = 4 pi f chi / c at the stated frequency.
    double absorption_coefficient(double f,
                                  const PhysicalConstants& c = constants()) const;
};

struct ObliqueReflection {
    std::complex<double> r_s;
    std::complex<double> r_p;
    std::complex<double> refraction_angle; // rad, complex for lossy media
};

struct NormalReflection {
    double reflection_coefficient = 0.0; // r = sqrt(R)
    double reflectance = 0.0;            // R = |r~|^2
    double phase_shift = 0.0;            // rad
};

// Fresnel coefficients at an oblique interface; both indices are explicit
// so either side of the interface can be the lossy medium. Snell's law:
// n_i sin(theta_i) = n_r sin(theta_r).
ObliqueReflection fresnel_oblique(std::complex<double> n_incident,
                                  double incidence_angle,
                                  std::complex<double> n_receiving = 1.0);

// r~ = ((n-1) + j chi) / ((n+1) + j chi) at normal incidence.
NormalReflection fresnel_normal(double n, double chi);

// Inverse of fresnel_normal: (R, phi) -> (n, chi).
OpticalConstants invert_reflection(double reflectance, double phase_shift);

double absorption_from_extinction(double f, double chi,
                                  const PhysicalConstants& c = constants());

// T = 4n/(1+n)^2 exp(j 2 pi f (n~ - 1) d / c), n~ = n + j chi.
std::complex<double> transmission_forward(double n, double chi, double thickness,
                                          double f,
                                          const PhysicalConstants& c = constants());

struct TransmissionInversion {
    OpticalConstants optical;
    double absorption_coefficient = 0.0; // 1/m, from the direct log form
    bool extinction_clamped = false;     // T exceeded the lossless bound
};

TransmissionInversion invert_transmission(double transmittance_magnitude,
                                          double phase_difference,
                                          double thickness, double f,
                                          const PhysicalConstants& c = constants());

// Nearest-multiple-of-2 pi continuation along ascending frequency.
std::vector<double> unwrap_phase(const std::vector<double>& wrapped);

} // namespace terasense::spectroscopy

#endif
