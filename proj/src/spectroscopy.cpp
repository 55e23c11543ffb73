#include "terasense/spectroscopy.hpp"

#include <cmath>

namespace terasense::spectroscopy {

namespace {
const double kPi = 3.14159265358979323846;
}

double OpticalConstants::absorption_coefficient(double f,
                                                const PhysicalConstants& c) const
{
    return 4.0 * kPi * f * extinction_coefficient / c.speed_of_light;
}

ObliqueReflection fresnel_oblique(std::complex<double> n_incident,
                                  double incidence_angle,
                                  std::complex<double> n_receiving)
{
    if (incidence_angle < 0.0 || incidence_angle >= kPi / 2.0)
        throw DomainError("fresnel_oblique: incidence angle in [0, pi/2)");
    const double cos_i = std::cos(incidence_angle);
    const double sin_i = std::sin(incidence_angle);
    const std::complex<double> sin_r = n_incident * sin_i / n_receiving;
    // Principal branch; cos(theta_r) stays consistent with asin.
    const std::complex<double> theta_r = std::asin(sin_r);
    const std::complex<double> cos_r = std::cos(theta_r);

    ObliqueReflection out;
    out.refraction_angle = theta_r;
    out.r_s = (n_incident * cos_i - n_receiving * cos_r) /
              (n_receiving * cos_r + n_incident * cos_i);
    out.r_p = (n_incident * cos_r - n_receiving * cos_i) /
              (n_receiving * cos_i + n_incident * cos_r);
    return out;
}

NormalReflection fresnel_normal(double n, double chi)
{
    if (n <= 0.0 || chi < 0.0)
        throw DomainError("fresnel_normal: need n > 0, chi >= 0");
    const std::complex<double> r_tilde =
        std::complex<double>(n - 1.0, chi) / std::complex<double>(n + 1.0, chi);
    NormalReflection out;
    out.reflection_coefficient = std::abs(r_tilde);
    out.reflectance = std::norm(r_tilde);
    out.phase_shift = std::arg(r_tilde);
    return out;
}

OpticalConstants invert_reflection(double reflectance, double phase_shift)
{
    if (reflectance < 0.0 || reflectance >= 1.0)
        throw DomainError("invert_reflection: R in [0, 1)");
    const double sqrt_r = std::sqrt(reflectance);
    const double denom = 1.0 + reflectance - 2.0 * sqrt_r * std::cos(phase_shift);
    if (denom < 1e-12)
        throw NumericalError("invert_reflection: singular measurement "
                             "(R -> 1 with phi -> 0)");
    OpticalConstants out;
    out.refractive_index = (1.0 - reflectance) / denom;
    out.extinction_coefficient = 2.0 * sqrt_r * std::sin(phase_shift) / denom;
    return out;
}

double absorption_from_extinction(double f, double chi,
                                  const PhysicalConstants& c)
{
    if (f <= 0.0 || chi < 0.0)
        throw DomainError("absorption_from_extinction: need f > 0, chi >= 0");
    return 4.0 * kPi * f * chi / c.speed_of_light;
}

std::complex<double> transmission_forward(double n, double chi, double thickness,
                                          double f, const PhysicalConstants& c)
{
    if (n <= 0.0 || chi < 0.0 || thickness <= 0.0 || f <= 0.0)
        throw DomainError("transmission_forward: invalid arguments");
    const double fresnel = 4.0 * n / ((1.0 + n) * (1.0 + n));
    const std::complex<double> n_tilde(n, chi);
    const std::complex<double> j(0.0, 1.0);
    return fresnel * std::exp(j * 2.0 * kPi * f * (n_tilde - 1.0) * thickness /
                              c.speed_of_light);
}

TransmissionInversion invert_transmission(double transmittance_magnitude,
                                          double phase_difference,
                                          double thickness, double f,
                                          const PhysicalConstants& c)
{
    if (transmittance_magnitude <= 0.0 || thickness <= 0.0 || f <= 0.0)
        throw DomainError("invert_transmission: need T > 0, d > 0, f > 0");
    const double scale = c.speed_of_light / (2.0 * kPi * thickness * f);
    const double n = scale * phase_difference + 1.0;
    if (n <= 0.0)
        throw DomainError("invert_transmission: inconsistent measurement "
                          "(computed n <= 0)");
    const double log_arg =
        4.0 * n / (transmittance_magnitude * (1.0 + n) * (1.0 + n));
    TransmissionInversion out;
    out.optical.refractive_index = n;
    if (log_arg < 1.0) {
        // T above the lossless Fresnel bound; chi would come out negative.
        out.optical.extinction_coefficient = 0.0;
        out.absorption_coefficient = 0.0;
        out.extinction_clamped = true;
        return out;
    }
    out.optical.extinction_coefficient = scale * std::log(log_arg);
    out.absorption_coefficient = (2.0 / thickness) * std::log(log_arg);
    return out;
}

std::vector<double> unwrap_phase(const std::vector<double>& wrapped)
{
    std::vector<double> out(wrapped);
    double offset = 0.0;
    for (std::size_t i = 1; i < out.size(); ++i) {
        double delta = wrapped[i] + offset - out[i - 1];
        while (delta > kPi) {
            offset -= 2.0 * kPi;
            delta -= 2.0 * kPi;
        }
        while (delta < -kPi) {
            offset += 2.0 * kPi;
            delta += 2.0 * kPi;
        }
        out[i] = wrapped[i] + offset;
    }
    return out;
}

} // namespace terasense::spectroscopy
