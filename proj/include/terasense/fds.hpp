#ifndef TERASENSE_FDS_HPP
#define TERASENSE_FDS_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "terasense/bench.hpp"
#include "terasense/physics.hpp"

namespace terasense::fds {

enum class CarrierStrategy { Uniform, Random, Resonant };

CarrierStrategy strategy_from_string(const std::string& s);
std::string to_string(CarrierStrategy s);

struct CarrierPlan {
    CarrierStrategy strategy = CarrierStrategy::Uniform;
    int count = 100;
    double band_lo = 0.1e12; // Hz
    double band_hi = 1.0e12; // Hz
    std::string target_species;         // resonant mode only
    std::vector<double> carriers;       // resolved list, Hz

    void validate() const;
};

struct MixtureProfile {
    std::string name;
    physics::MediumState medium;
};

// dry / humid / polluted air defaults over the supplied line database
// (configuration defaults, overridable per run).
std::vector<MixtureProfile>
default_profiles(const std::map<std::string, std::vector<physics::LineRecord>>&
                     lines_by_species,
                 double path_length = 5.0);

CarrierPlan allocate_carriers(
    const CarrierPlan& plan,
    const std::map<std::string, std::vector<physics::LineRecord>>&
        lines_by_species,
    std::uint64_t seed,
    const PhysicalConstants& c = constants());

// |path_gain| at each carrier, with seeded noise at the configured SNR.
std::vector<double> measure_channel(const CarrierPlan& plan,
                                    const MixtureProfile& profile,
                                    const bench::SnrSpec& snr,
                                    std::uint64_t seed,
                                    const PhysicalConstants& c = constants());

struct SenseConfig {
    std::vector<bench::SnrSpec> snr_grid;
    int per_profile = 40;
    int folds = 10;
    int repetitions = 5;
    bench::Preprocessing preprocessing = bench::Preprocessing::None;
    bench::Extractor extractor = bench::Extractor::None;
    int components = 10;
    bench::Classifier classifier = bench::Classifier::Wknn;
    bench::ClassifierParams params;
    std::uint64_t seed = 0;
};

// Success-rate curves per carrier plan over the SNR grid, via the standard
// K-fold pipeline on synthesized channel observations.
std::map<std::string, std::vector<bench::SweepResult>>
sense_mixture(const std::vector<CarrierPlan>& plans,
              const std::vector<MixtureProfile>& profiles,
              const SenseConfig& cfg,
              const PhysicalConstants& c = constants());

struct SpikeThresholdRule {
    double multiplier = 3.0; // peak must exceed multiplier * baseline median
};

// Per-species presence: spectrum value at the species' strongest in-band
// resonance vs the spectrum median baseline.
std::map<std::string, bool> spike_detect(
    const physics::Spectrum& spectrum,
    const std::map<std::string, std::vector<physics::LineRecord>>&
        lines_by_species,
    const SpikeThresholdRule& rule,
    const PhysicalConstants& c = constants());

} // namespace terasense::fds

#endif
