#include "terasense/fds.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace terasense::fds {

CarrierStrategy strategy_from_string(const std::string& s)
{
    if (s == "uniform") return CarrierStrategy::Uniform;
    if (s == "random") return CarrierStrategy::Random;
    if (s == "resonant") return CarrierStrategy::Resonant;
    throw DomainError("unknown carrier strategy: " + s);
}

std::string to_string(CarrierStrategy s)
{
    switch (s) {
    case CarrierStrategy::Uniform: return "uniform";
    case CarrierStrategy::Random: return "random";
    case CarrierStrategy::Resonant: return "resonant";
    }
    return "uniform";
}

void CarrierPlan::validate() const
{
    if (count < 1) throw DomainError("carrier plan: count >= 1");
    if (!(band_lo > 0.0) || !(band_lo < band_hi))
        throw DomainError("carrier plan: need 0 < f_lo < f_hi");
    if (strategy == CarrierStrategy::Resonant && target_species.empty())
        throw DomainError("carrier plan: resonant mode needs a target species");
}

std::vector<MixtureProfile>
default_profiles(const std::map<std::string, std::vector<physics::LineRecord>>&
                     lines_by_species,
                 double path_length)
{
    auto species = [&](const std::string& name, double q) {
        physics::GasSpecies sp;
        sp.name = name;
        sp.mixing_ratio[1] = q;
        auto it = lines_by_species.find(name);
        if (it != lines_by_species.end()) sp.lines = it->second;
        return sp;
    };

    MixtureProfile dry;
    dry.name = "dry";
    dry.medium.path_length = path_length;
    dry.medium.species = {species("N2", 0.7809), species("O2", 0.2095),
                          species("CO2", 4.0e-4)};

    // Humid air: dry composition scaled down to admit 2% water vapor.
    MixtureProfile humid;
    humid.name = "humid";
    humid.medium.path_length = path_length;
    const double dry_scale = 1.0 - 0.02;
    humid.medium.species = {species("N2", 0.7809 * dry_scale),
                            species("O2", 0.2095 * dry_scale),
                            species("CO2", 4.0e-4 * dry_scale),
                            species("H2O", 0.02)};

    MixtureProfile polluted = humid;
    polluted.name = "polluted";
    for (auto& sp : polluted.medium.species)
        for (auto& [iso, q] : sp.mixing_ratio) q *= 1.0 - 2.0e-4;
    polluted.medium.species.push_back(species("CH4", 2.0e-4));

    return {dry, humid, polluted};
}

namespace {

std::vector<double> uniform_grid(double lo, double hi, int count)
{
    std::vector<double> out;
    out.reserve(count);
    if (count == 1) {
        out.push_back(0.5 * (lo + hi));
        return out;
    }
    for (int i = 0; i < count; ++i)
        out.push_back(lo + (hi - lo) * i / (count - 1));
    return out;
}

} // namespace

CarrierPlan allocate_carriers(
    const CarrierPlan& plan,
    const std::map<std::string, std::vector<physics::LineRecord>>&
        lines_by_species,
    std::uint64_t seed, const PhysicalConstants& c)
{
    plan.validate();
    CarrierPlan out = plan;
    out.carriers.clear();

    switch (plan.strategy) {
    case CarrierStrategy::Uniform:
        out.carriers = uniform_grid(plan.band_lo, plan.band_hi, plan.count);
        break;
    case CarrierStrategy::Random: {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> uni(plan.band_lo, plan.band_hi);
        for (int i = 0; i < plan.count; ++i) out.carriers.push_back(uni(rng));
        std::sort(out.carriers.begin(), out.carriers.end());
        break;
    }
    case CarrierStrategy::Resonant: {
        const auto it = lines_by_species.find(plan.target_species);
        if (it == lines_by_species.end())
            throw DomainError("allocate_carriers: unknown target species " +
                              plan.target_species);
        // Strongest lines first, at their pressure-shifted resonance
        // (reference pressure), deduplicated within one linewidth.
        std::vector<physics::LineRecord> lines = it->second;
        std::sort(lines.begin(), lines.end(),
                  [](const auto& a, const auto& b) {
                      return a.absorption_strength > b.absorption_strength;
                  });
        for (const auto& line : lines) {
            if (static_cast<int>(out.carriers.size()) >= plan.count) break;
            const double f_c = line.zero_pressure_resonance +
                               line.pressure_shift * c.reference_pressure;
            if (f_c < plan.band_lo || f_c > plan.band_hi) continue;
            const double w_L =
                physics::lorentz_halfwidth(line, 0.0, c.reference_pressure,
                                           c.reference_temperature, c);
            bool duplicate = false;
            for (double existing : out.carriers)
                if (std::abs(existing - f_c) < w_L) duplicate = true;
            if (!duplicate) out.carriers.push_back(f_c);
        }
        if (out.carriers.empty())
            throw DomainError("allocate_carriers: no resonances of " +
                              plan.target_species + " in band");
        if (static_cast<int>(out.carriers.size()) < plan.count) {
            // Pad with uniform carriers once lines run out.
            for (double f :
                 uniform_grid(plan.band_lo, plan.band_hi,
                              plan.count -
                                  static_cast<int>(out.carriers.size())))
                out.carriers.push_back(f);
        }
        std::sort(out.carriers.begin(), out.carriers.end());
        break;
    }
    }
    return out;
}

std::vector<double> measure_channel(const CarrierPlan& plan,
                                    const MixtureProfile& profile,
                                    const bench::SnrSpec& snr,
                                    std::uint64_t seed,
                                    const PhysicalConstants& c)
{
    if (plan.carriers.empty())
        throw DomainError("measure_channel: unresolved carrier plan");
    std::vector<double> obs(plan.carriers.size());
    double power = 0.0;
    for (std::size_t i = 0; i < plan.carriers.size(); ++i) {
        obs[i] = std::abs(
            physics::path_gain(plan.carriers[i], profile.medium, c));
        power += obs[i] * obs[i];
    }
    power /= static_cast<double>(obs.size());
    const double sd = snr.noise_std(power);
    if (sd > 0.0) {
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> gauss(0.0, sd);
        for (double& v : obs) v += gauss(rng);
    }
    return obs;
}

std::map<std::string, std::vector<bench::SweepResult>>
sense_mixture(const std::vector<CarrierPlan>& plans,
              const std::vector<MixtureProfile>& profiles,
              const SenseConfig& cfg, const PhysicalConstants& c)
{
    if (profiles.size() < 2)
        throw DomainError("sense_mixture: need at least 2 profiles");
    if (cfg.snr_grid.empty())
        throw DomainError("sense_mixture: empty SNR grid");

    std::map<std::string, std::vector<bench::SweepResult>> out;
    for (std::size_t pi = 0; pi < plans.size(); ++pi) {
        const CarrierPlan& plan = plans[pi];
        if (plan.carriers.empty())
            throw DomainError("sense_mixture: unresolved carrier plan");

        // Clean fingerprints per profile; bench adds the per-class noise.
        bench::ExperimentConfig bench_cfg;
        for (const auto& profile : profiles) {
            physics::Spectrum s;
            s.grid.frequencies = plan.carriers;
            s.values = measure_channel(plan, profile,
                                       bench::SnrSpec::noiseless(), 0, c);
            s.kind = physics::SpectrumKind::PathGainMagnitude;
            bench_cfg.clean.emplace(profile.name, std::move(s));
        }
        bench_cfg.per_class = cfg.per_profile;
        bench_cfg.preprocessing = cfg.preprocessing;
        bench_cfg.extractors = {cfg.extractor};
        bench_cfg.components = cfg.components;
        bench_cfg.classifiers = {cfg.classifier};
        bench_cfg.params = cfg.params;
        bench_cfg.snr_grid = cfg.snr_grid;
        bench_cfg.folds = cfg.folds;
        bench_cfg.repetitions = cfg.repetitions;
        // Every plan shares the master seed so plan comparisons at equal
        // carrier counts are paired (same noise draws per sweep cell).
        bench_cfg.seed = cfg.seed;

        std::string key = to_string(plan.strategy) + "-" +
                          std::to_string(plan.count);
        if (!plan.target_species.empty()) key += "-" + plan.target_species;
        out.emplace(key, bench::run_sweep(bench_cfg));
    }
    return out;
}

std::map<std::string, bool> spike_detect(
    const physics::Spectrum& spectrum,
    const std::map<std::string, std::vector<physics::LineRecord>>&
        lines_by_species,
    const SpikeThresholdRule& rule, const PhysicalConstants& c)
{
    if (spectrum.kind != physics::SpectrumKind::AbsorptionCoefficient)
        throw DomainError("spike_detect: spectrum must be an absorption "
                          "coefficient spectrum");
    if (spectrum.values.empty())
        throw DomainError("spike_detect: empty spectrum");

    std::vector<double> sorted = spectrum.values;
    std::sort(sorted.begin(), sorted.end());
    const std::size_t n = sorted.size();
    const double baseline = n % 2 ? sorted[n / 2]
                                  : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);

    const double f_lo = spectrum.grid.frequencies.front();
    const double f_hi = spectrum.grid.frequencies.back();

    std::map<std::string, bool> out;
    for (const auto& [name, lines] : lines_by_species) {
        const physics::LineRecord* strongest = nullptr;
        double strongest_fc = 0.0;
        for (const auto& line : lines) {
            const double f_c = line.zero_pressure_resonance +
                               line.pressure_shift * c.reference_pressure;
            if (f_c < f_lo || f_c > f_hi) continue;
            if (!strongest ||
                line.absorption_strength > strongest->absorption_strength) {
                strongest = &line;
                strongest_fc = f_c;
            }
        }
        if (!strongest) {
            out[name] = false;
            continue;
        }
        const auto it = std::lower_bound(spectrum.grid.frequencies.begin(),
                                         spectrum.grid.frequencies.end(),
                                         strongest_fc);
        std::size_t idx = it - spectrum.grid.frequencies.begin();
        if (idx == spectrum.grid.size()) idx = spectrum.grid.size() - 1;
        if (idx > 0 && std::abs(spectrum.grid.frequencies[idx - 1] -
                                strongest_fc) <
                           std::abs(spectrum.grid.frequencies[idx] -
                                    strongest_fc))
            --idx;
        out[name] = spectrum.values[idx] > rule.multiplier * baseline;
    }
    return out;
}

} // namespace terasense::fds
