// Micro-benchmark comparing the serial reference kernels against the
// OpenMP-parallel ones. Also asserts that the absorption kernel's parallel
// path is bitwise identical to the serial reference.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <random>

#include "terasense/features.hpp"
#include "terasense/io.hpp"
#include "terasense/physics.hpp"

using namespace terasense;

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
        .count();
}

physics::MediumState humid_air(
    const std::vector<physics::LineRecord>& lines)
{
    physics::MediumState medium;
    for (const auto& line : lines) {
        auto it = std::find_if(medium.species.begin(), medium.species.end(),
                               [&](const physics::GasSpecies& s) {
                                   return !s.lines.empty() &&
                                          s.lines.front().molecule_id ==
                                              line.molecule_id;
                               });
        if (it == medium.species.end()) {
            physics::GasSpecies sp;
            sp.name = "mol" + std::to_string(line.molecule_id);
            sp.mixing_ratio[1] = 0.01;
            medium.species.push_back(std::move(sp));
            it = medium.species.end() - 1;
        }
        it->lines.push_back(line);
    }
    medium.path_length = 5.0;
    return medium;
}

} // namespace

int main(int argc, char** argv)
{
    int grid_points = 20000;
    int affinity_rows = 600;
    if (argc > 1) grid_points = std::atoi(argv[1]);
    if (argc > 2) affinity_rows = std::atoi(argv[2]);

    const std::string par =
        io::read_file(io::resolve_data_path("data/sample_lines.par"));
    const auto lines = physics::parse_hitran(par);
    const physics::MediumState medium = humid_air(lines);

    physics::SpectralGrid grid;
    grid.frequencies.reserve(grid_points);
    for (int i = 0; i < grid_points; ++i)
        grid.frequencies.push_back(0.1e12 +
                                   0.9e12 * i / double(grid_points - 1));

    std::printf("threads available: %d\n", omp_get_max_threads());

    auto t0 = std::chrono::steady_clock::now();
    const auto serial = physics::absorption_spectrum_serial(grid, medium);
    const double t_serial = seconds_since(t0);

    t0 = std::chrono::steady_clock::now();
    const auto parallel = physics::absorption_spectrum(grid, medium);
    const double t_parallel = seconds_since(t0);

    bool identical = serial.values.size() == parallel.values.size();
    for (std::size_t i = 0; identical && i < serial.values.size(); ++i)
        identical = serial.values[i] == parallel.values[i];

    std::printf("absorption spectrum, %d points:\n", grid_points);
    std::printf("  serial   %.4f s\n", t_serial);
    std::printf("  parallel %.4f s  (speedup %.2fx, bitwise %s)\n",
                t_parallel, t_serial / t_parallel,
                identical ? "identical" : "DIFFERENT");

    // Pairwise-affinity kernel: same code path, thread count pinned to 1
    // for the reference run.
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd X(affinity_rows, 64);
    for (int i = 0; i < X.rows(); ++i)
        for (int j = 0; j < X.cols(); ++j) X(i, j) = gauss(rng);

    const int max_threads = omp_get_max_threads();
    omp_set_num_threads(1);
    t0 = std::chrono::steady_clock::now();
    const auto aff_serial = features::tsne_conditional_affinities(X, 5.0);
    const double t_aff_serial = seconds_since(t0);

    omp_set_num_threads(max_threads);
    t0 = std::chrono::steady_clock::now();
    const auto aff_parallel = features::tsne_conditional_affinities(X, 5.0);
    const double t_aff_parallel = seconds_since(t0);

    const double max_diff =
        (aff_serial.conditional - aff_parallel.conditional)
            .cwiseAbs()
            .maxCoeff();

    std::printf("pairwise affinities, %d rows:\n", affinity_rows);
    std::printf("  1 thread   %.4f s\n", t_aff_serial);
    std::printf("  %d threads %.4f s  (speedup %.2fx, max diff %.3g)\n",
                max_threads, t_aff_parallel, t_aff_serial / t_aff_parallel,
                max_diff);

    return identical && max_diff == 0.0 ? 0 : 1;
}
