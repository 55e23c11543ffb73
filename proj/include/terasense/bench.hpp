#ifndef TERASENSE_BENCH_HPP
#define TERASENSE_BENCH_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "terasense/classify.hpp"
#include "terasense/features.hpp"
#include "terasense/physics.hpp"
#include "terasense/preprocess.hpp"

namespace terasense::bench {

// Noise level relative to the mean-square power of the clean vector.
// no_noise is the +inf-SNR sentinel.
struct SnrSpec {
    double snr_db = 0.0;
    bool no_noise = false;

    static SnrSpec noiseless() { return {0.0, true}; }
    static SnrSpec db(double v) { return {v, false}; }
    double noise_std(double signal_power) const;
};

enum class Preprocessing { None, Snv, MinMax, SG };
enum class Extractor { None, Pca, Pls, Tsne, Nmf };
enum class Classifier { Gnb, Lsvm, Wknn, Lda, Plsda, Grnn, Bpnn };

Preprocessing preprocessing_from_string(const std::string& s);
Extractor extractor_from_string(const std::string& s);
Classifier classifier_from_string(const std::string& s);
std::string to_string(Preprocessing p);
std::string to_string(Extractor e);
std::string to_string(Classifier c);

struct ClassifierParams {
    double svm_penalty = 1.0;
    int svm_epochs = 200;
    int knn_neighbors = 5;
    classify::KnnMetric knn_metric = classify::KnnMetric::Euclidean;
    double lda_ridge = 1e-6;
    int plsda_components = 10;
    double grnn_spread = 10.0;
    int bpnn_hidden = 10;
    double bpnn_learning_rate = 0.01;
    int bpnn_epochs = 100;
};

struct ExperimentConfig {
    std::map<std::string, physics::Spectrum> clean; // class name -> spectrum
    int per_class = 50;
    Preprocessing preprocessing = Preprocessing::None;
    preprocess::SGWindow sg_window{5, 3};
    std::vector<Extractor> extractors{Extractor::Pca};
    int components = 10;
    features::TsneConfig tsne;
    int tsne_max_samples = 200; // t-SNE cells run on a reduced sample
    int nmf_iterations = 200;
    std::vector<Classifier> classifiers{Classifier::Lda};
    ClassifierParams params;
    std::vector<SnrSpec> snr_grid;
    int folds = 10;
    int repetitions = 10;
    std::uint64_t seed = 0;
};

struct SweepResult {
    SnrSpec snr;
    Extractor extractor = Extractor::None;
    Classifier classifier = Classifier::Lda;
    double success_rate_mean = 0.0;
    double success_rate_std = 0.0;
    double rmsec = 0.0;
    double runtime_s = 0.0;
    std::vector<double> success_per_repetition;
    bool failed = false;
    std::string error;
};

// Deterministic per-cell seed derived from the master seed and the cell
// coordinates, so parallel schedules cannot change results.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c, std::uint64_t d);

// Labeled observations: clean class spectrum + seeded Gaussian noise.
// Labels are 1..k in the map's (sorted) key order.
features::Dataset synthesize_dataset(
    const std::map<std::string, physics::Spectrum>& clean, int per_class,
    const SnrSpec& snr, std::uint64_t seed);

struct FoldSplit {
    std::vector<std::vector<int>> train;
    std::vector<std::vector<int>> test;
    bool stratified = true;
};

FoldSplit kfold_split(const std::vector<int>& labels, int folds,
                      std::uint64_t seed);

// One (snr, extractor, classifier, repetition) cell: synthesize,
// preprocess, K-fold cross-validate. Returns (success_rate, rmsec).
std::pair<double, double> run_cell(const ExperimentConfig& cfg,
                                   const SnrSpec& snr, Extractor extractor,
                                   Classifier classifier, std::uint64_t seed);

std::vector<SweepResult> run_sweep(const ExperimentConfig& cfg);

std::string results_to_csv(const std::vector<SweepResult>& results);
void emit_results_csv(const std::vector<SweepResult>& results,
                      const std::string& path);

} // namespace terasense::bench

#endif
