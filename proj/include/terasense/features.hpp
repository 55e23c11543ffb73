#ifndef TERASENSE_FEATURES_HPP
#define TERASENSE_FEATURES_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "terasense/errors.hpp"

namespace terasense::features {

// M observations x N variables, one class label per row.
struct Dataset {
    Eigen::MatrixXd X;
    std::vector<int> labels;            // empty for unsupervised use
    std::vector<double> frequencies;    // optional feature-axis metadata

    int observations() const { return static_cast<int>(X.rows()); }
    int variables() const { return static_cast<int>(X.cols()); }
    int class_count() const;
    void validate() const;
};

struct FeatureSet {
    Eigen::MatrixXd Y; // M x P
    std::string extractor;
};

struct PcaModel {
    Eigen::VectorXd mean;       // length N
    Eigen::MatrixXd loadings;   // N x P, orthonormal columns
    Eigen::VectorXd eigenvalues; // length P, descending
    double total_variance = 0.0; // trace of the sample covariance
};

PcaModel pca_fit(const Dataset& data, int components);
FeatureSet pca_transform(const PcaModel& model, const Eigen::MatrixXd& X);

struct PlsModel {
    Eigen::VectorXd x_mean, y_mean;
    Eigen::MatrixXd x_weights;   // N x P
    Eigen::MatrixXd x_loadings;  // N x P
    Eigen::MatrixXd y_loadings;  // k x P
    Eigen::MatrixXd scores;      // M x P (training scores)
    Eigen::MatrixXd coefficients() const; // N x k regression matrix
};

PlsModel pls_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets,
                 int latent_variables);
FeatureSet pls_transform(const PlsModel& model, const Eigen::MatrixXd& X);
Eigen::MatrixXd pls_predict(const PlsModel& model, const Eigen::MatrixXd& X);

struct TsneConfig {
    double perplexity = 5.0;
    int output_dim = 2;
    int iterations = 1000;
    double learning_rate = 30.0;
    double momentum = 0.5;
    double late_momentum = 0.8;
    int momentum_switch_iter = 250;
    double early_exaggeration = 4.0;
    int exaggeration_iters = 50;
    std::uint64_t seed = 0;
};

struct TsneAffinities {
    Eigen::MatrixXd conditional; // M x M, row i = Pr(.|i), zero diagonal
    Eigen::VectorXd sigma;       // per-point bandwidths
};

// Per-point Gaussian bandwidths found by bisection so each conditional
// distribution's perplexity (2^entropy) matches the target within 1e-4.
TsneAffinities tsne_conditional_affinities(const Eigen::MatrixXd& X,
                                           double perplexity);

double tsne_kl_cost(const Eigen::MatrixXd& joint_p, const Eigen::MatrixXd& Y);

FeatureSet tsne_embed(const Dataset& data, const TsneConfig& cfg);

// Out-of-sample placement for new points against a fixed embedding: each
// test row gets its own bisected bandwidth over the training points and is
// placed at the affinity-weighted mean of the training embedding.
Eigen::MatrixXd tsne_out_of_sample(const Eigen::MatrixXd& train_X,
                                   const Eigen::MatrixXd& train_Y,
                                   double perplexity,
                                   const Eigen::MatrixXd& test_X);

struct NmfModel {
    Eigen::MatrixXd W; // M x P
    Eigen::MatrixXd H; // P x N
    int rank = 0;
    double objective = 0.0;                 // final ||X - WH||^2
    std::vector<double> objective_history;  // one entry per iteration
};

NmfModel nmf_fit(const Eigen::MatrixXd& X, int rank, int iterations,
                 std::uint64_t seed);
FeatureSet nmf_transform(const NmfModel& model, const Eigen::MatrixXd& X,
                         int iterations = 200);

} // namespace terasense::features

#endif
