#ifndef TERASENSE_CLASSIFY_HPP
#define TERASENSE_CLASSIFY_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "terasense/errors.hpp"
#include "terasense/features.hpp"

namespace terasense::classify {

// Prediction with a per-class score vector (posterior, vote share or
// regression output depending on the classifier). `scores` is indexed by
// the model's sorted class list; ties always resolve to the lower class.
struct Prediction {
    int label = 0;
    Eigen::VectorXd scores;
};

std::vector<int> class_list(const std::vector<int>& labels);
Eigen::MatrixXd one_hot(const std::vector<int>& labels,
                        const std::vector<int>& classes);
int argmax_lowest_tie(const Eigen::VectorXd& scores);

// ------------------------------------------------------------- Gaussian NB

struct GnbModel {
    std::vector<int> classes;
    Eigen::VectorXd priors;    // k
    Eigen::MatrixXd means;     // k x P
    Eigen::MatrixXd variances; // k x P, floored
};

GnbModel gnb_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels);
Prediction gnb_predict(const GnbModel& model, const Eigen::VectorXd& y);

// --------------------------------------------------------- one-vs-one SVM

struct SvmPair {
    int class_a = 0; // class index mapped to +1
    int class_b = 0; // class index mapped to -1
    Eigen::VectorXd weights;
    double bias = 0.0;
};

struct SvmModel {
    std::vector<int> classes;
    std::vector<SvmPair> pairs; // k(k-1)/2 entries
    double penalty = 1.0;
};

SvmModel svm_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double penalty, int epochs, std::uint64_t seed);
Prediction svm_predict(const SvmModel& model, const Eigen::VectorXd& y);

// Soft-margin primal objective 0.5 a^T a + c sum(hinge) of one pair model;
// used by the training-progress check.
double svm_pair_objective(const SvmPair& pair, double penalty,
                          const Eigen::MatrixXd& X,
                          const Eigen::VectorXd& signs);

// -------------------------------------------------------------- weighted KNN

enum class KnnMetric { Euclidean, Mahalanobis, Chebychev, Correlation };

KnnMetric knn_metric_from_string(const std::string& name);
std::string to_string(KnnMetric metric);

struct KnnModel {
    std::vector<int> classes;
    Eigen::MatrixXd train_features;
    std::vector<int> train_labels;
    int neighbors = 1;
    KnnMetric metric = KnnMetric::Euclidean;
    Eigen::MatrixXd metric_inverse_cov; // Mahalanobis only
};

KnnModel knn_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 int neighbors, KnnMetric metric = KnnMetric::Euclidean);
Prediction knn_predict(const KnnModel& model, const Eigen::VectorXd& y);

// ----------------------------------------------------------------------- LDA

struct LdaModel {
    std::vector<int> classes;
    Eigen::VectorXd priors;
    Eigen::MatrixXd means;          // k x P
    Eigen::MatrixXd pooled_inverse; // P x P
};

LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double ridge = 1e-6,
                 const std::vector<double>& prior_override = {});
Prediction lda_predict(const LdaModel& model, const Eigen::VectorXd& y);

// -------------------------------------------------------------------- PLS-DA

struct PlsdaModel {
    std::vector<int> classes;
    features::PlsModel pls;
};

PlsdaModel plsda_fit(const Eigen::MatrixXd& features,
                     const std::vector<int>& labels, int latent_variables);
Prediction plsda_predict(const PlsdaModel& model, const Eigen::VectorXd& y);

// ---------------------------------------------------------------------- GRNN

struct GrnnModel {
    std::vector<int> classes;
    Eigen::MatrixXd train_features; // L x P
    Eigen::MatrixXd targets;        // L x k, one-hot
    double spread = 10.0;
};

GrnnModel grnn_fit(const Eigen::MatrixXd& features,
                   const std::vector<int>& labels, double spread);
Prediction grnn_predict(const GrnnModel& model, const Eigen::VectorXd& y);

// ---------------------------------------------------------------------- BPNN

struct BpnnModel {
    std::vector<int> classes;
    Eigen::MatrixXd hidden_weights; // hidden x P  (w_nm)
    Eigen::MatrixXd output_weights; // k x hidden  (q_kn)
    double learning_rate = 0.01;
    int epochs = 0;
    std::uint64_t seed = 0;
};

BpnnModel bpnn_fit(const Eigen::MatrixXd& features,
                   const std::vector<int>& labels, int hidden,
                   double learning_rate, int epochs, std::uint64_t seed);
Prediction bpnn_predict(const BpnnModel& model, const Eigen::VectorXd& y);

// Full-batch half-squared-error loss and its analytic gradient (exposed for
// the finite-difference check).
double bpnn_loss_gradient(const BpnnModel& model, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& targets,
                          Eigen::MatrixXd& grad_hidden,
                          Eigen::MatrixXd& grad_output);

// --------------------------------------------------------- JSON persistence

std::string save_model_json(const GnbModel& m);
std::string save_model_json(const SvmModel& m);
std::string save_model_json(const KnnModel& m);
std::string save_model_json(const LdaModel& m);
std::string save_model_json(const PlsdaModel& m);
std::string save_model_json(const GrnnModel& m);
std::string save_model_json(const BpnnModel& m);

GnbModel load_gnb_json(const std::string& text);
SvmModel load_svm_json(const std::string& text);
KnnModel load_knn_json(const std::string& text);
LdaModel load_lda_json(const std::string& text);
PlsdaModel load_plsda_json(const std::string& text);
GrnnModel load_grnn_json(const std::string& text);
BpnnModel load_bpnn_json(const std::string& text);

} // namespace terasense::classify

#endif
