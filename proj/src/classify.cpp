#include "terasense/classify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <set>

namespace terasense::classify {

std::vector<int> class_list(const std::vector<int>& labels)
{
    std::set<int> s(labels.begin(), labels.end());
    return {s.begin(), s.end()};
}

Eigen::MatrixXd one_hot(const std::vector<int>& labels,
                        const std::vector<int>& classes)
{
    Eigen::MatrixXd t =
        Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(labels.size()),
                              static_cast<Eigen::Index>(classes.size()));
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const auto it =
            std::find(classes.begin(), classes.end(), labels[i]);
        if (it == classes.end())
            throw DomainError("one_hot: label not in class list");
        t(static_cast<Eigen::Index>(i), it - classes.begin()) = 1.0;
    }
    return t;
}

int argmax_lowest_tie(const Eigen::VectorXd& scores)
{
    int best = 0;
    for (int i = 1; i < scores.size(); ++i)
        if (scores(i) > scores(best)) best = i;
    return best;
}

namespace {

void check_labeled_input(const Eigen::MatrixXd& X,
                         const std::vector<int>& labels, int min_classes)
{
    if (labels.size() != static_cast<std::size_t>(X.rows()))
        throw DomainError("classifier fit: label count does not match rows");
    if (X.rows() < 1) throw DomainError("classifier fit: empty training set");
    if (static_cast<int>(class_list(labels).size()) < min_classes)
        throw DomainError("classifier fit: need at least " +
                          std::to_string(min_classes) + " classes");
}

} // namespace

// ------------------------------------------------------------- Gaussian NB

GnbModel gnb_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels)
{
    check_labeled_input(features, labels, 1);
    GnbModel model;
    model.classes = class_list(labels);
    const int k = static_cast<int>(model.classes.size());
    const int P = static_cast<int>(features.cols());
    const int M = static_cast<int>(features.rows());

    model.priors.setZero(k);
    model.means.setZero(k, P);
    model.variances.setZero(k, P);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < M; ++i) {
        const int c = static_cast<int>(
            std::find(model.classes.begin(), model.classes.end(), labels[i]) -
            model.classes.begin());
        ++counts[c];
        model.means.row(c) += features.row(i);
    }
    for (int c = 0; c < k; ++c) {
        model.priors(c) = static_cast<double>(counts[c]) / M;
        model.means.row(c) /= counts[c];
    }
    for (int i = 0; i < M; ++i) {
        const int c = static_cast<int>(
            std::find(model.classes.begin(), model.classes.end(), labels[i]) -
            model.classes.begin());
        model.variances.row(c) +=
            (features.row(i) - model.means.row(c)).array().square().matrix();
    }
    for (int c = 0; c < k; ++c) model.variances.row(c) /= counts[c];

    // Variance floor scaled to the overall feature variance, guarding
    // zero-variance (quantized or single-sample) features.
    const Eigen::RowVectorXd mean_all = features.colwise().mean();
    const double scale =
        (features.rowwise() - mean_all).squaredNorm() / std::max(1, M - 1) /
        std::max(1, P);
    const double floor = 1e-9 * std::max(scale, 1e-30);
    model.variances = model.variances.cwiseMax(floor);
    return model;
}

Prediction gnb_predict(const GnbModel& model, const Eigen::VectorXd& y)
{
    if (y.size() != model.means.cols())
        throw DomainError("gnb_predict: feature dimension mismatch");
    const int k = static_cast<int>(model.classes.size());
    Eigen::VectorXd log_post(k);
    for (int c = 0; c < k; ++c) {
        double lp = std::log(std::max(model.priors(c), 1e-300));
        for (int i = 0; i < y.size(); ++i) {
            const double var = model.variances(c, i);
            const double d = y(i) - model.means(c, i);
            lp += -0.5 * std::log(2.0 * M_PI * var) - 0.5 * d * d / var;
        }
        log_post(c) = lp;
    }
    const double mx = log_post.maxCoeff();
    Eigen::VectorXd post = (log_post.array() - mx).exp();
    post /= post.sum();
    Prediction out;
    out.scores = post;
    out.label = model.classes[static_cast<std::size_t>(argmax_lowest_tie(post))];
    return out;
}

// --------------------------------------------------------- one-vs-one SVM

double svm_pair_objective(const SvmPair& pair, double penalty,
                          const Eigen::MatrixXd& X, const Eigen::VectorXd& signs)
{
    double hinge = 0.0;
    for (int i = 0; i < X.rows(); ++i) {
        const double margin =
            signs(i) * (X.row(i).dot(pair.weights) + pair.bias);
        hinge += std::max(0.0, 1.0 - margin);
    }
    return 0.5 * pair.weights.squaredNorm() + penalty * hinge;
}

SvmModel svm_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double penalty, int epochs, std::uint64_t /*seed*/)
{
    check_labeled_input(features, labels, 2);
    if (penalty <= 0.0) throw DomainError("svm_fit: penalty must be > 0");
    SvmModel model;
    model.classes = class_list(labels);
    model.penalty = penalty;
    const int k = static_cast<int>(model.classes.size());
    const int P = static_cast<int>(features.cols());

    for (int a = 0; a < k; ++a) {
        for (int b = a + 1; b < k; ++b) {
            std::vector<int> rows;
            for (std::size_t i = 0; i < labels.size(); ++i)
                if (labels[i] == model.classes[a] ||
                    labels[i] == model.classes[b])
                    rows.push_back(static_cast<int>(i));
            const int n = static_cast<int>(rows.size());
            Eigen::MatrixXd X(n, P);
            Eigen::VectorXd s(n);
            for (int i = 0; i < n; ++i) {
                X.row(i) = features.row(rows[i]);
                s(i) = labels[rows[i]] == model.classes[a] ? 1.0 : -1.0;
            }

            // Deterministic full-batch subgradient descent on the scaled
            // primal lambda/2 |a|^2 + (1/n) sum hinge, lambda = 1/(c n),
            // with the 1/(lambda t) step schedule.
            const double lambda = 1.0 / (penalty * n);
            SvmPair pair;
            pair.class_a = a;
            pair.class_b = b;
            pair.weights = Eigen::VectorXd::Zero(P);
            Eigen::VectorXd best_w = pair.weights;
            double best_b = 0.0;
            double best_obj = svm_pair_objective(pair, penalty, X, s);
            for (int t = 1; t <= epochs; ++t) {
                Eigen::VectorXd grad = lambda * pair.weights;
                double grad_b = 0.0;
                for (int i = 0; i < n; ++i) {
                    const double margin =
                        s(i) * (X.row(i).dot(pair.weights) + pair.bias);
                    if (margin < 1.0) {
                        grad -= s(i) / n * X.row(i).transpose();
                        grad_b -= s(i) / n;
                    }
                }
                const double step = 1.0 / (lambda * t);
                pair.weights -= step * grad;
                pair.bias -= step * grad_b;
                const double obj = svm_pair_objective(pair, penalty, X, s);
                if (obj < best_obj) {
                    best_obj = obj;
                    best_w = pair.weights;
                    best_b = pair.bias;
                }
            }
            pair.weights = best_w;
            pair.bias = best_b;
            model.pairs.push_back(std::move(pair));
        }
    }
    return model;
}

Prediction svm_predict(const SvmModel& model, const Eigen::VectorXd& y)
{
    const int k = static_cast<int>(model.classes.size());
    Eigen::VectorXd votes = Eigen::VectorXd::Zero(k);
    Eigen::VectorXd margins = Eigen::VectorXd::Zero(k);
    for (const auto& pair : model.pairs) {
        const double value = y.dot(pair.weights) + pair.bias;
        if (value >= 0.0) votes(pair.class_a) += 1.0;
        else votes(pair.class_b) += 1.0;
        margins(pair.class_a) += value;
        margins(pair.class_b) -= value;
    }
    int best = 0;
    for (int c = 1; c < k; ++c) {
        if (votes(c) > votes(best) ||
            (votes(c) == votes(best) && margins(c) > margins(best)))
            best = c;
    }
    Prediction out;
    out.scores = votes / std::max(1.0, static_cast<double>(model.pairs.size()));
    out.label = model.classes[static_cast<std::size_t>(best)];
    return out;
}

// -------------------------------------------------------------- weighted KNN

KnnMetric knn_metric_from_string(const std::string& name)
{
    if (name == "euclidean") return KnnMetric::Euclidean;
    if (name == "mahalanobis") return KnnMetric::Mahalanobis;
    if (name == "chebychev") return KnnMetric::Chebychev;
    if (name == "correlation") return KnnMetric::Correlation;
    throw DomainError("unknown KNN metric: " + name);
}

std::string to_string(KnnMetric metric)
{
    switch (metric) {
    case KnnMetric::Euclidean: return "euclidean";
    case KnnMetric::Mahalanobis: return "mahalanobis";
    case KnnMetric::Chebychev: return "chebychev";
    case KnnMetric::Correlation: return "correlation";
    }
    return "euclidean";
}

KnnModel knn_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 int neighbors, KnnMetric metric)
{
    check_labeled_input(features, labels, 1);
    if (neighbors < 1 || neighbors > features.rows())
        throw DomainError("knn_fit: neighbor count out of range");
    KnnModel model;
    model.classes = class_list(labels);
    model.train_features = features;
    model.train_labels = labels;
    model.neighbors = neighbors;
    model.metric = metric;
    if (metric == KnnMetric::Mahalanobis) {
        const Eigen::RowVectorXd mean = features.colwise().mean();
        const Eigen::MatrixXd centered = features.rowwise() - mean;
        Eigen::MatrixXd cov = centered.transpose() * centered /
                              std::max<double>(1.0, features.rows() - 1);
        cov += 1e-9 * cov.trace() / features.cols() *
               Eigen::MatrixXd::Identity(features.cols(), features.cols());
        model.metric_inverse_cov = cov.ldlt().solve(
            Eigen::MatrixXd::Identity(features.cols(), features.cols()));
    }
    return model;
}

namespace {

double knn_distance(const KnnModel& model, const Eigen::VectorXd& a,
                    const Eigen::VectorXd& b)
{
    switch (model.metric) {
    case KnnMetric::Euclidean:
        return (a - b).norm();
    case KnnMetric::Mahalanobis: {
        const Eigen::VectorXd d = a - b;
        return std::sqrt(std::max(0.0, d.dot(model.metric_inverse_cov * d)));
    }
    case KnnMetric::Chebychev:
        return (a - b).cwiseAbs().maxCoeff();
    case KnnMetric::Correlation: {
        const Eigen::VectorXd ac = a.array() - a.mean();
        const Eigen::VectorXd bc = b.array() - b.mean();
        const double denom = ac.norm() * bc.norm();
        if (denom < 1e-300) return 1.0;
        return 1.0 - ac.dot(bc) / denom;
    }
    }
    return 0.0;
}

} // namespace

Prediction knn_predict(const KnnModel& model, const Eigen::VectorXd& y)
{
    const int L = static_cast<int>(model.train_features.rows());
    if (model.neighbors > L)
        throw DomainError("knn_predict: K exceeds training size");
    std::vector<std::pair<double, int>> dist(L);
    for (int i = 0; i < L; ++i)
        dist[i] = {knn_distance(model, model.train_features.row(i), y), i};
    std::partial_sort(dist.begin(), dist.begin() + model.neighbors, dist.end());

    const int k = static_cast<int>(model.classes.size());
    Eigen::VectorXd weight = Eigen::VectorXd::Zero(k);
    for (int n = 0; n < model.neighbors; ++n) {
        const int idx = dist[n].second;
        const int c = static_cast<int>(
            std::find(model.classes.begin(), model.classes.end(),
                      model.train_labels[idx]) -
            model.classes.begin());
        weight(c) += 1.0 / (dist[n].first + 1e-12);
    }
    Prediction out;
    out.scores = weight / weight.sum();
    out.label =
        model.classes[static_cast<std::size_t>(argmax_lowest_tie(weight))];
    return out;
}

// ----------------------------------------------------------------------- LDA

LdaModel lda_fit(const Eigen::MatrixXd& features, const std::vector<int>& labels,
                 double ridge, const std::vector<double>& prior_override)
{
    check_labeled_input(features, labels, 2);
    LdaModel model;
    model.classes = class_list(labels);
    const int k = static_cast<int>(model.classes.size());
    const int P = static_cast<int>(features.cols());
    const int M = static_cast<int>(features.rows());

    model.means.setZero(k, P);
    model.priors.setZero(k);
    std::vector<int> counts(k, 0);
    for (int i = 0; i < M; ++i) {
        const int c = static_cast<int>(
            std::find(model.classes.begin(), model.classes.end(), labels[i]) -
            model.classes.begin());
        model.means.row(c) += features.row(i);
        ++counts[c];
    }
    for (int c = 0; c < k; ++c) {
        if (counts[c] < 2)
            throw DomainError("lda_fit: need at least 2 samples per class");
        model.means.row(c) /= counts[c];
        model.priors(c) = static_cast<double>(counts[c]) / M;
    }
    if (!prior_override.empty()) {
        if (prior_override.size() != static_cast<std::size_t>(k))
            throw DomainError("lda_fit: prior override size mismatch");
        for (int c = 0; c < k; ++c) model.priors(c) = prior_override[c];
        model.priors /= model.priors.sum();
    }

    Eigen::MatrixXd pooled = Eigen::MatrixXd::Zero(P, P);
    for (int i = 0; i < M; ++i) {
        const int c = static_cast<int>(
            std::find(model.classes.begin(), model.classes.end(), labels[i]) -
            model.classes.begin());
        const Eigen::VectorXd d =
            features.row(i).transpose() - model.means.row(c).transpose();
        pooled += d * d.transpose();
    }
    pooled /= static_cast<double>(M - k);
    pooled += ridge * std::max(pooled.trace() / P, 1e-30) *
              Eigen::MatrixXd::Identity(P, P);

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(pooled);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive())
        throw NumericalError("lda_fit: pooled covariance not positive definite");
    model.pooled_inverse = ldlt.solve(Eigen::MatrixXd::Identity(P, P));
    return model;
}

Prediction lda_predict(const LdaModel& model, const Eigen::VectorXd& y)
{
    const int k = static_cast<int>(model.classes.size());
    Eigen::VectorXd score(k);
    for (int c = 0; c < k; ++c) {
        const Eigen::VectorXd mu = model.means.row(c).transpose();
        const Eigen::VectorXd w = model.pooled_inverse * mu;
        score(c) = y.dot(w) - 0.5 * mu.dot(w) +
                   std::log(std::max(model.priors(c), 1e-300));
    }
    Prediction out;
    const double mx = score.maxCoeff();
    out.scores = (score.array() - mx).exp();
    out.scores /= out.scores.sum();
    out.label =
        model.classes[static_cast<std::size_t>(argmax_lowest_tie(score))];
    return out;
}

// -------------------------------------------------------------------- PLS-DA

PlsdaModel plsda_fit(const Eigen::MatrixXd& features,
                     const std::vector<int>& labels, int latent_variables)
{
    check_labeled_input(features, labels, 2);
    PlsdaModel model;
    model.classes = class_list(labels);
    model.pls = features::pls_fit(features, one_hot(labels, model.classes),
                                  latent_variables);
    return model;
}

Prediction plsda_predict(const PlsdaModel& model, const Eigen::VectorXd& y)
{
    const Eigen::MatrixXd scores =
        features::pls_predict(model.pls, y.transpose());
    Prediction out;
    out.scores = scores.row(0).transpose();
    out.label =
        model.classes[static_cast<std::size_t>(argmax_lowest_tie(out.scores))];
    return out;
}

// ---------------------------------------------------------------------- GRNN

GrnnModel grnn_fit(const Eigen::MatrixXd& features,
                   const std::vector<int>& labels, double spread)
{
    check_labeled_input(features, labels, 1);
    if (spread <= 0.0) throw DomainError("grnn_fit: spread must be > 0");
    GrnnModel model;
    model.classes = class_list(labels);
    model.train_features = features;
    model.targets = one_hot(labels, model.classes);
    model.spread = spread;
    return model;
}

Prediction grnn_predict(const GrnnModel& model, const Eigen::VectorXd& y)
{
    const int L = static_cast<int>(model.train_features.rows());
    const double inv_2s2 = 1.0 / (2.0 * model.spread * model.spread);
    Eigen::VectorXd weighted =
        Eigen::VectorXd::Zero(model.targets.cols());
    double denom = 0.0;
    int nearest = 0;
    double nearest_d2 = std::numeric_limits<double>::infinity();
    for (int i = 0; i < L; ++i) {
        const double d2 =
            (model.train_features.row(i).transpose() - y).squaredNorm();
        if (d2 < nearest_d2) {
            nearest_d2 = d2;
            nearest = i;
        }
        const double rbf = std::exp(-d2 * inv_2s2);
        weighted += rbf * model.targets.row(i).transpose();
        denom += rbf;
    }
    Prediction out;
    if (denom <= 0.0) {
        // All kernels underflowed; fall back to the nearest sample.
        out.scores = model.targets.row(nearest).transpose();
    } else {
        out.scores = weighted / denom;
    }
    out.label =
        model.classes[static_cast<std::size_t>(argmax_lowest_tie(out.scores))];
    return out;
}

// ---------------------------------------------------------------------- BPNN

namespace {

inline double sigmoid(double v) { return 1.0 / (1.0 + std::exp(-v)); }

} // namespace

double bpnn_loss_gradient(const BpnnModel& model, const Eigen::MatrixXd& X,
                          const Eigen::MatrixXd& targets,
                          Eigen::MatrixXd& grad_hidden,
                          Eigen::MatrixXd& grad_output)
{
    const int M = static_cast<int>(X.rows());
    grad_hidden = Eigen::MatrixXd::Zero(model.hidden_weights.rows(),
                                        model.hidden_weights.cols());
    grad_output = Eigen::MatrixXd::Zero(model.output_weights.rows(),
                                        model.output_weights.cols());
    double loss = 0.0;
    for (int i = 0; i < M; ++i) {
        const Eigen::VectorXd y = X.row(i).transpose();
        const Eigen::VectorXd z =
            (model.hidden_weights * y).unaryExpr([](double v) {
                return sigmoid(v);
            });
        const Eigen::VectorXd o =
            (model.output_weights * z).unaryExpr([](double v) {
                return sigmoid(v);
            });
        const Eigen::VectorXd err = o - targets.row(i).transpose();
        loss += 0.5 * err.squaredNorm();
        const Eigen::VectorXd delta_out =
            err.array() * o.array() * (1.0 - o.array());
        const Eigen::VectorXd delta_hidden =
            (model.output_weights.transpose() * delta_out).array() * z.array() *
            (1.0 - z.array());
        grad_output += delta_out * z.transpose();
        grad_hidden += delta_hidden * y.transpose();
    }
    return loss;
}

BpnnModel bpnn_fit(const Eigen::MatrixXd& features,
                   const std::vector<int>& labels, int hidden,
                   double learning_rate, int epochs, std::uint64_t seed)
{
    check_labeled_input(features, labels, 2);
    if (hidden < 1) throw DomainError("bpnn_fit: hidden size >= 1");
    if (learning_rate <= 0.0) throw DomainError("bpnn_fit: learning rate > 0");

    BpnnModel model;
    model.classes = class_list(labels);
    model.learning_rate = learning_rate;
    model.epochs = epochs;
    model.seed = seed;
    const int P = static_cast<int>(features.cols());
    const int k = static_cast<int>(model.classes.size());
    const Eigen::MatrixXd targets = one_hot(labels, model.classes);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(-0.5, 0.5);
    model.hidden_weights.resize(hidden, P);
    model.output_weights.resize(k, hidden);
    for (int n = 0; n < hidden; ++n)
        for (int m = 0; m < P; ++m) model.hidden_weights(n, m) = uni(rng);
    for (int c = 0; c < k; ++c)
        for (int n = 0; n < hidden; ++n) model.output_weights(c, n) = uni(rng);

    const int M = static_cast<int>(features.rows());
    std::vector<int> order(M);
    std::iota(order.begin(), order.end(), 0);
    for (int epoch = 0; epoch < epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        for (int idx : order) {
            const Eigen::VectorXd y = features.row(idx).transpose();
            const Eigen::VectorXd z =
                (model.hidden_weights * y).unaryExpr([](double v) {
                    return sigmoid(v);
                });
            const Eigen::VectorXd o =
                (model.output_weights * z).unaryExpr([](double v) {
                    return sigmoid(v);
                });
            const Eigen::VectorXd err = o - targets.row(idx).transpose();
            const Eigen::VectorXd delta_out =
                err.array() * o.array() * (1.0 - o.array());
            const Eigen::VectorXd delta_hidden =
                (model.output_weights.transpose() * delta_out).array() *
                z.array() * (1.0 - z.array());
            model.output_weights -= learning_rate * delta_out * z.transpose();
            model.hidden_weights -= learning_rate * delta_hidden * y.transpose();
        }
        if (!model.hidden_weights.allFinite() ||
            !model.output_weights.allFinite())
            throw NumericalError("bpnn_fit: training diverged at epoch " +
                                 std::to_string(epoch));
    }
    return model;
}

Prediction bpnn_predict(const BpnnModel& model, const Eigen::VectorXd& y)
{
    if (y.size() != model.hidden_weights.cols())
        throw DomainError("bpnn_predict: feature dimension mismatch");
    const Eigen::VectorXd z =
        (model.hidden_weights * y).unaryExpr([](double v) {
            return sigmoid(v);
        });
    const Eigen::VectorXd o =
        (model.output_weights * z).unaryExpr([](double v) {
            return sigmoid(v);
        });
    Prediction out;
    out.scores = o;
    out.label = model.classes[static_cast<std::size_t>(argmax_lowest_tie(o))];
    return out;
}

} // namespace terasense::classify
