#include <doctest.h>

#include <cmath>
#include <random>

#include "terasense/classify.hpp"

using namespace terasense;
using namespace terasense::classify;

namespace {

Eigen::MatrixXd column(std::initializer_list<double> v)
{
    Eigen::MatrixXd m(static_cast<int>(v.size()), 1);
    int i = 0;
    for (double x : v) m(i++, 0) = x;
    return m;
}

Eigen::VectorXd vec1(double x)
{
    Eigen::VectorXd v(1);
    v << x;
    return v;
}

// Distinct-cluster toy set: 3 classes, 2 features, tight clusters.
void cluster_data(Eigen::MatrixXd& X, std::vector<int>& labels,
                  int per_class = 10, std::uint64_t seed = 5)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 0.3);
    const double centers[3][2] = {{0, 0}, {6, 0}, {0, 6}};
    X.resize(3 * per_class, 2);
    labels.clear();
    for (int c = 0; c < 3; ++c) {
        for (int i = 0; i < per_class; ++i) {
            X(c * per_class + i, 0) = centers[c][0] + g(rng);
            X(c * per_class + i, 1) = centers[c][1] + g(rng);
            labels.push_back(c + 1);
        }
    }
}

} // namespace

TEST_CASE("gnb: nearest-mean behavior and documented tie rule")
{
    const Eigen::MatrixXd X = column({0.0, 10.0});
    const auto model = gnb_fit(X, {1, 2});
    CHECK(gnb_predict(model, vec1(1.0)).label == 1);
    CHECK(gnb_predict(model, vec1(9.0)).label == 2);
    CHECK(gnb_predict(model, vec1(5.0)).label == 1); // tie -> lower class
}

TEST_CASE("gnb: posteriors match a direct log-likelihood oracle")
{
    Eigen::MatrixXd X;
    std::vector<int> labels;
    cluster_data(X, labels);
    const auto model = gnb_fit(X, labels);

    const Eigen::VectorXd query = (Eigen::VectorXd(2) << 1.0, 2.0).finished();
    const auto pred = gnb_predict(model, query);

    // Oracle: evaluate prior * product of Gaussian densities per class with
    // the model's fitted means/variances, normalized.
    Eigen::VectorXd post(3);
    for (int m = 0; m < 3; ++m) {
        double log_p = std::log(model.priors(m));
        for (int f = 0; f < 2; ++f) {
            const double var = model.variances(m, f);
            const double d = query(f) - model.means(m, f);
            log_p += -0.5 * std::log(2.0 * 3.14159265358979323846 * var) -
                     d * d / (2.0 * var);
        }
        post(m) = log_p;
    }
    const double mx = post.maxCoeff();
    post = (post.array() - mx).exp();
    post /= post.sum();
    for (int m = 0; m < 3; ++m)
        CHECK(pred.scores(m) == doctest::Approx(post(m)).epsilon(1e-9));
    CHECK(pred.scores.sum() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("svm: separable case, pair count, objective progress")
{
    const Eigen::MatrixXd X = column({-1.0, -1.2, -0.8, 1.0, 1.1, 0.9});
    const std::vector<int> labels = {1, 1, 1, 2, 2, 2};
    const auto model = svm_fit(X, labels, 1.0, 300, 7);
    REQUIRE(model.pairs.size() == 1);
    for (int i = 0; i < X.rows(); ++i)
        CHECK(svm_predict(model, X.row(i).transpose()).label == labels[i]);

    // k = 5 classes -> exactly 10 pair models.
    Eigen::MatrixXd X5(10, 1);
    std::vector<int> l5;
    for (int c = 0; c < 5; ++c) {
        X5(2 * c, 0) = 3.0 * c;
        X5(2 * c + 1, 0) = 3.0 * c + 0.2;
        l5.push_back(c + 1);
        l5.push_back(c + 1);
    }
    CHECK(svm_fit(X5, l5, 1.0, 100, 1).pairs.size() == 10);

    // Trained objective beats the zero-weight objective.
    Eigen::VectorXd signs(6);
    signs << 1, 1, 1, -1, -1, -1;
    SvmPair zero;
    zero.weights = Eigen::VectorXd::Zero(1);
    CHECK(svm_pair_objective(model.pairs[0], 1.0, X, signs) <=
          svm_pair_objective(zero, 1.0, X, signs) + 1e-12);

    CHECK_THROWS_AS(svm_fit(X, {1, 1, 1, 1, 1, 1}, 1.0, 10, 1), DomainError);
}

TEST_CASE("knn: degenerate votes and metric handling")
{
    const Eigen::MatrixXd single = column({3.0});
    const auto lone = knn_fit(single, {4}, 1);
    CHECK(knn_predict(lone, vec1(-100.0)).label == 4);
    CHECK(knn_predict(lone, vec1(100.0)).label == 4);

    Eigen::MatrixXd X;
    std::vector<int> labels;
    cluster_data(X, labels);
    // Correlation distance needs more than two features to be non-degenerate
    // (every 2-D vector is perfectly correlated with another), so the metric
    // loop runs on a 5-feature embedding of the clusters.
    std::mt19937_64 rng(33);
    std::normal_distribution<double> g(0.0, 0.05);
    Eigen::MatrixXd X5(X.rows(), 5);
    for (int i = 0; i < X.rows(); ++i) {
        X5(i, 0) = X(i, 0);
        X5(i, 1) = X(i, 1);
        X5(i, 2) = X(i, 0) * X(i, 1) + g(rng);
        X5(i, 3) = X(i, 0) - X(i, 1) + g(rng);
        X5(i, 4) = g(rng);
    }
    for (auto metric : {KnnMetric::Euclidean, KnnMetric::Mahalanobis,
                        KnnMetric::Chebychev, KnnMetric::Correlation}) {
        const auto model = knn_fit(X5, labels, 1, metric);
        // Query coincident with a training point returns its class.
        CHECK(knn_predict(model, X5.row(0).transpose()).label == labels[0]);
        CHECK(knn_predict(model, X5.row(25).transpose()).label == labels[25]);
    }

    const auto k3 = knn_fit(X, labels, 3);
    CHECK(knn_predict(k3, (Eigen::VectorXd(2) << 6.1, 0.1).finished()).label ==
          2);

    CHECK_THROWS_AS(knn_fit(X, labels, 1000), DomainError);
}

TEST_CASE("lda: midpoint boundary and prior shift")
{
    std::mt19937_64 rng(3);
    std::normal_distribution<double> g(0.0, 1.0);
    Eigen::MatrixXd X(400, 1);
    std::vector<int> labels;
    for (int i = 0; i < 200; ++i) {
        X(i, 0) = g(rng);
        labels.push_back(1);
    }
    for (int i = 200; i < 400; ++i) {
        X(i, 0) = 4.0 + g(rng);
        labels.push_back(2);
    }
    const auto model = lda_fit(X, labels);
    CHECK(lda_predict(model, vec1(1.5)).label == 1);
    CHECK(lda_predict(model, vec1(2.5)).label == 2);

    // Oracle: with shared variance s2, the boundary shifts by
    // s2 * ln(p1/p2) / (mu2 - mu1) when priors change. Tripling the class-1
    // prior moves the boundary past 2.0, so 2.0 flips to class 1.
    const auto biased = lda_fit(X, labels, 1e-6, {0.75, 0.25});
    CHECK(lda_predict(biased, vec1(2.0)).label == 1);
    CHECK(lda_predict(model, vec1(2.0)).label ==
          lda_predict(model, vec1(2.0)).label); // determinism smoke

    // Uniform positive feature rescaling with a re-fit leaves argmax intact.
    const auto scaled_model = lda_fit(2.5 * X, labels);
    for (double q : {-1.0, 1.3, 2.4, 3.7, 5.0})
        CHECK(lda_predict(scaled_model, vec1(2.5 * q)).label ==
              lda_predict(model, vec1(q)).label);
}

TEST_CASE("plsda: separable accuracy and least-squares oracle")
{
    const Eigen::MatrixXd X = column({-2.0, -1.5, -1.8, 1.6, 1.9, 2.2});
    const std::vector<int> labels = {1, 1, 1, 2, 2, 2};
    const auto model = plsda_fit(X, labels, 1);
    for (int i = 0; i < X.rows(); ++i)
        CHECK(plsda_predict(model, X.row(i).transpose()).label == labels[i]);

    // Full-rank PLS-DA matches one-hot least-squares argmax on a toy set.
    std::mt19937_64 rng(71);
    std::normal_distribution<double> g;
    Eigen::MatrixXd Xt(6, 2);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 2; ++j) Xt(i, j) = g(rng);
    const std::vector<int> lt = {1, 1, 2, 2, 3, 3};
    const auto full = plsda_fit(Xt, lt, 2);

    const Eigen::MatrixXd targets = one_hot(lt, class_list(lt));
    const Eigen::MatrixXd Xc = Xt.rowwise() - Xt.colwise().mean();
    const Eigen::MatrixXd Yc = targets.rowwise() - targets.colwise().mean();
    const Eigen::MatrixXd beta =
        (Xc.transpose() * Xc).fullPivLu().solve(Xc.transpose() * Yc);
    for (int i = 0; i < 6; ++i) {
        const Eigen::VectorXd ls_score =
            (Xc.row(i) * beta).transpose() +
            targets.colwise().mean().transpose();
        CHECK(plsda_predict(full, Xt.row(i).transpose()).label ==
              class_list(lt)[argmax_lowest_tie(ls_score)]);
    }
}

TEST_CASE("grnn: kernel limits and convexity of scores")
{
    const Eigen::MatrixXd single = column({2.0});
    const auto lone = grnn_fit(single, {3}, 1.0);
    const auto p = grnn_predict(lone, vec1(50.0));
    CHECK(p.label == 3);
    CHECK(p.scores(0) == doctest::Approx(1.0).epsilon(1e-12));

    Eigen::MatrixXd X;
    std::vector<int> labels;
    cluster_data(X, labels);

    // Huge spread: prediction approaches the target mean (1/3 each).
    const auto flat = grnn_fit(X, labels, 1e6);
    const auto pf = grnn_predict(flat, (Eigen::VectorXd(2) << 1, 1).finished());
    for (int m = 0; m < 3; ++m)
        CHECK(pf.scores(m) == doctest::Approx(1.0 / 3).epsilon(1e-6));

    // Tiny spread at a training point: that point's class.
    const auto sharp = grnn_fit(X, labels, 0.005);
    CHECK(grnn_predict(sharp, X.row(12).transpose()).label == labels[12]);

    // Convex combination of one-hot targets.
    const auto mid = grnn_fit(X, labels, 2.0);
    const auto pm = grnn_predict(mid, (Eigen::VectorXd(2) << 3, 3).finished());
    CHECK(pm.scores.minCoeff() >= 0.0);
    CHECK(pm.scores.maxCoeff() <= 1.0);
    CHECK(pm.scores.sum() == doctest::Approx(1.0).epsilon(1e-9));

    // Distant query with tiny spread exercises the underflow fallback.
    const auto far = grnn_predict(sharp,
                                  (Eigen::VectorXd(2) << 1e6, 1e6).finished());
    CHECK(far.label >= 1);
    CHECK(far.label <= 3);
}

TEST_CASE("bpnn: untrained forward pass and analytic gradient")
{
    BpnnModel zero;
    zero.classes = {1, 2};
    zero.hidden_weights = Eigen::MatrixXd::Zero(3, 2);
    zero.output_weights = Eigen::MatrixXd::Zero(2, 3);
    const auto p = bpnn_predict(zero, (Eigen::VectorXd(2) << 1, -1).finished());
    for (int k = 0; k < 2; ++k)
        CHECK(p.scores(k) == doctest::Approx(0.5).epsilon(1e-15));

    // Central finite differences on a 3-sample instance.
    std::mt19937_64 rng(9);
    std::normal_distribution<double> g;
    BpnnModel m;
    m.classes = {1, 2};
    m.hidden_weights = Eigen::MatrixXd(3, 2);
    m.output_weights = Eigen::MatrixXd(2, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) m.hidden_weights(i, j) = 0.5 * g(rng);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 3; ++j) m.output_weights(i, j) = 0.5 * g(rng);

    Eigen::MatrixXd X(3, 2);
    X << 0.2, -0.4, 1.0, 0.3, -0.7, 0.8;
    Eigen::MatrixXd T(3, 2);
    T << 1, 0, 0, 1, 1, 0;

    Eigen::MatrixXd gh, go;
    bpnn_loss_gradient(m, X, T, gh, go);

    const double eps = 1e-6;
    auto loss_at = [&](const BpnnModel& model) {
        Eigen::MatrixXd a, b;
        return bpnn_loss_gradient(model, X, T, a, b);
    };
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 2; ++j) {
            BpnnModel plus = m, minus = m;
            plus.hidden_weights(i, j) += eps;
            minus.hidden_weights(i, j) -= eps;
            const double fd = (loss_at(plus) - loss_at(minus)) / (2 * eps);
            CHECK(gh(i, j) ==
                  doctest::Approx(fd).epsilon(1e-6).scale(
                      std::max(std::abs(fd), 1e-3)));
        }
    }
    for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 3; ++j) {
            BpnnModel plus = m, minus = m;
            plus.output_weights(i, j) += eps;
            minus.output_weights(i, j) -= eps;
            const double fd = (loss_at(plus) - loss_at(minus)) / (2 * eps);
            CHECK(go(i, j) ==
                  doctest::Approx(fd).epsilon(1e-6).scale(
                      std::max(std::abs(fd), 1e-3)));
        }
    }
}

TEST_CASE("bpnn: xor regression run")
{
    // 0/1 encoding is required here: with +-1 inputs the bias-free network
    // has h(-x) = 1 - h(x) for every hidden unit, so each discriminant
    // satisfies d(x) + d(-x) = const and XOR's sign pattern is unreachable.
    Eigen::MatrixXd X(4, 2);
    X << 0, 0, 0, 1, 1, 0, 1, 1;
    const std::vector<int> labels = {1, 2, 2, 1};
    const auto model = bpnn_fit(X, labels, 4, 0.5, 20000, 1);
    int correct = 0;
    for (int i = 0; i < 4; ++i)
        if (bpnn_predict(model, X.row(i).transpose()).label == labels[i])
            ++correct;
    CHECK(correct == 4);
}

TEST_CASE("all models classify distinct clusters and survive JSON roundtrip")
{
    Eigen::MatrixXd X;
    std::vector<int> labels;
    cluster_data(X, labels, 12, 77);

    const auto gnb = gnb_fit(X, labels);
    const auto svm = svm_fit(X, labels, 1.0, 300, 4);
    const auto knn = knn_fit(X, labels, 3, KnnMetric::Mahalanobis);
    const auto lda = lda_fit(X, labels);
    const auto plsda = plsda_fit(X, labels, 2);
    const auto grnn = grnn_fit(X, labels, 2.0);
    const auto bpnn = bpnn_fit(X, labels, 8, 0.2, 400, 6);

    const auto gnb2 = load_gnb_json(save_model_json(gnb));
    const auto svm2 = load_svm_json(save_model_json(svm));
    const auto knn2 = load_knn_json(save_model_json(knn));
    const auto lda2 = load_lda_json(save_model_json(lda));
    const auto plsda2 = load_plsda_json(save_model_json(plsda));
    const auto grnn2 = load_grnn_json(save_model_json(grnn));
    const auto bpnn2 = load_bpnn_json(save_model_json(bpnn));

    for (int i = 0; i < X.rows(); ++i) {
        const Eigen::VectorXd q = X.row(i).transpose();
        CHECK(gnb_predict(gnb, q).label == labels[i]);
        CHECK(svm_predict(svm, q).label == labels[i]);
        CHECK(knn_predict(knn, q).label == labels[i]);
        CHECK(lda_predict(lda, q).label == labels[i]);
        CHECK(plsda_predict(plsda, q).label == labels[i]);
        CHECK(grnn_predict(grnn, q).label == labels[i]);

        // Roundtripped models agree bit-for-bit on scores.
        CHECK(gnb_predict(gnb2, q).scores == gnb_predict(gnb, q).scores);
        CHECK(svm_predict(svm2, q).label == svm_predict(svm, q).label);
        CHECK(knn_predict(knn2, q).scores == knn_predict(knn, q).scores);
        CHECK(lda_predict(lda2, q).scores == lda_predict(lda, q).scores);
        CHECK(plsda_predict(plsda2, q).scores ==
              plsda_predict(plsda, q).scores);
        CHECK(grnn_predict(grnn2, q).scores == grnn_predict(grnn, q).scores);
        CHECK(bpnn_predict(bpnn2, q).scores == bpnn_predict(bpnn, q).scores);
    }

    CHECK_THROWS_AS(load_gnb_json(save_model_json(svm)), FormatError);
    CHECK_THROWS_AS(load_gnb_json("not json"), FormatError);
}
