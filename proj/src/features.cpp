#include "terasense/features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <set>

namespace terasense::features {

int Dataset::class_count() const
{
    return static_cast<int>(std::set<int>(labels.begin(), labels.end()).size());
}

void Dataset::validate() const
{
    if (X.rows() < 2) throw DomainError("dataset: need at least 2 observations");
    if (!labels.empty() &&
        labels.size() != static_cast<std::size_t>(X.rows()))
        throw DomainError("dataset: label count does not match rows");
    if (!X.allFinite()) throw DomainError("dataset: non-finite values");
}

// ---------------------------------------------------------------- PCA

PcaModel pca_fit(const Dataset& data, int components)
{
    data.validate();
    const int M = data.observations();
    const int N = data.variables();
    if (components < 1 || components > std::min(M - 1, N))
        throw DomainError("pca_fit: components out of range");

    PcaModel model;
    model.mean = data.X.colwise().mean();
    Eigen::MatrixXd centered = data.X.rowwise() - model.mean.transpose();
    Eigen::MatrixXd cov =
        centered.transpose() * centered / static_cast<double>(M - 1);
    model.total_variance = cov.trace();

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(cov);
    if (solver.info() != Eigen::Success)
        throw NumericalError("pca_fit: eigendecomposition failed");

    // Eigen returns ascending order; take the top `components` descending.
    model.loadings.resize(N, components);
    model.eigenvalues.resize(components);
    for (int p = 0; p < components; ++p) {
        const int src = N - 1 - p;
        Eigen::VectorXd v = solver.eigenvectors().col(src);
        int imax = 0;
        v.cwiseAbs().maxCoeff(&imax);
        if (v(imax) < 0.0) v = -v;
        model.loadings.col(p) = v;
        model.eigenvalues(p) = std::max(0.0, solver.eigenvalues()(src));
    }
    return model;
}

FeatureSet pca_transform(const PcaModel& model, const Eigen::MatrixXd& X)
{
    if (X.cols() != model.mean.size())
        throw DomainError("pca_transform: dimension mismatch");
    FeatureSet fs;
    fs.extractor = "pca";
    fs.Y = (X.rowwise() - model.mean.transpose()) * model.loadings;
    return fs;
}

// ---------------------------------------------------------------- PLS

PlsModel pls_fit(const Eigen::MatrixXd& X, const Eigen::MatrixXd& targets,
                 int latent_variables)
{
    const int M = static_cast<int>(X.rows());
    const int N = static_cast<int>(X.cols());
    const int k = static_cast<int>(targets.cols());
    if (targets.rows() != M) throw DomainError("pls_fit: target rows mismatch");
    if (latent_variables < 1 || latent_variables > std::min(M - 1, N))
        throw DomainError("pls_fit: latent variable count out of range");

    PlsModel model;
    model.x_mean = X.colwise().mean();
    model.y_mean = targets.colwise().mean();
    Eigen::MatrixXd E = X.rowwise() - model.x_mean.transpose();
    Eigen::MatrixXd F = targets.rowwise() - model.y_mean.transpose();
    if (E.squaredNorm() < 1e-24)
        throw DomainError("pls_fit: zero-variance predictors");
    if (F.squaredNorm() < 1e-24)
        throw DomainError("pls_fit: degenerate (constant) targets");

    const int P = latent_variables;
    model.x_weights.resize(N, P);
    model.x_loadings.resize(N, P);
    model.y_loadings.resize(k, P);
    model.scores.resize(M, P);

    const double x_scale = E.squaredNorm();
    const double y_scale = F.squaredNorm();
    int extracted = 0;
    for (int a = 0; a < P; ++a) {
        // Stop once either residual is numerically exhausted; further
        // components would only amplify rounding noise.
        if (E.squaredNorm() <= 1e-24 * x_scale ||
            F.squaredNorm() <= 1e-24 * y_scale)
            break;
        // NIPALS inner loop: start u from the Y-residual column with the
        // largest variance.
        int u_col = 0;
        F.colwise().squaredNorm().maxCoeff(&u_col);
        Eigen::VectorXd u = F.col(u_col);
        Eigen::VectorXd t_old = Eigen::VectorXd::Zero(M);
        Eigen::VectorXd w(N), t(M), q(k);
        for (int iter = 0; iter < 500; ++iter) {
            w = E.transpose() * u;
            const double wn = w.norm();
            if (wn < 1e-300)
                throw NumericalError("pls_fit: degenerate weight vector");
            w /= wn;
            t = E * w;
            q = F.transpose() * t / t.squaredNorm();
            if (q.squaredNorm() < 1e-300) break;
            u = F * q / q.squaredNorm();
            if ((t - t_old).norm() <= 1e-12 * t.norm()) break;
            t_old = t;
        }
        const Eigen::VectorXd p_load = E.transpose() * t / t.squaredNorm();
        E.noalias() -= t * p_load.transpose();
        F.noalias() -= t * q.transpose();
        model.x_weights.col(a) = w;
        model.x_loadings.col(a) = p_load;
        model.y_loadings.col(a) = q;
        model.scores.col(a) = t;
        ++extracted;
    }
    if (extracted < P) {
        model.x_weights.conservativeResize(Eigen::NoChange, extracted);
        model.x_loadings.conservativeResize(Eigen::NoChange, extracted);
        model.y_loadings.conservativeResize(Eigen::NoChange, extracted);
        model.scores.conservativeResize(Eigen::NoChange, extracted);
    }
    return model;
}

Eigen::MatrixXd PlsModel::coefficients() const
{
    // B = W (P^T W)^-1 Q^T
    const Eigen::MatrixXd ptw = x_loadings.transpose() * x_weights;
    return x_weights * ptw.partialPivLu().solve(y_loadings.transpose());
}

FeatureSet pls_transform(const PlsModel& model, const Eigen::MatrixXd& X)
{
    if (X.cols() != model.x_mean.size())
        throw DomainError("pls_transform: dimension mismatch");
    const int P = static_cast<int>(model.x_weights.cols());
    Eigen::MatrixXd E = X.rowwise() - model.x_mean.transpose();
    FeatureSet fs;
    fs.extractor = "pls";
    fs.Y.resize(X.rows(), P);
    for (int a = 0; a < P; ++a) {
        const Eigen::VectorXd t = E * model.x_weights.col(a);
        fs.Y.col(a) = t;
        E.noalias() -= t * model.x_loadings.col(a).transpose();
    }
    return fs;
}

Eigen::MatrixXd pls_predict(const PlsModel& model, const Eigen::MatrixXd& X)
{
    const Eigen::MatrixXd centered = X.rowwise() - model.x_mean.transpose();
    return (centered * model.coefficients()).rowwise() +
           model.y_mean.transpose();
}

// ---------------------------------------------------------------- t-SNE

namespace {

Eigen::MatrixXd squared_distances(const Eigen::MatrixXd& X)
{
    const int M = static_cast<int>(X.rows());
    Eigen::MatrixXd D(M, M);
    const Eigen::VectorXd sq = X.rowwise().squaredNorm();
#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j) {
            const double d = sq(i) + sq(j) - 2.0 * X.row(i).dot(X.row(j));
            D(i, j) = std::max(0.0, d);
        }
        D(i, i) = 0.0;
    }
    return D;
}

// Row entropy and normalized conditional distribution for bandwidth beta.
double row_perplexity(const Eigen::VectorXd& d2, int self, double beta,
                      Eigen::VectorXd& p)
{
    const int M = static_cast<int>(d2.size());
    p.setZero(M);
    double sum = 0.0;
    for (int j = 0; j < M; ++j) {
        if (j == self) continue;
        p(j) = std::exp(-beta * d2(j));
        sum += p(j);
    }
    if (sum <= 0.0) return 1.0;
    double entropy = 0.0; // in bits
    for (int j = 0; j < M; ++j) {
        if (j == self) continue;
        p(j) /= sum;
        if (p(j) > 0.0) entropy -= p(j) * std::log2(p(j));
    }
    return std::exp2(entropy);
}

} // namespace

TsneAffinities tsne_conditional_affinities(const Eigen::MatrixXd& X,
                                           double perplexity)
{
    const int M = static_cast<int>(X.rows());
    if (M < 3) throw DomainError("tsne: need at least 3 points");
    if (perplexity < 1.0 || perplexity >= M)
        throw DomainError("tsne: perplexity must be in [1, M)");

    const Eigen::MatrixXd D = squared_distances(X);
    TsneAffinities out;
    out.conditional.setZero(M, M);
    out.sigma.resize(M);

#pragma omp parallel for schedule(static)
    for (int i = 0; i < M; ++i) {
        double beta = 1.0, beta_lo = 0.0,
               beta_hi = std::numeric_limits<double>::infinity();
        Eigen::VectorXd p(M);
        for (int iter = 0; iter < 200; ++iter) {
            const double perp = row_perplexity(D.row(i), i, beta, p);
            // Converge well inside the 1e-4 contract so downstream strict
            // comparisons are not sitting on the tolerance boundary.
            if (std::abs(perp - perplexity) <= 1e-6) break;
            if (perp > perplexity) { // too flat -> narrower kernel
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0
                                           : 0.5 * (beta + beta_hi);
            } else {
                beta_hi = beta;
                beta = 0.5 * (beta + beta_lo);
            }
        }
        out.conditional.row(i) = p.transpose();
        out.sigma(i) = 1.0 / std::sqrt(2.0 * beta);
    }
    return out;
}

namespace {

Eigen::MatrixXd student_t_q(const Eigen::MatrixXd& Y, double& z_sum)
{
    const int M = static_cast<int>(Y.rows());
    Eigen::MatrixXd num = squared_distances(Y);
    z_sum = 0.0;
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < M; ++j)
            num(i, j) = (i == j) ? 0.0 : 1.0 / (1.0 + num(i, j));
        z_sum += num.row(i).sum();
    }
    return num;
}

} // namespace

double tsne_kl_cost(const Eigen::MatrixXd& joint_p, const Eigen::MatrixXd& Y)
{
    double z = 0.0;
    const Eigen::MatrixXd num = student_t_q(Y, z);
    const int M = static_cast<int>(Y.rows());
    double cost = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j) {
            const double p = joint_p(i, j);
            if (p <= 0.0 || i == j) continue;
            const double q = std::max(num(i, j) / z, 1e-300);
            cost += p * std::log(p / q);
        }
    return cost;
}

FeatureSet tsne_embed(const Dataset& data, const TsneConfig& cfg)
{
    data.validate();
    const int M = data.observations();
    if (cfg.output_dim < 1 || cfg.iterations < 1)
        throw DomainError("tsne: bad configuration");

    const TsneAffinities aff =
        tsne_conditional_affinities(data.X, cfg.perplexity);

    // Symmetrized joint affinities.
    Eigen::MatrixXd P =
        (aff.conditional + aff.conditional.transpose()) / (2.0 * M);

    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1e-4);
    Eigen::MatrixXd Y(M, cfg.output_dim);
    for (int i = 0; i < M; ++i)
        for (int d = 0; d < cfg.output_dim; ++d) Y(i, d) = gauss(rng);

    Eigen::MatrixXd velocity = Eigen::MatrixXd::Zero(M, cfg.output_dim);
    Eigen::MatrixXd grad(M, cfg.output_dim);

    for (int iter = 0; iter < cfg.iterations; ++iter) {
        const double exaggeration =
            iter < cfg.exaggeration_iters ? cfg.early_exaggeration : 1.0;
        double z = 0.0;
        const Eigen::MatrixXd num = student_t_q(Y, z);
        grad.setZero();
        for (int i = 0; i < M; ++i) {
            for (int j = 0; j < M; ++j) {
                if (i == j) continue;
                const double q = num(i, j) / z;
                const double coeff =
                    4.0 * (exaggeration * P(i, j) - q) * num(i, j);
                grad.row(i) += coeff * (Y.row(i) - Y.row(j));
            }
        }
        const double momentum =
            iter < cfg.momentum_switch_iter ? cfg.momentum : cfg.late_momentum;
        velocity = momentum * velocity - cfg.learning_rate * grad;
        Y += velocity;
        Y.rowwise() -= Y.colwise().mean(); // keep the embedding centered
    }

    FeatureSet fs;
    fs.extractor = "tsne";
    fs.Y = Y;
    return fs;
}

Eigen::MatrixXd tsne_out_of_sample(const Eigen::MatrixXd& train_X,
                                   const Eigen::MatrixXd& train_Y,
                                   double perplexity,
                                   const Eigen::MatrixXd& test_X)
{
    const int L = static_cast<int>(train_X.rows());
    if (train_Y.rows() != L)
        throw DomainError("tsne_out_of_sample: embedding size mismatch");
    const double target = std::min(perplexity, static_cast<double>(L - 1));
    Eigen::MatrixXd out(test_X.rows(), train_Y.cols());
    for (int r = 0; r < test_X.rows(); ++r) {
        Eigen::VectorXd d2(L + 1);
        for (int i = 0; i < L; ++i)
            d2(i) = (train_X.row(i) - test_X.row(r)).squaredNorm();
        d2(L) = 0.0; // placeholder self-slot excluded via `self` index
        double beta = 1.0, beta_lo = 0.0,
               beta_hi = std::numeric_limits<double>::infinity();
        Eigen::VectorXd p(L + 1);
        for (int iter = 0; iter < 200; ++iter) {
            const double perp = row_perplexity(d2, L, beta, p);
            if (std::abs(perp - target) <= 1e-4) break;
            if (perp > target) {
                beta_lo = beta;
                beta = std::isinf(beta_hi) ? beta * 2.0
                                           : 0.5 * (beta + beta_hi);
            } else {
                beta_hi = beta;
                beta = 0.5 * (beta + beta_lo);
            }
        }
        Eigen::RowVectorXd y = Eigen::RowVectorXd::Zero(train_Y.cols());
        for (int i = 0; i < L; ++i) y += p(i) * train_Y.row(i);
        out.row(r) = y;
    }
    return out;
}

// ---------------------------------------------------------------- NMF

NmfModel nmf_fit(const Eigen::MatrixXd& X, int rank, int iterations,
                 std::uint64_t seed)
{
    const int M = static_cast<int>(X.rows());
    const int N = static_cast<int>(X.cols());
    if ((X.array() < 0.0).any())
        throw DomainError("nmf_fit: input matrix has negative entries");
    if (rank < 1 || rank > std::min(M, N))
        throw DomainError("nmf_fit: rank out of range");
    if (iterations < 1) throw DomainError("nmf_fit: iterations >= 1");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> uni(0.1, 1.0);
    NmfModel model;
    model.rank = rank;
    model.W.resize(M, rank);
    model.H.resize(rank, N);
    for (int i = 0; i < M; ++i)
        for (int p = 0; p < rank; ++p) model.W(i, p) = uni(rng);
    for (int p = 0; p < rank; ++p)
        for (int j = 0; j < N; ++j) model.H(p, j) = uni(rng);

    const double eps = 1e-12;
    model.objective_history.reserve(iterations);
    for (int iter = 0; iter < iterations; ++iter) {
        // Lee-Seung multiplicative updates for the Frobenius objective.
        model.H.array() *= (model.W.transpose() * X).array() /
                           ((model.W.transpose() * model.W * model.H).array() +
                            eps);
        model.W.array() *= (X * model.H.transpose()).array() /
                           ((model.W * model.H * model.H.transpose()).array() +
                            eps);
        model.objective = (X - model.W * model.H).squaredNorm();
        model.objective_history.push_back(model.objective);
    }
    return model;
}

FeatureSet nmf_transform(const NmfModel& model, const Eigen::MatrixXd& X,
                         int iterations)
{
    if ((X.array() < 0.0).any())
        throw DomainError("nmf_transform: input matrix has negative entries");
    if (X.cols() != model.H.cols())
        throw DomainError("nmf_transform: dimension mismatch");

    const int M = static_cast<int>(X.rows());
    Eigen::MatrixXd W = Eigen::MatrixXd::Constant(M, model.rank, 0.5);
    const double eps = 1e-12;
    const Eigen::MatrixXd HHt = model.H * model.H.transpose();
    const Eigen::MatrixXd XHt = X * model.H.transpose();
    for (int iter = 0; iter < iterations; ++iter)
        W.array() *= XHt.array() / ((W * HHt).array() + eps);

    FeatureSet fs;
    fs.extractor = "nmf";
    fs.Y = W;
    return fs;
}

} // namespace terasense::features
