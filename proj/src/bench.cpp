#include "terasense/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "terasense/io.hpp"

namespace terasense::bench {

double SnrSpec::noise_std(double signal_power) const
{
    if (no_noise) return 0.0;
    return std::sqrt(signal_power / std::pow(10.0, snr_db / 10.0));
}

Preprocessing preprocessing_from_string(const std::string& s)
{
    if (s == "none") return Preprocessing::None;
    if (s == "snv") return Preprocessing::Snv;
    if (s == "minmax") return Preprocessing::MinMax;
    if (s == "sg") return Preprocessing::SG;
    throw DomainError("unknown preprocessing: " + s);
}

Extractor extractor_from_string(const std::string& s)
{
    if (s == "none") return Extractor::None;
    if (s == "pca") return Extractor::Pca;
    if (s == "pls") return Extractor::Pls;
    if (s == "tsne") return Extractor::Tsne;
    if (s == "nmf") return Extractor::Nmf;
    throw DomainError("unknown extractor: " + s);
}

Classifier classifier_from_string(const std::string& s)
{
    if (s == "gnb") return Classifier::Gnb;
    if (s == "lsvm") return Classifier::Lsvm;
    if (s == "wknn") return Classifier::Wknn;
    if (s == "lda") return Classifier::Lda;
    if (s == "plsda") return Classifier::Plsda;
    if (s == "grnn") return Classifier::Grnn;
    if (s == "bpnn") return Classifier::Bpnn;
    throw DomainError("unknown classifier: " + s);
}

std::string to_string(Preprocessing p)
{
    switch (p) {
    case Preprocessing::None: return "none";
    case Preprocessing::Snv: return "snv";
    case Preprocessing::MinMax: return "minmax";
    case Preprocessing::SG: return "sg";
    }
    return "none";
}

std::string to_string(Extractor e)
{
    switch (e) {
    case Extractor::None: return "none";
    case Extractor::Pca: return "pca";
    case Extractor::Pls: return "pls";
    case Extractor::Tsne: return "tsne";
    case Extractor::Nmf: return "nmf";
    }
    return "none";
}

std::string to_string(Classifier c)
{
    switch (c) {
    case Classifier::Gnb: return "gnb";
    case Classifier::Lsvm: return "lsvm";
    case Classifier::Wknn: return "wknn";
    case Classifier::Lda: return "lda";
    case Classifier::Plsda: return "plsda";
    case Classifier::Grnn: return "grnn";
    case Classifier::Bpnn: return "bpnn";
    }
    return "lda";
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a,
                          std::uint64_t b, std::uint64_t c, std::uint64_t d)
{
    auto mix = [](std::uint64_t z) {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    };
    std::uint64_t h = mix(master);
    h = mix(h ^ mix(a));
    h = mix(h ^ mix(b));
    h = mix(h ^ mix(c));
    h = mix(h ^ mix(d));
    return h;
}

features::Dataset synthesize_dataset(
    const std::map<std::string, physics::Spectrum>& clean, int per_class,
    const SnrSpec& snr, std::uint64_t seed)
{
    if (clean.empty()) throw DomainError("synthesize_dataset: no classes");
    if (per_class < 1) throw DomainError("synthesize_dataset: per_class >= 1");
    const int k = static_cast<int>(clean.size());
    const int N = static_cast<int>(clean.begin()->second.values.size());
    for (const auto& [name, s] : clean)
        if (static_cast<int>(s.values.size()) != N)
            throw DomainError("synthesize_dataset: grid mismatch for " + name);

    features::Dataset data;
    data.X.resize(k * per_class, N);
    data.labels.resize(static_cast<std::size_t>(k) * per_class);
    data.frequencies = clean.begin()->second.grid.frequencies;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int label = 0;
    int row = 0;
    for (const auto& [name, s] : clean) {
        ++label; // classes are 1..k in key order
        double power = 0.0;
        for (double v : s.values) power += v * v;
        power /= N;
        const double sd = snr.noise_std(power);
        for (int i = 0; i < per_class; ++i, ++row) {
            for (int j = 0; j < N; ++j)
                data.X(row, j) =
                    s.values[j] + (sd > 0.0 ? sd * gauss(rng) : 0.0);
            data.labels[row] = label;
        }
    }
    return data;
}

FoldSplit kfold_split(const std::vector<int>& labels, int folds,
                      std::uint64_t seed)
{
    const int M = static_cast<int>(labels.size());
    if (folds < 2 || folds > M)
        throw DomainError("kfold_split: folds must be in [2, M]");

    // Stratified when every class holds at least `folds` samples.
    std::map<int, std::vector<int>> by_class;
    for (int i = 0; i < M; ++i) by_class[labels[i]].push_back(i);
    bool stratified = true;
    for (const auto& [cls, idx] : by_class)
        if (static_cast<int>(idx.size()) < folds) stratified = false;

    FoldSplit split;
    split.stratified = stratified;
    split.test.assign(folds, {});
    std::mt19937_64 rng(seed);

    if (stratified) {
        int offset = 0;
        for (auto& [cls, idx] : by_class) {
            std::shuffle(idx.begin(), idx.end(), rng);
            for (std::size_t i = 0; i < idx.size(); ++i)
                split.test[(offset + static_cast<int>(i)) % folds].push_back(
                    idx[i]);
            offset += static_cast<int>(idx.size() % folds);
        }
    } else {
        std::cerr << "kfold_split: some class has fewer samples than folds; "
                     "falling back to unstratified split\n";
        std::vector<int> idx(M);
        std::iota(idx.begin(), idx.end(), 0);
        std::shuffle(idx.begin(), idx.end(), rng);
        for (int i = 0; i < M; ++i) split.test[i % folds].push_back(idx[i]);
    }

    split.train.assign(folds, {});
    std::vector<char> in_test(M);
    for (int f = 0; f < folds; ++f) {
        std::fill(in_test.begin(), in_test.end(), 0);
        for (int i : split.test[f]) in_test[i] = 1;
        for (int i = 0; i < M; ++i)
            if (!in_test[i]) split.train[f].push_back(i);
        std::sort(split.test[f].begin(), split.test[f].end());
    }
    return split;
}

namespace {

Eigen::MatrixXd apply_preprocessing(const ExperimentConfig& cfg,
                                    const Eigen::MatrixXd& X)
{
    if (cfg.preprocessing == Preprocessing::None) return X;
    Eigen::MatrixXd out(X.rows(), X.cols());
    for (int i = 0; i < X.rows(); ++i) {
        std::vector<double> row(X.cols());
        for (int j = 0; j < X.cols(); ++j) row[j] = X(i, j);
        std::vector<double> treated;
        switch (cfg.preprocessing) {
        case Preprocessing::Snv: treated = preprocess::snv(row); break;
        case Preprocessing::MinMax: treated = preprocess::minmax(row); break;
        case Preprocessing::SG:
            treated = preprocess::savitzky_golay(row, cfg.sg_window);
            break;
        case Preprocessing::None: treated = row; break;
        }
        for (int j = 0; j < X.cols(); ++j) out(i, j) = treated[j];
    }
    return out;
}

struct FittedExtractor {
    Extractor kind = Extractor::None;
    features::PcaModel pca;
    features::PlsModel pls;
    features::NmfModel nmf;
    Eigen::MatrixXd tsne_train_X, tsne_train_Y;
    double tsne_perplexity = 5.0;
};

FittedExtractor fit_extractor(const ExperimentConfig& cfg, Extractor kind,
                              const Eigen::MatrixXd& X,
                              const std::vector<int>& labels,
                              std::uint64_t seed)
{
    FittedExtractor fe;
    fe.kind = kind;
    features::Dataset d;
    d.X = X;
    d.labels = labels;
    const int components =
        std::min<int>(cfg.components,
                      std::min<int>(static_cast<int>(X.rows()) - 1,
                                    static_cast<int>(X.cols())));
    switch (kind) {
    case Extractor::None:
        break;
    case Extractor::Pca:
        fe.pca = features::pca_fit(d, components);
        break;
    case Extractor::Pls:
        fe.pls = features::pls_fit(
            X, classify::one_hot(labels, classify::class_list(labels)),
            components);
        break;
    case Extractor::Tsne: {
        features::TsneConfig tsne = cfg.tsne;
        tsne.seed = seed;
        const features::FeatureSet emb = features::tsne_embed(d, tsne);
        fe.tsne_train_X = X;
        fe.tsne_train_Y = emb.Y;
        fe.tsne_perplexity = tsne.perplexity;
        break;
    }
    case Extractor::Nmf: {
        // NMF needs a non-negative matrix; spectra can dip below zero
        // after noise injection, so shift per fit (recorded in the model
        // via the stored offset-free H; the offset is part of fe).
        fe.nmf = features::nmf_fit(
            (X.array() - std::min(0.0, X.minCoeff())).matrix(), components,
            cfg.nmf_iterations, seed);
        break;
    }
    }
    return fe;
}

Eigen::MatrixXd transform_features(const FittedExtractor& fe,
                                   const Eigen::MatrixXd& X)
{
    switch (fe.kind) {
    case Extractor::None:
        return X;
    case Extractor::Pca:
        return features::pca_transform(fe.pca, X).Y;
    case Extractor::Pls:
        return features::pls_transform(fe.pls, X).Y;
    case Extractor::Tsne:
        return features::tsne_out_of_sample(fe.tsne_train_X, fe.tsne_train_Y,
                                            fe.tsne_perplexity, X);
    case Extractor::Nmf:
        return features::nmf_transform(
                   fe.nmf, (X.array() - std::min(0.0, X.minCoeff()))
                               .cwiseMax(0.0)
                               .matrix())
            .Y;
    }
    return X;
}

struct FittedClassifier {
    Classifier kind = Classifier::Lda;
    classify::GnbModel gnb;
    classify::SvmModel svm;
    classify::KnnModel knn;
    classify::LdaModel lda;
    classify::PlsdaModel plsda;
    classify::GrnnModel grnn;
    classify::BpnnModel bpnn;

    const std::vector<int>& classes() const
    {
        switch (kind) {
        case Classifier::Gnb: return gnb.classes;
        case Classifier::Lsvm: return svm.classes;
        case Classifier::Wknn: return knn.classes;
        case Classifier::Lda: return lda.classes;
        case Classifier::Plsda: return plsda.classes;
        case Classifier::Grnn: return grnn.classes;
        case Classifier::Bpnn: return bpnn.classes;
        }
        return lda.classes;
    }
};

FittedClassifier fit_classifier(const ClassifierParams& params, Classifier kind,
                                const Eigen::MatrixXd& Y,
                                const std::vector<int>& labels,
                                std::uint64_t seed)
{
    FittedClassifier fc;
    fc.kind = kind;
    switch (kind) {
    case Classifier::Gnb:
        fc.gnb = classify::gnb_fit(Y, labels);
        break;
    case Classifier::Lsvm:
        fc.svm = classify::svm_fit(Y, labels, params.svm_penalty,
                                   params.svm_epochs, seed);
        break;
    case Classifier::Wknn:
        fc.knn = classify::knn_fit(
            Y, labels,
            std::min<int>(params.knn_neighbors, static_cast<int>(Y.rows())),
            params.knn_metric);
        break;
    case Classifier::Lda:
        fc.lda = classify::lda_fit(Y, labels, params.lda_ridge);
        break;
    case Classifier::Plsda:
        fc.plsda = classify::plsda_fit(
            Y, labels,
            std::min<int>(params.plsda_components,
                          std::min<int>(static_cast<int>(Y.rows()) - 1,
                                        static_cast<int>(Y.cols()))));
        break;
    case Classifier::Grnn:
        fc.grnn = classify::grnn_fit(Y, labels, params.grnn_spread);
        break;
    case Classifier::Bpnn:
        fc.bpnn = classify::bpnn_fit(Y, labels, params.bpnn_hidden,
                                     params.bpnn_learning_rate,
                                     params.bpnn_epochs, seed);
        break;
    }
    return fc;
}

classify::Prediction predict(const FittedClassifier& fc,
                             const Eigen::VectorXd& y)
{
    switch (fc.kind) {
    case Classifier::Gnb: return classify::gnb_predict(fc.gnb, y);
    case Classifier::Lsvm: return classify::svm_predict(fc.svm, y);
    case Classifier::Wknn: return classify::knn_predict(fc.knn, y);
    case Classifier::Lda: return classify::lda_predict(fc.lda, y);
    case Classifier::Plsda: return classify::plsda_predict(fc.plsda, y);
    case Classifier::Grnn: return classify::grnn_predict(fc.grnn, y);
    case Classifier::Bpnn: return classify::bpnn_predict(fc.bpnn, y);
    }
    throw DomainError("predict: unknown classifier");
}

} // namespace

std::pair<double, double> run_cell(const ExperimentConfig& cfg,
                                   const SnrSpec& snr, Extractor extractor,
                                   Classifier classifier, std::uint64_t seed)
{
    int per_class = cfg.per_class;
    if (extractor == Extractor::Tsne) {
        const int k = static_cast<int>(cfg.clean.size());
        per_class =
            std::max(cfg.folds, std::min(per_class, cfg.tsne_max_samples / k));
    }

    const features::Dataset data = synthesize_dataset(
        cfg.clean, per_class, snr, derive_seed(seed, 1, 0, 0, 0));
    const Eigen::MatrixXd treated = apply_preprocessing(cfg, data.X);
    const FoldSplit split =
        kfold_split(data.labels, cfg.folds, derive_seed(seed, 2, 0, 0, 0));

    long correct = 0, total = 0;
    double sq_residual = 0.0;
    long residual_terms = 0;
    for (int f = 0; f < cfg.folds; ++f) {
        const auto& train_idx = split.train[f];
        const auto& test_idx = split.test[f];
        Eigen::MatrixXd train_X(train_idx.size(), treated.cols());
        Eigen::MatrixXd test_X(test_idx.size(), treated.cols());
        std::vector<int> train_labels(train_idx.size());
        for (std::size_t i = 0; i < train_idx.size(); ++i) {
            train_X.row(static_cast<Eigen::Index>(i)) = treated.row(train_idx[i]);
            train_labels[i] = data.labels[train_idx[i]];
        }
        for (std::size_t i = 0; i < test_idx.size(); ++i)
            test_X.row(static_cast<Eigen::Index>(i)) = treated.row(test_idx[i]);

        const std::uint64_t fold_seed = derive_seed(seed, 3, f, 0, 0);
        const FittedExtractor fe =
            fit_extractor(cfg, extractor, train_X, train_labels, fold_seed);
        const Eigen::MatrixXd train_Y = transform_features(fe, train_X);
        const Eigen::MatrixXd test_Y = transform_features(fe, test_X);
        const FittedClassifier fc = fit_classifier(
            cfg.params, classifier, train_Y, train_labels, fold_seed);

        const auto& classes = fc.classes();
        for (std::size_t i = 0; i < test_idx.size(); ++i) {
            const classify::Prediction pred =
                predict(fc, test_Y.row(static_cast<Eigen::Index>(i)).transpose());
            const int truth = data.labels[test_idx[i]];
            if (pred.label == truth) ++correct;
            ++total;
            // RMSEC residual: one-hot truth minus score vector.
            for (int c = 0; c < pred.scores.size(); ++c) {
                const double target = classes[c] == truth ? 1.0 : 0.0;
                const double r = target - pred.scores(c);
                sq_residual += r * r;
                ++residual_terms;
            }
        }
    }
    const double success = total ? static_cast<double>(correct) / total : 0.0;
    const double rmsec =
        residual_terms ? std::sqrt(sq_residual / residual_terms) : 0.0;
    return {success, rmsec};
}

std::vector<SweepResult> run_sweep(const ExperimentConfig& cfg)
{
    if (cfg.snr_grid.empty()) throw DomainError("run_sweep: empty SNR grid");
    if (cfg.repetitions < 1) throw DomainError("run_sweep: repetitions >= 1");

    struct Cell {
        int snr_i, ext_i, cls_i, rep;
        double success = 0.0, rmsec = 0.0, runtime = 0.0;
        bool failed = false;
        std::string error;
    };
    std::vector<Cell> cells;
    for (int s = 0; s < static_cast<int>(cfg.snr_grid.size()); ++s)
        for (int e = 0; e < static_cast<int>(cfg.extractors.size()); ++e)
            for (int c = 0; c < static_cast<int>(cfg.classifiers.size()); ++c)
                for (int r = 0; r < cfg.repetitions; ++r)
                    cells.push_back({s, e, c, r});

    const auto n_cells = static_cast<std::ptrdiff_t>(cells.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < n_cells; ++i) {
        Cell& cell = cells[i];
        const auto start = std::chrono::steady_clock::now();
        try {
            const std::uint64_t seed =
                derive_seed(cfg.seed, cell.snr_i, cell.ext_i, cell.cls_i,
                            cell.rep);
            const auto [success, rmsec] = run_cell(
                cfg, cfg.snr_grid[cell.snr_i], cfg.extractors[cell.ext_i],
                cfg.classifiers[cell.cls_i], seed);
            cell.success = success;
            cell.rmsec = rmsec;
        } catch (const std::exception& ex) {
            cell.failed = true;
            cell.error = ex.what();
        }
        cell.runtime =
            std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                          start)
                .count();
    }

    std::vector<SweepResult> results;
    for (int e = 0; e < static_cast<int>(cfg.extractors.size()); ++e) {
        for (int c = 0; c < static_cast<int>(cfg.classifiers.size()); ++c) {
            for (int s = 0; s < static_cast<int>(cfg.snr_grid.size()); ++s) {
                SweepResult res;
                res.snr = cfg.snr_grid[s];
                res.extractor = cfg.extractors[e];
                res.classifier = cfg.classifiers[c];
                double sum = 0.0, rmsec_sum = 0.0;
                int n = 0;
                for (const Cell& cell : cells) {
                    if (cell.snr_i != s || cell.ext_i != e || cell.cls_i != c)
                        continue;
                    res.runtime_s += cell.runtime;
                    if (cell.failed) {
                        res.failed = true;
                        res.error = cell.error;
                        continue;
                    }
                    res.success_per_repetition.push_back(cell.success);
                    sum += cell.success;
                    rmsec_sum += cell.rmsec;
                    ++n;
                }
                if (n > 0) {
                    res.success_rate_mean = sum / n;
                    res.rmsec = rmsec_sum / n;
                    double ss = 0.0;
                    for (double v : res.success_per_repetition)
                        ss += (v - res.success_rate_mean) *
                              (v - res.success_rate_mean);
                    res.success_rate_std =
                        n > 1 ? std::sqrt(ss / (n - 1)) : 0.0;
                }
                results.push_back(std::move(res));
            }
        }
    }
    return results;
}

std::string results_to_csv(const std::vector<SweepResult>& results)
{
    if (results.empty()) throw DomainError("results_to_csv: no results");
    std::vector<const SweepResult*> sorted;
    sorted.reserve(results.size());
    for (const auto& r : results) sorted.push_back(&r);
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const SweepResult* a, const SweepResult* b) {
                         const auto ka = std::make_tuple(
                             to_string(a->extractor), to_string(a->classifier),
                             a->snr.no_noise, a->snr.snr_db);
                         const auto kb = std::make_tuple(
                             to_string(b->extractor), to_string(b->classifier),
                             b->snr.no_noise, b->snr.snr_db);
                         return ka < kb;
                     });
    std::ostringstream out;
    out << "snr_db,extractor,classifier,success_rate_mean,success_rate_std,"
           "rmsec,runtime_s\n";
    for (const SweepResult* r : sorted) {
        out << (r->snr.no_noise ? "inf" : io::format_double(r->snr.snr_db))
            << ',' << to_string(r->extractor) << ',' << to_string(r->classifier)
            << ',' << io::format_double(r->success_rate_mean) << ','
            << io::format_double(r->success_rate_std) << ','
            << io::format_double(r->rmsec) << ','
            << io::format_double(r->runtime_s) << '\n';
    }
    return out.str();
}

void emit_results_csv(const std::vector<SweepResult>& results,
                      const std::string& path)
{
    io::write_file_atomic(path, results_to_csv(results));
}

} // namespace terasense::bench
