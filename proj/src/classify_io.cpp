#include <json.hpp>

#include "terasense/classify.hpp"

// Versioned JSON persistence for fitted classifier models. Matrices are
// stored as row-major nested arrays at full double precision (nlohmann
// serializes doubles round-trip losslessly).

namespace terasense::classify {

namespace {

using nlohmann::json;

json matrix_to_json(const Eigen::MatrixXd& m)
{
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j)
{
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return {};
    const auto cols = static_cast<Eigen::Index>(j.at(0).size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index c = 0; c < cols; ++c)
            m(i, c) = j.at(i).at(c).get<double>();
    return m;
}

json vector_to_json(const Eigen::VectorXd& v)
{
    json arr = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
    return arr;
}

Eigen::VectorXd vector_from_json(const json& j)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = j.at(i).get<double>();
    return v;
}

json header(const char* type)
{
    return json{{"format", "terasense-model"}, {"version", 1}, {"type", type}};
}

json parse_checked(const std::string& text, const char* type)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& ex) {
        throw FormatError(std::string("model JSON: ") + ex.what());
    }
    if (j.value("format", "") != "terasense-model")
        throw FormatError("model JSON: missing format marker");
    if (j.value("version", 0) != 1)
        throw FormatError("model JSON: unsupported version");
    if (j.value("type", "") != type)
        throw FormatError("model JSON: expected type '" + std::string(type) +
                          "', got '" + j.value("type", "") + "'");
    return j;
}

} // namespace

std::string save_model_json(const GnbModel& m)
{
    json j = header("gnb");
    j["classes"] = m.classes;
    j["priors"] = vector_to_json(m.priors);
    j["means"] = matrix_to_json(m.means);
    j["variances"] = matrix_to_json(m.variances);
    return j.dump();
}

GnbModel load_gnb_json(const std::string& text)
{
    const json j = parse_checked(text, "gnb");
    GnbModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.priors = vector_from_json(j.at("priors"));
    m.means = matrix_from_json(j.at("means"));
    m.variances = matrix_from_json(j.at("variances"));
    return m;
}

std::string save_model_json(const SvmModel& m)
{
    json j = header("svm");
    j["classes"] = m.classes;
    j["penalty"] = m.penalty;
    json pairs = json::array();
    for (const auto& p : m.pairs) {
        pairs.push_back(json{{"class_a", p.class_a},
                             {"class_b", p.class_b},
                             {"weights", vector_to_json(p.weights)},
                             {"bias", p.bias}});
    }
    j["pairs"] = std::move(pairs);
    return j.dump();
}

SvmModel load_svm_json(const std::string& text)
{
    const json j = parse_checked(text, "svm");
    SvmModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.penalty = j.at("penalty").get<double>();
    for (const auto& pj : j.at("pairs")) {
        SvmPair p;
        p.class_a = pj.at("class_a").get<int>();
        p.class_b = pj.at("class_b").get<int>();
        p.weights = vector_from_json(pj.at("weights"));
        p.bias = pj.at("bias").get<double>();
        m.pairs.push_back(std::move(p));
    }
    return m;
}

std::string save_model_json(const KnnModel& m)
{
    json j = header("knn");
    j["classes"] = m.classes;
    j["train_features"] = matrix_to_json(m.train_features);
    j["train_labels"] = m.train_labels;
    j["neighbors"] = m.neighbors;
    j["metric"] = to_string(m.metric);
    if (m.metric == KnnMetric::Mahalanobis)
        j["metric_inverse_cov"] = matrix_to_json(m.metric_inverse_cov);
    return j.dump();
}

KnnModel load_knn_json(const std::string& text)
{
    const json j = parse_checked(text, "knn");
    KnnModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.train_features = matrix_from_json(j.at("train_features"));
    m.train_labels = j.at("train_labels").get<std::vector<int>>();
    m.neighbors = j.at("neighbors").get<int>();
    m.metric = knn_metric_from_string(j.at("metric").get<std::string>());
    if (j.contains("metric_inverse_cov"))
        m.metric_inverse_cov = matrix_from_json(j.at("metric_inverse_cov"));
    return m;
}

std::string save_model_json(const LdaModel& m)
{
    json j = header("lda");
    j["classes"] = m.classes;
    j["priors"] = vector_to_json(m.priors);
    j["means"] = matrix_to_json(m.means);
    j["pooled_inverse"] = matrix_to_json(m.pooled_inverse);
    return j.dump();
}

LdaModel load_lda_json(const std::string& text)
{
    const json j = parse_checked(text, "lda");
    LdaModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.priors = vector_from_json(j.at("priors"));
    m.means = matrix_from_json(j.at("means"));
    m.pooled_inverse = matrix_from_json(j.at("pooled_inverse"));
    return m;
}

std::string save_model_json(const PlsdaModel& m)
{
    json j = header("plsda");
    j["classes"] = m.classes;
    j["x_mean"] = vector_to_json(m.pls.x_mean);
    j["y_mean"] = vector_to_json(m.pls.y_mean);
    j["x_weights"] = matrix_to_json(m.pls.x_weights);
    j["x_loadings"] = matrix_to_json(m.pls.x_loadings);
    j["y_loadings"] = matrix_to_json(m.pls.y_loadings);
    j["scores"] = matrix_to_json(m.pls.scores);
    return j.dump();
}

PlsdaModel load_plsda_json(const std::string& text)
{
    const json j = parse_checked(text, "plsda");
    PlsdaModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.pls.x_mean = vector_from_json(j.at("x_mean"));
    m.pls.y_mean = vector_from_json(j.at("y_mean"));
    m.pls.x_weights = matrix_from_json(j.at("x_weights"));
    m.pls.x_loadings = matrix_from_json(j.at("x_loadings"));
    m.pls.y_loadings = matrix_from_json(j.at("y_loadings"));
    m.pls.scores = matrix_from_json(j.at("scores"));
    return m;
}

std::string save_model_json(const GrnnModel& m)
{
    json j = header("grnn");
    j["classes"] = m.classes;
    j["train_features"] = matrix_to_json(m.train_features);
    j["targets"] = matrix_to_json(m.targets);
    j["spread"] = m.spread;
    return j.dump();
}

GrnnModel load_grnn_json(const std::string& text)
{
    const json j = parse_checked(text, "grnn");
    GrnnModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.train_features = matrix_from_json(j.at("train_features"));
    m.targets = matrix_from_json(j.at("targets"));
    m.spread = j.at("spread").get<double>();
    return m;
}

std::string save_model_json(const BpnnModel& m)
{
    json j = header("bpnn");
    j["classes"] = m.classes;
    j["hidden_weights"] = matrix_to_json(m.hidden_weights);
    j["output_weights"] = matrix_to_json(m.output_weights);
    j["learning_rate"] = m.learning_rate;
    j["epochs"] = m.epochs;
    j["seed"] = m.seed;
    return j.dump();
}

BpnnModel load_bpnn_json(const std::string& text)
{
    const json j = parse_checked(text, "bpnn");
    BpnnModel m;
    m.classes = j.at("classes").get<std::vector<int>>();
    m.hidden_weights = matrix_from_json(j.at("hidden_weights"));
    m.output_weights = matrix_from_json(j.at("output_weights"));
    m.learning_rate = j.at("learning_rate").get<double>();
    m.epochs = j.at("epochs").get<int>();
    m.seed = j.at("seed").get<std::uint64_t>();
    return m;
}

} // namespace terasense::classify
