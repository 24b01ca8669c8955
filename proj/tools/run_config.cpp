#include "run_config.hpp"

#include <fstream>
#include <map>
#include <set>

namespace specgraph::cli {

namespace {

using nlohmann::json;

// Allowed keys per config object; "t" encodes the expected JSON type.
struct Field {
    const char* key;
    const char* type;  // number, integer, string, boolean, array, object
};

const std::map<std::string, std::vector<Field>> kModelSchema = {
    {"model",
     {{"kind", "string"},
      {"p", "integer"},
      {"sigma", "number"},
      {"a", "array"},
      {"noiseCov", "array"},
      {"fir", "array"},
      {"c0", "array"},
      {"sparseC0", "object"}}},
    {"sparseC0",
     {{"p", "integer"}, {"sMax", "integer"}, {"coupling", "number"}, {"seed", "integer"}}},
    {"gms",
     {{"windowScale", "number"},
      {"bins", "integer"},
      {"quadPoints", "integer"},
      {"lambda", "number"},
      {"eta", "number"},
      {"rule", "string"},
      {"rho", "number"},
      {"absTol", "number"},
      {"relTol", "number"},
      {"maxIter", "integer"},
      {"bestEffort", "boolean"}}},
};

const std::map<std::string, std::vector<Field>> kCommandSchema = {
    {"simulate",
     {{"version", "integer"}, {"model", "object"}, {"n", "integer"}, {"burnIn", "integer"}, {"seed", "integer"}}},
    {"infer", {{"version", "integer"}, {"gms", "object"}}},
    {"eval-roc",
     {{"version", "integer"},
      {"model", "object"},
      {"gms", "object"},
      {"lambdas", "array"},
      {"n", "integer"},
      {"runs", "integer"},
      {"seed", "integer"},
      {"graphTol", "number"}}},
    {"tau-sweep",
     {{"version", "integer"},
      {"models", "array"},
      {"gms", "object"},
      {"taus", "array"},
      {"runs", "integer"},
      {"seed", "integer"},
      {"lambdaFactor", "number"},
      {"etaFactor", "number"},
      {"graphTol", "number"}}},
    {"check-bounds",
     {{"version", "integer"},
      {"n", "integer"},
      {"p", "integer"},
      {"sMax", "integer"},
      {"rhoMin", "number"},
      {"u", "number"},
      {"delta", "number"},
      {"windowL1", "number"},
      {"muH1", "number"},
      {"variant", "string"}}},
    {"mc-verify", {{"version", "integer"}, {"checks", "array"}}},
    {"eeg-pipeline",
     {{"version", "integer"},
      {"labelColumn", "string"},
      {"headerRow", "boolean"},
      {"delimiter", "string"},
      {"n", "integer"},
      {"outlierMadK", "number"},
      {"boxcarLen", "integer"},
      {"gms", "object"}}},
};

const std::vector<Field> kMcCheckSchema = {
    {"type", "string"},   {"model", "object"}, {"windowScale", "number"}, {"n", "integer"},
    {"nu", "number"},     {"trials", "integer"}, {"seed", "integer"},     {"czScale", "number"},
    {"qScale", "number"},
};

const std::vector<Field> kTauModelSchema = {
    {"p", "integer"}, {"sMax", "integer"}, {"coupling", "number"}, {"fir", "array"}, {"graphSeed", "integer"},
};

bool type_matches(const json& value, const std::string& type) {
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "array") return value.is_array();
    if (type == "object") return value.is_object();
    return false;
}

void check_keys(const json& obj, const std::vector<Field>& fields, const std::string& where) {
    if (!obj.is_object()) throw ConfigError("config: '" + where + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
        const Field* match = nullptr;
        for (const auto& f : fields)
            if (key == f.key) match = &f;
        if (!match) throw ConfigError("config: unknown key '" + key + "' in " + where);
        if (!type_matches(value, match->type))
            throw ConfigError("config: key '" + key + "' in " + where + " must be of type " + match->type);
    }
}

void validate_model(const json& m, const std::string& where) {
    check_keys(m, kModelSchema.at("model"), where);
    if (!m.contains("kind")) throw ConfigError("config: " + where + " needs 'kind'");
    if (m.contains("sparseC0")) check_keys(m.at("sparseC0"), kModelSchema.at("sparseC0"), where + ".sparseC0");
}

}  // namespace

void validate_config(const json& cfg, const std::string& command) {
    const auto it = kCommandSchema.find(command);
    if (it == kCommandSchema.end()) throw ConfigError("config: unknown command '" + command + "'");
    check_keys(cfg, it->second, command);
    if (!cfg.contains("version") || cfg.at("version").get<int>() != 1)
        throw ConfigError("config: requires \"version\": 1");
    if (cfg.contains("model")) validate_model(cfg.at("model"), command + ".model");
    if (cfg.contains("gms")) check_keys(cfg.at("gms"), kModelSchema.at("gms"), command + ".gms");
    if (cfg.contains("checks"))
        for (const auto& check : cfg.at("checks")) {
            check_keys(check, kMcCheckSchema, command + ".checks[]");
            if (check.contains("model")) validate_model(check.at("model"), command + ".checks[].model");
        }
    if (cfg.contains("models"))
        for (const auto& m : cfg.at("models")) check_keys(m, kTauModelSchema, command + ".models[]");
}

nlohmann::json load_config(const std::string& path, const std::string& command) {
    std::ifstream file(path);
    if (!file) throw ConfigError("config: cannot open '" + path + "'");
    json cfg;
    try {
        file >> cfg;
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    validate_config(cfg, command);
    return cfg;
}

namespace {

Matrix matrix_from_json(const json& rows) {
    const auto r = static_cast<Index>(rows.size());
    if (r == 0) throw ConfigError("config: empty matrix");
    const auto c = static_cast<Index>(rows.at(0).size());
    Matrix out(r, c);
    for (Index i = 0; i < r; ++i) {
        const auto& row = rows.at(static_cast<std::size_t>(i));
        if (static_cast<Index>(row.size()) != c) throw ConfigError("config: ragged matrix");
        for (Index j = 0; j < c; ++j) out(i, j) = row.at(static_cast<std::size_t>(j)).get<double>();
    }
    return out;
}

Vector vector_from_json(const json& arr) {
    Vector out(static_cast<Index>(arr.size()));
    for (Index i = 0; i < out.size(); ++i) out(i) = arr.at(static_cast<std::size_t>(i)).get<double>();
    return out;
}

}  // namespace

ProcessModel model_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "whitenoise")
        return ProcessModel::white_noise(j.at("p").get<int>(), j.value("sigma", 1.0));
    if (kind == "var1") {
        Matrix a = matrix_from_json(j.at("a"));
        if (j.contains("noiseCov")) return ProcessModel::var1(std::move(a), matrix_from_json(j.at("noiseCov")));
        return ProcessModel::var1(std::move(a), j.value("sigma", 1.0));
    }
    if (kind == "firma") {
        Vector g = j.contains("fir") ? vector_from_json(j.at("fir")) : (Vector(2) << 1.0, 0.5).finished();
        if (j.contains("c0")) return ProcessModel::fir_ma(std::move(g), matrix_from_json(j.at("c0")));
        if (j.contains("sparseC0")) {
            const auto& s = j.at("sparseC0");
            Matrix c0 = random_sparse_covariance(s.at("p").get<int>(), s.at("sMax").get<int>(),
                                                 s.at("coupling").get<double>(),
                                                 s.value("seed", 0));
            return ProcessModel::fir_ma(std::move(g), std::move(c0));
        }
        throw ConfigError("config: firma model needs 'c0' or 'sparseC0'");
    }
    throw ConfigError("config: unknown model kind '" + kind + "'");
}

GmsConfig gms_from_json(const json& j) {
    GmsConfig cfg;
    cfg.windowScale = j.value("windowScale", cfg.windowScale);
    cfg.f = j.value("bins", cfg.f);
    cfg.quadPoints = j.value("quadPoints", cfg.quadPoints);
    cfg.lambda = j.value("lambda", cfg.lambda);
    cfg.eta = j.value("eta", cfg.eta);
    if (j.contains("rule")) {
        const std::string rule = j.at("rule").get<std::string>();
        if (rule == "and")
            cfg.rule = CombineRule::And;
        else if (rule == "or")
            cfg.rule = CombineRule::Or;
        else
            throw ConfigError("config: rule must be \"and\" or \"or\"");
    }
    cfg.solver.rho = j.value("rho", cfg.solver.rho);
    cfg.solver.absTol = j.value("absTol", cfg.solver.absTol);
    cfg.solver.relTol = j.value("relTol", cfg.solver.relTol);
    cfg.solver.maxIter = j.value("maxIter", cfg.solver.maxIter);
    cfg.bestEffort = j.value("bestEffort", cfg.bestEffort);
    return cfg;
}

}  // namespace specgraph::cli
