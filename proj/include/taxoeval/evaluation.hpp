#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "taxoeval/embedding.hpp"
#include "taxoeval/hierarchy.hpp"
#include "taxoeval/taxonomy.hpp"

namespace taxoeval {

enum class EvaluationMode { bottom_up, deep_research };

std::string_view to_string(EvaluationMode mode);
EvaluationMode parse_evaluation_mode(std::string_view name);

struct EncoderConfig {
    enum class Kind { test, remote };
    Kind kind = Kind::test;
    std::string model_id;   // remote only
    std::string endpoint;   // remote only
    int timeout_ms = 30000;
    int retries = 2;
    std::optional<std::filesystem::path> cache_file;
};

struct EvaluationConfig {
    EvaluationMode mode = EvaluationMode::bottom_up;
    std::filesystem::path expert_path;
    std::filesystem::path model_path;
    EncoderConfig encoder;
    double lambda = kDefaultPathPenalty;
    double alignment_threshold = 0.6;
    ParseMode parse_mode = ParseMode::lenient;
    std::size_t workers = 0;  // 0 = hardware concurrency
    bool witness = false;

    /// Throws ValidationError on out-of-range parameters.
    void validate() const;
};

/// Metric values for one survey; null marks an undefined metric.
struct SurveyMetrics {
    std::string survey_id;

    std::optional<double> recall, precision, f1;
    std::optional<double> ari, ari_cap;
    std::optional<double> hom, comp, v, v_cap;
    std::optional<double> us_ted, us_nted_pct;
    std::optional<double> sem_path;
    std::optional<double> nsr, nsp, soft_f1;

    std::size_t expert_papers = 0;
    std::size_t model_papers = 0;
    std::size_t aligned_papers = 0;
    std::vector<std::string> warnings;
    std::vector<NodeMatch> witness;
    /// Set when the survey could not be evaluated; all metrics are then absent.
    std::optional<std::string> error;
};

struct MetricField {
    std::string_view name;
    std::optional<double> SurveyMetrics::*member;
};

/// Metric fields reported in a mode, in report order.
std::vector<MetricField> metric_fields(EvaluationMode mode);

struct MacroValue {
    std::optional<double> mean;
    std::size_t included = 0;
    std::size_t excluded = 0;  // surveys where the metric was null
};

inline constexpr int kReportSchemaVersion = 1;

struct MetricReport {
    EvaluationConfig config;
    std::string encoder_identity;
    std::vector<SurveyMetrics> surveys;  // sorted by survey id
    std::map<std::string, MacroValue> macro;
    bool incomplete = false;
    std::vector<std::string> errors;

    std::size_t failed_surveys() const;
};

/// Compare one expert/model pair. In bottom-up mode the model assignment is
/// transported onto the expert papers through the alignment (missing papers become
/// unretrieved and are warned about) and retrieval fields stay empty.
SurveyMetrics evaluate_pair(const Taxonomy& expert, const Taxonomy& model, EvaluationMode mode,
                            const Similarity& sim, double lambda, double alignment_threshold,
                            bool witness = false);

/// Unweighted mean over non-null values of each field.
std::map<std::string, MacroValue> macro_average(const std::vector<SurveyMetrics>& surveys,
                                                EvaluationMode mode);

/// Survey ids found under an expert root: `<id>.json` files and `<id>` directories.
std::map<std::string, std::filesystem::path> discover_surveys(const std::filesystem::path& root);

/// Batch evaluation with an explicit encoder.
MetricReport evaluate(const EvaluationConfig& config, const Encoder& encoder);

/// Batch evaluation with the encoder described by config.encoder.
MetricReport evaluate(const EvaluationConfig& config);

/// 0 success, 2 some surveys failed, 1 aborted.
int exit_code(const MetricReport& report);

std::string report_to_json(const MetricReport& report);
std::string report_to_csv(const MetricReport& report);

} // namespace taxoeval
