#include "taxoeval/evaluation.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <memory>
#include <thread>

#include "taxoeval/alignment.hpp"
#include "taxoeval/embedding_cache.hpp"
#include "taxoeval/error.hpp"
#include "taxoeval/partition.hpp"
#include "taxoeval/remote_encoder.hpp"
#include "taxoeval/soft_cardinality.hpp"
#include "taxoeval/taxonomy_io.hpp"

namespace taxoeval {

namespace fs = std::filesystem;

std::string_view to_string(EvaluationMode mode) {
    return mode == EvaluationMode::bottom_up ? "bottom-up" : "deep-research";
}

EvaluationMode parse_evaluation_mode(std::string_view name) {
    if (name == "bottom-up") return EvaluationMode::bottom_up;
    if (name == "deep-research") return EvaluationMode::deep_research;
    throw ValidationError("unknown evaluation mode: " + std::string(name));
}

void EvaluationConfig::validate() const {
    if (!(alignment_threshold > 0.0 && alignment_threshold <= 1.0))
        throw ValidationError("alignment threshold must lie in (0, 1]");
    if (!(lambda >= 0.0)) throw ValidationError("lambda must be non-negative");
    if (encoder.kind == EncoderConfig::Kind::remote && encoder.model_id.empty())
        throw ValidationError("remote encoder needs a model id");
}

std::vector<MetricField> metric_fields(EvaluationMode mode) {
    using S = SurveyMetrics;
    std::vector<MetricField> out;
    if (mode == EvaluationMode::deep_research)
        out.insert(out.end(), {{"recall", &S::recall}, {"precision", &S::precision}, {"f1", &S::f1}});
    out.push_back({"ari", &S::ari});
    if (mode == EvaluationMode::deep_research) out.push_back({"ari_cap", &S::ari_cap});
    out.insert(out.end(), {{"hom", &S::hom}, {"comp", &S::comp}, {"v", &S::v}});
    if (mode == EvaluationMode::deep_research) out.push_back({"v_cap", &S::v_cap});
    out.insert(out.end(), {{"us_ted", &S::us_ted}, {"us_nted_pct", &S::us_nted_pct}, {"sem_path", &S::sem_path},
                           {"nsr", &S::nsr}, {"nsp", &S::nsp}, {"soft_f1", &S::soft_f1}});
    return out;
}

std::size_t MetricReport::failed_surveys() const {
    return static_cast<std::size_t>(
        std::count_if(surveys.begin(), surveys.end(), [](const SurveyMetrics& s) { return s.error.has_value(); }));
}

namespace {

void prefetch_labels(const Taxonomy& expert, const Taxonomy& model, const Similarity& sim) {
    const auto* emb = dynamic_cast<const EmbeddingSimilarity*>(&sim);
    if (emb == nullptr) return;
    std::vector<std::string> texts = category_labels(expert.root);
    for (auto& l : category_labels(model.root)) texts.push_back(std::move(l));
    for (auto& p : paper_ids(expert)) texts.push_back(std::move(p));
    for (auto& p : paper_ids(model)) texts.push_back(std::move(p));
    emb->prefetch(texts);
}

void leaf_metrics(const PaperAssignment& u_star, const PaperAssignment& u_model, const std::vector<std::string>& universe,
                  std::optional<double>& ari_out, std::optional<double>* hom, std::optional<double>* comp,
                  std::optional<double>& v_out) {
    if (universe.empty()) return;
    const ContingencyTable table = contingency(u_star, u_model, universe);
    ari_out = ari(table);
    const VMeasure vm = homogeneity_completeness_v(table);
    if (hom) *hom = vm.homogeneity;
    if (comp) *comp = vm.completeness;
    v_out = vm.v;
}

} // namespace

SurveyMetrics evaluate_pair(const Taxonomy& expert, const Taxonomy& model, EvaluationMode mode, const Similarity& sim,
                            double lambda, double alignment_threshold, bool witness) {
    SurveyMetrics out;
    out.survey_id = expert.survey_id;
    for (const auto& w : expert.warnings) out.warnings.push_back("expert: " + w);
    for (const auto& w : model.warnings) out.warnings.push_back("model: " + w);

    prefetch_labels(expert, model, sim);

    const std::vector<std::string> expert_ids = paper_ids(expert);
    const std::vector<std::string> model_ids = paper_ids(model);
    const AlignmentSet alignment = align(expert_ids, model_ids, sim, {alignment_threshold});
    out.expert_papers = expert_ids.size();
    out.model_papers = model_ids.size();
    out.aligned_papers = alignment.size();

    const PaperAssignment u_star = assignment_of(expert);
    const PaperAssignment u_hat = assignment_of(model);
    const PaperAssignment u_e2e = extend_e2e(u_hat, alignment, expert_ids);

    if (mode == EvaluationMode::deep_research) {
        const RetrievalScores r = retrieval_scores(alignment, expert_ids.size(), model_ids.size());
        out.recall = r.recall;
        out.precision = r.precision;
        out.f1 = r.f1;

        leaf_metrics(u_star, u_e2e, expert_ids, out.ari, &out.hom, &out.comp, out.v);
        const RestrictedAssignments cap = restrict_to_intersection(u_star, u_hat, alignment);
        if (cap.empty()) out.warnings.push_back("no aligned papers; intersection metrics and sem_path are null");
        leaf_metrics(cap.expert, cap.model, cap.universe, out.ari_cap, nullptr, nullptr, out.v_cap);
    } else {
        if (!alignment.unmatched_expert.empty())
            out.warnings.push_back(std::to_string(alignment.unmatched_expert.size()) +
                                   " expert paper(s) missing from the model taxonomy; treated as unretrieved");
        if (!alignment.unmatched_model.empty())
            out.warnings.push_back(std::to_string(alignment.unmatched_model.size()) +
                                   " model paper(s) do not match any expert paper; ignored");
        leaf_metrics(u_star, u_e2e, expert_ids, out.ari, &out.hom, &out.comp, out.v);
    }

    const CategoryHierarchy h_star = hierarchy_of(expert);
    const CategoryHierarchy h_hat = hierarchy_of(model);
    const EditDistanceResult ted = us_ted(h_star, h_hat, sim, witness);
    out.us_ted = ted.us_ted;
    out.us_nted_pct = 100.0 * ted.us_nted;
    out.witness = ted.witness;

    out.sem_path = sem_path(expert, model, alignment, lambda, sim).sem_path;

    const SoftScores soft = nsr_nsp_f1(collect_labels(h_star), collect_labels(h_hat), sim);
    out.nsr = soft.nsr;
    out.nsp = soft.nsp;
    out.soft_f1 = soft.soft_f1;
    return out;
}

std::map<std::string, MacroValue> macro_average(const std::vector<SurveyMetrics>& surveys, EvaluationMode mode) {
    std::map<std::string, MacroValue> out;
    for (const MetricField& f : metric_fields(mode)) {
        MacroValue mv;
        double sum = 0.0;
        for (const auto& s : surveys) {
            if (s.error) continue;
            const auto& value = s.*(f.member);
            if (value) {
                sum += *value;
                ++mv.included;
            } else {
                ++mv.excluded;
            }
        }
        if (mv.included > 0) mv.mean = sum / static_cast<double>(mv.included);
        out.emplace(std::string(f.name), mv);
    }
    return out;
}

std::map<std::string, fs::path> discover_surveys(const fs::path& root) {
    if (!fs::is_directory(root)) throw ValidationError("not a directory: " + root.string());
    std::map<std::string, fs::path> out;
    for (const auto& entry : fs::directory_iterator(root)) {
        const fs::path& p = entry.path();
        const std::string name = p.filename().string();
        if (name.empty() || name.front() == '.') continue;
        std::string id;
        if (entry.is_directory()) id = name;
        else if (entry.is_regular_file() && p.extension() == ".json") id = p.stem().string();
        else continue;
        if (!out.emplace(id, p).second)
            throw ValidationError("survey \"" + id + "\" exists both as a file and as a directory under " + root.string());
    }
    return out;
}

namespace {

std::optional<fs::path> model_for(const fs::path& model_root, const std::string& id) {
    const fs::path file = model_root / (id + ".json");
    if (fs::is_regular_file(file)) return file;
    const fs::path dir = model_root / id;
    if (fs::is_directory(dir)) return dir;
    return std::nullopt;
}

} // namespace

MetricReport evaluate(const EvaluationConfig& config, const Encoder& encoder) {
    config.validate();
    const auto expert = discover_surveys(config.expert_path);
    if (!fs::is_directory(config.model_path)) throw ValidationError("not a directory: " + config.model_path.string());

    MetricReport report;
    report.config = config;
    report.encoder_identity = encoder.identity();

    std::vector<std::pair<std::string, fs::path>> jobs(expert.begin(), expert.end());
    report.surveys.resize(jobs.size());

    const EmbeddingSimilarity sim(encoder);
    std::atomic<std::size_t> next{0};
    std::atomic<bool> aborted{false};
    std::vector<char> done(jobs.size(), 0);
    std::mutex error_mutex;

    auto worker = [&] {
        for (;;) {
            if (aborted.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const auto& [id, expert_file] = jobs[i];
            SurveyMetrics& slot = report.surveys[i];
            slot.survey_id = id;
            try {
                const auto model_file = model_for(config.model_path, id);
                if (!model_file) throw ValidationError("no model taxonomy for survey \"" + id + "\"");
                Taxonomy e = load_taxonomy(expert_file, config.parse_mode);
                Taxonomy m = load_taxonomy(*model_file, config.parse_mode);
                e.survey_id = id;
                m.survey_id = id;
                slot = evaluate_pair(e, m, config.mode, sim, config.lambda, config.alignment_threshold, config.witness);
            } catch (const TransportError& ex) {
                aborted = true;
                slot.error = std::string("encoder failure: ") + ex.what();
                std::lock_guard lock(error_mutex);
                report.errors.push_back(id + ": " + *slot.error);
            } catch (const ProtocolError& ex) {
                aborted = true;
                slot.error = std::string("encoder failure: ") + ex.what();
                std::lock_guard lock(error_mutex);
                report.errors.push_back(id + ": " + *slot.error);
            } catch (const std::exception& ex) {
                slot = SurveyMetrics{};
                slot.survey_id = id;
                slot.error = ex.what();
                std::lock_guard lock(error_mutex);
                report.errors.push_back(id + ": " + ex.what());
            }
            done[i] = 1;
        }
    };

    std::size_t workers = config.workers != 0 ? config.workers : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, std::max<std::size_t>(jobs.size(), 1));
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
    }

    report.incomplete = aborted.load();
    for (std::size_t i = 0; i < jobs.size(); ++i) {
        if (done[i]) continue;
        report.surveys[i].survey_id = jobs[i].first;
        report.surveys[i].error = "not evaluated: run aborted";
    }
    std::sort(report.errors.begin(), report.errors.end());
    report.macro = macro_average(report.surveys, config.mode);
    return report;
}

MetricReport evaluate(const EvaluationConfig& config) {
    config.validate();
    std::unique_ptr<Encoder> base;
    if (config.encoder.kind == EncoderConfig::Kind::test) {
        base = std::make_unique<HashEncoder>();
    } else {
        RemoteEncoderOptions opts;
        opts.endpoint = config.encoder.endpoint;
        if (opts.endpoint.empty()) {
            if (const char* env = std::getenv(kEndpointEnvVar)) opts.endpoint = env;
        }
        if (opts.endpoint.empty())
            throw ValidationError(std::string("remote encoder needs --endpoint or ") + kEndpointEnvVar);
        opts.model = config.encoder.model_id;
        opts.timeout_ms = config.encoder.timeout_ms;
        opts.retries = config.encoder.retries;
        base = std::make_unique<RemoteEncoder>(std::move(opts));
    }
    if (!config.encoder.cache_file) return evaluate(config, *base);
    EmbeddingCache cache(*config.encoder.cache_file);
    CachedEncoder cached(*base, cache);
    return evaluate(config, cached);
}

int exit_code(const MetricReport& report) {
    if (report.incomplete) return 1;
    return report.failed_surveys() > 0 ? 2 : 0;
}

} // namespace taxoeval
