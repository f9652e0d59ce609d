#include <cstdio>
#include <set>
#include <sstream>

#include <json.hpp>

#include "taxoeval/evaluation.hpp"

namespace taxoeval {

using ojson = nlohmann::ordered_json;

namespace {

// Soft-cardinality scores are coverage diagnostics, reported apart from the structural metrics.
const std::set<std::string_view> kAuxiliary = {"nsr", "nsp", "soft_f1"};

ojson value(const std::optional<double>& v) { return v ? ojson(*v) : ojson(nullptr); }

ojson config_json(const EvaluationConfig& c, const std::string& encoder_identity) {
    ojson enc = ojson::object();
    enc["kind"] = c.encoder.kind == EncoderConfig::Kind::test ? "test" : "remote";
    enc["identity"] = encoder_identity;
    if (c.encoder.kind == EncoderConfig::Kind::remote) {
        enc["model_id"] = c.encoder.model_id;
        enc["endpoint"] = c.encoder.endpoint;
    }
    ojson out = ojson::object();
    out["mode"] = std::string(to_string(c.mode));
    out["expert_path"] = c.expert_path.generic_string();
    out["model_path"] = c.model_path.generic_string();
    out["encoder"] = std::move(enc);
    out["lambda"] = c.lambda;
    out["alignment_threshold"] = c.alignment_threshold;
    out["parse_mode"] = c.parse_mode == ParseMode::strict ? "strict" : "lenient";
    return out;
}

std::string number(const std::optional<double>& v, double scale = 1.0) {
    if (!v) return {};
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", *v * scale);
    return buf;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string report_to_json(const MetricReport& report) {
    const auto fields = metric_fields(report.config.mode);

    ojson doc = ojson::object();
    doc["schema_version"] = kReportSchemaVersion;
    doc["mode"] = std::string(to_string(report.config.mode));
    doc["incomplete"] = report.incomplete;
    doc["config"] = config_json(report.config, report.encoder_identity);
    doc["notes"] = {
        {"units", "metric values are fractions except us_nted_pct (percentage) and us_ted (edit cost)"},
        {"alignment_text", "papers are aligned on normalized titles only"},
        {"auxiliary_diagnostics", "nsr, nsp and soft_f1 measure label coverage and ignore hierarchy structure"},
    };

    ojson surveys = ojson::array();
    for (const auto& s : report.surveys) {
        ojson entry = ojson::object();
        entry["survey_id"] = s.survey_id;
        if (s.error) {
            entry["error"] = *s.error;
            surveys.push_back(std::move(entry));
            continue;
        }
        ojson metrics = ojson::object(), aux = ojson::object();
        for (const auto& f : fields) (kAuxiliary.count(f.name) ? aux : metrics)[std::string(f.name)] = value(s.*(f.member));
        entry["metrics"] = std::move(metrics);
        entry["auxiliary_diagnostics"] = std::move(aux);
        entry["counts"] = {{"expert_papers", s.expert_papers},
                           {"model_papers", s.model_papers},
                           {"aligned_papers", s.aligned_papers}};
        entry["warnings"] = s.warnings;
        if (report.config.witness) {
            ojson w = ojson::array();
            for (const auto& m : s.witness)
                w.push_back({{"expert", m.expert_path}, {"model", m.model_path}, {"rename_cost", m.rename_cost}});
            entry["witness"] = std::move(w);
        }
        surveys.push_back(std::move(entry));
    }
    doc["surveys"] = std::move(surveys);

    ojson macro = ojson::object(), macro_aux = ojson::object();
    for (const auto& f : fields) {
        const auto it = report.macro.find(std::string(f.name));
        if (it == report.macro.end()) continue;
        ojson m = {{"mean", value(it->second.mean)},
                   {"included", it->second.included},
                   {"excluded", it->second.excluded}};
        (kAuxiliary.count(f.name) ? macro_aux : macro)[std::string(f.name)] = std::move(m);
    }
    doc["macro"] = std::move(macro);
    doc["macro_auxiliary_diagnostics"] = std::move(macro_aux);
    doc["failed_surveys"] = report.failed_surveys();
    doc["errors"] = report.errors;
    return doc.dump(2) + "\n";
}

std::string report_to_csv(const MetricReport& report) {
    const auto fields = metric_fields(report.config.mode);
    // Display columns in percent, for the fraction-valued agreement scores.
    std::vector<MetricField> pct;
    for (const auto& f : fields)
        if (f.name != "us_ted" && f.name != "us_nted_pct" && !kAuxiliary.count(f.name)) pct.push_back(f);

    std::ostringstream out;
    out << "survey_id";
    for (const auto& f : fields) out << ',' << f.name;
    for (const auto& f : pct) out << ',' << f.name << "_pct";
    out << ",error\n";

    for (const auto& s : report.surveys) {
        out << csv_escape(s.survey_id);
        for (const auto& f : fields) out << ',' << number(s.*(f.member));
        for (const auto& f : pct) out << ',' << number(s.*(f.member), 100.0);
        out << ',' << csv_escape(s.error.value_or(""));
        out << '\n';
    }

    out << "MACRO";
    for (const auto& f : fields) {
        const auto it = report.macro.find(std::string(f.name));
        out << ',' << (it == report.macro.end() ? std::string() : number(it->second.mean));
    }
    for (const auto& f : pct) {
        const auto it = report.macro.find(std::string(f.name));
        out << ',' << (it == report.macro.end() ? std::string() : number(it->second.mean, 100.0));
    }
    out << ",\n";
    return out.str();
}

} // namespace taxoeval
