// taxoeval: compare model-built survey taxonomies against expert references.
//
//   taxoeval evaluate --mode bottom-up --expert DIR --model DIR --encoder test --out report.json
//   taxoeval perturb --in FILE --kind sibling-shuffle --seed 7 --out FILE
//   taxoeval validate --in FILE

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "taxoeval/error.hpp"
#include "taxoeval/evaluation.hpp"
#include "taxoeval/perturbation.hpp"
#include "taxoeval/remote_encoder.hpp"
#include "taxoeval/taxonomy_io.hpp"

using namespace taxoeval;

namespace {

ParseMode parse_mode_from(const std::string& s) { return s == "strict" ? ParseMode::strict : ParseMode::lenient; }

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ValidationError("cannot write " + path);
    out << text;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Evaluate generated survey taxonomies against expert references"};
    app.require_subcommand(1);

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Run all metrics over paired expert/model taxonomies");
    std::string mode = "bottom-up", expert_dir, model_dir, encoder = "test", endpoint, encoder_id, parse = "lenient";
    std::string out_path, csv_path, cache_path;
    double lambda = kDefaultPathPenalty, threshold = 0.6;
    std::size_t workers = 0;
    int timeout_ms = 30000, retries = 2;
    bool witness = false;
    eval_cmd->add_option("--mode", mode, "Evaluation mode")->check(CLI::IsMember({"bottom-up", "deep-research"}))->required();
    eval_cmd->add_option("--expert", expert_dir, "Expert taxonomy root")->required()->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--model", model_dir, "Model taxonomy root")->required()->check(CLI::ExistingDirectory);
    eval_cmd->add_option("--encoder", encoder, "Label encoder")->check(CLI::IsMember({"test", "remote"}));
    eval_cmd->add_option("--endpoint", endpoint, std::string("Embedding service URL (falls back to $") + kEndpointEnvVar + ")");
    eval_cmd->add_option("--encoder-id", encoder_id, "Model id sent to the embedding service");
    eval_cmd->add_option("--lambda", lambda, "Sem-Path penalty per unmatched ancestor")->check(CLI::NonNegativeNumber);
    eval_cmd->add_option("--threshold", threshold, "Lower similarity bound of the containment match rule")
        ->check(CLI::Range(0.0, 1.0));
    eval_cmd->add_option("--parse", parse, "Taxonomy parse mode")->check(CLI::IsMember({"strict", "lenient"}));
    eval_cmd->add_option("--out", out_path, "JSON report path")->required();
    eval_cmd->add_option("--csv", csv_path, "Optional flat CSV export");
    eval_cmd->add_option("--workers", workers, "Worker threads (0 = hardware concurrency)");
    eval_cmd->add_option("--cache", cache_path, "Append-only embedding cache file");
    eval_cmd->add_option("--timeout-ms", timeout_ms, "Remote encoder timeout");
    eval_cmd->add_option("--retries", retries, "Remote encoder retries");
    eval_cmd->add_flag("--witness", witness, "Include the optimal node matching in the report");

    // perturb
    auto* perturb_cmd = app.add_subcommand("perturb", "Write a controlled edit of a taxonomy");
    std::string in_path, kind, target, other, new_label, perturb_out, perturb_parse = "strict";
    std::uint64_t seed = 0;
    std::size_t parts = 2;
    perturb_cmd->add_option("--in", in_path, "Input taxonomy (JSON file or directory)")->required()->check(CLI::ExistingPath);
    perturb_cmd->add_option("--kind", kind, "sibling-shuffle | rewire-swap | split-leaf | contract-node | relabel")
        ->required()
        ->check(CLI::IsMember({"sibling-shuffle", "rewire-swap", "split-leaf", "contract-node", "relabel"}));
    perturb_cmd->add_option("--seed", seed, "Shuffle seed");
    perturb_cmd->add_option("--target", target, "Node path from the root, e.g. R/A/C");
    perturb_cmd->add_option("--other", other, "Second node path (rewire-swap)");
    perturb_cmd->add_option("--parts", parts, "Number of parts (split-leaf)");
    perturb_cmd->add_option("--label", new_label, "New label (relabel)");
    perturb_cmd->add_option("--parse", perturb_parse, "Parse mode for the input")->check(CLI::IsMember({"strict", "lenient"}));
    perturb_cmd->add_option("--out", perturb_out, "Output JSON path")->required();

    // validate
    auto* validate_cmd = app.add_subcommand("validate", "List constraint violations of a taxonomy");
    std::string validate_in, validate_mode = "strict";
    validate_cmd->add_option("--in", validate_in, "Taxonomy JSON file or directory")->required();
    validate_cmd->add_option("--mode", validate_mode, "strict lists every violation; lenient lists only unrepairable ones")
        ->check(CLI::IsMember({"strict", "lenient"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (eval_cmd->parsed()) {
            EvaluationConfig config;
            config.mode = parse_evaluation_mode(mode);
            config.expert_path = expert_dir;
            config.model_path = model_dir;
            config.encoder.kind = encoder == "remote" ? EncoderConfig::Kind::remote : EncoderConfig::Kind::test;
            config.encoder.endpoint = endpoint;
            config.encoder.model_id = encoder_id;
            config.encoder.timeout_ms = timeout_ms;
            config.encoder.retries = retries;
            if (!cache_path.empty()) config.encoder.cache_file = cache_path;
            config.lambda = lambda;
            config.alignment_threshold = threshold;
            config.parse_mode = parse_mode_from(parse);
            config.workers = workers;
            config.witness = witness;

            const MetricReport report = evaluate(config);
            write_text(out_path, report_to_json(report));
            if (!csv_path.empty()) write_text(csv_path, report_to_csv(report));
            for (const auto& e : report.errors) std::cerr << "error: " << e << '\n';
            if (report.incomplete) std::cerr << "run aborted; report is incomplete\n";
            return exit_code(report);
        }

        if (perturb_cmd->parsed()) {
            const Taxonomy t = load_taxonomy(in_path, parse_mode_from(perturb_parse));
            Perturbation p;
            p.kind = parse_perturbation_kind(kind);
            p.seed = seed;
            p.parts = parts;
            p.new_label = new_label;
            if (!target.empty()) p.target = parse_node_path(target);
            if (!other.empty()) p.other = parse_node_path(other);
            if (p.kind != PerturbationKind::sibling_shuffle && p.target.empty())
                throw ValidationError("--target is required for " + kind);
            if (p.kind == PerturbationKind::rewire_swap && p.other.empty())
                throw ValidationError("--other is required for rewire-swap");
            write_taxonomy_file(apply(t, p), perturb_out);
            return 0;
        }

        if (validate_cmd->parsed()) {
            if (validate_mode == "strict") {
                const auto diagnostics = validate_taxonomy_path(validate_in);
                for (const auto& d : diagnostics) std::cout << d.path << ": " << d.message << '\n';
                return diagnostics.empty() ? 0 : 1;
            }
            try {
                const Taxonomy t = load_taxonomy(validate_in, ParseMode::lenient);
                for (const auto& w : t.warnings) std::cout << "warning: " << w << '\n';
                return 0;
            } catch (const ValidationError& e) {
                if (e.diagnostics().empty()) std::cout << e.what() << '\n';
                for (const auto& d : e.diagnostics()) std::cout << d.path << ": " << d.message << '\n';
                return 1;
            }
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
