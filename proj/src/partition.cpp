#include "taxoeval/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "taxoeval/error.hpp"

namespace taxoeval {

namespace {

double comb2(long n) { return 0.5 * static_cast<double>(n) * static_cast<double>(n - 1); }

std::vector<CategoryId> sorted_ids(const std::set<CategoryId>& s) { return {s.begin(), s.end()}; }

std::size_t index_of(const std::vector<CategoryId>& ids, CategoryId id) {
    return static_cast<std::size_t>(std::lower_bound(ids.begin(), ids.end(), id) - ids.begin());
}

} // namespace

ContingencyTable contingency(const PaperAssignment& u_star, const PaperAssignment& u_hat,
                             const std::vector<std::string>& universe) {
    std::set<CategoryId> rows, cols;
    std::vector<std::pair<CategoryId, CategoryId>> labels;
    labels.reserve(universe.size());
    for (const auto& paper : universe) {
        auto a = u_star.entries.find(paper);
        auto b = u_hat.entries.find(paper);
        if (a == u_star.entries.end()) throw ValidationError("paper missing from expert assignment: " + paper);
        if (b == u_hat.entries.end()) throw ValidationError("paper missing from model assignment: " + paper);
        rows.insert(a->second);
        cols.insert(b->second);
        labels.emplace_back(a->second, b->second);
    }

    ContingencyTable t;
    t.row_ids = sorted_ids(rows);
    t.col_ids = sorted_ids(cols);
    t.counts.setZero(static_cast<Eigen::Index>(t.row_ids.size()), static_cast<Eigen::Index>(t.col_ids.size()));
    for (const auto& [r, c] : labels)
        ++t.counts(static_cast<Eigen::Index>(index_of(t.row_ids, r)), static_cast<Eigen::Index>(index_of(t.col_ids, c)));
    return t;
}

bool identical_partitions(const ContingencyTable& table) {
    const auto& n = table.counts;
    if (n.rows() != n.cols()) return false;
    for (Eigen::Index i = 0; i < n.rows(); ++i)
        if ((n.row(i).array() > 0).count() != 1) return false;
    for (Eigen::Index j = 0; j < n.cols(); ++j)
        if ((n.col(j).array() > 0).count() != 1) return false;
    return true;
}

double ari(const ContingencyTable& table) {
    const long total = table.total();
    double index = 0.0;
    for (Eigen::Index i = 0; i < table.counts.size(); ++i) index += comb2(table.counts.data()[i]);
    double sum_a = 0.0, sum_b = 0.0;
    const auto a = table.row_sums();
    const auto b = table.col_sums();
    for (Eigen::Index i = 0; i < a.size(); ++i) sum_a += comb2(a(i));
    for (Eigen::Index j = 0; j < b.size(); ++j) sum_b += comb2(b(j));

    const double pairs = comb2(total);
    const double expected = pairs > 0.0 ? sum_a * sum_b / pairs : 0.0;
    const double max_index = 0.5 * (sum_a + sum_b);
    const double denom = max_index - expected;
    if (denom == 0.0) return identical_partitions(table) ? 1.0 : 0.0;
    return (index - expected) / denom;
}

VMeasure homogeneity_completeness_v(const ContingencyTable& table) {
    const double n = static_cast<double>(table.total());
    VMeasure out;
    if (n == 0.0) return out;

    const auto a = table.row_sums();
    const auto b = table.col_sums();
    auto entropy = [n](const auto& sums) {
        double h = 0.0;
        for (Eigen::Index i = 0; i < sums.size(); ++i) {
            if (sums(i) == 0) continue;
            const double p = static_cast<double>(sums(i)) / n;
            h -= p * std::log(p);
        }
        return h;
    };
    const double h_expert = entropy(a);
    const double h_model = entropy(b);

    double h_expert_given_model = 0.0, h_model_given_expert = 0.0;
    for (Eigen::Index i = 0; i < table.counts.rows(); ++i) {
        for (Eigen::Index j = 0; j < table.counts.cols(); ++j) {
            const long nij = table.counts(i, j);
            if (nij == 0) continue;
            const double x = static_cast<double>(nij);
            h_expert_given_model -= x / n * std::log(x / static_cast<double>(b(j)));
            h_model_given_expert -= x / n * std::log(x / static_cast<double>(a(i)));
        }
    }

    out.homogeneity = h_expert == 0.0 ? 1.0 : 1.0 - h_expert_given_model / h_expert;
    out.completeness = h_model == 0.0 ? 1.0 : 1.0 - h_model_given_expert / h_model;
    // Guard against -0 and tiny negatives from rounding.
    out.homogeneity = std::clamp(out.homogeneity, 0.0, 1.0);
    out.completeness = std::clamp(out.completeness, 0.0, 1.0);
    const double sum = out.homogeneity + out.completeness;
    out.v = sum == 0.0 ? 0.0 : 2.0 * out.homogeneity * out.completeness / sum;
    return out;
}

RestrictedAssignments restrict_to_intersection(const PaperAssignment& u_star, const PaperAssignment& u_hat,
                                               const AlignmentSet& alignment) {
    RestrictedAssignments out;
    for (const auto& pair : alignment.pairs) {
        auto e = u_star.entries.find(pair.expert);
        auto m = u_hat.entries.find(pair.model);
        if (e == u_star.entries.end() || m == u_hat.entries.end()) continue;
        out.expert.entries.emplace(pair.expert, e->second);
        out.model.entries.emplace(pair.expert, m->second);
        out.universe.push_back(pair.expert);
    }
    return out;
}

PaperAssignment extend_e2e(const PaperAssignment& u_hat, const AlignmentSet& alignment,
                           const std::vector<std::string>& expert_universe) {
    std::map<std::string, const std::string*> matched;
    for (const auto& pair : alignment.pairs) matched.emplace(pair.expert, &pair.model);

    PaperAssignment out;
    for (const auto& paper : expert_universe) {
        CategoryId id = kUnretrieved;
        if (auto it = matched.find(paper); it != matched.end()) {
            if (auto m = u_hat.entries.find(*it->second); m != u_hat.entries.end()) id = m->second;
        }
        out.entries.emplace(paper, id);
    }
    return out;
}

} // namespace taxoeval
