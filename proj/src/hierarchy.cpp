#include "taxoeval/hierarchy.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

#include "taxoeval/assignment.hpp"
#include "taxoeval/error.hpp"

namespace taxoeval {

Eigen::MatrixXd padded_cost_matrix(std::span<const CategoryNode> a, std::span<const CategoryNode> b,
                                   const Eigen::MatrixXd& pairwise) {
    const auto m = static_cast<Eigen::Index>(a.size());
    const auto n = static_cast<Eigen::Index>(b.size());
    if (pairwise.rows() != m || pairwise.cols() != n)
        throw std::invalid_argument("pairwise cost matrix does not match the child lists");
    const Eigen::Index k = std::max(m, n);
    Eigen::MatrixXd c = Eigen::MatrixXd::Zero(k, k);
    c.topLeftCorner(m, n) = pairwise;
    for (Eigen::Index i = 0; i < m; ++i) c.block(i, n, 1, k - n).setConstant(double(subtree_size(a[i])));
    for (Eigen::Index j = 0; j < n; ++j) c.block(m, j, k - m, 1).setConstant(double(subtree_size(b[j])));
    return c;
}

double match_cost(std::span<const CategoryNode> a, std::span<const CategoryNode> b, const Eigen::MatrixXd& pairwise) {
    return min_cost_assignment(padded_cost_matrix(a, b, pairwise)).cost;
}

namespace {

struct PairHash {
    std::size_t operator()(const std::pair<const void*, const void*>& p) const noexcept {
        const auto x = reinterpret_cast<std::uintptr_t>(p.first);
        const auto y = reinterpret_cast<std::uintptr_t>(p.second);
        return std::hash<std::uintptr_t>{}(x * 0x9e3779b97f4a7c15ULL ^ y);
    }
};

class TreeDistance {
public:
    explicit TreeDistance(const Similarity& sim) : sim_(sim) {}

    double distance(const CategoryNode& u, const CategoryNode& v) {
        const auto key = std::make_pair<const void*, const void*>(&u, &v);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        double d = rename(u.label, v.label);
        if (!u.children.empty() || !v.children.empty()) d += match_cost(u.children, v.children, pairwise(u, v));
        memo_.emplace(key, d);
        return d;
    }

    // Walks the optimal matching; call after distance(u, v).
    void witness(const CategoryNode& u, const CategoryNode& v, const std::string& up, const std::string& vp,
                 std::vector<NodeMatch>& out) {
        out.push_back({up, vp, rename(u.label, v.label)});
        if (u.children.empty() || v.children.empty()) return;
        const auto solved = min_cost_assignment(padded_cost_matrix(u.children, v.children, pairwise(u, v)));
        for (std::size_t i = 0; i < u.children.size(); ++i) {
            const auto j = static_cast<std::size_t>(solved.col_of_row[i]);
            if (j >= v.children.size()) continue;
            const auto& uc = u.children[i];
            const auto& vc = v.children[j];
            witness(uc, vc, up + "/" + uc.label, vp + "/" + vc.label, out);
        }
    }

private:
    Eigen::MatrixXd pairwise(const CategoryNode& u, const CategoryNode& v) {
        Eigen::MatrixXd p(static_cast<Eigen::Index>(u.children.size()), static_cast<Eigen::Index>(v.children.size()));
        for (Eigen::Index i = 0; i < p.rows(); ++i)
            for (Eigen::Index j = 0; j < p.cols(); ++j)
                p(i, j) = distance(u.children[static_cast<std::size_t>(i)], v.children[static_cast<std::size_t>(j)]);
        return p;
    }

    double rename(const std::string& x, const std::string& y) {
        auto key = x < y ? std::make_pair(x, y) : std::make_pair(y, x);
        if (auto it = rename_memo_.find(key); it != rename_memo_.end()) return it->second;
        const double c = renaming_cost(x, y, sim_);
        rename_memo_.emplace(std::move(key), c);
        return c;
    }

    const Similarity& sim_;
    std::unordered_map<std::pair<const void*, const void*>, double, PairHash> memo_;
    std::map<std::pair<std::string, std::string>, double> rename_memo_;
};

} // namespace

double tree_distance(const CategoryNode& u, const CategoryNode& v, const Similarity& sim) {
    return TreeDistance(sim).distance(u, v);
}

double us_nted(double us_ted_value, std::size_t expert_nodes, std::size_t model_nodes) {
    const std::size_t total = expert_nodes + model_nodes;
    if (total == 0) throw ValidationError("us_nted needs at least one node");
    return us_ted_value / static_cast<double>(total);
}

EditDistanceResult us_ted(const CategoryHierarchy& expert, const CategoryHierarchy& model, const Similarity& sim,
                          bool with_witness) {
    TreeDistance solver(sim);
    EditDistanceResult r;
    r.us_ted = solver.distance(expert.root, model.root);
    r.expert_nodes = subtree_size(expert.root);
    r.model_nodes = subtree_size(model.root);
    r.us_nted = us_nted(r.us_ted, r.expert_nodes, r.model_nodes);
    if (with_witness) solver.witness(expert.root, model.root, expert.root.label, model.root.label, r.witness);
    return r;
}

double sem_path_cost(const LabelPath& s, const LabelPath& s_hat, double lambda, const Similarity& sim) {
    if (s.empty() || s_hat.empty()) throw ValidationError("ancestor chains must be non-empty");
    if (!(lambda >= 0.0)) throw ValidationError("path penalty must be non-negative");
    const bool swap = s.size() > s_hat.size();
    const LabelPath& shorter = swap ? s_hat : s;
    const LabelPath& longer = swap ? s : s_hat;
    const std::size_t m = shorter.size(), n = longer.size();

    constexpr double inf = std::numeric_limits<double>::infinity();
    Eigen::MatrixXd dp = Eigen::MatrixXd::Constant(Eigen::Index(m + 1), Eigen::Index(n + 1), inf);
    dp.row(0).setZero();
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t j = i; j <= n; ++j) {
            const double take = dp(Eigen::Index(i - 1), Eigen::Index(j - 1)) + renaming_cost(shorter[i - 1], longer[j - 1], sim);
            const double skip = dp(Eigen::Index(i), Eigen::Index(j - 1));
            dp(Eigen::Index(i), Eigen::Index(j)) = std::min(take, skip);
        }
    }
    return dp(Eigen::Index(m), Eigen::Index(n)) + lambda * static_cast<double>(n - m);
}

PathAlignmentResult sem_path(const Taxonomy& expert, const Taxonomy& model, const AlignmentSet& alignment,
                             double lambda, const Similarity& sim) {
    const auto expert_paths = ancestor_path_index(expert);
    const auto model_paths = ancestor_path_index(model);

    PathAlignmentResult r;
    double total = 0.0;
    for (const auto& pair : alignment.pairs) {
        auto e = expert_paths.find(pair.expert);
        auto m = model_paths.find(pair.model);
        if (e == expert_paths.end() || m == model_paths.end()) continue;
        double best = std::numeric_limits<double>::infinity();
        for (const auto& sp : e->second)
            for (const auto& mp : m->second) best = std::min(best, sem_path_cost(sp, mp, lambda, sim));
        r.per_paper_costs[pair.expert] = best;
        total += 1.0 / (1.0 + best);
        ++r.aligned_count;
    }
    if (r.aligned_count > 0) r.sem_path = total / static_cast<double>(r.aligned_count);
    return r;
}

} // namespace taxoeval
