#include "taxoeval/soft_cardinality.hpp"

#include "taxoeval/error.hpp"

namespace taxoeval {

LabelList collect_labels(const CategoryHierarchy& h) { return category_labels(h.root); }

Eigen::MatrixXd similarity_matrix(const LabelList& labels, const Similarity& sim) {
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd s(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        s(i, i) = sim(labels[std::size_t(i)], labels[std::size_t(i)]);
        for (Eigen::Index j = i + 1; j < n; ++j) {
            s(i, j) = sim(labels[std::size_t(i)], labels[std::size_t(j)]);
            s(j, i) = s(i, j);
        }
    }
    return s;
}

double soft_cardinality(const LabelList& a, const Similarity& sim) {
    return soft_cardinality(similarity_matrix(a, sim));
}

SoftScores nsr_nsp_f1(const LabelList& a, const LabelList& b, const Similarity& sim) {
    if (a.empty() || b.empty()) throw ValidationError("soft-cardinality scores need non-empty label lists");
    LabelList both = a;
    both.insert(both.end(), b.begin(), b.end());

    // One matrix over the concatenation; its diagonal blocks serve c(A) and c(B).
    const Eigen::MatrixXd s = similarity_matrix(both, sim);
    const auto na = static_cast<Eigen::Index>(a.size());
    const auto nb = static_cast<Eigen::Index>(b.size());
    const double ca = soft_cardinality(s.topLeftCorner(na, na));
    const double cb = soft_cardinality(s.bottomRightCorner(nb, nb));
    const double cab = soft_cardinality(s);

    SoftScores out;
    const double overlap = ca + cb - cab;
    out.nsr = overlap / ca;
    out.nsp = overlap / cb;
    const double sum = out.nsr + out.nsp;
    out.soft_f1 = sum == 0.0 ? 0.0 : 2.0 * out.nsr * out.nsp / sum;
    return out;
}

} // namespace taxoeval
