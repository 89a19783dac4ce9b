#include <algorithm>

#include "semnet/core/errors.hpp"
#include "semnet/projection/project.hpp"

namespace semnet {

FdrSelection fdr_select(const std::vector<double>& pvalues, double alpha,
                        std::size_t m_hypotheses) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("fdr_select: alpha must lie in (0,1)");
    FdrSelection sel;
    sel.hypotheses = m_hypotheses == 0 ? pvalues.size() : m_hypotheses;
    if (pvalues.empty()) return sel;
    if (sel.hypotheses < pvalues.size())
        throw ConfigError("fdr_select: hypothesis count smaller than the p-value list");

    std::vector<std::size_t> order(pvalues.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return pvalues[a] < pvalues[b]; });

    // Step-up: largest rank r with p_(r) <= r * alpha / m. Ties at the cutoff
    // all satisfy the condition at their own rank, so selecting p <= p_(r)
    // and selecting the first r entries coincide.
    std::size_t r = 0;
    for (std::size_t rank = 1; rank <= order.size(); ++rank) {
        const double threshold =
            static_cast<double>(rank) * alpha / static_cast<double>(sel.hypotheses);
        if (pvalues[order[rank - 1]] <= threshold) r = rank;
    }
    sel.cutoff_rank = r;
    if (r == 0) return sel;
    sel.cutoff_pvalue = pvalues[order[r - 1]];
    for (std::size_t i = 0; i < pvalues.size(); ++i)
        if (pvalues[i] <= sel.cutoff_pvalue) sel.selected.push_back(i);
    return sel;
}

}  // namespace semnet
