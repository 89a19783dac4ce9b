#include "class_system.hpp"

#include <algorithm>
#include <map>

namespace semnet::detail {

ClassIndex build_classes(const std::vector<std::uint64_t>& residual_degree,
                         const std::vector<bool>& active) {
    ClassIndex idx;
    idx.node_class.assign(residual_degree.size(), UINT32_MAX);
    std::map<std::uint64_t, std::uint32_t> by_degree;
    for (std::size_t i = 0; i < residual_degree.size(); ++i) {
        if (!active[i]) continue;
        auto [it, inserted] = by_degree.emplace(residual_degree[i],
                                                static_cast<std::uint32_t>(by_degree.size()));
        if (inserted) {
            idx.degree.push_back(static_cast<double>(residual_degree[i]));
            idx.count.push_back(0.0);
        }
        idx.node_class[i] = it->second;
        idx.count[it->second] += 1.0;
    }
    return idx;
}

double solve_increasing(const std::function<double(double)>& h, double target, double x0) {
    double lo = x0, hi = x0;
    double flo = h(lo), fhi = flo;
    for (int step = 0; flo > target && step < 2000; ++step) {
        hi = lo;
        lo *= 0.5;
        flo = h(lo);
    }
    for (int step = 0; fhi < target && step < 2000; ++step) {
        lo = hi;
        hi *= 2.0;
        fhi = h(hi);
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (h(mid) < target)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace semnet::detail
