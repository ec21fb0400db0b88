#include "closurelab/algebraic_sets.hpp"

#include <algorithm>

namespace closurelab {

AlgebraicSetReport is_A_algebraic(const Structure& s, const ElemSet& a, const ElemSet& b,
                                  const std::vector<ParamFormula>& delta,
                                  const AutomorphismLimits& limits) {
    AlgebraicSetReport report;
    report.base = a;
    report.target = b;

    OrbitPartition p = orbits(s, a, limits);
    report.is_invariant = true;
    int max_orbit = 0;
    for (const auto& block : p.blocks) {
        ElemSet inter = block.set_intersect(b);
        if (inter.empty()) continue;
        if (inter != block) {
            report.is_invariant = false;
            report.orbit_decomposition.clear();
            break;
        }
        report.orbit_decomposition.push_back(block);
        max_orbit = std::max(max_orbit, static_cast<int>(block.size()));
    }
    if (report.is_invariant) report.deg_alg_u = max_orbit;

    if (!delta.empty()) {
        // Search for an instance whose solution set is exactly b.
        bool found = false;
        for (const auto& pf : delta) {
            std::size_t k = pf.param_vars.size();
            std::vector<std::size_t> idx(k, 0);
            const auto& pool = a.elems();
            if (k > 0 && pool.empty()) continue;
            for (;;) {
                std::vector<int> params(k);
                for (std::size_t i = 0; i < k; ++i) params[i] = pool[idx[i]];
                if (solutions(s, pf, params) == b) {
                    report.witness = std::make_pair(pf, params);
                    found = true;
                    break;
                }
                std::size_t pos = k;
                while (pos > 0) {
                    if (++idx[pos - 1] < pool.size()) break;
                    idx[pos - 1] = 0;
                    --pos;
                }
                if (pos == 0) break;
            }
            if (found) break;
        }
    }
    return report;
}

std::vector<ElemSet> enumerate_algebraic_sets(const Structure& s, const ElemSet& a,
                                              int max_size, const AutomorphismLimits& limits) {
    OrbitPartition p = orbits(s, a, limits);
    std::vector<ElemSet> out;
    // Depth-first over orbit blocks, pruning once the size budget is spent.
    std::function<void(std::size_t, const ElemSet&, int)> rec =
        [&](std::size_t next, const ElemSet& cur, int budget) {
            out.push_back(cur);
            for (std::size_t i = next; i < p.blocks.size(); ++i) {
                int sz = static_cast<int>(p.blocks[i].size());
                if (sz > budget) continue;
                rec(i + 1, cur.set_union(p.blocks[i]), budget - sz);
            }
        };
    rec(0, ElemSet{}, max_size);
    std::sort(out.begin(), out.end(), [](const ElemSet& x, const ElemSet& y) {
        if (x.size() != y.size()) return x.size() < y.size();
        return x < y;
    });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::optional<int> deg_alg_u(const Structure& s, const ElemSet& a, const ElemSet& b,
                             const AutomorphismLimits& limits) {
    return is_A_algebraic(s, a, b, {}, limits).deg_alg_u;
}

int DEG_alg_u(const Structure& s, const ElemSet& a, int scope_bound,
              const AutomorphismLimits& limits) {
    OrbitPartition p = orbits(s, a, limits);
    int best = 0;
    for (const auto& block : p.blocks) {
        int sz = static_cast<int>(block.size());
        if (sz <= scope_bound) best = std::max(best, sz);
    }
    return best;
}

}  // namespace closurelab
