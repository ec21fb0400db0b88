#include "closurelab/automorphism.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace closurelab {

const ElemSet& OrbitPartition::block_of(int element) const {
    for (const auto& b : blocks) {
        if (b.contains(element)) return b;
    }
    throw std::runtime_error("element " + std::to_string(element) + " not in any block");
}

std::size_t OrbitPartition::max_block_size() const {
    std::size_t m = 0;
    for (const auto& b : blocks) m = std::max(m, b.size());
    return m;
}

bool is_automorphism(const Structure& s, const Permutation& p) {
    if (static_cast<int>(p.size()) != s.size) return false;
    std::vector<bool> seen(p.size(), false);
    for (int img : p) {
        if (img < 0 || img >= s.size || seen[static_cast<std::size_t>(img)]) return false;
        seen[static_cast<std::size_t>(img)] = true;
    }
    for (const auto& [cname, value] : s.constant_values) {
        (void)cname;
        if (p[static_cast<std::size_t>(value)] != value) return false;
    }
    for (const auto& [rname, tuples] : s.interpretation) {
        for (const auto& t : tuples) {
            std::vector<int> mapped;
            mapped.reserve(t.size());
            for (int e : t) mapped.push_back(p[static_cast<std::size_t>(e)]);
            if (!tuples.count(mapped)) return false;
        }
        // A bijection mapping the tuple set into itself maps it onto itself,
        // so the inverse direction needs no separate pass.
    }
    return true;
}

namespace {

struct SearchContext {
    const Structure& s;
    // Per relation: the tuple set and, per element, a degree vector
    // (tuple count at each position). Candidates must match exactly.
    std::vector<const std::set<std::vector<int>>*> relations;
    std::vector<int> arities;
    std::vector<std::vector<std::vector<int>>> degree;  // [rel][elem][pos]
    std::vector<int> image;     // partial map, -1 = unassigned
    std::vector<bool> used;     // image values taken
    const std::function<bool(const Permutation&)>& fn;
    bool stopped = false;
};

// Checks every tuple (and preimage tuple) touching `elem` whose entries are
// all assigned: membership must be preserved both ways.
bool consistent(SearchContext& ctx, int elem) {
    for (std::size_t r = 0; r < ctx.relations.size(); ++r) {
        const auto& tuples = *ctx.relations[r];
        int arity = ctx.arities[r];
        std::vector<int> assigned;
        for (int e = 0; e < ctx.s.size; ++e) {
            if (ctx.image[static_cast<std::size_t>(e)] >= 0) assigned.push_back(e);
        }
        // Enumerate assigned tuples containing elem.
        std::vector<int> idx(static_cast<std::size_t>(arity), 0);
        std::vector<int> tuple(static_cast<std::size_t>(arity));
        for (;;) {
            bool contains_elem = false;
            for (int i = 0; i < arity; ++i) {
                tuple[static_cast<std::size_t>(i)] = assigned[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])];
                if (tuple[static_cast<std::size_t>(i)] == elem) contains_elem = true;
            }
            if (contains_elem) {
                std::vector<int> mapped(static_cast<std::size_t>(arity));
                for (int i = 0; i < arity; ++i) {
                    mapped[static_cast<std::size_t>(i)] =
                        ctx.image[static_cast<std::size_t>(tuple[static_cast<std::size_t>(i)])];
                }
                if (tuples.count(tuple) != tuples.count(mapped)) return false;
            }
            int pos = arity - 1;
            while (pos >= 0) {
                if (++idx[static_cast<std::size_t>(pos)] <
                    static_cast<int>(assigned.size())) {
                    break;
                }
                idx[static_cast<std::size_t>(pos)] = 0;
                --pos;
            }
            if (pos < 0) break;
        }
    }
    return true;
}

void search(SearchContext& ctx, int elem) {
    if (ctx.stopped) return;
    if (elem == ctx.s.size) {
        if (!ctx.fn(ctx.image)) ctx.stopped = true;
        return;
    }
    if (ctx.image[static_cast<std::size_t>(elem)] >= 0) {
        search(ctx, elem + 1);
        return;
    }
    for (int cand = 0; cand < ctx.s.size; ++cand) {
        if (ctx.used[static_cast<std::size_t>(cand)]) continue;
        bool ok = true;
        for (std::size_t r = 0; r < ctx.relations.size() && ok; ++r) {
            if (ctx.degree[r][static_cast<std::size_t>(elem)] !=
                ctx.degree[r][static_cast<std::size_t>(cand)]) {
                ok = false;
            }
        }
        if (!ok) continue;
        ctx.image[static_cast<std::size_t>(elem)] = cand;
        ctx.used[static_cast<std::size_t>(cand)] = true;
        if (consistent(ctx, elem)) search(ctx, elem + 1);
        ctx.image[static_cast<std::size_t>(elem)] = -1;
        ctx.used[static_cast<std::size_t>(cand)] = false;
        if (ctx.stopped) return;
    }
}

}  // namespace

void for_each_stabilizer(const Structure& s, const ElemSet& fixed,
                         const std::function<bool(const Permutation&)>& fn,
                         const AutomorphismLimits& limits) {
    if (s.size > limits.max_universe) {
        throw std::runtime_error("automorphism search rejected: universe size " +
                                 std::to_string(s.size) + " exceeds cap " +
                                 std::to_string(limits.max_universe));
    }
    for (int e : fixed) {
        if (e < 0 || e >= s.size) {
            throw std::runtime_error("fixed element " + std::to_string(e) +
                                     " is outside the universe");
        }
    }
    SearchContext ctx{s, {}, {}, {}, {}, {}, fn};
    for (const auto& r : s.signature.relations) {
        auto it = s.interpretation.find(r.name);
        if (it == s.interpretation.end()) continue;
        ctx.relations.push_back(&it->second);
        ctx.arities.push_back(r.arity);
        std::vector<std::vector<int>> deg(static_cast<std::size_t>(s.size),
                                          std::vector<int>(static_cast<std::size_t>(r.arity), 0));
        for (const auto& t : it->second) {
            for (int pos = 0; pos < r.arity; ++pos) {
                deg[static_cast<std::size_t>(t[static_cast<std::size_t>(pos)])]
                   [static_cast<std::size_t>(pos)]++;
            }
        }
        ctx.degree.push_back(std::move(deg));
    }
    ctx.image.assign(static_cast<std::size_t>(s.size), -1);
    ctx.used.assign(static_cast<std::size_t>(s.size), false);
    for (int e : fixed) {
        ctx.image[static_cast<std::size_t>(e)] = e;
        ctx.used[static_cast<std::size_t>(e)] = true;
    }
    for (const auto& [cname, value] : s.constant_values) {
        (void)cname;
        if (ctx.image[static_cast<std::size_t>(value)] == -1) {
            ctx.image[static_cast<std::size_t>(value)] = value;
            ctx.used[static_cast<std::size_t>(value)] = true;
        }
    }
    search(ctx, 0);
}

std::vector<Permutation> stabilizer_group(const Structure& s, const ElemSet& fixed,
                                          const AutomorphismLimits& limits) {
    std::vector<Permutation> out;
    for_each_stabilizer(s, fixed,
                        [&](const Permutation& p) {
                            out.push_back(p);
                            return true;
                        },
                        limits);
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void merge(int a, int b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
};

}  // namespace

OrbitPartition orbits(const Structure& s, const ElemSet& fixed,
                      const AutomorphismLimits& limits) {
    UnionFind uf(s.size);
    for_each_stabilizer(s, fixed,
                        [&](const Permutation& p) {
                            for (int e = 0; e < s.size; ++e) {
                                uf.merge(e, p[static_cast<std::size_t>(e)]);
                            }
                            return true;
                        },
                        limits);
    std::map<int, ElemSet> by_root;
    for (int e = 0; e < s.size; ++e) by_root[uf.find(e)].insert(e);
    OrbitPartition out;
    out.base = fixed;
    for (auto& [root, block] : by_root) {
        (void)root;
        out.blocks.push_back(std::move(block));
    }
    return out;
}

bool is_rigid(const Structure& s, const AutomorphismLimits& limits) {
    int count = 0;
    for_each_stabilizer(s, ElemSet{},
                        [&](const Permutation&) {
                            ++count;
                            return count < 2;
                        },
                        limits);
    return count == 1;
}

}  // namespace closurelab
