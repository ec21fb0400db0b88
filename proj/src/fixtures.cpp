#include "closurelab/fixtures.hpp"

#include <stdexcept>

namespace closurelab {

namespace {

void require_positive(const std::vector<int>& params, const std::string& kind) {
    if (params.empty()) throw std::runtime_error(kind + ": missing parameters");
    for (int p : params) {
        if (p <= 0) throw std::runtime_error(kind + ": size parameters must be positive");
    }
}

std::string join_params(const std::vector<int>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += "_";
        out += std::to_string(params[i]);
    }
    return out;
}

}  // namespace

Structure make_equivalence(const std::vector<int>& class_sizes) {
    require_positive(class_sizes, "equivalence");
    Structure s;
    s.name = "equivalence_" + join_params(class_sizes);
    s.signature.relations.push_back({"E", 2});
    auto& tuples = s.interpretation["E"];
    int base = 0;
    for (int size : class_sizes) {
        for (int i = 0; i < size; ++i) {
            for (int j = 0; j < size; ++j) {
                tuples.insert({base + i, base + j});
            }
        }
        base += size;
    }
    s.size = base;
    return s;
}

Structure make_complete_bipartite(int n, int m, int copies) {
    require_positive({n, m, copies}, "complete-bipartite");
    Structure s;
    s.name = "bipartite_" + join_params({n, m, copies});
    s.signature.relations.push_back({"R", 2});
    auto& tuples = s.interpretation["R"];
    for (int c = 0; c < copies; ++c) {
        int base = c * (n + m);
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < m; ++v) {
                tuples.insert({base + u, base + n + v});
                tuples.insert({base + n + v, base + u});
            }
        }
    }
    s.size = copies * (n + m);
    return s;
}

Structure make_cyclic_order(int n) {
    if (n < 3) throw std::runtime_error("cyclic-order: need n >= 3");
    Structure s;
    s.name = "cyclic_order_" + std::to_string(n);
    s.signature.relations.push_back({"C", 3});
    s.size = n;
    auto& tuples = s.interpretation["C"];
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            for (int c = 0; c < n; ++c) {
                if (a == b || b == c || a == c) continue;
                int db = (b - a + n) % n;
                int dc = (c - a + n) % n;
                if (db < dc) tuples.insert({a, b, c});
            }
        }
    }
    return s;
}

Structure make_linear_order(int n) {
    require_positive({n}, "linear-order");
    Structure s;
    s.name = "linear_order_" + std::to_string(n);
    s.signature.relations.push_back({"Lt", 2});
    s.size = n;
    auto& tuples = s.interpretation["Lt"];
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) tuples.insert({i, j});
    }
    return s;
}

Structure make_hypergraph_tree(int class_size, int colors, int depth) {
    require_positive({class_size, colors}, "colored-hypergraph-tree");
    if (depth < 0) throw std::runtime_error("colored-hypergraph-tree: depth must be >= 0");
    if (colors < 2) throw std::runtime_error("colored-hypergraph-tree: need at least 2 colors");

    // classes[c] lists the explicit classes of color c+1.
    std::vector<std::vector<std::vector<int>>> classes(colors);
    int next = 0;

    struct Pending {
        int element;
        int introduced_by;  // color index that created the element
    };
    std::vector<Pending> frontier;

    std::vector<int> root;
    for (int i = 0; i < class_size; ++i) root.push_back(next++);
    classes[0].push_back(root);
    for (int e : root) frontier.push_back({e, 0});

    for (int level = 1; level <= depth; ++level) {
        std::vector<Pending> next_frontier;
        for (const Pending& p : frontier) {
            for (int c = 0; c < colors; ++c) {
                if (c == p.introduced_by) continue;
                std::vector<int> cls{p.element};
                for (int i = 1; i < class_size; ++i) {
                    cls.push_back(next);
                    next_frontier.push_back({next, c});
                    ++next;
                }
                classes[c].push_back(cls);
            }
        }
        frontier = std::move(next_frontier);
    }

    Structure s;
    s.name = "hypergraph_tree_" + join_params({class_size, colors, depth});
    s.size = next;
    for (int c = 0; c < colors; ++c) {
        std::string rname = "E" + std::to_string(c + 1);
        s.signature.relations.push_back({rname, 2});
        auto& tuples = s.interpretation[rname];
        // Every element lies in exactly one E_i-class; uncovered ones are
        // singletons, so E_i is reflexive on the whole universe.
        std::vector<bool> covered(static_cast<std::size_t>(next), false);
        for (const auto& cls : classes[c]) {
            for (int a : cls) {
                covered[static_cast<std::size_t>(a)] = true;
                for (int b : cls) tuples.insert({a, b});
            }
        }
        for (int a = 0; a < next; ++a) {
            if (!covered[static_cast<std::size_t>(a)]) tuples.insert({a, a});
        }
    }
    return s;
}

Structure generate_fixture(const std::string& kind, const std::vector<int>& params) {
    auto want = [&](std::size_t k) {
        if (params.size() != k) {
            throw std::runtime_error(kind + ": expected " + std::to_string(k) +
                                     " parameters, got " + std::to_string(params.size()));
        }
    };
    if (kind == "equivalence") {
        require_positive(params, kind);
        return make_equivalence(params);
    }
    if (kind == "complete-bipartite") {
        want(3);
        return make_complete_bipartite(params[0], params[1], params[2]);
    }
    if (kind == "cyclic-order") {
        want(1);
        return make_cyclic_order(params[0]);
    }
    if (kind == "linear-order") {
        want(1);
        return make_linear_order(params[0]);
    }
    if (kind == "colored-hypergraph-tree") {
        want(3);
        return make_hypergraph_tree(params[0], params[1], params[2]);
    }
    throw std::runtime_error("unknown fixture kind '" + kind + "'");
}

}  // namespace closurelab
