#pragma once

#include <string>
#include <vector>

#include "closurelab/structure.hpp"

namespace closurelab {

// Equivalence relation E/2 made of full classes of the given sizes,
// classes laid out consecutively from element 0.
Structure make_equivalence(const std::vector<int>& class_sizes);

// `copies` disjoint copies of the complete bipartite graph K_{n,m}.
// Each copy occupies a contiguous block: first its n U-vertices, then
// its m V-vertices. Edge relation R/2 is symmetric.
Structure make_complete_bipartite(int n, int m, int copies);

// Ternary betweenness C(a,b,c): b strictly between a and c clockwise
// on the n-cycle 0 -> 1 -> ... -> n-1 -> 0.
Structure make_cyclic_order(int n);

// Strict linear order Lt/2 on a chain of n elements.
Structure make_linear_order(int n);

// Acyclic fragment of a hypergraph with `colors` equivalence relations
// E1..Ek: a root E1-class of `class_size` elements; at each level up to
// `depth`, every element introduced at the previous level gets a fresh
// class of every color other than the one that introduced it. Each E_i
// is an equivalence relation on the whole universe (elements outside
// explicit classes sit in singleton classes). Pairwise class
// intersections have at most one element and the hypergraph is acyclic;
// leaf elements of the fragment belong to one explicit class only.
Structure make_hypergraph_tree(int class_size, int colors, int depth);

// Dispatch by kind name: equivalence (params = class sizes),
// complete-bipartite (n, m, copies), cyclic-order (n), linear-order (n),
// colored-hypergraph-tree (class_size, colors, depth).
// Throws std::runtime_error on unknown kind or bad parameters.
Structure generate_fixture(const std::string& kind, const std::vector<int>& params);

}  // namespace closurelab
