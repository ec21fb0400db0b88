#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace closurelab {

// A set of universe elements. Stored sorted and duplicate-free, so two
// equal sets compare equal regardless of construction order.
class ElemSet {
public:
    ElemSet() = default;
    ElemSet(std::initializer_list<int> xs) : elems_(xs) { normalize(); }
    explicit ElemSet(std::vector<int> xs) : elems_(std::move(xs)) { normalize(); }

    // {0, 1, ..., n-1}
    static ElemSet range(int n);

    bool contains(int x) const;
    // Returns true if x was not already present.
    bool insert(int x);
    bool insert_all(const ElemSet& other);

    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }

    bool subset_of(const ElemSet& other) const;
    ElemSet set_union(const ElemSet& other) const;
    ElemSet set_intersect(const ElemSet& other) const;
    ElemSet set_minus(const ElemSet& other) const;
    ElemSet with(int x) const;

    const std::vector<int>& elems() const { return elems_; }
    std::vector<int>::const_iterator begin() const { return elems_.begin(); }
    std::vector<int>::const_iterator end() const { return elems_.end(); }

    bool operator==(const ElemSet&) const = default;
    // Lexicographic on the sorted element list; used for map/set keys.
    bool operator<(const ElemSet& other) const { return elems_ < other.elems_; }

    // "{0, 1, 2}"; the empty set prints as "∅".
    std::string to_string() const;

private:
    void normalize();
    std::vector<int> elems_;
};

// All subsets of {0..n-1} with at most max_size elements, ordered by
// size then lexicographically. ∅ comes first.
std::vector<ElemSet> subsets_up_to(int n, int max_size);

// Parses "0,2,5" (or "" for ∅) into an ElemSet. Throws std::runtime_error
// on malformed input.
ElemSet parse_elem_set(const std::string& text);

}  // namespace closurelab
