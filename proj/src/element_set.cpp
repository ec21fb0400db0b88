#include "closurelab/element_set.hpp"

#include <algorithm>
#include <stdexcept>

namespace closurelab {

void ElemSet::normalize() {
    std::sort(elems_.begin(), elems_.end());
    elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

ElemSet ElemSet::range(int n) {
    ElemSet s;
    s.elems_.reserve(static_cast<std::size_t>(n > 0 ? n : 0));
    for (int i = 0; i < n; ++i) s.elems_.push_back(i);
    return s;
}

bool ElemSet::contains(int x) const {
    return std::binary_search(elems_.begin(), elems_.end(), x);
}

bool ElemSet::insert(int x) {
    auto it = std::lower_bound(elems_.begin(), elems_.end(), x);
    if (it != elems_.end() && *it == x) return false;
    elems_.insert(it, x);
    return true;
}

bool ElemSet::insert_all(const ElemSet& other) {
    bool changed = false;
    for (int x : other.elems_) changed |= insert(x);
    return changed;
}

bool ElemSet::subset_of(const ElemSet& other) const {
    return std::includes(other.elems_.begin(), other.elems_.end(),
                         elems_.begin(), elems_.end());
}

ElemSet ElemSet::set_union(const ElemSet& other) const {
    ElemSet out;
    std::set_union(elems_.begin(), elems_.end(), other.elems_.begin(),
                   other.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

ElemSet ElemSet::set_intersect(const ElemSet& other) const {
    ElemSet out;
    std::set_intersection(elems_.begin(), elems_.end(), other.elems_.begin(),
                          other.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

ElemSet ElemSet::set_minus(const ElemSet& other) const {
    ElemSet out;
    std::set_difference(elems_.begin(), elems_.end(), other.elems_.begin(),
                        other.elems_.end(), std::back_inserter(out.elems_));
    return out;
}

ElemSet ElemSet::with(int x) const {
    ElemSet out = *this;
    out.insert(x);
    return out;
}

std::string ElemSet::to_string() const {
    if (elems_.empty()) return "∅";
    std::string out = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ", ";
        out += std::to_string(elems_[i]);
    }
    out += "}";
    return out;
}

namespace {

void subsets_rec(int n, int size, int next, std::vector<int>& cur,
                 std::vector<ElemSet>& out) {
    if (static_cast<int>(cur.size()) == size) {
        out.push_back(ElemSet(cur));
        return;
    }
    int missing = size - static_cast<int>(cur.size());
    for (int x = next; x <= n - missing; ++x) {
        cur.push_back(x);
        subsets_rec(n, size, x + 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<ElemSet> subsets_up_to(int n, int max_size) {
    std::vector<ElemSet> out;
    if (max_size > n) max_size = n;
    std::vector<int> cur;
    for (int size = 0; size <= max_size; ++size) {
        subsets_rec(n, size, 0, cur, out);
    }
    return out;
}

ElemSet parse_elem_set(const std::string& text) {
    ElemSet out;
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        std::size_t start = i;
        while (i < text.size() && text[i] >= '0' && text[i] <= '9') ++i;
        if (i == start) throw std::runtime_error("malformed element list: '" + text + "'");
        out.insert(std::stoi(text.substr(start, i - start)));
        skip_ws();
        if (i < text.size()) {
            if (text[i] != ',') throw std::runtime_error("malformed element list: '" + text + "'");
            ++i;
            skip_ws();
            if (i == text.size()) throw std::runtime_error("malformed element list: '" + text + "'");
        }
    }
    return out;
}

}  // namespace closurelab
