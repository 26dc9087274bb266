#pragma once

#include <cstdint>
#include <numeric>
#include <vector>

namespace perc {

// Disjoint sets over dense integer ids, union by rank + path halving.
class DisjointSets {
public:
    explicit DisjointSets(int n = 0) { reset(n); }

    void reset(int n) {
        parent_.resize(static_cast<size_t>(n));
        std::iota(parent_.begin(), parent_.end(), 0);
        rank_.assign(static_cast<size_t>(n), 0);
        components_ = n;
    }

    int find(int x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    // Returns true when two components were merged.
    bool unite(int a, int b) {
        int ra = find(a);
        int rb = find(b);
        if (ra == rb) return false;
        if (rank_[ra] < rank_[rb]) std::swap(ra, rb);
        parent_[rb] = ra;
        if (rank_[ra] == rank_[rb]) ++rank_[ra];
        --components_;
        return true;
    }

    bool connected(int a, int b) { return find(a) == find(b); }

    int components() const { return components_; }
    int size() const { return static_cast<int>(parent_.size()); }

private:
    std::vector<int> parent_;
    std::vector<uint8_t> rank_;
    int components_ = 0;
};

} // namespace perc
