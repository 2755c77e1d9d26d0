#pragma once

#include <cstddef>
#include <numeric>
#include <vector>

namespace cctopos {

/// Disjoint sets over 0..n-1. The root of every class is its least member,
/// which gives canonical representatives for free.
class UnionFind {
public:
    explicit UnionFind(std::size_t n) : _parent(n) { std::iota(_parent.begin(), _parent.end(), std::size_t{0}); }

    std::size_t find(std::size_t x)
    {
        while (_parent[x] != x) {
            _parent[x] = _parent[_parent[x]];
            x = _parent[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b)
    {
        a = find(a);
        b = find(b);
        if (a == b)
            return;
        if (a < b)
            _parent[b] = a;
        else
            _parent[a] = b;
    }

    [[nodiscard]] std::size_t size() const noexcept { return _parent.size(); }

private:
    std::vector<std::size_t> _parent;
};

} // namespace cctopos
