#pragma once

#include <cmath>
#include <random>

#include "roengine/model.hpp"

namespace roengine::test_support {

/// Box with integer corners in a small window, so that overlap is frequent
/// and edge contact is common. Degenerate (point and line) boxes included.
inline GeoExtent random_lattice_box(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> lon(-12, 12);
    std::uniform_int_distribution<int> lat(-8, 8);
    int w = lon(rng), e = lon(rng), s = lat(rng), n = lat(rng);
    if (w > e) std::swap(w, e);
    if (s > n) std::swap(s, n);
    return {static_cast<double>(w), static_cast<double>(s), static_cast<double>(e), static_cast<double>(n)};
}

/// Two closed lattice boxes share a point iff they share a lattice point, so
/// scanning the lattice points of `a` decides the question exactly.
inline bool sampled_overlap(const GeoExtent& a, const GeoExtent& b) {
    for (auto x = a.west; x <= a.east; x += 1) {
        for (auto y = a.south; y <= a.north; y += 1) {
            if (b.west <= x && x <= b.east && b.south <= y && y <= b.north) return true;
        }
    }
    return false;
}

}  // namespace roengine::test_support
