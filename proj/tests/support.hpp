#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "orb/mesh.hpp"

namespace support {

using orb::Triangulation;
using orb::Vid;

// Grows a random connected set of triangles; returns it when both it and its
// complement are manifolds, otherwise an empty list.
std::vector<int> random_region(const Triangulation& t, std::mt19937_64& rng) {
    const int n = t.num_simplices();
    std::uniform_int_distribution<int> pick(0, n - 1);
    std::vector<char> in(n, 0);
    std::vector<int> region{pick(rng)};
    in[region[0]] = 1;
    const int target = std::uniform_int_distribution<int>(1, n - 1)(rng);
    while (static_cast<int>(region.size()) < target) {
        std::vector<int> frontier;
        for (int i = 0; i < n; ++i) {
            if (in[i]) continue;
            for (int r : region) {
                int shared = 0;
                for (Vid v : t.simplices()[i])
                    shared += std::count(t.simplices()[r].begin(), t.simplices()[r].end(), v);
                if (shared == 2) { frontier.push_back(i); break; }
            }
        }
        if (frontier.empty()) break;
        int next = frontier[std::uniform_int_distribution<size_t>(0, frontier.size() - 1)(rng)];
        in[next] = 1;
        region.push_back(next);
    }
    return region;
}

}  // namespace support
