#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "sfscert/shs.hpp"

namespace testgen {

using DiscFamily = std::vector<std::pair<sfscert::ElementaryDiscType, int>>;

// A random non-crossing family: disc types are tried in random order and kept when the cut still
// succeeds, each with multiplicity 1..3, until max_types types are kept.
inline DiscFamily random_disc_family(std::mt19937& rng, const sfscert::BoundaryGraph& g,
                                     std::vector<sfscert::ElementaryDiscType> types, std::size_t max_types) {
    DiscFamily ds;
    std::shuffle(types.begin(), types.end(), rng);
    for (const auto& d : types) {
        DiscFamily trial = ds;
        trial.push_back({d, 1 + static_cast<int>(rng() % 3)});
        try {
            sfscert::cut_handle(g, trial);
            ds = std::move(trial);
        } catch (const sfscert::InputError&) {
        }
        if (ds.size() >= max_types) break;
    }
    return ds;
}

}  // namespace testgen
