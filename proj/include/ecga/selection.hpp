// selection.hpp — s-wise tournament selection.

#pragma once

#include <cstddef>

#include "ecga/genome.hpp"
#include "ecga/random.hpp"

namespace ecga {

enum class Replacement { without, with };

struct SelectionConfig {
    std::size_t tournament_size = 8;  // s
    Replacement replacement = Replacement::without;
};

// Returns a selected population of the same size n.
//
// Without replacement (default): s shuffled passes over the population,
// each pass partitioned into n/s groups of s, emitting every group's
// fitness maximum.  Requires s | n; every member then enters exactly s
// tournaments and the best member wins all of its s.
//
// With replacement: n independent tournaments of s uniform draws.
//
// Fitness ties are broken uniformly at random.
Population tournament_select(const Population& pop, const SelectionConfig& cfg,
                             RandomSource& rng);

}  // namespace ecga
