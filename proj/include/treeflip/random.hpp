#ifndef TREEFLIP_RANDOM_HPP_
#define TREEFLIP_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "treeflip/flips.hpp"
#include "treeflip/geometry.hpp"

namespace treeflip {

/// Number of valid flips out of t.
std::uint64_t count_valid_flips(const Tree& t);

/// Every valid flip out of t, ordered by added chord.
std::vector<Flip> valid_flips(const Tree& t);

/// A uniformly random valid flip out of t. Requires n ≥ 3.
Flip random_valid_flip(const Tree& t, std::mt19937_64& rng);

/// `steps` uniformly random flips from the star at p_1.
Tree random_walk_tree(int n, std::size_t steps, std::mt19937_64& rng);

/// Two independent walks from the star at p_1, seeded by `seed`.
ConvexInstance generate_random_instance(int n, std::uint64_t seed, std::size_t steps);

} // namespace treeflip

#endif
