#ifndef TREEFLIP_SWEEP_HPP_
#define TREEFLIP_SWEEP_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "treeflip/geometry.hpp"

namespace treeflip {

enum class SweepMode { general, careful, caterpillar };

const char* to_string(SweepMode m);
/// Throws InputError for unknown names.
SweepMode parse_sweep_mode(const std::string& s);

struct SweepConfig {
    int n = 4;
    SweepMode mode = SweepMode::careful;
    /// Uniformly sampled ordered pairs instead of all of them.
    std::optional<std::size_t> samples;
    std::uint64_t seed = 0;
    bool compare_oracle = true;
    std::size_t max_failures = 10;
};

struct SweepFailure {
    Tree t;
    Tree tp;
    std::string message;
};

struct SweepReport {
    int n = 0;
    SweepMode mode = SweepMode::careful;
    std::size_t trees = 0;
    std::size_t pairs = 0;
    std::size_t violations = 0;
    std::size_t fallbacks = 0;      ///< pairs on which the caterpillar constructor fell back
    std::size_t oracle_optimal = 0; ///< pairs whose length equals the oracle distance
    std::size_t max_length = 0;
    std::size_t max_excess = 0;     ///< largest length - oracle distance
    std::vector<SweepFailure> failures;

    /// No violations, and in caterpillar mode no fallbacks.
    bool ok() const { return violations == 0 && (mode != SweepMode::caterpillar || fallbacks == 0); }
};

/// Runs the constructor of the given mode on every ordered pair of trees (pairs with
/// a separated caterpillar T in caterpillar mode) and checks verification, the
/// constructor's bound, length ≥ d and, with compare_oracle, length ≥ flip distance.
SweepReport run_sweep(const SweepConfig& config);

} // namespace treeflip

#endif
