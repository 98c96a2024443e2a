#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "crawford/space.hpp"

namespace crawford {

enum class Strategy { automatic, hilbert_sweep, multistart, grid_oracle };

/// The four extremal quantities the engine computes.
enum class Quantity { crawford, radius, minnorm, opnorm };

inline Extremum sense_of(Quantity q) {
    return q == Quantity::crawford || q == Quantity::minnorm ? Extremum::min : Extremum::max;
}

inline constexpr double kFastPathTol = 1e-8;
inline constexpr double kMultistartTol = 1e-6;

struct SolveOptions {
    Strategy strategy = Strategy::automatic;
    std::optional<double> tol;      // unset: kFastPathTol for closed forms, kMultistartTol for searches
    int starts = 32;                // local refinements per search
    int grid_resolution = 400;      // grid step pi / resolution per angular coordinate
    int grid_zoom = 2;              // local refinement levels around the best grid cells
    int sweep_samples = 720;        // angles in the Hilbert-space support sweep
    bool grid_cross_check = true;   // run the grid oracle alongside searches when it applies
    std::uint64_t seed = 0;
};

/// An extremal value with the state that witnesses it.
struct ComputeResult {
    double value = 0.0;
    State certificate;
    double witness_value = 0.0;  // |x*(Tx)| (or ||Tx||) at the certificate
    double residual = 0.0;       // |witness_value - value|
    bool attained = false;       // residual <= tol
    std::string method;
};

}  // namespace crawford
