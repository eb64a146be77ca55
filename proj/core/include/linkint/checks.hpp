#pragma once

#include "linkint/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace linkint {

/// Outcome of one identity suite.
struct CheckReport {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    int cases = 0;
};

/// Names accepted by run_check().
const std::vector<std::string>& check_names();

/// Runs a named identity suite:
///   invariance     rotation invariance of angle, norms, and both brackets (1e-10)
///   pullback       pulled-back volume form on a curve pair in R^3 and a 1/2-sphere pair in R^4 (1e-5)
///   ray-reduction  random ray integrals vs the kernel formula, plus the 1/8 instance (1e-8)
///   omega          quadrature vs closed form of Omega_{1,1} on 1000 angles (1e-10)
///   fact1          Omega_{k,l}(pi/2) and the cos/sin integral vs sphere volumes, k, l <= 5 (1e-10)
/// `samples` is the number of random cases where a suite draws them.
/// Throws std::invalid_argument on an unknown name.
CheckReport run_check(const std::string& name, std::uint64_t seed, int samples);

/// Haar-distributed rotation in SO(N).
SquareMat random_rotation(int N, std::mt19937_64& rng);

}  // namespace linkint
