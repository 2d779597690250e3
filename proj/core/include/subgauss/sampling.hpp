#pragma once

#include <random>
#include <vector>

#include "subgauss/params.hpp"

namespace subgauss {

// Samplers take the engine explicitly; there is no global random state.
using Engine = std::mt19937_64;

/// Beta variate as G_a / (G_a + G_b) with independent Gamma(a, 1), Gamma(b, 1).
double sample_beta(const BetaParams& params, Engine& rng);

/// Dirichlet vector by normalising independent Gamma(alpha_i, 1) draws.
std::vector<double> sample_dirichlet(const DirichletParams& params, Engine& rng);

}  // namespace subgauss
