#pragma once

#include <cstdint>
#include <vector>

#include "dks/graph.hpp"
#include "dks/token_graph.hpp"

namespace testsupport {

// Hand-entered hosts used across the suite.

// The 3-regular demo host on 6 vertices whose complement is a hexagon.
// Its densest 3-subsets are the triangles {0,1,3} and {2,4,5}.
dks::Graph demo_host();

dks::Graph cycle_graph(int n);
dks::Graph complete_graph(int n);
dks::Graph complete_bipartite(int a, int b);
dks::Graph petersen_graph();
// Circulant graph C_n(jumps): i ~ i +/- j (mod n) for each jump.
dks::Graph circulant_graph(int n, const std::vector<int>& jumps);
// Complete multipartite K_{2,2,...,2} on 2m vertices (complement of a
// perfect matching).
dks::Graph cocktail_party_graph(int m);

// Independent oracles, implemented without the library's own machinery
// wherever the library result is under test.

// Vertex connectivity via max-flow over split vertices, minimized over
// all non-adjacent pairs. Complete graphs return n - 1 by convention.
int vertex_connectivity(const dks::Graph& g);

// Dense row-stochastic one-step law of the classical dynamics on an
// explicit token graph: every (member, host-neighbor) pair is one arrow,
// arrows onto occupied targets stay put.
std::vector<std::vector<double>> classical_transition_matrix(const dks::Graph& g,
                                                             const dks::TokenGraph& tg);

// Left power iteration from the uniform vector until the sup-norm step
// change drops below tol. Throws if it fails to settle.
std::vector<double> power_iteration_fixed_point(const dks::TransitionMatrix& tm,
                                                double tol = 1e-13,
                                                int max_iterations = 400000);

// Upper quantile of the chi-squared distribution with df degrees of
// freedom (wraps boost::math).
double chi_square_quantile(int df, double probability);

}  // namespace testsupport
