#pragma once

// Constructors for the example functions: dictator, parity, majority,
// iterated 3-majority, tribes, clique containment and random functions.
// Exact tables at small arity, oracles beyond. Tribes block structure also
// yields closed-form influences and energy spectra at any size.

#include <cstdint>
#include <vector>

#include "noiselab/bitfunction.hpp"
#include "noiselab/estimate.hpp"

namespace noiselab::zoo {

enum class Kind { DICT, PAR, MAJ, ITER3MAJ, TRIBES, CLIQUE, RANDOM };

struct ZooSpec {
    Kind kind = Kind::DICT;
    int n = 1;            // arity (DICT, PAR, MAJ, TRIBES, RANDOM)
    int depth = 1;        // ITER3MAJ: arity = 3^depth
    int vertices = 5;     // CLIQUE: arity = C(vertices, 2)
    int clique_size = 3;  // CLIQUE
    std::uint64_t seed = 0;  // RANDOM
};

// DICT/PAR/MAJ/ITER3MAJ are PM1-valued; TRIBES and CLIQUE are ZO-valued
// indicators; RANDOM is PM1. Tables are materialized when arity <= 24.
BitFunction make(const ZooSpec& spec);

BitFunction dictator(int n);
BitFunction parity(int n);
BitFunction majority(int n);              // n odd
BitFunction iter3maj(int depth);          // arity 3^depth
BitFunction tribes(int n);                // ZO
BitFunction clique(int vertices, int k);  // ZO, arity C(vertices,2)
BitFunction random_function(int n, std::uint64_t seed);  // PM1 table

// Tribes block layout: blocks of length floor(log2 n - log2 log2 n), debris
// bits appended last with influence 0.
struct TribesLayout {
    int n = 0;
    int block_len = 1;
    int blocks = 0;
    int debris = 0;
};
TribesLayout tribes_layout(int n);

// Closed forms from the disjoint-block product structure; exact at any size.
double tribes_mean_zo(int n);                       // P(f = 1)
std::vector<double> tribes_influences_zo(int n);    // I_i, debris = 0
std::vector<double> tribes_energy_spectrum_zo(int n);  // E_f(m), m = 0..n

// Largest k with C(n,k) 2^{-C(k,2)} >= 1; the non-degenerate clique size.
int clique_tuning(int n_vertices);
double clique_expected_count_log2(int n_vertices, int k);  // log2 of C(n,k) 2^{-C(k,2)}

// MC estimate of a_k = P(iter3maj_k(omega) = 1 = iter3maj_k(omega_eps)) for
// each level 0..depth; approaches 1/4 for fixed eps > 0.
std::vector<Estimate> iter3maj_recursion_check(int depth, double eps, std::uint64_t trials,
                                               std::uint64_t seed);

// Exact recursion oracle for the same quantity: one step of the level map
// a -> P(MAJ3 agree on both copies), enumerated over the 4^3 joint patterns.
double iter3maj_agree_step(double a);

}  // namespace noiselab::zoo
