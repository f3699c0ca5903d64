#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "trafficlab/squared_chain.hpp"

namespace trafficlab {

/// Admissible π on the squared chain with every GCC(T,π,s) a tree and, when
/// `require_empty_j`, J_π = ∅. Strings are fixed in order and a tree test runs
/// as soon as all strings it depends on are chosen.
std::vector<MultiPartition> inconsistency_search(const ChainSpec& spec, bool require_empty_j, const Guards& guards = {});

/// Every reduced chain spec with at most `max_strings` strings and total block
/// length at most `max_length`, up to relabeling colors and permuting strings.
/// Colors are exactly those used by the word; each string is a nonempty color
/// set and the color graph is the one the assignment induces.
std::vector<ChainSpec> small_chain_specs(int max_strings, int max_length);

/// Every reduced chain spec over a fixed assignment (and the color graph it
/// induces) with total block length at most `max_length`.
std::vector<ChainSpec> chain_specs_for(const StringAssignment& a, int max_length);

std::string describe(const ChainSpec& spec);

/// ‖Δ[(Y_1 - ΔY_1) ⋯ (Y_k - ΔY_k)]‖₂² for the draw (seed, N, sample). Uses the
/// permutation fast path when Λ is the identity and X is unsigned.
double chain_norm_sample(const ChainSpec& spec, int n, std::uint64_t seed, int sample, const Guards& guards = {});

struct ConvergencePoint {
  int n = 0;
  int samples = 0;
  double mean = 0;
  double variance = 0;  // unbiased sample variance
  double stderr_mean = 0;
};

struct ConvergenceReport {
  std::vector<ConvergencePoint> points;
  double slope = 0;          // least squares of log mean against log N
  bool nonincreasing = true;  // mean[i+1] <= mean[i] + 2·sqrt(se_i² + se_{i+1}²)
};

/// Samples are split across `workers` threads; results do not depend on it.
ConvergenceReport convergence_run(const ChainSpec& spec, const std::vector<int>& ns, int samples, std::uint64_t seed,
                                  int workers = 1, const Guards& guards = {});

double log_log_slope(const std::vector<int>& ns, const std::vector<double>& values);

}  // namespace trafficlab
