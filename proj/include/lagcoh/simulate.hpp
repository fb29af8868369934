#pragma once

#include <cstdint>

#include "lagcoh/types.hpp"

namespace lagcoh {

enum class SourceKind { sinusoid_with_jitter, ar2_oscillator, white_noise };

std::string to_string(SourceKind kind);
SourceKind source_kind_from_string(const std::string& name);

// Generating process for the hidden source Z.
struct SourceSpec {
  SourceKind kind = SourceKind::sinusoid_with_jitter;
  std::size_t frequency_bin = 1;  // sinusoid / AR(2) peak location
  double damping = 0.95;          // AR(2) pole radius, in (0, 1)
  double amplitude = 1.0;
};

// Zero-lag blurring model: X = C Z + eps_x, Y = D Z + eps_y with a fresh
// source draw per segment. C is p x r, D is q x r.
struct BlurringScenario {
  MatrixXd mixing_c;
  MatrixXd mixing_d;
  SourceSpec source;
  double noise_std_x = 0.0;
  double noise_std_y = 0.0;
  std::size_t n_segments = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

// Ground-truth lagged coupling: X carries the source, Y the source delayed
// by lag_samples (circular within segment) scaled by coupling_gain, plus
// noise. Univariate on both sides.
struct LaggedCouplingScenario {
  std::size_t lag_samples = 0;
  double coupling_gain = 1.0;
  SourceSpec source;
  double noise_std = 0.0;
  std::size_t n_segments = 0;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
};

std::pair<SegmentedSeries, SegmentedSeries> generate_blurring(
    const BlurringScenario& scenario);

std::pair<SegmentedSeries, SegmentedSeries> generate_lagged(
    const LaggedCouplingScenario& scenario);

// All measures at the source bin for each SNR gain: C and D are scaled by
// the gain, data regenerated with the scenario seed, and the full univariate
// measure family evaluated. Requires a univariate (p = q = 1) scenario.
struct SnrSweepRow {
  double gain = 0.0;
  double coherence = 0.0;         // rho_G^2
  double lagged_coherence = 0.0;  // rho_GL^2
  double phase_sync = 0.0;        // PS
  double lagged_phase_sync = 0.0;
  double imag_coherency = 0.0;
  double pli = 0.0;
};

std::vector<SnrSweepRow> snr_sweep(const BlurringScenario& scenario,
                                   const std::vector<double>& gains);

namespace detail {
// Deterministic RNG used by all generators: splitmix64-seeded xoshiro-style
// stream with a hand-rolled Box-Muller normal, so output depends only on
// (scenario, seed), not on the standard library's distribution internals.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);
  std::uint64_t next_u64();
  double uniform();          // [0, 1)
  double normal();           // standard normal, Box-Muller
  Rng fork(std::uint64_t stream);  // independent substream

 private:
  std::uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};
}  // namespace detail

}  // namespace lagcoh
