#include "lagcoh/simulate.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "lagcoh/evaluate.hpp"
#include "lagcoh/spectral.hpp"

namespace lagcoh {

namespace detail {

namespace {
std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}
}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t sm = seed;
  for (auto& s : state_) s = splitmix64(sm);
}

std::uint64_t Rng::next_u64() {
  // xoshiro256**
  const std::uint64_t result = rotl(state_[1] * 5, 7) * 9;
  const std::uint64_t t = state_[1] << 17;
  state_[2] ^= state_[0];
  state_[3] ^= state_[1];
  state_[1] ^= state_[2];
  state_[0] ^= state_[3];
  state_[2] ^= t;
  state_[3] = rotl(state_[3], 45);
  return result;
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  have_spare_ = true;
  return r * std::cos(theta);
}

Rng Rng::fork(std::uint64_t stream) {
  std::uint64_t mix = next_u64() ^ (0xa0761d6478bd642fULL * (stream + 1));
  return Rng(mix);
}

}  // namespace detail

std::string to_string(SourceKind kind) {
  switch (kind) {
    case SourceKind::sinusoid_with_jitter: return "sinusoid_with_jitter";
    case SourceKind::ar2_oscillator: return "ar2_oscillator";
    case SourceKind::white_noise: return "white_noise";
  }
  return "unknown";
}

SourceKind source_kind_from_string(const std::string& name) {
  if (name == "sinusoid_with_jitter" || name == "sinusoid") {
    return SourceKind::sinusoid_with_jitter;
  }
  if (name == "ar2_oscillator" || name == "ar2") return SourceKind::ar2_oscillator;
  if (name == "white_noise" || name == "white") return SourceKind::white_noise;
  throw ConfigError("unknown source kind: " + name);
}

namespace {

// One segment of one source channel.
void fill_source_segment(const SourceSpec& spec, std::size_t n_samples,
                         detail::Rng& rng, double* out) {
  switch (spec.kind) {
    case SourceKind::sinusoid_with_jitter: {
      const double phase = 2.0 * std::numbers::pi * rng.uniform();
      const double amp = spec.amplitude * (0.8 + 0.4 * rng.uniform());
      const double w = 2.0 * std::numbers::pi *
                       static_cast<double>(spec.frequency_bin) /
                       static_cast<double>(n_samples);
      for (std::size_t t = 0; t < n_samples; ++t) {
        out[t] = amp * std::cos(w * static_cast<double>(t) + phase);
      }
      break;
    }
    case SourceKind::ar2_oscillator: {
      const double theta = 2.0 * std::numbers::pi *
                           static_cast<double>(spec.frequency_bin) /
                           static_cast<double>(n_samples);
      const double a1 = 2.0 * spec.damping * std::cos(theta);
      const double a2 = -spec.damping * spec.damping;
      double prev1 = 0.0, prev2 = 0.0;
      const std::size_t burn_in = 4 * n_samples;
      for (std::size_t t = 0; t < burn_in + n_samples; ++t) {
        const double v = a1 * prev1 + a2 * prev2 + spec.amplitude * rng.normal();
        prev2 = prev1;
        prev1 = v;
        if (t >= burn_in) out[t - burn_in] = v;
      }
      break;
    }
    case SourceKind::white_noise:
      for (std::size_t t = 0; t < n_samples; ++t) {
        out[t] = spec.amplitude * rng.normal();
      }
      break;
  }
}

void validate_source(const SourceSpec& spec, std::size_t n_samples) {
  if (spec.amplitude <= 0.0) throw ConfigError("source amplitude must be > 0");
  if (spec.kind != SourceKind::white_noise && spec.frequency_bin >= n_samples) {
    throw ConfigError("source frequency_bin out of range");
  }
  if (spec.kind == SourceKind::ar2_oscillator &&
      (spec.damping <= 0.0 || spec.damping >= 1.0)) {
    throw ConfigError("AR(2) damping must lie in (0, 1)");
  }
}

}  // namespace

std::pair<SegmentedSeries, SegmentedSeries> generate_blurring(
    const BlurringScenario& scenario) {
  const std::size_t r = static_cast<std::size_t>(scenario.mixing_c.cols());
  const std::size_t p = static_cast<std::size_t>(scenario.mixing_c.rows());
  const std::size_t q = static_cast<std::size_t>(scenario.mixing_d.rows());
  if (static_cast<std::size_t>(scenario.mixing_d.cols()) != r) {
    throw DimensionError("mixing_c and mixing_d must have equal source count r");
  }
  if (r == 0 || p == 0 || q == 0 || scenario.n_segments == 0 ||
      scenario.n_samples < 2) {
    throw DimensionError("blurring scenario has empty dimensions");
  }
  if (scenario.noise_std_x < 0.0 || scenario.noise_std_y < 0.0) {
    throw ConfigError("noise std must be >= 0");
  }
  validate_source(scenario.source, scenario.n_samples);

  detail::Rng rng(scenario.seed);
  detail::Rng source_rng = rng.fork(1);
  detail::Rng noise_x_rng = rng.fork(2);
  detail::Rng noise_y_rng = rng.fork(3);

  SegmentedSeries x =
      SegmentedSeries::zeros(scenario.n_segments, scenario.n_samples, p);
  SegmentedSeries y =
      SegmentedSeries::zeros(scenario.n_segments, scenario.n_samples, q);

  std::vector<std::vector<double>> z(r, std::vector<double>(scenario.n_samples));
  for (std::size_t j = 0; j < scenario.n_segments; ++j) {
    for (std::size_t k = 0; k < r; ++k) {
      fill_source_segment(scenario.source, scenario.n_samples, source_rng,
                          z[k].data());
    }
    for (std::size_t t = 0; t < scenario.n_samples; ++t) {
      for (std::size_t c = 0; c < p; ++c) {
        double v = 0.0;
        for (std::size_t k = 0; k < r; ++k) v += scenario.mixing_c(c, k) * z[k][t];
        if (scenario.noise_std_x > 0.0) {
          v += scenario.noise_std_x * noise_x_rng.normal();
        }
        x.at(j, t, c) = v;
      }
      for (std::size_t c = 0; c < q; ++c) {
        double v = 0.0;
        for (std::size_t k = 0; k < r; ++k) v += scenario.mixing_d(c, k) * z[k][t];
        if (scenario.noise_std_y > 0.0) {
          v += scenario.noise_std_y * noise_y_rng.normal();
        }
        y.at(j, t, c) = v;
      }
    }
  }
  return {std::move(x), std::move(y)};
}

std::pair<SegmentedSeries, SegmentedSeries> generate_lagged(
    const LaggedCouplingScenario& scenario) {
  if (scenario.n_segments == 0 || scenario.n_samples < 2) {
    throw DimensionError("lagged scenario has empty dimensions");
  }
  if (scenario.lag_samples >= scenario.n_samples) {
    std::ostringstream msg;
    msg << "lag " << scenario.lag_samples << " must be < n_samples "
        << scenario.n_samples;
    throw ConfigError(msg.str());
  }
  if (scenario.noise_std < 0.0) throw ConfigError("noise std must be >= 0");
  validate_source(scenario.source, scenario.n_samples);

  detail::Rng rng(scenario.seed);
  detail::Rng source_rng = rng.fork(1);
  detail::Rng noise_rng = rng.fork(2);

  const std::size_t nt = scenario.n_samples;
  SegmentedSeries x = SegmentedSeries::zeros(scenario.n_segments, nt, 1);
  SegmentedSeries y = SegmentedSeries::zeros(scenario.n_segments, nt, 1);

  std::vector<double> z(nt);
  for (std::size_t j = 0; j < scenario.n_segments; ++j) {
    fill_source_segment(scenario.source, nt, source_rng, z.data());
    for (std::size_t t = 0; t < nt; ++t) {
      x.at(j, t, 0) = z[t];
      // circular delay: y_t = gain * z_{t - tau mod N_T} + noise
      const std::size_t src = (t + nt - scenario.lag_samples) % nt;
      double v = scenario.coupling_gain * z[src];
      if (scenario.noise_std > 0.0) v += scenario.noise_std * noise_rng.normal();
      y.at(j, t, 0) = v;
    }
  }
  return {std::move(x), std::move(y)};
}

std::vector<SnrSweepRow> snr_sweep(const BlurringScenario& scenario,
                                   const std::vector<double>& gains) {
  if (gains.size() < 2) throw ConfigError("snr_sweep needs at least 2 gains");
  if (scenario.mixing_c.rows() != 1 || scenario.mixing_d.rows() != 1) {
    throw ConfigError("snr_sweep is defined for univariate scenarios (p = q = 1)");
  }
  const std::size_t bin = scenario.source.frequency_bin;

  std::vector<SnrSweepRow> rows;
  rows.reserve(gains.size());
  for (const double gain : gains) {
    if (!(gain > 0.0)) throw ConfigError("snr_sweep gains must be > 0");
    BlurringScenario scaled = scenario;
    scaled.mixing_c *= gain;
    scaled.mixing_d *= gain;
    auto [x, y] = generate_blurring(scaled);
    const SpectralSet sx = remove_ensemble_mean(dft_segments(x));
    const SpectralSet sy = remove_ensemble_mean(dft_segments(y));

    SnrSweepRow row;
    row.gain = gain;
    auto eval = [&](MeasureId id) {
      return evaluate_measure({id}, sx, sy, bin).value;
    };
    row.coherence = eval(MeasureId::coherence_general);
    row.lagged_coherence = eval(MeasureId::lagged_coherence_general);
    row.phase_sync = eval(MeasureId::ps_classical);
    row.lagged_phase_sync = eval(MeasureId::lagged_ps_univariate);
    row.imag_coherency = eval(MeasureId::imag_coherency);
    row.pli = eval(MeasureId::pli);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace lagcoh
