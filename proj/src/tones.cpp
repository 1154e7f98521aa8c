#include "cmachine/tones.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <memory>
#include <mutex>
#include <numbers>
#include <random>

#include <fftw3.h>

#include "cmachine/error.hpp"
#include "cmachine/hilbert.hpp"

namespace cmachine::tones {

namespace {

constexpr int kMaxFundamental = 988;  // B5
constexpr double kTieRel = 1e-12;

constexpr std::array<const char*, 12> kSharpNames = {"C",  "C#", "D",  "D#", "E",  "F",
                                                     "F#", "G",  "G#", "A",  "A#", "B"};
constexpr std::array<const char*, 12> kFlatNames = {"C",  "Db", "D",  "Eb", "E",  "F",
                                                    "Gb", "G",  "Ab", "A",  "Bb", "B"};

std::array<ToneId, 48> build_table() {
  std::array<ToneId, 48> table{};
  std::size_t t = 0;
  for (int octave = 2; octave <= 5; ++octave) {
    for (int pc = 0; pc < 12; ++pc) {
      const auto p = static_cast<PitchClass>(pc);
      table[t++] = ToneId{p, octave, fundamental_bin(p, octave)};
    }
  }
  return table;
}

struct FftwDeleter {
  void operator()(void* p) const { fftw_free(p); }
};

// FFTW planning is not thread-safe; executing an existing plan on fresh
// buffers is.
fftw_plan forward_plan() {
  static std::once_flag once;
  static fftw_plan plan = nullptr;
  std::call_once(once, [] {
    std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(kNumSamples));
    std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(kNumSamples / 2 + 1));
    plan = fftw_plan_dft_r2c_1d(static_cast<int>(kNumSamples), in.get(), out.get(), FFTW_ESTIMATE);
  });
  if (plan == nullptr) throw NumericalError("could not create FFT plan");
  return plan;
}

}  // namespace

// --- TimeSignal ------------------------------------------------------------

TimeSignal::TimeSignal(std::vector<double> samples) : samples_(std::move(samples)) {
  if (samples_.size() != kNumSamples) {
    throw InvalidArgument("a time signal holds exactly 44100 samples, got " +
                          std::to_string(samples_.size()));
  }
  for (double x : samples_) {
    if (!std::isfinite(x) || x < -1.0 || x > 1.0) {
      throw InvalidArgument("time samples must lie in [-1, 1]");
    }
  }
}

TimeSignal TimeSignal::silence() { return TimeSignal(std::vector<double>(kNumSamples, 0.0)); }

// --- Tone table ------------------------------------------------------------

std::string ToneId::name() const {
  return kSharpNames[static_cast<std::size_t>(pitch_class)] + std::to_string(octave);
}

int fundamental_bin(PitchClass pc, int octave) {
  const int semitones = (octave - 4) * 12 + (static_cast<int>(pc) - static_cast<int>(PitchClass::A));
  return static_cast<int>(std::lround(440.0 * std::exp2(semitones / 12.0)));
}

const std::array<ToneId, 48>& tone_table() {
  static const std::array<ToneId, 48> table = build_table();
  return table;
}

std::optional<ToneId> find_tone(const std::string& name) {
  for (const ToneId& t : tone_table()) {
    const auto pc = static_cast<std::size_t>(t.pitch_class);
    const std::string octave = std::to_string(t.octave);
    if (name == kSharpNames[pc] + octave || name == kFlatNames[pc] + octave) return t;
  }
  return std::nullopt;
}

// --- Reference set ---------------------------------------------------------

ReferenceToneSet::ReferenceToneSet(int harmonics) : harmonics_(harmonics) {
  if (harmonics < 0) throw InvalidArgument("harmonic count must be nonnegative");
  if (static_cast<std::size_t>(harmonics + 1) * kMaxFundamental > kNumBins) {
    throw InvalidArgument("harmonic " + std::to_string(harmonics + 1) +
                          " of B5 exceeds the Nyquist bin 22050");
  }
  const double weight = 1.0 / std::sqrt(static_cast<double>(harmonics + 1));
  vectors_.reserve(tone_table().size());
  for (const ToneId& t : tone_table()) {
    std::vector<double> v(kNumBins, 0.0);
    for (int j = 1; j <= harmonics + 1; ++j) v[static_cast<std::size_t>(j * t.fundamental) - 1] = weight;
    vectors_.emplace_back(std::move(v));
  }
}

const Signal& ReferenceToneSet::vector(const ToneId& id) const {
  const auto& table = tone_table();
  const auto it = std::find(table.begin(), table.end(), id);
  if (it == table.end()) throw InvalidArgument("unknown tone " + id.name());
  return vectors_[static_cast<std::size_t>(it - table.begin())];
}

ReferenceToneSet reference_set(int harmonics) { return ReferenceToneSet(harmonics); }

// --- Spectra ---------------------------------------------------------------

Spectrum magnitude_spectrum(const TimeSignal& t, bool normalize) {
  std::unique_ptr<double, FftwDeleter> in(fftw_alloc_real(kNumSamples));
  std::unique_ptr<fftw_complex, FftwDeleter> out(fftw_alloc_complex(kNumSamples / 2 + 1));
  std::copy(t.samples().begin(), t.samples().end(), in.get());
  fftw_execute_dft_r2c(forward_plan(), in.get(), out.get());

  std::vector<double> mags(kNumBins);
  for (std::size_t n = 1; n <= kNumBins; ++n) {
    mags[n - 1] = std::hypot(out.get()[n][0], out.get()[n][1]);
  }
  Spectrum s{Signal(std::move(mags)), false};
  if (normalize && s.magnitudes.norm() > 0.0) {
    s.magnitudes = s.magnitudes.normalized();
    s.normalized = true;
  }
  return s;
}

std::string measure_name(ToneMeasure m) {
  switch (m) {
    case ToneMeasure::SqNorm: return "sqnorm";
    case ToneMeasure::F: return "F";
    case ToneMeasure::Delta: return "delta";
    case ToneMeasure::Nabla: return "nabla";
  }
  return "?";
}

std::optional<ToneMeasure> parse_measure(const std::string& name) {
  for (ToneMeasure m : {ToneMeasure::SqNorm, ToneMeasure::F, ToneMeasure::Delta, ToneMeasure::Nabla}) {
    if (name == measure_name(m)) return m;
  }
  return std::nullopt;
}

std::vector<ToneMatch> recognize(const Spectrum& f, const ReferenceToneSet& refs,
                                 ToneMeasure measure, const Frame* frame) {
  if ((measure == ToneMeasure::Delta || measure == ToneMeasure::Nabla) && frame == nullptr) {
    throw InvalidArgument("measure " + measure_name(measure) + " requires a frame");
  }
  std::vector<ToneMatch> ranked;
  ranked.reserve(refs.size());
  for (std::size_t t = 0; t < refs.size(); ++t) {
    const Signal& ref = refs.vector(t);
    double value = 0.0;
    switch (measure) {
      case ToneMeasure::SqNorm: value = sq_distance(f.magnitudes, ref); break;
      case ToneMeasure::F: value = dissimilarity(f.magnitudes, ref); break;
      case ToneMeasure::Delta: value = delta(*frame, f.magnitudes, ref); break;
      case ToneMeasure::Nabla: value = nabla(*frame, f.magnitudes, ref); break;
    }
    ranked.push_back({refs.tone(t), value});
  }

  std::sort(ranked.begin(), ranked.end(), [](const ToneMatch& a, const ToneMatch& b) {
    if (a.value != b.value) return a.value < b.value;
    return a.tone.fundamental < b.tone.fundamental;
  });
  // Values equal up to rounding form a tie group ordered by fundamental.
  for (std::size_t i = 0; i < ranked.size();) {
    const double tol = kTieRel * std::max(1.0, std::abs(ranked[i].value));
    std::size_t j = i + 1;
    while (j < ranked.size() && ranked[j].value - ranked[i].value <= tol) ++j;
    std::sort(ranked.begin() + static_cast<std::ptrdiff_t>(i),
              ranked.begin() + static_cast<std::ptrdiff_t>(j),
              [](const ToneMatch& a, const ToneMatch& b) {
                return a.tone.fundamental < b.tone.fundamental;
              });
    i = j;
  }
  return ranked;
}

Spectrum add_spectral_noise(const Spectrum& f, std::size_t count, double amplitude,
                            std::uint64_t seed) {
  if (count > f.magnitudes.dim()) throw InvalidArgument("noise count exceeds the spectrum length");
  if (!(amplitude >= 0.0) || !std::isfinite(amplitude)) {
    throw InvalidArgument("noise amplitude must be a finite nonnegative number");
  }
  std::mt19937_64 rng(seed);
  std::vector<double> v = f.magnitudes.values();
  for (std::size_t i = 0; i < count; ++i) {
    // 53 random mantissa bits give a uniform draw in [0, 1) that does not
    // depend on the standard library's distribution implementation.
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    v[i] += amplitude * u;
  }
  return Spectrum{Signal(std::move(v)), false};
}

TimeSignal synth_tone(int fundamental, const std::vector<double>& harmonic_amplitudes) {
  if (fundamental <= 0) throw InvalidArgument("fundamental must be a positive bin");
  if (harmonic_amplitudes.empty()) throw InvalidArgument("at least one harmonic amplitude is required");
  const std::size_t top = harmonic_amplitudes.size() * static_cast<std::size_t>(fundamental);
  if (top > kNumBins) {
    throw InvalidArgument("harmonic at " + std::to_string(top) + " Hz exceeds the Nyquist bin 22050");
  }
  std::vector<double> samples(kNumSamples, 0.0);
  for (std::size_t h = 0; h < harmonic_amplitudes.size(); ++h) {
    const double a = harmonic_amplitudes[h];
    if (a == 0.0) continue;
    const auto freq = static_cast<std::uint64_t>((h + 1) * static_cast<std::size_t>(fundamental));
    for (std::size_t i = 0; i < kNumSamples; ++i) {
      // Reduce the phase index exactly before scaling to keep sin() arguments small.
      const auto phase = (freq * i) % kSampleRate;
      samples[i] += a * std::sin(2.0 * std::numbers::pi * static_cast<double>(phase) / kSampleRate);
    }
  }
  double peak = 0.0;
  for (double x : samples) peak = std::max(peak, std::abs(x));
  if (peak > 0.0) {
    for (double& x : samples) x *= 0.9 / peak;
  }
  return TimeSignal(std::move(samples));
}

void write_spectrum_csv(std::ostream& out, const Spectrum& s) {
  const auto old_precision = out.precision(17);
  out << "bin,magnitude\n";
  for (std::size_t n = 1; n <= s.magnitudes.dim(); ++n) out << n << ',' << s.bin(n) << '\n';
  out.precision(old_precision);
}

}  // namespace cmachine::tones
