#pragma once

// Tone recognition over one-second audio clips.
//
// A clip of 44100 samples is turned into the magnitudes of its DFT bins
// 1..22050; with a one-second window bin n sits at n Hz. Each of the 48
// tones C2..B5 has a reference vector with equal weight on its
// fundamental k_t and its first n_h harmonics. Recognition ranks the
// references by a dissimilarity against the input spectrum.

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <ostream>
#include <string>
#include <vector>

#include "cmachine/frames.hpp"
#include "cmachine/signal.hpp"

namespace cmachine::tones {

inline constexpr std::size_t kSampleRate = 44100;
inline constexpr std::size_t kNumSamples = 44100;
inline constexpr std::size_t kNumBins = 22050;

/// Exactly one second of mono audio with samples in [-1, 1].
class TimeSignal {
 public:
  explicit TimeSignal(std::vector<double> samples);
  static TimeSignal silence();

  std::span<const double> samples() const noexcept { return samples_; }
  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  std::vector<double> samples_;
};

/// Magnitudes of bins 1..22050; entry i belongs to bin i + 1.
struct Spectrum {
  Signal magnitudes;
  bool normalized = false;

  double bin(std::size_t n) const { return magnitudes[n - 1]; }
};

enum class PitchClass { C, Cs, D, Ds, E, F, Fs, G, Gs, A, As, B };

struct ToneId {
  PitchClass pitch_class;
  int octave;
  int fundamental;  // k_t in Hz (= bin index)

  std::string name() const;
  bool operator==(const ToneId&) const = default;
};

/// round(440 * 2^(s/12)), s = semitones from A4.
int fundamental_bin(PitchClass pc, int octave);

/// The 48 tones C2..B5 in ascending pitch.
const std::array<ToneId, 48>& tone_table();
/// Looks up names such as "A2", "C#3" or "Bb4".
std::optional<ToneId> find_tone(const std::string& name);

class ReferenceToneSet {
 public:
  /// Requires (n_h + 1) * 988 <= 22050.
  explicit ReferenceToneSet(int harmonics);

  int harmonics() const noexcept { return harmonics_; }
  std::size_t size() const noexcept { return vectors_.size(); }
  const ToneId& tone(std::size_t t) const { return tone_table()[t]; }
  const Signal& vector(std::size_t t) const { return vectors_[t]; }
  const Signal& vector(const ToneId& id) const;

 private:
  int harmonics_;
  std::vector<Signal> vectors_;
};

/// Convenience for ReferenceToneSet(n_h).
ReferenceToneSet reference_set(int harmonics);

/// 44100-point DFT magnitudes of bins 1..22050, optionally scaled to unit norm.
Spectrum magnitude_spectrum(const TimeSignal& t, bool normalize);

enum class ToneMeasure { SqNorm, F, Delta, Nabla };

std::string measure_name(ToneMeasure m);
std::optional<ToneMeasure> parse_measure(const std::string& name);

struct ToneMatch {
  ToneId tone;
  double value;
};

/// Ascending ranking of all reference tones. Values that agree to 1e-12
/// relative are ties and are ordered by ascending k_t. Delta and Nabla need
/// a frame over R^22050; passing none for them throws InvalidArgument.
std::vector<ToneMatch> recognize(const Spectrum& f, const ReferenceToneSet& refs,
                                 ToneMeasure measure, const Frame* frame = nullptr);

/// Adds i.i.d. uniform [0, amplitude] values to bins 1..count. The result is
/// not renormalized.
Spectrum add_spectral_noise(const Spectrum& f, std::size_t count, double amplitude,
                            std::uint64_t seed);

/// sum_h a_h sin(2 pi h k_t i / 44100), peak-normalized to 0.9.
TimeSignal synth_tone(int fundamental, const std::vector<double>& harmonic_amplitudes);

/// "bin,magnitude" rows with a header line.
void write_spectrum_csv(std::ostream& out, const Spectrum& s);

}  // namespace cmachine::tones
