#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "cmachine/error.hpp"

namespace cmachine::tones {

class TimeSignal;

class WavError : public Error {
 public:
  enum class Kind { Io, BadMagic, UnsupportedEncoding, UnsupportedSampleRate, Malformed };

  WavError(Kind kind, const std::string& message) : Error(message), kind_(kind) {}
  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

/// Decodes a RIFF/WAVE PCM16 file at 44100 Hz with one or two channels.
/// Stereo is averaged to mono; the result is padded or truncated to one second.
TimeSignal parse_wav(std::span<const std::uint8_t> bytes);
TimeSignal load_wav(const std::filesystem::path& path);

/// Mono PCM16 at 44100 Hz, samples scaled by 32768 and clamped to the int16 range.
std::vector<std::uint8_t> encode_wav(const TimeSignal& signal);
void save_wav(const std::filesystem::path& path, const TimeSignal& signal);

}  // namespace cmachine::tones
