#include "cmachine/wav.hpp"

#include <algorithm>
#include <fstream>
#include <iterator>
#include <cmath>
#include <cstring>
#include <optional>

#include "cmachine/tones.hpp"

namespace cmachine::tones {

namespace {

constexpr std::uint16_t kFormatPcm = 1;

std::uint16_t read_u16(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint16_t>(b[at] | (b[at + 1] << 8));
}

std::uint32_t read_u32(std::span<const std::uint8_t> b, std::size_t at) {
  return static_cast<std::uint32_t>(b[at]) | (static_cast<std::uint32_t>(b[at + 1]) << 8) |
         (static_cast<std::uint32_t>(b[at + 2]) << 16) |
         (static_cast<std::uint32_t>(b[at + 3]) << 24);
}

bool tag_is(std::span<const std::uint8_t> b, std::size_t at, const char* tag) {
  return std::memcmp(b.data() + at, tag, 4) == 0;
}

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v & 0xff));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int shift = 0; shift < 32; shift += 8) out.push_back(static_cast<std::uint8_t>(v >> shift));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct Format {
  std::uint16_t channels;
};

}  // namespace

TimeSignal parse_wav(std::span<const std::uint8_t> bytes) {
  using Kind = WavError::Kind;
  if (bytes.size() < 12 || !tag_is(bytes, 0, "RIFF") || !tag_is(bytes, 8, "WAVE")) {
    throw WavError(Kind::BadMagic, "not a RIFF/WAVE file");
  }

  std::optional<Format> format;
  std::optional<std::span<const std::uint8_t>> data;
  std::size_t at = 12;
  while (at + 8 <= bytes.size()) {
    const std::uint32_t size = read_u32(bytes, at + 4);
    const std::size_t body = at + 8;
    if (size > bytes.size() - body) {
      // Writers that stream audio sometimes leave a bogus data size behind.
      if (!tag_is(bytes, at, "data")) throw WavError(Kind::Malformed, "chunk runs past end of file");
      data = bytes.subspan(body);
      break;
    }
    if (tag_is(bytes, at, "fmt ")) {
      if (size < 16) throw WavError(Kind::Malformed, "fmt chunk too short");
      const std::uint16_t encoding = read_u16(bytes, body);
      const std::uint16_t channels = read_u16(bytes, body + 2);
      const std::uint32_t rate = read_u32(bytes, body + 4);
      const std::uint16_t bits = read_u16(bytes, body + 14);
      if (encoding != kFormatPcm || bits != 16) {
        throw WavError(Kind::UnsupportedEncoding,
                       "unsupported encoding: only 16-bit integer PCM is accepted");
      }
      if (channels != 1 && channels != 2) {
        throw WavError(Kind::UnsupportedEncoding, "unsupported channel count " +
                                                      std::to_string(channels));
      }
      if (rate != kSampleRate) {
        throw WavError(Kind::UnsupportedSampleRate,
                       "unsupported sample rate " + std::to_string(rate) + " Hz");
      }
      format = Format{channels};
    } else if (tag_is(bytes, at, "data")) {
      data = bytes.subspan(body, size);
    }
    at = body + size + (size & 1u);
  }
  if (!format) throw WavError(Kind::Malformed, "missing fmt chunk");
  if (!data) throw WavError(Kind::Malformed, "missing data chunk");

  const std::size_t frame_bytes = 2u * format->channels;
  const std::size_t frames = std::min(data->size() / frame_bytes, kNumSamples);
  std::vector<double> samples(kNumSamples, 0.0);
  for (std::size_t i = 0; i < frames; ++i) {
    double acc = 0.0;
    for (std::size_t c = 0; c < format->channels; ++c) {
      const auto raw = static_cast<std::int16_t>(read_u16(*data, i * frame_bytes + 2 * c));
      acc += raw / 32768.0;
    }
    samples[i] = acc / format->channels;
  }
  return TimeSignal(std::move(samples));
}

TimeSignal load_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw WavError(WavError::Kind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  return parse_wav(bytes);
}

std::vector<std::uint8_t> encode_wav(const TimeSignal& signal) {
  const auto n = static_cast<std::uint32_t>(signal.samples().size());
  const std::uint32_t data_bytes = 2 * n;
  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put_u32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put_u32(out, 16);
  put_u16(out, kFormatPcm);
  put_u16(out, 1);
  put_u32(out, kSampleRate);
  put_u32(out, kSampleRate * 2);
  put_u16(out, 2);
  put_u16(out, 16);
  put_tag(out, "data");
  put_u32(out, data_bytes);
  for (double x : signal.samples()) {
    const long q = std::lround(x * 32768.0);
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(std::clamp(q, -32768L, 32767L))));
  }
  return out;
}

void save_wav(const std::filesystem::path& path, const TimeSignal& signal) {
  const auto bytes = encode_wav(signal);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw WavError(WavError::Kind::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw WavError(WavError::Kind::Io, "short write to " + path.string());
}

}  // namespace cmachine::tones
