#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <vector>

#include "cmachine/tones.hpp"
#include "cmachine/wav.hpp"

namespace cmachine::tones {
namespace {

using Bytes = std::vector<std::uint8_t>;

void le(Bytes& b, std::uint32_t v, int n) {
  for (int i = 0; i < n; ++i) b.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void tag(Bytes& b, const char* t) { b.insert(b.end(), t, t + 4); }

struct WavSpec {
  std::uint16_t encoding = 1;
  std::uint16_t channels = 1;
  std::uint32_t rate = 44100;
  std::uint16_t bits = 16;
  std::vector<std::int16_t> samples;  // interleaved
  Bytes extra_chunk;                  // raw bytes inserted between fmt and data
};

// Hand-rolled writer, independent of encode_wav.
Bytes make_wav(const WavSpec& s) {
  Bytes body;
  tag(body, "WAVE");
  tag(body, "fmt ");
  le(body, 16, 4);
  le(body, s.encoding, 2);
  le(body, s.channels, 2);
  le(body, s.rate, 4);
  le(body, s.rate * s.channels * s.bits / 8, 4);
  le(body, s.channels * s.bits / 8, 2);
  le(body, s.bits, 2);
  body.insert(body.end(), s.extra_chunk.begin(), s.extra_chunk.end());
  tag(body, "data");
  le(body, static_cast<std::uint32_t>(2 * s.samples.size()), 4);
  for (std::int16_t x : s.samples) le(body, static_cast<std::uint16_t>(x), 2);
  Bytes out;
  tag(out, "RIFF");
  le(out, static_cast<std::uint32_t>(body.size()), 4);
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

WavError::Kind error_kind(const Bytes& bytes) {
  try {
    parse_wav(bytes);
  } catch (const WavError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no WavError thrown";
  return WavError::Kind::Io;
}

TEST(Wav, ZeroFile) {
  WavSpec s;
  s.samples.assign(44100, 0);
  const TimeSignal t = parse_wav(make_wav(s));
  ASSERT_EQ(t.samples().size(), 44100u);
  for (double x : t.samples()) EXPECT_EQ(x, 0.0);
}

TEST(Wav, ShortFileIsZeroPadded) {
  WavSpec s;
  s.samples.assign(22050, 16384);
  const TimeSignal t = parse_wav(make_wav(s));
  ASSERT_EQ(t.samples().size(), 44100u);
  EXPECT_EQ(t[0], 0.5);
  EXPECT_EQ(t[22049], 0.5);
  for (std::size_t i = 22050; i < 44100; ++i) ASSERT_EQ(t[i], 0.0) << i;
}

TEST(Wav, LongFileIsTruncated) {
  WavSpec s;
  s.samples.assign(50000, -32768);
  s.samples[44099] = 8192;
  const TimeSignal t = parse_wav(make_wav(s));
  EXPECT_EQ(t[0], -1.0);
  EXPECT_EQ(t[44099], 0.25);
}

TEST(Wav, StereoIsAveraged) {
  WavSpec s;
  s.channels = 2;
  s.samples = {16384, -16384, 32767, 32767, 0, 8192};
  const TimeSignal t = parse_wav(make_wav(s));
  EXPECT_EQ(t[0], 0.0);
  EXPECT_EQ(t[1], 32767.0 / 32768.0);
  EXPECT_EQ(t[2], 0.125);
  EXPECT_EQ(t[3], 0.0);
}

TEST(Wav, SkipsUnknownChunksWithPadding) {
  WavSpec s;
  s.samples = {100, 200};
  tag(s.extra_chunk, "LIST");
  le(s.extra_chunk, 3, 4);
  s.extra_chunk.insert(s.extra_chunk.end(), {'a', 'b', 'c', 0});  // odd size plus pad byte
  const TimeSignal t = parse_wav(make_wav(s));
  EXPECT_EQ(t[0], 100 / 32768.0);
  EXPECT_EQ(t[1], 200 / 32768.0);
}

TEST(Wav, OversizedDataLengthIsClamped) {
  WavSpec s;
  s.samples = {1000, 2000, 3000};
  Bytes b = make_wav(s);
  const std::size_t size_at = b.size() - 6 - 4;
  for (int i = 0; i < 4; ++i) b[size_at + i] = 0xff;
  const TimeSignal t = parse_wav(b);
  EXPECT_EQ(t[2], 3000 / 32768.0);
}

TEST(Wav, ErrorKinds) {
  WavSpec s;
  s.samples = {0, 0};

  WavSpec rate = s;
  rate.rate = 48000;
  EXPECT_EQ(error_kind(make_wav(rate)), WavError::Kind::UnsupportedSampleRate);

  WavSpec eight = s;
  eight.bits = 8;
  EXPECT_EQ(error_kind(make_wav(eight)), WavError::Kind::UnsupportedEncoding);

  WavSpec flt = s;
  flt.encoding = 3;
  EXPECT_EQ(error_kind(make_wav(flt)), WavError::Kind::UnsupportedEncoding);

  WavSpec six = s;
  six.channels = 6;
  EXPECT_EQ(error_kind(make_wav(six)), WavError::Kind::UnsupportedEncoding);

  Bytes magic = make_wav(s);
  magic[0] = 'X';
  EXPECT_EQ(error_kind(magic), WavError::Kind::BadMagic);
  EXPECT_EQ(error_kind(Bytes{'R', 'I', 'F'}), WavError::Kind::BadMagic);

  Bytes no_data = make_wav(s);
  no_data.resize(12 + 24);
  EXPECT_EQ(error_kind(no_data), WavError::Kind::Malformed);
}

TEST(Wav, MissingFileIsIoError) {
  try {
    load_wav("/nonexistent/clip.wav");
    FAIL();
  } catch (const WavError& e) {
    EXPECT_EQ(e.kind(), WavError::Kind::Io);
  }
}

TEST(Wav, EncodeRoundTrip) {
  std::vector<double> x(44100);
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = std::sin(0.001 * static_cast<double>(i * i % 7919));
  const TimeSignal t(x);
  const Bytes bytes = encode_wav(t);
  EXPECT_EQ(bytes.size(), 44u + 2 * 44100);
  const TimeSignal back = parse_wav(bytes);
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_NEAR(back[i], x[i], 1.0 / 32768) << i;

  const auto path = std::filesystem::temp_directory_path() / "cmachine_wav_roundtrip.wav";
  save_wav(path, t);
  const TimeSignal loaded = load_wav(path);
  std::filesystem::remove(path);
  for (std::size_t i = 0; i < x.size(); ++i) ASSERT_EQ(loaded[i], back[i]);
}

}  // namespace
}  // namespace cmachine::tones
