#include "resup/wav.hpp"

#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <vector>

#include "resup/errors.hpp"
#include "resup/signal.hpp"

namespace resup {

namespace {

std::uint32_t read_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t read_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

void put_u32(std::vector<unsigned char>& out, std::uint32_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
  out.push_back((v >> 16) & 0xff);
  out.push_back((v >> 24) & 0xff);
}

void put_u16(std::vector<unsigned char>& out, std::uint16_t v) {
  out.push_back(v & 0xff);
  out.push_back((v >> 8) & 0xff);
}

}  // namespace

double quantize_to_pcm16(double x) {
  long v = std::lround(x * 32768.0);
  if (v > 32767) v = 32767;
  if (v < -32768) v = -32768;
  return static_cast<double>(v) / 32768.0;
}

Eigen::VectorXd read_wav(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open WAV file: " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  if (bytes.size() < 44 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0) {
    throw DataError("not a RIFF/WAVE file: " + path.string());
  }

  bool have_fmt = false;
  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t rate = 0;
  const unsigned char* data = nullptr;
  std::uint32_t data_len = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
    const std::uint32_t len = read_u32(bytes.data() + pos + 4);
    const std::size_t body = pos + 8;
    if (body + len > bytes.size()) {
      throw DataError("truncated WAV chunk in " + path.string());
    }
    if (std::memcmp(id, "fmt ", 4) == 0) {
      if (len < 16) throw DataError("malformed fmt chunk in " + path.string());
      format = read_u16(bytes.data() + body);
      channels = read_u16(bytes.data() + body + 2);
      rate = read_u32(bytes.data() + body + 4);
      bits = read_u16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(id, "data", 4) == 0) {
      data = bytes.data() + body;
      data_len = len;
    }
    pos = body + len + (len & 1);  // chunks are word-aligned
  }

  if (!have_fmt || data == nullptr) {
    throw DataError("WAV file missing fmt or data chunk: " + path.string());
  }
  if (format != 1) {
    throw DataError("unsupported WAV format code " + std::to_string(format) +
                    " (need PCM) in " + path.string());
  }
  if (channels != 1) {
    throw DataError("unsupported channel count " + std::to_string(channels) +
                    " (need mono) in " + path.string());
  }
  if (rate != static_cast<std::uint32_t>(kSampleRate)) {
    throw DataError("unsupported sample rate " + std::to_string(rate) + " Hz (need 16000) in " +
                    path.string());
  }
  if (bits != 16) {
    throw DataError("unsupported bit depth " + std::to_string(bits) + " (need 16) in " +
                    path.string());
  }

  const Eigen::Index n = data_len / 2;
  Eigen::VectorXd samples(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const std::int16_t v =
        static_cast<std::int16_t>(data[2 * i] | (static_cast<std::uint16_t>(data[2 * i + 1]) << 8));
    samples[i] = static_cast<double>(v) / 32768.0;
  }
  return samples;
}

void write_wav(const std::filesystem::path& path,
               const Eigen::Ref<const Eigen::VectorXd>& samples) {
  if (!samples.allFinite()) {
    throw DataError("refusing to write non-finite samples to " + path.string());
  }
  const std::uint32_t n = static_cast<std::uint32_t>(samples.size());
  const std::uint32_t data_len = n * 2;

  std::vector<unsigned char> out;
  out.reserve(44 + data_len);
  out.insert(out.end(), {'R', 'I', 'F', 'F'});
  put_u32(out, 36 + data_len);
  out.insert(out.end(), {'W', 'A', 'V', 'E'});
  out.insert(out.end(), {'f', 'm', 't', ' '});
  put_u32(out, 16);
  put_u16(out, 1);  // PCM
  put_u16(out, 1);  // mono
  put_u32(out, kSampleRate);
  put_u32(out, kSampleRate * 2);  // byte rate
  put_u16(out, 2);                // block align
  put_u16(out, 16);               // bits
  out.insert(out.end(), {'d', 'a', 't', 'a'});
  put_u32(out, data_len);
  for (std::uint32_t i = 0; i < n; ++i) {
    long v = std::lround(samples[i] * 32768.0);
    if (v > 32767) v = 32767;
    if (v < -32768) v = -32768;
    put_u16(out, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("cannot create WAV file: " + path.string());
  f.write(reinterpret_cast<const char*>(out.data()), static_cast<std::streamsize>(out.size()));
  if (!f) throw DataError("short write to WAV file: " + path.string());
}

}  // namespace resup
