#include "colosynth/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "colosynth/errors.hpp"

namespace colosynth {

double srgb_encode(double linear) {
  double c = std::clamp(linear, 0.0, 1.0);
  return c <= 0.0031308 ? 12.92 * c : 1.055 * std::pow(c, 1.0 / 2.4) - 0.055;
}

double srgb_decode(double srgb) {
  double s = std::clamp(srgb, 0.0, 1.0);
  return s <= 0.04045 ? s / 12.92 : std::pow((s + 0.055) / 1.055, 2.4);
}

namespace {

uint32_t crc32_bytes(const uint8_t* data, size_t len, uint32_t crc = 0) {
  static uint32_t table[256];
  static bool init = false;
  if (!init) {
    for (uint32_t n = 0; n < 256; ++n) {
      uint32_t c = n;
      for (int k = 0; k < 8; ++k) c = (c & 1) ? 0xedb88320u ^ (c >> 1) : c >> 1;
      table[n] = c;
    }
    init = true;
  }
  crc ^= 0xffffffffu;
  for (size_t i = 0; i < len; ++i) crc = table[(crc ^ data[i]) & 0xff] ^ (crc >> 8);
  return crc ^ 0xffffffffu;
}

uint32_t adler32(const uint8_t* data, size_t len) {
  uint32_t a = 1, b = 0;
  for (size_t i = 0; i < len; ++i) {
    a = (a + data[i]) % 65521u;
    b = (b + a) % 65521u;
  }
  return (b << 16) | a;
}

void push_u32be(std::vector<uint8_t>& out, uint32_t v) {
  out.push_back(uint8_t(v >> 24));
  out.push_back(uint8_t(v >> 16));
  out.push_back(uint8_t(v >> 8));
  out.push_back(uint8_t(v));
}

void push_chunk(std::vector<uint8_t>& out, const char type[5], const std::vector<uint8_t>& data) {
  push_u32be(out, uint32_t(data.size()));
  size_t crc_start = out.size();
  out.insert(out.end(), type, type + 4);
  out.insert(out.end(), data.begin(), data.end());
  push_u32be(out, crc32_bytes(out.data() + crc_start, out.size() - crc_start));
}

// zlib stream holding only stored deflate blocks.
std::vector<uint8_t> zlib_store(const std::vector<uint8_t>& raw) {
  std::vector<uint8_t> z;
  z.push_back(0x78);
  z.push_back(0x01);
  size_t pos = 0;
  do {
    size_t n = std::min<size_t>(raw.size() - pos, 65535);
    bool final = pos + n == raw.size();
    z.push_back(final ? 1 : 0);
    z.push_back(uint8_t(n & 0xff));
    z.push_back(uint8_t(n >> 8));
    z.push_back(uint8_t(~n & 0xff));
    z.push_back(uint8_t((~n >> 8) & 0xff));
    z.insert(z.end(), raw.begin() + pos, raw.begin() + pos + n);
    pos += n;
  } while (pos < raw.size());
  push_u32be(z, adler32(raw.data(), raw.size()));
  return z;
}

std::vector<uint8_t> zlib_unstore(const uint8_t* z, size_t len, const std::string& path) {
  if (len < 6) throw malformed_header(path + ": truncated zlib stream");
  size_t pos = 2;
  std::vector<uint8_t> raw;
  for (;;) {
    if (pos >= len) throw malformed_header(path + ": truncated deflate data");
    uint8_t header = z[pos++];
    if ((header & 0x06) != 0)
      throw malformed_header(path + ": only stored deflate blocks are supported");
    if (pos + 4 > len) throw malformed_header(path + ": truncated stored block");
    size_t n = size_t(z[pos]) | (size_t(z[pos + 1]) << 8);
    pos += 4;
    if (pos + n > len) throw malformed_header(path + ": stored block overruns stream");
    raw.insert(raw.end(), z + pos, z + pos + n);
    pos += n;
    if (header & 1) break;
  }
  return raw;
}

uint8_t quantize_srgb(float linear) {
  return uint8_t(std::lround(srgb_encode(double(linear)) * 255.0));
}

}  // namespace

std::vector<uint8_t> encode_png(const ImageRGB& image) {
  if (image.width < 1 || image.height < 1) throw invalid_spec("png image must be non-empty");
  std::vector<uint8_t> out = {0x89, 'P', 'N', 'G', 0x0d, 0x0a, 0x1a, 0x0a};

  std::vector<uint8_t> ihdr;
  push_u32be(ihdr, uint32_t(image.width));
  push_u32be(ihdr, uint32_t(image.height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(2);   // truecolor
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter method
  ihdr.push_back(0);   // no interlace
  push_chunk(out, "IHDR", ihdr);

  std::vector<uint8_t> raw;
  raw.reserve(size_t(image.height) * (1 + size_t(image.width) * 3));
  for (int y = 0; y < image.height; ++y) {
    raw.push_back(0);  // filter: none
    for (int x = 0; x < image.width; ++x) {
      const float* px = image.at(x, y);
      raw.push_back(quantize_srgb(px[0]));
      raw.push_back(quantize_srgb(px[1]));
      raw.push_back(quantize_srgb(px[2]));
    }
  }
  push_chunk(out, "IDAT", zlib_store(raw));
  push_chunk(out, "IEND", {});
  return out;
}

void write_png(const ImageRGB& image, const std::string& path) {
  std::vector<uint8_t> bytes = encode_png(image);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw io_failure("write failed on " + path);
}

ImageRGB read_png(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw missing_file(path);
  std::vector<uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (bytes.size() < 8 + 12 || bytes[1] != 'P' || bytes[2] != 'N' || bytes[3] != 'G')
    throw malformed_header(path + ": not a PNG file");

  int width = 0, height = 0;
  std::vector<uint8_t> idat;
  size_t pos = 8;
  while (pos + 12 <= bytes.size()) {
    uint32_t len = (uint32_t(bytes[pos]) << 24) | (uint32_t(bytes[pos + 1]) << 16) |
                   (uint32_t(bytes[pos + 2]) << 8) | uint32_t(bytes[pos + 3]);
    std::string type(bytes.begin() + pos + 4, bytes.begin() + pos + 8);
    const uint8_t* data = bytes.data() + pos + 8;
    if (pos + 12 + len > bytes.size()) throw malformed_header(path + ": truncated chunk");
    if (type == "IHDR") {
      width = int((uint32_t(data[0]) << 24) | (uint32_t(data[1]) << 16) | (uint32_t(data[2]) << 8) |
                  uint32_t(data[3]));
      height = int((uint32_t(data[4]) << 24) | (uint32_t(data[5]) << 16) |
                   (uint32_t(data[6]) << 8) | uint32_t(data[7]));
      if (data[8] != 8 || data[9] != 2)
        throw malformed_header(path + ": only 8-bit RGB PNGs are supported");
    } else if (type == "IDAT") {
      idat.insert(idat.end(), data, data + len);
    } else if (type == "IEND") {
      break;
    }
    pos += 12 + len;
  }
  if (width < 1 || height < 1) throw malformed_header(path + ": missing IHDR");

  std::vector<uint8_t> raw = zlib_unstore(idat.data(), idat.size(), path);
  size_t stride = 1 + size_t(width) * 3;
  if (raw.size() != stride * size_t(height)) throw size_mismatch(path + ": pixel payload");

  ImageRGB img(width, height);
  for (int y = 0; y < height; ++y) {
    const uint8_t* row = raw.data() + size_t(y) * stride;
    if (row[0] != 0) throw malformed_header(path + ": only filter 0 rows are supported");
    for (int x = 0; x < width; ++x) {
      float* px = img.at(x, y);
      px[0] = float(srgb_decode(row[1 + x * 3 + 0] / 255.0));
      px[1] = float(srgb_decode(row[1 + x * 3 + 1] / 255.0));
      px[2] = float(srgb_decode(row[1 + x * 3 + 2] / 255.0));
    }
  }
  return img;
}

void write_pfm(const ImageGray& image, const std::string& path) {
  if (image.width < 1 || image.height < 1) throw invalid_spec("pfm image must be non-empty");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw io_failure("cannot open " + path);
  out << "Pf\n" << image.width << " " << image.height << "\n-1.0\n";
  // PFM rows run bottom to top.
  for (int y = image.height - 1; y >= 0; --y) {
    static_assert(sizeof(float) == 4);
    out.write(reinterpret_cast<const char*>(&image.pixels[size_t(y) * image.width]),
              std::streamsize(sizeof(float)) * image.width);
  }
  if (!out) throw io_failure("write failed on " + path);
}

ImageGray read_pfm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw missing_file(path);
  std::string magic;
  int w = 0, h = 0;
  double scale = 0.0;
  in >> magic >> w >> h >> scale;
  if (magic != "Pf" || w < 1 || h < 1) throw malformed_header(path + ": not a grayscale PFM");
  if (scale >= 0.0) throw malformed_header(path + ": big-endian PFM is not supported");
  in.get();  // single whitespace after the scale line
  ImageGray img(w, h);
  for (int y = h - 1; y >= 0; --y)
    in.read(reinterpret_cast<char*>(&img.pixels[size_t(y) * w]),
            std::streamsize(sizeof(float)) * w);
  if (!in) throw malformed_header(path + ": truncated PFM payload");
  return img;
}

}  // namespace colosynth
