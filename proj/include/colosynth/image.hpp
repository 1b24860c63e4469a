#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colosynth/geom.hpp"

namespace colosynth {

// Linear-light RGB image, row-major, top row first, 3 floats per pixel.
struct ImageRGB {
  int width = 0, height = 0;
  std::vector<float> pixels;

  ImageRGB() = default;
  ImageRGB(int w, int h) : width(w), height(h), pixels(size_t(w) * h * 3, 0.0f) {}
  float* at(int x, int y) { return &pixels[(size_t(y) * width + x) * 3]; }
  const float* at(int x, int y) const { return &pixels[(size_t(y) * width + x) * 3]; }
};

// Single-channel float image (depth maps, masks).
struct ImageGray {
  int width = 0, height = 0;
  std::vector<float> pixels;

  ImageGray() = default;
  ImageGray(int w, int h) : width(w), height(h), pixels(size_t(w) * h, 0.0f) {}
  float& at(int x, int y) { return pixels[size_t(y) * width + x]; }
  float at(int x, int y) const { return pixels[size_t(y) * width + x]; }
};

double srgb_encode(double linear);
double srgb_decode(double srgb);

// 8-bit sRGB PNG. The deflate stream uses stored (uncompressed) blocks, so
// the emitted bytes are a pure function of the pixels.
void write_png(const ImageRGB& image, const std::string& path);
std::vector<uint8_t> encode_png(const ImageRGB& image);

// Reads PNGs produced by write_png (8-bit RGB, filter 0, stored blocks).
ImageRGB read_png(const std::string& path);

// Grayscale PFM, little-endian float32, rows bottom-to-top per convention.
void write_pfm(const ImageGray& image, const std::string& path);
ImageGray read_pfm(const std::string& path);

}  // namespace colosynth
