/* Copyright 2026 The Tuberscope Authors

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#include "tuberscope/image.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <string>

#include <png.h>

#include "tuberscope/errors.hpp"

namespace tuberscope {
namespace {

// Next whitespace-delimited header token, skipping '#' comments.
std::string ppm_token(std::istream& in) {
  std::string tok;
  int ch;
  while ((ch = in.get()) != EOF) {
    if (ch == '#') {
      while ((ch = in.get()) != EOF && ch != '\n') {
      }
      continue;
    }
    if (std::isspace(ch)) {
      if (!tok.empty()) break;
      continue;
    }
    tok += static_cast<char>(ch);
  }
  return tok;
}

int ppm_int(std::istream& in, const char* what) {
  const std::string tok = ppm_token(in);
  try {
    std::size_t used = 0;
    const int v = std::stoi(tok, &used);
    if (used != tok.size() || v < 0) throw std::invalid_argument(tok);
    return v;
  } catch (const std::exception&) {
    throw ParseError(std::string("bad PPM ") + what + " '" + tok + "'");
  }
}

}  // namespace

RgbImage read_ppm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image " + path.string());
  const std::string magic = ppm_token(in);
  if (magic != "P6" && magic != "P3") throw ParseError("not a PPM file: " + path.string());
  const int w = ppm_int(in, "width");
  const int h = ppm_int(in, "height");
  const int maxval = ppm_int(in, "maxval");
  if (w <= 0 || h <= 0 || maxval <= 0 || maxval > 255)
    throw ParseError("unsupported PPM geometry or depth in " + path.string());
  RgbImage img(w, h);
  if (magic == "P6") {
    in.read(reinterpret_cast<char*>(img.data.data()), static_cast<std::streamsize>(img.data.size()));
    if (in.gcount() != static_cast<std::streamsize>(img.data.size()))
      throw ParseError("truncated PPM pixel data in " + path.string());
  } else {
    for (auto& v : img.data) v = static_cast<std::uint8_t>(ppm_int(in, "sample"));
  }
  if (maxval != 255)
    for (auto& v : img.data) v = static_cast<std::uint8_t>(v * 255 / maxval);
  return img;
}

void write_ppm(const std::filesystem::path& path, const RgbImage& image) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write image " + path.string());
  out << "P6\n" << image.width << ' ' << image.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(image.data.data()),
            static_cast<std::streamsize>(image.data.size()));
}

RgbImage read_png(const std::filesystem::path& path) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&png, path.string().c_str()))
    throw ParseError("cannot read PNG " + path.string() + ": " + png.message);
  png.format = PNG_FORMAT_RGB;
  RgbImage img(static_cast<int>(png.width), static_cast<int>(png.height));
  if (!png_image_finish_read(&png, nullptr, img.data.data(), 0, nullptr)) {
    png_image_free(&png);
    throw ParseError("cannot decode PNG " + path.string() + ": " + png.message);
  }
  return img;
}

void write_png(const std::filesystem::path& path, const RgbImage& image) {
  png_image png;
  std::memset(&png, 0, sizeof png);
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = PNG_FORMAT_RGB;
  if (!png_image_write_to_file(&png, path.string().c_str(), 0, image.data.data(), 0, nullptr))
    throw Error("cannot write PNG " + path.string() + ": " + png.message);
}

RgbImage load_image(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open image " + path.string());
  char sig[8] = {};
  in.read(sig, sizeof sig);
  in.close();
  static constexpr unsigned char kPng[8] = {0x89, 'P', 'N', 'G', '\r', '\n', 0x1a, '\n'};
  if (std::memcmp(sig, kPng, sizeof kPng) == 0) return read_png(path);
  if (sig[0] == 'P' && (sig[1] == '6' || sig[1] == '3')) return read_ppm(path);
  throw ParseError("unrecognised image format: " + path.string());
}

}  // namespace tuberscope
