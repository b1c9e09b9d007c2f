// Raster ingestion and edge-map output. Reads PNG, JPEG and binary PGM
// (sniffed by magic bytes, not extension); color inputs are reduced with
// Rec.601 luma. Writers go through a temp file and rename so readers never
// observe a partial file.
#pragma once

#include <jpeglib.h>
#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "edgebench/errors.hpp"
#include "edgebench/image.hpp"

namespace edgebench {

namespace detail {

// Decoded 8-bit raster, interleaved; channels is 1 (gray) or 3 (RGB).
struct Raster {
  int rows = 0;
  int cols = 0;
  int channels = 0;
  std::vector<std::uint8_t> bytes;
};

inline Raster read_png(const std::string& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str()))
    throw FormatError("PNG decode failed: " + path + ": " + image.message);

  const bool color = (image.format & PNG_FORMAT_FLAG_COLOR) != 0;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;

  Raster r;
  r.rows = static_cast<int>(image.height);
  r.cols = static_cast<int>(image.width);
  r.channels = color ? 3 : 1;
  r.bytes.resize(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, r.bytes.data(), 0, nullptr)) {
    png_image_free(&image);
    throw FormatError("PNG decode failed: " + path + ": " + image.message);
  }
  return r;
}

struct JpegErrorMgr {
  jpeg_error_mgr pub;
  std::jmp_buf jump;
  char message[JMSG_LENGTH_MAX] = {};
};

inline void jpeg_error_exit(j_common_ptr cinfo) {
  auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
  (*cinfo->err->format_message)(cinfo, err->message);
  std::longjmp(err->jump, 1);
}

inline Raster read_jpeg(const std::string& path) {
  std::FILE* file = std::fopen(path.c_str(), "rb");
  if (!file) throw NotFoundError("cannot open file: " + path);

  jpeg_decompress_struct cinfo{};
  JpegErrorMgr err{};
  cinfo.err = jpeg_std_error(&err.pub);
  err.pub.error_exit = jpeg_error_exit;
  if (setjmp(err.jump)) {
    jpeg_destroy_decompress(&cinfo);
    std::fclose(file);
    throw FormatError("JPEG decode failed: " + path + ": " + err.message);
  }

  jpeg_create_decompress(&cinfo);
  jpeg_stdio_src(&cinfo, file);
  jpeg_read_header(&cinfo, TRUE);
  cinfo.out_color_space =
      cinfo.jpeg_color_space == JCS_GRAYSCALE ? JCS_GRAYSCALE : JCS_RGB;
  jpeg_start_decompress(&cinfo);

  Raster r;
  r.rows = static_cast<int>(cinfo.output_height);
  r.cols = static_cast<int>(cinfo.output_width);
  r.channels = cinfo.output_components;
  r.bytes.resize(static_cast<std::size_t>(r.rows) * r.cols * r.channels);

  const std::size_t stride =
      static_cast<std::size_t>(r.cols) * r.channels;
  while (cinfo.output_scanline < cinfo.output_height) {
    JSAMPROW row = r.bytes.data() + cinfo.output_scanline * stride;
    jpeg_read_scanlines(&cinfo, &row, 1);
  }
  jpeg_finish_decompress(&cinfo);
  jpeg_destroy_decompress(&cinfo);
  std::fclose(file);
  return r;
}

// Binary PGM (P5), 8-bit maxval only.
inline Raster read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFoundError("cannot open file: " + path);

  auto next_token = [&in, &path]() -> std::string {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
      if (ch == '#') {  // comment runs to end of line
        while ((ch = in.get()) != EOF && ch != '\n') {
        }
        continue;
      }
      if (std::isspace(ch)) {
        if (!tok.empty()) break;
        continue;
      }
      tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty()) throw FormatError("truncated PGM header: " + path);
    return tok;
  };

  auto next_int = [&next_token, &path]() {
    const std::string tok = next_token();
    try {
      return std::stoi(tok);
    } catch (const std::exception&) {
      throw FormatError("malformed PGM header: " + path);
    }
  };

  if (next_token() != "P5")
    throw FormatError("not a binary PGM (P5): " + path);
  const int cols = next_int();
  const int rows = next_int();
  const int maxval = next_int();
  if (cols <= 0 || rows <= 0)
    throw FormatError("invalid PGM dimensions: " + path);
  if (maxval <= 0 || maxval > 255)
    throw FormatError("unsupported PGM maxval (8-bit only): " + path);

  Raster r;
  r.rows = rows;
  r.cols = cols;
  r.channels = 1;
  r.bytes.resize(static_cast<std::size_t>(rows) * cols);
  in.read(reinterpret_cast<char*>(r.bytes.data()),
          static_cast<std::streamsize>(r.bytes.size()));
  if (in.gcount() != static_cast<std::streamsize>(r.bytes.size()))
    throw FormatError("truncated PGM pixel data: " + path);
  return r;
}

inline Raster read_raster(const std::string& path) {
  std::ifstream probe(path, std::ios::binary);
  if (!probe) throw NotFoundError("cannot open file: " + path);
  unsigned char magic[2] = {0, 0};
  probe.read(reinterpret_cast<char*>(magic), 2);
  probe.close();

  if (magic[0] == 0x89 && magic[1] == 'P') return read_png(path);
  if (magic[0] == 0xFF && magic[1] == 0xD8) return read_jpeg(path);
  if (magic[0] == 'P' && magic[1] == '5') return read_pgm(path);
  throw FormatError("unrecognized raster format: " + path);
}

inline GrayImage raster_to_gray(const Raster& r) {
  GrayImage out(r.rows, r.cols);
  if (r.channels == 1) {
    for (std::size_t i = 0; i < out.size(); ++i)
      out.data()[i] = static_cast<double>(r.bytes[i]);
    return out;
  }
  GrayImage red(r.rows, r.cols), green(r.rows, r.cols), blue(r.rows, r.cols);
  for (std::size_t i = 0; i < red.size(); ++i) {
    red.data()[i] = static_cast<double>(r.bytes[3 * i]);
    green.data()[i] = static_cast<double>(r.bytes[3 * i + 1]);
    blue.data()[i] = static_cast<double>(r.bytes[3 * i + 2]);
  }
  return to_grayscale(red, green, blue);
}

inline std::filesystem::path temp_sibling(const std::filesystem::path& path) {
  auto tmp = path;
  tmp += ".tmp";
  return tmp;
}

}  // namespace detail

// Decode any supported raster to real-valued grayscale on the 0..255 scale.
inline GrayImage load_image(const std::string& path) {
  return detail::raster_to_gray(detail::read_raster(path));
}

// Ground-truth rasters binarize at a cutoff: edge iff pixel value > cutoff.
inline BinaryEdgeMap load_ground_truth(const std::string& path,
                                       int cutoff = 127) {
  const GrayImage g = detail::raster_to_gray(detail::read_raster(path));
  BinaryEdgeMap b(g.rows(), g.cols());
  for (std::size_t i = 0; i < g.size(); ++i)
    b.data()[i] = g.data()[i] > static_cast<double>(cutoff) ? 1 : 0;
  return b;
}

inline void write_pgm(const std::string& path,
                      const std::vector<std::uint8_t>& bytes, int rows,
                      int cols) {
  const auto tmp = detail::temp_sibling(path);
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "P5\n" << cols << " " << rows << "\n255\n";
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
  }
  std::filesystem::rename(tmp, path);
}

inline void write_png_gray(const std::string& path,
                           const std::vector<std::uint8_t>& bytes, int rows,
                           int cols) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(cols);
  image.height = static_cast<png_uint_32>(rows);
  image.format = PNG_FORMAT_GRAY;

  const auto tmp = detail::temp_sibling(path);
  if (!png_image_write_to_file(&image, tmp.c_str(), 0, bytes.data(), 0,
                               nullptr))
    throw std::runtime_error(std::string("PNG encode failed: ") + path +
                             ": " + image.message);
  std::filesystem::rename(tmp, path);
}

// Edge map as an 8-bit raster (edge = 255); format picked by extension,
// .pgm for PGM and anything else PNG.
inline void write_edge_map(const std::string& path, const BinaryEdgeMap& map) {
  std::vector<std::uint8_t> bytes(map.size());
  for (std::size_t i = 0; i < map.size(); ++i)
    bytes[i] = map.data()[i] ? 255 : 0;
  if (std::filesystem::path(path).extension() == ".pgm")
    write_pgm(path, bytes, map.rows(), map.cols());
  else
    write_png_gray(path, bytes, map.rows(), map.cols());
}

}  // namespace edgebench
