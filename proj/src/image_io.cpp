#include "page/image_io.hpp"

#include <jpeglib.h>
#include <png.h>

#include <cctype>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>
#include <vector>

#include "page/errors.hpp"

namespace page {

namespace {

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f) {
            std::fclose(f);
        }
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

LoadedImage planes_from_interleaved(const std::vector<std::uint8_t>& bytes, int height,
                                    int width, int channels) {
    LoadedImage img;
    img.channels.assign(static_cast<std::size_t>(channels), ImagePlane(height, width));
    std::size_t i = 0;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            for (int k = 0; k < channels; ++k) {
                img.channels[static_cast<std::size_t>(k)](r, c) = bytes[i++] / 255.0;
            }
        }
    }
    return img;
}

LoadedImage load_png(std::FILE* f, const std::string& path) {
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error(path + ": failed to initialize PNG decoder");
    }

    std::vector<std::uint8_t> bytes;
    std::vector<png_bytep> rows;
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error(path + ": PNG decode failed");
    }

    png_init_io(png, f);
    png_read_info(png, info);

    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_packing(png);
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_PALETTE) {
        png_set_palette_to_rgb(png);
    }
    if (png_get_color_type(png, info) == PNG_COLOR_TYPE_GRAY &&
        png_get_bit_depth(png, info) < 8) {
        png_set_expand_gray_1_2_4_to_8(png);
    }
    png_read_update_info(png, info);

    const int height = static_cast<int>(png_get_image_height(png, info));
    const int width = static_cast<int>(png_get_image_width(png, info));
    const int channels = png_get_channels(png, info);
    if (height < 1 || width < 1 || (channels != 1 && channels != 3)) {
        png_destroy_read_struct(&png, &info, nullptr);
        throw io_error(path + ": unsupported PNG layout");
    }

    bytes.resize(static_cast<std::size_t>(height) * width * channels);
    rows.resize(static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r) {
        rows[static_cast<std::size_t>(r)] =
            bytes.data() + static_cast<std::size_t>(r) * width * channels;
    }
    png_read_image(png, rows.data());
    png_read_end(png, nullptr);
    png_destroy_read_struct(&png, &info, nullptr);

    return planes_from_interleaved(bytes, height, width, channels);
}

struct JpegErrorMgr {
    jpeg_error_mgr pub;
    std::jmp_buf jump;
};

void jpeg_error_exit(j_common_ptr cinfo) {
    auto* err = reinterpret_cast<JpegErrorMgr*>(cinfo->err);
    std::longjmp(err->jump, 1);
}

LoadedImage load_jpeg(std::FILE* f, const std::string& path) {
    jpeg_decompress_struct cinfo;
    JpegErrorMgr jerr;
    cinfo.err = jpeg_std_error(&jerr.pub);
    jerr.pub.error_exit = jpeg_error_exit;

    std::vector<std::uint8_t> bytes;
    if (setjmp(jerr.jump)) {
        jpeg_destroy_decompress(&cinfo);
        throw io_error(path + ": JPEG decode failed");
    }

    jpeg_create_decompress(&cinfo);
    jpeg_stdio_src(&cinfo, f);
    jpeg_read_header(&cinfo, TRUE);
    cinfo.out_color_space = cinfo.num_components == 1 ? JCS_GRAYSCALE : JCS_RGB;
    jpeg_start_decompress(&cinfo);

    const int height = static_cast<int>(cinfo.output_height);
    const int width = static_cast<int>(cinfo.output_width);
    const int channels = cinfo.output_components;
    bytes.resize(static_cast<std::size_t>(height) * width * channels);
    while (cinfo.output_scanline < cinfo.output_height) {
        JSAMPROW row = bytes.data() +
                       static_cast<std::size_t>(cinfo.output_scanline) * width * channels;
        jpeg_read_scanlines(&cinfo, &row, 1);
    }
    jpeg_finish_decompress(&cinfo);
    jpeg_destroy_decompress(&cinfo);

    return planes_from_interleaved(bytes, height, width, channels);
}

int pgm_next_value(std::istream& in, const std::string& path) {
    // Skips whitespace and '#' comment lines between header tokens.
    while (true) {
        const int ch = in.peek();
        if (ch == '#') {
            std::string line;
            std::getline(in, line);
        } else if (std::isspace(ch)) {
            in.get();
        } else {
            break;
        }
    }
    int value = -1;
    if (!(in >> value) || value < 0) {
        throw io_error(path + ": malformed PGM header");
    }
    return value;
}

LoadedImage load_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error(path + ": cannot open file");
    }
    char magic[2] = {0, 0};
    in.read(magic, 2);
    if (magic[0] != 'P' || (magic[1] != '2' && magic[1] != '5')) {
        throw io_error(path + ": not a PGM file");
    }
    const bool binary = magic[1] == '5';

    const int width = pgm_next_value(in, path);
    const int height = pgm_next_value(in, path);
    const int maxval = pgm_next_value(in, path);
    if (width < 1 || height < 1 || maxval < 1 || maxval > 65535) {
        throw io_error(path + ": malformed PGM header");
    }

    LoadedImage img;
    img.channels.assign(1, ImagePlane(height, width));
    ImagePlane& plane = img.channels.front();
    const double scale = 1.0 / maxval;

    if (binary) {
        in.get();  // single whitespace byte after maxval
        const int bytes_per_sample = maxval > 255 ? 2 : 1;
        std::vector<std::uint8_t> raw(
            static_cast<std::size_t>(height) * width * bytes_per_sample);
        in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
        if (in.gcount() != static_cast<std::streamsize>(raw.size())) {
            throw io_error(path + ": truncated PGM data");
        }
        std::size_t i = 0;
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                int value = raw[i++];
                if (bytes_per_sample == 2) {
                    value = (value << 8) | raw[i++];  // big-endian per the format
                }
                plane(r, c) = value * scale;
            }
        }
    } else {
        for (int r = 0; r < height; ++r) {
            for (int c = 0; c < width; ++c) {
                int value = -1;
                if (!(in >> value) || value < 0 || value > maxval) {
                    throw io_error(path + ": malformed PGM data");
                }
                plane(r, c) = value * scale;
            }
        }
    }
    return img;
}

}  // namespace

LoadedImage load_image(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f) {
        throw io_error(path + ": cannot open file");
    }
    unsigned char magic[2] = {0, 0};
    if (std::fread(magic, 1, 2, f.get()) != 2) {
        throw io_error(path + ": file too short");
    }
    std::rewind(f.get());

    if (magic[0] == 0x89 && magic[1] == 'P') {
        return load_png(f.get(), path);
    }
    if (magic[0] == 0xFF && magic[1] == 0xD8) {
        return load_jpeg(f.get(), path);
    }
    if (magic[0] == 'P' && (magic[1] == '2' || magic[1] == '5')) {
        f.reset();
        return load_pgm(path);
    }
    throw io_error(path + ": unrecognized image format (expected PNG, JPEG, or PGM)");
}

ImagePlane to_grayscale(const LoadedImage& img) {
    if (img.channels.empty()) {
        throw invalid_parameter("image: no channels");
    }
    if (img.channels.size() == 1) {
        return img.channels.front();
    }
    if (img.channels.size() != 3) {
        throw invalid_parameter("image: luma collapse expects 1 or 3 channels");
    }
    const int h = img.height();
    const int w = img.width();
    ImagePlane gray(h, w);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            gray(r, c) = 0.299 * img.channels[0](r, c) + 0.587 * img.channels[1](r, c) +
                         0.114 * img.channels[2](r, c);
        }
    }
    return gray;
}

namespace {

void write_png(const std::string& path, int height, int width, int color_type,
               int channels, const std::uint8_t* data) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f) {
        throw io_error(path + ": cannot open file for writing");
    }
    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        png_destroy_write_struct(&png, &info);
        throw io_error(path + ": failed to initialize PNG encoder");
    }

    std::vector<png_bytep> rows(static_cast<std::size_t>(height));
    for (int r = 0; r < height; ++r) {
        rows[static_cast<std::size_t>(r)] = const_cast<png_bytep>(
            data + static_cast<std::size_t>(r) * width * channels);
    }

    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        throw io_error(path + ": PNG encode failed");
    }
    png_init_io(png, f.get());
    png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height),
                 8, color_type, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);
    png_write_info(png, info);
    png_write_image(png, rows.data());
    png_write_end(png, nullptr);
    png_destroy_write_struct(&png, &info);
}

}  // namespace

void save_png_gray(const std::string& path, const Array2D<std::uint8_t>& pixels) {
    write_png(path, pixels.rows(), pixels.cols(), PNG_COLOR_TYPE_GRAY, 1, pixels.data());
}

void save_png_rgb(const std::string& path, const RgbImage& img) {
    write_png(path, img.height, img.width, PNG_COLOR_TYPE_RGB, 3, img.pixels.data());
}

}  // namespace page
