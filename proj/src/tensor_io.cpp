#include "page/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "page/errors.hpp"

namespace page {

namespace {

void put_u16le(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xFF));
    out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put_u32le(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
    }
}

void put_f64le(std::string& out, double v) {
    const auto bits = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xFF));
    }
}

std::uint16_t get_u16le(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t get_u32le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64le(const std::uint8_t* p) {
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) {
        bits = (bits << 8) | p[i];
    }
    return std::bit_cast<double>(bits);
}

}  // namespace

void write_feature_tensor(const std::string& path, const FeatureTensor& tensor) {
    std::string out;
    out.reserve(15 + tensor.channels.size() * static_cast<std::size_t>(tensor.height()) *
                         tensor.width() * 8);
    out += "PAGE";
    put_u16le(out, kTensorFormatVersion);
    put_u32le(out, static_cast<std::uint32_t>(tensor.height()));
    put_u32le(out, static_cast<std::uint32_t>(tensor.width()));
    put_u32le(out, static_cast<std::uint32_t>(tensor.bins()));
    out.push_back(tensor.params.morph_flag ? 1 : 0);
    for (const Array2D<double>& plane : tensor.channels) {
        for (const double v : plane) {
            put_f64le(out, v);
        }
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw io_error(path + ": cannot open file for writing");
    }
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file) {
        throw io_error(path + ": write failed");
    }
}

TensorFile read_feature_tensor(const std::string& path) {
    std::ifstream file(path, std::ios::binary);
    if (!file) {
        throw io_error(path + ": cannot open file");
    }
    std::vector<std::uint8_t> raw((std::istreambuf_iterator<char>(file)),
                                  std::istreambuf_iterator<char>());
    if (raw.size() < 19 || std::memcmp(raw.data(), "PAGE", 4) != 0) {
        throw io_error(path + ": not a feature tensor file");
    }
    if (get_u16le(raw.data() + 4) != kTensorFormatVersion) {
        throw io_error(path + ": unsupported tensor format version");
    }

    TensorFile tf;
    tf.height = get_u32le(raw.data() + 6);
    tf.width = get_u32le(raw.data() + 10);
    tf.bins = get_u32le(raw.data() + 14);
    tf.mode = raw[18];

    const std::size_t count =
        static_cast<std::size_t>(tf.height) * tf.width * tf.bins;
    if (raw.size() != 19 + count * 8) {
        throw io_error(path + ": truncated tensor data");
    }
    tf.data.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        tf.data[i] = get_f64le(raw.data() + 19 + i * 8);
    }
    return tf;
}

}  // namespace page
