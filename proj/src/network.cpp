#include "pilkit/network.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "pilkit/errors.hpp"

namespace pilkit {

Matrix append_ones_column(const Matrix& y) {
    Matrix out(y.rows(), y.cols() + 1, 0.0);
    for (std::size_t i = 0; i < y.rows(); ++i) {
        for (std::size_t j = 0; j < y.cols(); ++j) {
            out(i, j) = y(i, j);
        }
        out(i, y.cols()) = 1.0;
    }
    return out;
}

Matrix forward(const PilNetwork& net, const Matrix& x) {
    if (net.layers.empty()) {
        throw ConfigError("network has no layers");
    }
    Matrix y = x;
    for (std::size_t l = 0; l + 1 < net.layers.size(); ++l) {
        y = apply(net.hidden_activation, y * net.layers[l]);
        if (net.bias_policy.hidden_bias) {
            y = append_ones_column(y);
        }
    }
    return apply(net.output_activation, y * net.layers.back());
}

double sse_value(const Matrix& output, const Matrix& target) {
    if (output.rows() != target.rows() || output.cols() != target.cols()) {
        throw ShapeMismatchError("output shape " + std::to_string(output.rows()) + "x" +
                                 std::to_string(output.cols()) + " vs target " +
                                 std::to_string(target.rows()) + "x" +
                                 std::to_string(target.cols()));
    }
    double sq = 0.0;
    const auto oe = output.entries();
    const auto te = target.entries();
    for (std::size_t i = 0; i < oe.size(); ++i) {
        const double d = oe[i] - te[i];
        sq += d * d;
    }
    return sq / (2.0 * static_cast<double>(target.rows()));
}

double sse(const PilNetwork& net, const Matrix& x, const Matrix& t) {
    return sse_value(forward(net, x), t);
}

double sse(const PilNetwork& net, const Dataset& data) {
    return sse(net, data.x, data.t);
}

// ---------------------------------------------------------------------------
// Model image. Layout (all integers little-endian):
//   bytes 0-7   magic "PILNET\0\0"
//   u32         format version (currently 1)
//   u8 u8       hidden / output activation kind
//   u8          bias flags (bit0 input, bit1 hidden)
//   u8          reserved, zero
//   f64 f64     hidden / output activation param
//   u32 + n     meta string
//   u32         layer count
//   per layer:  u32 rows, u32 cols, rows*cols f64
// ---------------------------------------------------------------------------

namespace {

constexpr char kMagic[8] = {'P', 'I', 'L', 'N', 'E', 'T', '\0', '\0'};
constexpr std::uint32_t kFormatVersion = 1;

static_assert(std::endian::native == std::endian::little,
              "serializer assumes a little-endian host for f64 payload copies");

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) {
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
    }
}

void put_f64(std::string& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int i = 0; i < 8; ++i) {
        out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
    }
}

class Reader {
public:
    explicit Reader(const std::string& bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }

    void need(std::size_t n, const char* what) const {
        if (bytes_.size() - pos_ < n) {
            throw FormatError(std::string("truncated model image while reading ") + what, pos_);
        }
    }

    std::uint8_t u8(const char* what) {
        need(1, what);
        return static_cast<std::uint8_t>(bytes_[pos_++]);
    }

    std::uint32_t u32(const char* what) {
        need(4, what);
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) {
            v |= static_cast<std::uint32_t>(static_cast<std::uint8_t>(bytes_[pos_ + i]))
                 << (8 * i);
        }
        pos_ += 4;
        return v;
    }

    double f64(const char* what) {
        need(8, what);
        std::uint64_t bits = 0;
        for (int i = 0; i < 8; ++i) {
            bits |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(bytes_[pos_ + i]))
                    << (8 * i);
        }
        pos_ += 8;
        double v;
        std::memcpy(&v, &bits, 8);
        return v;
    }

    std::string str(std::size_t n, const char* what) {
        need(n, what);
        std::string s = bytes_.substr(pos_, n);
        pos_ += n;
        return s;
    }

    bool exhausted() const { return pos_ == bytes_.size(); }

private:
    const std::string& bytes_;
    std::size_t pos_ = 0;
};

ActivationKind kind_from_byte(std::uint8_t b, std::size_t offset) {
    switch (b) {
        case 0: return ActivationKind::linear;
        case 1: return ActivationKind::tanh;
        case 2: return ActivationKind::sigmoid;
        case 3: return ActivationKind::step;
        case 4: return ActivationKind::gaussian;
    }
    throw FormatError("unknown activation kind byte " + std::to_string(b), offset);
}

std::uint8_t byte_from_kind(ActivationKind k) {
    switch (k) {
        case ActivationKind::linear: return 0;
        case ActivationKind::tanh: return 1;
        case ActivationKind::sigmoid: return 2;
        case ActivationKind::step: return 3;
        case ActivationKind::gaussian: return 4;
    }
    return 0xff;
}

}  // namespace

std::string serialize(const PilNetwork& net) {
    if (net.layers.empty()) {
        throw ConfigError("refusing to serialize a network with no layers");
    }
    std::string out;
    out.append(kMagic, sizeof kMagic);
    put_u32(out, kFormatVersion);
    out.push_back(static_cast<char>(byte_from_kind(net.hidden_activation.kind)));
    out.push_back(static_cast<char>(byte_from_kind(net.output_activation.kind)));
    out.push_back(static_cast<char>((net.bias_policy.input_bias ? 1 : 0) |
                                    (net.bias_policy.hidden_bias ? 2 : 0)));
    out.push_back('\0');
    put_f64(out, net.hidden_activation.param);
    put_f64(out, net.output_activation.param);
    put_u32(out, static_cast<std::uint32_t>(net.meta.size()));
    out += net.meta;
    put_u32(out, static_cast<std::uint32_t>(net.layers.size()));
    for (const Matrix& w : net.layers) {
        put_u32(out, static_cast<std::uint32_t>(w.rows()));
        put_u32(out, static_cast<std::uint32_t>(w.cols()));
        for (double v : w.entries()) {
            put_f64(out, v);
        }
    }
    return out;
}

PilNetwork deserialize(const std::string& bytes) {
    Reader r(bytes);
    const std::string magic = r.str(sizeof kMagic, "magic");
    if (std::memcmp(magic.data(), kMagic, sizeof kMagic) != 0) {
        throw FormatError("not a model image (bad magic)", 0);
    }
    const std::uint32_t version = r.u32("version");
    if (version != kFormatVersion) {
        throw FormatError("model format version mismatch: expected " +
                              std::to_string(kFormatVersion) + ", found " +
                              std::to_string(version),
                          8);
    }

    PilNetwork net;
    const std::size_t kind_off = r.offset();
    net.hidden_activation.kind = kind_from_byte(r.u8("hidden activation"), kind_off);
    net.output_activation.kind = kind_from_byte(r.u8("output activation"), kind_off + 1);
    const std::uint8_t bias = r.u8("bias flags");
    net.bias_policy.input_bias = (bias & 1) != 0;
    net.bias_policy.hidden_bias = (bias & 2) != 0;
    r.u8("reserved byte");
    net.hidden_activation.param = r.f64("hidden activation param");
    net.output_activation.param = r.f64("output activation param");

    const std::uint32_t meta_len = r.u32("meta length");
    net.meta = r.str(meta_len, "meta string");

    const std::uint32_t n_layers = r.u32("layer count");
    if (n_layers == 0) {
        throw FormatError("model image has no layers", r.offset() - 4);
    }
    net.layers.reserve(n_layers);
    for (std::uint32_t l = 0; l < n_layers; ++l) {
        const std::uint32_t rows = r.u32("layer rows");
        const std::uint32_t cols = r.u32("layer cols");
        if (rows == 0 || cols == 0) {
            throw FormatError("layer " + std::to_string(l) + " has zero dimension",
                              r.offset() - 8);
        }
        const std::size_t payload_off = r.offset();
        r.need(static_cast<std::size_t>(rows) * cols * 8, "layer weights");
        std::vector<double> entries(static_cast<std::size_t>(rows) * cols);
        for (double& v : entries) {
            v = r.f64("layer weight");
        }
        for (double v : entries) {
            if (!std::isfinite(v)) {
                throw FormatError("non-finite weight in layer " + std::to_string(l),
                                  payload_off);
            }
        }
        net.layers.emplace_back(rows, cols, std::move(entries));
    }
    if (!r.exhausted()) {
        throw FormatError("trailing bytes after model payload", r.offset());
    }
    return net;
}

void save_pilnet(const PilNetwork& net, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write model file: " + path);
    }
    const std::string bytes = serialize(net);
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) {
        throw IoError("write failed: " + path);
    }
}

PilNetwork load_pilnet(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open model file: " + path);
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes);
}

}  // namespace pilkit
