#include "dmca/features.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "dmca/errors.hpp"
#include "dmca/rng.hpp"

namespace dmca {

namespace {

// Header token reader for PGM: skips whitespace and '#' comments.
std::string next_pgm_token(std::istream& in) {
    std::string token;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            while ((ch = in.get()) != EOF && ch != '\n') {
            }
            continue;
        }
        if (std::isspace(ch)) {
            if (!token.empty()) return token;
            continue;
        }
        token.push_back(static_cast<char>(ch));
    }
    if (token.empty()) throw FormatError("pgm: truncated header");
    return token;
}

std::size_t parse_pgm_int(const std::string& token) {
    if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
        throw FormatError("pgm: bad header integer '" + token + "'");
    return static_cast<std::size_t>(std::stoull(token));
}

double read_f64_le(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (in.gcount() != 8) throw FormatError("dmat: truncated payload");
    std::uint64_t bits = 0;
    for (int i = 7; i >= 0; --i) bits = (bits << 8) | buf[i];
    return std::bit_cast<double>(bits);
}

void write_f64_le(std::ostream& out, double value) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(value);
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((bits >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint64_t read_u64_le(std::istream& in) {
    unsigned char buf[8];
    in.read(reinterpret_cast<char*>(buf), 8);
    if (in.gcount() != 8) throw FormatError("dmat: truncated header");
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

void write_u64_le(std::ostream& out, std::uint64_t v) {
    char buf[8];
    for (int i = 0; i < 8; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf, 8);
}

std::uint32_t read_u32_le(std::istream& in) {
    unsigned char buf[4];
    in.read(reinterpret_cast<char*>(buf), 4);
    if (in.gcount() != 4) throw FormatError("dmat: truncated header");
    std::uint32_t v = 0;
    for (int i = 3; i >= 0; --i) v = (v << 8) | buf[i];
    return v;
}

}  // namespace

GrayImage load_pgm(std::istream& in) {
    const std::string magic = next_pgm_token(in);
    if (magic != "P5") throw FormatError("pgm: expected magic P5, got '" + magic + "'");
    const std::size_t width = parse_pgm_int(next_pgm_token(in));
    const std::size_t height = parse_pgm_int(next_pgm_token(in));
    const std::size_t maxval = parse_pgm_int(next_pgm_token(in));
    if (width == 0 || height == 0) throw FormatError("pgm: zero dimension");
    if (maxval != 255) throw FormatError("pgm: only maxval 255 is supported");
    // The single whitespace byte after maxval was consumed by the tokenizer.
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(width * height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        throw FormatError("pgm: truncated pixel data");
    return img;
}

GrayImage resize_bilinear(const GrayImage& img, std::size_t w, std::size_t h) {
    if (w == 0 || h == 0) throw ShapeError("resize_bilinear: zero target size");
    GrayImage out;
    out.width = w;
    out.height = h;
    out.pixels.resize(w * h);
    const double sx = static_cast<double>(img.width) / static_cast<double>(w);
    const double sy = static_cast<double>(img.height) / static_cast<double>(h);
    for (std::size_t y = 0; y < h; ++y) {
        double fy = (static_cast<double>(y) + 0.5) * sy - 0.5;
        fy = std::min(std::max(fy, 0.0), static_cast<double>(img.height - 1));
        const std::size_t y0 = static_cast<std::size_t>(fy);
        const std::size_t y1 = std::min(y0 + 1, img.height - 1);
        const double wy = fy - static_cast<double>(y0);
        for (std::size_t x = 0; x < w; ++x) {
            double fx = (static_cast<double>(x) + 0.5) * sx - 0.5;
            fx = std::min(std::max(fx, 0.0), static_cast<double>(img.width - 1));
            const std::size_t x0 = static_cast<std::size_t>(fx);
            const std::size_t x1 = std::min(x0 + 1, img.width - 1);
            const double wx = fx - static_cast<double>(x0);
            const double top = (1.0 - wx) * img.at(x0, y0) + wx * img.at(x1, y0);
            const double bot = (1.0 - wx) * img.at(x0, y1) + wx * img.at(x1, y1);
            const double value = (1.0 - wy) * top + wy * bot;
            out.pixels[y * w + x] =
                static_cast<std::uint8_t>(std::min(255.0, std::floor(value + 0.5)));
        }
    }
    return out;
}

GrayImage center_crop(const GrayImage& img, std::size_t w, std::size_t h) {
    if (w > img.width || h > img.height)
        throw ShapeError("center_crop: crop larger than image");
    if (w == 0 || h == 0) throw ShapeError("center_crop: zero crop size");
    const std::size_t x0 = (img.width - w) / 2;
    const std::size_t y0 = (img.height - h) / 2;
    GrayImage out;
    out.width = w;
    out.height = h;
    out.pixels.resize(w * h);
    for (std::size_t y = 0; y < h; ++y)
        for (std::size_t x = 0; x < w; ++x)
            out.pixels[y * w + x] = img.at(x0 + x, y0 + y);
    return out;
}

std::vector<double> extract_flatten(const GrayImage& img) {
    std::vector<double> out(img.pixels.size());
    for (std::size_t i = 0; i < img.pixels.size(); ++i)
        out[i] = static_cast<double>(img.pixels[i]) / 255.0;
    return out;
}

std::vector<double> extract_lbp(const GrayImage& img) {
    if (img.width < 3 || img.height < 3)
        throw ShapeError("extract_lbp: image smaller than 3x3");
    // Clockwise from top-left: (dy, dx) offsets.
    static constexpr int kOffsets[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, 1},
                                           {1, 1},   {1, 0},  {1, -1}, {0, -1}};
    std::vector<double> hist(256, 0.0);
    std::size_t count = 0;
    for (std::size_t y = 1; y + 1 < img.height; ++y) {
        for (std::size_t x = 1; x + 1 < img.width; ++x) {
            const std::uint8_t center = img.at(x, y);
            unsigned code = 0;
            for (int k = 0; k < 8; ++k) {
                const std::uint8_t neighbor =
                    img.at(x + static_cast<std::size_t>(kOffsets[k][1]),
                           y + static_cast<std::size_t>(kOffsets[k][0]));
                code = (code << 1) | (neighbor >= center ? 1u : 0u);
            }
            hist[code] += 1.0;
            ++count;
        }
    }
    for (double& v : hist) v /= static_cast<double>(count);
    return hist;
}

std::vector<double> randproj_vector(const std::vector<double>& input,
                                    std::uint64_t seed, std::size_t output_dim) {
    if (output_dim == 0) throw DimensionError("randproj: output_dim must be >= 1");
    Rng rng(seed);
    const double scale = 1.0 / std::sqrt(static_cast<double>(output_dim));
    std::vector<double> out(output_dim, 0.0);
    for (std::size_t r = 0; r < output_dim; ++r) {
        double acc = 0.0;
        for (double x : input) acc += scale * rng.gaussian() * x;
        out[r] = acc;
    }
    return out;
}

std::vector<double> extract_randproj(const GrayImage& img, std::uint64_t seed,
                                     std::size_t output_dim) {
    return randproj_vector(extract_flatten(img), seed, output_dim);
}

std::vector<double> ExtractorConfig::apply(const GrayImage& img) const {
    GrayImage work = img;
    if (resize_to > 0) work = resize_bilinear(work, resize_to, resize_to);
    if (crop_to > 0) work = center_crop(work, crop_to, crop_to);
    switch (kind) {
        case ExtractorKind::Flatten:
            return extract_flatten(work);
        case ExtractorKind::Lbp:
            return extract_lbp(work);
        case ExtractorKind::RandProj:
            return extract_randproj(work, seed, output_dim);
    }
    throw InvalidData("extractor: unknown kind");
}

std::vector<double> ExtractorConfig::apply(const std::vector<double>& raw) const {
    switch (kind) {
        case ExtractorKind::Flatten:
            return raw;
        case ExtractorKind::Lbp:
            throw DataError("extractor: lbp requires image input");
        case ExtractorKind::RandProj:
            return randproj_vector(raw, seed, output_dim);
    }
    throw InvalidData("extractor: unknown kind");
}

std::string ExtractorConfig::describe() const {
    std::string base;
    switch (kind) {
        case ExtractorKind::Flatten:
            base = "flatten";
            break;
        case ExtractorKind::Lbp:
            base = "lbp";
            break;
        case ExtractorKind::RandProj:
            base = "randproj(dim=" + std::to_string(output_dim) +
                   ",seed=" + std::to_string(seed) + ")";
            break;
    }
    if (resize_to > 0) base += "+resize" + std::to_string(resize_to);
    if (crop_to > 0) base += "+crop" + std::to_string(crop_to);
    return base;
}

void save_dmat(std::ostream& out, const Matrix& m) {
    out.write("DMAT", 4);
    const std::uint32_t version = 1;
    char vbuf[4];
    for (int i = 0; i < 4; ++i) vbuf[i] = static_cast<char>((version >> (8 * i)) & 0xff);
    out.write(vbuf, 4);
    write_u64_le(out, m.rows());
    write_u64_le(out, m.cols());
    for (double v : m.data()) write_f64_le(out, v);
}

Matrix load_dmat(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, "DMAT", 4) != 0)
        throw FormatError("dmat: bad magic");
    const std::uint32_t version = read_u32_le(in);
    if (version != 1) throw FormatError("dmat: unsupported version");
    const std::uint64_t rows = read_u64_le(in);
    const std::uint64_t cols = read_u64_le(in);
    if (rows == 0 || cols == 0) throw FormatError("dmat: zero dimension");
    constexpr std::uint64_t kMaxElements = 1ull << 32;
    if (rows > kMaxElements || cols > kMaxElements || rows * cols > kMaxElements)
        throw FormatError("dmat: shape overflow");
    Matrix m(static_cast<std::size_t>(rows), static_cast<std::size_t>(cols));
    for (double& v : m.data()) v = read_f64_le(in);
    return m;
}

void save_csv_matrix(std::ostream& out, const Matrix& m) {
    out << m.rows() << ',' << m.cols() << '\n';
    char buf[64];
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            std::snprintf(buf, sizeof(buf), "%.17g", m(r, c));
            if (c) out << ',';
            out << buf;
        }
        out << '\n';
    }
}

Matrix load_csv_matrix(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError("csv: missing header line");
    std::size_t rows = 0, cols = 0;
    if (std::sscanf(line.c_str(), "%zu,%zu", &rows, &cols) != 2)
        throw FormatError("csv: bad header line '" + line + "'");
    if (rows == 0 || cols == 0) throw FormatError("csv: zero dimension");
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        if (!std::getline(in, line)) throw FormatError("csv: truncated rows");
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!std::getline(ss, cell, ',')) throw FormatError("csv: short row");
            try {
                std::size_t used = 0;
                m(r, c) = std::stod(cell, &used);
                while (used < cell.size() && std::isspace(static_cast<unsigned char>(cell[used])))
                    ++used;
                if (used != cell.size()) throw FormatError("csv: bad value '" + cell + "'");
            } catch (const std::invalid_argument&) {
                throw FormatError("csv: bad value '" + cell + "'");
            } catch (const std::out_of_range&) {
                throw FormatError("csv: value out of range '" + cell + "'");
            }
        }
        if (std::getline(ss, cell, ',')) throw FormatError("csv: long row");
    }
    return m;
}

}  // namespace dmca
