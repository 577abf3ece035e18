#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dmca/matrix.hpp"

namespace dmca {

struct GrayImage {
    std::size_t width = 0;
    std::size_t height = 0;
    std::vector<std::uint8_t> pixels;  // row-major

    std::uint8_t at(std::size_t x, std::size_t y) const { return pixels[y * width + x]; }
};

// Binary PGM (magic "P5", maxval 255). Anything else is a FormatError.
GrayImage load_pgm(std::istream& in);

// Bilinear resampling with pixel-center alignment:
// src = (dst + 0.5) * scale - 0.5, clamped; values rounded half-up.
GrayImage resize_bilinear(const GrayImage& img, std::size_t w, std::size_t h);

// Crop origin floor((width - w) / 2), floor((height - h) / 2).
GrayImage center_crop(const GrayImage& img, std::size_t w, std::size_t h);

// Row-major pixels scaled to [0, 1].
std::vector<double> extract_flatten(const GrayImage& img);

// 256-bin L1-normalized histogram of 8-neighbor codes over interior
// pixels. Neighbors are read clockwise from the top-left, first neighbor
// in the most significant bit; a bit is set when neighbor >= center.
std::vector<double> extract_lbp(const GrayImage& img);

// Flatten then multiply by a seeded Gaussian matrix with entries
// N(0, 1/output_dim). Deterministic per (seed, image dimensions).
std::vector<double> extract_randproj(const GrayImage& img, std::uint64_t seed,
                                     std::size_t output_dim);

// Same Gaussian projection applied to an arbitrary feature vector.
std::vector<double> randproj_vector(const std::vector<double>& input,
                                    std::uint64_t seed, std::size_t output_dim);

enum class ExtractorKind { Flatten, Lbp, RandProj };

// Declared feature pipeline for one modality: optional square resize and
// center crop (images only, 0 disables), then the extractor itself.
// Samples carrying precomputed vectors skip the image stages; flatten
// passes them through, randproj projects them, lbp rejects them.
struct ExtractorConfig {
    ExtractorKind kind = ExtractorKind::Flatten;
    std::uint64_t seed = 0;        // randproj only
    std::size_t output_dim = 0;    // randproj only
    std::size_t resize_to = 0;
    std::size_t crop_to = 0;

    std::vector<double> apply(const GrayImage& img) const;
    std::vector<double> apply(const std::vector<double>& raw) const;
    std::string describe() const;
};

// Binary feature-matrix format: magic "DMAT", u32 version = 1, u64 rows,
// u64 cols, then rows*cols little-endian f64 values, row-major.
void save_dmat(std::ostream& out, const Matrix& m);
Matrix load_dmat(std::istream& in);

// CSV alternative: first line "rows,cols", then one comma-separated row
// per line. Values are written with round-trip precision.
void save_csv_matrix(std::ostream& out, const Matrix& m);
Matrix load_csv_matrix(std::istream& in);

}  // namespace dmca
