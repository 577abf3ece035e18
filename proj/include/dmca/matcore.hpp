#pragma once

#include <cstddef>
#include <vector>

#include "dmca/matrix.hpp"
#include "dmca/pairing.hpp"

namespace dmca {

// Top-q singular triplets of a rectangular matrix.
//   left:  rows x q, column-orthonormal
//   right: cols x q, column-orthonormal
//   sigma: q nonnegative values, descending
// Sign convention: in each left column the entry of largest magnitude is
// nonnegative; the paired right column is flipped with it.
struct SvdResult {
    Matrix left;
    Matrix right;
    std::vector<double> sigma;
};

struct CenterResult {
    Matrix centered;
    std::vector<double> mean;  // per-row mean that was subtracted
};

// Subtracts the per-row mean. Throws InvalidData on non-finite input.
CenterResult center_columns(const Matrix& m);

// Per-row z-scoring (center then divide by the row standard deviation);
// rows with zero variance are left centered. Opt-in preprocessing.
struct StandardizeResult {
    Matrix standardized;
    std::vector<double> mean;
    std::vector<double> scale;  // divisor applied per row
};
StandardizeResult standardize_rows(const Matrix& m);

// C = A Pi B^T over the matched pairs, unscaled:
// C[r][s] = sum over (i,j) in pairing of a(r,i) * b(s,j).
Matrix cross_covariance(const Matrix& a, const Matrix& b,
                        const PairingMatrix& pairing);

// Top-q SVD by one-sided Jacobi. Kernel tolerance 1e-10, at most 10000
// sweeps; exceeding the cap throws NumericalError. q out of
// [1, min(rows, cols)] throws DimensionError.
SvdResult truncated_svd(const Matrix& c, std::size_t q);

// Orthonormal basis (dim x q) of the top-q principal directions of the
// centered sample covariance. Requires q <= min(dim, count - 1).
Matrix pca_fit(const Matrix& m, std::size_t q);

// Column j of the result is basis^T (m_j - mean).
Matrix project(const Matrix& basis, const Matrix& m,
               const std::vector<double>& mean);

}  // namespace dmca
