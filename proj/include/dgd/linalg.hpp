#pragma once

#include <optional>
#include <vector>

#include "dgd/cyclotomic.hpp"

namespace dgd {

/// Dense matrix over Q(zeta_N).  All entries share one conductor.
class Mat {
public:
    Mat() : rows_(0), cols_(0), n_(1) {}
    Mat(int64_t rows, int64_t cols, int64_t conductor)
        : rows_(rows), cols_(cols), n_(conductor), a_(rows * cols, CycNum::zero(conductor)) {}

    static Mat identity(int64_t n, int64_t conductor);

    int64_t rows() const { return rows_; }
    int64_t cols() const { return cols_; }
    int64_t conductor() const { return n_; }

    CycNum& at(int64_t i, int64_t j) { return a_[i * cols_ + j]; }
    const CycNum& at(int64_t i, int64_t j) const { return a_[i * cols_ + j]; }

    Mat operator*(const Mat& o) const;
    Mat operator+(const Mat& o) const;
    Mat operator-(const Mat& o) const;
    bool operator==(const Mat& o) const = default;

    std::vector<CycNum> apply(const std::vector<CycNum>& v) const;

    int64_t rank() const;
    bool invertible() const { return rows_ == cols_ && rank() == rows_; }
    std::optional<Mat> inverse() const;

    /// Solve A x = b; nullopt when inconsistent.  Columns of b are independent
    /// right-hand sides.
    std::optional<Mat> solve(const Mat& b) const;

    /// Basis of the right kernel (as columns).
    Mat kernel() const;

    Mat transposed() const;

private:
    int64_t rows_, cols_, n_;
    std::vector<CycNum> a_;
};

}  // namespace dgd
