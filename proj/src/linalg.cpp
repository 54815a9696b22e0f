#include "dgd/linalg.hpp"

namespace dgd {

Mat Mat::identity(int64_t n, int64_t conductor) {
    Mat m(n, n, conductor);
    for (int64_t i = 0; i < n; ++i) m.at(i, i) = CycNum::one(conductor);
    return m;
}

Mat Mat::operator*(const Mat& o) const {
    if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape");
    Mat r(rows_, o.cols_, n_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t k = 0; k < cols_; ++k) {
            const CycNum& x = at(i, k);
            if (x.is_zero()) continue;
            for (int64_t j = 0; j < o.cols_; ++j) {
                const CycNum& y = o.at(k, j);
                if (y.is_zero()) continue;
                r.at(i, j) += x * y;
            }
        }
    return r;
}

Mat Mat::operator+(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] += o.a_[i];
    return r;
}

Mat Mat::operator-(const Mat& o) const {
    Mat r = *this;
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] -= o.a_[i];
    return r;
}

std::vector<CycNum> Mat::apply(const std::vector<CycNum>& v) const {
    if ((int64_t)v.size() != cols_) throw ShapeMismatch("matrix apply shape");
    std::vector<CycNum> r(rows_, CycNum::zero(n_));
    for (int64_t j = 0; j < cols_; ++j) {
        if (v[j].is_zero()) continue;
        for (int64_t i = 0; i < rows_; ++i) {
            if (at(i, j).is_zero()) continue;
            r[i] += at(i, j) * v[j];
        }
    }
    return r;
}

namespace {

// Row echelon elimination in place; returns pivot columns.  Skips zero
// multipliers, which keeps sparse inputs fast.
std::vector<int64_t> echelon(Mat& m) {
    std::vector<int64_t> pivots;
    int64_t r = 0;
    for (int64_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        int64_t p = -1;
        for (int64_t i = r; i < m.rows(); ++i)
            if (!m.at(i, c).is_zero()) {
                // prefer rational pivots: cheaper inverses
                if (p < 0 || (m.at(i, c).is_rational() && !m.at(p, c).is_rational())) p = i;
                if (m.at(i, c).is_rational()) break;
            }
        if (p < 0) continue;
        if (p != r)
            for (int64_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        CycNum inv = m.at(r, c).inverse();
        for (int64_t j = c; j < m.cols(); ++j)
            if (!m.at(r, j).is_zero()) m.at(r, j) *= inv;
        for (int64_t i = 0; i < m.rows(); ++i) {
            if (i == r || m.at(i, c).is_zero()) continue;
            CycNum f = m.at(i, c);
            for (int64_t j = c; j < m.cols(); ++j)
                if (!m.at(r, j).is_zero()) m.at(i, j) -= f * m.at(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

}  // namespace

int64_t Mat::rank() const {
    Mat m = *this;
    return (int64_t)echelon(m).size();
}

std::optional<Mat> Mat::inverse() const {
    if (rows_ != cols_) return std::nullopt;
    Mat aug(rows_, 2 * cols_, n_);
    for (int64_t i = 0; i < rows_; ++i) {
        for (int64_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = CycNum::one(n_);
    }
    auto piv = echelon(aug);
    if ((int64_t)piv.size() != rows_) return std::nullopt;
    Mat inv(rows_, cols_, n_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t j = 0; j < cols_; ++j) inv.at(i, j) = aug.at(i, cols_ + j);
    return inv;
}

std::optional<Mat> Mat::solve(const Mat& b) const {
    if (b.rows() != rows_) throw ShapeMismatch("solve rhs row count");
    Mat aug(rows_, cols_ + b.cols(), n_);
    for (int64_t i = 0; i < rows_; ++i) {
        for (int64_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        for (int64_t j = 0; j < b.cols(); ++j) aug.at(i, cols_ + j) = b.at(i, j);
    }
    Mat work = aug;
    auto piv = echelon(work);
    // inconsistent if a pivot lands in the rhs block
    for (int64_t c : piv)
        if (c >= cols_) return std::nullopt;
    Mat x(cols_, b.cols(), n_);
    for (size_t k = 0; k < piv.size(); ++k)
        for (int64_t j = 0; j < b.cols(); ++j) x.at(piv[k], j) = work.at((int64_t)k, cols_ + j);
    // verify (guards the free-variable case)
    Mat check = (*this) * x;
    for (int64_t i = 0; i < b.rows(); ++i)
        for (int64_t j = 0; j < b.cols(); ++j)
            if (!(check.at(i, j) == b.at(i, j))) return std::nullopt;
    return x;
}

Mat Mat::kernel() const {
    Mat m = *this;
    auto piv = echelon(m);
    std::vector<bool> is_piv(cols_, false);
    for (int64_t c : piv) is_piv[c] = true;
    int64_t nfree = cols_ - (int64_t)piv.size();
    Mat k(cols_, nfree, n_);
    int64_t idx = 0;
    for (int64_t c = 0; c < cols_; ++c) {
        if (is_piv[c]) continue;
        k.at(c, idx) = CycNum::one(n_);
        for (size_t r = 0; r < piv.size(); ++r) k.at(piv[r], idx) = -m.at((int64_t)r, c);
        ++idx;
    }
    return k;
}

Mat Mat::transposed() const {
    Mat t(cols_, rows_, n_);
    for (int64_t i = 0; i < rows_; ++i)
        for (int64_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

}  // namespace dgd
