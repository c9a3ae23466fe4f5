#include "polar/bitmatrix.hpp"

#include <sstream>
#include <stdexcept>

namespace polar {

namespace {
constexpr int kMaxKernelExponent = 20;  // dense N x N beyond this is never needed
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), words_per_row_((cols + 63) / 64) {
    // Zero rows or columns give an empty matrix (rate-1 codes have no checks).
    bits_.assign(rows_ * words_per_row_, 0);
}

BitMatrix BitMatrix::identity(std::size_t n) {
    if (n == 0) {
        throw std::invalid_argument("identity: n must be positive");
    }
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m.set(i, i, true);
    }
    return m;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const {
    if (i >= rows_ || j >= cols_) {
        throw std::out_of_range("BitMatrix::get: index out of range");
    }
    return (bits_[i * words_per_row_ + j / 64] >> (j % 64)) & 1u;
}

void BitMatrix::set(std::size_t i, std::size_t j, bool value) {
    if (i >= rows_ || j >= cols_) {
        throw std::out_of_range("BitMatrix::set: index out of range");
    }
    std::uint64_t& w = bits_[i * words_per_row_ + j / 64];
    const std::uint64_t mask = std::uint64_t{1} << (j % 64);
    if (value) {
        w |= mask;
    } else {
        w &= ~mask;
    }
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    xor_row_from(dst, *this, src);
}

void BitMatrix::xor_row_from(std::size_t dst, const BitMatrix& other, std::size_t src) {
    if (dst >= rows_ || src >= other.rows_ || cols_ != other.cols_) {
        throw std::invalid_argument("BitMatrix::xor_row_from: bad row or width mismatch");
    }
    const std::uint64_t* s = &other.bits_[src * other.words_per_row_];
    std::uint64_t* d = &bits_[dst * words_per_row_];
    for (std::size_t w = 0; w < words_per_row_; ++w) {
        d[w] ^= s[w];
    }
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::uint64_t* row = &bits_[i * words_per_row_];
        for (std::size_t w = 0; w < words_per_row_; ++w) {
            std::uint64_t word = row[w];
            while (word != 0) {
                const int b = __builtin_ctzll(word);
                word &= word - 1;
                t.set(w * 64 + static_cast<std::size_t>(b), i, true);
            }
        }
    }
    return t;
}

bool BitMatrix::is_zero() const {
    for (std::uint64_t w : bits_) {
        if (w != 0) return false;
    }
    return true;
}

bool BitMatrix::operator==(const BitMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && bits_ == other.bits_;
}

std::string BitMatrix::to_text() const {
    std::ostringstream out;
    out << rows_ << ' ' << cols_ << '\n';
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) {
            out << (get(i, j) ? '1' : '0');
        }
        out << '\n';
    }
    return out.str();
}

BitMatrix BitMatrix::from_text(const std::string& text) {
    std::istringstream in(text);
    std::size_t rows = 0, cols = 0;
    if (!(in >> rows >> cols)) {
        throw std::invalid_argument("BitMatrix::from_text: missing header");
    }
    BitMatrix m(rows, cols);
    std::string line;
    std::getline(in, line);  // rest of header line
    for (std::size_t i = 0; i < rows; ++i) {
        if (!std::getline(in, line) || line.size() < cols) {
            throw std::invalid_argument("BitMatrix::from_text: truncated row");
        }
        for (std::size_t j = 0; j < cols; ++j) {
            if (line[j] == '1') {
                m.set(i, j, true);
            } else if (line[j] != '0') {
                throw std::invalid_argument("BitMatrix::from_text: bad character");
            }
        }
    }
    return m;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t r = 0; r < b.rows(); ++r) {
                for (std::size_t c = 0; c < b.cols(); ++c) {
                    if (b.get(r, c)) {
                        out.set(i * b.rows() + r, j * b.cols() + c, true);
                    }
                }
            }
        }
    }
    return out;
}

BitMatrix f_matrix(int m) {
    if (m < 1 || m > kMaxKernelExponent) {
        throw std::invalid_argument("f_matrix: exponent must be in [1, 20]");
    }
    BitMatrix f(1, 1);
    f.set(0, 0, true);
    for (int level = 0; level < m; ++level) {
        const std::size_t n = f.rows();
        BitMatrix next(2 * n, 2 * n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (!f.get(i, j)) continue;
                next.set(i, j, true);
                next.set(n + i, j, true);
                next.set(n + i, n + j, true);
            }
        }
        f = std::move(next);
    }
    return f;
}

BitMatrix mul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mul: inner dimensions do not match");
    }
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) {
                out.xor_row_from(i, b, j);
            }
        }
    }
    return out;
}

std::vector<std::uint8_t> mul_vec_mat(const std::vector<std::uint8_t>& v, const BitMatrix& a) {
    if (v.size() != a.rows()) {
        throw std::invalid_argument("mul_vec_mat: length mismatch");
    }
    std::vector<std::uint8_t> out(a.cols(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!(v[i] & 1)) continue;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            out[j] ^= a.get(i, j) ? 1 : 0;
        }
    }
    return out;
}

std::vector<std::uint8_t> mul_mat_vec(const BitMatrix& a, const std::vector<std::uint8_t>& x) {
    if (x.size() != a.cols()) {
        throw std::invalid_argument("mul_mat_vec: length mismatch");
    }
    std::vector<std::uint8_t> out(a.rows(), 0);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        std::uint8_t acc = 0;
        for (std::size_t j = 0; j < a.cols(); ++j) {
            acc ^= (a.get(i, j) && (x[j] & 1)) ? 1 : 0;
        }
        out[i] = acc;
    }
    return out;
}

std::vector<std::uint8_t> solve_lower_unitriangular(const BitMatrix& l,
                                                    const std::vector<std::uint8_t>& rhs) {
    const std::size_t n = l.rows();
    if (l.cols() != n) {
        throw std::invalid_argument("solve_lower_unitriangular: matrix must be square");
    }
    if (rhs.size() != n) {
        throw std::invalid_argument("solve_lower_unitriangular: rhs length mismatch");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!l.get(i, i)) {
            throw std::invalid_argument("solve_lower_unitriangular: zero diagonal entry");
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (l.get(i, j)) {
                throw std::invalid_argument("solve_lower_unitriangular: matrix is not lower-triangular");
            }
        }
    }
    std::vector<std::uint8_t> x(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::uint8_t acc = rhs[i] & 1;
        for (std::size_t j = 0; j < i; ++j) {
            acc ^= (l.get(i, j) && x[j]) ? 1 : 0;
        }
        x[i] = acc;
    }
    return x;
}

}  // namespace polar
