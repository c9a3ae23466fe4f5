#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace polar {

/// Dense GF(2) matrix with machine-word-packed rows.
/// All arithmetic is modulo 2; row XOR is the dominant operation.
class BitMatrix {
public:
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, bool value);

    /// rows[dst] ^= rows[src]
    void xor_row(std::size_t dst, std::size_t src);

    /// XOR row `src` of `other` into row `dst` of this (same column count required).
    void xor_row_from(std::size_t dst, const BitMatrix& other, std::size_t src);

    BitMatrix transposed() const;

    bool is_zero() const;

    bool operator==(const BitMatrix& other) const;
    bool operator!=(const BitMatrix& other) const { return !(*this == other); }

    /// Plain-text form: first line "rows cols", then one line of '0'/'1'
    /// characters per row, no separators.
    std::string to_text() const;
    static BitMatrix from_text(const std::string& text);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t words_per_row_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Kronecker product over GF(2): block (i,j) of the result is a(i,j) * b.
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

/// The 2^m x 2^m polar kernel power, built by the block recursion
/// [[F(m-1), 0], [F(m-1), F(m-1)]] starting from [[1,0],[1,1]].
/// Guarded to 1 <= m <= 20.
BitMatrix f_matrix(int m);

/// GF(2) matrix product; throws on inner-dimension mismatch.
BitMatrix mul(const BitMatrix& a, const BitMatrix& b);

/// Row vector times matrix over GF(2).
std::vector<std::uint8_t> mul_vec_mat(const std::vector<std::uint8_t>& v, const BitMatrix& a);

/// Matrix times column vector over GF(2).
std::vector<std::uint8_t> mul_mat_vec(const BitMatrix& a, const std::vector<std::uint8_t>& x);

/// Forward substitution for l * x = rhs where l is square, lower-triangular
/// with unit diagonal (solution unique).
std::vector<std::uint8_t> solve_lower_unitriangular(const BitMatrix& l,
                                                    const std::vector<std::uint8_t>& rhs);

}  // namespace polar
