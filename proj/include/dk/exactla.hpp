#pragma once

// Exact linear algebra over Q and F_p. All arithmetic is exact; there is
// no floating point anywhere in the engine.

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dk {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Coefficient ring: the rationals (p == 0) or the prime field F_p.
struct Ring {
    unsigned p = 0;

    bool is_field_p() const { return p != 0; }
    bool operator==(const Ring&) const = default;

    static Ring Q() { return Ring{0}; }
    static Ring Fp(unsigned p);

    std::string to_string() const;
    static Ring parse(const std::string& s);
};

struct DimensionMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotInvertible : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoSolution : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ShapeViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotSplit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Dense matrix with entries in a fixed ring. For F_p the entries are
// integers in [0, p). 0xn and nx0 matrices are legal and show up
// constantly (zero objects have dimension 0).
class Matrix {
public:
    Matrix() = default;
    Matrix(Ring ring, int rows, int cols)
        : ring_(ring), rows_(rows), cols_(cols),
          e_(static_cast<size_t>(rows) * cols) {}

    static Matrix identity(Ring ring, int n);
    static Matrix zero(Ring ring, int rows, int cols) { return Matrix(ring, rows, cols); }

    Ring ring() const { return ring_; }
    int rows() const { return rows_; }
    int cols() const { return cols_; }

    BigRat& at(int r, int c) { return e_[static_cast<size_t>(r) * cols_ + c]; }
    const BigRat& at(int r, int c) const { return e_[static_cast<size_t>(r) * cols_ + c]; }

    void set(int r, int c, BigRat v);

    bool operator==(const Matrix& o) const;
    bool is_zero() const;
    bool is_identity() const;

    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator+(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;

    // Horizontal / vertical concatenation.
    static Matrix hcat(const std::vector<Matrix>& blocks, Ring ring, int rows);
    static Matrix vcat(const std::vector<Matrix>& blocks, Ring ring, int cols);

    Matrix sub_rows(int first, int count) const;
    Matrix sub_cols(int first, int count) const;

    std::string to_string() const;

private:
    Ring ring_;
    int rows_ = 0;
    int cols_ = 0;
    std::vector<BigRat> e_;
};

// Scalar serialization: "a/b" (reduced, b > 0; plain "a" when b == 1)
// over Q, "x mod p" over F_p.
std::string scalar_to_string(const Ring& ring, const BigRat& v);
BigRat scalar_parse(const Ring& ring, const std::string& s);

int rank(const Matrix& m);

// Columns form a basis of ker(m); deterministic pivoting (first nonzero
// in column order) so witnesses are reproducible.
Matrix kernel_basis(const Matrix& m);

// A particular solution x of m x = b, or NoSolution.
Matrix solve(const Matrix& m, const Matrix& b);

Matrix inverse(const Matrix& m);
bool is_invertible(const Matrix& m);

// Inverse of a block matrix that is unitriangular in the sense of a
// (T2) certificate: square block partition, invertible diagonal blocks,
// zero blocks strictly below the diagonal. A shape violation means a
// broken certificate upstream and is reported as such.
Matrix invert_unitriangular_block(const Matrix& phi, const std::vector<int>& block_sizes);

// Complement of a split pair: S a section candidate, R a retraction
// candidate with R*S invertible. Returns (incl, proj) with
//   incl = kernel basis of R,  proj * incl = Id,  proj * S = 0;
// proj is the coordinate block of [S | incl]^{-1} below the S-block.
std::pair<Matrix, Matrix> complement_of_split_pair(const Matrix& S, const Matrix& R);

}  // namespace dk
