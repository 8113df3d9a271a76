#include "dk/exactla.hpp"

#include <sstream>

namespace dk {

namespace {

bool is_prime(unsigned n) {
    if (n < 2) return false;
    for (unsigned d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Reduce v into canonical form for the ring: over F_p an integer in
// [0, p), over Q nothing to do (cpp_rational is always canonical).
BigRat canon(const Ring& ring, const BigRat& v) {
    if (!ring.is_field_p()) return v;
    BigInt num = numerator(v);
    BigInt den = denominator(v);
    BigInt p = ring.p;
    num %= p;
    if (num < 0) num += p;
    den %= p;
    if (den < 0) den += p;
    if (den == 0) throw NotInvertible("denominator vanishes mod p");
    // den^{-1} mod p by Fermat.
    BigInt inv = 1, base = den, exp = p - 2;
    while (exp > 0) {
        if (exp % 2 == 1) inv = inv * base % p;
        base = base * base % p;
        exp /= 2;
    }
    return BigRat(num * inv % p);
}

BigRat ring_add(const Ring& ring, const BigRat& a, const BigRat& b) { return canon(ring, a + b); }
BigRat ring_mul(const Ring& ring, const BigRat& a, const BigRat& b) { return canon(ring, a * b); }

BigRat ring_inv(const Ring& ring, const BigRat& a) {
    if (a == 0) throw NotInvertible("division by zero");
    return canon(ring, BigRat(1) / a);
}

}  // namespace

Ring Ring::Fp(unsigned p) {
    if (!is_prime(p)) throw std::invalid_argument("Fp modulus must be prime: " + std::to_string(p));
    return Ring{p};
}

std::string Ring::to_string() const {
    return is_field_p() ? "Fp:" + std::to_string(p) : "Q";
}

Ring Ring::parse(const std::string& s) {
    if (s == "Q") return Q();
    if (s.rfind("Fp:", 0) == 0) return Fp(static_cast<unsigned>(std::stoul(s.substr(3))));
    throw std::invalid_argument("unknown ring: " + s);
}

Matrix Matrix::identity(Ring ring, int n) {
    Matrix m(ring, n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

void Matrix::set(int r, int c, BigRat v) { at(r, c) = canon(ring_, v); }

bool Matrix::operator==(const Matrix& o) const {
    return ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

bool Matrix::is_zero() const {
    for (const auto& v : e_)
        if (v != 0) return false;
    return true;
}

bool Matrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c)
            if (at(r, c) != (r == c ? 1 : 0)) return false;
    return true;
}

Matrix Matrix::transpose() const {
    Matrix t(ring_, cols_, rows_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.at(c, r) = at(r, c);
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (ring_ != o.ring_) throw DimensionMismatch("ring mismatch in product");
    if (cols_ != o.rows_)
        throw DimensionMismatch("product " + std::to_string(rows_) + "x" + std::to_string(cols_) +
                                " * " + std::to_string(o.rows_) + "x" + std::to_string(o.cols_));
    Matrix m(ring_, rows_, o.cols_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            const BigRat& a = at(r, k);
            if (a == 0) continue;
            for (int c = 0; c < o.cols_; ++c)
                m.at(r, c) = ring_add(ring_, m.at(r, c), ring_mul(ring_, a, o.at(k, c)));
        }
    return m;
}

Matrix Matrix::operator+(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("sum shape mismatch");
    Matrix m(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = ring_add(ring_, e_[i], o.e_[i]);
    return m;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (ring_ != o.ring_ || rows_ != o.rows_ || cols_ != o.cols_)
        throw DimensionMismatch("difference shape mismatch");
    Matrix m(ring_, rows_, cols_);
    for (size_t i = 0; i < e_.size(); ++i) m.e_[i] = canon(ring_, e_[i] - o.e_[i]);
    return m;
}

Matrix Matrix::hcat(const std::vector<Matrix>& blocks, Ring ring, int rows) {
    int cols = 0;
    for (const auto& b : blocks) {
        if (b.rows() != rows) throw DimensionMismatch("hcat row mismatch");
        cols += b.cols();
    }
    Matrix m(ring, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < b.cols(); ++c) m.at(r, off + c) = b.at(r, c);
        off += b.cols();
    }
    return m;
}

Matrix Matrix::vcat(const std::vector<Matrix>& blocks, Ring ring, int cols) {
    int rows = 0;
    for (const auto& b : blocks) {
        if (b.cols() != cols) throw DimensionMismatch("vcat column mismatch");
        rows += b.rows();
    }
    Matrix m(ring, rows, cols);
    int off = 0;
    for (const auto& b : blocks) {
        for (int r = 0; r < b.rows(); ++r)
            for (int c = 0; c < cols; ++c) m.at(off + r, c) = b.at(r, c);
        off += b.rows();
    }
    return m;
}

Matrix Matrix::sub_rows(int first, int count) const {
    Matrix m(ring_, count, cols_);
    for (int r = 0; r < count; ++r)
        for (int c = 0; c < cols_; ++c) m.at(r, c) = at(first + r, c);
    return m;
}

Matrix Matrix::sub_cols(int first, int count) const {
    Matrix m(ring_, rows_, count);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < count; ++c) m.at(r, c) = at(r, first + c);
    return m;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_ << " over " << ring_.to_string() << "\n";
    for (int r = 0; r < rows_; ++r) {
        os << "[";
        for (int c = 0; c < cols_; ++c) os << (c ? " " : "") << scalar_to_string(ring_, at(r, c));
        os << "]\n";
    }
    return os.str();
}

std::string scalar_to_string(const Ring& ring, const BigRat& v) {
    std::ostringstream os;
    if (ring.is_field_p()) {
        os << numerator(v) << " mod " << ring.p;
    } else if (denominator(v) == 1) {
        os << numerator(v);
    } else {
        os << numerator(v) << "/" << denominator(v);
    }
    return os.str();
}

BigRat scalar_parse(const Ring& ring, const std::string& s) {
    if (ring.is_field_p()) {
        auto pos = s.find(" mod ");
        std::string num = pos == std::string::npos ? s : s.substr(0, pos);
        return canon(ring, BigRat(BigInt(num)));
    }
    auto pos = s.find('/');
    if (pos == std::string::npos) return BigRat(BigInt(s));
    return BigRat(BigInt(s.substr(0, pos)), BigInt(s.substr(pos + 1)));
}

namespace {

// Row echelon form in place; returns pivot columns. Deterministic:
// pivots are the first nonzero entry in column order.
std::vector<int> echelon(Matrix& m) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < m.cols() && row < m.rows(); ++col) {
        int pr = -1;
        for (int r = row; r < m.rows(); ++r)
            if (m.at(r, col) != 0) { pr = r; break; }
        if (pr < 0) continue;
        if (pr != row)
            for (int c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(row, c));
        BigRat inv = ring_inv(m.ring(), m.at(row, col));
        for (int c = col; c < m.cols(); ++c)
            m.at(row, c) = ring_mul(m.ring(), m.at(row, c), inv);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == row || m.at(r, col) == 0) continue;
            BigRat f = m.at(r, col);
            for (int c = col; c < m.cols(); ++c)
                m.at(r, c) = canon(m.ring(), m.at(r, c) - f * m.at(row, c));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

BigRat canon(const Ring& ring, const BigRat& v);  // forward use above

}  // namespace

int rank(const Matrix& m) {
    Matrix copy = m;
    return static_cast<int>(echelon(copy).size());
}

Matrix kernel_basis(const Matrix& m) {
    Matrix red = m;
    std::vector<int> pivots = echelon(red);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int p : pivots) is_pivot[p] = true;
    int nullity = m.cols() - static_cast<int>(pivots.size());
    Matrix k(m.ring(), m.cols(), nullity);
    int col = 0;
    for (int free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        k.at(free, col) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            k.at(pivots[pi], col) = canon(m.ring(), -red.at(static_cast<int>(pi), free));
        ++col;
    }
    return k;
}

Matrix solve(const Matrix& m, const Matrix& b) {
    if (b.rows() != m.rows()) throw DimensionMismatch("solve rhs rows");
    Matrix aug = Matrix::hcat({m, b}, m.ring(), m.rows());
    std::vector<int> pivots = echelon(aug);
    for (int p : pivots)
        if (p >= m.cols()) throw NoSolution("inconsistent linear system");
    Matrix x(m.ring(), m.cols(), b.cols());
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        for (int c = 0; c < b.cols(); ++c)
            x.at(pivots[pi], c) = aug.at(static_cast<int>(pi), m.cols() + c);
    return x;
}

bool is_invertible(const Matrix& m) {
    return m.rows() == m.cols() && rank(m) == m.rows();
}

Matrix inverse(const Matrix& m) {
    if (m.rows() != m.cols()) throw NotInvertible("inverse of non-square matrix");
    Matrix aug = Matrix::hcat({m, Matrix::identity(m.ring(), m.rows())}, m.ring(), m.rows());
    std::vector<int> pivots = echelon(aug);
    if (static_cast<int>(pivots.size()) != m.rows() || (m.rows() > 0 && pivots.back() != m.rows() - 1))
        throw NotInvertible("singular matrix");
    return aug.sub_cols(m.rows(), m.rows());
}

Matrix invert_unitriangular_block(const Matrix& phi, const std::vector<int>& block_sizes) {
    int n = 0;
    for (int s : block_sizes) {
        if (s < 0) throw ShapeViolation("negative block size");
        n += s;
    }
    if (phi.rows() != n || phi.cols() != n)
        throw ShapeViolation("block partition does not tile the matrix");
    std::vector<int> offset(block_sizes.size() + 1, 0);
    for (size_t i = 0; i < block_sizes.size(); ++i) offset[i + 1] = offset[i] + block_sizes[i];
    for (size_t i = 0; i < block_sizes.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            for (int r = 0; r < block_sizes[i]; ++r)
                for (int c = 0; c < block_sizes[j]; ++c)
                    if (phi.at(offset[i] + r, offset[j] + c) != 0)
                        throw ShapeViolation("nonzero block below the diagonal");
        }
        Matrix diag(phi.ring(), block_sizes[i], block_sizes[i]);
        for (int r = 0; r < block_sizes[i]; ++r)
            for (int c = 0; c < block_sizes[i]; ++c)
                diag.at(r, c) = phi.at(offset[i] + r, offset[i] + c);
        if (!is_invertible(diag)) throw ShapeViolation("singular diagonal block");
    }
    return inverse(phi);
}

std::pair<Matrix, Matrix> complement_of_split_pair(const Matrix& S, const Matrix& R) {
    if (S.rows() != R.cols()) throw DimensionMismatch("split pair ambient dimension mismatch");
    Matrix rs = R * S;
    if (!is_invertible(rs)) throw NotSplit("R*S is singular");
    Matrix incl = kernel_basis(R);
    int n = S.rows();
    if (S.cols() + incl.cols() != n) throw NotSplit("kernel does not complement the section");
    Matrix assembled = Matrix::hcat({S, incl}, S.ring(), n);
    Matrix inv = inverse(assembled);
    Matrix proj = inv.sub_rows(S.cols(), incl.cols());
    return {incl, proj};
}

}  // namespace dk
