#include "qcalg/gf.hpp"

#include <stdexcept>

namespace qcalg::gf {

bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; static_cast<long long>(d) * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

static void check_prime(int p) {
    if (!is_prime(p)) throw std::invalid_argument("modulus must be prime, got " + std::to_string(p));
}

int fp_normalize(long long v, int p) {
    long long r = v % p;
    if (r < 0) r += p;
    return static_cast<int>(r);
}

int fp_add(int a, int b, int p) { return (a + b) % p; }
int fp_sub(int a, int b, int p) { return fp_normalize(a - b, p); }
int fp_mul(int a, int b, int p) { return static_cast<int>(static_cast<long long>(a) * b % p); }
int fp_neg(int a, int p) { return a == 0 ? 0 : p - a; }

int fp_inv(int a, int p) {
    if (a % p == 0) throw std::domain_error("inverse of zero in F_p");
    // extended Euclid
    int t = 0, new_t = 1, r = p, new_r = fp_normalize(a, p);
    while (new_r != 0) {
        int q = r / new_r;
        int tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    return fp_normalize(t, p);
}

FieldElement::FieldElement(long long v, int modulus) : p(modulus) {
    check_prime(modulus);
    value = fp_normalize(v, modulus);
}

static void check_same_field(const FieldElement& a, const FieldElement& b) {
    if (a.p != b.p) throw std::invalid_argument("field modulus mismatch");
}

FieldElement FieldElement::operator+(FieldElement o) const {
    check_same_field(*this, o);
    return FieldElement(value + o.value, p);
}
FieldElement FieldElement::operator-(FieldElement o) const {
    check_same_field(*this, o);
    return FieldElement(value - o.value, p);
}
FieldElement FieldElement::operator*(FieldElement o) const {
    check_same_field(*this, o);
    return FieldElement(static_cast<long long>(value) * o.value, p);
}
FieldElement FieldElement::operator-() const { return FieldElement(-value, p); }
FieldElement FieldElement::inverse() const { return FieldElement(fp_inv(value, p), p); }

Matrix::Matrix(int rows, int cols, int p) : rows_(rows), cols_(cols), p_(p) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    check_prime(p);
    a_.assign(static_cast<size_t>(rows) * cols, 0);
}

Matrix Matrix::identity(int n, int p) {
    Matrix m(n, n, p);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

std::vector<int> Matrix::row(int r) const {
    return std::vector<int>(a_.begin() + static_cast<size_t>(r) * cols_,
                            a_.begin() + static_cast<size_t>(r + 1) * cols_);
}

Matrix Matrix::transpose() const {
    Matrix t(cols_, rows_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) t.set(c, r, at(r, c));
    return t;
}

Matrix Matrix::operator*(const Matrix& o) const {
    if (cols_ != o.rows_ || p_ != o.p_) throw std::invalid_argument("matrix product shape/modulus mismatch");
    Matrix out(rows_, o.cols_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            int v = at(r, k);
            if (v == 0) continue;
            for (int c = 0; c < o.cols_; ++c) out.add_at(r, c, static_cast<long long>(v) * o.at(k, c));
        }
    return out;
}

Matrix Matrix::operator-(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p_ != o.p_)
        throw std::invalid_argument("matrix difference shape/modulus mismatch");
    Matrix out(rows_, cols_, p_);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.set(r, c, at(r, c) - o.at(r, c));
    return out;
}

bool Matrix::is_zero() const {
    for (int v : a_)
        if (v != 0) return false;
    return true;
}

void Matrix::swap_rows(int r1, int r2) {
    if (r1 == r2) return;
    for (int c = 0; c < cols_; ++c) {
        std::swap(a_[static_cast<size_t>(r1) * cols_ + c], a_[static_cast<size_t>(r2) * cols_ + c]);
    }
}

void Matrix::scale_row(int r, int c) {
    for (int j = 0; j < cols_; ++j) set(r, j, static_cast<long long>(at(r, j)) * c);
}

void Matrix::add_row(int dst, int src, int c) {
    for (int j = 0; j < cols_; ++j) add_at(dst, j, static_cast<long long>(c) * at(src, j));
}

void Matrix::swap_cols(int c1, int c2) {
    if (c1 == c2) return;
    for (int r = 0; r < rows_; ++r) {
        int tmp = at(r, c1);
        set(r, c1, at(r, c2));
        set(r, c2, tmp);
    }
}

RrefResult rref_generic(const Matrix& m) {
    RrefResult out;
    out.matrix = m;
    Matrix& a = out.matrix;
    int p = m.modulus();
    int pivot_row = 0;
    for (int c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
        int sel = -1;
        for (int r = pivot_row; r < m.rows(); ++r)
            if (a.at(r, c) != 0) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        a.swap_rows(pivot_row, sel);
        int inv = fp_inv(a.at(pivot_row, c), p);
        if (inv != 1) a.scale_row(pivot_row, inv);
        for (int r = 0; r < m.rows(); ++r) {
            if (r == pivot_row) continue;
            int v = a.at(r, c);
            if (v != 0) a.add_row(r, pivot_row, fp_neg(v, p));
        }
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    out.rank = pivot_row;
    return out;
}

// p = 2 fast path: rows packed into 64-bit words, same pivot rule as the
// generic path so the results are identical.
static RrefResult rref_packed2(const Matrix& m) {
    int rows = m.rows(), cols = m.cols();
    int words = (cols + 63) / 64;
    std::vector<uint64_t> bits(static_cast<size_t>(rows) * words, 0);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (m.at(r, c)) bits[static_cast<size_t>(r) * words + c / 64] |= (uint64_t{1} << (c % 64));

    RrefResult out;
    out.matrix = Matrix(rows, cols, 2);
    int pivot_row = 0;
    for (int c = 0; c < cols && pivot_row < rows; ++c) {
        int w = c / 64;
        uint64_t mask = uint64_t{1} << (c % 64);
        int sel = -1;
        for (int r = pivot_row; r < rows; ++r)
            if (bits[static_cast<size_t>(r) * words + w] & mask) {
                sel = r;
                break;
            }
        if (sel < 0) continue;
        if (sel != pivot_row)
            for (int j = 0; j < words; ++j)
                std::swap(bits[static_cast<size_t>(sel) * words + j],
                          bits[static_cast<size_t>(pivot_row) * words + j]);
        for (int r = 0; r < rows; ++r) {
            if (r == pivot_row) continue;
            if (bits[static_cast<size_t>(r) * words + w] & mask)
                for (int j = 0; j < words; ++j)
                    bits[static_cast<size_t>(r) * words + j] ^= bits[static_cast<size_t>(pivot_row) * words + j];
        }
        out.pivot_cols.push_back(c);
        ++pivot_row;
    }
    out.rank = pivot_row;
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            if (bits[static_cast<size_t>(r) * words + c / 64] >> (c % 64) & 1) out.matrix.set(r, c, 1);
    return out;
}

RrefResult rref(const Matrix& m) {
    if (m.modulus() == 2) return rref_packed2(m);
    return rref_generic(m);
}

int rank(const Matrix& m) { return rref(m).rank; }

Matrix kernel_basis(const Matrix& m) {
    RrefResult rr = rref(m);
    int p = m.modulus();
    std::vector<int> free_cols;
    {
        size_t pi = 0;
        for (int c = 0; c < m.cols(); ++c) {
            if (pi < rr.pivot_cols.size() && rr.pivot_cols[pi] == c)
                ++pi;
            else
                free_cols.push_back(c);
        }
    }
    Matrix basis(m.cols(), static_cast<int>(free_cols.size()), p);
    for (size_t j = 0; j < free_cols.size(); ++j) {
        int fc = free_cols[j];
        basis.set(fc, static_cast<int>(j), 1);
        for (size_t i = 0; i < rr.pivot_cols.size(); ++i)
            basis.set(rr.pivot_cols[i], static_cast<int>(j), -rr.matrix.at(static_cast<int>(i), fc));
    }
    return basis;
}

std::optional<std::vector<int>> solve(const Matrix& m, const std::vector<int>& b) {
    if (static_cast<int>(b.size()) != m.rows()) throw std::invalid_argument("solve: rhs length mismatch");
    Matrix aug(m.rows(), m.cols() + 1, m.modulus());
    for (int r = 0; r < m.rows(); ++r) {
        for (int c = 0; c < m.cols(); ++c) aug.set(r, c, m.at(r, c));
        aug.set(r, m.cols(), b[r]);
    }
    RrefResult rr = rref(aug);
    for (int i : rr.pivot_cols)
        if (i == m.cols()) return std::nullopt;
    std::vector<int> x(m.cols(), 0);
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) x[rr.pivot_cols[i]] = rr.matrix.at(static_cast<int>(i), m.cols());
    return x;
}

int row_space_rank(const std::vector<std::vector<int>>& rows, int p) {
    if (rows.empty()) return 0;
    Matrix m(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()), p);
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size()) throw std::invalid_argument("ragged row list");
        for (size_t c = 0; c < rows[r].size(); ++c) m.set(static_cast<int>(r), static_cast<int>(c), rows[r][c]);
    }
    return rank(m);
}

bool in_row_space(const RrefResult& rr, const std::vector<int>& v) {
    if (static_cast<int>(v.size()) != rr.matrix.cols()) throw std::invalid_argument("vector length mismatch");
    int p = rr.matrix.modulus();
    std::vector<int> w = v;
    for (size_t i = 0; i < rr.pivot_cols.size(); ++i) {
        int c = rr.pivot_cols[i];
        if (w[c] == 0) continue;
        int coef = w[c];
        for (int j = 0; j < rr.matrix.cols(); ++j)
            w[j] = fp_sub(w[j], fp_mul(coef, rr.matrix.at(static_cast<int>(i), j), p), p);
    }
    for (int x : w)
        if (x != 0) return false;
    return true;
}

}  // namespace qcalg::gf
