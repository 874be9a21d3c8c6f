#ifndef QCALG_GF_HPP
#define QCALG_GF_HPP

#include <cstdint>
#include <optional>
#include <vector>

namespace qcalg::gf {

bool is_prime(int p);

// Scalar in F_p, value always reduced into [0, p).
// The modulus is checked for primality (trial division) at construction.
struct FieldElement {
    int value = 0;
    int p = 2;

    FieldElement() = default;
    FieldElement(long long v, int modulus);

    FieldElement operator+(FieldElement o) const;
    FieldElement operator-(FieldElement o) const;
    FieldElement operator*(FieldElement o) const;
    FieldElement operator-() const;
    FieldElement inverse() const;
    bool operator==(const FieldElement& o) const = default;
    bool is_zero() const { return value == 0; }
};

int fp_normalize(long long v, int p);
int fp_add(int a, int b, int p);
int fp_sub(int a, int b, int p);
int fp_mul(int a, int b, int p);
int fp_neg(int a, int p);
int fp_inv(int a, int p);

// Dense row-major matrix over F_p.
class Matrix {
  public:
    Matrix() = default;
    Matrix(int rows, int cols, int p);
    static Matrix identity(int n, int p);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    int modulus() const { return p_; }

    int at(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }
    void set(int r, int c, long long v) { a_[static_cast<size_t>(r) * cols_ + c] = fp_normalize(v, p_); }
    void add_at(int r, int c, long long v) { set(r, c, at(r, c) + v); }

    std::vector<int> row(int r) const;
    Matrix transpose() const;
    Matrix operator*(const Matrix& o) const;
    Matrix operator-(const Matrix& o) const;
    bool operator==(const Matrix& o) const = default;
    bool is_zero() const;

    void swap_rows(int r1, int r2);
    void scale_row(int r, int c);           // row r *= c
    void add_row(int dst, int src, int c);  // row dst += c * row src
    void swap_cols(int c1, int c2);

  private:
    int rows_ = 0, cols_ = 0, p_ = 2;
    std::vector<int> a_;
};

struct RrefResult {
    Matrix matrix;
    std::vector<int> pivot_cols;
    int rank = 0;
};

// Reduced row echelon form. Pivot selection is the first nonzero entry
// scanning top-to-bottom, left-to-right, so the output is deterministic.
RrefResult rref(const Matrix& m);

// Generic-field elimination path; rref() dispatches to a packed word
// implementation for p = 2 and the two must agree bit for bit.
RrefResult rref_generic(const Matrix& m);

int rank(const Matrix& m);

// Columns form a basis of the right null space of m.
Matrix kernel_basis(const Matrix& m);

// Some x with m x = b, free variables set to zero; nullopt if inconsistent.
std::optional<std::vector<int>> solve(const Matrix& m, const std::vector<int>& b);

// Rank of the subspace spanned by the given row vectors.
int row_space_rank(const std::vector<std::vector<int>>& rows, int p);

// true when v lies in the row space described by an rref result.
bool in_row_space(const RrefResult& rr, const std::vector<int>& v);

}  // namespace qcalg::gf

#endif
