#ifndef QCALG_LAURENT_HPP
#define QCALG_LAURENT_HPP

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qcalg/codeanalysis.hpp"
#include "qcalg/gf.hpp"

namespace qcalg::laurent {

// Multivariate Laurent polynomial over F_p in D variables. Terms map
// exponent vectors (length D, possibly negative) to nonzero coefficients.
struct LaurentPoly {
    int p = 2;
    int D = 0;
    std::map<std::vector<int>, int> terms;

    LaurentPoly() = default;
    LaurentPoly(int p_, int D_) : p(p_), D(D_) {}

    static LaurentPoly constant(int p, int D, long long c);
    static LaurentPoly monomial(int p, int D, const std::vector<int>& exps, long long c = 1);
    static LaurentPoly variable(int p, int D, int var, int power = 1);

    bool is_zero() const { return terms.empty(); }
    bool is_monomial() const { return terms.size() == 1; }
    // nonzero constant (a unit together with monomials)
    bool is_unit() const;

    int coefficient(const std::vector<int>& exps) const;
    void add_term(const std::vector<int>& exps, long long c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator*(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly scaled(long long c) const;
    bool operator==(const LaurentPoly& o) const = default;

    // exponent-negating involution
    LaurentPoly antipode() const;

    int eval_all_ones() const;  // image under x_i -> 1

    // exponent substitution e -> U e for an integer matrix U (D x D)
    LaurentPoly substitute_exponents(const std::vector<std::vector<int>>& u) const;

    std::vector<int> min_exponents() const;  // componentwise, zero poly -> zeros
    std::vector<int> max_exponents() const;

    // canonical text: terms sorted by (total |exponent|, then lex descending)
    std::string to_string() const;
};

std::vector<std::string> variable_names(int D);

// Rectangular matrix of Laurent polynomials with uniform (p, D).
struct PolyMatrix {
    int rows_ = 0, cols_ = 0, p = 2, D = 0;
    std::vector<LaurentPoly> e;

    PolyMatrix() = default;
    PolyMatrix(int rows, int cols, int p_, int D_);
    static PolyMatrix identity(int n, int p, int D);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const LaurentPoly& at(int r, int c) const { return e[static_cast<size_t>(r) * cols_ + c]; }
    LaurentPoly& at(int r, int c) { return e[static_cast<size_t>(r) * cols_ + c]; }

    PolyMatrix operator*(const PolyMatrix& o) const;
    PolyMatrix operator+(const PolyMatrix& o) const;
    PolyMatrix operator-(const PolyMatrix& o) const;
    bool is_zero() const;
    bool operator==(const PolyMatrix& o) const = default;

    // conjugate transpose: antipode of every entry, then transpose
    PolyMatrix dagger() const;
    std::vector<LaurentPoly> column(int c) const;
};

PolyMatrix symplectic_form_poly(int q, int p, int D);

// Translation-invariant additive code: q qudits of dimension p per site of
// Z^D, stabilizer map sigma with 2q rows whose columns generate the
// stabilizer module. D = 0 degenerates to a finite code.
struct CodeDefinition {
    int p = 2, D = 0, q = 1;
    PolyMatrix sigma;

    static CodeDefinition make(int p, int D, int q, PolyMatrix sigma);  // checks isotropy
};

// sigma^dagger lambda_q sigma == 0
bool check_isotropy(const PolyMatrix& sigma, int q);

// epsilon = sigma^dagger lambda_q; satisfies epsilon * sigma = 0
PolyMatrix excitation_map(const CodeDefinition& code);

// F_p value: coefficient of 1 in sum_i antipode(v_i) w_i
int dot_product(const std::vector<LaurentPoly>& v, const std::vector<LaurentPoly>& w);

// Periodic boundary conditions: qudits indexed site * q + j with the site
// index a_1 + L_1 (a_2 + L_2 (...)).
codeanalysis::FiniteCode instantiate_torus(const CodeDefinition& code, const std::vector<int>& L);

int torus_site_index(const std::vector<int>& coords, const std::vector<int>& L);

// Companion-matrix expansion onto the coarser translation group generated
// by b_i-th powers of the variables.
CodeDefinition coarse_grain(const CodeDefinition& code, const std::vector<int>& b);
PolyMatrix coarse_grain_matrix(const PolyMatrix& m, const std::vector<int>& b);

// Coarse-grain a bare stabilizer map (2q rows), keeping the X/Z block split.
std::pair<PolyMatrix, int> coarse_grain_sigma(const PolyMatrix& sigma, int q, const std::vector<int>& b);

// --- Groebner-backed module operations (D <= 3) ---

// Reusable Groebner data for the submodule of R^rows generated by the
// columns of a Laurent matrix.
class LaurentModule {
  public:
    explicit LaurentModule(const PolyMatrix& gens);
    ~LaurentModule();
    LaurentModule(LaurentModule&&) noexcept;

    // coefficient column a with gens . a = v, or nullopt
    std::optional<std::vector<LaurentPoly>> member(const std::vector<LaurentPoly>& v) const;
    bool contains(const std::vector<LaurentPoly>& v) const;

    // columns generating { v : gens-matrix has m v = 0 } when the matrix is
    // read as a map; see module_kernel
    PolyMatrix syzygy_columns() const;

    // F_p dimension of R^rows / im(gens); nullopt when infinite
    std::optional<long long> cokernel_dimension() const;

  private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// Columns generate { v : m v = 0 } over the Laurent ring.
PolyMatrix module_kernel(const PolyMatrix& m);

// a with gens a = v (verified by substitution), or nullopt.
std::optional<std::vector<LaurentPoly>> module_member(const std::vector<LaurentPoly>& v, const PolyMatrix& gens);

// ker(epsilon) = im(sigma) over the Laurent ring.
bool exactness_check(const CodeDefinition& code);

}  // namespace qcalg::laurent

#endif
