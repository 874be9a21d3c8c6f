#ifndef QCALG_SMITH_HPP
#define QCALG_SMITH_HPP

#include <string>
#include <vector>

#include "qcalg/laurent.hpp"

namespace qcalg::smith {

// Dense univariate polynomial over F_p, no trailing zero coefficients.
struct UPoly {
    int p = 2;
    std::vector<int> c;

    UPoly() = default;
    explicit UPoly(int p_) : p(p_) {}
    static UPoly constant(int p, long long v);
    static UPoly monomial(int p, int deg, long long coef = 1);

    int degree() const { return static_cast<int>(c.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c.empty(); }
    bool is_unit() const { return degree() == 0; }
    int leading() const;
    int coeff(int i) const { return i >= 0 && i < static_cast<int>(c.size()) ? c[i] : 0; }

    void trim();
    UPoly operator+(const UPoly& o) const;
    UPoly operator-(const UPoly& o) const;
    UPoly operator*(const UPoly& o) const;
    UPoly scaled(long long v) const;
    bool operator==(const UPoly& o) const = default;

    UPoly monic() const;
    std::string to_string(const std::string& var = "x") const;

    // normalized from a univariate Laurent polynomial: multiplied by the
    // monomial making the lowest exponent 0 (the dropped unit is x^min)
    static UPoly from_laurent(const laurent::LaurentPoly& f);
    // verbatim conversion; requires every exponent to be nonnegative
    static UPoly from_polynomial(const laurent::LaurentPoly& f);
    laurent::LaurentPoly to_laurent() const;
};

// quotient and remainder with deg r < deg b
std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b);
UPoly gcd(UPoly a, UPoly b);  // monic
bool divides(const UPoly& a, const UPoly& b);

// --- Smith normal form over the integers ---

using IntMat = std::vector<std::vector<long long>>;

struct IntSnf {
    IntMat a, b;                      // invertible: a * m * b = diag(divisors)
    std::vector<long long> divisors;  // d_1 | d_2 | ..., all positive
};

IntSnf smith_normal_form(const IntMat& m);

// generator of I_s (gcd of all s x s minors) for s = 1..s_max
std::vector<long long> determinantal_ideals(const IntMat& m, int s_max);

struct AbelianDecomposition {
    std::vector<long long> torsion;  // cyclic orders > 1
    int free_rank = 0;
};

// cokernel of m acting on Z^rows
AbelianDecomposition abelian_group_decomposition(const IntMat& m);

// --- Smith normal form over F_p[x] ---

using PolyMat = std::vector<std::vector<UPoly>>;

struct PolySnf {
    PolyMat a, b;
    std::vector<UPoly> divisors;  // monic, d_1 | d_2 | ...
};

PolySnf smith_normal_form(const PolyMat& m);
std::vector<UPoly> determinantal_ideals(const PolyMat& m, int s_max);

long long int_det(const IntMat& m);
UPoly poly_det(const PolyMat& m);

}  // namespace qcalg::smith

#endif
