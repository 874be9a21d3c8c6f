#ifndef QCALG_GROEBNER_HPP
#define QCALG_GROEBNER_HPP

#include <map>
#include <optional>
#include <vector>

namespace qcalg::groebner {

// Monomial in nv variables, exponents >= 0.
using Mono = std::vector<int>;

int total_degree(const Mono& m);
bool mono_divides(const Mono& a, const Mono& b);  // a | b
Mono mono_quotient(const Mono& b, const Mono& a); // b / a
Mono mono_lcm(const Mono& a, const Mono& b);
Mono mono_mul(const Mono& a, const Mono& b);

// graded lexicographic, variable 0 largest
struct GrlexGreater {
    bool operator()(const Mono& a, const Mono& b) const;
};

// Polynomial over F_p; leading term first.
using Poly = std::map<Mono, int, GrlexGreater>;

Poly poly_zero();
Poly poly_mono(const Mono& m, int c);
bool poly_is_zero(const Poly& f);
void poly_add_term(Poly& f, const Mono& m, long long c, int p);
// dst += c * x^shift * src
void poly_axpy(Poly& dst, int c, const Mono& shift, const Poly& src, int p);
Poly poly_mul(const Poly& a, const Poly& b, int p);
Poly poly_scale(const Poly& a, int c, int p);

// Element of the free module P^r with a coefficient shadow over the
// original generator list (invariant: comp = sum_j shadow_j * G_j holds
// for everything the engine produces).
struct ModElem {
    std::vector<Poly> comp;
    std::vector<Poly> shadow;
};

bool elem_is_zero(const ModElem& e);

// Position-over-term order, lower position first: leading term of a nonzero
// element lives in its first nonzero component.
struct LeadTerm {
    int pos;
    Mono mono;
    int coef;
};
LeadTerm lead_term(const ModElem& e);

// Buchberger engine for submodules of P^r over F_p, with shadow tracking
// and Schreyer-style syzygy extraction.
class ModuleGB {
  public:
    ModuleGB(int p, int nv, int r, std::vector<std::vector<Poly>> generators);

    int p() const { return p_; }
    int positions() const { return r_; }

    // fully reduced remainder; shadow gives v - sum shadow_j G_j = remainder
    ModElem normal_form(const std::vector<Poly>& v) const;

    // generators of { a : sum_j a_j G_j = 0 }
    std::vector<std::vector<Poly>> syzygies() const;

    // leading monomials of basis elements at each position
    std::vector<std::vector<Mono>> lead_monomials() const;

    // number of standard monomials (monomials of P^r outside the leading
    // term module); nullopt when infinite
    std::optional<long long> standard_monomial_count(long long cap = 4000000) const;

    const std::vector<ModElem>& basis() const { return gb_; }

  private:
    int p_, nv_, r_;
    int ngens_;
    std::vector<ModElem> gb_;
    std::vector<std::vector<Poly>> original_;

    void reduce_full(ModElem& e) const;
    bool reduce_lead_once(ModElem& e) const;
};

}  // namespace qcalg::groebner

#endif
