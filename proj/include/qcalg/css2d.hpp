#ifndef QCALG_CSS2D_HPP
#define QCALG_CSS2D_HPP

#include <array>
#include <optional>
#include <set>
#include <string>

#include "qcalg/classify1d.hpp"
#include "qcalg/lattice_script.hpp"

namespace qcalg::css2d {

// Two-dimensional CSS code: every generator column of sigma is pure X type
// or pure Z type.
struct CssCode {
    laurent::CodeDefinition code;

    static CssCode make(const laurent::CodeDefinition& code);  // verifies CSS structure
    const laurent::PolyMatrix& sigma() const { return code.sigma; }
    int q() const { return code.q; }
    int p() const { return code.p; }
};

bool is_css(const laurent::CodeDefinition& code);

// ann_{R'} coker sigma'^dagger contains (x^b - 1, y^b - 1): every unit row
// vector e_i is in im sigma^dagger, or both (x^b-1) e_i and (y^b-1) e_i are.
// Preconditions (exactness, ker sigma = 0) are re-checked and reported
// distinctly.
bool annihilator_condition(const CssCode& code, int b);

// F_p dimension of the torsion part of coker sigma^dagger, computed by a
// Groebner standard-monomial count after coarse-graining to the annihilator
// scale; cross-checked against the finite-torus oracle k(L), L in {2,3,5}.
long long torsion_dimension(const CssCode& code, int b_max = 8, bool cross_check = true);

struct ExtractedCopy {
    std::vector<int> qudits;      // qudit indices of the block (current scale)
    std::vector<int> generators;  // sigma columns of the block
};

struct TwoDReport {
    int toric_copies = 0;
    long long torsion_dim = 0;
    int b = 1;  // annihilator scale used before extraction
    lattice::Script witness;
    std::vector<ExtractedCopy> copies;   // indices valid in final_sigma
    laurent::PolyMatrix final_sigma;     // sigma after replaying the witness
    int final_q = 0;
    laurent::PolyMatrix residual_sigma;  // active block after removing the copies
    int residual_q = 0;
};

// Extracts toric blocks until the torsion vanishes, following the
// constructive classification; the residual block is reported untouched.
TwoDReport classify_2d(const CssCode& code, int b_max = 8);

// F_2 dimensions (H_0, H_1, H_2) of the L x L torus.
std::array<int, 3> torus_homology(int L);

}  // namespace qcalg::css2d

#endif
