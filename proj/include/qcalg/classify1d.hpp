#ifndef QCALG_CLASSIFY1D_HPP
#define QCALG_CLASSIFY1D_HPP

#include <optional>
#include <string>

#include "qcalg/lattice_script.hpp"
#include "qcalg/smith.hpp"

namespace qcalg::classify1d {

struct OneDReport {
    std::vector<laurent::LaurentPoly> diagonal;  // length q, unit-normalized, zeros allowed
    int ising_copies = 0;
    int trivial_qudits = 0;
    int b = 1;
    bool conclusive = true;
    std::string failure;
    lattice::Script witness;
    laurent::PolyMatrix normal_form;  // sigma after replaying the witness
};

// Brings sigma to [diag(d_1..d_q); 0] by symplectic row moves and column
// re-choices; the divisibility chain d_i | d_{i+1} holds up to units.
std::pair<lattice::Script, std::vector<laurent::LaurentPoly>> diagonalize_1d(const laurent::CodeDefinition& code);

// smallest n <= n_max with f | x^n - 1; requires f(0) != 0
std::optional<int> cyclotomic_multiple(const smith::UPoly& f, int n_max);

OneDReport classify_1d(const laurent::CodeDefinition& code, int n_max = 64);

}  // namespace qcalg::classify1d

#endif
