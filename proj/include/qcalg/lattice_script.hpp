#ifndef QCALG_LATTICE_SCRIPT_HPP
#define QCALG_LATTICE_SCRIPT_HPP

#include <string>
#include <vector>

#include "qcalg/laurent.hpp"

namespace qcalg::lattice {

// Locality-preserving moves on a translation-invariant stabilizer map.
// Symplectic moves act on the 2q rows of sigma; column moves re-choose the
// generators; CoarseGrain and VarRedef change the ring presentation.
enum class Kind {
    H,            // rows (i, q+i) -> (q+i, -i)
    S,            // row_{q+i} += a * row_i
    R,            // row_i *= a, row_{q+i} *= a^{-1}
    Cnot,         // row_j += m * row_i ; row_{q+i} -= antipode(m) * row_{q+j}
    Cz,           // row_{q+i} += f * row_i   with f = antipode(f)
    Translate,    // row_i *= x^shift, row_{q+i} *= x^shift
    CoarseGrain,  // uniform factor b in every variable
    VarRedef,     // exponent substitution e -> U e, U in GL(D, Z)
    ColSwap,
    ColAdd,    // col_i += m * col_j
    ColScale,  // col_i *= m, m a unit (monomial with nonzero coefficient)
};

struct Move {
    Kind kind{};
    int i = 0, j = 0;
    int a = 1;
    laurent::LaurentPoly poly;
    std::vector<int> shift;
    int b = 1;
    std::vector<std::vector<int>> u;
};

struct Script {
    std::vector<Move> moves;

    void h(int i);
    void s(int i, int a, int p);
    void r(int i, int a, int p);
    void cnot(int i, int j, laurent::LaurentPoly m);
    void cz(int i, laurent::LaurentPoly f);
    void translate(int i, std::vector<int> shift);
    void coarse_grain(int b);
    void var_redef(std::vector<std::vector<int>> u);
    void col_swap(int c1, int c2);
    void col_add(int dst, int src, laurent::LaurentPoly m);
    void col_scale(int c, laurent::LaurentPoly unit);
    // qudit swap from three CNOTs and a rescale
    void qswap(int i, int j, int p, int D);
    void append(const Script& o) { moves.insert(moves.end(), o.moves.begin(), o.moves.end()); }
    bool empty() const { return moves.empty(); }

    std::vector<std::string> to_lines() const;
};

struct SigmaState {
    laurent::PolyMatrix sigma;
    int q = 1;
};

SigmaState apply_move(const Move& mv, SigmaState state);
SigmaState apply(const Script& script, SigmaState state);

// matrix of a symplectic move (H/S/R/Cnot/Cz/Translate) on R^{2q}
laurent::PolyMatrix move_matrix(const Move& mv, int q, int p, int D);
bool move_is_symplectic(const Move& mv, int q, int p, int D);

}  // namespace qcalg::lattice

#endif
