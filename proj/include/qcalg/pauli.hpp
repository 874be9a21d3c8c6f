#ifndef QCALG_PAULI_HPP
#define QCALG_PAULI_HPP

#include <string>
#include <vector>

#include "qcalg/gf.hpp"

namespace qcalg::pauli {

// Pauli operator on n qudits modulo phase: coords = (x-part | z-part),
// each part of length n over F_p.
struct PauliVector {
    int n = 0;
    int p = 2;
    std::vector<int> coords;  // length 2n

    PauliVector() = default;
    PauliVector(int n_, int p_);

    int x(int i) const { return coords[i]; }
    int z(int i) const { return coords[n + i]; }
    void set_x(int i, long long v) { coords[i] = gf::fp_normalize(v, p); }
    void set_z(int i, long long v) { coords[n + i] = gf::fp_normalize(v, p); }

    static PauliVector unit_x(int n, int p, int i);  // X on qudit i (0-based)
    static PauliVector unit_z(int n, int p, int i);  // Z on qudit i

    // number of qudits acted on nontrivially
    int weight() const;
    bool is_zero() const;
    bool operator==(const PauliVector& o) const = default;
};

enum class MoveKind { Hadamard, Phase, Rescale, Cnot };

// One elementary symplectic move. Indices are 0-based in memory, 1-based in
// the serialized text form. Conventions:
//   Hadamard(i):   (x_i, z_i) -> (z_i, -x_i)
//   Phase(i, a):   z_i += a * x_i
//   Rescale(i, a): x_i -> a * x_i, z_i -> a^{-1} * z_i   (a != 0)
//   Cnot(i, j, a): x_j += a * x_i, z_i -= a * z_j
struct Move {
    MoveKind kind;
    int i = 0;
    int j = 0;
    int a = 1;
};

struct GateScript {
    std::vector<Move> moves;

    void h(int i) { moves.push_back({MoveKind::Hadamard, i, 0, 0}); }
    void s(int i, int a) {
        if (a != 0) moves.push_back({MoveKind::Phase, i, 0, a});
    }
    void r(int i, int a) {
        if (a != 1) moves.push_back({MoveKind::Rescale, i, 0, a});
    }
    void cx(int i, int j, int a) {
        if (a != 0) moves.push_back({MoveKind::Cnot, i, j, a});
    }
    void append(const GateScript& o) { moves.insert(moves.end(), o.moves.begin(), o.moves.end()); }
    // qudit swap (i j), built from three CNOTs and a rescale
    void swap(int i, int j, int p);
    bool empty() const { return moves.empty(); }

    // Script applying the inverse transformation.
    GateScript inverted(int p) const;

    // Line-oriented text form: `H 1`, `S 1 1`, `R 1 2`, `CX 1 2 1`.
    std::string to_text() const;
    static GateScript from_text(const std::string& text);
};

// m = -x'.z + x.z' mod p; zero iff the operators commute.
int symplectic_product(const PauliVector& u, const PauliVector& v);

bool is_isotropic(const std::vector<PauliVector>& gens);

PauliVector apply_move(const Move& mv, const PauliVector& v);
PauliVector apply_script(const GateScript& script, const PauliVector& v);

// 2n x 2n matrix of the script's induced symplectic map.
gf::Matrix script_matrix(const GateScript& script, int n, int p);

gf::Matrix symplectic_form_matrix(int n, int p);
bool is_symplectic(const gf::Matrix& a);

// Maps the span of the (isotropic) generators onto span{e_1..e_s};
// returns the script and s = rank of the generator matrix.
std::pair<GateScript, int> canonicalize_isotropic(const std::vector<PauliVector>& gens);

// Script whose elementary matrices compose exactly to the symplectic A.
GateScript decompose_symplectic(const gf::Matrix& a);

// generator matrix with the i-th generator in row i (length-2n rows)
gf::Matrix generator_matrix(const std::vector<PauliVector>& gens);

}  // namespace qcalg::pauli

#endif
