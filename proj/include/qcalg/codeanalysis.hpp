#ifndef QCALG_CODEANALYSIS_HPP
#define QCALG_CODEANALYSIS_HPP

#include <optional>
#include <vector>

#include "qcalg/pauli.hpp"

namespace qcalg::codeanalysis {

// Finite additive code: n qudits of prime dimension p with a commuting
// set of stabilizer generators (possibly redundant).
struct FiniteCode {
    int n = 0;
    int p = 2;
    std::vector<pauli::PauliVector> stabilizers;

    FiniteCode() = default;
    FiniteCode(int n_, int p_, std::vector<pauli::PauliVector> gens);
};

// Sorted duplicate-free set of qudit indices (0-based).
struct Region {
    std::vector<int> qudits;

    Region() = default;
    Region(std::vector<int> q, int n);
    Region complement(int n) const;
    bool contains(int q) const;
    int size() const { return static_cast<int>(qudits.size()); }
};

int stabilizer_rank(const FiniteCode& code);

// k = n - rank of the generator matrix
int logical_qubits(const FiniteCode& code);

// Largest number of independent logical operators supported on M,
// computed as 2m - 2 dim Sigma_M - dim Sigma'.
int region_logical_count(const FiniteCode& code, const Region& m);

bool is_correctable(const FiniteCode& code, const Region& m);

// Minimal weight of a logical operator outside the stabilizer group.
// Exhausts the kernel of the excitation map when 2k <= 22 and the kernel
// is small enough to walk, otherwise scans Pauli operators by weight.
// Returns nullopt when the distance exceeds weight_cap.
std::optional<int> distance(const FiniteCode& code, int weight_cap);

// Entanglement entropy (in units of log p) of a pure stabilizer state
// given by rank-n commuting stabilizers: s = |M| - dim Sigma_M.
int entanglement_entropy(const std::vector<pauli::PauliVector>& stabilizers, const Region& m);

struct BellForm {
    pauli::GateScript on_region;      // acts only on qudits of M
    pauli::GateScript on_complement;  // acts only on qudits of M^c
    int bell_count = 0;
    std::vector<int> region_partners;      // paired qudits in M
    std::vector<int> complement_partners;  // paired qudits in M^c, same order
};

// Disentangles a pure stabilizer state across the cut M | M^c into
// single-qudit X stabilizers plus bell_count Bell pairs.
BellForm bell_canonicalize(const std::vector<pauli::PauliVector>& stabilizers, const Region& m);

// Deterministic completion of a code's stabilizer group to a maximal
// commuting set (a pure stabilizer state containing the code space).
std::vector<pauli::PauliVector> complete_to_state(const FiniteCode& code);

// Excitation map of the finite code as a matrix: row i sends v to the
// symplectic product of generator i with v.
gf::Matrix excitation_matrix(const FiniteCode& code);

}  // namespace qcalg::codeanalysis

#endif
