// Test-only oracles, independent of the library's linear-algebra path.
#ifndef QCALG_TESTS_ORACLES_HPP
#define QCALG_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "qcalg/codeanalysis.hpp"

namespace oracles {

using cplx = std::complex<double>;
using qcalg::pauli::PauliVector;

// |b> indexed with qudit 0 as the most significant digit
inline int basis_index(const std::vector<int>& digits, int p) {
    int idx = 0;
    for (int d : digits) idx = idx * p + d;
    return idx;
}

// Applies X(x)Z(z) (no extra phase) to a dense state vector.
inline std::vector<cplx> apply_pauli(const PauliVector& v, const std::vector<cplx>& psi) {
    int n = v.n, p = v.p;
    int dim = static_cast<int>(psi.size());
    std::vector<cplx> out(dim, 0.0);
    double two_pi = 8.0 * std::atan(1.0);
    for (int b = 0; b < dim; ++b) {
        if (psi[b] == cplx(0.0)) continue;
        std::vector<int> digits(n);
        int tmp = b;
        for (int q = n - 1; q >= 0; --q) {
            digits[q] = tmp % p;
            tmp /= p;
        }
        long long phase_exp = 0;
        for (int q = 0; q < n; ++q) phase_exp += static_cast<long long>(v.z(q)) * digits[q];
        cplx phase = std::polar(1.0, two_pi * static_cast<double>(phase_exp % p) / p);
        for (int q = 0; q < n; ++q) digits[q] = (digits[q] + v.x(q)) % p;
        out[basis_index(digits, p)] += phase * psi[b];
    }
    return out;
}

// Builds a common eigenvector of the given commuting rank-n stabilizers by
// successive projection; eigenvalue phases are chosen to make the first
// consistent projection nonzero.
inline std::vector<cplx> stabilizer_state_vector(const std::vector<PauliVector>& stabs) {
    int n = stabs.at(0).n, p = stabs.at(0).p;
    int dim = 1;
    for (int q = 0; q < n; ++q) dim *= p;
    std::vector<cplx> psi(dim, 0.0);
    psi[0] = 1.0;
    double two_pi = 8.0 * std::atan(1.0);
    for (const auto& g : stabs) {
        // eta makes (eta g)^p = identity; for p = 2 a Y-type factor needs i
        cplx eta = 1.0;
        if (p == 2) {
            long long xz = 0;
            for (int q = 0; q < n; ++q) xz += static_cast<long long>(g.x(q)) * g.z(q);
            if (xz % 2) eta = cplx(0.0, 1.0);
        }
        for (int attempt = 0; attempt < p; ++attempt) {
            cplx shift = std::polar(1.0, two_pi * attempt / p);
            std::vector<cplx> proj(dim, 0.0);
            std::vector<cplx> cur = psi;
            for (int j = 0; j < p; ++j) {
                for (int b = 0; b < dim; ++b) proj[b] += cur[b] / static_cast<double>(p);
                if (j + 1 < p) {
                    cur = apply_pauli(g, cur);
                    for (auto& c : cur) c *= eta * shift;
                }
            }
            double norm = 0;
            for (auto& c : proj) norm += std::norm(c);
            if (norm > 1e-9) {
                psi = proj;
                break;
            }
            if (attempt == p - 1) throw std::runtime_error("oracle: all projections vanished");
        }
    }
    double norm = 0;
    for (auto& c : psi) norm += std::norm(c);
    if (norm < 1e-12) throw std::runtime_error("oracle: zero state");
    for (auto& c : psi) c /= std::sqrt(norm);
    return psi;
}

struct SchmidtInfo {
    int rank;    // number of nonzero Schmidt coefficients
    bool flat;   // all nonzero coefficients equal
};

// Schmidt data across the cut M | M^c via traces of powers of the reduced
// density matrix (no eigensolver: flat spectra satisfy tr rho^k = r^{1-k}).
inline SchmidtInfo schmidt_info(const std::vector<cplx>& psi, const std::vector<int>& region, int n, int p) {
    std::vector<bool> in_m(n, false);
    for (int q : region) in_m[q] = true;
    int dm = 1, dmc = 1;
    for (int q = 0; q < n; ++q) (in_m[q] ? dm : dmc) *= p;
    // reshape
    std::vector<std::vector<cplx>> m(dm, std::vector<cplx>(dmc, 0.0));
    int dim = static_cast<int>(psi.size());
    for (int b = 0; b < dim; ++b) {
        std::vector<int> digits(n);
        int tmp = b;
        for (int q = n - 1; q >= 0; --q) {
            digits[q] = tmp % p;
            tmp /= p;
        }
        int row = 0, col = 0;
        for (int q = 0; q < n; ++q) {
            if (in_m[q])
                row = row * p + digits[q];
            else
                col = col * p + digits[q];
        }
        m[row][col] = psi[b];
    }
    // rho = m m^dagger
    std::vector<std::vector<cplx>> rho(dm, std::vector<cplx>(dm, 0.0));
    for (int i = 0; i < dm; ++i)
        for (int j = 0; j < dm; ++j)
            for (int k = 0; k < dmc; ++k) rho[i][j] += m[i][k] * std::conj(m[j][k]);
    double tr1 = 0, tr2 = 0, tr3 = 0;
    for (int i = 0; i < dm; ++i) tr1 += rho[i][i].real();
    for (int i = 0; i < dm; ++i)
        for (int j = 0; j < dm; ++j) tr2 += std::norm(rho[i][j]);
    for (int i = 0; i < dm; ++i)
        for (int j = 0; j < dm; ++j)
            for (int k = 0; k < dm; ++k) tr3 += (rho[i][j] * rho[j][k] * rho[k][i]).real();
    if (std::abs(tr1 - 1.0) > 1e-8) throw std::runtime_error("oracle: reduced density not normalized");
    int r = static_cast<int>(std::lround(1.0 / tr2));
    bool flat = std::abs(tr2 - 1.0 / r) < 1e-8 && std::abs(tr3 - 1.0 / (static_cast<double>(r) * r)) < 1e-8;
    return {r, flat};
}

// Brute-force code distance by direct enumeration of all Pauli operators,
// checking commutation against every generator. Exponential; tiny n only.
inline int brute_force_distance(const qcalg::codeanalysis::FiniteCode& code) {
    int n = code.n, p = code.p;
    long long total = 1;
    for (int i = 0; i < 2 * n; ++i) total *= p;
    auto rr = qcalg::gf::rref(qcalg::pauli::generator_matrix(code.stabilizers));
    int best = n + 1;
    for (long long t = 1; t < total; ++t) {
        PauliVector v(n, p);
        long long tmp = t;
        for (int c = 0; c < 2 * n; ++c) {
            v.coords[c] = static_cast<int>(tmp % p);
            tmp /= p;
        }
        bool commutes = true;
        for (const auto& g : code.stabilizers)
            if (qcalg::pauli::symplectic_product(g, v) != 0) {
                commutes = false;
                break;
            }
        if (!commutes) continue;
        if (qcalg::gf::in_row_space(rr, v.coords)) continue;
        best = std::min(best, v.weight());
    }
    if (best > n) throw std::runtime_error("oracle: no logical found");
    return best;
}

}  // namespace oracles

#endif
