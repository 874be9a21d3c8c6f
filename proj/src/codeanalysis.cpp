#include "qcalg/codeanalysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace qcalg::codeanalysis {

using gf::Matrix;
using pauli::GateScript;
using pauli::PauliVector;

FiniteCode::FiniteCode(int n_, int p_, std::vector<PauliVector> gens) : n(n_), p(p_), stabilizers(std::move(gens)) {
    if (!gf::is_prime(p_)) throw std::invalid_argument("qudit dimension must be prime");
    for (const auto& g : stabilizers)
        if (g.n != n || g.p != p) throw std::invalid_argument("stabilizer dimension mismatch");
    if (!pauli::is_isotropic(stabilizers)) throw std::invalid_argument("stabilizers do not commute");
}

Region::Region(std::vector<int> q, int n) : qudits(std::move(q)) {
    std::sort(qudits.begin(), qudits.end());
    for (size_t i = 0; i < qudits.size(); ++i) {
        if (qudits[i] < 0 || qudits[i] >= n) throw std::out_of_range("region qudit out of range");
        if (i > 0 && qudits[i] == qudits[i - 1]) throw std::invalid_argument("duplicate qudit in region");
    }
}

Region Region::complement(int n) const {
    std::vector<int> out;
    size_t i = 0;
    for (int q = 0; q < n; ++q) {
        if (i < qudits.size() && qudits[i] == q)
            ++i;
        else
            out.push_back(q);
    }
    return Region(out, n);
}

bool Region::contains(int q) const { return std::binary_search(qudits.begin(), qudits.end(), q); }

namespace {

Matrix generator_matrix_or_zero(const FiniteCode& code) {
    if (code.stabilizers.empty()) return Matrix(0, 2 * code.n, code.p);
    return pauli::generator_matrix(code.stabilizers);
}

// columns of the generator matrix restricted to the coordinates (x and z)
// of the given qudit set
Matrix restrict_columns(const Matrix& gens, const std::vector<int>& qudits, int n) {
    Matrix out(gens.rows(), 2 * static_cast<int>(qudits.size()), gens.modulus());
    for (int r = 0; r < gens.rows(); ++r)
        for (size_t j = 0; j < qudits.size(); ++j) {
            out.set(r, static_cast<int>(j), gens.at(r, qudits[j]));
            out.set(r, static_cast<int>(j + qudits.size()), gens.at(r, n + qudits[j]));
        }
    return out;
}

}  // namespace

int stabilizer_rank(const FiniteCode& code) {
    if (code.stabilizers.empty()) return 0;
    return gf::rank(generator_matrix_or_zero(code));
}

int logical_qubits(const FiniteCode& code) { return code.n - stabilizer_rank(code); }

int region_logical_count(const FiniteCode& code, const Region& m) {
    int mm = m.size();
    if (code.stabilizers.empty()) return 2 * mm;
    Matrix gens = generator_matrix_or_zero(code);
    int rank_all = gf::rank(gens);
    Region mc = m.complement(code.n);
    int rank_mc = gf::rank(restrict_columns(gens, mc.qudits, code.n));
    int rank_m = gf::rank(restrict_columns(gens, m.qudits, code.n));
    int dim_sigma_m = rank_all - rank_mc;
    int dim_sigma_prime = rank_m - dim_sigma_m;
    return 2 * mm - 2 * dim_sigma_m - dim_sigma_prime;
}

bool is_correctable(const FiniteCode& code, const Region& m) { return region_logical_count(code, m) == 0; }

gf::Matrix excitation_matrix(const FiniteCode& code) {
    // lambda(g, v) = sum_i g_x[i] v_z[i] - g_z[i] v_x[i], so row = (-g_z | g_x)
    Matrix e(static_cast<int>(code.stabilizers.size()), 2 * code.n, code.p);
    for (size_t r = 0; r < code.stabilizers.size(); ++r)
        for (int i = 0; i < code.n; ++i) {
            e.set(static_cast<int>(r), i, -code.stabilizers[r].z(i));
            e.set(static_cast<int>(r), code.n + i, code.stabilizers[r].x(i));
        }
    return e;
}

namespace {

// bit-packed F_2 vector split into x and z halves so weights are cheap
struct Packed2 {
    std::vector<uint64_t> x, z;

    explicit Packed2(int n) : x((n + 63) / 64, 0), z((n + 63) / 64, 0) {}
    static Packed2 from(const std::vector<int>& coords, int n) {
        Packed2 v(n);
        for (int i = 0; i < n; ++i) {
            if (coords[i]) v.x[i / 64] |= uint64_t{1} << (i % 64);
            if (coords[n + i]) v.z[i / 64] |= uint64_t{1} << (i % 64);
        }
        return v;
    }
    void operator^=(const Packed2& o) {
        for (size_t j = 0; j < x.size(); ++j) {
            x[j] ^= o.x[j];
            z[j] ^= o.z[j];
        }
    }
    bool get(int coord, int n) const {
        return coord < n ? (x[coord / 64] >> (coord % 64)) & 1 : (z[(coord - n) / 64] >> ((coord - n) % 64)) & 1;
    }
    int weight() const {
        int w = 0;
        for (size_t j = 0; j < x.size(); ++j) w += std::popcount(x[j] | z[j]);
        return w;
    }
    bool is_zero() const {
        for (size_t j = 0; j < x.size(); ++j)
            if (x[j] | z[j]) return false;
        return true;
    }
};

// exhaustive minimum over the kernel of the excitation map, p = 2
std::optional<int> kernel_walk_min_weight_p2(const FiniteCode& code, const Matrix& kernel, const gf::RrefResult& stab_rref) {
    int n = code.n;
    int dim = kernel.cols();
    std::vector<Packed2> basis;
    for (int c = 0; c < dim; ++c) {
        std::vector<int> coords(2 * n);
        for (int r = 0; r < 2 * n; ++r) coords[r] = kernel.at(r, c);
        basis.push_back(Packed2::from(coords, n));
    }
    std::vector<Packed2> rows;
    for (int r = 0; r < stab_rref.rank; ++r) rows.push_back(Packed2::from(stab_rref.matrix.row(r), n));

    std::optional<int> best;
    Packed2 v(n);
    uint64_t total = uint64_t{1} << dim;
    for (uint64_t cnt = 1; cnt < total; ++cnt) {
        v ^= basis[std::countr_zero(cnt)];
        int w = v.weight();
        if (best && w >= *best) continue;
        Packed2 red = v;
        for (int r = 0; r < stab_rref.rank; ++r)
            if (red.get(stab_rref.pivot_cols[r], n)) red ^= rows[r];
        if (red.is_zero()) continue;  // a stabilizer, not a logical
        best = w;
        if (w == 1) break;
    }
    return best;
}

// same walk for general p via an odometer over kernel coefficients
std::optional<int> kernel_walk_min_weight_generic(const FiniteCode& code, const Matrix& kernel,
                                                  const gf::RrefResult& stab_rref) {
    int n = code.n, p = code.p;
    int dim = kernel.cols();
    std::vector<std::vector<int>> basis(dim, std::vector<int>(2 * n));
    for (int c = 0; c < dim; ++c)
        for (int r = 0; r < 2 * n; ++r) basis[c][r] = kernel.at(r, c);

    std::vector<int> digits(dim, 0), v(2 * n, 0);
    std::optional<int> best;
    auto add_basis = [&](int j) {
        for (int r = 0; r < 2 * n; ++r) v[r] = gf::fp_add(v[r], basis[j][r], p);
    };
    while (true) {
        int j = 0;
        while (j < dim && digits[j] == p - 1) {
            digits[j] = 0;
            add_basis(j);  // p-th addition wraps the digit to zero
            ++j;
        }
        if (j == dim) break;
        ++digits[j];
        add_basis(j);
        int w = 0;
        for (int i = 0; i < n; ++i)
            if (v[i] || v[n + i]) ++w;
        if (best && w >= *best) continue;
        if (gf::in_row_space(stab_rref, v)) continue;
        best = w;
        if (w == 1) break;
    }
    return best;
}

// increasing-weight scan over Pauli operators up to the cap
std::optional<int> weight_scan_min(const FiniteCode& code, const gf::RrefResult& stab_rref, int weight_cap) {
    int n = code.n, p = code.p;
    int patterns = p * p - 1;
    for (int w = 1; w <= std::min(weight_cap, n); ++w) {
        std::vector<int> comb(w);
        for (int i = 0; i < w; ++i) comb[i] = i;
        while (true) {
            std::vector<int> assign(w, 0);
            while (true) {
                PauliVector v(n, p);
                for (int i = 0; i < w; ++i) {
                    int code_xz = assign[i] + 1;  // 1..p^2-1, nonzero (x,z) pair
                    v.set_x(comb[i], code_xz % p);
                    v.set_z(comb[i], code_xz / p);
                }
                bool commutes = true;
                for (const auto& g : code.stabilizers)
                    if (pauli::symplectic_product(g, v) != 0) {
                        commutes = false;
                        break;
                    }
                if (commutes && !gf::in_row_space(stab_rref, v.coords)) return w;
                int j = 0;
                while (j < w && assign[j] == patterns - 1) assign[j++] = 0;
                if (j == w) break;
                ++assign[j];
            }
            int j = w - 1;
            while (j >= 0 && comb[j] == n - w + j) --j;
            if (j < 0) break;
            ++comb[j];
            for (int i = j + 1; i < w; ++i) comb[i] = comb[i - 1] + 1;
        }
    }
    return std::nullopt;
}

}  // namespace

std::optional<int> distance(const FiniteCode& code, int weight_cap) {
    Matrix gens = generator_matrix_or_zero(code);
    auto stab_rref = code.stabilizers.empty() ? gf::rref(Matrix(0, 2 * code.n, code.p)) : gf::rref(gens);
    int s = stab_rref.rank;
    int k = code.n - s;
    if (k <= 0) throw std::invalid_argument("distance undefined: the code encodes no logical qudits");

    int kernel_dim = 2 * code.n - s;
    double walk_cost = kernel_dim * std::log2(static_cast<double>(code.p));
    if (2 * k <= 22 && walk_cost <= 26.0) {
        Matrix kernel = gf::kernel_basis(excitation_matrix(code));
        std::optional<int> d = code.p == 2 ? kernel_walk_min_weight_p2(code, kernel, stab_rref)
                                           : kernel_walk_min_weight_generic(code, kernel, stab_rref);
        if (!d) throw std::logic_error("distance: kernel walk found no logical despite k > 0");
        return *d <= weight_cap ? d : std::nullopt;
    }
    return weight_scan_min(code, stab_rref, weight_cap);
}

int entanglement_entropy(const std::vector<PauliVector>& stabilizers, const Region& m) {
    if (stabilizers.empty()) throw std::invalid_argument("empty stabilizer list");
    int n = stabilizers[0].n;
    FiniteCode state(n, stabilizers[0].p, stabilizers);  // validates commutation
    Matrix gens = pauli::generator_matrix(stabilizers);
    if (gf::rank(gens) < n) throw std::invalid_argument("not a pure stabilizer state: rank below n");
    Region mc = m.complement(n);
    int rank_mc = gf::rank(restrict_columns(gens, mc.qudits, n));
    int dim_sigma_m = n - rank_mc;
    return m.size() - dim_sigma_m;
}

std::vector<PauliVector> complete_to_state(const FiniteCode& code) {
    int n = code.n, p = code.p;
    std::vector<PauliVector> basis;
    if (!code.stabilizers.empty()) {
        auto rr = gf::rref(pauli::generator_matrix(code.stabilizers));
        for (int r = 0; r < rr.rank; ++r) {
            PauliVector v(n, p);
            v.coords = rr.matrix.row(r);
            basis.push_back(v);
        }
    }
    int s = static_cast<int>(basis.size());
    if (s == n) return basis;
    auto [script, rank] = basis.empty() ? std::make_pair(GateScript{}, 0) : pauli::canonicalize_isotropic(basis);
    if (rank != s) throw std::logic_error("complete_to_state: rank mismatch");
    GateScript inv = script.inverted(p);
    for (int i = s; i < n; ++i) basis.push_back(pauli::apply_script(inv, PauliVector::unit_x(n, p, i)));
    if (!pauli::is_isotropic(basis)) throw std::logic_error("complete_to_state: completion is not commuting");
    if (gf::rank(pauli::generator_matrix(basis)) != n) throw std::logic_error("complete_to_state: completion rank deficient");
    return basis;
}

namespace {

// vectors of the row space supported entirely on the given qudit set
std::vector<PauliVector> supported_subspace_basis(const Matrix& basis_rows, const std::vector<int>& qudits, int n) {
    int p = basis_rows.modulus();
    Region keep(qudits, n);
    std::vector<int> outside;
    for (int q = 0; q < n; ++q)
        if (!keep.contains(q)) outside.push_back(q);
    Matrix restricted = restrict_columns(basis_rows, outside, n);
    // coefficient vectors c with c . restricted = 0
    Matrix combos = gf::kernel_basis(restricted.transpose());
    std::vector<PauliVector> out;
    for (int c = 0; c < combos.cols(); ++c) {
        PauliVector v(n, p);
        for (int r = 0; r < basis_rows.rows(); ++r) {
            int coef = combos.at(r, c);
            if (coef == 0) continue;
            for (int j = 0; j < 2 * n; ++j) v.coords[j] = gf::fp_add(v.coords[j], gf::fp_mul(coef, basis_rows.at(r, j), p), p);
        }
        out.push_back(v);
    }
    return out;
}

PauliVector localize(const PauliVector& v, const std::vector<int>& qudits) {
    PauliVector out(static_cast<int>(qudits.size()), v.p);
    for (size_t j = 0; j < qudits.size(); ++j) {
        out.set_x(static_cast<int>(j), v.x(qudits[j]));
        out.set_z(static_cast<int>(j), v.z(qudits[j]));
    }
    return out;
}

GateScript relabel(const GateScript& local, const std::vector<int>& qudits) {
    GateScript out;
    for (auto mv : local.moves) {
        mv.i = qudits[mv.i];
        if (mv.kind == pauli::MoveKind::Cnot) mv.j = qudits[mv.j];
        out.moves.push_back(mv);
    }
    return out;
}

}  // namespace

BellForm bell_canonicalize(const std::vector<PauliVector>& stabilizers, const Region& m) {
    if (stabilizers.empty()) throw std::invalid_argument("empty stabilizer list");
    int n = stabilizers[0].n, p = stabilizers[0].p;
    FiniteCode state(n, p, stabilizers);
    Matrix gens = pauli::generator_matrix(stabilizers);
    auto rr = gf::rref(gens);
    if (rr.rank < n) throw std::invalid_argument("not a pure stabilizer state: rank below n");
    Matrix basis(n, 2 * n, p);
    for (int r = 0; r < n; ++r)
        for (int c = 0; c < 2 * n; ++c) basis.set(r, c, rr.matrix.at(r, c));

    Region mc = m.complement(n);
    BellForm out;

    // one-sided stabilizers get disentangled by a canonicalization local to
    // their side of the cut
    auto side_script = [&](const std::vector<int>& side) -> std::pair<GateScript, int> {
        auto inside = supported_subspace_basis(basis, side, n);
        if (inside.empty()) return {GateScript{}, 0};
        std::vector<PauliVector> local;
        for (const auto& v : inside) local.push_back(localize(v, side));
        auto [script, rank] = pauli::canonicalize_isotropic(local);
        return {relabel(script, side), rank};
    };
    auto [script_m, a] = side_script(m.qudits);
    auto [script_mc, b] = side_script(mc.qudits);
    out.on_region = script_m;
    out.on_complement = script_mc;

    GateScript both = script_m;
    both.append(script_mc);
    std::vector<PauliVector> transformed;
    for (int r = 0; r < n; ++r) {
        PauliVector v(n, p);
        v.coords = basis.row(r);
        transformed.push_back(pauli::apply_script(both, v));
    }

    std::vector<int> ent_m(m.qudits.begin() + a, m.qudits.end());
    std::vector<int> ent_mc(mc.qudits.begin() + b, mc.qudits.end());
    int s = static_cast<int>(ent_m.size());
    if (static_cast<int>(ent_mc.size()) != s)
        throw std::logic_error("bell_canonicalize: purity violated, sides disagree");
    out.bell_count = s;
    out.region_partners = ent_m;
    out.complement_partners = ent_mc;
    if (s == 0) return out;

    // residual generators: clean the disentangled qudits out of the basis
    std::vector<int> freed;
    for (int i = 0; i < a; ++i) freed.push_back(m.qudits[i]);
    for (int i = 0; i < b; ++i) freed.push_back(mc.qudits[i]);
    std::vector<std::vector<int>> residual_rows;
    {
        Matrix t = pauli::generator_matrix(transformed);
        auto trr = gf::rref(t);
        for (int r = 0; r < trr.rank; ++r) {
            std::vector<int> row = trr.matrix.row(r);
            for (int q : freed) {
                int coef = row[q];
                if (coef != 0) row[q] = 0;  // subtract the X stabilizer on q
                if (row[n + q] != 0) throw std::logic_error("bell_canonicalize: z support on disentangled qudit");
            }
            bool zero = std::all_of(row.begin(), row.end(), [](int v) { return v == 0; });
            if (!zero) residual_rows.push_back(row);
        }
    }
    if (gf::row_space_rank(residual_rows, p) != 2 * s || static_cast<int>(residual_rows.size()) < 2 * s)
        throw std::logic_error("bell_canonicalize: unexpected residual rank");
    // reduce to an independent set
    {
        Matrix rm(static_cast<int>(residual_rows.size()), 2 * n, p);
        for (size_t r = 0; r < residual_rows.size(); ++r)
            for (int c = 0; c < 2 * n; ++c) rm.set(static_cast<int>(r), c, residual_rows[r][c]);
        auto rrr = gf::rref(rm);
        residual_rows.clear();
        for (int r = 0; r < rrr.rank; ++r) residual_rows.push_back(rrr.matrix.row(r));
    }

    auto local_coords = [&](const std::vector<int>& row, const std::vector<int>& side) {
        std::vector<int> out2(2 * side.size());
        for (size_t j = 0; j < side.size(); ++j) {
            out2[j] = row[side[j]];
            out2[side.size() + j] = row[n + side[j]];
        }
        return out2;
    };

    // choose generator combinations whose M-side part is the standard basis
    Matrix pm(2 * s, 2 * s, p);
    for (int r = 0; r < 2 * s; ++r) {
        auto lc = local_coords(residual_rows[r], ent_m);
        for (int c = 0; c < 2 * s; ++c) pm.set(r, c, lc[c]);
    }
    // invert pm
    Matrix aug(2 * s, 4 * s, p);
    for (int r = 0; r < 2 * s; ++r) {
        for (int c = 0; c < 2 * s; ++c) aug.set(r, c, pm.at(r, c));
        aug.set(r, 2 * s + r, 1);
    }
    auto arr = gf::rref(aug);
    if (arr.rank != 2 * s) throw std::logic_error("bell_canonicalize: region projection not invertible");
    Matrix pinv(2 * s, 2 * s, p);
    for (int r = 0; r < 2 * s; ++r)
        for (int c = 0; c < 2 * s; ++c) pinv.set(r, c, arr.matrix.at(r, 2 * s + c));

    // h_i = complement-side part of the recombined generator i
    Matrix h(2 * s, 2 * s, p);
    for (int i = 0; i < 2 * s; ++i) {
        std::vector<int> row(2 * n, 0);
        for (int r = 0; r < 2 * s; ++r) {
            int coef = pinv.at(i, r);
            if (coef == 0) continue;
            for (int c = 0; c < 2 * n; ++c) row[c] = gf::fp_add(row[c], gf::fp_mul(coef, residual_rows[r][c], p), p);
        }
        auto lb = local_coords(row, ent_mc);
        for (int c = 0; c < 2 * s; ++c) h.set(c, i, lb[c]);  // columns are h_i
    }
    // targets: X on partner for i < s, Z^{-1} on partner for i >= s
    Matrix targets(2 * s, 2 * s, p);
    for (int i = 0; i < s; ++i) {
        targets.set(i, i, 1);
        targets.set(s + i, s + i, -1);
    }
    // W = targets * h^{-1}
    Matrix haug(2 * s, 4 * s, p);
    for (int r = 0; r < 2 * s; ++r) {
        for (int c = 0; c < 2 * s; ++c) haug.set(r, c, h.at(r, c));
        haug.set(r, 2 * s + r, 1);
    }
    auto hrr = gf::rref(haug);
    if (hrr.rank != 2 * s) throw std::logic_error("bell_canonicalize: complement projection not invertible");
    Matrix hinv(2 * s, 2 * s, p);
    for (int r = 0; r < 2 * s; ++r)
        for (int c = 0; c < 2 * s; ++c) hinv.set(r, c, hrr.matrix.at(r, 2 * s + c));
    Matrix w = targets * hinv;
    if (!pauli::is_symplectic(w)) throw std::logic_error("bell_canonicalize: pairing map is not symplectic");
    out.on_complement.append(relabel(pauli::decompose_symplectic(w), ent_mc));
    return out;
}

}  // namespace qcalg::codeanalysis
