#include "qcalg/pauli.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcalg::pauli {

using gf::fp_inv;
using gf::fp_mul;
using gf::fp_neg;
using gf::fp_normalize;

PauliVector::PauliVector(int n_, int p_) : n(n_), p(p_), coords(2 * n_, 0) {
    if (!gf::is_prime(p_)) throw std::invalid_argument("qudit dimension must be prime");
}

PauliVector PauliVector::unit_x(int n, int p, int i) {
    PauliVector v(n, p);
    v.set_x(i, 1);
    return v;
}

PauliVector PauliVector::unit_z(int n, int p, int i) {
    PauliVector v(n, p);
    v.set_z(i, 1);
    return v;
}

int PauliVector::weight() const {
    int w = 0;
    for (int i = 0; i < n; ++i)
        if (x(i) != 0 || z(i) != 0) ++w;
    return w;
}

bool PauliVector::is_zero() const {
    return std::all_of(coords.begin(), coords.end(), [](int c) { return c == 0; });
}

static void check_compatible(const PauliVector& u, const PauliVector& v) {
    if (u.n != v.n || u.p != v.p) throw std::invalid_argument("pauli vector dimension/modulus mismatch");
}

int symplectic_product(const PauliVector& u, const PauliVector& v) {
    check_compatible(u, v);
    long long acc = 0;
    for (int i = 0; i < u.n; ++i) acc += static_cast<long long>(u.x(i)) * v.z(i) - static_cast<long long>(u.z(i)) * v.x(i);
    return fp_normalize(acc, u.p);
}

bool is_isotropic(const std::vector<PauliVector>& gens) {
    for (size_t i = 0; i < gens.size(); ++i)
        for (size_t j = i + 1; j < gens.size(); ++j)
            if (symplectic_product(gens[i], gens[j]) != 0) return false;
    return true;
}

void GateScript::swap(int i, int j, int p) {
    if (i == j) return;
    cx(i, j, 1);
    cx(j, i, fp_neg(1, p));
    cx(i, j, 1);
    r(i, fp_neg(1, p));
}

GateScript GateScript::inverted(int p) const {
    GateScript out;
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
        switch (it->kind) {
            case MoveKind::Hadamard:
                // H^{-1} = H . R(-1): apply R(i,-1) then H(i)
                out.r(it->i, fp_neg(1, p));
                out.h(it->i);
                break;
            case MoveKind::Phase:
                out.s(it->i, fp_neg(it->a, p));
                break;
            case MoveKind::Rescale:
                out.r(it->i, fp_inv(it->a, p));
                break;
            case MoveKind::Cnot:
                out.cx(it->i, it->j, fp_neg(it->a, p));
                break;
        }
    }
    return out;
}

std::string GateScript::to_text() const {
    std::ostringstream os;
    for (const Move& m : moves) {
        switch (m.kind) {
            case MoveKind::Hadamard: os << "H " << m.i + 1 << "\n"; break;
            case MoveKind::Phase: os << "S " << m.i + 1 << " " << m.a << "\n"; break;
            case MoveKind::Rescale: os << "R " << m.i + 1 << " " << m.a << "\n"; break;
            case MoveKind::Cnot: os << "CX " << m.i + 1 << " " << m.j + 1 << " " << m.a << "\n"; break;
        }
    }
    return os.str();
}

GateScript GateScript::from_text(const std::string& text) {
    GateScript out;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string op;
        if (!(ls >> op)) continue;
        auto fail = [&]() { throw std::invalid_argument("bad gate script at line " + std::to_string(lineno) + ": " + line); };
        if (op == "H") {
            int i;
            if (!(ls >> i)) fail();
            out.moves.push_back({MoveKind::Hadamard, i - 1, 0, 0});
        } else if (op == "S" || op == "R") {
            int i, a;
            if (!(ls >> i >> a)) fail();
            out.moves.push_back({op == "S" ? MoveKind::Phase : MoveKind::Rescale, i - 1, 0, a});
        } else if (op == "CX") {
            int i, j, a;
            if (!(ls >> i >> j >> a)) fail();
            out.moves.push_back({MoveKind::Cnot, i - 1, j - 1, a});
        } else {
            fail();
        }
    }
    return out;
}

PauliVector apply_move(const Move& mv, const PauliVector& v) {
    PauliVector out = v;
    int p = v.p;
    if (mv.i < 0 || mv.i >= v.n || (mv.kind == MoveKind::Cnot && (mv.j < 0 || mv.j >= v.n || mv.j == mv.i)))
        throw std::out_of_range("gate index out of range");
    switch (mv.kind) {
        case MoveKind::Hadamard: {
            int xi = out.x(mv.i), zi = out.z(mv.i);
            out.set_x(mv.i, zi);
            out.set_z(mv.i, fp_neg(xi, p));
            break;
        }
        case MoveKind::Phase:
            out.set_z(mv.i, out.z(mv.i) + static_cast<long long>(mv.a) * out.x(mv.i));
            break;
        case MoveKind::Rescale: {
            if (mv.a % p == 0) throw std::invalid_argument("rescale by zero");
            out.set_x(mv.i, static_cast<long long>(mv.a) * out.x(mv.i));
            out.set_z(mv.i, static_cast<long long>(fp_inv(mv.a, p)) * out.z(mv.i));
            break;
        }
        case MoveKind::Cnot:
            out.set_x(mv.j, out.x(mv.j) + static_cast<long long>(mv.a) * out.x(mv.i));
            out.set_z(mv.i, out.z(mv.i) - static_cast<long long>(mv.a) * out.z(mv.j));
            break;
    }
    return out;
}

PauliVector apply_script(const GateScript& script, const PauliVector& v) {
    PauliVector out = v;
    for (const Move& m : script.moves) out = apply_move(m, out);
    return out;
}

gf::Matrix script_matrix(const GateScript& script, int n, int p) {
    gf::Matrix m = gf::Matrix::identity(2 * n, p);
    // columns are images of basis vectors
    for (int c = 0; c < 2 * n; ++c) {
        PauliVector v(n, p);
        v.coords[c] = 1;
        PauliVector w = apply_script(script, v);
        for (int r = 0; r < 2 * n; ++r) m.set(r, c, w.coords[r]);
    }
    return m;
}

gf::Matrix symplectic_form_matrix(int n, int p) {
    gf::Matrix l(2 * n, 2 * n, p);
    for (int i = 0; i < n; ++i) {
        l.set(i, n + i, 1);
        l.set(n + i, i, -1);
    }
    return l;
}

bool is_symplectic(const gf::Matrix& a) {
    if (a.rows() != a.cols() || a.rows() % 2 != 0) return false;
    int n = a.rows() / 2;
    gf::Matrix l = symplectic_form_matrix(n, a.modulus());
    return (a.transpose() * l * a) == l;
}

gf::Matrix generator_matrix(const std::vector<PauliVector>& gens) {
    if (gens.empty()) throw std::invalid_argument("empty generator list");
    gf::Matrix m(static_cast<int>(gens.size()), 2 * gens[0].n, gens[0].p);
    for (size_t r = 0; r < gens.size(); ++r) {
        check_compatible(gens[r], gens[0]);
        for (int c = 0; c < 2 * gens[0].n; ++c) m.set(static_cast<int>(r), c, gens[r].coords[c]);
    }
    return m;
}

namespace {

// Working state for the canonicalization algorithms: generator columns in a
// 2n x t matrix, with every emitted move immediately applied to it.
struct SymplecticWork {
    int n, p;
    gf::Matrix m;  // 2n x t
    GateScript script;

    SymplecticWork(int n_, int p_, gf::Matrix cols) : n(n_), p(p_), m(std::move(cols)) {}

    void apply(const Move& mv) {
        for (int c = 0; c < m.cols(); ++c) {
            PauliVector v(n, p);
            for (int r = 0; r < 2 * n; ++r) v.coords[r] = m.at(r, c);
            v = apply_move(mv, v);
            for (int r = 0; r < 2 * n; ++r) m.set(r, c, v.coords[r]);
        }
        script.moves.push_back(mv);
    }
    void h(int i) { apply({MoveKind::Hadamard, i, 0, 0}); }
    void s(int i, int a) {
        if (a % p) apply({MoveKind::Phase, i, 0, fp_normalize(a, p)});
    }
    void r(int i, int a) {
        a = fp_normalize(a, p);
        if (a != 1) apply({MoveKind::Rescale, i, 0, a});
    }
    void cx(int i, int j, int a) {
        if (a % p) apply({MoveKind::Cnot, i, j, fp_normalize(a, p)});
    }
    void qswap(int i, int j) {
        if (i == j) return;
        cx(i, j, 1);
        cx(j, i, fp_neg(1, p));
        cx(i, j, 1);
        r(i, fp_neg(1, p));
    }

    // Sends column c to the unit vector e_{x_k} using moves on qudits >= k.
    // Requires some nonzero entry of column c on those qudits.
    void column_to_unit(int c, int k) {
        // make the x-part nonzero
        bool has_x = false;
        for (int r = k; r < n; ++r)
            if (m.at(r, c) != 0) {
                has_x = true;
                break;
            }
        if (!has_x) {
            for (int r = k; r < n; ++r)
                if (m.at(n + r, c) != 0) {
                    h(r);
                    break;
                }
        }
        int pr = -1;
        for (int r = k; r < n; ++r)
            if (m.at(r, c) != 0) {
                pr = r;
                break;
            }
        if (pr < 0) throw std::logic_error("column_to_unit: zero column");
        qswap(k, pr);
        r(k, fp_inv(m.at(k, c), p));
        for (int rr = k + 1; rr < n; ++rr)
            if (m.at(rr, c) != 0) cx(k, rr, fp_neg(m.at(rr, c), p));
        if (m.at(n + k, c) != 0) s(k, fp_neg(m.at(n + k, c), p));
        for (int rr = k + 1; rr < n; ++rr) {
            if (m.at(n + rr, c) != 0) {
                h(rr);  // x_rr is zero here, so this moves z_rr up
                cx(k, rr, fp_neg(m.at(rr, c), p));
            }
        }
    }
};

// column-reduce columns of a 2n x t matrix in place (free basis re-choice);
// returns pivot column order: columns are permuted so that independent
// columns come first in reduced form.
void column_reduce(gf::Matrix& m) {
    int p = m.modulus();
    int pivot_col = 0;
    for (int r = 0; r < m.rows() && pivot_col < m.cols(); ++r) {
        int sel = -1;
        for (int c = pivot_col; c < m.cols(); ++c)
            if (m.at(r, c) != 0) {
                sel = c;
                break;
            }
        if (sel < 0) continue;
        m.swap_cols(pivot_col, sel);
        int inv = fp_inv(m.at(r, pivot_col), p);
        if (inv != 1)
            for (int rr = 0; rr < m.rows(); ++rr) m.set(rr, pivot_col, static_cast<long long>(m.at(rr, pivot_col)) * inv);
        for (int c = 0; c < m.cols(); ++c) {
            if (c == pivot_col) continue;
            int v = m.at(r, c);
            if (v == 0) continue;
            for (int rr = 0; rr < m.rows(); ++rr)
                m.set(rr, c, m.at(rr, c) - static_cast<long long>(v) * m.at(rr, pivot_col));
        }
        ++pivot_col;
    }
}

}  // namespace

std::pair<GateScript, int> canonicalize_isotropic(const std::vector<PauliVector>& gens) {
    if (gens.empty()) return {GateScript{}, 0};
    if (!is_isotropic(gens)) throw std::invalid_argument("generators are not isotropic (anti-commuting pair)");
    int n = gens[0].n, p = gens[0].p;
    gf::Matrix cols(2 * n, static_cast<int>(gens.size()), p);
    for (size_t c = 0; c < gens.size(); ++c) {
        check_compatible(gens[c], gens[0]);
        for (int r = 0; r < 2 * n; ++r) cols.set(r, static_cast<int>(c), gens[c].coords[r]);
    }
    SymplecticWork w(n, p, cols);
    int s = 0;
    while (s < n) {
        column_reduce(w.m);
        // find a column with support beyond the placed pivots
        int c = -1;
        for (int cc = 0; cc < w.m.cols() && c < 0; ++cc) {
            for (int r = s; r < n && c < 0; ++r)
                if (w.m.at(r, cc) != 0 || w.m.at(n + r, cc) != 0) c = cc;
        }
        if (c < 0) break;
        w.column_to_unit(c, s);
        ++s;
    }
    // sanity: the span must now be span{e_1..e_s} and nothing else
    column_reduce(w.m);
    for (int c = 0; c < w.m.cols(); ++c)
        for (int r = 0; r < 2 * n; ++r)
            if ((c >= s || r != c) && w.m.at(r, c) != 0) throw std::logic_error("canonicalize_isotropic failed to reach canonical form");
    return {std::move(w.script), s};
}

GateScript decompose_symplectic(const gf::Matrix& a) {
    if (!is_symplectic(a)) throw std::invalid_argument("matrix is not symplectic");
    int p = a.modulus();
    int n = a.rows() / 2;
    SymplecticWork w(n, p, a);
    for (int k = 0; k < n; ++k) {
        // column k -> e_{x_k}
        w.column_to_unit(k, k);
        // column n + k -> e_{z_k}; its z_k component is 1 after the step above
        int c = n + k;
        // clear x_r / z_r for r > k, consuming z_k = 1 as the source
        for (int rq = k + 1; rq < n; ++rq) {
            if (w.m.at(n + rq, c) != 0) w.cx(rq, k, w.m.at(n + rq, c));
            if (w.m.at(rq, c) != 0) {
                w.h(rq);  // z_rq is zero here, so this moves x_rq down
                w.cx(rq, k, w.m.at(n + rq, c));
            }
        }
        // clear x_k using the composite H S R H = [[1,-a],[0,1]] on qudit k
        int xk = w.m.at(k, c);
        if (xk != 0) {
            w.h(k);
            w.s(k, xk);
            w.r(k, fp_neg(1, p));
            w.h(k);
        }
        if (w.m.at(n + k, c) != 1) throw std::logic_error("decompose_symplectic: z pivot not unit");
    }
    // w.script * A = identity, so A = inverse of the accumulated script
    for (int r = 0; r < 2 * n; ++r)
        for (int c = 0; c < 2 * n; ++c)
            if (w.m.at(r, c) != (r == c ? 1 : 0)) throw std::logic_error("decompose_symplectic: reduction incomplete");
    return w.script.inverted(p);
}

}  // namespace qcalg::pauli
