#include "qcalg/lattice_script.hpp"

#include <sstream>
#include <stdexcept>

namespace qcalg::lattice {

using laurent::LaurentPoly;
using laurent::PolyMatrix;

void Script::h(int i) {
    Move m;
    m.kind = Kind::H;
    m.i = i;
    moves.push_back(std::move(m));
}

void Script::s(int i, int a, int p) {
    a = gf::fp_normalize(a, p);
    if (a == 0) return;
    Move m;
    m.kind = Kind::S;
    m.i = i;
    m.a = a;
    moves.push_back(std::move(m));
}

void Script::r(int i, int a, int p) {
    a = gf::fp_normalize(a, p);
    if (a == 1) return;
    if (a == 0) throw std::invalid_argument("rescale by zero");
    Move m;
    m.kind = Kind::R;
    m.i = i;
    m.a = a;
    moves.push_back(std::move(m));
}

void Script::cnot(int i, int j, LaurentPoly mpoly) {
    if (mpoly.is_zero()) return;
    if (i == j) throw std::invalid_argument("cnot control equals target");
    Move m;
    m.kind = Kind::Cnot;
    m.i = i;
    m.j = j;
    m.poly = std::move(mpoly);
    moves.push_back(std::move(m));
}

void Script::cz(int i, LaurentPoly f) {
    if (f.is_zero()) return;
    if (!(f == f.antipode())) throw std::invalid_argument("cz coefficient must be antipode-symmetric");
    Move m;
    m.kind = Kind::Cz;
    m.i = i;
    m.poly = std::move(f);
    moves.push_back(std::move(m));
}

void Script::translate(int i, std::vector<int> shift) {
    bool zero = true;
    for (int v : shift) zero = zero && v == 0;
    if (zero) return;
    Move m;
    m.kind = Kind::Translate;
    m.i = i;
    m.shift = std::move(shift);
    moves.push_back(std::move(m));
}

void Script::coarse_grain(int b) {
    if (b < 1) throw std::invalid_argument("coarse-grain factor must be positive");
    if (b == 1) return;
    Move m;
    m.kind = Kind::CoarseGrain;
    m.b = b;
    moves.push_back(std::move(m));
}

void Script::var_redef(std::vector<std::vector<int>> u) {
    Move m;
    m.kind = Kind::VarRedef;
    m.u = std::move(u);
    moves.push_back(std::move(m));
}

void Script::col_swap(int c1, int c2) {
    if (c1 == c2) return;
    Move m;
    m.kind = Kind::ColSwap;
    m.i = c1;
    m.j = c2;
    moves.push_back(std::move(m));
}

void Script::col_add(int dst, int src, LaurentPoly mpoly) {
    if (mpoly.is_zero()) return;
    if (dst == src) throw std::invalid_argument("column add onto itself");
    Move m;
    m.kind = Kind::ColAdd;
    m.i = dst;
    m.j = src;
    m.poly = std::move(mpoly);
    moves.push_back(std::move(m));
}

void Script::col_scale(int c, LaurentPoly unit) {
    if (!unit.is_monomial()) throw std::invalid_argument("column scale must be a unit");
    if (unit.is_unit() && unit.terms.begin()->second == 1) return;  // identity
    Move m;
    m.kind = Kind::ColScale;
    m.i = c;
    m.poly = std::move(unit);
    moves.push_back(std::move(m));
}

void Script::qswap(int i, int j, int p, int D) {
    if (i == j) return;
    LaurentPoly one = LaurentPoly::constant(p, D, 1);
    cnot(i, j, one);
    cnot(j, i, -one);
    cnot(i, j, one);
    r(i, gf::fp_neg(1, p), p);
}

static int int_det3(const std::vector<std::vector<int>>& u) {
    int n = static_cast<int>(u.size());
    if (n == 1) return u[0][0];
    if (n == 2) return u[0][0] * u[1][1] - u[0][1] * u[1][0];
    if (n == 3)
        return u[0][0] * (u[1][1] * u[2][2] - u[1][2] * u[2][1]) - u[0][1] * (u[1][0] * u[2][2] - u[1][2] * u[2][0]) +
               u[0][2] * (u[1][0] * u[2][1] - u[1][1] * u[2][0]);
    throw std::invalid_argument("variable redefinitions supported for D <= 3");
}

SigmaState apply_move(const Move& mv, SigmaState st) {
    PolyMatrix& m = st.sigma;
    int q = st.q;
    int p = m.p, D = m.D;
    auto check_qudit = [&](int i) {
        if (i < 0 || i >= q) throw std::out_of_range("lattice move qudit out of range");
    };
    auto check_col = [&](int c) {
        if (c < 0 || c >= m.cols()) throw std::out_of_range("lattice move column out of range");
    };
    switch (mv.kind) {
        case Kind::H: {
            check_qudit(mv.i);
            for (int c = 0; c < m.cols(); ++c) {
                LaurentPoly x = m.at(mv.i, c), z = m.at(q + mv.i, c);
                m.at(mv.i, c) = z;
                m.at(q + mv.i, c) = -x;
            }
            break;
        }
        case Kind::S: {
            check_qudit(mv.i);
            for (int c = 0; c < m.cols(); ++c)
                m.at(q + mv.i, c) = m.at(q + mv.i, c) + m.at(mv.i, c).scaled(mv.a);
            break;
        }
        case Kind::R: {
            check_qudit(mv.i);
            int inv = gf::fp_inv(mv.a, p);
            for (int c = 0; c < m.cols(); ++c) {
                m.at(mv.i, c) = m.at(mv.i, c).scaled(mv.a);
                m.at(q + mv.i, c) = m.at(q + mv.i, c).scaled(inv);
            }
            break;
        }
        case Kind::Cnot: {
            check_qudit(mv.i);
            check_qudit(mv.j);
            LaurentPoly mp = mv.poly, mpa = mv.poly.antipode();
            for (int c = 0; c < m.cols(); ++c) {
                m.at(mv.j, c) = m.at(mv.j, c) + mp * m.at(mv.i, c);
                m.at(q + mv.i, c) = m.at(q + mv.i, c) - mpa * m.at(q + mv.j, c);
            }
            break;
        }
        case Kind::Cz: {
            check_qudit(mv.i);
            if (!(mv.poly == mv.poly.antipode())) throw std::invalid_argument("cz coefficient not symmetric");
            for (int c = 0; c < m.cols(); ++c)
                m.at(q + mv.i, c) = m.at(q + mv.i, c) + mv.poly * m.at(mv.i, c);
            break;
        }
        case Kind::Translate: {
            check_qudit(mv.i);
            LaurentPoly mono = LaurentPoly::monomial(p, D, mv.shift);
            for (int c = 0; c < m.cols(); ++c) {
                m.at(mv.i, c) = m.at(mv.i, c) * mono;
                m.at(q + mv.i, c) = m.at(q + mv.i, c) * mono;
            }
            break;
        }
        case Kind::CoarseGrain: {
            auto [sigma, qp] = laurent::coarse_grain_sigma(m, q, std::vector<int>(D, mv.b));
            st.sigma = std::move(sigma);
            st.q = qp;
            break;
        }
        case Kind::VarRedef: {
            if (static_cast<int>(mv.u.size()) != D) throw std::invalid_argument("redefinition matrix size mismatch");
            int det = int_det3(mv.u);
            if (det != 1 && det != -1) throw std::invalid_argument("redefinition matrix must be in GL(D, Z)");
            for (auto& f : st.sigma.e) f = f.substitute_exponents(mv.u);
            break;
        }
        case Kind::ColSwap: {
            check_col(mv.i);
            check_col(mv.j);
            for (int r = 0; r < m.rows(); ++r) std::swap(m.at(r, mv.i), m.at(r, mv.j));
            break;
        }
        case Kind::ColAdd: {
            check_col(mv.i);
            check_col(mv.j);
            for (int r = 0; r < m.rows(); ++r) m.at(r, mv.i) = m.at(r, mv.i) + mv.poly * m.at(r, mv.j);
            break;
        }
        case Kind::ColScale: {
            check_col(mv.i);
            for (int r = 0; r < m.rows(); ++r) m.at(r, mv.i) = m.at(r, mv.i) * mv.poly;
            break;
        }
    }
    return st;
}

SigmaState apply(const Script& script, SigmaState state) {
    for (const Move& mv : script.moves) state = apply_move(mv, state);
    return state;
}

PolyMatrix move_matrix(const Move& mv, int q, int p, int D) {
    switch (mv.kind) {
        case Kind::H:
        case Kind::S:
        case Kind::R:
        case Kind::Cnot:
        case Kind::Cz:
        case Kind::Translate: {
            // columns are the images of the basis vectors
            SigmaState st{PolyMatrix::identity(2 * q, p, D), q};
            st = apply_move(mv, std::move(st));
            return st.sigma;
        }
        default:
            throw std::invalid_argument("move has no symplectic matrix");
    }
}

bool move_is_symplectic(const Move& mv, int q, int p, int D) {
    PolyMatrix t = move_matrix(mv, q, p, D);
    PolyMatrix l = laurent::symplectic_form_poly(q, p, D);
    return (t.dagger() * l * t) == l;
}

std::vector<std::string> Script::to_lines() const {
    std::vector<std::string> out;
    for (const Move& m : moves) {
        std::ostringstream os;
        switch (m.kind) {
            case Kind::H: os << "H " << m.i + 1; break;
            case Kind::S: os << "S " << m.i + 1 << " " << m.a; break;
            case Kind::R: os << "R " << m.i + 1 << " " << m.a; break;
            case Kind::Cnot:
                if (m.poly.is_unit())
                    os << "CX " << m.i + 1 << " " << m.j + 1 << " " << m.poly.terms.begin()->second;
                else
                    os << "CXpoly " << m.i + 1 << " " << m.j + 1 << " " << m.poly.to_string();
                break;
            case Kind::Cz: os << "CZpoly " << m.i + 1 << " " << m.poly.to_string(); break;
            case Kind::Translate: {
                os << "T " << m.i + 1;
                for (int v : m.shift) os << " " << v;
                break;
            }
            case Kind::CoarseGrain: os << "CG " << m.b; break;
            case Kind::VarRedef: {
                os << "VAR";
                for (const auto& row : m.u)
                    for (int v : row) os << " " << v;
                break;
            }
            case Kind::ColSwap: os << "COLSWAP " << m.i + 1 << " " << m.j + 1; break;
            case Kind::ColAdd: os << "COLADD " << m.i + 1 << " " << m.j + 1 << " " << m.poly.to_string(); break;
            case Kind::ColScale: os << "COLSCALE " << m.i + 1 << " " << m.poly.to_string(); break;
        }
        out.push_back(os.str());
    }
    return out;
}

}  // namespace qcalg::lattice
