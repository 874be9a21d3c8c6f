#include "qcalg/classify1d.hpp"

#include <numeric>
#include <stdexcept>

namespace qcalg::classify1d {

using laurent::CodeDefinition;
using laurent::LaurentPoly;
using laurent::PolyMatrix;
using smith::UPoly;

namespace {

int lau_size(const LaurentPoly& f) {
    if (f.is_zero()) throw std::logic_error("size of zero polynomial");
    return f.max_exponents()[0] - f.min_exponents()[0];
}

// e = quo * f + rem with size(rem) < size(f)
std::pair<LaurentPoly, LaurentPoly> lau_divmod(const LaurentPoly& e, const LaurentPoly& f) {
    int p = e.p;
    int me = e.min_exponents()[0], mf = f.min_exponents()[0];
    auto [q, r] = smith::divmod(UPoly::from_laurent(e), UPoly::from_laurent(f));
    LaurentPoly quo = q.to_laurent() * LaurentPoly::monomial(p, 1, {me - mf});
    LaurentPoly rem = r.to_laurent() * LaurentPoly::monomial(p, 1, {me});
    return {quo, rem};
}

// recorded state: sigma plus accumulated script
struct Work {
    lattice::SigmaState st;
    lattice::Script script;
    int p, D;

    explicit Work(const CodeDefinition& code) : st{code.sigma, code.q}, p(code.p), D(code.D) {}

    PolyMatrix& m() { return st.sigma; }
    int q() const { return st.q; }
    int cols() const { return st.sigma.cols(); }

    void run(lattice::Script one) {
        st = lattice::apply(one, std::move(st));
        script.append(one);
    }
    void h(int i) {
        lattice::Script s;
        s.h(i);
        run(std::move(s));
    }
    void cnot(int i, int j, LaurentPoly mp) {
        lattice::Script s;
        s.cnot(i, j, std::move(mp));
        if (!s.empty()) run(std::move(s));
    }
    void cz(int i, LaurentPoly f) {
        lattice::Script s;
        s.cz(i, std::move(f));
        if (!s.empty()) run(std::move(s));
    }
    void qswap(int i, int j) {
        if (i == j) return;
        lattice::Script s;
        s.qswap(i, j, p, D);
        run(std::move(s));
    }
    void col_swap(int a, int b) {
        if (a == b) return;
        lattice::Script s;
        s.col_swap(a, b);
        run(std::move(s));
    }
    void col_add(int dst, int src, LaurentPoly mp) {
        lattice::Script s;
        s.col_add(dst, src, std::move(mp));
        if (!s.empty()) run(std::move(s));
    }
    void col_scale(int c, LaurentPoly unit) {
        lattice::Script s;
        s.col_scale(c, std::move(unit));
        if (!s.empty()) run(std::move(s));
    }
    void coarse(int b) {
        if (b == 1) return;
        lattice::Script s;
        s.coarse_grain(b);
        run(std::move(s));
    }
};

// unit monomial u with u * f monic and of valuation zero
LaurentPoly normalizing_unit(const LaurentPoly& f) {
    int p = f.p;
    int lo = f.min_exponents()[0];
    UPoly shifted = UPoly::from_laurent(f);
    int inv = gf::fp_inv(shifted.leading(), p);
    return LaurentPoly::monomial(p, 1, {-lo}, inv);
}

// CZ coefficient that cancels both extreme terms of g against f
// (requires size(f) <= size(g) and the isotropy relation on (f, g))
LaurentPoly degree_reduction_coefficient(const LaurentPoly& f, const LaurentPoly& g) {
    int p = f.p;
    int a = f.min_exponents()[0], b = f.max_exponents()[0];
    int c = g.min_exponents()[0], d = g.max_exponents()[0];
    int alpha = f.coefficient({a});
    int gamma = g.coefficient({c});
    int ratio = gf::fp_mul(gamma, gf::fp_inv(alpha, p), p);
    LaurentPoly h(p, 1);
    if (c - a == d - b) {
        if (c != a) throw std::logic_error("degree reduction: degenerate windows misaligned");
        h.add_term({0}, ratio);
    } else {
        h.add_term({c - a}, ratio);
        h.add_term({d - b}, ratio);
    }
    if (!(h == h.antipode())) throw std::logic_error("degree reduction coefficient not symmetric");
    return h;
}

bool establish_pivot(Work& w, int k) {
    int q = w.q(), t = w.cols();
    int guard = 0;
    while (true) {
        if (++guard > 20000) throw std::logic_error("diagonalize_1d stalled");
        // minimal-size nonzero entry in the active region
        int pr = -1, pc = -1, best = 0;
        auto consider = [&](int r, int c) {
            const LaurentPoly& e = w.m().at(r, c);
            if (e.is_zero()) return;
            int s = lau_size(e);
            if (pr < 0 || s < best) {
                best = s;
                pr = r;
                pc = c;
            }
        };
        for (int r = k; r < q; ++r)
            for (int c = k; c < t; ++c) consider(r, c);
        for (int r = q + k; r < 2 * q; ++r)
            for (int c = k; c < t; ++c) consider(r, c);
        if (pr < 0) return false;
        if (pr >= q) {
            w.h(pr - q);
            continue;
        }
        w.qswap(k, pr);
        w.col_swap(k, pc);
        LaurentPoly f = w.m().at(k, k);

        bool dirty = false;
        for (int r = k + 1; r < q; ++r) {
            if (w.m().at(r, k).is_zero()) continue;
            auto [quo, rem] = lau_divmod(w.m().at(r, k), f);
            w.cnot(k, r, -quo);
            if (!rem.is_zero()) dirty = true;
        }
        for (int c = k + 1; c < t; ++c) {
            if (w.m().at(k, c).is_zero()) continue;
            auto [quo, rem] = lau_divmod(w.m().at(k, c), f);
            w.col_add(c, k, -quo);
            if (!rem.is_zero()) dirty = true;
        }
        for (int r = k + 1; r < q; ++r)
            if (!w.m().at(q + r, k).is_zero()) {
                w.h(r);
                dirty = true;
            }
        if (dirty) continue;

        // column k is now (f, 0.., g, 0..): play the degree-reduction game
        bool used_h = false;
        int game_guard = 0;
        while (!w.m().at(q + k, k).is_zero()) {
            if (++game_guard > 20000) throw std::logic_error("degree reduction stalled");
            f = w.m().at(k, k);
            LaurentPoly g = w.m().at(q + k, k);
            if (f.is_zero() || lau_size(f) > lau_size(g)) {
                w.h(k);
                used_h = true;
                continue;
            }
            w.cz(k, -degree_reduction_coefficient(f, g));
        }
        if (used_h) continue;  // the swap may have dirtied row k beyond column k
        f = w.m().at(k, k);
        if (f.is_zero()) continue;

        // the bottom row of the pivot qudit must vanish by isotropy
        for (int c = k; c < t; ++c)
            if (!w.m().at(q + k, c).is_zero()) throw std::logic_error("isotropy residue in the z row of a pivot");

        // divisibility sweep over the remaining block
        int oc = -1;
        for (int c = k + 1; c < t && oc < 0; ++c) {
            for (int r = k + 1; r < q && oc < 0; ++r)
                if (!w.m().at(r, c).is_zero() && !smith::divides(UPoly::from_laurent(f), UPoly::from_laurent(w.m().at(r, c))))
                    oc = c;
            for (int r = q + k + 1; r < 2 * q && oc < 0; ++r)
                if (!w.m().at(r, c).is_zero() && !smith::divides(UPoly::from_laurent(f), UPoly::from_laurent(w.m().at(r, c))))
                    oc = c;
        }
        if (oc >= 0) {
            w.col_add(k, oc, LaurentPoly::constant(w.p, 1, 1));
            continue;
        }
        w.col_scale(k, normalizing_unit(f));
        return true;
    }
}

}  // namespace

std::pair<lattice::Script, std::vector<LaurentPoly>> diagonalize_1d(const CodeDefinition& code) {
    if (code.D != 1) throw std::invalid_argument("diagonalize_1d requires D = 1");
    Work w(code);
    int q = code.q, t = code.sigma.cols();
    int pivots = std::min(q, t);
    for (int k = 0; k < pivots; ++k)
        if (!establish_pivot(w, k)) break;
    std::vector<LaurentPoly> diag;
    for (int k = 0; k < q; ++k) diag.push_back(k < t ? w.m().at(k, k) : LaurentPoly(code.p, 1));
    // the matrix must be exactly [diag; 0]
    for (int r = 0; r < 2 * q; ++r)
        for (int c = 0; c < t; ++c)
            if (!(r == c && r < q) && !w.m().at(r, c).is_zero())
                throw std::logic_error("diagonalize_1d: residue outside the diagonal");
    return {std::move(w.script), std::move(diag)};
}

std::optional<int> cyclotomic_multiple(const UPoly& f, int n_max) {
    if (f.is_zero() || f.coeff(0) == 0) throw std::invalid_argument("cyclotomic_multiple requires f(0) != 0");
    if (f.degree() == 0) return 1;
    // strictly coarser than the entry degree, so every non-unit entry leaves
    // room for at least one unit divisor in its companion block
    int p = f.p;
    UPoly r = UPoly::constant(p, 1);
    for (int n = 1; n <= n_max; ++n) {
        r = smith::divmod(r * UPoly::monomial(p, 1, 1), f).second;  // x^n mod f
        if (n > f.degree() && r == UPoly::constant(p, 1)) return n;
    }
    return std::nullopt;
}

namespace {

// Euclidean elimination with recorded moves on a b x b block of the X part;
// the Z block of these qudits is zero so CNOT compensation acts trivially.
void block_snf_moves(Work& w, int base, int col_base, int b) {
    int guard = 0;
    for (int t = 0; t < b; ++t) {
        while (true) {
            if (++guard > 40000) throw std::logic_error("block SNF stalled");
            int pr = -1, pc = -1, best = 0;
            for (int r = t; r < b; ++r)
                for (int c = t; c < b; ++c) {
                    const LaurentPoly& e = w.m().at(base + r, col_base + c);
                    if (e.is_zero()) continue;
                    int s = lau_size(e);
                    if (pr < 0 || s < best) {
                        best = s;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) return;  // should not happen for full-rank companion blocks
            w.qswap(base + t, base + pr);
            w.col_swap(col_base + t, col_base + pc);
            LaurentPoly f = w.m().at(base + t, col_base + t);
            bool dirty = false;
            for (int r = t + 1; r < b; ++r) {
                if (w.m().at(base + r, col_base + t).is_zero()) continue;
                auto [quo, rem] = lau_divmod(w.m().at(base + r, col_base + t), f);
                w.cnot(base + t, base + r, -quo);
                if (!rem.is_zero()) dirty = true;
            }
            for (int c = t + 1; c < b; ++c) {
                if (w.m().at(base + t, col_base + c).is_zero()) continue;
                auto [quo, rem] = lau_divmod(w.m().at(base + t, col_base + c), f);
                w.col_add(col_base + c, col_base + t, -quo);
                if (!rem.is_zero()) dirty = true;
            }
            if (dirty) continue;
            int oc = -1;
            for (int c = t + 1; c < b && oc < 0; ++c)
                for (int r = t + 1; r < b && oc < 0; ++r)
                    if (!w.m().at(base + r, col_base + c).is_zero() &&
                        !smith::divides(UPoly::from_laurent(f), UPoly::from_laurent(w.m().at(base + r, col_base + c))))
                        oc = c;
            if (oc >= 0) {
                w.col_add(col_base + t, col_base + oc, LaurentPoly::constant(w.p, 1, 1));
                continue;
            }
            w.col_scale(col_base + t, normalizing_unit(f));
            break;
        }
    }
}

}  // namespace

OneDReport classify_1d(const CodeDefinition& code, int n_max) {
    if (code.D != 1) throw std::invalid_argument("classify_1d requires D = 1");
    OneDReport report;
    auto [script, diag] = diagonalize_1d(code);
    report.diagonal = diag;
    report.witness = script;

    // pick the common coarse factor from the cyclotomic multiples
    long long b = 1;
    for (const auto& d : diag) {
        if (d.is_zero()) {
            report.conclusive = false;
            report.failure = "diagonal entry is zero: the code leaves qudits unconstrained";
            return report;
        }
        UPoly f = UPoly::from_laurent(d);
        if (f.degree() == 0) continue;
        auto n = cyclotomic_multiple(f, n_max);
        if (!n) {
            report.conclusive = false;
            report.failure = "no n <= " + std::to_string(n_max) + " with " + d.to_string() + " dividing x^n - 1";
            return report;
        }
        b = std::lcm(b, static_cast<long long>(*n));
        if (b > n_max) {
            report.conclusive = false;
            report.failure = "common coarse factor exceeds the bound " + std::to_string(n_max);
            return report;
        }
    }
    report.b = static_cast<int>(b);

    // independent divisor count per entry via the companion expansion
    int p = code.p;
    auto xm1 = (UPoly::monomial(p, 1, 1) - UPoly::constant(p, 1)).monic();
    for (const auto& d : diag) {
        PolyMatrix cell(1, 1, p, 1);
        cell.at(0, 0) = d;
        PolyMatrix comp = laurent::coarse_grain_matrix(cell, {report.b});
        smith::PolyMat pm(report.b, std::vector<UPoly>(report.b, UPoly(p)));
        for (int r = 0; r < report.b; ++r)
            for (int c = 0; c < report.b; ++c)
                if (!comp.at(r, c).is_zero()) pm[r][c] = UPoly::from_polynomial(comp.at(r, c));
        auto snf = smith::smith_normal_form(pm);
        int ising = 0, trivial = 0;
        for (const auto& dv : snf.divisors) {
            if (dv.is_unit())
                ++trivial;
            else if (dv == xm1)
                ++ising;
            else
                throw std::logic_error("companion divisor is neither a unit nor x - 1");
        }
        UPoly f = UPoly::from_laurent(d);
        if (ising != f.degree()) throw std::logic_error("Ising count disagrees with the entry degree");
        report.ising_copies += ising;
        report.trivial_qudits += trivial;
    }

    // extend the witness: coarse-grain, then eliminate each companion block
    Work w(code);
    w.run(script);
    {
        lattice::Script cg;
        cg.coarse_grain(report.b);
        if (!cg.empty()) w.run(cg);
    }
    int q = code.q;
    for (int i = 0; i < std::min(q, code.sigma.cols()); ++i) block_snf_moves(w, i * report.b, i * report.b, report.b);

    report.witness = w.script;
    report.normal_form = w.m();

    // cross-check the normal form against the reported counts
    int qb = q * report.b;
    int seen_ising = 0, seen_trivial = 0;
    for (int r = 0; r < w.m().rows(); ++r)
        for (int c = 0; c < w.m().cols(); ++c) {
            const LaurentPoly& e = w.m().at(r, c);
            if (e.is_zero()) continue;
            if (r >= qb || r != c) throw std::logic_error("classified normal form is not diagonal");
            UPoly u = UPoly::from_laurent(e);
            if (u.is_unit())
                ++seen_trivial;
            else if (u.monic() == xm1)
                ++seen_ising;
            else
                throw std::logic_error("unexpected entry in classified normal form");
        }
    if (seen_ising != report.ising_copies || seen_trivial != report.trivial_qudits)
        throw std::logic_error("normal form disagrees with divisor counting");
    return report;
}

}  // namespace qcalg::classify1d
