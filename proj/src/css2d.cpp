#include "qcalg/css2d.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstdio>
#include <stdexcept>

#include "qcalg/codeanalysis.hpp"

namespace qcalg::css2d {

using laurent::CodeDefinition;
using laurent::LaurentPoly;
using laurent::PolyMatrix;

bool is_css(const CodeDefinition& code) {
    for (int c = 0; c < code.sigma.cols(); ++c) {
        bool has_x = false, has_z = false;
        for (int r = 0; r < code.q; ++r) has_x = has_x || !code.sigma.at(r, c).is_zero();
        for (int r = code.q; r < 2 * code.q; ++r) has_z = has_z || !code.sigma.at(r, c).is_zero();
        if (has_x && has_z) return false;
    }
    return true;
}

CssCode CssCode::make(const CodeDefinition& code) {
    if (code.D != 2) throw std::invalid_argument("CSS classification requires D = 2");
    if (!is_css(code)) throw std::invalid_argument("stabilizer map is not CSS block-diagonal");
    return CssCode{code};
}

namespace {

void check_preconditions(const CssCode& css) {
    if (!laurent::exactness_check(css.code)) throw std::invalid_argument("exactness fails: ker epsilon != im sigma");
    if (laurent::module_kernel(css.sigma()).cols() != 0)
        throw std::invalid_argument("sigma has nonzero kernel: no injective presentation given");
}

bool annihilator_membership_only(const CodeDefinition& code, int b) {
    PolyMatrix sdag = code.sigma.dagger();
    laurent::LaurentModule image(sdag);
    int t = sdag.rows();
    int p = code.p;
    LaurentPoly xb = LaurentPoly::monomial(p, 2, {b, 0}) - LaurentPoly::constant(p, 2, 1);
    LaurentPoly yb = LaurentPoly::monomial(p, 2, {0, b}) - LaurentPoly::constant(p, 2, 1);
    for (int i = 0; i < t; ++i) {
        std::vector<LaurentPoly> e(t, LaurentPoly(p, 2));
        e[i] = LaurentPoly::constant(p, 2, 1);
        if (image.contains(e)) continue;
        std::vector<LaurentPoly> ex = e, ey = e;
        ex[i] = xb;
        ey[i] = yb;
        if (!image.contains(ex) || !image.contains(ey)) return false;
    }
    return true;
}

}  // namespace

bool annihilator_condition(const CssCode& css, int b) {
    if (b < 1) throw std::invalid_argument("annihilator scale must be positive");
    check_preconditions(css);
    return annihilator_membership_only(css.code, b);
}

long long torsion_dimension(const CssCode& css, int b_max, bool cross_check) {
    check_preconditions(css);
    int b = 0;
    for (int cand = 1; cand <= b_max; ++cand)
        if (annihilator_membership_only(css.code, cand)) {
            b = cand;
            break;
        }
    if (b == 0) throw std::runtime_error("annihilator condition not satisfied for any b <= " + std::to_string(b_max));
    CodeDefinition working = b == 1 ? css.code : laurent::coarse_grain(css.code, {b, b});
    auto dim = laurent::LaurentModule(working.sigma.dagger()).cokernel_dimension();
    if (!dim) throw std::logic_error("cokernel unexpectedly infinite under the annihilator condition");
    if (cross_check) {
        for (int L : {2, 3, 5}) {
            auto finite = laurent::instantiate_torus(css.code, {L, L});
            int k = codeanalysis::logical_qubits(finite);
            if (k != *dim)
                throw std::logic_error("torsion dimension " + std::to_string(*dim) + " disagrees with k(" +
                                       std::to_string(L) + ") = " + std::to_string(k));
        }
    }
    return *dim;
}

std::array<int, 3> torus_homology(int L) {
    if (L < 1) throw std::invalid_argument("torus size must be positive");
    int n = L * L;
    auto site = [&](int x, int y) { return ((x % L + L) % L) + L * ((y % L + L) % L); };
    gf::Matrix d1(n, 2 * n, 2), d2(2 * n, n, 2);
    for (int y = 0; y < L; ++y)
        for (int x = 0; x < L; ++x) {
            int s = site(x, y);
            // partial_1 = (x-1, y-1)
            d1.add_at(site(x + 1, y), s, 1);
            d1.add_at(s, s, -1);
            d1.add_at(site(x, y + 1), n + s, 1);
            d1.add_at(s, n + s, -1);
            // partial_2 = (y-1; -x+1)
            d2.add_at(site(x, y + 1), s, 1);
            d2.add_at(s, s, -1);
            d2.add_at(n + site(x + 1, y), s, -1);
            d2.add_at(n + s, s, 1);
        }
    int r1 = gf::rank(d1), r2 = gf::rank(d2);
    return {n - r1, 2 * n - r1 - r2, n - r2};
}

namespace {

LaurentPoly xm1(int p) { return LaurentPoly::monomial(p, 2, {1, 0}) - LaurentPoly::constant(p, 2, 1); }
LaurentPoly ym1(int p) { return LaurentPoly::monomial(p, 2, {0, 1}) - LaurentPoly::constant(p, 2, 1); }

// Working state of the extraction: the full sigma with recorded moves, plus
// retired qudits/generators belonging to already extracted blocks. Retired
// indices expand in place whenever a coarse-graining kicks in.
struct Extract {
    lattice::SigmaState st;
    lattice::Script script;
    int p;
    // 0 = active, 1 = part of an extracted toric copy, 2 = split-off trivial
    std::vector<char> retired_qudit, retired_gen;
    std::vector<ExtractedCopy> copies;
    PolyMatrix eps;

    explicit Extract(const CodeDefinition& code) : st{code.sigma, code.q}, p(code.p) {
        retired_qudit.assign(code.q, 0);
        retired_gen.assign(code.sigma.cols(), 0);
        refresh();
    }

    int q() const { return st.q; }
    int gens() const { return st.sigma.cols(); }
    bool active_qudit(int i) const { return retired_qudit[i] == 0; }
    bool active_gen(int i) const { return retired_gen[i] == 0; }

    void refresh() { eps = st.sigma.dagger() * laurent::symplectic_form_poly(st.q, p, 2); }

    void run(lattice::Script s) {
        st = lattice::apply(s, std::move(st));
        script.append(s);
        refresh();
    }
    void cnot(int i, int j, LaurentPoly m) {
        lattice::Script s;
        s.cnot(i, j, std::move(m));
        if (!s.empty()) run(std::move(s));
    }
    void translate(int i, std::vector<int> shift) {
        lattice::Script s;
        s.translate(i, std::move(shift));
        if (!s.empty()) run(std::move(s));
    }
    void all_h() {
        lattice::Script s;
        for (int i = 0; i < q(); ++i) s.h(i);
        run(std::move(s));
    }
    void eps_row_add(int u, int v, const LaurentPoly& h) {  // eps row_u += h row_v
        lattice::Script s;
        s.col_add(u, v, h.antipode());
        if (!s.empty()) run(std::move(s));
    }
    void eps_row_swap(int u, int v) {
        lattice::Script s;
        s.col_swap(u, v);
        if (!s.empty()) run(std::move(s));
    }
    void eps_row_scale(int u, const LaurentPoly& unit) {  // eps row_u *= unit
        lattice::Script s;
        s.col_scale(u, unit.antipode());
        if (!s.empty()) run(std::move(s));
    }
    void eps_xcol_add(int u, int v, const LaurentPoly& h) { cnot(u, v, -h); }
    void eps_zcol_add(int u, int v, const LaurentPoly& h) { cnot(v, u, h.antipode()); }
    void coarse(int b) {
        if (b <= 1) return;
        int beta = b * b;
        std::vector<char> rq(q() * beta, 0), rg(gens() * beta, 0);
        for (int u = 0; u < q(); ++u)
            if (retired_qudit[u])
                for (int r = 0; r < beta; ++r) rq[u * beta + r] = retired_qudit[u];
        for (int g = 0; g < gens(); ++g)
            if (retired_gen[g])
                for (int r = 0; r < beta; ++r) rg[g * beta + r] = retired_gen[g];
        for (auto& copy : copies) {
            std::vector<int> nq, ng;
            for (int u : copy.qudits)
                for (int r = 0; r < beta; ++r) nq.push_back(u * beta + r);
            for (int g : copy.generators)
                for (int r = 0; r < beta; ++r) ng.push_back(g * beta + r);
            copy.qudits = std::move(nq);
            copy.generators = std::move(ng);
        }
        retired_qudit = std::move(rq);
        retired_gen = std::move(rg);
        lattice::Script s;
        s.coarse_grain(b);
        run(std::move(s));
    }
    void var_redef(std::vector<std::vector<int>> u) {
        lattice::Script s;
        s.var_redef(std::move(u));
        run(std::move(s));
    }
};

bool degree_one(const LaurentPoly& f) {
    if (f.is_zero()) return true;
    auto lo = f.min_exponents(), hi = f.max_exponents();
    return lo[0] >= 0 && lo[1] >= 0 && hi[0] <= 1 && hi[1] <= 1;
}

// coefficients over (x-1, y-1, xy-1) for a degree-one member of the
// maximal ideal; nullopt when the entry is not of that shape
std::optional<std::array<int, 3>> ideal_coords(const LaurentPoly& f) {
    if (!degree_one(f)) return std::nullopt;
    if (f.eval_all_ones() != 0) return std::nullopt;
    return std::array<int, 3>{f.coefficient({1, 0}), f.coefficient({0, 1}), f.coefficient({1, 1})};
}

enum class PureClass { XM1, YM1, XYM1, Other };

// classification of a nonzero entry up to monomial units; unit_shift is the
// exponent that normalizes the entry window
PureClass pure_class(const LaurentPoly& f, std::vector<int>& unit_shift) {
    auto lo = f.min_exponents();
    unit_shift = {-lo[0], -lo[1]};
    LaurentPoly g = f * LaurentPoly::monomial(f.p, 2, unit_shift);
    auto co = ideal_coords(g);
    if (!co) return PureClass::Other;
    int nz = ((*co)[0] != 0) + ((*co)[1] != 0) + ((*co)[2] != 0);
    if (nz != 1) return PureClass::Other;
    if ((*co)[0] != 0) return PureClass::XM1;
    if ((*co)[1] != 0) return PureClass::YM1;
    return PureClass::XYM1;
}

// row support within one CSS block: (is_x_block, columns)
std::pair<bool, std::vector<int>> row_block_support(const PolyMatrix& eps, int row, int q) {
    std::vector<int> xs, zs;
    for (int c = 0; c < q; ++c)
        if (!eps.at(row, c).is_zero()) xs.push_back(c);
    for (int c = q; c < 2 * q; ++c)
        if (!eps.at(row, c).is_zero()) zs.push_back(c);
    if (!xs.empty() && !zs.empty()) throw std::logic_error("epsilon row crosses the CSS blocks");
    if (!xs.empty()) return {true, xs};
    return {false, zs};
}

// unit-normalize active rows and coarse-grain until every active entry has
// exponents in {0, 1}
void normalize_degree_one(Extract& w) {
    for (int round = 0; round < 10; ++round) {
        for (int r = 0; r < w.gens(); ++r) {
            if (!w.active_gen(r)) continue;
            std::vector<int> lo(2, 0);
            bool any = false;
            for (int c = 0; c < 2 * w.q(); ++c) {
                const auto& f = w.eps.at(r, c);
                if (f.is_zero()) continue;
                auto m = f.min_exponents();
                for (int v = 0; v < 2; ++v) lo[v] = any ? std::min(lo[v], m[v]) : m[v];
                any = true;
            }
            if (any && (lo[0] != 0 || lo[1] != 0))
                w.eps_row_scale(r, LaurentPoly::monomial(w.p, 2, {-lo[0], -lo[1]}));
        }
        int nmax = 1;
        for (int r = 0; r < w.gens(); ++r) {
            if (!w.active_gen(r)) continue;
            for (int c = 0; c < 2 * w.q(); ++c) {
                const auto& f = w.eps.at(r, c);
                if (f.is_zero()) continue;
                auto hi = f.max_exponents();
                nmax = std::max({nmax, hi[0], hi[1]});
            }
        }
        if (nmax <= 1) return;
        w.coarse(nmax);
    }
    throw std::logic_error("degree-one normalization did not converge");
}

// Reduced row echelon form of eps(1,1) within each CSS block through
// constant generator re-choices. Afterwards the rows vanishing at (1,1)
// are exactly the rows whose entries lie in the maximal ideal; when the
// torsion is nonzero, one of them has entries spanning m / m^2.
void constant_row_reduce(Extract& w) {
    int q = w.q();
    for (int half = 0; half < 2; ++half) {
        std::vector<int> rows;
        for (int r = 0; r < w.gens(); ++r) {
            if (!w.active_gen(r)) continue;
            auto [in_x, sup] = row_block_support(w.eps, r, q);
            if (sup.empty()) continue;
            if ((half == 0) == in_x) rows.push_back(r);
        }
        int lo = half == 0 ? 0 : q, hi = half == 0 ? q : 2 * q;
        size_t next = 0;
        for (int c = lo; c < hi && next < rows.size(); ++c) {
            int sel = -1;
            for (size_t rr = next; rr < rows.size(); ++rr)
                if (w.eps.at(rows[rr], c).eval_all_ones() != 0) {
                    sel = static_cast<int>(rr);
                    break;
                }
            if (sel < 0) continue;
            std::swap(rows[next], rows[sel]);
            int inv = gf::fp_inv(w.eps.at(rows[next], c).eval_all_ones(), w.p);
            if (inv != 1) w.eps_row_scale(rows[next], LaurentPoly::constant(w.p, 2, inv));
            for (size_t rr = 0; rr < rows.size(); ++rr) {
                if (rr == next) continue;
                int coef = w.eps.at(rows[rr], c).eval_all_ones();
                if (coef != 0) w.eps_row_add(rows[rr], rows[next], LaurentPoly::constant(w.p, 2, -coef));
            }
            ++next;
        }
    }
}

struct PivotRow {
    int row, col_a, col_b;
};

// scan for a row that already has exactly two entries x-1 and y-1 in the
// left half
std::optional<PivotRow> ready_pivot(const Extract& w) {
    int q = w.q();
    for (int row = 0; row < w.gens(); ++row) {
        if (!w.active_gen(row)) continue;
        auto [in_x, sup] = row_block_support(w.eps, row, q);
        if (!in_x || sup.size() != 2) continue;
        const auto& e0 = w.eps.at(row, sup[0]);
        const auto& e1 = w.eps.at(row, sup[1]);
        if (e0 == xm1(w.p) && e1 == ym1(w.p)) return PivotRow{row, sup[0], sup[1]};
        if (e0 == ym1(w.p) && e1 == xm1(w.p)) return PivotRow{row, sup[1], sup[0]};
    }
    return std::nullopt;
}

// Make progress towards a ready pivot row: column-echelon a maximal-ideal
// row, erase an xy-1 entry, normalize units by translations, redefine
// variables, or swap the blocks. Throws on a genuine stall.
void pivot_progress(Extract& w) {
    int q = w.q();
    if (w.p != 2) throw std::invalid_argument("toric extraction implemented for p = 2");
    for (int row = 0; row < w.gens(); ++row) {
        if (!w.active_gen(row)) continue;
        auto [in_x, support] = row_block_support(w.eps, row, q);
        if (support.empty()) continue;
        std::vector<std::vector<int>> imgs;
        bool ok = true;
        for (int c : support) {
            auto co = ideal_coords(w.eps.at(row, c));
            if (!co) {
                ok = false;
                break;
            }
            imgs.push_back({gf::fp_add((*co)[0], (*co)[2], 2), gf::fp_add((*co)[1], (*co)[2], 2)});
        }
        if (!ok || gf::row_space_rank(imgs, 2) < 2) continue;

        auto entry = [&](int c) { return w.eps.at(row, c); };
        auto col_add_in_block = [&](int dst, int src) {
            if (in_x)
                w.eps_xcol_add(dst, src, LaurentPoly::constant(2, 2, 1));
            else
                w.eps_zcol_add(dst - q, src - q, LaurentPoly::constant(2, 2, 1));
        };

        // echelon the coordinate vectors: keep at most three pivot columns
        std::vector<int> pivots;            // columns
        std::vector<std::array<int, 3>> pv;  // their coords
        for (int c : support) {
            auto co = ideal_coords(entry(c));
            if (!co) throw std::logic_error("entry left the ideal during echelon");
            std::array<int, 3> v = *co;
            for (size_t k = 0; k < pivots.size(); ++k) {
                int lead = 0;
                while (lead < 3 && pv[k][lead] == 0) ++lead;
                if (lead < 3 && v[lead] != 0) {
                    col_add_in_block(c, pivots[k]);
                    for (int t2 = 0; t2 < 3; ++t2) v[t2] = gf::fp_add(v[t2], pv[k][t2], 2);
                }
            }
            if (v != std::array<int, 3>{0, 0, 0}) {
                pivots.push_back(c);
                pv.push_back(v);
                // keep pivot list ordered by leading position
                for (size_t k = pivots.size(); k-- > 1;) {
                    auto lead_of = [](const std::array<int, 3>& a) {
                        int l = 0;
                        while (l < 3 && a[l] == 0) ++l;
                        return l;
                    };
                    if (lead_of(pv[k]) < lead_of(pv[k - 1])) {
                        std::swap(pv[k], pv[k - 1]);
                        std::swap(pivots[k], pivots[k - 1]);
                    }
                }
            }
        }
        if (pivots.size() == 3) {
            // back-substitute to coordinate unit vectors (Gauss-Jordan)
            for (int k = 2; k >= 0; --k) {
                int lead = 0;
                while (lead < 3 && pv[k][lead] == 0) ++lead;
                for (int k2 = 0; k2 < k; ++k2)
                    if (pv[k2][lead] != 0) {
                        col_add_in_block(pivots[k2], pivots[k]);
                        for (int t2 = 0; t2 < 3; ++t2) pv[k2][t2] = gf::fp_add(pv[k2][t2], pv[k][t2], 2);
                    }
            }
            // columns now carry x-1, y-1, xy-1 in leading-position order
            int ca = pivots[0], cb = pivots[1], cc = pivots[2];
            if (!(entry(ca) == xm1(2) && entry(cb) == ym1(2)))
                throw std::logic_error("Gauss-Jordan failed to isolate x-1 and y-1");
            // the CSS step: erase xy-1 with monomial column operations
            LaurentPoly x = LaurentPoly::monomial(2, 2, {1, 0});
            if (in_x) {
                w.eps_xcol_add(cc, cb, -x);
                w.eps_xcol_add(cc, ca, -LaurentPoly::constant(2, 2, 1));
            } else {
                w.eps_zcol_add(cc - q, cb - q, -x);
                w.eps_zcol_add(cc - q, ca - q, -LaurentPoly::constant(2, 2, 1));
            }
            if (!w.eps.at(row, cc).is_zero()) throw std::logic_error("xy-1 entry did not cancel");
            if (!in_x) w.all_h();
            return;
        }
        if (pivots.size() != 2) continue;

        // two independent entries: try the three pairings up to units
        for (int pairing = 0; pairing < 3; ++pairing) {
            if (pairing == 1) col_add_in_block(pivots[0], pivots[1]);
            if (pairing == 2) col_add_in_block(pivots[1], pivots[0]);
            std::vector<int> s0, s1;
            PureClass k0 = pure_class(w.eps.at(row, pivots[0]), s0);
            PureClass k1 = pure_class(w.eps.at(row, pivots[1]), s1);
            bool usable = k0 != PureClass::Other && k1 != PureClass::Other && k0 != k1;
            if (usable) {
                int qu0 = in_x ? pivots[0] : pivots[0] - q;
                int qu1 = in_x ? pivots[1] : pivots[1] - q;
                if (s0[0] != 0 || s0[1] != 0) w.translate(qu0, {-s0[0], -s0[1]});
                if (s1[0] != 0 || s1[1] != 0) w.translate(qu1, {-s1[0], -s1[1]});
                if (k0 == PureClass::XYM1 || k1 == PureClass::XYM1) {
                    if (k0 == PureClass::YM1 || k1 == PureClass::YM1)
                        w.var_redef({{1, 0}, {-1, 1}});  // xy -> x
                    else
                        w.var_redef({{1, -1}, {0, 1}});  // xy -> y
                    return;
                }
                if (!in_x) w.all_h();
                return;
            }
            if (pairing == 1) col_add_in_block(pivots[0], pivots[1]);
            if (pairing == 2) col_add_in_block(pivots[1], pivots[0]);
        }
        throw std::runtime_error("extraction stall: no usable pivot pair in a maximal-ideal row");
    }
    throw std::runtime_error("extraction stall: no maximal-ideal row available");
}

CodeDefinition sub_block(const Extract& w, const std::vector<int>& qs, const std::vector<int>& gs) {
    PolyMatrix sigma(2 * static_cast<int>(qs.size()), static_cast<int>(gs.size()), w.p, 2);
    for (size_t r = 0; r < qs.size(); ++r)
        for (size_t c = 0; c < gs.size(); ++c) {
            sigma.at(static_cast<int>(r), static_cast<int>(c)) = w.st.sigma.at(qs[r], gs[c]);
            sigma.at(static_cast<int>(r + qs.size()), static_cast<int>(c)) = w.st.sigma.at(w.q() + qs[r], gs[c]);
        }
    return CodeDefinition::make(w.p, 2, static_cast<int>(qs.size()), std::move(sigma));
}

CodeDefinition active_block(const Extract& w) {
    std::vector<int> qs, gs;
    for (int i = 0; i < w.q(); ++i)
        if (w.active_qudit(i)) qs.push_back(i);
    for (int g = 0; g < w.gens(); ++g)
        if (w.active_gen(g)) gs.push_back(g);
    return sub_block(w, qs, gs);
}

// active part plus the split-off trivial pairs: everything except the copies
CodeDefinition residual_block(const Extract& w) {
    std::vector<int> qs, gs;
    for (int i = 0; i < w.q(); ++i)
        if (w.retired_qudit[i] != 1) qs.push_back(i);
    for (int g = 0; g < w.gens(); ++g)
        if (w.retired_gen[g] != 1) gs.push_back(g);
    return sub_block(w, qs, gs);
}

long long active_torsion(const Extract& w) {
    auto dim = laurent::LaurentModule(active_block(w).sigma.dagger()).cokernel_dimension();
    if (!dim) throw std::logic_error("active block cokernel is infinite");
    return *dim;
}

void check_decoupling(const Extract& w) {
    for (int g = 0; g < w.gens(); ++g)
        for (int r = 0; r < w.q(); ++r) {
            if (w.retired_gen[g] == w.retired_qudit[r]) continue;
            if (!w.st.sigma.at(r, g).is_zero() || !w.st.sigma.at(w.q() + r, g).is_zero())
                throw std::logic_error("extracted block is not decoupled");
        }
}

// one round of the constructive extraction
void extract_one(Extract& w) {
    PivotRow pivot{-1, -1, -1};
    const bool trace = std::getenv("QCALG_TRACE") != nullptr;
    for (int attempt = 0; attempt < 200; ++attempt) {
        if (trace) {
            int act = 0;
            for (int g2 = 0; g2 < w.gens(); ++g2) act += w.active_gen(g2);
            fprintf(stderr, "[extract] attempt=%d q=%d gens=%d active=%d moves=%zu\n", attempt, w.q(), w.gens(), act,
                    w.script.moves.size());
        }
        if (w.q() > 512) throw std::runtime_error("extraction stall: coarse-graining blew up");
        normalize_degree_one(w);
        constant_row_reduce(w);
        auto ready = ready_pivot(w);
        if (ready) {
            pivot = *ready;
            break;
        }
        pivot_progress(w);
    }
    if (pivot.row < 0) throw std::runtime_error("extraction stall: pivot search did not stabilize");
    int q = w.q();
    int i = pivot.row, a = pivot.col_a, b = pivot.col_b;

    // (I) clean the unit parts of columns a and b using string operators
    std::vector<int> arows, acols;
    for (int r = 0; r < w.gens(); ++r)
        if (w.active_gen(r)) arows.push_back(r);
    for (int c = 0; c < q; ++c)
        if (w.active_qudit(c)) acols.push_back(c);
    auto solve_block_member = [&](const LaurentPoly& target_poly) {
        std::vector<LaurentPoly> target(arows.size(), LaurentPoly(w.p, 2));
        for (size_t r = 0; r < arows.size(); ++r)
            if (arows[r] == i) target[r] = target_poly;
        PolyMatrix left(static_cast<int>(arows.size()), static_cast<int>(acols.size()), w.p, 2);
        for (size_t r = 0; r < arows.size(); ++r)
            for (size_t c = 0; c < acols.size(); ++c) left.at(static_cast<int>(r), static_cast<int>(c)) = w.eps.at(arows[r], acols[c]);
        auto coeffs = laurent::LaurentModule(left).member(target);
        if (!coeffs) throw std::logic_error("annihilator condition failed to produce a string operator");
        return *coeffs;
    };
    auto px = solve_block_member(xm1(w.p));
    auto py = solve_block_member(ym1(w.p));
    std::vector<int> u(acols.size()), v(acols.size());
    size_t ia = 0, ib = 0;
    for (size_t c = 0; c < acols.size(); ++c) {
        u[c] = px[c].eval_all_ones();
        v[c] = py[c].eval_all_ones();
        if (acols[c] == a) ia = c;
        if (acols[c] == b) ib = c;
    }
    if (u[ia] != 1 || u[ib] != 0 || v[ib] != 1 || v[ia] != 0)
        throw std::logic_error("string operators do not normalize at the pivot columns");
    for (size_t c = 0; c < acols.size(); ++c) {
        if (c == ia || c == ib) continue;
        if (u[c] != 0) w.cnot(a, acols[c], LaurentPoly::constant(w.p, 2, u[c]));
    }
    for (size_t c = 0; c < acols.size(); ++c) {
        if (c == ia || c == ib) continue;
        if (v[c] != 0) w.cnot(b, acols[c], LaurentPoly::constant(w.p, 2, v[c]));
    }
    if (!(w.eps.at(i, a) == xm1(w.p) && w.eps.at(i, b) == ym1(w.p)))
        throw std::logic_error("pivot row damaged while cleaning its columns");
    for (int r : arows)
        if (r != i && (w.eps.at(r, a).eval_all_ones() != 0 || w.eps.at(r, b).eval_all_ones() != 0))
            throw std::logic_error("columns a, b still carry unit entries after (I)");

    // (IV) reduced row echelon of eps(1,1) within each CSS block
    constant_row_reduce(w);
    if (!(w.eps.at(i, a) == xm1(w.p) && w.eps.at(i, b) == ym1(w.p)))
        throw std::logic_error("pivot row damaged during echelon");

    // (V) the dual row with the (x - xy, xy - y) pattern, (III) verified
    LaurentPoly x_m_xy = LaurentPoly::monomial(w.p, 2, {1, 0}) - LaurentPoly::monomial(w.p, 2, {1, 1});
    LaurentPoly xy_m_y = LaurentPoly::monomial(w.p, 2, {1, 1}) - LaurentPoly::monomial(w.p, 2, {0, 1});
    int j = -1;
    for (int r : arows) {
        if (r == i) continue;
        const auto& ea = w.eps.at(r, q + a);
        const auto& eb = w.eps.at(r, q + b);
        if (ea.is_zero() && eb.is_zero()) continue;
        if (!(ea == x_m_xy && eb == xy_m_y)) throw std::logic_error("(III) violated in columns a+q, b+q");
        bool vanishes = true;
        for (int c = 0; c < 2 * q && vanishes; ++c) vanishes = w.eps.at(r, c).eval_all_ones() == 0;
        if (vanishes && j < 0) j = r;
    }
    if (j < 0) throw std::runtime_error("extraction stall: no dual row with the (x-xy, xy-y) pattern");

    // (VI) clear columns a+q, b+q outside row j, then clean row j itself
    for (int r : arows) {
        if (r == j || r == i) continue;
        if (w.eps.at(r, q + a).is_zero() && w.eps.at(r, q + b).is_zero()) continue;
        w.eps_row_add(r, j, -LaurentPoly::constant(w.p, 2, 1));
    }
    for (int c = q; c < 2 * q; ++c) {
        if (c == q + a || c == q + b) continue;
        const auto& f = w.eps.at(j, c);
        if (f.is_zero()) continue;
        auto co = ideal_coords(f);
        if (!co) throw std::logic_error("dual row entry is not a degree-one ideal member");
        int alpha = (*co)[0], beta = (*co)[1], gamma = (*co)[2];
        LaurentPoly h1 = -LaurentPoly::monomial(w.p, 2, {-1, 0}, beta) - LaurentPoly::constant(w.p, 2, gamma);
        LaurentPoly h2 = LaurentPoly::monomial(w.p, 2, {0, -1}, gf::fp_add(alpha, gamma, w.p));
        if (!(h1 * x_m_xy + h2 * xy_m_y == f)) throw std::logic_error("dual row decomposition failed");
        w.eps_zcol_add(c - q, a, -h1);
        w.eps_zcol_add(c - q, b, -h2);
        if (!w.eps.at(j, c).is_zero()) throw std::logic_error("dual row entry failed to cancel");
    }

    // (VII) clear columns a, b outside row i
    for (int r : arows) {
        if (r == i) continue;
        const auto& fa = w.eps.at(r, a);
        const auto& fb = w.eps.at(r, b);
        if (fa.is_zero() && fb.is_zero()) continue;
        PolyMatrix pair(2, 1, w.p, 2);
        pair.at(0, 0) = xm1(w.p);
        pair.at(1, 0) = ym1(w.p);
        auto h = laurent::module_member({fa, fb}, pair);
        if (!h) throw std::logic_error("(VII) violated: column pair is not a multiple of (x-1, y-1)");
        w.eps_row_add(r, i, -(*h)[0]);
        if (!w.eps.at(r, a).is_zero() || !w.eps.at(r, b).is_zero()) throw std::logic_error("(VII) cleanup failed");
    }

    // full decoupling of the distinguished block
    for (int r : arows) {
        if (r != i && (!w.eps.at(r, a).is_zero() || !w.eps.at(r, b).is_zero()))
            throw std::logic_error("columns a, b not decoupled");
        if (r != j && (!w.eps.at(r, q + a).is_zero() || !w.eps.at(r, q + b).is_zero()))
            throw std::logic_error("columns a+q, b+q not decoupled");
    }
    for (int c = 0; c < 2 * q; ++c) {
        if (c != a && c != b && !w.eps.at(i, c).is_zero()) throw std::logic_error("pivot row not decoupled");
        if (c != q + a && c != q + b && !w.eps.at(j, c).is_zero()) throw std::logic_error("dual row not decoupled");
    }

    w.retired_qudit[a] = 1;
    w.retired_qudit[b] = 1;
    w.retired_gen[i] = 1;
    w.retired_gen[j] = 1;
    check_decoupling(w);
    ExtractedCopy copy;
    copy.qudits = {a, b};
    copy.generators = {i, j};
    w.copies.push_back(std::move(copy));
}

}  // namespace

TwoDReport classify_2d(const CssCode& css, int b_max) {
    check_preconditions(css);
    TwoDReport report;
    int b = 0;
    for (int cand = 1; cand <= b_max; ++cand)
        if (annihilator_membership_only(css.code, cand)) {
            b = cand;
            break;
        }
    if (b == 0) throw std::runtime_error("annihilator condition not satisfied for any b <= " + std::to_string(b_max));
    report.b = b;
    report.torsion_dim = torsion_dimension(css, b_max);
    if (report.torsion_dim % 2 != 0) throw std::logic_error("torsion dimension is odd");
    if (report.torsion_dim > 0 && css.p() != 2)
        throw std::invalid_argument("toric extraction implemented for p = 2");

    Extract w(css.code);
    if (b > 1) w.coarse(b);
    long long remaining = report.torsion_dim;
    while (remaining > 0) {
        extract_one(w);
        long long now = active_torsion(w);
        if (now != remaining - 2)
            throw std::logic_error("extraction changed the torsion by " + std::to_string(remaining - now) +
                                   " instead of 2");
        remaining = now;
        ++report.toric_copies;
    }
    report.copies = w.copies;
    report.final_sigma = w.st.sigma;
    report.final_q = w.q();
    report.witness = w.script;
    auto residual = residual_block(w);
    report.residual_sigma = residual.sigma;
    report.residual_q = residual.q;
    if (report.toric_copies * 2 != report.torsion_dim) throw std::logic_error("copy count disagrees with torsion");
    return report;
}

}  // namespace qcalg::css2d
