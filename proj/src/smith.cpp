#include "qcalg/smith.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qcalg::smith {

using gf::fp_inv;
using gf::fp_mul;
using gf::fp_normalize;

UPoly UPoly::constant(int p, long long v) {
    UPoly f(p);
    int r = fp_normalize(v, p);
    if (r != 0) f.c = {r};
    return f;
}

UPoly UPoly::monomial(int p, int deg, long long coef) {
    UPoly f(p);
    int r = fp_normalize(coef, p);
    if (r != 0) {
        f.c.assign(deg + 1, 0);
        f.c[deg] = r;
    }
    return f;
}

int UPoly::leading() const {
    if (is_zero()) throw std::logic_error("leading coefficient of zero polynomial");
    return c.back();
}

void UPoly::trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

UPoly UPoly::operator+(const UPoly& o) const {
    if (p != o.p) throw std::invalid_argument("polynomial field mismatch");
    UPoly out(p);
    out.c.assign(std::max(c.size(), o.c.size()), 0);
    for (size_t i = 0; i < out.c.size(); ++i) out.c[i] = fp_normalize(coeff(static_cast<int>(i)) + o.coeff(static_cast<int>(i)), p);
    out.trim();
    return out;
}

UPoly UPoly::operator-(const UPoly& o) const { return *this + o.scaled(-1); }

UPoly UPoly::operator*(const UPoly& o) const {
    if (p != o.p) throw std::invalid_argument("polynomial field mismatch");
    if (is_zero() || o.is_zero()) return UPoly(p);
    UPoly out(p);
    out.c.assign(c.size() + o.c.size() - 1, 0);
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j)
            out.c[i + j] = fp_normalize(out.c[i + j] + static_cast<long long>(c[i]) * o.c[j], p);
    out.trim();
    return out;
}

UPoly UPoly::scaled(long long v) const {
    UPoly out(p);
    out.c = c;
    for (auto& x : out.c) x = fp_normalize(static_cast<long long>(x) * v, p);
    out.trim();
    return out;
}

UPoly UPoly::monic() const {
    if (is_zero()) return *this;
    return scaled(fp_inv(leading(), p));
}

std::string UPoly::to_string(const std::string& var) const { return to_laurent().to_string(); }

UPoly UPoly::from_laurent(const laurent::LaurentPoly& f) {
    if (f.D != 1) throw std::invalid_argument("from_laurent requires a univariate polynomial");
    UPoly out(f.p);
    if (f.is_zero()) return out;
    int lo = f.min_exponents()[0];
    int hi = f.max_exponents()[0];
    out.c.assign(hi - lo + 1, 0);
    for (const auto& [e, coef] : f.terms) out.c[e[0] - lo] = coef;
    return out;
}

UPoly UPoly::from_polynomial(const laurent::LaurentPoly& f) {
    if (f.D != 1) throw std::invalid_argument("from_polynomial requires a univariate polynomial");
    UPoly out(f.p);
    if (f.is_zero()) return out;
    if (f.min_exponents()[0] < 0) throw std::invalid_argument("from_polynomial: negative exponent");
    out.c.assign(f.max_exponents()[0] + 1, 0);
    for (const auto& [e, coef] : f.terms) out.c[e[0]] = coef;
    return out;
}

laurent::LaurentPoly UPoly::to_laurent() const {
    laurent::LaurentPoly out(p, 1);
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i]) out.add_term({static_cast<int>(i)}, c[i]);
    return out;
}

std::pair<UPoly, UPoly> divmod(const UPoly& a, const UPoly& b) {
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    int p = a.p;
    UPoly r = a, q(p);
    q.c.assign(std::max(0, a.degree() - b.degree() + 1), 0);
    int inv_lead = fp_inv(b.leading(), p);
    while (!r.is_zero() && r.degree() >= b.degree()) {
        int shift = r.degree() - b.degree();
        int coef = fp_mul(r.leading(), inv_lead, p);
        q.c[shift] = coef;
        for (int i = 0; i <= b.degree(); ++i)
            r.c[i + shift] = fp_normalize(r.c[i + shift] - static_cast<long long>(coef) * b.c[i], p);
        r.trim();
    }
    q.trim();
    return {q, r};
}

UPoly gcd(UPoly a, UPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

bool divides(const UPoly& a, const UPoly& b) {
    if (a.is_zero()) return b.is_zero();
    return divmod(b, a).second.is_zero();
}

// ---- Euclidean-domain Smith normal form, shared by both instantiations ----

namespace {

struct IntOps {
    using Elem = long long;
    static Elem zero() { return 0; }
    static Elem one() { return 1; }
    static bool is_zero(Elem e) { return e == 0; }
    static Elem neg(Elem e) { return -e; }
    static Elem add(Elem a, Elem b) { return a + b; }
    static Elem sub(Elem a, Elem b) { return a - b; }
    static Elem mul(Elem a, Elem b) { return a * b; }
    static std::pair<Elem, Elem> divmod_(Elem a, Elem b) {
        Elem q = a / b, r = a % b;
        return {q, r};
    }
    static long long size(Elem e) { return e < 0 ? -e : e; }
    // e = unit * normalized with normalized canonical (positive)
    static std::pair<Elem, Elem> unit_normalize(Elem e) { return e < 0 ? std::make_pair(Elem(-1), -e) : std::make_pair(Elem(1), e); }
    static Elem unit_inverse(Elem u) { return u; }  // +-1
    static bool divides_(Elem a, Elem b) { return a != 0 && b % a == 0; }
};

struct PolyOps {
    using Elem = UPoly;
    int p;
    Elem zero() const { return UPoly(p); }
    Elem one() const { return UPoly::constant(p, 1); }
    static bool is_zero(const Elem& e) { return e.is_zero(); }
    static Elem neg(const Elem& e) { return e.scaled(-1); }
    static Elem add(const Elem& a, const Elem& b) { return a + b; }
    static Elem sub(const Elem& a, const Elem& b) { return a - b; }
    static Elem mul(const Elem& a, const Elem& b) { return a * b; }
    static std::pair<Elem, Elem> divmod_(const Elem& a, const Elem& b) { return divmod(a, b); }
    static long long size(const Elem& e) { return e.degree(); }
    std::pair<Elem, Elem> unit_normalize(const Elem& e) const {
        if (e.is_zero()) return {one(), e};
        int lead = e.leading();
        return {UPoly::constant(p, lead), e.monic()};
    }
    Elem unit_inverse(const Elem& u) const { return UPoly::constant(p, fp_inv(u.coeff(0), p)); }
    static bool divides_(const Elem& a, const Elem& b) { return divides(a, b); }
};

template <class Ops>
struct SnfWork {
    using Elem = typename Ops::Elem;
    Ops ops;
    int rows, cols;
    std::vector<std::vector<Elem>> m, a, b;

    SnfWork(Ops o, const std::vector<std::vector<Elem>>& input) : ops(o), m(input) {
        rows = static_cast<int>(input.size());
        cols = rows ? static_cast<int>(input[0].size()) : 0;
        for (const auto& row : input)
            if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("ragged matrix");
        a.assign(rows, std::vector<Elem>(rows, ops.zero()));
        b.assign(cols, std::vector<Elem>(cols, ops.zero()));
        for (int i = 0; i < rows; ++i) a[i][i] = ops.one();
        for (int i = 0; i < cols; ++i) b[i][i] = ops.one();
    }

    void row_op(int dst, int src, const Elem& coef) {  // row dst += coef * row src
        for (int c = 0; c < cols; ++c) m[dst][c] = ops.add(m[dst][c], ops.mul(coef, m[src][c]));
        for (int c = 0; c < rows; ++c) a[dst][c] = ops.add(a[dst][c], ops.mul(coef, a[src][c]));
    }
    void col_op(int dst, int src, const Elem& coef) {
        for (int r = 0; r < rows; ++r) m[r][dst] = ops.add(m[r][dst], ops.mul(coef, m[r][src]));
        for (int r = 0; r < cols; ++r) b[r][dst] = ops.add(b[r][dst], ops.mul(coef, b[r][src]));
    }
    void row_swap(int r1, int r2) {
        if (r1 == r2) return;
        std::swap(m[r1], m[r2]);
        std::swap(a[r1], a[r2]);
    }
    void col_swap(int c1, int c2) {
        if (c1 == c2) return;
        for (int r = 0; r < rows; ++r) std::swap(m[r][c1], m[r][c2]);
        for (int r = 0; r < cols; ++r) std::swap(b[r][c1], b[r][c2]);
    }
    void row_scale(int r, const Elem& u) {
        for (int c = 0; c < cols; ++c) m[r][c] = ops.mul(u, m[r][c]);
        for (int c = 0; c < rows; ++c) a[r][c] = ops.mul(u, a[r][c]);
    }

    void run() {
        int t = 0;
        int limit = std::min(rows, cols);
        while (t < limit) {
            // pivot: minimal size, topmost-leftmost tie-break
            int pr = -1, pc = -1;
            long long best = 0;
            for (int r = t; r < rows; ++r)
                for (int c = t; c < cols; ++c) {
                    if (Ops::is_zero(m[r][c])) continue;
                    long long s = Ops::size(m[r][c]);
                    if (pr < 0 || s < best) {
                        best = s;
                        pr = r;
                        pc = c;
                    }
                }
            if (pr < 0) break;
            row_swap(t, pr);
            col_swap(t, pc);
            bool clean = true;
            for (int r = t + 1; r < rows; ++r) {
                if (Ops::is_zero(m[r][t])) continue;
                auto [q, rem] = Ops::divmod_(m[r][t], m[t][t]);
                row_op(r, t, ops.neg(q));
                if (!Ops::is_zero(rem)) clean = false;
            }
            for (int c = t + 1; c < cols; ++c) {
                if (Ops::is_zero(m[t][c])) continue;
                auto [q, rem] = Ops::divmod_(m[t][c], m[t][t]);
                col_op(c, t, ops.neg(q));
                if (!Ops::is_zero(rem)) clean = false;
            }
            if (!clean) continue;  // smaller remainders exist; re-pivot
            // divisibility sweep over the untouched block
            bool fixed = false;
            for (int r = t + 1; r < rows && !fixed; ++r)
                for (int c = t + 1; c < cols && !fixed; ++c)
                    if (!Ops::is_zero(m[r][c]) && !Ops::divides_(m[t][t], m[r][c])) {
                        row_op(t, r, ops.one());
                        fixed = true;
                    }
            if (fixed) continue;
            ++t;
        }
        // normalize units on the diagonal
        for (int i = 0; i < limit; ++i) {
            if (Ops::is_zero(m[i][i])) continue;
            auto [u, nrm] = ops.unit_normalize(m[i][i]);
            row_scale(i, ops.unit_inverse(u));
        }
    }
};

template <class Ops>
void verify_snf(const SnfWork<Ops>& w, const std::vector<std::vector<typename Ops::Elem>>& input) {
    using Elem = typename Ops::Elem;
    // a * input * b == m, with m diagonal and the chain d_i | d_{i+1}
    std::vector<std::vector<Elem>> mb(w.rows, std::vector<Elem>(w.cols, w.ops.zero()));
    for (int r = 0; r < w.rows; ++r)
        for (int j = 0; j < w.cols; ++j) {
            if (Ops::is_zero(input[r][j])) continue;
            for (int c = 0; c < w.cols; ++c) mb[r][c] = w.ops.add(mb[r][c], w.ops.mul(input[r][j], w.b[j][c]));
        }
    for (int r = 0; r < w.rows; ++r)
        for (int c = 0; c < w.cols; ++c) {
            Elem acc = w.ops.zero();
            for (int i = 0; i < w.rows; ++i) {
                if (Ops::is_zero(w.a[r][i])) continue;
                acc = w.ops.add(acc, w.ops.mul(w.a[r][i], mb[i][c]));
            }
            if (!(acc == w.m[r][c])) throw std::logic_error("smith: transform product mismatch");
            if (r != c && !Ops::is_zero(w.m[r][c])) throw std::logic_error("smith: off-diagonal residue");
        }
    for (int i = 0; i + 1 < std::min(w.rows, w.cols); ++i) {
        if (Ops::is_zero(w.m[i][i])) {
            if (!Ops::is_zero(w.m[i + 1][i + 1])) throw std::logic_error("smith: zero before nonzero divisor");
        } else if (!Ops::is_zero(w.m[i + 1][i + 1]) && !Ops::divides_(w.m[i][i], w.m[i + 1][i + 1]))
            throw std::logic_error("smith: divisibility chain violated");
    }
}

}  // namespace

IntSnf smith_normal_form(const IntMat& m) {
    SnfWork<IntOps> w(IntOps{}, m);
    w.run();
    verify_snf(w, m);
    IntSnf out;
    out.a = w.a;
    out.b = w.b;
    for (int i = 0; i < std::min(w.rows, w.cols); ++i)
        if (w.m[i][i] != 0) out.divisors.push_back(w.m[i][i]);
    return out;
}

PolySnf smith_normal_form(const PolyMat& m) {
    int p = 2;
    for (const auto& row : m)
        for (const auto& e : row) p = e.p;
    SnfWork<PolyOps> w(PolyOps{p}, m);
    w.run();
    verify_snf(w, m);
    PolySnf out;
    out.a = w.a;
    out.b = w.b;
    for (int i = 0; i < std::min(w.rows, w.cols); ++i)
        if (!w.m[i][i].is_zero()) out.divisors.push_back(w.m[i][i]);
    return out;
}

namespace {

template <class Elem, class Det>
std::vector<Elem> minors_of_size(const std::vector<std::vector<Elem>>& m, int s, Det det) {
    int rows = static_cast<int>(m.size());
    int cols = rows ? static_cast<int>(m[0].size()) : 0;
    std::vector<Elem> out;
    std::vector<int> rsel(s), csel(s);
    for (int i = 0; i < s; ++i) rsel[i] = i;
    auto next = [](std::vector<int>& sel, int n) {
        int s2 = static_cast<int>(sel.size());
        int j = s2 - 1;
        while (j >= 0 && sel[j] == n - s2 + j) --j;
        if (j < 0) return false;
        ++sel[j];
        for (int i = j + 1; i < s2; ++i) sel[i] = sel[i - 1] + 1;
        return true;
    };
    while (true) {
        for (int i = 0; i < s; ++i) csel[i] = i;
        while (true) {
            std::vector<std::vector<Elem>> sub(s, std::vector<Elem>(s));
            for (int i = 0; i < s; ++i)
                for (int j = 0; j < s; ++j) sub[i][j] = m[rsel[i]][csel[j]];
            out.push_back(det(sub));
            if (!next(csel, cols)) break;
        }
        if (!next(rsel, rows)) break;
    }
    return out;
}

}  // namespace

long long int_det(const IntMat& m) {
    int n = static_cast<int>(m.size());
    if (n == 0) return 1;
    if (n == 1) return m[0][0];
    long long acc = 0;
    for (int c = 0; c < n; ++c) {
        if (m[0][c] == 0) continue;
        IntMat sub(n - 1, std::vector<long long>(n - 1));
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c2 = 0; c2 < n; ++c2)
                if (c2 != c) sub[r - 1][cc++] = m[r][c2];
        }
        long long term = m[0][c] * int_det(sub);
        acc += (c % 2 == 0) ? term : -term;
    }
    return acc;
}

UPoly poly_det(const PolyMat& m) {
    int n = static_cast<int>(m.size());
    int p = 2;
    for (const auto& row : m)
        for (const auto& e : row) p = e.p;
    if (n == 0) return UPoly::constant(p, 1);
    if (n == 1) return m[0][0];
    UPoly acc(p);
    for (int c = 0; c < n; ++c) {
        if (m[0][c].is_zero()) continue;
        PolyMat sub(n - 1, std::vector<UPoly>(n - 1, UPoly(p)));
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c2 = 0; c2 < n; ++c2)
                if (c2 != c) sub[r - 1][cc++] = m[r][c2];
        }
        UPoly term = m[0][c] * poly_det(sub);
        acc = (c % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

std::vector<long long> determinantal_ideals(const IntMat& m, int s_max) {
    std::vector<long long> out;
    for (int s = 1; s <= s_max; ++s) {
        auto minors = minors_of_size<long long>(m, s, int_det);
        long long g = 0;
        for (long long v : minors) g = std::gcd(g, v);
        out.push_back(g);
    }
    return out;
}

std::vector<UPoly> determinantal_ideals(const PolyMat& m, int s_max) {
    int p = 2;
    for (const auto& row : m)
        for (const auto& e : row) p = e.p;
    std::vector<UPoly> out;
    for (int s = 1; s <= s_max; ++s) {
        auto minors = minors_of_size<UPoly>(m, s, poly_det);
        UPoly g(p);
        for (const auto& v : minors) g = gcd(g, v);
        out.push_back(g);
    }
    return out;
}

AbelianDecomposition abelian_group_decomposition(const IntMat& m) {
    AbelianDecomposition out;
    int rows = static_cast<int>(m.size());
    auto snf = smith_normal_form(m);
    for (long long d : snf.divisors)
        if (d > 1) out.torsion.push_back(d);
    out.free_rank = rows - static_cast<int>(snf.divisors.size());
    return out;
}

}  // namespace qcalg::smith
