#include "qcalg/laurent.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "qcalg/groebner.hpp"

namespace qcalg::laurent {

using gf::fp_add;
using gf::fp_mul;
using gf::fp_normalize;

LaurentPoly LaurentPoly::constant(int p, int D, long long c) {
    LaurentPoly f(p, D);
    f.add_term(std::vector<int>(D, 0), c);
    return f;
}

LaurentPoly LaurentPoly::monomial(int p, int D, const std::vector<int>& exps, long long c) {
    if (static_cast<int>(exps.size()) != D) throw std::invalid_argument("monomial exponent count mismatch");
    LaurentPoly f(p, D);
    f.add_term(exps, c);
    return f;
}

LaurentPoly LaurentPoly::variable(int p, int D, int var, int power) {
    std::vector<int> e(D, 0);
    if (var < 0 || var >= D) throw std::out_of_range("variable index out of range");
    e[var] = power;
    return monomial(p, D, e);
}

bool LaurentPoly::is_unit() const {
    return terms.size() == 1 && std::all_of(terms.begin()->first.begin(), terms.begin()->first.end(),
                                            [](int e) { return e == 0; });
}

int LaurentPoly::coefficient(const std::vector<int>& exps) const {
    auto it = terms.find(exps);
    return it == terms.end() ? 0 : it->second;
}

void LaurentPoly::add_term(const std::vector<int>& exps, long long c) {
    if (static_cast<int>(exps.size()) != D) throw std::invalid_argument("exponent vector length mismatch");
    int v = fp_normalize(c, p);
    if (v == 0) return;
    auto [it, inserted] = terms.emplace(exps, v);
    if (!inserted) {
        it->second = fp_add(it->second, v, p);
        if (it->second == 0) terms.erase(it);
    }
}

static void check_same_ring(const LaurentPoly& a, const LaurentPoly& b) {
    if (a.p != b.p || a.D != b.D) throw std::invalid_argument("laurent ring mismatch");
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    check_same_ring(*this, o);
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.terms) out.add_term(e, c);
    return out;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    check_same_ring(*this, o);
    LaurentPoly out = *this;
    for (const auto& [e, c] : o.terms) out.add_term(e, -c);
    return out;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    check_same_ring(*this, o);
    LaurentPoly out(p, D);
    std::vector<int> e(D);
    for (const auto& [ea, ca] : terms)
        for (const auto& [eb, cb] : o.terms) {
            for (int i = 0; i < D; ++i) e[i] = ea[i] + eb[i];
            out.add_term(e, static_cast<long long>(ca) * cb);
        }
    return out;
}

LaurentPoly LaurentPoly::operator-() const { return scaled(-1); }

LaurentPoly LaurentPoly::scaled(long long c) const {
    LaurentPoly out(p, D);
    for (const auto& [e, v] : terms) out.add_term(e, v * c);
    return out;
}

LaurentPoly LaurentPoly::antipode() const {
    LaurentPoly out(p, D);
    std::vector<int> e(D);
    for (const auto& [ea, c] : terms) {
        for (int i = 0; i < D; ++i) e[i] = -ea[i];
        out.add_term(e, c);
    }
    return out;
}

int LaurentPoly::eval_all_ones() const {
    long long acc = 0;
    for (const auto& [e, c] : terms) acc += c;
    return fp_normalize(acc, p);
}

LaurentPoly LaurentPoly::substitute_exponents(const std::vector<std::vector<int>>& u) const {
    LaurentPoly out(p, D);
    std::vector<int> e(D);
    for (const auto& [ea, c] : terms) {
        for (int i = 0; i < D; ++i) {
            long long acc = 0;
            for (int j = 0; j < D; ++j) acc += static_cast<long long>(u[i][j]) * ea[j];
            e[i] = static_cast<int>(acc);
        }
        out.add_term(e, c);
    }
    return out;
}

std::vector<int> LaurentPoly::min_exponents() const {
    std::vector<int> m(D, 0);
    bool first = true;
    for (const auto& [e, c] : terms) {
        for (int i = 0; i < D; ++i) m[i] = first ? e[i] : std::min(m[i], e[i]);
        first = false;
    }
    return m;
}

std::vector<int> LaurentPoly::max_exponents() const {
    std::vector<int> m(D, 0);
    bool first = true;
    for (const auto& [e, c] : terms) {
        for (int i = 0; i < D; ++i) m[i] = first ? e[i] : std::max(m[i], e[i]);
        first = false;
    }
    return m;
}

std::vector<std::string> variable_names(int D) {
    if (D <= 3) {
        std::vector<std::string> names = {"x", "y", "z"};
        names.resize(D);
        return names;
    }
    std::vector<std::string> names;
    for (int i = 1; i <= D; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

std::string LaurentPoly::to_string() const {
    if (terms.empty()) return "0";
    auto names = variable_names(D);
    std::vector<std::pair<std::vector<int>, int>> sorted(terms.begin(), terms.end());
    auto grade = [](const std::vector<int>& e) {
        int g = 0;
        for (int v : e) g += std::abs(v);
        return g;
    };
    std::sort(sorted.begin(), sorted.end(), [&](const auto& a, const auto& b) {
        int ga = grade(a.first), gb = grade(b.first);
        if (ga != gb) return ga < gb;
        return a.first > b.first;  // lex descending tie-break
    });
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : sorted) {
        if (!first) os << " + ";
        first = false;
        bool has_var = std::any_of(e.begin(), e.end(), [](int v) { return v != 0; });
        bool printed = false;
        if (c != 1 || !has_var) {
            os << c;
            printed = true;
        }
        for (int i = 0; i < D; ++i) {
            if (e[i] == 0) continue;
            if (printed) os << "*";
            os << names[i];
            if (e[i] != 1) os << "^" << e[i];
            printed = true;
        }
    }
    return os.str();
}

PolyMatrix::PolyMatrix(int rows, int cols, int p_, int D_) : rows_(rows), cols_(cols), p(p_), D(D_) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("negative matrix dimension");
    e.assign(static_cast<size_t>(rows) * cols, LaurentPoly(p_, D_));
}

PolyMatrix PolyMatrix::identity(int n, int p, int D) {
    PolyMatrix m(n, n, p, D);
    for (int i = 0; i < n; ++i) m.at(i, i) = LaurentPoly::constant(p, D, 1);
    return m;
}

PolyMatrix PolyMatrix::operator*(const PolyMatrix& o) const {
    if (cols_ != o.rows_ || p != o.p || D != o.D) throw std::invalid_argument("poly matrix product mismatch");
    PolyMatrix out(rows_, o.cols_, p, D);
    for (int r = 0; r < rows_; ++r)
        for (int k = 0; k < cols_; ++k) {
            if (at(r, k).is_zero()) continue;
            for (int c = 0; c < o.cols_; ++c) {
                if (o.at(k, c).is_zero()) continue;
                out.at(r, c) = out.at(r, c) + at(r, k) * o.at(k, c);
            }
        }
    return out;
}

PolyMatrix PolyMatrix::operator+(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p != o.p || D != o.D)
        throw std::invalid_argument("poly matrix sum mismatch");
    PolyMatrix out = *this;
    for (size_t i = 0; i < e.size(); ++i) out.e[i] = out.e[i] + o.e[i];
    return out;
}

PolyMatrix PolyMatrix::operator-(const PolyMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_ || p != o.p || D != o.D)
        throw std::invalid_argument("poly matrix difference mismatch");
    PolyMatrix out = *this;
    for (size_t i = 0; i < e.size(); ++i) out.e[i] = out.e[i] - o.e[i];
    return out;
}

bool PolyMatrix::is_zero() const {
    return std::all_of(e.begin(), e.end(), [](const LaurentPoly& f) { return f.is_zero(); });
}

PolyMatrix PolyMatrix::dagger() const {
    PolyMatrix out(cols_, rows_, p, D);
    for (int r = 0; r < rows_; ++r)
        for (int c = 0; c < cols_; ++c) out.at(c, r) = at(r, c).antipode();
    return out;
}

std::vector<LaurentPoly> PolyMatrix::column(int c) const {
    std::vector<LaurentPoly> out;
    for (int r = 0; r < rows_; ++r) out.push_back(at(r, c));
    return out;
}

PolyMatrix symplectic_form_poly(int q, int p, int D) {
    PolyMatrix l(2 * q, 2 * q, p, D);
    for (int i = 0; i < q; ++i) {
        l.at(i, q + i) = LaurentPoly::constant(p, D, 1);
        l.at(q + i, i) = LaurentPoly::constant(p, D, -1);
    }
    return l;
}

bool check_isotropy(const PolyMatrix& sigma, int q) {
    if (sigma.rows() != 2 * q) throw std::invalid_argument("stabilizer map must have 2q rows");
    PolyMatrix prod = sigma.dagger() * symplectic_form_poly(q, sigma.p, sigma.D) * sigma;
    return prod.is_zero();
}

CodeDefinition CodeDefinition::make(int p, int D, int q, PolyMatrix sigma) {
    if (!gf::is_prime(p)) throw std::invalid_argument("qudit dimension must be prime");
    if (sigma.p != p || sigma.D != D) throw std::invalid_argument("sigma ring mismatch");
    if (sigma.rows() != 2 * q) throw std::invalid_argument("sigma must have 2q rows");
    if (!check_isotropy(sigma, q)) throw std::invalid_argument("sigma is not isotropic");
    CodeDefinition code;
    code.p = p;
    code.D = D;
    code.q = q;
    code.sigma = std::move(sigma);
    return code;
}

PolyMatrix excitation_map(const CodeDefinition& code) {
    return code.sigma.dagger() * symplectic_form_poly(code.q, code.p, code.D);
}

int dot_product(const std::vector<LaurentPoly>& v, const std::vector<LaurentPoly>& w) {
    if (v.size() != w.size()) throw std::invalid_argument("dot product length mismatch");
    if (v.empty()) return 0;
    int p = v[0].p;
    long long acc = 0;
    // coefficient of 1 in antipode(v_i) w_i = sum over shared exponents
    for (size_t i = 0; i < v.size(); ++i) {
        check_same_ring(v[i], w[i]);
        for (const auto& [e, c] : v[i].terms) acc += static_cast<long long>(c) * w[i].coefficient(e);
    }
    return fp_normalize(acc, p);
}

int torus_site_index(const std::vector<int>& coords, const std::vector<int>& L) {
    int idx = 0;
    for (int v = static_cast<int>(L.size()) - 1; v >= 0; --v) {
        int a = ((coords[v] % L[v]) + L[v]) % L[v];
        idx = a + L[v] * idx;
    }
    return idx;
}

codeanalysis::FiniteCode instantiate_torus(const CodeDefinition& code, const std::vector<int>& L) {
    if (static_cast<int>(L.size()) != code.D) throw std::invalid_argument("torus dimension mismatch");
    for (int l : L)
        if (l < 1) throw std::invalid_argument("torus lengths must be positive");
    long long sites = 1;
    for (int l : L) sites *= l;
    int n = static_cast<int>(sites) * code.q;

    std::vector<pauli::PauliVector> gens;
    std::vector<int> shift(code.D, 0);
    auto advance = [&]() {
        for (int v = 0; v < code.D; ++v) {
            if (++shift[v] < L[v]) return true;
            shift[v] = 0;
        }
        return code.D == 0 ? false : false;
    };
    bool more = true;
    while (more) {
        for (int c = 0; c < code.sigma.cols(); ++c) {
            pauli::PauliVector g(n, code.p);
            for (int r = 0; r < 2 * code.q; ++r) {
                int qudit_in_site = r % code.q;
                bool is_z = r >= code.q;
                for (const auto& [e, coef] : code.sigma.at(r, c).terms) {
                    std::vector<int> pos(code.D);
                    for (int v = 0; v < code.D; ++v) pos[v] = e[v] + shift[v];
                    int qudit = torus_site_index(pos, L) * code.q + qudit_in_site;
                    int idx = is_z ? n + qudit : qudit;
                    g.coords[idx] = fp_add(g.coords[idx], coef, code.p);
                }
            }
            gens.push_back(g);
        }
        more = advance();
    }
    return codeanalysis::FiniteCode(n, code.p, std::move(gens));
}

namespace {

int mixed_radix_index(const std::vector<int>& r, const std::vector<int>& b) {
    int idx = 0;
    for (int v = static_cast<int>(b.size()) - 1; v >= 0; --v) idx = r[v] + b[v] * idx;
    return idx;
}

}  // namespace

PolyMatrix coarse_grain_matrix(const PolyMatrix& m, const std::vector<int>& b) {
    int D = m.D;
    if (static_cast<int>(b.size()) != D) throw std::invalid_argument("coarse-grain factor dimension mismatch");
    for (int v : b)
        if (v < 1) throw std::invalid_argument("coarse-grain factors must be positive");
    int beta = 1;
    for (int v : b) beta *= v;
    PolyMatrix out(m.rows() * beta, m.cols() * beta, m.p, D);

    std::vector<int> residue(D, 0);
    for (int ridx = 0; ridx < beta; ++ridx) {
        for (int row = 0; row < m.rows(); ++row)
            for (int col = 0; col < m.cols(); ++col) {
                const LaurentPoly& f = m.at(row, col);
                for (const auto& [e, coef] : f.terms) {
                    std::vector<int> s(D), k(D);
                    for (int v = 0; v < D; ++v) {
                        int t = e[v] + residue[v];
                        int kk = t >= 0 ? t / b[v] : -((-t + b[v] - 1) / b[v]);
                        k[v] = kk;
                        s[v] = t - kk * b[v];
                    }
                    int sidx = mixed_radix_index(s, b);
                    out.at(row * beta + sidx, col * beta + ridx).add_term(k, coef);
                }
            }
        for (int v = 0; v < D; ++v) {
            if (++residue[v] < b[v]) break;
            residue[v] = 0;
        }
    }
    return out;
}

std::pair<PolyMatrix, int> coarse_grain_sigma(const PolyMatrix& sigma_in, int q, const std::vector<int>& b) {
    if (sigma_in.rows() != 2 * q) throw std::invalid_argument("coarse_grain_sigma: sigma must have 2q rows");
    int beta = 1;
    for (int v : b) beta *= v;
    PolyMatrix big = coarse_grain_matrix(sigma_in, b);
    // rearrange rows so the new X block (q' rows) comes before the new Z block
    int qp = q * beta;
    PolyMatrix sigma(2 * qp, big.cols(), sigma_in.p, sigma_in.D);
    for (int r = 0; r < 2 * q; ++r)
        for (int s = 0; s < beta; ++s) {
            int src = r * beta + s;
            int qudit = (r % q) * beta + s;
            int dst = r < q ? qudit : qp + qudit;
            for (int c = 0; c < big.cols(); ++c) sigma.at(dst, c) = big.at(src, c);
        }
    return {std::move(sigma), qp};
}

CodeDefinition coarse_grain(const CodeDefinition& code, const std::vector<int>& b) {
    auto [sigma, qp] = coarse_grain_sigma(code.sigma, code.q, b);
    return CodeDefinition::make(code.p, code.D, qp, std::move(sigma));
}

// ---- Groebner bridge ----
//
// Laurent computations run over the polynomial ring F_p[t, x_1..x_D] with
// the relation t x_1 ... x_D = 1; monomials with negative exponents lift as
// x^a = t^s x^{a + s}, and t^k x^b maps back to x^{b - k}.

namespace {

groebner::Poly lift_poly(const LaurentPoly& f, int nv) {
    groebner::Poly out;
    for (const auto& [e, c] : f.terms) {
        int s = 0;
        for (int v : e) s = std::max(s, -v);
        groebner::Mono m(nv, 0);
        m[0] = s;
        for (size_t v = 0; v < e.size(); ++v) m[v + 1] = e[v] + s;
        groebner::poly_add_term(out, m, c, f.p);
    }
    return out;
}

LaurentPoly lower_poly(const groebner::Poly& f, int p, int D) {
    LaurentPoly out(p, D);
    for (const auto& [m, c] : f) {
        std::vector<int> e(D);
        for (int v = 0; v < D; ++v) e[v] = m[v + 1] - m[0];
        out.add_term(e, c);
    }
    return out;
}

groebner::Poly inverse_relation(int p, int nv) {
    // t x_1 ... x_D - 1
    groebner::Poly h;
    groebner::Mono m(nv, 1);
    groebner::poly_add_term(h, m, 1, p);
    groebner::poly_add_term(h, groebner::Mono(nv, 0), -1, p);
    return h;
}

}  // namespace

struct LaurentModule::Impl {
    int p, D, nv, rows, cols;
    PolyMatrix gens;
    groebner::ModuleGB gb;

    static groebner::ModuleGB build(const PolyMatrix& g) {
        int nv = g.D + 1;
        std::vector<std::vector<groebner::Poly>> generators;
        for (int c = 0; c < g.cols(); ++c) {
            std::vector<groebner::Poly> col;
            for (int r = 0; r < g.rows(); ++r) col.push_back(lift_poly(g.at(r, c), nv));
            generators.push_back(std::move(col));
        }
        groebner::Poly h = inverse_relation(g.p, nv);
        for (int r = 0; r < g.rows(); ++r) {
            std::vector<groebner::Poly> col(g.rows(), groebner::poly_zero());
            col[r] = h;
            generators.push_back(std::move(col));
        }
        return groebner::ModuleGB(g.p, nv, g.rows(), std::move(generators));
    }

    explicit Impl(const PolyMatrix& g)
        : p(g.p), D(g.D), nv(g.D + 1), rows(g.rows()), cols(g.cols()), gens(g), gb(build(g)) {}
};

LaurentModule::LaurentModule(const PolyMatrix& gens) {
    if (gens.D > 3) throw std::invalid_argument("module operations support at most 3 variables");
    impl_ = std::make_unique<Impl>(gens);
}

LaurentModule::~LaurentModule() = default;
LaurentModule::LaurentModule(LaurentModule&&) noexcept = default;

namespace {

std::vector<groebner::Poly> lift_column(const std::vector<LaurentPoly>& v, int nv) {
    std::vector<groebner::Poly> out;
    for (const auto& f : v) out.push_back(lift_poly(f, nv));
    return out;
}

void normalize_column(std::vector<LaurentPoly>& col) {
    int D = col.empty() ? 0 : col[0].D;
    int p = col.empty() ? 2 : col[0].p;
    std::vector<int> mins(D, 0);
    bool any = false;
    for (const auto& f : col) {
        if (f.is_zero()) continue;
        auto m = f.min_exponents();
        for (int v = 0; v < D; ++v) mins[v] = any ? std::min(mins[v], m[v]) : m[v];
        any = true;
    }
    if (!any) return;
    std::vector<int> shift(D);
    for (int v = 0; v < D; ++v) shift[v] = -mins[v];
    LaurentPoly unit = LaurentPoly::monomial(p, D, shift);
    int lead = 0;
    for (auto& f : col) {
        f = f * unit;
        if (lead == 0 && !f.is_zero()) lead = f.terms.begin()->second;
    }
    if (lead != 1) {
        int inv = gf::fp_inv(lead, p);
        for (auto& f : col) f = f.scaled(inv);
    }
}

}  // namespace

std::optional<std::vector<LaurentPoly>> LaurentModule::member(const std::vector<LaurentPoly>& v) const {
    const Impl& im = *impl_;
    if (static_cast<int>(v.size()) != im.rows) throw std::invalid_argument("member: column length mismatch");
    auto nf = im.gb.normal_form(lift_column(v, im.nv));
    if (!groebner::elem_is_zero(nf)) return std::nullopt;
    // remainder - sum shadow_j G_j = v, so the coefficients are -shadow
    std::vector<LaurentPoly> a;
    for (int j = 0; j < im.cols; ++j) a.push_back(-lower_poly(nf.shadow[j], im.p, im.D));
    // verify by substitution over the Laurent ring
    for (int r = 0; r < im.rows; ++r) {
        LaurentPoly acc(im.p, im.D);
        for (int j = 0; j < im.cols; ++j) acc = acc + im.gens.at(r, j) * a[j];
        if (!(acc == v[r])) throw std::logic_error("member: coefficient verification failed");
    }
    return a;
}

bool LaurentModule::contains(const std::vector<LaurentPoly>& v) const {
    const Impl& im = *impl_;
    if (static_cast<int>(v.size()) != im.rows) throw std::invalid_argument("contains: column length mismatch");
    return groebner::elem_is_zero(im.gb.normal_form(lift_column(v, im.nv)));
}

PolyMatrix LaurentModule::syzygy_columns() const {
    const Impl& im = *impl_;
    auto syz = im.gb.syzygies();
    std::vector<std::vector<LaurentPoly>> cols;
    std::vector<std::string> seen;
    for (const auto& s : syz) {
        std::vector<LaurentPoly> col;
        for (int j = 0; j < im.cols; ++j) col.push_back(lower_poly(s[j], im.p, im.D));
        bool zero = std::all_of(col.begin(), col.end(), [](const LaurentPoly& f) { return f.is_zero(); });
        if (zero) continue;
        normalize_column(col);
        std::string key;
        for (const auto& f : col) key += f.to_string() + ";";
        if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
        seen.push_back(key);
        cols.push_back(std::move(col));
    }
    // deterministic order
    std::vector<size_t> order(cols.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return seen[a] < seen[b]; });
    PolyMatrix out(im.cols, static_cast<int>(cols.size()), im.p, im.D);
    for (size_t c = 0; c < order.size(); ++c)
        for (int r = 0; r < im.cols; ++r) out.at(r, static_cast<int>(c)) = cols[order[c]][r];
    return out;
}

std::optional<long long> LaurentModule::cokernel_dimension() const {
    return impl_->gb.standard_monomial_count();
}

PolyMatrix module_kernel(const PolyMatrix& m) {
    LaurentModule mod(m);
    PolyMatrix syz = mod.syzygy_columns();
    // each column really is in the kernel
    for (int c = 0; c < syz.cols(); ++c)
        for (int r = 0; r < m.rows(); ++r) {
            LaurentPoly acc(m.p, m.D);
            for (int k = 0; k < m.cols(); ++k) acc = acc + m.at(r, k) * syz.at(k, c);
            if (!acc.is_zero()) throw std::logic_error("module_kernel: generator fails m v = 0");
        }
    return syz;
}

std::optional<std::vector<LaurentPoly>> module_member(const std::vector<LaurentPoly>& v, const PolyMatrix& gens) {
    return LaurentModule(gens).member(v);
}

bool exactness_check(const CodeDefinition& code) {
    PolyMatrix eps = excitation_map(code);
    if (!(eps * code.sigma).is_zero()) throw std::logic_error("excitation map does not annihilate sigma");
    PolyMatrix kernel = module_kernel(eps);
    LaurentModule image(code.sigma);
    for (int c = 0; c < kernel.cols(); ++c)
        if (!image.contains(kernel.column(c))) return false;
    return true;
}

}  // namespace qcalg::laurent
