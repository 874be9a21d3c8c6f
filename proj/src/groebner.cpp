#include "qcalg/groebner.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "qcalg/gf.hpp"

namespace qcalg::groebner {

using gf::fp_inv;
using gf::fp_mul;
using gf::fp_neg;
using gf::fp_normalize;

int total_degree(const Mono& m) {
    int d = 0;
    for (int e : m) d += e;
    return d;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_quotient(const Mono& b, const Mono& a) {
    Mono q(b.size());
    for (size_t i = 0; i < b.size(); ++i) q[i] = b[i] - a[i];
    return q;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono l(a.size());
    for (size_t i = 0; i < a.size(); ++i) l[i] = std::max(a[i], b[i]);
    return l;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono m(a.size());
    for (size_t i = 0; i < a.size(); ++i) m[i] = a[i] + b[i];
    return m;
}

bool GrlexGreater::operator()(const Mono& a, const Mono& b) const {
    int da = total_degree(a), db = total_degree(b);
    if (da != db) return da > db;
    return a > b;  // lex with variable 0 most significant
}

Poly poly_zero() { return Poly(); }

Poly poly_mono(const Mono& m, int c) {
    Poly f;
    if (c != 0) f[m] = c;
    return f;
}

bool poly_is_zero(const Poly& f) { return f.empty(); }

void poly_add_term(Poly& f, const Mono& m, long long c, int p) {
    int v = fp_normalize(c, p);
    if (v == 0) return;
    auto [it, inserted] = f.emplace(m, v);
    if (!inserted) {
        it->second = (it->second + v) % p;
        if (it->second == 0) f.erase(it);
    }
}

void poly_axpy(Poly& dst, int c, const Mono& shift, const Poly& src, int p) {
    if (c % p == 0) return;
    for (const auto& [m, v] : src) poly_add_term(dst, mono_mul(m, shift), static_cast<long long>(c) * v, p);
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    Poly out;
    for (const auto& [m, c] : a) poly_axpy(out, c, m, b, p);
    return out;
}

Poly poly_scale(const Poly& a, int c, int p) {
    Poly out;
    for (const auto& [m, v] : a) poly_add_term(out, m, static_cast<long long>(c) * v, p);
    return out;
}

bool elem_is_zero(const ModElem& e) {
    return std::all_of(e.comp.begin(), e.comp.end(), [](const Poly& f) { return f.empty(); });
}

LeadTerm lead_term(const ModElem& e) {
    for (size_t i = 0; i < e.comp.size(); ++i)
        if (!e.comp[i].empty()) {
            const auto& [m, c] = *e.comp[i].begin();
            return {static_cast<int>(i), m, c};
        }
    throw std::logic_error("lead term of zero module element");
}

namespace {

// e -= c * x^shift * g (component-wise, shadows included)
void elem_axpy(ModElem& e, int c, const Mono& shift, const ModElem& g, int p) {
    for (size_t i = 0; i < e.comp.size(); ++i) poly_axpy(e.comp[i], c, shift, g.comp[i], p);
    for (size_t i = 0; i < e.shadow.size(); ++i) poly_axpy(e.shadow[i], c, shift, g.shadow[i], p);
}

void elem_scale(ModElem& e, int c, int p) {
    for (auto& f : e.comp) f = poly_scale(f, c, p);
    for (auto& f : e.shadow) f = poly_scale(f, c, p);
}

}  // namespace

ModuleGB::ModuleGB(int p, int nv, int r, std::vector<std::vector<Poly>> generators)
    : p_(p), nv_(nv), r_(r), ngens_(static_cast<int>(generators.size())), original_(generators) {
    for (auto& g : generators)
        if (static_cast<int>(g.size()) != r) throw std::invalid_argument("generator has wrong number of components");

    for (int j = 0; j < ngens_; ++j) {
        ModElem e;
        e.comp = generators[j];
        e.shadow.assign(ngens_, poly_zero());
        Mono one(nv_, 0);
        e.shadow[j] = poly_mono(one, 1);
        if (!elem_is_zero(e)) {
            reduce_full(e);
            if (!elem_is_zero(e)) {
                elem_scale(e, fp_inv(lead_term(e).coef, p_), p_);
                gb_.push_back(std::move(e));
            }
        }
    }

    // pair queue ordered by (lcm degree, lcm, indices) for determinism
    struct Pair {
        int deg;
        Mono lcm;
        int i, j;
        bool operator<(const Pair& o) const {
            if (deg != o.deg) return deg < o.deg;
            if (lcm != o.lcm) return lcm < o.lcm;
            if (i != o.i) return i < o.i;
            return j < o.j;
        }
    };
    std::set<Pair> queue;
    auto push_pairs = [&](size_t upto) {
        for (size_t i = 0; i < upto; ++i) {
            auto li = lead_term(gb_[i]);
            auto lj = lead_term(gb_[upto]);
            if (li.pos != lj.pos) continue;
            Mono l = mono_lcm(li.mono, lj.mono);
            queue.insert({total_degree(l), l, static_cast<int>(i), static_cast<int>(upto)});
        }
    };
    for (size_t j = 1; j < gb_.size(); ++j) push_pairs(j);

    while (!queue.empty()) {
        Pair pr = *queue.begin();
        queue.erase(queue.begin());
        const ModElem& gi = gb_[pr.i];
        const ModElem& gj = gb_[pr.j];
        auto li = lead_term(gi);
        auto lj = lead_term(gj);
        if (li.pos != lj.pos) continue;
        Mono l = mono_lcm(li.mono, lj.mono);
        ModElem sp;
        sp.comp.assign(r_, poly_zero());
        sp.shadow.assign(ngens_, poly_zero());
        elem_axpy(sp, fp_neg(fp_inv(li.coef, p_), p_), mono_quotient(l, li.mono), gi, p_);
        elem_axpy(sp, fp_inv(lj.coef, p_), mono_quotient(l, lj.mono), gj, p_);
        reduce_full(sp);
        if (!elem_is_zero(sp)) {
            elem_scale(sp, fp_inv(lead_term(sp).coef, p_), p_);
            gb_.push_back(std::move(sp));
            push_pairs(gb_.size() - 1);
        }
    }

    // inter-reduce for a canonical reduced basis: drop elements whose lead
    // is divisible by another lead, then tail-reduce
    std::vector<ModElem> minimal;
    for (size_t i = 0; i < gb_.size(); ++i) {
        auto li = lead_term(gb_[i]);
        bool redundant = false;
        for (size_t j = 0; j < gb_.size() && !redundant; ++j) {
            if (i == j) continue;
            auto lj = lead_term(gb_[j]);
            if (lj.pos != li.pos || !mono_divides(lj.mono, li.mono)) continue;
            if (lj.mono == li.mono && j > i) continue;  // keep the earlier of equal leads
            redundant = true;
        }
        if (!redundant) minimal.push_back(gb_[i]);
    }
    gb_ = std::move(minimal);
    for (size_t i = 0; i < gb_.size(); ++i) {
        // tail-reduce: every term below the lead is strictly smaller, so the
        // element's own lead can never divide them and self-reduction is moot
        ModElem rest = gb_[i];
        auto lt = lead_term(rest);
        rest.comp[lt.pos].erase(rest.comp[lt.pos].begin());
        reduce_full(rest);
        rest.comp[lt.pos][lt.mono] = lt.coef;
        gb_[i] = std::move(rest);
    }
    std::sort(gb_.begin(), gb_.end(), [](const ModElem& a, const ModElem& b) {
        auto la = lead_term(a), lb = lead_term(b);
        if (la.pos != lb.pos) return la.pos < lb.pos;
        return GrlexGreater{}(la.mono, lb.mono);
    });
}

bool ModuleGB::reduce_lead_once(ModElem& e) const {
    auto lt = lead_term(e);
    for (const ModElem& g : gb_) {
        auto lg = lead_term(g);
        if (lg.pos != lt.pos || !mono_divides(lg.mono, lt.mono)) continue;
        int c = fp_mul(lt.coef, fp_inv(lg.coef, p_), p_);
        elem_axpy(e, fp_neg(c, p_), mono_quotient(lt.mono, lg.mono), g, p_);
        return true;
    }
    return false;
}

void ModuleGB::reduce_full(ModElem& e) const {
    // standard division: irreducible lead terms move to the remainder
    ModElem rem;
    rem.comp.assign(r_, poly_zero());
    rem.shadow.assign(e.shadow.size(), poly_zero());
    while (!elem_is_zero(e)) {
        if (!reduce_lead_once(e)) {
            auto lt = lead_term(e);
            rem.comp[lt.pos][lt.mono] = lt.coef;
            e.comp[lt.pos].erase(e.comp[lt.pos].begin());
        }
    }
    for (int i = 0; i < r_; ++i) e.comp[i] = std::move(rem.comp[i]);
    // shadows already accumulated in e.shadow
}

ModElem ModuleGB::normal_form(const std::vector<Poly>& v) const {
    if (static_cast<int>(v.size()) != r_) throw std::invalid_argument("normal_form: component count mismatch");
    ModElem e;
    e.comp = v;
    e.shadow.assign(ngens_, poly_zero());
    reduce_full(e);
    return e;
}

std::vector<std::vector<Poly>> ModuleGB::syzygies() const {
    std::vector<std::vector<Poly>> out;
    // relations expressing every original generator over the basis
    for (int j = 0; j < ngens_; ++j) {
        ModElem e;
        e.comp = original_[j];
        e.shadow.assign(ngens_, poly_zero());
        Mono one(nv_, 0);
        e.shadow[j] = poly_mono(one, 1);
        reduce_full(e);
        if (!elem_is_zero(e)) throw std::logic_error("generator does not reduce to zero over its own basis");
        bool nontrivial = std::any_of(e.shadow.begin(), e.shadow.end(), [](const Poly& f) { return !f.empty(); });
        if (nontrivial) out.push_back(e.shadow);
    }
    // Schreyer generators from the S-pairs of the final basis
    for (size_t i = 0; i < gb_.size(); ++i)
        for (size_t j = i + 1; j < gb_.size(); ++j) {
            auto li = lead_term(gb_[i]);
            auto lj = lead_term(gb_[j]);
            if (li.pos != lj.pos) continue;
            Mono l = mono_lcm(li.mono, lj.mono);
            ModElem sp;
            sp.comp.assign(r_, poly_zero());
            sp.shadow.assign(ngens_, poly_zero());
            elem_axpy(sp, fp_neg(fp_inv(li.coef, p_), p_), mono_quotient(l, li.mono), gb_[i], p_);
            elem_axpy(sp, fp_inv(lj.coef, p_), mono_quotient(l, lj.mono), gb_[j], p_);
            reduce_full(sp);
            if (!elem_is_zero(sp)) throw std::logic_error("S-pair of basis elements does not reduce to zero");
            bool nontrivial = std::any_of(sp.shadow.begin(), sp.shadow.end(), [](const Poly& f) { return !f.empty(); });
            if (nontrivial) out.push_back(sp.shadow);
        }
    return out;
}

std::vector<std::vector<Mono>> ModuleGB::lead_monomials() const {
    std::vector<std::vector<Mono>> out(r_);
    for (const auto& g : gb_) {
        auto lt = lead_term(g);
        out[lt.pos].push_back(lt.mono);
    }
    return out;
}

std::optional<long long> ModuleGB::standard_monomial_count(long long cap) const {
    auto leads = lead_monomials();
    long long count = 0;
    for (int pos = 0; pos < r_; ++pos) {
        const auto& lm = leads[pos];
        // finite iff every variable has a pure-power lead at this position
        std::vector<int> bound(nv_, -1);
        bool constant_lead = false;
        for (const auto& m : lm) {
            int nzvar = -1, nz = 0;
            for (int v = 0; v < nv_; ++v)
                if (m[v] > 0) {
                    nzvar = v;
                    ++nz;
                }
            if (nz == 0) {
                constant_lead = true;  // the unit is a lead: nothing standard here
                break;
            }
            if (nz == 1 && (bound[nzvar] < 0 || m[nzvar] < bound[nzvar])) bound[nzvar] = m[nzvar];
        }
        if (constant_lead) continue;
        for (int v = 0; v < nv_; ++v)
            if (bound[v] < 0) return std::nullopt;
        long long box = 1;
        for (int v = 0; v < nv_; ++v) {
            box *= bound[v];
            if (box > cap) return std::nullopt;
        }
        // enumerate the box under the pure-power bounds, filter by divisibility
        std::vector<int> mono(nv_, 0);
        while (true) {
            bool standard = true;
            for (const auto& m : lm)
                if (mono_divides(m, mono)) {
                    standard = false;
                    break;
                }
            if (standard) ++count;
            if (count > cap) return std::nullopt;
            int v = 0;
            while (v < nv_ && mono[v] == bound[v] - 1) mono[v++] = 0;
            if (v == nv_) break;
            ++mono[v];
        }
    }
    return count;
}

}  // namespace qcalg::groebner
