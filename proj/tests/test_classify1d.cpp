#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcalg/classify1d.hpp"
#include "qcalg/codeanalysis.hpp"

using namespace qcalg;
using classify1d::classify_1d;
using classify1d::cyclotomic_multiple;
using classify1d::diagonalize_1d;
using laurent::CodeDefinition;
using laurent::LaurentPoly;
using laurent::PolyMatrix;
using smith::UPoly;

namespace {

LaurentPoly lp1(int p, std::initializer_list<std::pair<int, int>> ts) {
    LaurentPoly f(p, 1);
    for (auto& [e, c] : ts) f.add_term({e}, c);
    return f;
}

CodeDefinition xtype(int p, std::vector<LaurentPoly> polys) {
    // q = #polys, CSS X-type code: column j has poly_j in the X row of qudit j
    int q = static_cast<int>(polys.size());
    PolyMatrix sigma(2 * q, q, p, 1);
    for (int j = 0; j < q; ++j) sigma.at(j, j) = polys[j];
    return CodeDefinition::make(p, 1, q, sigma);
}

CodeDefinition ising() { return xtype(2, {lp1(2, {{0, 1}, {1, 1}})}); }

int generator_width(const CodeDefinition& code) {
    int w = 0;
    for (int c = 0; c < code.sigma.cols(); ++c) {
        int lo = 0, hi = 0;
        bool any = false;
        for (int r = 0; r < code.sigma.rows(); ++r) {
            const auto& e = code.sigma.at(r, c);
            if (e.is_zero()) continue;
            int l = e.min_exponents()[0], h = e.max_exponents()[0];
            lo = any ? std::min(lo, l) : l;
            hi = any ? std::max(hi, h) : h;
            any = true;
        }
        if (any) w = std::max(w, hi - lo + 1);
    }
    return w;
}

lattice::Script random_lattice_script(std::mt19937& rng, int p, int q, int len) {
    lattice::Script s;
    std::uniform_int_distribution<int> kind(0, 5);
    std::uniform_int_distribution<int> qd(0, q - 1);
    std::uniform_int_distribution<int> coef(1, p - 1);
    std::uniform_int_distribution<int> expo(-1, 1);
    for (int i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: s.h(qd(rng)); break;
            case 1: s.s(qd(rng), coef(rng), p); break;
            case 2: s.r(qd(rng), coef(rng), p); break;
            case 3: {
                if (q < 2) break;
                int a = qd(rng), b = qd(rng);
                if (a == b) b = (b + 1) % q;
                s.cnot(a, b, LaurentPoly::monomial(p, 1, {expo(rng)}, coef(rng)));
                break;
            }
            case 4: {
                int e = expo(rng);
                LaurentPoly f(p, 1);
                int c = coef(rng);
                f.add_term({e}, c);
                if (e != 0) f.add_term({-e}, c);
                s.cz(qd(rng), f);
                break;
            }
            default: s.translate(qd(rng), {expo(rng)}); break;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("diagonalize_1d examples") {
    // Ising already diagonal
    auto [s1, d1] = diagonalize_1d(ising());
    CHECK(d1.size() == 1);
    CHECK(d1[0] == lp1(2, {{0, 1}, {1, 1}}));

    // Z-type convention flipped: needs a Hadamard
    PolyMatrix sz(2, 1, 2, 1);
    sz.at(1, 0) = lp1(2, {{0, 1}, {1, 1}});
    auto code = CodeDefinition::make(2, 1, 1, sz);
    auto [s2, d2] = diagonalize_1d(code);
    bool has_h = false;
    for (auto& m : s2.moves) has_h = has_h || m.kind == lattice::Kind::H;
    CHECK(has_h);
    CHECK(d2[0] == lp1(2, {{0, 1}, {1, 1}}));
    // replay check
    auto st = lattice::apply(s2, {code.sigma, 1});
    CHECK(st.sigma.at(0, 0) == d2[0]);
    CHECK(st.sigma.at(1, 0).is_zero());

    // two Ising columns at q = 2
    auto two = xtype(2, {lp1(2, {{0, 1}, {1, 1}}), lp1(2, {{0, 1}, {1, 1}})});
    auto [s3, d3] = diagonalize_1d(two);
    CHECK(d3[0] == lp1(2, {{0, 1}, {1, 1}}));
    CHECK(d3[1] == lp1(2, {{0, 1}, {1, 1}}));
    // divisibility holds trivially here; replay must reproduce the diagonal
    auto st3 = lattice::apply(s3, {two.sigma, 2});
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 2; ++c) {
            if (r == c)
                CHECK(st3.sigma.at(r, c) == d3[r]);
            else
                CHECK(st3.sigma.at(r, c).is_zero());
        }
}

TEST_CASE("cyclotomic_multiple") {
    auto f = UPoly::monomial(2, 2, 1) + UPoly::monomial(2, 1, 1) + UPoly::constant(2, 1);
    CHECK(cyclotomic_multiple(f, 64) == 3);
    CHECK(cyclotomic_multiple(UPoly::constant(2, 1), 64) == 1);
    auto g = UPoly::monomial(2, 1, 1) + UPoly::constant(2, 1);
    CHECK(cyclotomic_multiple(g, 64) == 2);
    CHECK_FALSE(cyclotomic_multiple(f, 2).has_value());
    CHECK_THROWS(cyclotomic_multiple(UPoly::monomial(2, 1, 1), 8));  // f(0) = 0
}

TEST_CASE("classify_1d golden cases") {
    auto rep = classify_1d(ising());
    CHECK(rep.conclusive);
    CHECK(rep.ising_copies == 1);
    CHECK(rep.trivial_qudits == 1);
    CHECK(rep.b == 2);

    auto f3 = classify_1d(xtype(2, {lp1(2, {{0, 1}, {1, 1}, {2, 1}})}));
    CHECK(f3.conclusive);
    CHECK(f3.ising_copies == 2);
    CHECK(f3.trivial_qudits == 1);
    CHECK(f3.b == 3);

    auto triv = classify_1d(xtype(2, {lp1(2, {{0, 1}})}));
    CHECK(triv.conclusive);
    CHECK(triv.ising_copies == 0);
    CHECK(triv.trivial_qudits == 1);
    CHECK(triv.b == 1);
}

TEST_CASE("witness replay reproduces the normal form exactly") {
    for (auto& code : {ising(), xtype(2, {lp1(2, {{0, 1}, {1, 1}, {2, 1}})}),
                       xtype(3, {lp1(3, {{0, 1}, {1, 2}}), lp1(3, {{0, 1}})})}) {
        auto rep = classify_1d(code);
        REQUIRE(rep.conclusive);
        auto st = lattice::apply(rep.witness, {code.sigma, code.q});
        CHECK(st.sigma == rep.normal_form);
        CHECK(rep.ising_copies + rep.trivial_qudits == code.q * rep.b);
        // every symplectic move satisfies the symplectic condition
        lattice::SigmaState cur{code.sigma, code.q};
        for (const auto& mv : rep.witness.moves) {
            switch (mv.kind) {
                case lattice::Kind::H:
                case lattice::Kind::S:
                case lattice::Kind::R:
                case lattice::Kind::Cnot:
                case lattice::Kind::Cz:
                case lattice::Kind::Translate:
                    CHECK(lattice::move_is_symplectic(mv, cur.q, code.p, 1));
                    break;
                default: break;
            }
            cur = lattice::apply_move(mv, std::move(cur));
        }
    }
}

TEST_CASE("inconclusive cases are reported, not fudged") {
    // q = 1 with no stabilizer columns at all
    PolyMatrix empty(2, 1, 2, 1);
    auto rep = classify_1d(CodeDefinition::make(2, 1, 1, empty));
    CHECK_FALSE(rep.conclusive);

    // a bound too small to find the cyclotomic multiple
    auto rep2 = classify_1d(xtype(2, {lp1(2, {{0, 1}, {1, 1}, {2, 1}})}), 2);
    CHECK_FALSE(rep2.conclusive);
}

TEST_CASE("finite-size consistency of the normal form") {
    for (auto& code : {ising(), xtype(2, {lp1(2, {{0, 1}, {1, 1}, {2, 1}})})}) {
        auto rep = classify_1d(code);
        REQUIRE(rep.conclusive);
        auto normal = CodeDefinition::make(code.p, 1, code.q * rep.b, rep.normal_form);
        int L = rep.b * 4;
        auto fine = laurent::instantiate_torus(code, {L});
        auto coarse = laurent::instantiate_torus(normal, {L / rep.b});
        CHECK(fine.n == coarse.n);
        CHECK(codeanalysis::logical_qubits(fine) == codeanalysis::logical_qubits(coarse));
        int w = generator_width(code);
        if (codeanalysis::logical_qubits(fine) >= 1) {
            auto d = codeanalysis::distance(fine, 3 * w);
            REQUIRE(d.has_value());
            CHECK(*d <= 3 * w);
        }
    }
}

TEST_CASE("ising count is invariant under symplectic pre-composition") {
    std::mt19937 rng(624);
    auto base = xtype(2, {lp1(2, {{0, 1}, {1, 1}}), lp1(2, {{0, 1}})});
    auto base_rep = classify_1d(base);
    REQUIRE(base_rep.conclusive);
    for (int iter = 0; iter < 12; ++iter) {
        auto script = random_lattice_script(rng, 2, 2, 8);
        auto st = lattice::apply(script, {base.sigma, base.q});
        auto scrambled = CodeDefinition::make(2, 1, 2, st.sigma);
        auto rep = classify_1d(scrambled);
        REQUIRE(rep.conclusive);
        CHECK(rep.ising_copies == base_rep.ising_copies);
        CHECK(rep.b == base_rep.b);
    }
    // p = 3 variant
    auto base3 = xtype(3, {lp1(3, {{0, 1}, {1, 2}})});
    auto rep3 = classify_1d(base3);
    REQUIRE(rep3.conclusive);
    for (int iter = 0; iter < 8; ++iter) {
        auto script = random_lattice_script(rng, 3, 1, 6);
        auto st = lattice::apply(script, {base3.sigma, 1});
        auto rep = classify_1d(CodeDefinition::make(3, 1, 1, st.sigma));
        REQUIRE(rep.conclusive);
        CHECK(rep.ising_copies == rep3.ising_copies);
    }
}
