#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcalg/codeanalysis.hpp"
#include "qcalg/css2d.hpp"

using namespace qcalg;
using css2d::CssCode;
using laurent::CodeDefinition;
using laurent::LaurentPoly;
using laurent::PolyMatrix;

namespace {

LaurentPoly lp2(std::initializer_list<std::pair<std::vector<int>, int>> ts) {
    LaurentPoly f(2, 2);
    for (auto& [e, c] : ts) f.add_term(e, c);
    return f;
}

CodeDefinition toric_code() {
    PolyMatrix sigma(4, 2, 2, 2);
    sigma.at(0, 0) = lp2({{{1, 0}, 1}, {{0, 0}, 1}});
    sigma.at(1, 0) = lp2({{{0, 1}, 1}, {{0, 0}, 1}});
    sigma.at(2, 1) = lp2({{{0, -1}, 1}, {{0, 0}, 1}});
    sigma.at(3, 1) = lp2({{{-1, 0}, 1}, {{0, 0}, 1}});
    return CodeDefinition::make(2, 2, 2, sigma);
}

CodeDefinition stacked_toric() {
    auto t = toric_code();
    PolyMatrix sigma(8, 4, 2, 2);
    for (int copy = 0; copy < 2; ++copy)
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) {
                sigma.at(copy * 2 + r, copy * 2 + c) = t.sigma.at(r, c);
                sigma.at(4 + copy * 2 + r, copy * 2 + c) = t.sigma.at(2 + r, c);
            }
    return CodeDefinition::make(2, 2, 4, sigma);
}

CodeDefinition trivial_code() {
    PolyMatrix sigma(2, 1, 2, 2);
    sigma.at(0, 0) = LaurentPoly::constant(2, 2, 1);
    return CodeDefinition::make(2, 2, 1, sigma);
}

// CSS-preserving scrambles: translations, monomial CNOTs, global H swap
lattice::Script random_css_script(std::mt19937& rng, int q, int len) {
    lattice::Script s;
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> qd(0, q - 1);
    std::uniform_int_distribution<int> expo(-1, 1);
    for (int i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: {
                if (q < 2) break;
                int a = qd(rng), b = qd(rng);
                if (a == b) b = (b + 1) % q;
                s.cnot(a, b, LaurentPoly::monomial(2, 2, {expo(rng), expo(rng)}));
                break;
            }
            case 1: s.translate(qd(rng), {expo(rng), expo(rng)}); break;
            default:
                for (int j = 0; j < q; ++j) s.h(j);
                break;
        }
    }
    return s;
}

}  // namespace

TEST_CASE("CSS structure detection") {
    CHECK(css2d::is_css(toric_code()));
    PolyMatrix bad(2, 1, 2, 2);
    bad.at(0, 0) = LaurentPoly::constant(2, 2, 1);
    bad.at(1, 0) = LaurentPoly::constant(2, 2, 1);
    // the column (1; 1) is isotropic for q = 1 but mixes the blocks
    auto code = CodeDefinition::make(2, 2, 1, bad);
    CHECK_FALSE(css2d::is_css(code));
    CHECK_THROWS(CssCode::make(code));
}

TEST_CASE("annihilator condition") {
    auto toric = CssCode::make(toric_code());
    CHECK(css2d::annihilator_condition(toric, 1));

    auto coarse = CssCode::make(laurent::coarse_grain(toric_code(), {2, 2}));
    CHECK(css2d::annihilator_condition(coarse, 2));
    CHECK(css2d::annihilator_condition(coarse, 1));  // charges still move by one coarse unit

    auto triv = CssCode::make(trivial_code());
    CHECK(css2d::annihilator_condition(triv, 1));
}

TEST_CASE("torsion dimension") {
    CHECK(css2d::torsion_dimension(CssCode::make(toric_code())) == 2);
    CHECK(css2d::torsion_dimension(CssCode::make(stacked_toric())) == 4);
    CHECK(css2d::torsion_dimension(CssCode::make(trivial_code())) == 0);
}

TEST_CASE("torsion invariance under CSS-preserving scripts") {
    std::mt19937 rng(17);
    auto toric = toric_code();
    for (int iter = 0; iter < 10; ++iter) {
        auto script = random_css_script(rng, 2, 6);
        auto st = lattice::apply(script, {toric.sigma, toric.q});
        auto scrambled = CodeDefinition::make(2, 2, st.q, st.sigma);
        REQUIRE(css2d::is_css(scrambled));
        CHECK(css2d::torsion_dimension(CssCode::make(scrambled)) == 2);
    }
}

TEST_CASE("torus homology") {
    for (int L = 1; L <= 6; ++L) {
        auto h = css2d::torus_homology(L);
        CHECK(h[0] == 1);
        CHECK(h[1] == 2);
        CHECK(h[2] == 1);
    }
    // H_1 equals the toric code's logical count
    auto finite = laurent::instantiate_torus(toric_code(), {3, 3});
    CHECK(css2d::torus_homology(3)[1] == codeanalysis::logical_qubits(finite));
}

TEST_CASE("classify_2d on the toric code") {
    auto report = css2d::classify_2d(CssCode::make(toric_code()));
    CHECK(report.toric_copies == 1);
    CHECK(report.torsion_dim == 2);
    REQUIRE(report.copies.size() == 1);
    // replay the witness and verify the block decomposition exactly
    auto st = lattice::apply(report.witness, {toric_code().sigma, 2});
    CHECK(st.sigma == report.final_sigma);
    CHECK(st.q == report.final_q);
    // the copy's generators are supported exactly on the copy's qudits
    std::vector<char> in_copy(report.final_q, 0);
    for (int u : report.copies[0].qudits) in_copy[u] = 1;
    for (int g : report.copies[0].generators)
        for (int r = 0; r < report.final_q; ++r) {
            if (in_copy[r]) continue;
            CHECK(report.final_sigma.at(r, g).is_zero());
            CHECK(report.final_sigma.at(report.final_q + r, g).is_zero());
        }
    // residual block has torsion zero
    if (report.residual_sigma.cols() > 0) {
        auto residual = CodeDefinition::make(2, 2, report.residual_q, report.residual_sigma);
        auto dim = laurent::LaurentModule(residual.sigma.dagger()).cokernel_dimension();
        REQUIRE(dim.has_value());
        CHECK(*dim == 0);
    }
}

TEST_CASE("classify_2d on a scrambled toric code") {
    std::mt19937 rng(4031);
    auto toric = toric_code();
    for (int iter = 0; iter < 6; ++iter) {
        auto script = random_css_script(rng, 2, 10);
        auto st = lattice::apply(script, {toric.sigma, toric.q});
        auto scrambled = CodeDefinition::make(2, 2, st.q, st.sigma);
        auto report = css2d::classify_2d(CssCode::make(scrambled));
        CHECK(report.toric_copies == 1);
        auto replay = lattice::apply(report.witness, {scrambled.sigma, scrambled.q});
        CHECK(replay.sigma == report.final_sigma);
        // each extracted copy is itself a toric-grade block: torsion 2, k = 2
        for (const auto& copy : report.copies) {
            PolyMatrix block(2 * static_cast<int>(copy.qudits.size()), static_cast<int>(copy.generators.size()), 2, 2);
            for (size_t r = 0; r < copy.qudits.size(); ++r)
                for (size_t c = 0; c < copy.generators.size(); ++c) {
                    block.at(static_cast<int>(r), static_cast<int>(c)) =
                        report.final_sigma.at(copy.qudits[r], copy.generators[c]);
                    block.at(static_cast<int>(r + copy.qudits.size()), static_cast<int>(c)) =
                        report.final_sigma.at(report.final_q + copy.qudits[r], copy.generators[c]);
                }
            auto block_code = CodeDefinition::make(2, 2, static_cast<int>(copy.qudits.size()), block);
            auto dim = laurent::LaurentModule(block_code.sigma.dagger()).cokernel_dimension();
            REQUIRE(dim.has_value());
            CHECK(*dim == 2);
            auto finite = laurent::instantiate_torus(block_code, {3, 3});
            CHECK(codeanalysis::logical_qubits(finite) == 2);
        }
    }
}

TEST_CASE("classify_2d on two stacked toric codes") {
    auto report = css2d::classify_2d(CssCode::make(stacked_toric()));
    CHECK(report.toric_copies == 2);
    CHECK(report.torsion_dim == 4);
    auto st = lattice::apply(report.witness, {stacked_toric().sigma, 4});
    CHECK(st.sigma == report.final_sigma);
}

TEST_CASE("classify_2d on the trivial code") {
    auto report = css2d::classify_2d(CssCode::make(trivial_code()));
    CHECK(report.toric_copies == 0);
    CHECK(report.torsion_dim == 0);
    CHECK(report.witness.moves.size() <= 1);
    CHECK(report.residual_sigma == trivial_code().sigma);
}
