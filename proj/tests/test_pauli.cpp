#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qcalg/pauli.hpp"

using namespace qcalg;
using pauli::GateScript;
using pauli::PauliVector;

static GateScript random_script(std::mt19937& rng, int n, int p, int len) {
    GateScript s;
    std::uniform_int_distribution<int> kind(0, n >= 2 ? 3 : 2);
    std::uniform_int_distribution<int> qd(0, n - 1);
    std::uniform_int_distribution<int> coef(1, p - 1);
    for (int i = 0; i < len; ++i) {
        switch (kind(rng)) {
            case 0: s.h(qd(rng)); break;
            case 1: s.s(qd(rng), coef(rng)); break;
            case 2: s.r(qd(rng), coef(rng)); break;
            default: {
                int a = qd(rng), b = qd(rng);
                if (a == b) b = (b + 1) % n;
                s.cx(a, b, coef(rng));
            }
        }
    }
    return s;
}

TEST_CASE("symplectic product") {
    auto X1 = PauliVector::unit_x(1, 2, 0);
    auto Z1 = PauliVector::unit_z(1, 2, 0);
    CHECK(pauli::symplectic_product(X1, Z1) == 1);  // anti-commuting pair
    CHECK(pauli::symplectic_product(X1, X1) == 0);
    CHECK(pauli::symplectic_product(Z1, Z1) == 0);

    auto X1_3 = PauliVector::unit_x(1, 3, 0);
    auto Z1_3 = PauliVector::unit_z(1, 3, 0);
    CHECK(pauli::symplectic_product(X1_3, Z1_3) == 1);
    CHECK(pauli::symplectic_product(Z1_3, X1_3) == 2);

    CHECK_THROWS(pauli::symplectic_product(X1, X1_3));
}

TEST_CASE("is_isotropic") {
    auto Z1 = PauliVector::unit_z(2, 2, 0);
    auto Z2 = PauliVector::unit_z(2, 2, 1);
    CHECK(pauli::is_isotropic({Z1, Z2}));
    auto X1 = PauliVector::unit_x(2, 2, 0);
    CHECK_FALSE(pauli::is_isotropic({X1, Z1}));
}

TEST_CASE("apply_script elementary semantics") {
    auto X1 = PauliVector::unit_x(2, 2, 0);
    GateScript empty;
    CHECK(pauli::apply_script(empty, X1) == X1);

    GateScript h;
    h.h(0);
    CHECK(pauli::apply_script(h, X1) == PauliVector::unit_z(2, 2, 0));

    // p = 3: H maps e_1 to -e_{n+1}
    auto e1 = PauliVector::unit_x(1, 3, 0);
    GateScript h3;
    h3.h(0);
    auto img = pauli::apply_script(h3, e1);
    CHECK(img.x(0) == 0);
    CHECK(img.z(0) == 2);

    GateScript cx;
    cx.cx(0, 1, 1);
    auto out = pauli::apply_script(cx, X1);
    CHECK(out.x(0) == 1);
    CHECK(out.x(1) == 1);
    CHECK(out.z(0) == 0);

    GateScript oob;
    oob.h(5);
    CHECK_THROWS(pauli::apply_script(oob, X1));
}

TEST_CASE("scripts preserve the symplectic product") {
    std::mt19937 rng(99);
    for (int p : {2, 3, 5}) {
        for (int iter = 0; iter < 30; ++iter) {
            int n = 1 + iter % 4;
            auto s = random_script(rng, n, p, 12);
            std::uniform_int_distribution<int> d(0, p - 1);
            PauliVector u(n, p), v(n, p);
            for (auto& c : u.coords) c = d(rng);
            for (auto& c : v.coords) c = d(rng);
            int before = pauli::symplectic_product(u, v);
            int after = pauli::symplectic_product(pauli::apply_script(s, u), pauli::apply_script(s, v));
            CHECK(before == after);
            CHECK(pauli::is_symplectic(pauli::script_matrix(s, n, p)));
        }
    }
}

TEST_CASE("script inversion and text round-trip") {
    std::mt19937 rng(2024);
    for (int p : {2, 3}) {
        auto s = random_script(rng, 3, p, 15);
        auto m = pauli::script_matrix(s, 3, p);
        auto mi = pauli::script_matrix(s.inverted(p), 3, p);
        CHECK(m * mi == gf::Matrix::identity(6, p));

        auto round = GateScript::from_text(s.to_text());
        CHECK(pauli::script_matrix(round, 3, p) == m);
    }
}

TEST_CASE("canonicalize_isotropic examples") {
    // {X_1, X_2}: already canonical
    auto [s0, r0] = pauli::canonicalize_isotropic({PauliVector::unit_x(2, 2, 0), PauliVector::unit_x(2, 2, 1)});
    CHECK(s0.empty());
    CHECK(r0 == 2);

    // {Z_1} on one qubit: a single Hadamard
    auto [s1, r1] = pauli::canonicalize_isotropic({PauliVector::unit_z(1, 2, 0)});
    REQUIRE(s1.moves.size() == 1);
    CHECK(s1.moves[0].kind == pauli::MoveKind::Hadamard);
    CHECK(s1.moves[0].i == 0);
    CHECK(r1 == 1);

    // Bell stabilizers {X1X2, Z1Z2}: verify by applying the script
    PauliVector xx(2, 2), zz(2, 2);
    xx.set_x(0, 1);
    xx.set_x(1, 1);
    zz.set_z(0, 1);
    zz.set_z(1, 1);
    auto [s2, r2] = pauli::canonicalize_isotropic({xx, zz});
    CHECK(r2 == 2);
    auto a = pauli::apply_script(s2, xx);
    auto b = pauli::apply_script(s2, zz);
    auto rr = gf::rref(pauli::generator_matrix({a, b}));
    CHECK(rr.rank == 2);
    CHECK(gf::in_row_space(rr, PauliVector::unit_x(2, 2, 0).coords));
    CHECK(gf::in_row_space(rr, PauliVector::unit_x(2, 2, 1).coords));

    CHECK_THROWS(pauli::canonicalize_isotropic({PauliVector::unit_x(1, 2, 0), PauliVector::unit_z(1, 2, 0)}));
}

TEST_CASE("canonicalize_isotropic on random isotropic sets") {
    std::mt19937 rng(5150);
    for (int p : {2, 3}) {
        for (int iter = 0; iter < 40; ++iter) {
            int n = 2 + iter % 3;
            int s = 1 + iter % n;
            std::vector<PauliVector> gens;
            for (int i = 0; i < s; ++i) gens.push_back(PauliVector::unit_x(n, p, i));
            auto scramble = random_script(rng, n, p, 14);
            for (auto& g : gens) g = pauli::apply_script(scramble, g);
            // throw in a dependent generator
            if (s >= 2) {
                PauliVector dep(n, p);
                for (int c = 0; c < 2 * n; ++c) dep.coords[c] = gf::fp_add(gens[0].coords[c], gens[1].coords[c], p);
                gens.push_back(dep);
            }
            auto [script, rank] = pauli::canonicalize_isotropic(gens);
            CHECK(rank == s);
            std::vector<std::vector<int>> rows;
            for (auto& g : gens) rows.push_back(pauli::apply_script(script, g).coords);
            for (auto& row : rows)
                for (int i = n; i < 2 * n; ++i) CHECK(row[i] == 0);  // zero Z-part
            auto m = pauli::generator_matrix(gens);  // rebuild transformed matrix
            for (int r = 0; r < m.rows(); ++r)
                for (int c = 0; c < m.cols(); ++c) m.set(r, c, rows[r][c]);
            auto rr = gf::rref(m);
            CHECK(rr.rank == s);
            for (int i = 0; i < s; ++i) {
                std::vector<int> e(2 * n, 0);
                e[i] = 1;
                CHECK(gf::in_row_space(rr, e));
            }
        }
    }
}

TEST_CASE("decompose_symplectic examples and round-trips") {
    CHECK(pauli::decompose_symplectic(gf::Matrix::identity(2, 2)).empty());

    // H matrix on one qubit
    gf::Matrix h(2, 2, 2);
    h.set(0, 1, 1);
    h.set(1, 0, -1);
    auto hs = pauli::decompose_symplectic(h);
    CHECK(pauli::script_matrix(hs, 1, 2) == h);

    std::mt19937 rng(31337);
    for (auto [n, p] : std::vector<std::pair<int, int>>{{1, 2}, {2, 2}, {3, 2}, {1, 3}, {2, 3}}) {
        for (int iter = 0; iter < 25; ++iter) {
            auto s = random_script(rng, n, p, 20);
            auto a = pauli::script_matrix(s, n, p);
            auto script = pauli::decompose_symplectic(a);
            CHECK(pauli::script_matrix(script, n, p) == a);
        }
    }

    gf::Matrix not_symp = gf::Matrix::identity(2, 2);
    not_symp.set(0, 1, 1);
    not_symp.set(1, 0, 1);
    CHECK_THROWS(pauli::decompose_symplectic(not_symp));
}
