#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "qcalg/smith.hpp"

using namespace qcalg;
using smith::IntMat;
using smith::PolyMat;
using smith::UPoly;

TEST_CASE("upoly basics") {
    auto f = UPoly::monomial(2, 2, 1) + UPoly::monomial(2, 1, 1) + UPoly::constant(2, 1);  // x^2+x+1
    CHECK(f.degree() == 2);
    auto [q, r] = smith::divmod(UPoly::monomial(2, 3, 1) - UPoly::constant(2, 1), f);  // x^3-1
    CHECK(r.is_zero());
    CHECK(q == UPoly::monomial(2, 1, 1) + UPoly::constant(2, 1));  // x + 1

    CHECK(smith::gcd(f * q, f).monic() == f.monic());
    CHECK(smith::divides(f, f * q));
    CHECK_FALSE(smith::divides(f, q));

    auto lf = laurent::LaurentPoly(3, 1);
    lf.add_term({-1}, 2);
    lf.add_term({1}, 1);
    auto uf = UPoly::from_laurent(lf);  // 2 + x^2 after unit shift
    CHECK(uf.degree() == 2);
    CHECK(uf.coeff(0) == 2);
    CHECK(uf.coeff(2) == 1);
}

TEST_CASE("smith over Z: examples") {
    auto id = smith::smith_normal_form({{1, 0}, {0, 1}});
    CHECK(id.divisors == std::vector<long long>{1, 1});

    // oracle: I_1 = gcd of entries = 2, I_2 = |det| = 8, so d = (2, 4)
    IntMat m = {{2, 4}, {6, 8}};
    auto ideals = smith::determinantal_ideals(m, 2);
    CHECK(ideals == std::vector<long long>{2, 8});
    auto snf = smith::smith_normal_form(m);
    CHECK(snf.divisors == std::vector<long long>{2, 4});
}

TEST_CASE("smith over F_2[x']: companion expansion of 1 + x + x^2 at b = 3") {
    // worked matrix [[1, x, x], [1, 1, x], [1, 1, 1]]
    auto one = UPoly::constant(2, 1);
    auto x = UPoly::monomial(2, 1, 1);
    PolyMat m = {{one, x, x}, {one, one, x}, {one, one, one}};
    auto snf = smith::smith_normal_form(m);
    REQUIRE(snf.divisors.size() == 3);
    auto xm1 = (x + one).monic();
    CHECK(snf.divisors[0] == one);
    CHECK(snf.divisors[1] == xm1);
    CHECK(snf.divisors[2] == xm1);
}

TEST_CASE("abelian group decomposition") {
    auto a = smith::abelian_group_decomposition({{6}});
    CHECK(a.torsion == std::vector<long long>{6});
    CHECK(a.free_rank == 0);

    auto b = smith::abelian_group_decomposition({{2}, {0}});
    CHECK(b.torsion == std::vector<long long>{2});
    CHECK(b.free_rank == 1);

    auto c = smith::abelian_group_decomposition({{0, 0}, {0, 0}});
    CHECK(c.torsion.empty());
    CHECK(c.free_rank == 2);
}

TEST_CASE("smith invariants on random integer matrices") {
    std::mt19937 rng(1002);
    std::uniform_int_distribution<int> val(-9, 9), dim(1, 4);
    for (int iter = 0; iter < 120; ++iter) {
        int rows = dim(rng), cols = dim(rng);
        IntMat m(rows, std::vector<long long>(cols));
        for (auto& row : m)
            for (auto& v : row) v = val(rng);
        auto snf = smith::smith_normal_form(m);
        for (size_t i = 0; i + 1 < snf.divisors.size(); ++i) CHECK(snf.divisors[i + 1] % snf.divisors[i] == 0);
        // determinantal cross-check: prod_{i<=s} d_i generates I_s up to units
        auto ideals = smith::determinantal_ideals(m, std::min(rows, cols));
        long long prod = 1;
        for (size_t s = 0; s < ideals.size(); ++s) {
            if (s < snf.divisors.size()) {
                prod *= snf.divisors[s];
                CHECK(prod == ideals[s]);
            } else {
                CHECK(ideals[s] == 0);
            }
        }
        // invertibility: |det| = 1
        CHECK(std::abs(smith::int_det(snf.a)) == 1);
        CHECK(std::abs(smith::int_det(snf.b)) == 1);
        // uniqueness under shuffled presentation
        IntMat shuffled = m;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& row : shuffled) std::reverse(row.begin(), row.end());
        CHECK(smith::smith_normal_form(shuffled).divisors == snf.divisors);
    }
}

TEST_CASE("smith invariants on random polynomial matrices") {
    std::mt19937 rng(2003);
    std::uniform_int_distribution<int> deg(0, 2), coef(0, 1), dim(1, 4);
    auto random_poly = [&]() {
        UPoly f(2);
        int d = deg(rng);
        for (int i = 0; i <= d; ++i)
            if (coef(rng)) f = f + UPoly::monomial(2, i, 1);
        return f;
    };
    for (int iter = 0; iter < 60; ++iter) {
        int rows = dim(rng), cols = dim(rng);
        PolyMat m(rows, std::vector<UPoly>(cols, UPoly(2)));
        for (auto& row : m)
            for (auto& v : row) v = random_poly();
        auto snf = smith::smith_normal_form(m);
        for (auto& d : snf.divisors)
            if (!d.is_zero()) CHECK(d.leading() == 1);  // monic
        for (size_t i = 0; i + 1 < snf.divisors.size(); ++i) CHECK(smith::divides(snf.divisors[i], snf.divisors[i + 1]));
        auto ideals = smith::determinantal_ideals(m, std::min(rows, cols));
        UPoly prod = UPoly::constant(2, 1);
        for (size_t s = 0; s < ideals.size(); ++s) {
            if (s < snf.divisors.size()) {
                prod = prod * snf.divisors[s];
                CHECK(prod.monic() == ideals[s].monic());
            } else {
                CHECK(ideals[s].is_zero());
            }
        }
        // unit determinants
        CHECK(smith::poly_det(snf.a).degree() == 0);
        CHECK(smith::poly_det(snf.b).degree() == 0);
        IntMat dummy;
        (void)dummy;
        PolyMat shuffled = m;
        std::shuffle(shuffled.begin(), shuffled.end(), rng);
        for (auto& row : shuffled) std::reverse(row.begin(), row.end());
        auto snf2 = smith::smith_normal_form(shuffled);
        CHECK(snf2.divisors.size() == snf.divisors.size());
        for (size_t i = 0; i < snf.divisors.size(); ++i) CHECK(snf2.divisors[i] == snf.divisors[i]);
    }
}
