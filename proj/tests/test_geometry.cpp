#include <doctest.h>

#include <random>

#include "koenigs/geometry.hpp"
#include "koenigs/models.hpp"

using namespace koenigs;

TEST_CASE("comb domain: A_phi = {k + it : t >= -k}") {
    const KoenigsDomain om = ex_non_non_domain();
    CHECK(om.exactness() == Exactness::Exact);
    CHECK(contains_translate(om, 1.0));
    CHECK(contains_translate(om, cplx(0, 1)));
    CHECK(contains_translate(om, cplx(-2, 2)));
    CHECK(contains_translate(om, cplx(3, -3)));
    CHECK_FALSE(contains_translate(om, 0.5));
    CHECK_FALSE(contains_translate(om, cplx(-2, 1.9)));
    CHECK_FALSE(contains_translate(om, cplx(0.25, 4)));
}

TEST_CASE("A_phi is closed under addition on random members") {
    const KoenigsDomain om = ex_non_non_domain();
    std::mt19937_64 rng(42);
    std::uniform_int_distribution<int> k(-4, 4);
    std::uniform_real_distribution<double> t(0, 3);
    for (int trial = 0; trial < 40; ++trial) {
        const int k1 = k(rng), k2 = k(rng);
        const cplx c1(k1, -k1 + t(rng)), c2(k2, -k2 + t(rng));
        REQUIRE(contains_translate(om, c1));
        REQUIRE(contains_translate(om, c2));
        CHECK(contains_translate(om, c1 + c2));
    }
}

TEST_CASE("negative reals are never members of non-automorphic domains") {
    for (const KoenigsDomain& om : {ex_non_non_domain(), ex_z_non_abelian_domain(), ex_again_domain(),
                                    build_reciprocal_domain({})}) {
        CHECK(contains_translate(om, 1.0));
        for (double x : {-0.01, -0.5, -1.0, -2.7}) CHECK_FALSE(contains_translate(om, x));
    }
}

TEST_CASE("strip bases only admit real members") {
    const KoenigsDomain om = build_reciprocal_domain({{}, {2.5}});
    std::vector<cplx> grid;
    for (int i = 0; i <= 20; ++i)
        for (int j = -4; j <= 4; ++j) grid.emplace_back(-1 + 0.25 * i, 0.05 * j);
    int members = 0;
    for (const auto& p : semigroup_membership_scan(om, grid)) {
        if (p.membership != Membership::Member) continue;
        ++members;
        CHECK(std::abs(p.c.imag()) < 1e-12);
    }
    CHECK(members > 0);
}

TEST_CASE("reciprocal domain reproduces A on the real axis") {
    const ReciprocalSet A{{1.5, 2.5, 3.5}, {4}};
    const KoenigsDomain om = build_reciprocal_domain(A);
    for (double x : {0.0, 1.0, 1.5, 2.0, 2.5, 3.0, 3.5, 4.2, 7.77}) CHECK(contains_translate(om, x));
    for (double x : {0.5, 1.25, 3.25, -1.5}) CHECK_FALSE(contains_translate(om, x));
    CHECK_THROWS_AS(build_reciprocal_domain({{0.7}, {}}), Error);  // 0.7 + 0.7 missing
}

TEST_CASE("starlike at infinity iff no sector gap") {
    const KoenigsDomain z = ex_z_non_abelian_domain(), nn = ex_non_non_domain();
    CHECK(starlike_at_infinity(z));
    CHECK_FALSE(sector_gap(z, 0.5, 0.3, 20));
    CHECK_FALSE(starlike_at_infinity(nn));
    CHECK(sector_gap(nn, 0.5, 0.3, 20));
    CHECK(starlike_at_infinity(build_reciprocal_domain({{}, {0}})));
    CHECK_FALSE(starlike_at_infinity(build_reciprocal_domain({})));
}

TEST_CASE("union of backward translates") {
    CHECK(base_of_union(ex_non_non_domain()) == UnionClass::FullPlane);
    CHECK(base_of_union(ex_z_non_abelian_domain()) == UnionClass::ContainsUpperHalfPlane);
    CHECK(base_of_union(ex_again_domain()) == UnionClass::ContainsUpperHalfPlane);
    CHECK(base_of_union(build_reciprocal_domain({})) == UnionClass::StripLike);
}

TEST_CASE("validation rejects domains that are not simply connected") {
    KoenigsDomain d{BaseSpace::plane(), {SlitFamily{0, 0, AffineForm::constant(1), AffineForm::constant(2), IndexSet::single(0)}}};
    CHECK_THROWS_AS(d.validate(), Error);
    KoenigsDomain s{BaseSpace::strip(1, 0), {}};
    CHECK_THROWS_AS(s.validate(), Error);
}

TEST_CASE("sampled curves give approximate answers") {
    const KoenigsDomain om = ex_a_neq_astar_domain(200);
    CHECK(om.exactness() == Exactness::Sampled);
    const TranslateReport r = translate_report(om, cplx(0, 0.05));
    CHECK(r.approximate);
    CHECK(r.membership == Membership::NonMember);
    CHECK(translate_report(om, 1.0).membership == Membership::Member);
}
