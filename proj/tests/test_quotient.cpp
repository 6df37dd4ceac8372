#include "doctest.h"
#include "test_helpers.hpp"

#include "dgcolim/quotient.hpp"

using namespace dgc;
using dgt::Rng;

namespace {

// Quotient with differential-closed relations: the image of a random chain
// map is always closed under d.
QuotientComplex random_quotient(Rng& rng, int lo, int hi) {
    ChainComplex c = dgt::random_complex(rng, lo, hi, 4);
    ChainComplex x = dgt::random_complex(rng, lo, hi, 3);
    ChainMap u = dgt::random_nullhomotopic_map(rng, x, c);
    std::map<int, IntMatrix> gens;
    Window s = c.support();
    for (int n = s.lo; n <= s.hi; ++n) gens[n] = u.component(n);
    return QuotientComplex(c, gens);
}

}  // namespace

TEST_CASE("quotient groups and homology on pointed examples") {
    // Z / 2Z concentrated in degree 0.
    QuotientComplex zmod2(sphere(0), {{0, IntMatrix::from_rows({{2}})}});
    CHECK(zmod2.group(0) == GradedAbelianGroup::Part{0, {2}});
    CHECK(!zmod2.degreewise_free());
    CHECK(zmod2.homology().at(0) == GradedAbelianGroup::Part{0, {2}});

    // Z^2 / (1,2): free of rank one.
    ChainComplex plane({{0, 2}}, {});
    QuotientComplex line(plane, {{0, IntMatrix::from_rows({{1}, {2}})}});
    CHECK(line.group(0) == GradedAbelianGroup::Part{1, {}});
    CHECK(line.degreewise_free());
    CHECK(line.homology().at(0) == GradedAbelianGroup::Part{1, {}});

    // Z^2 / (2,0): mixed group.
    QuotientComplex mixed(plane, {{0, IntMatrix::from_rows({{2}, {0}})}});
    CHECK(mixed.group(0) == GradedAbelianGroup::Part{1, {2}});
    CHECK(mixed.homology().at(0) == GradedAbelianGroup::Part{1, {2}});

    // Quotient of a disc by itself vanishes.
    QuotientComplex trivial(disc(0), {{0, IntMatrix::identity(1)},
                                      {1, IntMatrix::identity(1)}});
    CHECK(trivial.homology().trivial());
    CHECK(trivial.group(0).trivial());
}

TEST_CASE("relations must be closed under the differential") {
    CHECK_THROWS_AS(QuotientComplex(disc(0), {{1, IntMatrix::from_rows({{2}})}}),
                    std::invalid_argument);
    CHECK_NOTHROW(QuotientComplex(disc(0), {{1, IntMatrix::from_rows({{1}})},
                                            {0, IntMatrix::from_rows({{1}})}}));
    // Shape mismatch is named.
    CHECK_THROWS_AS(QuotientComplex(sphere(0), {{0, IntMatrix::identity(2)}}),
                    std::invalid_argument);
}

TEST_CASE("free models match quotient homology on both branches") {
    Rng rng(211);
    int cone_seen = 0, exact_seen = 0;
    for (int trial = 0; trial < 12; ++trial) {
        QuotientComplex q = random_quotient(rng, 0, 2);
        QuotientModel m = quotient_model(q);
        CHECK(validate_complex(m.complex).ok);
        CHECK(validate_map(m.from_cover).ok);
        CHECK(homology(m.complex) == q.homology());
        if (m.exact) {
            ++exact_seen;
            Window s = q.support();
            for (int n = s.lo; n <= s.hi; ++n) {
                auto it = m.section.find(n);
                if (it == m.section.end()) continue;
                // Projection kills relations and splits the section.
                IntMatrix pr = m.from_cover.component(n);
                CHECK((pr * q.relations(n)).is_zero());
                if (it->second.cols() > 0)
                    CHECK((pr * it->second).is_identity());
            }
        } else {
            ++cone_seen;
        }
    }
    CHECK(exact_seen > 0);
    CHECK(cone_seen > 0);
}

TEST_CASE("cone model of a torsion quotient is the expected small complex") {
    QuotientComplex zmod2(sphere(0), {{0, IntMatrix::from_rows({{2}})}});
    QuotientModel m = quotient_model(zmod2);
    CHECK(!m.exact);
    CHECK(m.complex.rank(0) == 1);
    CHECK(m.complex.rank(1) == 1);
    CHECK(m.complex.diff(1) == IntMatrix::from_rows({{2}}));
}

TEST_CASE("maps out of a quotient factor the cover map") {
    // Fold Z^2 onto Z; kernel is the antidiagonal relation.
    ChainComplex plane({{0, 2}}, {});
    QuotientComplex q(plane, {{0, IntMatrix::from_rows({{1}, {-1}})}});
    QuotientModel m = quotient_model(q);
    REQUIRE(m.exact);
    ChainMap fold(plane, sphere(0), {{0, IntMatrix::from_rows({{1, 1}})}});
    ChainMap out = map_from_quotient(q, m, fold);
    CHECK(validate_map(out).ok);
    // model -> Z is an isomorphism here.
    CHECK(out.component(0).rows() == 1);
    Integer e = out.component(0).at(0, 0);
    CHECK((e == 1 || e == -1));

    // A cover map that does not kill the relations is rejected.
    ChainMap bad(plane, sphere(0), {{0, IntMatrix::from_rows({{1, 0}})}});
    CHECK_THROWS_AS(map_from_quotient(q, m, bad), std::invalid_argument);
}

TEST_CASE("maps into a torsion quotient absorb the commuting defect") {
    // Cover: Z in degrees 1 and 0 with zero differential; relations 2 in
    // degree 0. A lift whose defect is divisible by 2 corrects into the
    // cone coordinate.
    ChainComplex c({{0, 1}, {1, 1}}, {});
    QuotientComplex q(c, {{0, IntMatrix::from_rows({{2}})}});
    QuotientModel m = quotient_model(q);
    REQUIRE(!m.exact);
    // x: disc(0), lift g sends the top cell to the degree-1 generator and
    // the bottom cell to zero; defect d g - g d = -2 in degree 1... use
    // g(bottom) = 0, g(top) = 1: g d(top) = g(bottom) = 0, d g(top) = 0.
    // That commutes strictly; perturb the bottom instead.
    ChainMap g(disc(0), c,
               {{1, IntMatrix::from_rows({{1}})},
                {0, IntMatrix::from_rows({{2}})}});
    // Defect at degree 1: g0 d1 - d1 g1 = 2 - 0 = 2, inside the relations.
    ChainMap into = map_into_quotient(q, m, g);
    CHECK(validate_map(into).ok);

    ChainMap stray(disc(0), c,
                   {{1, IntMatrix::from_rows({{1}})},
                    {0, IntMatrix::from_rows({{1}})}});
    CHECK_THROWS_AS(map_into_quotient(q, m, stray), std::invalid_argument);
}

TEST_CASE("induced maps compose exactly on exact models") {
    Rng rng(223);
    int done = 0;
    while (done < 4) {
        ChainComplex c = dgt::random_complex(rng, 0, 2, 4);
        ChainComplex x = dgt::random_complex(rng, 0, 2, 2);
        ChainMap u = dgt::random_nullhomotopic_map(rng, x, c);
        ChainMap v = dgt::random_nullhomotopic_map(rng, x, c);
        std::map<int, IntMatrix> gu, guv;
        Window s = c.support();
        for (int n = s.lo; n <= s.hi; ++n) {
            gu[n] = u.component(n);
            guv[n] = IntMatrix::hcat(u.component(n), v.component(n));
        }
        QuotientComplex q(c, gu), p(c, guv);
        QuotientModel mq = quotient_model(q), mp = quotient_model(p);
        if (!mq.exact || !mp.exact) continue;
        ++done;
        ChainMap step = induced_quotient_map(q, mq, p, mp, identity_map(c));
        CHECK(validate_map(step).ok);
        // Composing with itself via the identity factors consistently:
        // model(q) -> model(p) equals the map induced in one step.
        ChainMap again = induced_quotient_map(q, mq, p, mp, identity_map(c));
        CHECK(step == again);
        // Quotient homology can only shrink along extra relations in the
        // sense that the induced map is well defined; sanity: valid map.
        CHECK(step.source() == mq.complex);
        CHECK(step.target() == mp.complex);
    }
}

TEST_CASE("induced maps bridge exact and cone models") {
    // q: free quotient Z^2/(1,-1); p: torsion quotient Z^2/(2,0) of the
    // same cover; identity carries R_q into... it does not, so use the
    // doubling map which sends (1,-1) to (2,-2); that still is not inside
    // (2,0). Instead take p with relations spanned by both columns.
    ChainComplex plane({{0, 2}}, {});
    QuotientComplex q(plane, {{0, IntMatrix::from_rows({{1}, {-1}})}});
    QuotientComplex p(plane, {{0, IntMatrix::from_rows({{1, 2}, {-1, 0}})}});
    QuotientModel mq = quotient_model(q), mp = quotient_model(p);
    REQUIRE(mq.exact);
    REQUIRE(!mp.exact);
    CHECK(carries_relations(q, p, identity_map(plane)));
    ChainMap f = induced_quotient_map(q, mq, p, mp, identity_map(plane));
    CHECK(validate_map(f).ok);
    CHECK(f.source() == mq.complex);
    CHECK(f.target() == mp.complex);
    // The other direction: cone source to exact target needs a map that
    // kills the cone's relations; quotient by everything gives the zero
    // target model.
    QuotientComplex all(plane, {{0, IntMatrix::identity(2)}});
    QuotientModel ma = quotient_model(all);
    REQUIRE(ma.exact);
    CHECK(carries_relations(p, all, identity_map(plane)));
    ChainMap g = induced_quotient_map(p, mp, all, ma, identity_map(plane));
    CHECK(validate_map(g).ok);
    CHECK(g.target().is_zero_complex());
}

TEST_CASE("relation-aware equality and carrying checks") {
    ChainComplex plane({{0, 2}}, {});
    QuotientComplex q(plane, {{0, IntMatrix::from_rows({{1}, {-1}})}});
    ChainMap a = identity_map(plane);
    ChainMap b(plane, plane, {{0, IntMatrix::from_rows({{0, 0}, {1, 1}})}});
    // a and b differ by columns of (1,-1): equal in the quotient.
    CHECK(equal_mod_relations(q, a, b));
    ChainMap c(plane, plane, {{0, IntMatrix::from_rows({{0, 1}, {1, 1}})}});
    CHECK(!equal_mod_relations(q, a, c));
}

TEST_CASE("quotient map isomorphism verdicts") {
    ChainComplex plane({{0, 2}}, {});
    QuotientComplex q(plane, {{0, IntMatrix::from_rows({{1}, {-1}})}});
    ChainMap fold(plane, sphere(0), {{0, IntMatrix::from_rows({{1, 1}})}});
    CHECK(quotient_map_iso(q, fold).ok);
    ChainMap doubled(plane, sphere(0), {{0, IntMatrix::from_rows({{2, 2}})}});
    ValidationResult r = quotient_map_iso(q, doubled);
    CHECK(!r.ok);
    CHECK(r.detail.find("surjective") != std::string::npos);
    ChainMap leaky(plane, sphere(0), {{0, IntMatrix::from_rows({{1, 0}})}});
    CHECK_THROWS_AS(quotient_map_iso(q, leaky), std::invalid_argument);
}

TEST_CASE("quotient cofibration surrogate") {
    ChainComplex plane({{0, 2}}, {});
    // Free quotient embeds: Z^2/(1,-1) -> Z^2 via (x,y) -> (x+y, 0).
    QuotientComplex q(plane, {{0, IntMatrix::from_rows({{1}, {-1}})}});
    ChainMap emb(plane, plane, {{0, IntMatrix::from_rows({{1, 1}, {0, 0}})}});
    CHECK(quotient_map_cofibration(q, emb).ok);
    // Torsion quotients never split-inject into a free target.
    QuotientComplex zmod2(sphere(0), {{0, IntMatrix::from_rows({{2}})}});
    ChainMap zero = zero_map(sphere(0), sphere(0));
    CofibrationReport r = quotient_map_cofibration(zmod2, zero);
    CHECK(!r.ok);
    CHECK(r.failing_degree == 0);
}

TEST_CASE("random quotients: model homology equals lattice homology") {
    Rng rng(227);
    for (int trial = 0; trial < 10; ++trial) {
        QuotientComplex q = random_quotient(rng, -1, 2);
        QuotientModel m = quotient_model(q);
        CHECK(homology(m.complex) == q.homology());
        // Quotient groups themselves: free covers with no relations give
        // back the cover ranks.
        Window s = q.support();
        for (int n = s.lo; n <= s.hi; ++n) {
            auto g = q.group(n);
            CHECK(g.free_rank + static_cast<long>(q.relations(n).cols()) >=
                  0);  // shape sanity
        }
    }
}
