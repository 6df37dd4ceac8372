#include "dgcolim/enriched.hpp"

#include <doctest.h>

#include "test_helpers.hpp"

using namespace dgc;

namespace {

GradedAbelianGroup::Part part(long free_rank, std::vector<Integer> torsion = {}) {
    return GradedAbelianGroup::Part{free_rank, std::move(torsion)};
}

ChainComplex moore2() {
    return ChainComplex({{0, 1}, {1, 1}},
                        {{1, IntMatrix::from_rows({{2}})}});
}

// Two objects, two parallel arrows x -> y.
FiniteCategory parallel_pair() {
    FiniteCategory cat;
    cat.objects = {"x", "y"};
    cat.hom = {{{"id_x"}, {"f", "g"}}, {{}, {"id_y"}}};
    cat.identity = {0, 0};
    cat.composition[{0, 0, 0}] = {{0}};
    cat.composition[{0, 0, 1}] = {{0}, {1}};
    cat.composition[{0, 1, 1}] = {{0, 1}};
    cat.composition[{1, 1, 1}] = {{0}};
    return cat;
}

// Two objects with mutually inverse arrows f: x -> y, g: y -> x.
FiniteCategory iso_pair() {
    FiniteCategory cat;
    cat.objects = {"x", "y"};
    cat.hom = {{{"id_x"}, {"f"}}, {{"g"}, {"id_y"}}};
    cat.identity = {0, 0};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) cat.composition[{i, j, k}] = {{0}};
    return cat;
}

// One object with a genuinely non-associative multiplication table.
FiniteCategory skew_monoid() {
    FiniteCategory cat;
    cat.objects = {"x"};
    cat.hom = {{{"id_x", "a", "b"}}};
    cat.identity = {0};
    cat.composition[{0, 0, 0}] = {{0, 1, 2}, {1, 2, 0}, {2, 1, 2}};
    return cat;
}

bool has_initial_object(const FiniteCategory& cat) {
    for (int p = 0; p < cat.size(); ++p) {
        bool initial = true;
        for (int q = 0; q < cat.size(); ++q)
            if (cat.morphisms(p, q).size() != 1) initial = false;
        if (initial) return true;
    }
    return false;
}

bool point_homology(const ChainComplex& c) {
    GradedAbelianGroup h = homology(c);
    return h.at(0) == part(1) && h.parts.size() == 1;
}

}  // namespace

TEST_CASE("finite category builders validate") {
    for (const FiniteCategory& cat :
         {discrete_category({"u", "v"}), arrow_category(), span_category(),
          poset_category({"0", "1", "2"}, {{0, 1}, {1, 2}}), parallel_pair(),
          iso_pair()}) {
        ValidationResult v = validate_category(cat);
        CHECK(v.ok);
        CHECK(v.detail.empty());
    }
    FiniteCategory tri = poset_category({"0", "1", "2"}, {{0, 1}, {1, 2}});
    CHECK(tri.morphisms(0, 2).size() == 1);  // closure fills 0 <= 2
    CHECK(tri.morphisms(2, 0).empty());
    CHECK(tri.morphisms(1, 1) == std::vector<std::string>{"id_1"});
    CHECK(span_category().morphisms(0, 1).size() == 1);
    CHECK(span_category().morphisms(1, 2).empty());
}

TEST_CASE("category validation names the failing axiom") {
    ValidationResult v = validate_category(skew_monoid());
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "associativity fails for (a, a, a)");

    FiniteCategory broken = arrow_category();
    broken.composition.erase({0, 0, 1});
    v = validate_category(broken);
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "missing composition table at (0, 0, 1)");

    FiniteCategory bad_id = arrow_category();
    bad_id.identity[0] = 3;
    CHECK(validate_category(bad_id).detail == "identity index out of range at 0");
}

TEST_CASE("loop freeness") {
    CHECK(is_loop_free(arrow_category()));
    CHECK(is_loop_free(span_category()));
    CHECK(is_loop_free(parallel_pair()));
    CHECK(is_loop_free(discrete_category({"u"})));
    CHECK_FALSE(is_loop_free(iso_pair()));
    CHECK_FALSE(is_loop_free(skew_monoid()));
}

TEST_CASE("under categories have an initial object") {
    for (const FiniteCategory& cat :
         {arrow_category(), span_category(), parallel_pair(),
          poset_category({"0", "1", "2", "3"},
                         {{0, 1}, {0, 2}, {1, 3}, {2, 3}})}) {
        for (int i = 0; i < cat.size(); ++i) {
            FiniteCategory u = under_category(i, cat);
            CHECK(validate_category(u).ok);
            CHECK(has_initial_object(u));
        }
    }
    FiniteCategory u = under_category(0, parallel_pair());
    CHECK(u.objects == std::vector<std::string>{"x/id_x", "y/f", "y/g"});
    CHECK(u.morphisms(0, 1).size() == 1);
    CHECK(u.morphisms(1, 2).empty());  // nothing carries f to g
}

TEST_CASE("nerves of the arrow and the triangle") {
    SimplicialSet n1 = nerve(arrow_category());
    CHECK_FALSE(n1.truncated);
    CHECK(n1.dimension() == 1);
    CHECK(n1.simplices[0].size() == 2);
    CHECK(n1.simplices[1].size() == 1);
    CHECK(validate_simplicial_set(n1).ok);
    CHECK(point_homology(zk_chains(n1)));

    SimplicialSet n2 = nerve(poset_category({"0", "1", "2"}, {{0, 1}, {1, 2}}));
    CHECK(n2.dimension() == 2);
    CHECK(n2.simplices[0].size() == 3);
    CHECK(n2.simplices[1].size() == 3);
    CHECK(n2.simplices[2].size() == 1);
    CHECK(validate_simplicial_set(n2).ok);
    CHECK(point_homology(zk_chains(n2)));

    // a large enough cap changes nothing and does not set the flag
    SimplicialSet capped = nerve(arrow_category(), 5);
    CHECK_FALSE(capped.truncated);
    CHECK(capped.dimension() == 1);
}

TEST_CASE("nerve of a category with isomorphisms must be capped") {
    CHECK_THROWS_AS(nerve(iso_pair()), std::invalid_argument);
    SimplicialSet k = nerve(iso_pair(), 3);
    CHECK(k.truncated);
    CHECK(k.cap == 3);
    CHECK(k.dimension() == 3);
    for (int d = 1; d <= 3; ++d)
        CHECK(k.simplices[static_cast<std::size_t>(d)].size() == 2);
    CHECK(validate_simplicial_set(k).ok);
    // inner faces hitting an identity composite are degenerate
    CHECK(k.faces[2][0][1] == SimplicialSet::no_face);
    GradedAbelianGroup h = homology(zk_chains(k), Window{0, 1});
    CHECK(h.at(0) == part(1));
    CHECK(h.at(1) == part(0));
}

TEST_CASE("nerve of the parallel pair is a circle") {
    SimplicialSet k = nerve(parallel_pair());
    CHECK_FALSE(k.truncated);
    CHECK(k.dimension() == 1);
    CHECK(k.simplices[1].size() == 2);
    GradedAbelianGroup h = homology(zk_chains(k));
    CHECK(h.at(0) == part(1));
    CHECK(h.at(1) == part(1));
}

TEST_CASE("standard simplices and boundaries") {
    SimplicialSet d3 = standard_simplex(3);
    CHECK(d3.simplices[0].size() == 4);
    CHECK(d3.simplices[1].size() == 6);
    CHECK(d3.simplices[2].size() == 4);
    CHECK(d3.simplices[3].size() == 1);
    CHECK(d3.simplices[3][0] == "0123");
    CHECK(validate_simplicial_set(d3).ok);
    CHECK(point_homology(zk_chains(d3)));
    CHECK(point_homology(zk_chains(standard_simplex(1))));
    CHECK(point_homology(zk_chains(standard_simplex(0))));

    SimplicialSet b2 = simplex_boundary(2);
    CHECK(b2.dimension() == 1);
    CHECK(b2.simplices[1].size() == 3);
    GradedAbelianGroup h = homology(zk_chains(b2));
    CHECK(h.at(0) == part(1));
    CHECK(h.at(1) == part(1));

    GradedAbelianGroup s2 = homology(zk_chains(simplex_boundary(3)));
    CHECK(s2.at(0) == part(1));
    CHECK(s2.at(1) == part(0));
    CHECK(s2.at(2) == part(1));

    CHECK(zk_chains(SimplicialSet{}).is_zero_complex());
    CHECK_THROWS_AS(standard_simplex(-1), std::invalid_argument);
    CHECK_THROWS_AS(simplex_boundary(0), std::invalid_argument);
}

TEST_CASE("simplicial set validation catches broken faces") {
    SimplicialSet d2 = standard_simplex(2);
    d2.faces[2][0][0] = 0;  // wrong edge under the top cell
    ValidationResult v = validate_simplicial_set(d2);
    CHECK_FALSE(v.ok);
    CHECK(v.detail.find("face identity") == 0);

    SimplicialSet miscount = standard_simplex(1);
    miscount.faces[1][0].pop_back();
    CHECK_FALSE(validate_simplicial_set(miscount).ok);
}

TEST_CASE("nerves of categories with an initial object are contractible") {
    dgt::Rng rng(20260816);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<std::pair<int, int>> covers = {{0, 1}, {0, 2}, {0, 3}};
        for (int i = 1; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j)
                if (dgt::rand_between(rng, 0, 1) == 1) covers.push_back({i, j});
        FiniteCategory cat =
            poset_category({"bot", "p1", "p2", "p3"}, covers);
        CHECK(validate_category(cat).ok);
        SimplicialSet k = nerve(cat);
        CHECK(validate_simplicial_set(k).ok);
        CHECK(point_homology(zk_chains(k)));
    }
    // same conclusion in a non-poset shape
    CHECK(point_homology(zk_chains(nerve(under_category(0, parallel_pair())))));
}

TEST_CASE("free dg categories") {
    FiniteCategory span = span_category();
    DgCategory c = free_dg_category(span);
    CHECK(c.size() == 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(c.hom(i, j).rank(0) == span.morphisms(i, j).size());
    CHECK(validate_dg_category(c).ok);
    CHECK(dg_category_equal(c, free_dg_category(span_category())));
    CHECK_FALSE(dg_category_equal(c, free_dg_category(arrow_category())));

    CHECK(validate_dg_category(free_dg_category(arrow_category())).ok);
    CHECK(validate_dg_category(free_dg_category(parallel_pair())).ok);
    CHECK(validate_dg_category(free_dg_category(iso_pair())).ok);
    CHECK(validate_dg_category(
              free_dg_category(poset_category({"0", "1", "2"}, {{0, 1}, {1, 2}})))
              .ok);

    FlatnessReport rep = flatness_report(c);
    CHECK(rep.locally_flat);
    CHECK(rep.locally_star_flat);
    CHECK(rep.hom_support == Window{0, 0});
}

TEST_CASE("dg category validation catches broken structure") {
    ValidationResult v = validate_dg_category(free_dg_category(skew_monoid()));
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "associativity fails on (x -> x -> x -> x)");

    DgCategory c = free_dg_category(arrow_category());
    c.units[0] = map_scale(c.unit(0), 2);
    v = validate_dg_category(c);
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "right unit law fails at (0, 0)");
}

TEST_CASE("internal hom complexes") {
    dgt::Rng rng(7);
    for (int trial = 0; trial < 5; ++trial) {
        ChainComplex a = dgt::random_complex(rng, 0, 3);
        ChainComplex b = dgt::random_complex(rng, -1, 2);
        ChainComplex h = hom_complex(a, b);
        CHECK(validate_complex(h).ok);
        Window wa = a.support(), wb = b.support();
        if (!wa.empty() && !wb.empty())
            for (int n = wb.lo - wa.hi; n <= wb.hi - wa.lo; ++n) {
                std::size_t expect = 0;
                for (int p = wa.lo; p <= wa.hi; ++p)
                    expect += a.rank(p) * b.rank(p + n);
                CHECK(h.rank(n) == expect);
            }
        CHECK(hom_complex(unit_complex(), a) == a);
        CHECK(hom_complex(sphere(2), a) == shift(a, -2));
        CHECK(hom_complex(a, ChainComplex()).is_zero_complex());
    }
    CHECK(hom_complex(sphere(1), sphere(1)) == unit_complex());
    CHECK(hom_complex(sphere(1), sphere(0)) == sphere(-1));
}

TEST_CASE("full subcategory of complexes") {
    DgCategory c = full_subcategory_of_ch({sphere(0), sphere(1)}, {"Z", "Z1"});
    CHECK(c.hom(0, 0) == unit_complex());
    CHECK(c.hom(1, 1) == unit_complex());
    CHECK(c.hom(0, 1) == sphere(1));
    CHECK(c.hom(1, 0) == sphere(-1));
    CHECK(validate_dg_category(c).ok);
    CHECK(c.comp(0, 0, 1).component(1) == IntMatrix::from_rows({{1}}));

    FlatnessReport rep = flatness_report(c);
    CHECK(rep.locally_flat);
    CHECK(rep.locally_star_flat);
    CHECK(rep.hom_support == Window{-1, 1});

    // composition of endomorphisms of Z^2 is matrix multiplication
    DgCategory m = full_subcategory_of_ch(
        {complex_direct_sum({sphere(0), sphere(0)})});
    CHECK(m.hom(0, 0).rank(0) == 4);
    CHECK(m.unit(0).component(0) == IntMatrix::from_rows({{1}, {0}, {0}, {1}}));
    IntMatrix expect(4, 16);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l)
                    if (j == k)
                        expect.at(i * 2 + l, (i * 2 + j) * 4 + (k * 2 + l)) = 1;
    CHECK(m.comp(0, 0, 0).component(0) == expect);
    CHECK(validate_dg_category(m).ok);

    // mixed supports with torsion differentials still satisfy the axioms
    DgCategory mixed = full_subcategory_of_ch({moore2(), sphere(1), disc(0)});
    CHECK(validate_dg_category(mixed).ok);
    FlatnessReport mrep = flatness_report(mixed);
    CHECK(mrep.locally_flat);
    CHECK(mrep.locally_star_flat);
}

TEST_CASE("flatness report flags non-split units") {
    DgCategory c = free_dg_category(arrow_category());
    c.units[0] = map_scale(c.unit(0), 2);
    FlatnessReport rep = flatness_report(c);
    CHECK(rep.locally_flat);
    CHECK_FALSE(rep.locally_star_flat);
    CHECK_FALSE(rep.units[0].ok);
    CHECK(rep.units[1].ok);
}

TEST_CASE("representable presheaves satisfy the axioms") {
    DgCategory span = free_dg_category(span_category());
    for (int obj = 0; obj < 3; ++obj) {
        Presheaf w = representable(span, obj);
        CHECK(validate_presheaf(w).ok);
        Diagram d = corepresentable(span, obj);
        CHECK(validate_diagram(d).ok);
    }
    Presheaf wb = representable(span, 1);
    CHECK(wb.value(0) == unit_complex());  // the leg a -> b
    CHECK(wb.value(1) == unit_complex());
    CHECK(wb.value(2).is_zero_complex());

    DgCategory ch = full_subcategory_of_ch({sphere(0), sphere(1)});
    for (int obj = 0; obj < 2; ++obj) {
        CHECK(validate_presheaf(representable(ch, obj)).ok);
        CHECK(validate_diagram(corepresentable(ch, obj)).ok);
    }
    DgCategory mixed = full_subcategory_of_ch({moore2(), sphere(1)});
    for (int obj = 0; obj < 2; ++obj) {
        CHECK(validate_presheaf(representable(mixed, obj)).ok);
        CHECK(validate_diagram(corepresentable(mixed, obj)).ok);
    }
}

TEST_CASE("presheaf constructors and maps") {
    DgCategory span = free_dg_category(span_category());
    CHECK(validate_presheaf(zero_presheaf(span)).ok);
    CHECK(validate_diagram(zero_diagram(span)).ok);
    CHECK(validate_presheaf(constant_presheaf(span)).ok);
    CHECK(validate_presheaf(constant_presheaf(
                                free_dg_category(parallel_pair())))
              .ok);

    Presheaf w = representable(span, 1);
    PresheafMap id{{identity_map(w.value(0)), identity_map(w.value(1)),
                    identity_map(w.value(2))}};
    CHECK(validate_presheaf_map(w, w, id).ok);
    CHECK(presheaf_iso_check(w, w, id).ok);

    PresheafMap skewed = id;
    skewed.components[0] = map_scale(id.components[0], 2);
    ValidationResult v = validate_presheaf_map(w, w, skewed);
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "naturality fails at (a, b)");

    PresheafMap doubled = id;
    for (ChainMap& f : doubled.components) f = map_scale(f, 2);
    CHECK(validate_presheaf_map(w, w, doubled).ok);
    v = presheaf_iso_check(w, w, doubled);
    CHECK_FALSE(v.ok);
    CHECK(v.detail == "component at a is not invertible");
}

TEST_CASE("presheaf direct sums") {
    DgCategory span = free_dg_category(span_category());
    Presheaf s = presheaf_direct_sum(
        {representable(span, 1), representable(span, 2)});
    CHECK(validate_presheaf(s).ok);
    CHECK(s.value(0).rank(0) == 2);  // one leg to b plus one leg to c
    CHECK(s.value(1).rank(0) == 1);

    DgCategory ch = full_subcategory_of_ch({sphere(0), sphere(1)});
    Presheaf t = presheaf_direct_sum(
        {representable(ch, 0), representable(ch, 1)});
    CHECK(validate_presheaf(t).ok);
    CHECK_THROWS_AS(presheaf_direct_sum({}), std::invalid_argument);
}

TEST_CASE("shifted presheaves") {
    DgCategory span = free_dg_category(span_category());
    CHECK(validate_presheaf(shift_presheaf(representable(span, 1), -1)).ok);

    DgCategory ch = full_subcategory_of_ch({sphere(0), sphere(1)}, {"Z", "Z1"});
    Presheaf shifted = shift_presheaf(representable(ch, 0), 1);
    CHECK(validate_presheaf(shifted).ok);
    Presheaf rep1 = representable(ch, 1);
    CHECK(shifted.value(0) == rep1.value(0));
    CHECK(shifted.value(1) == rep1.value(1));
    PresheafMap f{{identity_map(rep1.value(0)), identity_map(rep1.value(1))}};
    CHECK(presheaf_iso_check(shifted, rep1, f).ok);
}

TEST_CASE("tensored presheaves") {
    DgCategory span = free_dg_category(span_category());
    Presheaf w = tensor_presheaf(representable(span, 1), moore2());
    CHECK(validate_presheaf(w).ok);
    CHECK(w.value(0) == moore2());

    DgCategory ch = full_subcategory_of_ch({sphere(0), sphere(1)});
    CHECK(validate_presheaf(tensor_presheaf(representable(ch, 0), sphere(1)))
              .ok);
    CHECK(validate_presheaf(tensor_presheaf(representable(ch, 1), moore2()))
              .ok);
}
