#pragma once

#include "dgcolim/chain.hpp"

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace dgc {

// Finite ordinary category: objects by index, morphism names per ordered
// pair, composition tables, chosen identities. Empty categories are legal.
struct FiniteCategory {
    std::vector<std::string> objects;
    // hom[i][j]: names of the morphisms i -> j.
    std::vector<std::vector<std::vector<std::string>>> hom;
    // composition[{i,j,k}]: table[g][f] = index of g o f in hom[i][k],
    // for f in hom[i][j] and g in hom[j][k]. Required whenever both hom
    // sets are nonempty.
    std::map<std::array<int, 3>, std::vector<std::vector<int>>> composition;
    // identity[i]: index of id_i inside hom[i][i].
    std::vector<int> identity;

    int size() const { return static_cast<int>(objects.size()); }
    const std::vector<std::string>& morphisms(int i, int j) const {
        return hom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    int compose_index(int i, int j, int k, int g, int f) const;
};

ValidationResult validate_category(const FiniteCategory& i);

FiniteCategory discrete_category(std::vector<std::string> names);
// Reflexive-transitive closure of the cover relations; at most one morphism
// between any two objects.
FiniteCategory poset_category(std::vector<std::string> names,
                              const std::vector<std::pair<int, int>>& covers);
FiniteCategory arrow_category();  // 0 -> 1
FiniteCategory span_category();   // b <- a -> c, objects a, b, c

// No nonidentity endomorphisms and no directed cycles through nonidentity
// morphisms; exact (untruncated) nerves exist precisely in this case.
bool is_loop_free(const FiniteCategory& i);

// Objects are the morphisms out of i; a morphism (f: i->j) -> (g: i->k) is
// an h: j -> k with h o f = g. Always has the initial object id_i.
FiniteCategory under_category(int i, const FiniteCategory& cat);

// Nondegenerate simplices per dimension with face incidence; degeneracies
// stay implicit. A face entry equal to no_face marks a degenerate face
// (none of the constructions here produce one, but the chains functor
// treats it as zero).
struct SimplicialSet {
    static constexpr std::size_t no_face = static_cast<std::size_t>(-1);
    int cap = -1;          // dimension cap requested at construction, -1 none
    bool truncated = false;  // true when the cap actually cut simplices off
    std::vector<std::vector<std::string>> simplices;  // names per dimension
    // faces[n][s] lists the n+1 faces of simplex s, for n >= 1.
    std::vector<std::vector<std::vector<std::size_t>>> faces;

    int dimension() const { return static_cast<int>(simplices.size()) - 1; }
};

ValidationResult validate_simplicial_set(const SimplicialSet& k);

// Nondegenerate n-simplices are chains of n composable nonidentity
// morphisms. cap = -1 demands the exact nerve and throws
// std::invalid_argument when the category is not loop-free; cap >= 0
// truncates and sets the flag if anything was cut.
SimplicialSet nerve(const FiniteCategory& i, int cap = -1);

SimplicialSet standard_simplex(int n);
SimplicialSet simplex_boundary(int n);  // boundary of the n-simplex, n >= 1

// Normalized chains: rank(n) = nondegenerate n-simplex count, differential
// the alternating face sum with degenerate faces contributing zero.
ChainComplex zk_chains(const SimplicialSet& k);

// Finite dg-category: hom complexes, composition maps
// hom(b,c) (x) hom(a,b) -> hom(a,c), units Z[0] -> hom(a,a).
struct DgCategory {
    std::vector<std::string> objects;
    std::vector<std::vector<ChainComplex>> homs;           // homs[a][b]
    std::vector<std::vector<std::vector<ChainMap>>> comps; // comps[a][b][c]
    std::vector<ChainMap> units;                           // units[a]

    int size() const { return static_cast<int>(objects.size()); }
    const ChainComplex& hom(int a, int b) const {
        return homs[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
    }
    const ChainMap& comp(int a, int b, int c) const {
        return comps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                    [static_cast<std::size_t>(c)];
    }
    const ChainMap& unit(int a) const {
        return units[static_cast<std::size_t>(a)];
    }
};

// Shape coherence, chain-map checks, unit laws on the nose, and the
// associativity pentagon as exact matrix identities.
ValidationResult validate_dg_category(const DgCategory& c);

bool dg_category_equal(const DgCategory& a, const DgCategory& b);

// hom(i,j) = free complex on the morphism set in degree 0, linearized
// composition, unit = the identity morphism's basis vector.
DgCategory free_dg_category(const FiniteCategory& i);

// Internal hom of bounded free complexes: degree n collects the maps
// a_p -> b_{p+n}, differential f |-> d_b f - (-1)^n f d_a. Basis order:
// source degree p ascending, then target basis index, then source index.
ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b);

// Full dg-subcategory of complexes spanned by the given objects, with
// hom_complex homs and actual composition of maps.
DgCategory full_subcategory_of_ch(const std::vector<ChainComplex>& objects,
                                  std::vector<std::string> names = {});

struct FlatnessReport {
    // Every hom complex is degreewise free with bounded support; true by
    // construction here, reported together with the support hull.
    bool locally_flat = false;
    Window hom_support;
    // Unit maps are degreewise split injective with free cokernel.
    bool locally_star_flat = false;
    std::vector<CofibrationReport> units;  // one entry per object
};

FlatnessReport flatness_report(const DgCategory& c);

// Contravariant functor into complexes: value(c) with actions
// value(c) (x) hom(c',c) -> value(c').
struct Presheaf {
    DgCategory host;
    std::vector<ChainComplex> values;
    std::vector<std::vector<ChainMap>> actions;  // actions[cp][c]

    const ChainComplex& value(int c) const {
        return values[static_cast<std::size_t>(c)];
    }
    const ChainMap& action(int cp, int c) const {
        return actions[static_cast<std::size_t>(cp)]
                      [static_cast<std::size_t>(c)];
    }
};

// Covariant companion: actions hom(c,c') (x) value(c) -> value(c').
struct Diagram {
    DgCategory host;
    std::vector<ChainComplex> values;
    std::vector<std::vector<ChainMap>> actions;  // actions[c][cp]

    const ChainComplex& value(int c) const {
        return values[static_cast<std::size_t>(c)];
    }
    const ChainMap& action(int c, int cp) const {
        return actions[static_cast<std::size_t>(c)]
                      [static_cast<std::size_t>(cp)];
    }
};

ValidationResult validate_presheaf(const Presheaf& w);
ValidationResult validate_diagram(const Diagram& d);

Presheaf representable(const DgCategory& c, int obj);    // hom(-, obj)
Diagram corepresentable(const DgCategory& c, int obj);   // hom(obj, -)

Presheaf zero_presheaf(const DgCategory& c);
Diagram zero_diagram(const DgCategory& c);

// Constant value Z[0]; the action sums coefficients. A presheaf axiom check
// is only guaranteed to pass over categories with degree-0 free homs whose
// composition takes basis elements to basis elements (free dg-categories).
Presheaf constant_presheaf(const DgCategory& c);

// Pointwise maps value_a(c) -> value_b(c) between presheaves on one host.
struct PresheafMap {
    std::vector<ChainMap> components;
};

// Shape, chain-map, and naturality checks.
ValidationResult validate_presheaf_map(const Presheaf& a, const Presheaf& b,
                                       const PresheafMap& f);
// validate_presheaf_map plus degreewise unimodular invertibility.
ValidationResult presheaf_iso_check(const Presheaf& a, const Presheaf& b,
                                    const PresheafMap& f);

Presheaf presheaf_direct_sum(const std::vector<Presheaf>& parts);
Presheaf shift_presheaf(const Presheaf& w, int k);
// value(c) (x) k with the action threaded past k by the symmetry braiding.
Presheaf tensor_presheaf(const Presheaf& w, const ChainComplex& k);

}  // namespace dgc
