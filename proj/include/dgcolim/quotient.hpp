#pragma once

#include "dgcolim/chain.hpp"

namespace dgc {

// Degreewise quotient of a free complex by relation lattices closed under
// the differential. The quotient groups may carry torsion even though the
// cover is free; homology is computed exactly from the lattices.
class QuotientComplex {
public:
    QuotientComplex() = default;  // quotient of the zero complex

    // generators[n]: columns spanning the degree-n relation lattice inside
    // the cover. Shapes must match the cover ranks and d(R_n) must land in
    // R_{n-1}; violations throw std::invalid_argument.
    QuotientComplex(ChainComplex cover,
                    const std::map<int, IntMatrix>& generators);

    const ChainComplex& cover() const { return cover_; }
    Window support() const { return cover_.support(); }

    // Canonical (column Hermite) basis of the degree-n relation lattice;
    // rank(n) x 0 when there are none.
    IntMatrix relations(int n) const;

    // The quotient group cover_n / R_n.
    GradedAbelianGroup::Part group(int n) const;
    bool degreewise_free() const;

    // H_n = {x : dx in R} / (d cover_{n+1} + R_n), exactly.
    GradedAbelianGroup homology(const Window& w) const;
    GradedAbelianGroup homology() const;

private:
    ChainComplex cover_;
    std::map<int, IntMatrix> rel_;  // canonical bases, nonzero lattices only
};

// Free chain model of a quotient. When every quotient group is free the
// model is the quotient itself: exact is true, from_cover is the projection
// (a chain map) and section holds degreewise right inverses of it (not a
// chain map). Otherwise the model is the cone of the relation subcomplex
// inclusion and from_cover the cone inclusion; homology agrees with the
// quotient degree for degree, but the model is only quasi-isomorphic to it.
struct QuotientModel {
    ChainComplex complex;
    ChainMap from_cover;
    bool exact = false;
    std::map<int, IntMatrix> section;  // exact models only
};

QuotientModel quotient_model(const QuotientComplex& q);

// h: cover -> y killing the relations degreewise (checked): the chain map
// model -> y it induces.
ChainMap map_from_quotient(const QuotientComplex& q, const QuotientModel& m,
                           const ChainMap& h);

// g: x -> cover, a lift of a map into the quotient. g only needs to commute
// with the differentials modulo relations; the defect is absorbed (exactly
// by the projection for exact models, by the cone coordinate otherwise).
// A defect outside the relations throws std::invalid_argument.
ChainMap map_into_quotient(const QuotientComplex& q, const QuotientModel& m,
                           const ChainMap& g);

// f: cover -> cover' with f(R) <= R' (checked): induced map model -> model'.
ChainMap induced_quotient_map(const QuotientComplex& q, const QuotientModel& m,
                              const QuotientComplex& p,
                              const QuotientModel& mp, const ChainMap& f);

// Does f carry the relations of q into those of p, degreewise?
bool carries_relations(const QuotientComplex& q, const QuotientComplex& p,
                       const ChainMap& f);

// Do f and g agree as maps into the quotient of their common target
// (difference lands in the relations degreewise)?
bool equal_mod_relations(const QuotientComplex& target, const ChainMap& f,
                         const ChainMap& g);

// Is the quotient-level map induced by h a degreewise isomorphism? Requires
// h to kill the relations; checks kernel = relations and surjectivity.
ValidationResult quotient_map_iso(const QuotientComplex& q, const ChainMap& h);

// Split-injectivity surrogate for the quotient-level map induced by h:
// kernel no bigger than the relations, cokernel free, degreewise.
CofibrationReport quotient_map_cofibration(const QuotientComplex& q,
                                           const ChainMap& h);

}  // namespace dgc
