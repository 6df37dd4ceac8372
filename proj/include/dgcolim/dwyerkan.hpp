#pragma once

#include "dgcolim/colim.hpp"
#include "dgcolim/enriched.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dgc {

// ---------------------------------------------------------------------------
// Functors between finite dg-categories and the adjunction they induce on
// presheaves: restriction reindexes values along the object map, the left
// Kan extension is computed pointwise as a weighted colimit of the target's
// homs into the image. Everything downstream (unit, counit, derived counit,
// criteria reports) is assembled from those colimit presentations.
// ---------------------------------------------------------------------------

struct DgFunctor {
    DgCategory source;
    DgCategory target;
    std::vector<int> object_map;
    // hom_components[a][b]: hom_src(a,b) -> hom_tgt(Fa,Fb).
    std::vector<std::vector<ChainMap>> hom_components;

    int object(int a) const { return object_map[static_cast<std::size_t>(a)]; }
    const ChainMap& component(int a, int b) const {
        return hom_components[static_cast<std::size_t>(a)]
                             [static_cast<std::size_t>(b)];
    }
};

// Host validity, component shapes, unit preservation, and the composition
// squares, all as exact matrix identities.
ValidationResult validate_functor(const DgFunctor& f);

DgFunctor identity_functor(const DgCategory& c);

// Full dg-subcategory on the listed object indices (distinct, in range).
DgCategory full_dg_subcategory(const DgCategory& c,
                               const std::vector<int>& objects);
// Its inclusion, with identity hom components.
DgFunctor inclusion_functor(const DgCategory& c,
                            const std::vector<int>& objects);

// Precomposition: value(d) = v(Fd), the hom factor acting through F's
// components. Values are reused, not copied up to iso.
Presheaf restrict_presheaf(const DgFunctor& f, const Presheaf& v);

// Pointwise left Kan extension: value(c) = colimit of d |-> hom(c, Fd)
// weighted by w, kept with its colimit presentations so maps in and out can
// be factored through the covers. The presheaf action feeds hom(cp,c) into
// the corepresented slot of each cover summand; assembling it needs the
// colimit models to be split quotients (they are whenever the relation
// lattices are primitive, e.g. for basis-to-basis weight actions), otherwise
// std::invalid_argument.
struct LeftKan {
    Presheaf presheaf;
    std::vector<WeightedColimit> colimits;  // one per target object
};

LeftKan left_kan(const DgFunctor& f, const Presheaf& w);

// The map induced on left Kan extensions by a pointwise weight map,
// one component per target object. src and dst must be the extensions of
// phi's endpoints.
PresheafMap left_kan_map(const DgFunctor& f, const LeftKan& src,
                         const LeftKan& dst, const PresheafMap& phi);

// Unit w -> restrict(left_kan(w)): at d, pair with the identity of Fd and
// project to the colimit model. kw must be left_kan(f, w).
PresheafMap adjunction_unit(const DgFunctor& f, const Presheaf& w,
                            const LeftKan& kw);

// Counit left_kan(restrict(v)) -> v: v's own action on each cover summand,
// factored through the quotient. kfv must be left_kan(f, restrict(f, v)).
PresheafMap adjunction_counit(const DgFunctor& f, const Presheaf& v,
                              const LeftKan& kfv);

// Canonical comparison left_kan(representable at d) -> representable at Fd;
// composition on the cover summands, factored through the quotient. kan
// must be left_kan(f, representable(f.source, d)).
PresheafMap kan_representable_comparison(const DgFunctor& f, int d,
                                         const LeftKan& kan);

// (counit at left_kan(w)) o (left_kan of the unit) acts as the identity on
// colimit classes: the composite absorbs the cover projection exactly.
ValidationResult triangle_left_check(const DgFunctor& f, const Presheaf& w);
// (restricted counit) o (unit at restrict(v)) is exactly the identity of
// v(Fd) at every source object; the presheaf unit axiom makes it strict.
ValidationResult triangle_right_check(const DgFunctor& f, const Presheaf& v);

// ---------------------------------------------------------------------------
// Homotopical fullness and faithfulness: every hom component a
// quasi-isomorphism. Verdicts are computed on the hull of the requested
// window and each component's complete window, so they are always total.
// ---------------------------------------------------------------------------

struct HffEntry {
    int from = 0;
    int to = 0;
    QuasiIsoReport comparison;
};

struct HffReport {
    bool ok = true;
    std::string detail;  // names the first failing pair
    std::vector<HffEntry> entries;  // all ordered pairs, row-major
};

HffReport is_homotopically_ff(const DgFunctor& f, const Window& window = {});

// ---------------------------------------------------------------------------
// H0 retract witnesses: maps c -> Fd_k -> c whose composites sum to the
// identity class in H0 hom(c,c). Classes are carried as explicit degree-0
// cycles; the search enumerates bounded generator combinations on the
// incoming side and solves one integer linear system per candidate set for
// the outgoing side. Failure to find one inside the bounds is reported as
// exhausted_bounds; certified_none needs every composite through the image
// to vanish on the nose (one side of each pair has trivial H0).
// ---------------------------------------------------------------------------

struct RetractSummand {
    int through = 0;      // source object d
    IntMatrix in_cycle;   // degree-0 cycle column in hom(c, Fd)
    IntMatrix out_cycle;  // degree-0 cycle column in hom(Fd, c)
};

struct RetractWitness {
    int object = 0;
    std::vector<RetractSummand> summands;
    bool certified = false;  // recomposed sum is homologous to the identity
};

enum class RetractStatus { found, exhausted_bounds, certified_none };

struct RetractSearch {
    RetractStatus status = RetractStatus::exhausted_bounds;
    std::optional<RetractWitness> witness;
    long max_summands = 0;
    long coefficient_box = 0;
    std::string detail;
};

RetractSearch h0_retract_witness(const DgFunctor& f, int c,
                                 long max_summands = 3,
                                 long coefficient_box = 4);

// ---------------------------------------------------------------------------
// Derived counit at a representable: cofibrantly replace the restricted
// representable by its bar resolution, extend back along F, and compare
// against hom(-, c) through composition. Verdicts are window-relative;
// sound records whether every replacement certificate covers the window,
// and an unsound run is replayed one truncation deeper to report stability.
// ---------------------------------------------------------------------------

struct CounitEntry {
    int at = 0;                       // target object evaluated at
    QuasiIsoReport comparison;        // kan value -> hom(at, c), on window
    GradedAbelianGroup kan_homology;  // window-restricted tables
    GradedAbelianGroup hom_homology;
};

struct CounitReport {
    int object = 0;
    bool ok = false;     // every pointwise comparison passes
    bool sound = false;  // every truncation certificate covers the window
    // Set when sound is false: do verdicts and tables survive truncating
    // one level deeper?
    std::optional<bool> heuristic_stable;
    Window window;
    std::string detail;  // names the first failing object, empty when ok
    std::vector<CounitEntry> entries;
    CofibrantReplacement replacement;  // of the restricted representable
    LeftKan kan;
};

CounitReport derived_counit_check(const DgFunctor& f, int c, int n,
                                  const Window& window,
                                  const NondegBound& tail = {});

// ---------------------------------------------------------------------------
// Quillen-equivalence criteria rollup: the hom-component table, a retract
// search and a derived counit check per target object. The verdict is
// hff + counits; retract results are evidence (an object can fail the
// retract search and still be reconstructed, e.g. through a suspended
// representable), so they carry caveat flags instead of vetoes.
// ---------------------------------------------------------------------------

struct DwyerKanReport {
    HffReport hff;
    std::vector<RetractSearch> retracts;  // per target object
    std::vector<CounitReport> counits;    // per target object
    bool retracts_ok = false;  // every search produced a witness
    bool counits_ok = false;
    bool quillen_equivalence = false;  // hff and counits both pass
    bool retract_bounds_hit = false;   // some search ran out of bounds
    bool heuristic_windows = false;    // some counit window lacks a sound
                                       // truncation certificate
};

DwyerKanReport dwyer_kan_report(const DgFunctor& f, int n,
                                const Window& window, long max_summands = 3,
                                long coefficient_box = 4);

}  // namespace dgc
