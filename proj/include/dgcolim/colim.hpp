#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dgcolim/enriched.hpp"
#include "dgcolim/quotient.hpp"
#include "dgcolim/simplicial.hpp"
#include "dgcolim/tensorword.hpp"

namespace dgc {

// ---------------------------------------------------------------------------
// Weighted colimits as coequalizers.
//
// For a weight W (contravariant) and diagram D (covariant) over a shared
// host, the colimit is the cokernel of
//   lambda - rho : (+)_{c0,c1} Wc1 (x) hom(c0,c1) (x) Dc0 -> (+)_c Wc (x) Dc
// where lambda lets the hom factor act on W and rho lets it act on D. The
// cokernel is kept as a QuotientComplex (exact homology, torsion included)
// together with a free model: the split quotient itself when the relation
// lattice splits off, otherwise the cone of the relation inclusion.
// ---------------------------------------------------------------------------

struct WeightedColimit {
    ChainComplex complex;  // the free model's underlying complex
    bool exact = false;    // model is the split quotient (not just a cone)
    QuotientComplex quotient;
    QuotientModel model;
    WordSum cover;                // one word (Wc, Dc) per object, index order
    WordSum relation_source;     // one word per pair (c0, c1), lexicographic
    ChainMap relation;            // lambda - rho, relation_source -> cover
    std::vector<ChainMap> cone;   // per object: Wc (x) Dc -> complex
};

WeightedColimit weighted_colimit(const Presheaf& w, const Diagram& d);

// Evaluation cone for W = representable(-, obj): sums d.action(x, obj) over
// the cover summands. It kills the coequalizer relations, and
// quotient_map_iso against wc.quotient is the Yoneda comparison.
ChainMap yoneda_evaluation(const WeightedColimit& wc, const Diagram& d,
                           int obj);

// ---------------------------------------------------------------------------
// Bar construction. Level n is the direct sum over tuples (c0,...,cn) of
//   Wc_n (x) hom(c_{n-1},c_n) (x) ... (x) hom(c0,c1) (x) Dc0,
// tuples ordered lexicographically. Inner faces compose adjacent homs, the
// outer faces act on W resp. D, degeneracies insert units. The augmentation
// (to the colimit model) is attached when the model is exact, so the
// augmented simplicial identities hold on the nose.
// ---------------------------------------------------------------------------

struct BarConstruction {
    SimplicialObject object;
    WeightedColimit colimit;
    Presheaf weight;
    Diagram diagram;
    std::vector<std::vector<std::vector<int>>> tuples;  // per level, lex order
    std::vector<WordSum> sums;                          // per level
    int truncation = 0;
};

BarConstruction bar_construction(const Presheaf& w, const Diagram& d, int n);

// For D = corepresentable(obj): installs the extra degeneracy that repeats
// obj via its unit, certifying the collapse |bar| ~ W(obj). Requires the
// diagram to be the corepresented one at obj and the colimit model to be
// exact (it always is there when the weight is pointwise free). Throws
// invalid_argument otherwise.
void attach_bar_contraction(BarConstruction& b, int obj);

// Tail bound for realizations: level n carries generators only in total
// degrees >= base + slope * n, with base = min W support + min D support
// and slope = min hom support + 1. Vanishes outright when W, D, or all
// homs are zero.
NondegBound bar_degree_bound(const Presheaf& w, const Diagram& d);

// Over free hosts the normalized bar level n is spanned by chains of n
// composable nonidentity morphisms; it vanishes beyond the longest such
// chain. Returns vanishes() when truncation covers that length, nullopt when
// the shape has cycles or the truncation cuts genuine cells.
std::optional<NondegBound> free_bar_vanishing(const FiniteCategory& shape,
                                              int truncation);

struct BarCompareReport {
    GradedAbelianGroup bar_homology;      // of the realized bar, on window
    GradedAbelianGroup colimit_homology;  // of the exact cokernel, on window
    QuasiIsoReport comparison;            // |bar| -> colimit model
    TruncationCertificate certificate;
    bool weight_certified = false;  // weight came with a verified cell trace
    Window window;
};

BarCompareReport bar_compare(const Presheaf& w, const Diagram& d, int n,
                             const Window& window,
                             const NondegBound& tail = {});

// ---------------------------------------------------------------------------
// Certified-cofibrant weights: a presheaf together with the trace of cell
// attachments that built it. Each step glues hom(-, object) (x) disc(degree)
// along hom(-, object) (x) sphere(degree) via a natural attaching map; the
// replay invariant rebuilds the presheaf from the trace and compares
// exactly.
// ---------------------------------------------------------------------------

struct CellAttachment {
    int object = 0;
    int degree = 0;  // glue sphere(degree) -> disc(degree) tensored cells
    // Attaching map components, one per host object x:
    //   tensor(hom(x, object), sphere(degree)) -> current value at x.
    std::vector<ChainMap> attach;
};

struct WeightCell {
    Presheaf presheaf;
    std::vector<CellAttachment> trace;
};

WeightCell weight_cell_start(const DgCategory& host);
// Validates that the components form a presheaf map from the boundary cell;
// throws invalid_argument with the naturality defect otherwise.
WeightCell attach_cell(const WeightCell& w, int object, int degree,
                       std::vector<ChainMap> attach);
// Single cell with zero attaching map: the representable at obj, as a
// certified weight.
WeightCell representable_cell(const DgCategory& host, int obj);
ValidationResult replay_weight_cell(const WeightCell& w);

BarCompareReport bar_compare(const WeightCell& w, const Diagram& d, int n,
                             const Window& window,
                             const NondegBound& tail = {});

// ---------------------------------------------------------------------------
// Cofibrant replacement of a weight: value at c is the realization of
// bar(W, corepresentable(c)) on its full degree hull, with the presheaf
// action assembled from composition on the corepresented slot. Augmentations
// collapse each value onto Wc; the per-point quasi-iso verdicts are
// window-relative.
// ---------------------------------------------------------------------------

struct CofibrantReplacement {
    Presheaf presheaf;
    std::vector<ChainMap> augmentation;     // value(c) -> Wc
    std::vector<QuasiIsoReport> pointwise;  // augmentation verdicts on window
    std::vector<TruncationCertificate> certificates;
    std::vector<BarConstruction> bars;
    std::vector<Realization> realizations;  // full-hull, nothing cut
};

CofibrantReplacement cofibrant_replacement(const Presheaf& w, int n,
                                           const Window& window,
                                           const NondegBound& tail = {});

// The map realize(X) (x) K -> realize(Y) assembled from levelwise maps
// phi_n : tensor(level_n(X), K) -> level_n(Y) that commute with faces and
// degeneracies. The K-degree-l part against level n is twisted by
// (-1)^{n l} (the realization/tensor interchange). Both realizations must
// be uncut (built on their full hulls).
ChainMap realize_action(const Realization& rx, const ChainComplex& k,
                        const Realization& ry,
                        const std::vector<ChainMap>& levelwise);

// ---------------------------------------------------------------------------
// Bousfield-Kan homotopy colimit over a free host: the realization of the
// simplicial replacement n |-> (+)_{i0 -> ... -> in} D(i0), which is the bar
// construction with constant weight. The tail bound is computed from the
// shape (vanishing beyond the longest nonidentity chain when truncation
// covers it).
// ---------------------------------------------------------------------------

struct HocolimResult {
    ChainComplex complex;
    Realization realization;
    TruncationCertificate certificate;
    BarConstruction bar;
};

HocolimResult bk_hocolim(const Diagram& d, const FiniteCategory& shape, int n,
                         const Window& window);

// ---------------------------------------------------------------------------
// Cubical diagrams and the pushout-corner map. A cube over axes S assigns a
// complex to every subset (bitmask index) and a map to every covering pair;
// functoriality is validated on the square faces, which generate.
// ---------------------------------------------------------------------------

struct CubicalDiagram {
    std::vector<std::string> axes;  // direction names, pairwise distinct
    std::vector<ChainComplex> objects;  // 2^|axes| entries, bitmask-indexed
    std::map<std::pair<std::size_t, std::size_t>, ChainMap> maps;

    std::size_t dim() const { return axes.size(); }
    const ChainComplex& object(std::size_t mask) const;
    const ChainMap& map(std::size_t from, std::size_t to) const;
};

ValidationResult validate_cube(const CubicalDiagram& x);
CubicalDiagram one_cube(const ChainMap& f, std::string axis = "s");
// Corners x00 -> x10 (a, axis0), x00 -> x01 (b, axis1), x10 -> x11 (c),
// x01 -> x11 (d); requires the square to commute.
CubicalDiagram square_cube(const ChainMap& a, const ChainMap& b,
                           const ChainMap& c, const ChainMap& d,
                           std::string axis0 = "s", std::string axis1 = "t");
// (X (x) Y)(I u J) = X(I) (x) Y(J) over the disjoint union of axes; throws
// on overlapping axis names.
CubicalDiagram cube_tensor(const CubicalDiagram& x, const CubicalDiagram& y);

struct PushoutCorner {
    QuotientComplex colimit;  // colim over proper subsets, coequalizer form
    QuotientModel model;
    WordSum cover;  // one word per proper subset, mask ascending
    ChainMap map;   // model -> X(S), the pushout-corner map
};

PushoutCorner pushout_corner_map(const CubicalDiagram& x);

// Composition law: pcm(X (x) Y) agrees with the pcm of the square built
// from the direction-wise corner maps, compared through the canonical map
// between the two colimit presentations. Requires the direction-wise
// colimit models to be exact (free); throws invalid_argument otherwise.
ValidationResult pcm_composition_check(const CubicalDiagram& x,
                                       const CubicalDiagram& y);

// ---------------------------------------------------------------------------
// Latching objects of a bar construction. For each tuple with repeated
// adjacent objects, the degenerate part is the pushout corner of the cube
// that swaps each repeated hom factor between the unit and hom(c,c); the
// latching object is the direct sum of those corners and the latching map
// collects their corner maps.
// ---------------------------------------------------------------------------

struct LatchingData {
    ChainComplex object;
    ChainMap map;                         // latching object -> level n
    std::vector<std::size_t> degenerate;  // indices of repeating tuples
};

LatchingData latching_map(const BarConstruction& b, int n);

struct ReedyReport {
    bool ok = true;
    std::vector<CofibrationReport> levels;  // entry n: L_n -> B_n verdict
};

ReedyReport reedy_report(const BarConstruction& b);

}  // namespace dgc
