#pragma once

#include "dgcolim/chain.hpp"
#include "dgcolim/quotient.hpp"

#include <optional>
#include <vector>

namespace dgc {

// Truncated simplicial object in chain complexes, optionally augmented and
// optionally carrying an extra degeneracy. Levels are X_0..X_N with
// truncation N = levels.size() - 1.
struct SimplicialObject {
    std::vector<ChainComplex> levels;
    // faces[n] holds d_0..d_n : X_n -> X_{n-1} for n >= 1; faces[0] empty.
    std::vector<std::vector<ChainMap>> faces;
    // degeneracies[n] holds s_0..s_n : X_n -> X_{n+1} for n < N; the top
    // entry degeneracies[N] stays empty.
    std::vector<std::vector<ChainMap>> degeneracies;
    // eps : X_0 -> X_{-1}; the augmentation target is its target.
    std::optional<ChainMap> augmentation;
    // extra_degeneracy[n] : X_{n-1} -> X_n for 0 <= n <= N, where X_{-1} is
    // the augmentation target. Empty when the structure is absent.
    std::vector<ChainMap> extra_degeneracy;

    int truncation() const { return static_cast<int>(levels.size()) - 1; }
    bool augmented() const { return augmentation.has_value(); }
    const ChainComplex& level(int n) const {
        return levels[static_cast<std::size_t>(n)];
    }
    const ChainMap& face(int n, int i) const {
        return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
    }
    const ChainMap& degeneracy(int n, int j) const {
        return degeneracies[static_cast<std::size_t>(n)]
                           [static_cast<std::size_t>(j)];
    }
};

// Constant object on c: every level c, all structure maps the identity.
// With augmentation, X_{-1} = c, eps = id, and s_{-1} = id throughout.
SimplicialObject constant_simplicial(const ChainComplex& c, int truncation,
                                     bool augmented);

// Shape checks plus every simplicial identity representable below the
// truncation; then the augmentation identity and, when extra degeneracy
// data is present, the contraction relations.
ValidationResult validate_simplicial(const SimplicialObject& x);

// The contraction relations alone: d_0 s_{-1} = id, d_{i+1} s_{-1} =
// s_{-1} d_i, s_{j+1} s_{-1} = s_{-1} s_j, and eps s_{-1} = id at the
// bottom. Missing augmentation or missing s_{-1} data fails with a reason.
ValidationResult check_extra_degeneracy(const SimplicialObject& x);

// Level n modulo the images of all degeneracies, with the projection and a
// degreewise section. Degeneracy images split off integrally for every
// object built here; a non-split input throws std::invalid_argument.
struct NormalizedLevel {
    ChainComplex complex;
    ChainMap projection;
    std::map<int, IntMatrix> section;
};

std::vector<NormalizedLevel> normalize(const SimplicialObject& x);

// What is known about the levels a truncation omitted: the minimal total
// degree in which level n > N can carry nondegenerate generators.
struct NondegBound {
    enum class Kind { unknown, vanishes, affine };
    Kind kind = Kind::unknown;
    long base = 0;   // affine: minimal nondegenerate total degree of level n
    long slope = 0;  // is base + slope * n
    static NondegBound vanishes() { return {Kind::vanishes, 0, 0}; }
    static NondegBound affine(long base, long slope) {
        return {Kind::affine, base, slope};
    }
};

struct TruncationCertificate {
    bool sound = false;
    Window window;
    NondegBound tail;
    // Minimal total degree with nonzero normalized rank per kept level;
    // one entry per level, INT_MAX when the level normalizes to zero.
    std::vector<int> level_min_degree;
    // Filled by callers that compare two successive truncations.
    std::optional<bool> heuristic_stable;
};

// Total complex of the normalized levels: degree m collects internal degree
// m - n of normalized level n, with differential d_internal + (-1)^k
// (alternating face sum). The stored total is cut to window.padded(2), so
// homology statements are trustworthy on the window itself; the certificate
// says whether the truncation N loses anything there.
struct Realization {
    ChainComplex total;
    struct Piece {
        int level = 0;
        std::size_t offset = 0;
        std::size_t size = 0;
    };
    std::map<int, std::vector<Piece>> pieces;  // per degree, level ascending
    std::vector<NormalizedLevel> levels;
    // Alternating face sums on normalized levels; entry n maps level n to
    // level n - 1 (entry 0 unused).
    std::vector<ChainMap> simplicial_diff;
    TruncationCertificate certificate;
};

Realization realize(const SimplicialObject& x, Window window,
                    NondegBound tail = {});

// Map induced on realizations by a levelwise simplicial map (one ChainMap
// per level, commuting with faces and degeneracies; not rechecked here).
// Both realizations must use the same window.
ChainMap realize_map(const Realization& rx, const Realization& ry,
                     const std::vector<ChainMap>& levelwise);

// The chain map realize(X) -> X_{-1} induced by the augmentation: eps on
// the level-0 pieces, zero elsewhere.
ChainMap augmentation_map(const SimplicialObject& x, const Realization& rx);

struct CollapseReport {
    ValidationResult extra;  // contraction-structure verdict
    QuasiIsoReport qiso;     // realize(X) -> X_{-1} on the window
    TruncationCertificate certificate;
};

// Appendix-style collapse: verify the contraction structure, then test the
// augmentation map for quasi-isomorphism on the window.
CollapseReport collapse_check(const SimplicialObject& x, Window window,
                              NondegBound tail = {});

// Moore complex of a simplicial abelian group (levels concentrated in
// internal degree 0): degree n is normalized level n, differential the
// alternating face sum.
ChainComplex dold_kan_normalize(const SimplicialObject& x);

// Standard inverse: level n = sum over surjections [n] ->> [k] of C_k,
// placed in internal degree 0. C must be supported in [0, inf); levels run
// 0..truncation. normalize(gamma(C)) returns C itself, on the nose, when
// truncation exceeds the top of the support.
SimplicialObject dold_kan_gamma(const ChainComplex& c, int truncation);

}  // namespace dgc
