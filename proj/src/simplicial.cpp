#include "dgcolim/simplicial.hpp"

#include <algorithm>
#include <climits>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgc {

namespace {

std::string at_level(int n) { return " at level " + std::to_string(n); }

// Degreewise section of the normalization projection; degrees the split
// never touched get the zero map of the right shape.
IntMatrix section_component(const NormalizedLevel& nl, int k) {
    auto it = nl.section.find(k);
    if (it != nl.section.end()) return it->second;
    return IntMatrix(nl.projection.source().rank(k), nl.complex.rank(k));
}

// Alternating face sum on underlying levels, conjugated onto the normalized
// complexes. Returns the component matrix for internal degree k.
IntMatrix normalized_face_sum(const SimplicialObject& x,
                              const std::vector<NormalizedLevel>& norm, int n,
                              int k) {
    IntMatrix alt(x.level(n - 1).rank(k), x.level(n).rank(k));
    for (int i = 0; i <= n; ++i) {
        IntMatrix m = x.face(n, i).component(k);
        alt = (i % 2 == 0) ? alt + m : alt - m;
    }
    return norm[static_cast<std::size_t>(n - 1)].projection.component(k) *
           alt * section_component(norm[static_cast<std::size_t>(n)], k);
}

const Realization::Piece* find_piece(const std::vector<Realization::Piece>& v,
                                     int level) {
    for (const auto& p : v)
        if (p.level == level) return &p;
    return nullptr;
}

}  // namespace

SimplicialObject constant_simplicial(const ChainComplex& c, int truncation,
                                     bool augmented) {
    if (truncation < 0)
        throw std::invalid_argument("constant_simplicial: negative truncation");
    SimplicialObject x;
    std::size_t n = static_cast<std::size_t>(truncation);
    ChainMap id = identity_map(c);
    x.levels.assign(n + 1, c);
    x.faces.resize(n + 1);
    x.degeneracies.resize(n + 1);
    for (std::size_t i = 1; i <= n; ++i) x.faces[i].assign(i + 1, id);
    for (std::size_t i = 0; i < n; ++i) x.degeneracies[i].assign(i + 1, id);
    if (augmented) {
        x.augmentation = id;
        x.extra_degeneracy.assign(n + 1, id);
    }
    return x;
}

ValidationResult validate_simplicial(const SimplicialObject& x) {
    int top = x.truncation();
    if (top < 0) return {false, "no levels"};
    if (x.faces.size() != x.levels.size() ||
        x.degeneracies.size() != x.levels.size())
        return {false, "face or degeneracy table size mismatch"};
    if (!x.faces[0].empty()) return {false, "faces listed below level 1"};
    if (!x.degeneracies[static_cast<std::size_t>(top)].empty())
        return {false, "degeneracies listed at the truncation level"};

    for (int n = 0; n <= top; ++n) {
        ValidationResult lv = validate_complex(x.level(n));
        if (!lv.ok) return {false, "level " + std::to_string(n) + ": " + lv.detail};
    }
    for (int n = 1; n <= top; ++n) {
        if (x.faces[static_cast<std::size_t>(n)].size() !=
            static_cast<std::size_t>(n) + 1)
            return {false, "wrong face count" + at_level(n)};
        for (int i = 0; i <= n; ++i) {
            const ChainMap& d = x.face(n, i);
            if (d.source() != x.level(n) || d.target() != x.level(n - 1))
                return {false, "face d_" + std::to_string(i) +
                                   " has wrong endpoints" + at_level(n)};
            ValidationResult v = validate_map(d);
            if (!v.ok)
                return {false, "face d_" + std::to_string(i) + at_level(n) +
                                   " is not a chain map: " + v.detail};
        }
    }
    for (int n = 0; n < top; ++n) {
        if (x.degeneracies[static_cast<std::size_t>(n)].size() !=
            static_cast<std::size_t>(n) + 1)
            return {false, "wrong degeneracy count" + at_level(n)};
        for (int j = 0; j <= n; ++j) {
            const ChainMap& s = x.degeneracy(n, j);
            if (s.source() != x.level(n) || s.target() != x.level(n + 1))
                return {false, "degeneracy s_" + std::to_string(j) +
                                   " has wrong endpoints" + at_level(n)};
            ValidationResult v = validate_map(s);
            if (!v.ok)
                return {false, "degeneracy s_" + std::to_string(j) +
                                   at_level(n) + " is not a chain map: " +
                                   v.detail};
        }
    }

    // d_i d_j = d_{j-1} d_i for i < j.
    for (int n = 2; n <= top; ++n)
        for (int j = 1; j <= n; ++j)
            for (int i = 0; i < j; ++i)
                if (compose(x.face(n - 1, i), x.face(n, j)) !=
                    compose(x.face(n - 1, j - 1), x.face(n, i)))
                    return {false, "d_" + std::to_string(i) + " d_" +
                                       std::to_string(j) + " != d_" +
                                       std::to_string(j - 1) + " d_" +
                                       std::to_string(i) + at_level(n)};

    // Face and degeneracy interchange.
    for (int n = 0; n < top; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= n + 1; ++i) {
                ChainMap lhs = compose(x.face(n + 1, i), x.degeneracy(n, j));
                if (i == j || i == j + 1) {
                    if (lhs != identity_map(x.level(n)))
                        return {false, "d_" + std::to_string(i) + " s_" +
                                           std::to_string(j) + " != id" +
                                           at_level(n)};
                } else if (i < j) {
                    if (lhs != compose(x.degeneracy(n - 1, j - 1),
                                       x.face(n, i)))
                        return {false, "d_" + std::to_string(i) + " s_" +
                                           std::to_string(j) + " != s_" +
                                           std::to_string(j - 1) + " d_" +
                                           std::to_string(i) + at_level(n)};
                } else {
                    if (lhs != compose(x.degeneracy(n - 1, j),
                                       x.face(n, i - 1)))
                        return {false, "d_" + std::to_string(i) + " s_" +
                                           std::to_string(j) + " != s_" +
                                           std::to_string(j) + " d_" +
                                           std::to_string(i - 1) +
                                           at_level(n)};
                }
            }

    // s_i s_j = s_{j+1} s_i for i <= j.
    for (int n = 0; n + 2 <= top; ++n)
        for (int j = 0; j <= n; ++j)
            for (int i = 0; i <= j; ++i)
                if (compose(x.degeneracy(n + 1, i), x.degeneracy(n, j)) !=
                    compose(x.degeneracy(n + 1, j + 1), x.degeneracy(n, i)))
                    return {false, "s_" + std::to_string(i) + " s_" +
                                       std::to_string(j) + " != s_" +
                                       std::to_string(j + 1) + " s_" +
                                       std::to_string(i) + at_level(n)};

    if (x.augmented()) {
        const ChainMap& eps = *x.augmentation;
        if (eps.source() != x.level(0))
            return {false, "augmentation source is not level 0"};
        ValidationResult v = validate_map(eps);
        if (!v.ok)
            return {false, "augmentation is not a chain map: " + v.detail};
        if (top >= 1 && compose(eps, x.face(1, 0)) != compose(eps, x.face(1, 1)))
            return {false, "eps d_0 != eps d_1"};
    } else if (!x.extra_degeneracy.empty()) {
        return {false, "extra degeneracy without augmentation"};
    }

    if (!x.extra_degeneracy.empty()) {
        ValidationResult v = check_extra_degeneracy(x);
        if (!v.ok) return v;
    }
    return {};
}

ValidationResult check_extra_degeneracy(const SimplicialObject& x) {
    if (!x.augmented()) return {false, "no augmentation"};
    int top = x.truncation();
    const ChainMap& eps = *x.augmentation;
    const ChainComplex& base = eps.target();
    if (x.extra_degeneracy.size() != x.levels.size())
        return {false, "extra degeneracy data incomplete"};

    for (int n = 0; n <= top; ++n) {
        const ChainMap& s = x.extra_degeneracy[static_cast<std::size_t>(n)];
        const ChainComplex& src = (n == 0) ? base : x.level(n - 1);
        if (s.source() != src || s.target() != x.level(n))
            return {false, "s_{-1} has wrong endpoints" + at_level(n)};
        ValidationResult v = validate_map(s);
        if (!v.ok)
            return {false,
                    "s_{-1}" + at_level(n) + " is not a chain map: " + v.detail};
    }

    if (compose(eps, x.extra_degeneracy[0]) != identity_map(base))
        return {false, "eps s_{-1} != id on the augmentation target"};

    for (int n = 1; n <= top; ++n) {
        const ChainMap& s = x.extra_degeneracy[static_cast<std::size_t>(n)];
        if (compose(x.face(n, 0), s) != identity_map(x.level(n - 1)))
            return {false, "d_0 s_{-1} != id" + at_level(n)};
        for (int i = 0; i + 1 <= n; ++i) {
            ChainMap lhs = compose(x.face(n, i + 1), s);
            ChainMap rhs =
                (n == 1) ? compose(x.extra_degeneracy[0], eps)
                         : compose(
                               x.extra_degeneracy[static_cast<std::size_t>(n - 1)],
                               x.face(n - 1, i));
            if (lhs != rhs)
                return {false, "d_" + std::to_string(i + 1) +
                                   " s_{-1} != s_{-1} d_" + std::to_string(i) +
                                   at_level(n)};
        }
    }

    for (int n = 1; n < top; ++n)
        for (int j = 0; j + 1 <= n; ++j) {
            ChainMap lhs =
                compose(x.degeneracy(n, j + 1),
                        x.extra_degeneracy[static_cast<std::size_t>(n)]);
            ChainMap rhs =
                compose(x.extra_degeneracy[static_cast<std::size_t>(n + 1)],
                        x.degeneracy(n - 1, j));
            if (lhs != rhs)
                return {false, "s_" + std::to_string(j + 1) +
                                   " s_{-1} != s_{-1} s_" + std::to_string(j) +
                                   at_level(n)};
        }

    return {};
}

std::vector<NormalizedLevel> normalize(const SimplicialObject& x) {
    std::vector<NormalizedLevel> out;
    int top = x.truncation();
    for (int n = 0; n <= top; ++n) {
        const ChainComplex& c = x.level(n);
        std::map<int, IntMatrix> gens;
        Window s = c.support();
        if (n >= 1 && !s.empty()) {
            for (int deg = s.lo; deg <= s.hi; ++deg) {
                IntMatrix g(c.rank(deg), 0);
                for (int j = 0; j < n; ++j)
                    g = IntMatrix::hcat(g,
                                        x.degeneracy(n - 1, j).component(deg));
                if (g.cols() > 0 && !g.is_zero()) gens[deg] = g;
            }
        }
        QuotientComplex q(c, gens);
        QuotientModel m = quotient_model(q);
        if (!m.exact)
            throw std::invalid_argument(
                "normalize: degeneracy images do not split" + at_level(n));
        out.push_back({m.complex, m.from_cover, m.section});
    }
    return out;
}

Realization realize(const SimplicialObject& x, Window window,
                    NondegBound tail) {
    Realization r;
    r.levels = normalize(x);
    int top = x.truncation();

    r.simplicial_diff.resize(static_cast<std::size_t>(top) + 1);
    for (int n = 1; n <= top; ++n) {
        const NormalizedLevel& src = r.levels[static_cast<std::size_t>(n)];
        const NormalizedLevel& dst = r.levels[static_cast<std::size_t>(n - 1)];
        std::map<int, IntMatrix> comps;
        Window s = src.complex.support();
        for (int k = s.lo; k <= s.hi && !s.empty(); ++k) {
            if (src.complex.rank(k) == 0) continue;
            IntMatrix m = normalized_face_sum(x, r.levels, n, k);
            if (!m.is_zero()) comps[k] = m;
        }
        r.simplicial_diff[static_cast<std::size_t>(n)] =
            ChainMap(src.complex, dst.complex, comps);
    }

    Window pad = window.padded(2);
    std::map<int, std::size_t> ranks;
    for (int n = 0; n <= top; ++n) {
        Window s = r.levels[static_cast<std::size_t>(n)].complex.support();
        if (s.empty()) continue;
        for (int k = s.lo; k <= s.hi; ++k) {
            std::size_t sz =
                r.levels[static_cast<std::size_t>(n)].complex.rank(k);
            int m = n + k;
            if (sz == 0 || !pad.contains(m)) continue;
            r.pieces[m].push_back({n, ranks[m], sz});
            ranks[m] += sz;
        }
    }

    std::map<int, IntMatrix> diffs;
    for (const auto& [m, ps] : r.pieces) {
        auto below = r.pieces.find(m - 1);
        if (below == r.pieces.end()) continue;
        IntMatrix d(ranks.at(m - 1), ranks.at(m));
        for (const auto& p : ps) {
            int k = m - p.level;
            const NormalizedLevel& nl =
                r.levels[static_cast<std::size_t>(p.level)];
            const IntMatrix& di = nl.complex.diff(k);
            if (di.rows() > 0 && !di.is_zero()) {
                const Realization::Piece* t = find_piece(below->second, p.level);
                if (t) d.set_block(t->offset, p.offset, di);
            }
            if (p.level >= 1) {
                IntMatrix sm =
                    r.simplicial_diff[static_cast<std::size_t>(p.level)]
                        .component(k);
                if (sm.rows() > 0 && !sm.is_zero()) {
                    const Realization::Piece* t =
                        find_piece(below->second, p.level - 1);
                    if (t)
                        d.set_block(t->offset, p.offset,
                                    k % 2 == 0 ? sm : -sm);
                }
            }
        }
        if (!d.is_zero()) diffs[m] = d;
    }
    r.total = ChainComplex(ranks, diffs);

    r.certificate.window = window;
    r.certificate.tail = tail;
    for (int n = 0; n <= top; ++n) {
        Window s = r.levels[static_cast<std::size_t>(n)].complex.support();
        r.certificate.level_min_degree.push_back(s.empty() ? INT_MAX
                                                           : n + s.lo);
    }
    if (window.empty()) {
        r.certificate.sound = true;
    } else {
        switch (tail.kind) {
            case NondegBound::Kind::vanishes:
                r.certificate.sound = true;
                break;
            case NondegBound::Kind::affine:
                // Omitted levels live in total degrees >= base + slope*n;
                // degrees up to window.hi stay exact when even the lowest
                // omitted generator sits at least two above the window top
                // (one above would still delete boundaries into degree hi).
                r.certificate.sound =
                    tail.slope >= 0 &&
                    tail.base + tail.slope * (static_cast<long>(top) + 1) >=
                        static_cast<long>(window.hi) + 2;
                break;
            case NondegBound::Kind::unknown:
                r.certificate.sound = false;
                break;
        }
    }
    return r;
}

ChainMap realize_map(const Realization& rx, const Realization& ry,
                     const std::vector<ChainMap>& levelwise) {
    if (levelwise.size() != rx.levels.size() ||
        rx.levels.size() != ry.levels.size())
        throw std::invalid_argument("realize_map: level count mismatch");
    if (rx.certificate.window != ry.certificate.window)
        throw std::invalid_argument("realize_map: window mismatch");
    for (std::size_t n = 0; n < levelwise.size(); ++n)
        if (levelwise[n].source() != rx.levels[n].projection.source() ||
            levelwise[n].target() != ry.levels[n].projection.source())
            throw std::invalid_argument("realize_map: wrong endpoints" +
                                        at_level(static_cast<int>(n)));

    std::map<int, IntMatrix> comps;
    for (const auto& [m, ps] : rx.pieces) {
        IntMatrix g(ry.total.rank(m), rx.total.rank(m));
        for (const auto& p : ps) {
            auto it = ry.pieces.find(m);
            const Realization::Piece* t =
                it == ry.pieces.end() ? nullptr
                                      : find_piece(it->second, p.level);
            if (!t) continue;
            int k = m - p.level;
            std::size_t lvl = static_cast<std::size_t>(p.level);
            IntMatrix mat = ry.levels[lvl].projection.component(k) *
                            levelwise[lvl].component(k) *
                            section_component(rx.levels[lvl], k);
            if (!mat.is_zero()) g.set_block(t->offset, p.offset, mat);
        }
        if (!g.is_zero()) comps[m] = g;
    }
    return ChainMap(rx.total, ry.total, comps);
}

ChainMap augmentation_map(const SimplicialObject& x, const Realization& rx) {
    if (!x.augmented())
        throw std::invalid_argument("augmentation_map: object not augmented");
    const ChainMap& eps = *x.augmentation;
    const ChainComplex& base = eps.target();
    std::map<int, IntMatrix> comps;
    for (const auto& [m, ps] : rx.pieces) {
        const Realization::Piece* p = find_piece(ps, 0);
        if (!p || base.rank(m) == 0) continue;
        IntMatrix g(base.rank(m), rx.total.rank(m));
        IntMatrix mat =
            eps.component(m) * section_component(rx.levels[0], m);
        g.set_block(0, p->offset, mat);
        if (!g.is_zero()) comps[m] = g;
    }
    return ChainMap(rx.total, base, comps);
}

CollapseReport collapse_check(const SimplicialObject& x, Window window,
                              NondegBound tail) {
    CollapseReport rep;
    rep.extra = check_extra_degeneracy(x);
    if (!x.augmented()) {
        rep.qiso.window = window;
        return rep;
    }
    Realization rx = realize(x, window, tail);
    rep.certificate = rx.certificate;
    rep.qiso = quasi_iso_on(augmentation_map(x, rx), window);
    return rep;
}

ChainComplex dold_kan_normalize(const SimplicialObject& x) {
    int top = x.truncation();
    for (int n = 0; n <= top; ++n) {
        Window s = x.level(n).support();
        if (!s.empty() && (s.lo != 0 || s.hi != 0))
            throw std::invalid_argument(
                "dold_kan_normalize: level not concentrated in degree 0" +
                at_level(n));
    }
    std::vector<NormalizedLevel> norm = normalize(x);
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = 0; n <= top; ++n)
        ranks[n] = norm[static_cast<std::size_t>(n)].complex.rank(0);
    for (int n = 1; n <= top; ++n) {
        if (ranks[n] == 0 || ranks[n - 1] == 0) continue;
        IntMatrix d = normalized_face_sum(x, norm, n, 0);
        if (!d.is_zero()) diffs[n] = d;
    }
    return ChainComplex(ranks, diffs);
}

namespace {

// Monotone surjections [n] ->> [k], all k, as value vectors of length n + 1.
struct Surjection {
    std::vector<int> values;
    int peak = 0;  // k
};

std::vector<Surjection> surjections_from(int n) {
    std::vector<Surjection> out;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        Surjection s;
        s.values.resize(static_cast<std::size_t>(n) + 1);
        int cur = 0;
        for (int i = 0; i < n; ++i) {
            if ((mask >> i) & 1u) ++cur;
            s.values[static_cast<std::size_t>(i) + 1] = cur;
        }
        s.peak = cur;
        out.push_back(std::move(s));
    }
    std::sort(out.begin(), out.end(),
              [](const Surjection& a, const Surjection& b) {
                  return a.values < b.values;
              });
    return out;
}

struct GammaLevel {
    std::vector<Surjection> surjs;
    std::vector<std::size_t> offsets;
    std::size_t total = 0;
    std::map<std::vector<int>, std::size_t> index;
};

GammaLevel gamma_level(const ChainComplex& c, int n) {
    GammaLevel g;
    g.surjs = surjections_from(n);
    for (std::size_t i = 0; i < g.surjs.size(); ++i) {
        g.offsets.push_back(g.total);
        g.index[g.surjs[i].values] = i;
        g.total += c.rank(g.surjs[i].peak);
    }
    return g;
}

// Component of the inverse construction on a cosimplicial operator
// alpha: [m] -> [n], acting from level n to level m. The composite of a
// summand surjection with alpha factors as surjection o injection; the
// injection contributes the identity, the sign-twisted differential
// (-1)^k d_k when exactly the top of [k] is missed, and zero otherwise.
IntMatrix gamma_structure(const ChainComplex& c, const GammaLevel& src,
                          const GammaLevel& dst,
                          const std::vector<int>& alpha) {
    IntMatrix g(dst.total, src.total);
    for (std::size_t si = 0; si < src.surjs.size(); ++si) {
        const Surjection& s = src.surjs[si];
        int k = s.peak;
        std::size_t rk = c.rank(k);
        if (rk == 0) continue;
        std::vector<int> comp(alpha.size());
        for (std::size_t i = 0; i < alpha.size(); ++i)
            comp[i] = s.values[static_cast<std::size_t>(alpha[i])];
        std::vector<int> values;
        for (int v : comp)
            if (values.empty() || values.back() != v) values.push_back(v);
        int r = static_cast<int>(values.size()) - 1;
        std::vector<int> tau(comp.size());
        for (std::size_t i = 0; i < comp.size(); ++i)
            tau[i] = static_cast<int>(
                std::lower_bound(values.begin(), values.end(), comp[i]) -
                values.begin());
        std::size_t di = dst.index.at(tau);
        std::size_t off_src = src.offsets[si];
        std::size_t off_dst = dst.offsets[di];
        if (r == k) {
            for (std::size_t t = 0; t < rk; ++t)
                g.at(off_dst + t, off_src + t) += 1;
        } else if (r == k - 1 && values.back() == k - 1) {
            const IntMatrix& d = c.diff(k);
            IntMatrix block = (k % 2 == 0) ? d : -d;
            for (std::size_t a = 0; a < block.rows(); ++a)
                for (std::size_t b = 0; b < block.cols(); ++b)
                    g.at(off_dst + a, off_src + b) += block.at(a, b);
        }
    }
    return g;
}

ChainComplex degree_zero_complex(std::size_t rank) {
    if (rank == 0) return ChainComplex();
    return ChainComplex({{0, rank}}, {});
}

}  // namespace

SimplicialObject dold_kan_gamma(const ChainComplex& c, int truncation) {
    Window s = c.support();
    if (!s.empty() && s.lo < 0)
        throw std::invalid_argument(
            "dold_kan_gamma: complex has negative degrees");
    if (truncation < 0)
        throw std::invalid_argument("dold_kan_gamma: negative truncation");

    int top = truncation;
    std::vector<GammaLevel> lv;
    for (int n = 0; n <= top; ++n) lv.push_back(gamma_level(c, n));

    SimplicialObject x;
    for (int n = 0; n <= top; ++n)
        x.levels.push_back(
            degree_zero_complex(lv[static_cast<std::size_t>(n)].total));
    x.faces.resize(static_cast<std::size_t>(top) + 1);
    x.degeneracies.resize(static_cast<std::size_t>(top) + 1);

    for (int n = 1; n <= top; ++n) {
        for (int i = 0; i <= n; ++i) {
            // Coface [n-1] -> [n] skipping i.
            std::vector<int> alpha(static_cast<std::size_t>(n));
            for (int t = 0; t < n; ++t) alpha[static_cast<std::size_t>(t)] =
                t < i ? t : t + 1;
            IntMatrix m = gamma_structure(
                c, lv[static_cast<std::size_t>(n)],
                lv[static_cast<std::size_t>(n - 1)], alpha);
            std::map<int, IntMatrix> comps;
            if (m.rows() > 0 && m.cols() > 0) comps[0] = m;
            x.faces[static_cast<std::size_t>(n)].push_back(
                ChainMap(x.level(n), x.level(n - 1), comps));
        }
    }
    for (int n = 0; n < top; ++n) {
        for (int j = 0; j <= n; ++j) {
            // Codegeneracy [n+1] -> [n] repeating j.
            std::vector<int> alpha(static_cast<std::size_t>(n) + 2);
            for (int t = 0; t <= n + 1; ++t)
                alpha[static_cast<std::size_t>(t)] = t <= j ? t : t - 1;
            IntMatrix m = gamma_structure(
                c, lv[static_cast<std::size_t>(n)],
                lv[static_cast<std::size_t>(n + 1)], alpha);
            std::map<int, IntMatrix> comps;
            if (m.rows() > 0 && m.cols() > 0) comps[0] = m;
            x.degeneracies[static_cast<std::size_t>(n)].push_back(
                ChainMap(x.level(n), x.level(n + 1), comps));
        }
    }
    return x;
}

}  // namespace dgc
