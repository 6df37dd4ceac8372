#include "dgcolim/colim.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgc {

namespace {

void require_shared_host(const DgCategory& a, const DgCategory& b,
                         const char* who) {
    if (!dg_category_equal(a, b))
        throw std::invalid_argument(std::string(who) + ": host mismatch");
}

// All tuples in [0,k)^len, lexicographic, last coordinate fastest.
std::vector<std::vector<int>> object_tuples(int k, int len) {
    std::vector<std::vector<int>> out;
    if (k <= 0 || len <= 0) return out;
    std::vector<int> cur(static_cast<std::size_t>(len), 0);
    while (true) {
        out.push_back(cur);
        int i = len - 1;
        while (i >= 0 && cur[static_cast<std::size_t>(i)] == k - 1) {
            cur[static_cast<std::size_t>(i)] = 0;
            --i;
        }
        if (i < 0) break;
        ++cur[static_cast<std::size_t>(i)];
    }
    return out;
}

std::size_t tuple_index(const std::vector<int>& t, int k) {
    std::size_t idx = 0;
    for (int c : t) idx = idx * static_cast<std::size_t>(k) +
                          static_cast<std::size_t>(c);
    return idx;
}

// Level word for the tuple (c_0,...,c_n):
//   [ Wc_n, hom(c_{n-1},c_n), ..., hom(c_0,c_1), Dc_0 ].
TensorWord bar_word(const Presheaf& w, const Diagram& d,
                    const std::vector<int>& t) {
    std::vector<ChainComplex> f;
    int n = static_cast<int>(t.size()) - 1;
    f.push_back(w.value(t[static_cast<std::size_t>(n)]));
    for (int j = n; j >= 1; --j)
        f.push_back(w.host.hom(t[static_cast<std::size_t>(j - 1)],
                               t[static_cast<std::size_t>(j)]));
    f.push_back(d.value(t[0]));
    return TensorWord(std::move(f));
}

ChainMap retarget(const ChainMap& f, const ChainComplex& src,
                  const ChainComplex& tgt) {
    std::map<int, IntMatrix> comps;
    Window s = Window::hull(src.support(), tgt.support());
    for (int n = s.lo; n <= s.hi; ++n) {
        if (src.rank(n) == 0 || tgt.rank(n) == 0) continue;
        comps[n] = f.component(n);
    }
    return ChainMap(src, tgt, comps);
}

ChainMap bar_face(const Presheaf& w, const Diagram& d,
                  const std::vector<std::vector<int>>& tuples,
                  const WordSum& src, const WordSum& dst, int n, int i,
                  int k) {
    std::vector<WordBlock> blocks;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        const auto& t = tuples[ti];
        std::vector<int> u = t;
        u.erase(u.begin() + (i == 0 ? 0 : i));
        std::size_t di = tuple_index(u, k);
        std::size_t pos;
        const ChainMap* m;
        if (i == 0) {
            pos = static_cast<std::size_t>(n);
            m = &d.action(t[0], t[1]);
        } else if (i == n) {
            pos = 0;
            m = &w.action(t[static_cast<std::size_t>(n - 1)],
                          t[static_cast<std::size_t>(n)]);
        } else {
            pos = static_cast<std::size_t>(n - i);
            m = &w.host.comp(t[static_cast<std::size_t>(i - 1)],
                             t[static_cast<std::size_t>(i)],
                             t[static_cast<std::size_t>(i + 1)]);
        }
        blocks.push_back(
            {ti, di, contract_adjacent(src.word(ti), pos, *m, dst.word(di)),
             1});
    }
    return word_sum_map(src, dst, blocks);
}

ChainMap bar_degeneracy(const Presheaf& w,
                        const std::vector<std::vector<int>>& tuples,
                        const WordSum& src, const WordSum& dst, int n, int j,
                        int k) {
    std::vector<WordBlock> blocks;
    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        const auto& t = tuples[ti];
        std::vector<int> u = t;
        u.insert(u.begin() + j, t[static_cast<std::size_t>(j)]);
        std::size_t di = tuple_index(u, k);
        blocks.push_back(
            {ti, di,
             insert_factor(src.word(ti), static_cast<std::size_t>(n + 1 - j),
                           w.host.unit(t[static_cast<std::size_t>(j)]),
                           dst.word(di)),
             1});
    }
    return word_sum_map(src, dst, blocks);
}

// Evaluation against a corepresented slot: collapses each cover word
// (Wc, hom(obj, c)) onto W(obj) through the weight action.
ChainMap bar_evaluation(const BarConstruction& b, int obj,
                        const WordSum& dst) {
    std::vector<WordBlock> blocks;
    int k = b.weight.host.size();
    for (int c = 0; c < k; ++c)
        blocks.push_back({static_cast<std::size_t>(c), 0,
                          contract_adjacent(b.colimit.cover.word(
                                                static_cast<std::size_t>(c)),
                                            0, b.weight.action(obj, c),
                                            dst.word(0)),
                          1});
    return word_sum_map(b.colimit.cover, dst, blocks);
}

// Identity-on-level-zero comparison lift: the realization projects onto its
// level-0 pieces through the normalization sections. Its differential
// defect lies in the image of d_0 - d_1, i.e. in the colimit relations.
ChainMap bar_comparison_lift(const BarConstruction& b, const Realization& rx) {
    const ChainComplex& total = rx.total;
    const ChainComplex& cover = b.colimit.cover.total();
    std::map<int, IntMatrix> comps;
    Window s = total.support();
    for (int m = s.lo; m <= s.hi; ++m) {
        if (total.rank(m) == 0 || cover.rank(m) == 0) continue;
        IntMatrix g(cover.rank(m), total.rank(m));
        auto it = rx.pieces.find(m);
        if (it != rx.pieces.end()) {
            for (const auto& p : it->second) {
                if (p.level != 0) continue;
                auto sec = rx.levels[0].section.find(m);
                if (sec == rx.levels[0].section.end()) continue;
                g.set_block(0, p.offset, sec->second);
            }
        }
        comps[m] = g;
    }
    return ChainMap(total, cover, comps);
}

// Degree hull of the realization total of a bar object: level n contributes
// its support shifted up by n. Realizing on this hull cuts nothing.
Window total_hull(const SimplicialObject& x) {
    Window hull;
    for (std::size_t n = 0; n < x.levels.size(); ++n) {
        Window s = x.levels[n].support();
        if (s.empty()) continue;
        Window shifted{s.lo + static_cast<int>(n),
                       s.hi + static_cast<int>(n)};
        hull = Window::hull(hull, shifted);
    }
    return hull;
}

BarCompareReport bar_compare_built(const BarConstruction& b,
                                   const Window& window,
                                   const NondegBound& tail, bool certified) {
    NondegBound t = tail;
    if (t.kind == NondegBound::Kind::unknown)
        t = bar_degree_bound(b.weight, b.diagram);
    // Compare on the uncut realization: degree cuts would leave boundary
    // defects the quotient cannot absorb. The windowed realization only
    // supplies the truncation certificate.
    Realization full = realize(b.object, total_hull(b.object), t);
    Realization windowed = realize(b.object, window, t);
    ChainMap lift = bar_comparison_lift(b, full);
    ChainMap cmp = map_into_quotient(b.colimit.quotient, b.colimit.model, lift);
    BarCompareReport r;
    r.bar_homology = homology(full.total, window);
    r.colimit_homology = b.colimit.quotient.homology(window);
    r.comparison = quasi_iso_on(cmp, window);
    r.certificate = windowed.certificate;
    r.weight_certified = certified;
    r.window = window;
    return r;
}

std::string mask_name(const CubicalDiagram& x, std::size_t mask) {
    std::string out = "{";
    bool first = true;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (!(mask & (std::size_t(1) << i))) continue;
        if (!first) out += ",";
        out += x.axes[i];
        first = false;
    }
    return out + "}";
}

}  // namespace

WeightedColimit weighted_colimit(const Presheaf& w, const Diagram& d) {
    require_shared_host(w.host, d.host, "weighted_colimit");
    int k = w.host.size();

    std::vector<TensorWord> cov;
    for (int c = 0; c < k; ++c)
        cov.push_back(TensorWord({w.value(c), d.value(c)}));
    WordSum cover(std::move(cov));

    auto pairs = object_tuples(k, 2);
    std::vector<TensorWord> rel_words;
    for (const auto& p : pairs)
        rel_words.push_back(
            TensorWord({w.value(p[1]), w.host.hom(p[0], p[1]), d.value(p[0])}));
    WordSum rsum(std::move(rel_words));

    std::vector<WordBlock> blocks;
    for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
        int c0 = pairs[pi][0], c1 = pairs[pi][1];
        blocks.push_back({pi, static_cast<std::size_t>(c0),
                          contract_adjacent(rsum.word(pi), 0, w.action(c0, c1),
                                            cover.word(
                                                static_cast<std::size_t>(c0))),
                          1});
        blocks.push_back({pi, static_cast<std::size_t>(c1),
                          contract_adjacent(rsum.word(pi), 1, d.action(c0, c1),
                                            cover.word(
                                                static_cast<std::size_t>(c1))),
                          -1});
    }
    ChainMap rel = word_sum_map(rsum, cover, blocks);

    std::map<int, IntMatrix> gens;
    Window rs = rsum.total().support();
    for (int m = rs.lo; m <= rs.hi; ++m) {
        if (rsum.total().rank(m) == 0 || cover.total().rank(m) == 0) continue;
        gens[m] = rel.component(m);
    }
    QuotientComplex q(cover.total(), gens);
    QuotientModel model = quotient_model(q);
    std::vector<ChainMap> cone;
    for (int c = 0; c < k; ++c)
        cone.push_back(compose(model.from_cover,
                               cover.inclusion(static_cast<std::size_t>(c))));
    ChainComplex complex = model.complex;
    bool exact = model.exact;
    return {std::move(complex), exact,           std::move(q),
            std::move(model),   std::move(cover), std::move(rsum),
            std::move(rel),     std::move(cone)};
}

ChainMap yoneda_evaluation(const WeightedColimit& wc, const Diagram& d,
                           int obj) {
    WordSum dst(std::vector<TensorWord>{TensorWord({d.value(obj)})});
    std::vector<WordBlock> blocks;
    for (std::size_t c = 0; c < wc.cover.count(); ++c)
        blocks.push_back({c, 0,
                          contract_adjacent(wc.cover.word(c), 0,
                                            d.action(static_cast<int>(c), obj),
                                            dst.word(0)),
                          1});
    ChainMap ev = word_sum_map(wc.cover, dst, blocks);
    return retarget(ev, wc.cover.total(), d.value(obj));
}

BarConstruction bar_construction(const Presheaf& w, const Diagram& d, int n) {
    if (n < 0)
        throw std::invalid_argument("bar_construction: negative truncation");
    require_shared_host(w.host, d.host, "bar_construction");
    int k = w.host.size();

    WeightedColimit colimit = weighted_colimit(w, d);

    std::vector<std::vector<std::vector<int>>> tuples;
    std::vector<WordSum> sums;
    for (int lev = 0; lev <= n; ++lev) {
        auto ts = object_tuples(k, lev + 1);
        std::vector<TensorWord> words;
        words.reserve(ts.size());
        for (const auto& t : ts) words.push_back(bar_word(w, d, t));
        tuples.push_back(std::move(ts));
        sums.emplace_back(std::move(words));
    }

    SimplicialObject x;
    for (int lev = 0; lev <= n; ++lev)
        x.levels.push_back(sums[static_cast<std::size_t>(lev)].total());
    x.faces.resize(static_cast<std::size_t>(n) + 1);
    x.degeneracies.resize(static_cast<std::size_t>(n) + 1);
    for (int lev = 1; lev <= n; ++lev)
        for (int i = 0; i <= lev; ++i)
            x.faces[static_cast<std::size_t>(lev)].push_back(
                bar_face(w, d, tuples[static_cast<std::size_t>(lev)],
                         sums[static_cast<std::size_t>(lev)],
                         sums[static_cast<std::size_t>(lev - 1)], lev, i, k));
    for (int lev = 0; lev < n; ++lev)
        for (int j = 0; j <= lev; ++j)
            x.degeneracies[static_cast<std::size_t>(lev)].push_back(
                bar_degeneracy(w, tuples[static_cast<std::size_t>(lev)],
                               sums[static_cast<std::size_t>(lev)],
                               sums[static_cast<std::size_t>(lev + 1)], lev, j,
                               k));
    if (colimit.model.exact) x.augmentation = colimit.model.from_cover;

    return {std::move(x),     std::move(colimit), w, d, std::move(tuples),
            std::move(sums), n};
}

void attach_bar_contraction(BarConstruction& b, int obj) {
    if (obj < 0 || obj >= b.weight.host.size())
        throw std::invalid_argument("attach_bar_contraction: no such object");
    if (!b.colimit.model.exact)
        throw std::invalid_argument(
            "attach_bar_contraction: colimit model is not exact");
    const DgCategory& host = b.weight.host;
    int k = host.size();
    {
        // The contraction composes with units on the right, which is only
        // simplicial when the diagram is the corepresented one.
        Diagram co = corepresentable(host, obj);
        for (int c = 0; c < k; ++c) {
            if (b.diagram.value(c) != co.value(c))
                throw std::invalid_argument(
                    "attach_bar_contraction: diagram is not corepresented "
                    "at that object");
            for (int cp = 0; cp < k; ++cp)
                if (!(b.diagram.action(c, cp) == co.action(c, cp)))
                    throw std::invalid_argument(
                        "attach_bar_contraction: diagram actions are not "
                        "the corepresented ones");
        }
    }

    TensorWord wobj({b.weight.value(obj)});
    WordSum dst(std::vector<TensorWord>{wobj});
    ChainMap ev = bar_evaluation(b, obj, dst);
    ChainMap phi = map_from_quotient(b.colimit.quotient, b.colimit.model, ev);

    ChainMap ins =
        insert_factor(wobj, 1, host.unit(obj),
                      b.colimit.cover.word(static_cast<std::size_t>(obj)));
    ChainMap into_cover = compose(
        b.colimit.cover.inclusion(static_cast<std::size_t>(obj)), ins);

    std::vector<ChainMap> extra;
    extra.push_back(compose(into_cover, phi));
    for (int lev = 1; lev <= b.truncation; ++lev) {
        const auto& ts = b.tuples[static_cast<std::size_t>(lev - 1)];
        std::vector<WordBlock> blocks;
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            std::vector<int> u = ts[ti];
            u.insert(u.begin(), obj);
            std::size_t di = tuple_index(u, k);
            blocks.push_back(
                {ti, di,
                 insert_factor(b.sums[static_cast<std::size_t>(lev - 1)].word(
                                   ti),
                               static_cast<std::size_t>(lev + 1),
                               host.unit(obj),
                               b.sums[static_cast<std::size_t>(lev)].word(di)),
                 1});
        }
        extra.push_back(word_sum_map(b.sums[static_cast<std::size_t>(lev - 1)],
                                     b.sums[static_cast<std::size_t>(lev)],
                                     blocks));
    }
    b.object.extra_degeneracy = std::move(extra);
}

NondegBound bar_degree_bound(const Presheaf& w, const Diagram& d) {
    int k = w.host.size();
    bool any_w = false, any_d = false;
    long wlo = 0, dlo = 0;
    for (int c = 0; c < k; ++c) {
        Window s = w.value(c).support();
        if (!s.empty()) {
            wlo = any_w ? std::min(wlo, static_cast<long>(s.lo))
                        : static_cast<long>(s.lo);
            any_w = true;
        }
        Window t = d.value(c).support();
        if (!t.empty()) {
            dlo = any_d ? std::min(dlo, static_cast<long>(t.lo))
                        : static_cast<long>(t.lo);
            any_d = true;
        }
    }
    if (!any_w || !any_d) return NondegBound::vanishes();
    long hlo = 0;
    bool any_h = false;
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            Window s = w.host.hom(a, b).support();
            if (s.empty()) continue;
            hlo = any_h ? std::min(hlo, static_cast<long>(s.lo))
                        : static_cast<long>(s.lo);
            any_h = true;
        }
    // With every hom zero only level 0 survives at all.
    if (!any_h) return NondegBound::vanishes();
    // Level n words sit in internal degrees >= wlo + dlo + n*hlo, hence in
    // total degrees >= (wlo + dlo) + n*(hlo + 1).
    return NondegBound::affine(wlo + dlo, hlo + 1);
}

std::optional<NondegBound> free_bar_vanishing(const FiniteCategory& shape,
                                              int truncation) {
    if (!is_loop_free(shape)) return std::nullopt;
    int k = shape.size();
    // Longest chain of composable nonidentity morphisms: longest path in
    // the DAG with an edge i -> j whenever a nonidentity morphism exists.
    std::vector<std::vector<int>> next(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            if (i == j) continue;  // loop-free: no nonidentity endos
            if (!shape.morphisms(i, j).empty())
                next[static_cast<std::size_t>(i)].push_back(j);
        }
    std::vector<int> memo(static_cast<std::size_t>(k), -1);
    std::function<int(int)> longest = [&](int i) -> int {
        int& m = memo[static_cast<std::size_t>(i)];
        if (m >= 0) return m;
        m = 0;
        for (int j : next[static_cast<std::size_t>(i)])
            m = std::max(m, 1 + longest(j));
        return m;
    };
    int l = 0;
    for (int i = 0; i < k; ++i) l = std::max(l, longest(i));
    if (truncation >= l) return NondegBound::vanishes();
    return std::nullopt;
}

BarCompareReport bar_compare(const Presheaf& w, const Diagram& d, int n,
                             const Window& window, const NondegBound& tail) {
    BarConstruction b = bar_construction(w, d, n);
    return bar_compare_built(b, window, tail, false);
}

BarCompareReport bar_compare(const WeightCell& w, const Diagram& d, int n,
                             const Window& window, const NondegBound& tail) {
    ValidationResult replay = replay_weight_cell(w);
    BarConstruction b = bar_construction(w.presheaf, d, n);
    return bar_compare_built(b, window, tail, replay.ok);
}

// --- certified-cofibrant weights ------------------------------------------

namespace {

std::string presheaf_mismatch(const Presheaf& a, const Presheaf& b) {
    if (!dg_category_equal(a.host, b.host)) return "hosts differ";
    int k = a.host.size();
    for (int c = 0; c < k; ++c)
        if (a.value(c) != b.value(c))
            return "values differ at " + a.host.objects[
                       static_cast<std::size_t>(c)];
    for (int cp = 0; cp < k; ++cp)
        for (int c = 0; c < k; ++c)
            if (!(a.action(cp, c) == b.action(cp, c)))
                return "actions differ at (" +
                       a.host.objects[static_cast<std::size_t>(cp)] + ", " +
                       a.host.objects[static_cast<std::size_t>(c)] + ")";
    return "";
}

// Rebuilds the action on a two-part value (old part P, then new part Q in
// every degree) from the separate actions, rearranging tensor(P (+) Q, h)
// columns into the glued layout. Entries are copied verbatim: the
// rearrangement preserves factor order, so no signs arise.
ChainMap glue_two_part_action(const ChainComplex& src_sum,
                              const ChainComplex& psrc,
                              const ChainComplex& qsrc, const ChainComplex& h,
                              const ChainComplex& dst_sum,
                              const ChainMap& pact, const ChainMap& qact) {
    TensorWord big({src_sum, h});
    TensorWord pw({psrc, h});
    TensorWord qw({qsrc, h});
    std::map<int, IntMatrix> comps;
    Window s = big.total().support();
    for (int m = s.lo; m <= s.hi; ++m) {
        if (big.total().rank(m) == 0) continue;
        IntMatrix g(dst_sum.rank(m), big.total().rank(m));
        IntMatrix pc = pact.component(m);
        IntMatrix qc = qact.component(m);
        std::size_t row_off = pact.target().rank(m);
        const auto& sms = big.summands(m);
        for (std::size_t si = 0; si < sms.size(); ++si) {
            const auto& sm = sms[si];
            int a = sm.degrees[0], bdeg = sm.degrees[1];
            std::size_t hr = h.rank(bdeg);
            std::size_t pr = psrc.rank(a), qr = qsrc.rank(a);
            if (pr > 0) {
                std::size_t ps = pw.find_summand(m, {a, bdeg});
                for (std::size_t v = 0; v < pr; ++v)
                    for (std::size_t b = 0; b < hr; ++b) {
                        std::size_t col = big.flat_index(m, si, {v, b});
                        std::size_t small = pw.flat_index(m, ps, {v, b});
                        for (std::size_t r = 0; r < pc.rows(); ++r)
                            g.at(r, col) += pc.at(r, small);
                    }
            }
            if (qr > 0) {
                std::size_t qs = qw.find_summand(m, {a, bdeg});
                for (std::size_t v = 0; v < qr; ++v)
                    for (std::size_t b = 0; b < hr; ++b) {
                        std::size_t col =
                            big.flat_index(m, si, {pr + v, b});
                        std::size_t small = qw.flat_index(m, qs, {v, b});
                        for (std::size_t r = 0; r < qc.rows(); ++r)
                            g.at(row_off + r, col) += qc.at(r, small);
                    }
            }
        }
        comps[m] = g;
    }
    return ChainMap(tensor(src_sum, h), dst_sum, comps);
}

}  // namespace

WeightCell weight_cell_start(const DgCategory& host) {
    return {zero_presheaf(host), {}};
}

WeightCell attach_cell(const WeightCell& w, int object, int degree,
                       std::vector<ChainMap> attach) {
    const DgCategory& host = w.presheaf.host;
    if (object < 0 || object >= host.size())
        throw std::invalid_argument("attach_cell: no such object");
    Presheaf boundary =
        tensor_presheaf(representable(host, object), sphere(degree));
    PresheafMap am{attach};
    ValidationResult v = validate_presheaf_map(boundary, w.presheaf, am);
    if (!v.ok) throw std::invalid_argument("attach_cell: " + v.detail);

    Presheaf top =
        tensor_presheaf(representable(host, object), sphere(degree + 1));
    int k = host.size();

    Presheaf out;
    out.host = host;
    out.values.resize(static_cast<std::size_t>(k));
    out.actions.resize(static_cast<std::size_t>(k));
    for (auto& row : out.actions) row.resize(static_cast<std::size_t>(k));

    for (int x = 0; x < k; ++x) {
        const ChainComplex& p = w.presheaf.value(x);
        const ChainComplex& qv = top.value(x);
        Window hull = Window::hull(p.support(), qv.support());
        std::map<int, std::size_t> ranks;
        std::map<int, IntMatrix> diffs;
        for (int m = hull.lo; m <= hull.hi; ++m) {
            std::size_t r = p.rank(m) + qv.rank(m);
            if (r > 0) ranks[m] = r;
        }
        for (int m = hull.lo; m <= hull.hi + 1; ++m) {
            std::size_t rows = p.rank(m - 1) + qv.rank(m - 1);
            std::size_t cols = p.rank(m) + qv.rank(m);
            if (rows == 0 || cols == 0) continue;
            IntMatrix dm(rows, cols);
            if (p.rank(m) > 0 && p.rank(m - 1) > 0)
                dm.set_block(0, 0, p.diff(m));
            if (qv.rank(m) > 0 && qv.rank(m - 1) > 0)
                dm.set_block(p.rank(m - 1), p.rank(m), qv.diff(m));
            // Attaching twist: the cell boundary lands in the old part with
            // the tensor sign (-1)^{|h|} against the hom factor.
            if (qv.rank(m) > 0 && p.rank(m - 1) > 0) {
                IntMatrix t = attach[static_cast<std::size_t>(x)]
                                  .component(m - 1);
                if ((m - degree - 1) % 2 != 0) t = -t;
                dm.set_block(0, p.rank(m), t);
            }
            diffs[m] = dm;
        }
        out.values[static_cast<std::size_t>(x)] = ChainComplex(ranks, diffs);
    }

    for (int cp = 0; cp < k; ++cp)
        for (int cc = 0; cc < k; ++cc)
            out.actions[static_cast<std::size_t>(cp)]
                       [static_cast<std::size_t>(cc)] = glue_two_part_action(
                out.value(cc), w.presheaf.value(cc), top.value(cc),
                host.hom(cp, cc), out.value(cp),
                w.presheaf.action(cp, cc), top.action(cp, cc));

    WeightCell next{std::move(out), w.trace};
    next.trace.push_back({object, degree, std::move(attach)});
    return next;
}

WeightCell representable_cell(const DgCategory& host, int obj) {
    WeightCell start = weight_cell_start(host);
    Presheaf boundary =
        tensor_presheaf(representable(host, obj), sphere(-1));
    std::vector<ChainMap> attach;
    for (int x = 0; x < host.size(); ++x)
        attach.push_back(
            zero_map(boundary.value(x), start.presheaf.value(x)));
    return attach_cell(start, obj, -1, std::move(attach));
}

ValidationResult replay_weight_cell(const WeightCell& w) {
    WeightCell cur = weight_cell_start(w.presheaf.host);
    for (const auto& att : w.trace) {
        try {
            cur = attach_cell(cur, att.object, att.degree, att.attach);
        } catch (const std::invalid_argument& e) {
            return {false, std::string("replay step rejected: ") + e.what()};
        }
    }
    std::string diff = presheaf_mismatch(cur.presheaf, w.presheaf);
    if (!diff.empty()) return {false, "replay mismatch: " + diff};
    return {};
}

// --- cofibrant replacement -------------------------------------------------

namespace {

// Permutation isomorphism tensor(sum of words, k) -> sum of words each
// extended by k as a trailing factor. Factor order is preserved, so every
// entry is +1.
ChainMap distribute_trailing(const WordSum& sum, const ChainComplex& kk,
                             const WordSum& ext) {
    TensorWord big({sum.total(), kk});
    std::map<int, IntMatrix> comps;
    Window s = ext.total().support();
    for (int m = s.lo; m <= s.hi; ++m) {
        if (ext.total().rank(m) == 0) continue;
        IntMatrix g(ext.total().rank(m), big.total().rank(m));
        for (std::size_t wi = 0; wi < ext.count(); ++wi) {
            const TensorWord& ew = ext.word(wi);
            const TensorWord& bw = sum.word(wi);
            const auto& sms = ew.summands(m);
            for (std::size_t si = 0; si < sms.size(); ++si) {
                const auto& sm = sms[si];
                int l = sm.degrees.back();
                int m1 = m - l;
                std::vector<int> front(sm.degrees.begin(),
                                       sm.degrees.end() - 1);
                std::size_t bs = bw.find_summand(m1, front);
                std::size_t bigs = big.find_summand(m, {m1, l});
                ew.for_each_basis(
                    sm, [&](const std::vector<std::size_t>& idx,
                            std::size_t flat) {
                        std::size_t row = ext.offset(m, wi) + flat;
                        std::vector<std::size_t> fi(idx.begin(),
                                                    idx.end() - 1);
                        std::size_t v = sum.offset(m1, wi) +
                                        bw.flat_index(m1, bs, fi);
                        std::size_t col =
                            big.flat_index(m, bigs, {v, idx.back()});
                        g.at(row, col) = 1;
                    });
            }
        }
        comps[m] = g;
    }
    return ChainMap(big.total(), ext.total(), comps);
}

}  // namespace

ChainMap realize_action(const Realization& rx, const ChainComplex& kk,
                        const Realization& ry,
                        const std::vector<ChainMap>& levelwise) {
    if (levelwise.size() != rx.levels.size() ||
        rx.levels.size() != ry.levels.size())
        throw std::invalid_argument("realize_action: level count mismatch");
    TensorWord big({rx.total, kk});
    std::map<int, IntMatrix> comps;
    Window s = big.total().support();
    for (int m = s.lo; m <= s.hi; ++m) {
        if (big.total().rank(m) == 0) continue;
        IntMatrix g(ry.total.rank(m), big.total().rank(m));
        const auto& sms = big.summands(m);
        for (std::size_t si = 0; si < sms.size(); ++si) {
            const auto& sm = sms[si];
            int m1 = sm.degrees[0], l = sm.degrees[1];
            std::size_t rl = kk.rank(l);
            auto px = rx.pieces.find(m1);
            if (px == rx.pieces.end()) continue;
            for (const auto& piece : px->second) {
                int n = piece.level;
                int kdeg = m1 - n;
                const NormalizedLevel& nx =
                    rx.levels[static_cast<std::size_t>(n)];
                const NormalizedLevel& ny =
                    ry.levels[static_cast<std::size_t>(n)];
                const ChainComplex& rawx = nx.projection.source();
                TensorWord tw({rawx, kk});
                std::size_t ts = tw.find_summand(kdeg + l, {kdeg, l});
                if (ts == TensorWord::npos) continue;
                // B = projY o phi_n o (secX (x) id_k), restricted to the
                // (kdeg, l) summand columns.
                auto secit = nx.section.find(kdeg);
                if (secit == nx.section.end()) continue;
                const IntMatrix& sec = secit->second;
                IntMatrix phi = levelwise[static_cast<std::size_t>(n)]
                                    .component(kdeg + l);
                IntMatrix proj = ny.projection.component(kdeg + l);
                // columns: piece.size * rl
                IntMatrix e(tw.total().rank(kdeg + l), piece.size * rl);
                for (std::size_t j = 0; j < piece.size; ++j)
                    for (std::size_t b = 0; b < rl; ++b)
                        for (std::size_t v = 0; v < rawx.rank(kdeg); ++v) {
                            const Integer& c = sec.at(v, j);
                            if (c == 0) continue;
                            e.at(tw.flat_index(kdeg + l, ts, {v, b}),
                                 j * rl + b) += c;
                        }
                IntMatrix block = proj * (phi * e);
                bool nonzero = false;
                for (std::size_t r = 0; r < block.rows() && !nonzero; ++r)
                    for (std::size_t c = 0; c < block.cols() && !nonzero; ++c)
                        if (block.at(r, c) != 0) nonzero = true;
                if (!nonzero) continue;
                // target piece: level n at total degree m
                auto py = ry.pieces.find(m);
                const Realization::Piece* tp = nullptr;
                if (py != ry.pieces.end())
                    for (const auto& cand : py->second)
                        if (cand.level == n) tp = &cand;
                if (tp == nullptr)
                    throw std::logic_error(
                        "realize_action: target realization is missing a "
                        "level piece; both sides must be realized on full "
                        "hulls");
                bool flip = (static_cast<long>(n) * l) % 2 != 0;
                for (std::size_t j = 0; j < piece.size; ++j)
                    for (std::size_t b = 0; b < rl; ++b) {
                        std::size_t col = big.flat_index(
                            m, si, {piece.offset + j, b});
                        for (std::size_t r = 0; r < block.rows(); ++r) {
                            const Integer& c = block.at(r, j * rl + b);
                            if (c == 0) continue;
                            g.at(tp->offset + r, col) += flip ? -c : c;
                        }
                    }
            }
        }
        comps[m] = g;
    }
    return ChainMap(big.total(), ry.total, comps);
}

CofibrantReplacement cofibrant_replacement(const Presheaf& w, int n,
                                           const Window& window,
                                           const NondegBound& tail) {
    const DgCategory& host = w.host;
    int k = host.size();

    CofibrantReplacement out;
    out.presheaf.host = host;
    out.presheaf.values.resize(static_cast<std::size_t>(k));
    out.presheaf.actions.resize(static_cast<std::size_t>(k));
    for (auto& row : out.presheaf.actions)
        row.resize(static_cast<std::size_t>(k));

    for (int c = 0; c < k; ++c) {
        BarConstruction b = bar_construction(w, corepresentable(host, c), n);
        attach_bar_contraction(b, c);
        NondegBound t = tail;
        if (t.kind == NondegBound::Kind::unknown)
            t = bar_degree_bound(b.weight, b.diagram);
        Realization full = realize(b.object, total_hull(b.object), t);
        Realization windowed = realize(b.object, window, t);

        TensorWord wobj({w.value(c)});
        WordSum dst(std::vector<TensorWord>{wobj});
        ChainMap ev = bar_evaluation(b, c, dst);
        ChainMap phi =
            map_from_quotient(b.colimit.quotient, b.colimit.model, ev);
        phi = retarget(phi, b.colimit.model.complex, w.value(c));

        out.presheaf.values[static_cast<std::size_t>(c)] = full.total;
        out.augmentation.push_back(
            compose(phi, augmentation_map(b.object, full)));
        out.pointwise.push_back(
            quasi_iso_on(out.augmentation.back(), window));
        out.certificates.push_back(windowed.certificate);
        out.bars.push_back(std::move(b));
        out.realizations.push_back(std::move(full));
    }

    for (int cp = 0; cp < k; ++cp)
        for (int cc = 0; cc < k; ++cc) {
            const ChainComplex& kk = host.hom(cp, cc);
            std::vector<ChainMap> levelwise;
            for (int lev = 0; lev <= n; ++lev) {
                const auto& ts =
                    out.bars[static_cast<std::size_t>(cc)]
                        .tuples[static_cast<std::size_t>(lev)];
                const WordSum& src =
                    out.bars[static_cast<std::size_t>(cc)]
                        .sums[static_cast<std::size_t>(lev)];
                const WordSum& dstw =
                    out.bars[static_cast<std::size_t>(cp)]
                        .sums[static_cast<std::size_t>(lev)];
                std::vector<TensorWord> ext_words;
                ext_words.reserve(ts.size());
                for (std::size_t ti = 0; ti < ts.size(); ++ti) {
                    std::vector<ChainComplex> f = src.word(ti).factors();
                    f.push_back(kk);
                    ext_words.push_back(TensorWord(std::move(f)));
                }
                WordSum ext(ext_words);
                ChainMap dist = distribute_trailing(src, kk, ext);
                std::vector<WordBlock> blocks;
                for (std::size_t ti = 0; ti < ts.size(); ++ti)
                    blocks.push_back(
                        {ti, ti,
                         contract_adjacent(ext.word(ti),
                                           static_cast<std::size_t>(lev + 1),
                                           host.comp(cp, cc, ts[ti][0]),
                                           dstw.word(ti)),
                         1});
                levelwise.push_back(
                    compose(word_sum_map(ext, dstw, blocks), dist));
            }
            out.presheaf.actions[static_cast<std::size_t>(cp)]
                                [static_cast<std::size_t>(cc)] =
                realize_action(out.realizations[static_cast<std::size_t>(cc)],
                               kk,
                               out.realizations[static_cast<std::size_t>(cp)],
                               levelwise);
        }
    return out;
}

HocolimResult bk_hocolim(const Diagram& d, const FiniteCategory& shape,
                         int n, const Window& window) {
    DgCategory fc = free_dg_category(shape);
    if (!dg_category_equal(d.host, fc))
        throw std::invalid_argument(
            "bk_hocolim: diagram host is not the free dg-category of the "
            "shape");
    Presheaf w = constant_presheaf(d.host);
    BarConstruction b = bar_construction(w, d, n);
    auto vanish = free_bar_vanishing(shape, n);
    NondegBound tail = vanish ? *vanish : bar_degree_bound(w, d);
    Realization rx = realize(b.object, window, tail);
    ChainComplex total = rx.total;
    TruncationCertificate cert = rx.certificate;
    return {std::move(total), std::move(rx), std::move(cert), std::move(b)};
}

// --- cubical diagrams -------------------------------------------------------

const ChainComplex& CubicalDiagram::object(std::size_t mask) const {
    return objects.at(mask);
}

const ChainMap& CubicalDiagram::map(std::size_t from, std::size_t to) const {
    auto it = maps.find({from, to});
    if (it == maps.end())
        throw std::out_of_range("CubicalDiagram: no map for that pair");
    return it->second;
}

ValidationResult validate_cube(const CubicalDiagram& x) {
    std::size_t d = x.dim();
    if (d >= 16) return {false, "cube dimension too large"};
    std::set<std::string> names(x.axes.begin(), x.axes.end());
    if (names.size() != d) return {false, "axis names are not distinct"};
    if (x.objects.size() != (std::size_t(1) << d))
        return {false, "object count does not match 2^dim"};
    std::size_t covering = 0;
    for (std::size_t m = 0; m < x.objects.size(); ++m)
        for (std::size_t i = 0; i < d; ++i) {
            std::size_t bit = std::size_t(1) << i;
            if (m & bit) continue;
            ++covering;
            auto it = x.maps.find({m, m | bit});
            if (it == x.maps.end())
                return {false, "missing map " + mask_name(x, m) + " -> " +
                                   mask_name(x, m | bit)};
            const ChainMap& f = it->second;
            if (f.source() != x.objects[m] || f.target() != x.objects[m | bit])
                return {false, "map endpoints wrong at " + mask_name(x, m) +
                                   " -> " + mask_name(x, m | bit)};
            ValidationResult v = validate_map(f);
            if (!v.ok)
                return {false, "map " + mask_name(x, m) + " -> " +
                                   mask_name(x, m | bit) + ": " + v.detail};
        }
    if (x.maps.size() != covering)
        return {false, "maps present for non-covering pairs"};
    for (std::size_t m = 0; m < x.objects.size(); ++m)
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = i + 1; j < d; ++j) {
                std::size_t bi = std::size_t(1) << i;
                std::size_t bj = std::size_t(1) << j;
                if ((m & bi) || (m & bj)) continue;
                ChainMap left =
                    compose(x.map(m | bi, m | bi | bj), x.map(m, m | bi));
                ChainMap right =
                    compose(x.map(m | bj, m | bi | bj), x.map(m, m | bj));
                if (!(left == right))
                    return {false, "square at " + mask_name(x, m) +
                                       " in directions (" + x.axes[i] + ", " +
                                       x.axes[j] + ") does not commute"};
            }
    return {};
}

CubicalDiagram one_cube(const ChainMap& f, std::string axis) {
    CubicalDiagram x;
    x.axes = {std::move(axis)};
    x.objects = {f.source(), f.target()};
    x.maps[{0, 1}] = f;
    ValidationResult v = validate_cube(x);
    if (!v.ok) throw std::invalid_argument("one_cube: " + v.detail);
    return x;
}

CubicalDiagram square_cube(const ChainMap& a, const ChainMap& b,
                           const ChainMap& c, const ChainMap& d,
                           std::string axis0, std::string axis1) {
    CubicalDiagram x;
    x.axes = {std::move(axis0), std::move(axis1)};
    x.objects = {a.source(), a.target(), b.target(), c.target()};
    x.maps[{0, 1}] = a;
    x.maps[{0, 2}] = b;
    x.maps[{1, 3}] = c;
    x.maps[{2, 3}] = d;
    ValidationResult v = validate_cube(x);
    if (!v.ok) throw std::invalid_argument("square_cube: " + v.detail);
    return x;
}

CubicalDiagram cube_tensor(const CubicalDiagram& x, const CubicalDiagram& y) {
    for (const auto& ax : x.axes)
        if (std::find(y.axes.begin(), y.axes.end(), ax) != y.axes.end())
            throw std::invalid_argument("cube_tensor: axis sets overlap");
    std::size_t dx = x.dim(), dy = y.dim();
    CubicalDiagram out;
    out.axes = x.axes;
    out.axes.insert(out.axes.end(), y.axes.begin(), y.axes.end());
    std::size_t xmask = (std::size_t(1) << dx) - 1;
    out.objects.resize(std::size_t(1) << (dx + dy));
    for (std::size_t m = 0; m < out.objects.size(); ++m)
        out.objects[m] = tensor(x.objects[m & xmask], y.objects[m >> dx]);
    for (std::size_t m = 0; m < out.objects.size(); ++m)
        for (std::size_t i = 0; i < dx + dy; ++i) {
            std::size_t bit = std::size_t(1) << i;
            if (m & bit) continue;
            std::size_t mx = m & xmask, my = m >> dx;
            if (i < dx)
                out.maps[{m, m | bit}] = tensor_map(
                    x.map(mx, mx | bit), identity_map(y.objects[my]));
            else
                out.maps[{m, m | bit}] = tensor_map(
                    identity_map(x.objects[mx]),
                    y.map(my, my | (std::size_t(1) << (i - dx))));
        }
    return out;
}

PushoutCorner pushout_corner_map(const CubicalDiagram& x) {
    ValidationResult v = validate_cube(x);
    if (!v.ok) throw std::invalid_argument("pushout_corner_map: " + v.detail);
    std::size_t d = x.dim();
    std::size_t full = (std::size_t(1) << d) - 1;
    if (d == 0) {
        ChainComplex zero;
        QuotientComplex q(zero, {});
        QuotientModel m = quotient_model(q);
        ChainMap map(m.complex, x.object(0), {});
        return {std::move(q), std::move(m), WordSum{}, std::move(map)};
    }

    std::vector<TensorWord> words;
    for (std::size_t mask = 0; mask < full; ++mask)
        words.push_back(TensorWord({x.object(mask)}));
    WordSum cover(std::move(words));

    // path maps to the full corner (well defined: squares commute)
    std::vector<ChainMap> to_top(full + 1);
    to_top[full] = identity_map(x.object(full));
    for (std::size_t mask = full; mask-- > 0;) {
        std::size_t s = 0;
        while (mask & (std::size_t(1) << s)) ++s;
        std::size_t next = mask | (std::size_t(1) << s);
        to_top[mask] = compose(to_top[next], x.map(mask, next));
    }

    std::map<int, IntMatrix> gens;
    {
        // columns: for each covering pair (I, J) with J still proper,
        // incl_J o map(I,J) - incl_I
        std::vector<ChainMap> cols;
        for (std::size_t mask = 0; mask < full; ++mask)
            for (std::size_t i = 0; i < d; ++i) {
                std::size_t bit = std::size_t(1) << i;
                if (mask & bit) continue;
                std::size_t next = mask | bit;
                if (next == full) continue;
                cols.push_back(map_sum(
                    compose(cover.inclusion(next), x.map(mask, next)),
                    map_negate(cover.inclusion(mask))));
            }
        Window s = cover.total().support();
        for (int m = s.lo; m <= s.hi; ++m) {
            if (cover.total().rank(m) == 0) continue;
            std::size_t total_cols = 0;
            for (const auto& c : cols) total_cols += c.source().rank(m);
            if (total_cols == 0) continue;
            IntMatrix g(cover.total().rank(m), total_cols);
            std::size_t off = 0;
            for (const auto& c : cols) {
                std::size_t w = c.source().rank(m);
                if (w == 0) continue;
                g.set_block(0, off, c.component(m));
                off += w;
            }
            gens[m] = g;
        }
    }
    QuotientComplex q(cover.total(), gens);
    QuotientModel model = quotient_model(q);

    WordSum dst(std::vector<TensorWord>{TensorWord({x.object(full)})});
    std::vector<WordBlock> blocks;
    for (std::size_t mask = 0; mask < full; ++mask)
        blocks.push_back({mask, 0, to_top[mask], 1});
    ChainMap h = word_sum_map(cover, dst, blocks);
    ChainMap pcm = map_from_quotient(q, model, h);
    pcm = retarget(pcm, model.complex, x.object(full));
    return {std::move(q), std::move(model), std::move(cover), std::move(pcm)};
}

ValidationResult pcm_composition_check(const CubicalDiagram& x,
                                       const CubicalDiagram& y) {
    CubicalDiagram t = cube_tensor(x, y);
    PushoutCorner p1 = pushout_corner_map(t);
    PushoutCorner px = pushout_corner_map(x);
    PushoutCorner py = pushout_corner_map(y);
    if (!px.model.exact || !py.model.exact)
        throw std::invalid_argument(
            "pcm_composition_check: direction-wise colimit model is not "
            "free");
    std::size_t dx = x.dim(), dy = y.dim();
    std::size_t fullx = (std::size_t(1) << dx) - 1;
    std::size_t fully = (std::size_t(1) << dy) - 1;
    std::size_t xmask = fullx;

    ChainMap a = tensor_map(px.map, identity_map(py.model.complex));
    ChainMap b = tensor_map(identity_map(px.model.complex), py.map);
    ChainMap c = tensor_map(identity_map(x.object(fullx)), py.map);
    ChainMap dm = tensor_map(px.map, identity_map(y.object(fully)));
    CubicalDiagram sq = square_cube(a, b, c, dm, "cx", "cy");
    PushoutCorner p2 = pushout_corner_map(sq);

    auto to_x = [&](std::size_t mask) {
        return compose(px.model.from_cover, px.cover.inclusion(mask));
    };
    auto to_y = [&](std::size_t mask) {
        return compose(py.model.from_cover, py.cover.inclusion(mask));
    };

    std::size_t fullt = (std::size_t(1) << (dx + dy)) - 1;
    std::vector<WordBlock> blocks;
    for (std::size_t m = 0; m < fullt; ++m) {
        std::size_t mx = m & xmask, my = m >> dx;
        std::size_t corner;
        ChainMap block;
        if (mx == fullx) {
            corner = 1;  // X(S) (x) pcm_Y domain
            block = tensor_map(identity_map(x.object(fullx)), to_y(my));
        } else if (my == fully) {
            corner = 2;  // pcm_X domain (x) Y(T)
            block = tensor_map(to_x(mx), identity_map(y.object(fully)));
        } else {
            corner = 0;
            block = tensor_map(to_x(mx), to_y(my));
        }
        blocks.push_back({m, corner, std::move(block), 1});
    }
    ChainMap h = word_sum_map(p1.cover, p2.cover, blocks);

    if (!carries_relations(p1.colimit, p2.colimit, h))
        return {false, "canonical routing does not carry relations"};
    ChainMap phi =
        induced_quotient_map(p1.colimit, p1.model, p2.colimit, p2.model, h);
    ChainMap lhs = compose(p2.map, phi);
    ChainMap rhs = retarget(p1.map, p1.model.complex, p2.map.target());
    if (!(lhs == rhs)) return {false, "comparison triangle does not commute"};
    if (p1.model.exact && p2.model.exact) {
        ValidationResult iso = quotient_map_iso(
            p1.colimit, compose(p2.model.from_cover, h));
        if (!iso.ok)
            return {false, "induced comparison is not an isomorphism: " +
                               iso.detail};
        return {true, "exact comparison isomorphism"};
    }
    Window hull = Window::hull(p1.model.complex.support(),
                               p2.model.complex.support());
    QuasiIsoReport rep = quasi_iso_on(phi, hull);
    if (!rep.ok)
        return {false, "induced comparison is not a quasi-isomorphism"};
    return {true, "cone models compared up to quasi-isomorphism"};
}

// --- latching ---------------------------------------------------------------

LatchingData latching_map(const BarConstruction& b, int n) {
    if (n < 0 || n > b.truncation)
        throw std::invalid_argument("latching_map: level out of range");
    const DgCategory& host = b.weight.host;
    const WordSum& sum = b.sums[static_cast<std::size_t>(n)];
    const auto& tuples = b.tuples[static_cast<std::size_t>(n)];

    std::vector<ChainComplex> parts;
    std::vector<ChainMap> part_maps;
    std::vector<std::size_t> degenerate;

    for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
        const auto& t = tuples[ti];
        std::vector<int> repeats;
        for (int i = 1; i <= n; ++i)
            if (t[static_cast<std::size_t>(i - 1)] ==
                t[static_cast<std::size_t>(i)])
                repeats.push_back(i);
        if (repeats.empty()) continue;
        degenerate.push_back(ti);

        std::size_t r = repeats.size();
        const std::vector<ChainComplex> base = sum.word(ti).factors();
        CubicalDiagram cube;
        for (std::size_t j = 0; j < r; ++j)
            cube.axes.push_back("p" + std::to_string(repeats[j]));
        cube.objects.resize(std::size_t(1) << r);
        std::vector<TensorWord> cube_words;
        cube_words.reserve(cube.objects.size());
        for (std::size_t mask = 0; mask < cube.objects.size(); ++mask) {
            std::vector<ChainComplex> f = base;
            for (std::size_t j = 0; j < r; ++j)
                if (!(mask & (std::size_t(1) << j)))
                    f[static_cast<std::size_t>(n + 1 - repeats[j])] =
                        unit_complex();
            cube_words.push_back(TensorWord(std::move(f)));
            cube.objects[mask] = cube_words[mask].total();
        }
        for (std::size_t mask = 0; mask < cube.objects.size(); ++mask)
            for (std::size_t j = 0; j < r; ++j) {
                std::size_t bit = std::size_t(1) << j;
                if (mask & bit) continue;
                std::vector<ChainMap> per;
                const auto& sf = cube_words[mask].factors();
                for (std::size_t fi = 0; fi < sf.size(); ++fi) {
                    if (fi == static_cast<std::size_t>(n + 1 - repeats[j]))
                        per.push_back(
                            host.unit(t[static_cast<std::size_t>(
                                repeats[j])]));
                    else
                        per.push_back(identity_map(sf[fi]));
                }
                cube.maps[{mask, mask | bit}] = tensor_word_map(
                    cube_words[mask], cube_words[mask | bit], per);
            }
        PushoutCorner pc = pushout_corner_map(cube);
        parts.push_back(pc.model.complex);
        part_maps.push_back(compose(sum.inclusion(ti), pc.map));
    }

    if (parts.empty()) {
        ChainComplex zero;
        return {zero, ChainMap(zero, sum.total(), {}), {}};
    }
    ChainComplex l = complex_direct_sum(parts);
    std::map<int, IntMatrix> comps;
    Window s = l.support();
    for (int m = s.lo; m <= s.hi; ++m) {
        if (l.rank(m) == 0 || sum.total().rank(m) == 0) continue;
        IntMatrix g(sum.total().rank(m), l.rank(m));
        std::size_t off = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            std::size_t wdt = parts[i].rank(m);
            if (wdt > 0) g.set_block(0, off, part_maps[i].component(m));
            off += wdt;
        }
        comps[m] = g;
    }
    ChainMap lm(l, sum.total(), comps);
    return {std::move(l), std::move(lm), std::move(degenerate)};
}

ReedyReport reedy_report(const BarConstruction& b) {
    ReedyReport r;
    for (int n = 0; n <= b.truncation; ++n) {
        LatchingData ld = latching_map(b, n);
        CofibrationReport rep = is_cofibration(ld.map);
        r.ok = r.ok && rep.ok;
        r.levels.push_back(std::move(rep));
    }
    return r;
}

}  // namespace dgc
