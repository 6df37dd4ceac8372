#include "dgcolim/dwyerkan.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgc {

namespace {

std::string pair_name(const DgCategory& c, int a, int b) {
    return "(" + c.objects[static_cast<std::size_t>(a)] + ", " +
           c.objects[static_cast<std::size_t>(b)] + ")";
}

}  // namespace

// --- functors ----------------------------------------------------------------

ValidationResult validate_functor(const DgFunctor& f) {
    ValidationResult v = validate_dg_category(f.source);
    if (!v.ok) return {false, "source: " + v.detail};
    v = validate_dg_category(f.target);
    if (!v.ok) return {false, "target: " + v.detail};
    int k = f.source.size();
    if (static_cast<int>(f.object_map.size()) != k)
        return {false, "object map size differs from the source object count"};
    for (int a = 0; a < k; ++a)
        if (f.object(a) < 0 || f.object(a) >= f.target.size())
            return {false, "object map leaves the target at " +
                               f.source.objects[static_cast<std::size_t>(a)]};
    if (static_cast<int>(f.hom_components.size()) != k)
        return {false, "hom component table has the wrong shape"};
    for (const auto& row : f.hom_components)
        if (static_cast<int>(row.size()) != k)
            return {false, "hom component table has the wrong shape"};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const ChainMap& m = f.component(a, b);
            if (!(m.source() == f.source.hom(a, b)) ||
                !(m.target() == f.target.hom(f.object(a), f.object(b))))
                return {false, "hom component " + pair_name(f.source, a, b) +
                                   " has the wrong endpoints"};
            ValidationResult mv = validate_map(m);
            if (!mv.ok)
                return {false, "hom component " + pair_name(f.source, a, b) +
                                   ": " + mv.detail};
        }
    for (int a = 0; a < k; ++a)
        if (!(compose(f.component(a, a), f.source.unit(a)) ==
              f.target.unit(f.object(a))))
            return {false,
                    "unit of " + f.source.objects[static_cast<std::size_t>(a)] +
                        " is not preserved"};
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                if (!(compose(f.component(a, c), f.source.comp(a, b, c)) ==
                      compose(f.target.comp(f.object(a), f.object(b),
                                            f.object(c)),
                              tensor_map(f.component(b, c),
                                         f.component(a, b)))))
                    return {false, "composition square (" +
                                       f.source.objects[static_cast<std::size_t>(
                                           a)] +
                                       ", " +
                                       f.source.objects[static_cast<std::size_t>(
                                           b)] +
                                       ", " +
                                       f.source.objects[static_cast<std::size_t>(
                                           c)] +
                                       ") does not commute"};
    return {};
}

DgFunctor identity_functor(const DgCategory& c) {
    int k = c.size();
    DgFunctor f;
    f.source = c;
    f.target = c;
    for (int a = 0; a < k; ++a) f.object_map.push_back(a);
    f.hom_components.resize(static_cast<std::size_t>(k));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            f.hom_components[static_cast<std::size_t>(a)].push_back(
                identity_map(c.hom(a, b)));
    return f;
}

DgCategory full_dg_subcategory(const DgCategory& c,
                               const std::vector<int>& objects) {
    std::set<int> seen;
    for (int o : objects) {
        if (o < 0 || o >= c.size())
            throw std::invalid_argument("full_dg_subcategory: no such object");
        if (!seen.insert(o).second)
            throw std::invalid_argument("full_dg_subcategory: repeated object");
    }
    std::size_t k = objects.size();
    DgCategory out;
    out.homs.assign(k, std::vector<ChainComplex>(k));
    out.comps.assign(k, std::vector<std::vector<ChainMap>>(
                            k, std::vector<ChainMap>(k)));
    for (std::size_t a = 0; a < k; ++a) {
        out.objects.push_back(
            c.objects[static_cast<std::size_t>(objects[a])]);
        out.units.push_back(c.unit(objects[a]));
    }
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            out.homs[a][b] = c.hom(objects[a], objects[b]);
            for (std::size_t d = 0; d < k; ++d)
                out.comps[a][b][d] = c.comp(objects[a], objects[b], objects[d]);
        }
    return out;
}

DgFunctor inclusion_functor(const DgCategory& c,
                            const std::vector<int>& objects) {
    DgFunctor f;
    f.source = full_dg_subcategory(c, objects);
    f.target = c;
    f.object_map = objects;
    std::size_t k = objects.size();
    f.hom_components.resize(k);
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b)
            f.hom_components[a].push_back(identity_map(
                f.source.hom(static_cast<int>(a), static_cast<int>(b))));
    return f;
}

Presheaf restrict_presheaf(const DgFunctor& f, const Presheaf& v) {
    if (!dg_category_equal(v.host, f.target))
        throw std::invalid_argument("restrict_presheaf: host mismatch");
    std::size_t k = static_cast<std::size_t>(f.source.size());
    Presheaf out;
    out.host = f.source;
    out.values.resize(k);
    out.actions.assign(k, std::vector<ChainMap>(k));
    for (std::size_t d = 0; d < k; ++d)
        out.values[d] = v.value(f.object(static_cast<int>(d)));
    for (std::size_t dp = 0; dp < k; ++dp)
        for (std::size_t d = 0; d < k; ++d) {
            int a = static_cast<int>(dp), b = static_cast<int>(d);
            out.actions[dp][d] =
                compose(v.action(f.object(a), f.object(b)),
                        tensor_map(identity_map(v.value(f.object(b))),
                                   f.component(a, b)));
        }
    return out;
}

// --- left Kan extension ------------------------------------------------------

namespace {

// d |-> hom(c, Fd), acting by composition through F's hom components.
Diagram kan_diagram(const DgFunctor& f, int c) {
    const DgCategory& tgt = f.target;
    std::size_t k = static_cast<std::size_t>(f.source.size());
    Diagram diag;
    diag.host = f.source;
    diag.values.resize(k);
    diag.actions.assign(k, std::vector<ChainMap>(k));
    for (std::size_t d = 0; d < k; ++d)
        diag.values[d] = tgt.hom(c, f.object(static_cast<int>(d)));
    for (std::size_t d = 0; d < k; ++d)
        for (std::size_t dp = 0; dp < k; ++dp) {
            int a = static_cast<int>(d), b = static_cast<int>(dp);
            diag.actions[d][dp] = compose(
                tgt.comp(c, f.object(a), f.object(b)),
                tensor_map(f.component(a, b),
                           identity_map(tgt.hom(c, f.object(a)))));
        }
    return diag;
}

// Cover-level action: feed hom(cp, c) into the corepresented slot of each
// cover summand at c and land in the colimit model at cp. Kills the colimit
// relations, so precomposing a section of from_cover gives the honest
// presheaf action on the model.
ChainMap kan_action(const DgFunctor& f, const Presheaf& w, const LeftKan& kan,
                    int cp, int c) {
    const DgCategory& tgt = f.target;
    const WeightedColimit& wc = kan.colimits[static_cast<std::size_t>(c)];
    const WeightedColimit& wcp = kan.colimits[static_cast<std::size_t>(cp)];
    const ChainComplex& h = tgt.hom(cp, c);
    int k = f.source.size();

    ChainMap acc = zero_map(tensor(wc.cover.total(), h), wcp.complex);
    for (int d = 0; d < k; ++d) {
        const ChainComplex& wd = w.value(d);
        const ChainComplex& hc = tgt.hom(c, f.object(d));
        TensorWord w3({wd, hc, h});
        TensorWord pair({tensor(wd, hc), h});
        TensorWord out2({wd, tgt.hom(cp, f.object(d))});
        ChainMap term = compose(
            wcp.model.from_cover,
            compose(
                wcp.cover.inclusion(static_cast<std::size_t>(d)),
                compose(
                    contract_adjacent(w3, 1, tgt.comp(cp, c, f.object(d)),
                                      out2),
                    compose(map_inverse(regroup(w3, {2, 1}, pair)),
                            tensor_map(wc.cover.projection(
                                           static_cast<std::size_t>(d)),
                                       identity_map(h))))));
        acc = map_sum(acc, term);
    }
    ChainMap section(wc.complex, wc.cover.total(), wc.model.section);
    return compose(acc, tensor_map(section, identity_map(h)));
}

}  // namespace

LeftKan left_kan(const DgFunctor& f, const Presheaf& w) {
    if (!dg_category_equal(w.host, f.source))
        throw std::invalid_argument("left_kan: weight host mismatch");
    const DgCategory& tgt = f.target;
    std::size_t kt = static_cast<std::size_t>(tgt.size());

    LeftKan out;
    out.colimits.reserve(kt);
    for (std::size_t c = 0; c < kt; ++c) {
        WeightedColimit wc =
            weighted_colimit(w, kan_diagram(f, static_cast<int>(c)));
        if (!wc.model.exact)
            throw std::invalid_argument("left_kan: colimit model at " +
                                        tgt.objects[c] + " does not split");
        out.colimits.push_back(std::move(wc));
    }

    out.presheaf.host = tgt;
    out.presheaf.values.resize(kt);
    out.presheaf.actions.assign(kt, std::vector<ChainMap>(kt));
    for (std::size_t c = 0; c < kt; ++c)
        out.presheaf.values[c] = out.colimits[c].complex;
    for (std::size_t cp = 0; cp < kt; ++cp)
        for (std::size_t c = 0; c < kt; ++c)
            out.presheaf.actions[cp][c] = kan_action(
                f, w, out, static_cast<int>(cp), static_cast<int>(c));
    return out;
}

PresheafMap left_kan_map(const DgFunctor& f, const LeftKan& src,
                         const LeftKan& dst, const PresheafMap& phi) {
    const DgCategory& tgt = f.target;
    std::size_t ks = static_cast<std::size_t>(f.source.size());
    PresheafMap out;
    for (std::size_t c = 0; c < static_cast<std::size_t>(tgt.size()); ++c) {
        const WeightedColimit& a = src.colimits[c];
        const WeightedColimit& b = dst.colimits[c];
        std::vector<WordBlock> blocks;
        for (std::size_t d = 0; d < ks; ++d)
            blocks.push_back(
                {d, d,
                 tensor_word_map(
                     a.cover.word(d), b.cover.word(d),
                     {phi.components[d],
                      identity_map(tgt.hom(static_cast<int>(c),
                                           f.object(static_cast<int>(d))))}),
                 1});
        ChainMap lift = word_sum_map(a.cover, b.cover, blocks);
        out.components.push_back(
            induced_quotient_map(a.quotient, a.model, b.quotient, b.model,
                                 lift));
    }
    return out;
}

PresheafMap adjunction_unit(const DgFunctor& f, const Presheaf& w,
                            const LeftKan& kw) {
    int k = f.source.size();
    PresheafMap eta;
    for (int d = 0; d < k; ++d) {
        const WeightedColimit& wc =
            kw.colimits[static_cast<std::size_t>(f.object(d))];
        ChainMap pair_unit = tensor_map(identity_map(w.value(d)),
                                        f.target.unit(f.object(d)));
        eta.components.push_back(compose(
            wc.model.from_cover,
            compose(wc.cover.inclusion(static_cast<std::size_t>(d)),
                    pair_unit)));
    }
    return eta;
}

PresheafMap adjunction_counit(const DgFunctor& f, const Presheaf& v,
                              const LeftKan& kfv) {
    const DgCategory& tgt = f.target;
    int ks = f.source.size();
    PresheafMap eps;
    for (int c = 0; c < tgt.size(); ++c) {
        const WeightedColimit& wc =
            kfv.colimits[static_cast<std::size_t>(c)];
        ChainMap h = zero_map(wc.cover.total(), v.value(c));
        for (int d = 0; d < ks; ++d)
            h = map_sum(
                h, compose(v.action(c, f.object(d)),
                           wc.cover.projection(static_cast<std::size_t>(d))));
        eps.components.push_back(map_from_quotient(wc.quotient, wc.model, h));
    }
    return eps;
}

PresheafMap kan_representable_comparison(const DgFunctor& f, int d,
                                         const LeftKan& kan) {
    const DgCategory& tgt = f.target;
    int ks = f.source.size();
    int fd = f.object(d);
    PresheafMap cmp;
    for (int c = 0; c < tgt.size(); ++c) {
        const WeightedColimit& wc =
            kan.colimits[static_cast<std::size_t>(c)];
        ChainMap h = zero_map(wc.cover.total(), tgt.hom(c, fd));
        for (int dpp = 0; dpp < ks; ++dpp)
            h = map_sum(
                h,
                compose(tgt.comp(c, f.object(dpp), fd),
                        compose(tensor_map(f.component(dpp, d),
                                           identity_map(
                                               tgt.hom(c, f.object(dpp)))),
                                wc.cover.projection(
                                    static_cast<std::size_t>(dpp)))));
        cmp.components.push_back(map_from_quotient(wc.quotient, wc.model, h));
    }
    return cmp;
}

ValidationResult triangle_left_check(const DgFunctor& f, const Presheaf& w) {
    LeftKan k1 = left_kan(f, w);
    PresheafMap eta = adjunction_unit(f, w, k1);
    Presheaf r1 = restrict_presheaf(f, k1.presheaf);
    ValidationResult v = validate_presheaf_map(w, r1, eta);
    if (!v.ok)
        return {false, "triangle left: unit is not a presheaf map: " + v.detail};
    LeftKan k2 = left_kan(f, r1);
    PresheafMap keta = left_kan_map(f, k1, k2, eta);
    PresheafMap eps = adjunction_counit(f, k1.presheaf, k2);
    for (std::size_t c = 0; c < static_cast<std::size_t>(f.target.size()); ++c) {
        ChainMap composite = compose(eps.components[c], keta.components[c]);
        const ChainMap& fc = k1.colimits[c].model.from_cover;
        if (!(compose(composite, fc) == fc))
            return {false, "triangle left: composite moves a colimit class at " +
                               f.target.objects[c]};
    }
    return {};
}

ValidationResult triangle_right_check(const DgFunctor& f, const Presheaf& v) {
    Presheaf r = restrict_presheaf(f, v);
    LeftKan k = left_kan(f, r);
    PresheafMap eta = adjunction_unit(f, r, k);
    PresheafMap eps = adjunction_counit(f, v, k);
    for (int d = 0; d < f.source.size(); ++d) {
        ChainMap composite =
            compose(eps.components[static_cast<std::size_t>(f.object(d))],
                    eta.components[static_cast<std::size_t>(d)]);
        if (!(composite == identity_map(v.value(f.object(d)))))
            return {false, "triangle right: composite is not the identity at " +
                               f.source.objects[static_cast<std::size_t>(d)]};
    }
    return {};
}

// --- homotopical fullness and faithfulness -----------------------------------

HffReport is_homotopically_ff(const DgFunctor& f, const Window& window) {
    HffReport out;
    int k = f.source.size();
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const ChainMap& m = f.component(a, b);
            Window w = Window::hull(window, quasi_iso_window(m));
            QuasiIsoReport rep = is_quasi_iso(m, w);
            if (!rep.ok && out.ok) {
                out.ok = false;
                out.detail = "hom component " + pair_name(f.source, a, b) +
                             " is not a quasi-isomorphism";
            }
            out.entries.push_back({a, b, std::move(rep)});
        }
    return out;
}

// --- H0 retract witnesses ----------------------------------------------------

namespace {

// Degree-0 homology presented by explicit generator cycles: Smith-reduce the
// boundary expression in a saturated cycle basis and keep the generators
// whose invariant factor is not 1 (0 marks a free generator).
struct H0Data {
    IntMatrix boundaries;         // diff(1)
    std::vector<IntMatrix> gens;  // generator cycle columns
};

H0Data h0_data(const ChainComplex& x) {
    H0Data out;
    out.boundaries = x.diff(1);
    if (x.rank(0) == 0) return out;
    IntMatrix z = kernel_basis(x.diff(0));
    if (z.cols() == 0) return out;
    // Boundaries are cycles and the cycle lattice is saturated, so the
    // change of coordinates always exists.
    IntMatrix m = *solve(z, out.boundaries);
    SmithForm s = smith_form(m);
    IntMatrix basis = z * unimodular_inverse(s.u);
    for (std::size_t i = 0; i < basis.cols(); ++i) {
        if (i < s.rank && s.d.at(i, i) == 1) continue;
        out.gens.push_back(basis.slice_cols(i, 1));
    }
    return out;
}

// comp(c, d, c) applied to the degree-0 elementary tensor out (x) in.
IntMatrix composite_column(const DgCategory& tgt, int c, int fd,
                           const IntMatrix& out_cycle,
                           const IntMatrix& in_cycle) {
    TensorWord tw({tgt.hom(fd, c), tgt.hom(c, fd)});
    IntMatrix vec(tw.total().rank(0), 1);
    std::size_t s = tw.find_summand(0, {0, 0});
    if (s != TensorWord::npos)
        vec.set_block(tw.summands(0)[s].offset, 0,
                      kronecker(out_cycle, in_cycle));
    return tgt.comp(c, fd, c).component(0) * vec;
}

// Coefficient vectors with the given L1 weight, coordinates in [-box, box],
// ascending per coordinate; deterministic order.
void l1_vectors(std::size_t i, long remaining, long box,
                std::vector<Integer>& cur,
                std::vector<std::vector<Integer>>& out, std::size_t cap) {
    if (out.size() >= cap) return;
    if (i == cur.size()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    long m = std::min(box, remaining);
    for (long v = -m; v <= m && out.size() < cap; ++v) {
        cur[i] = v;
        l1_vectors(i + 1, remaining - (v < 0 ? -v : v), box, cur, out, cap);
    }
}

struct RetractCandidate {
    int through = 0;
    IntMatrix in_cycle;
    IntMatrix block;  // composite columns, one per outgoing H0 generator
};

}  // namespace

RetractSearch h0_retract_witness(const DgFunctor& f, int c, long max_summands,
                                 long coefficient_box) {
    const DgCategory& tgt = f.target;
    if (c < 0 || c >= tgt.size())
        throw std::invalid_argument("h0_retract_witness: no such object");
    if (max_summands < 0 || coefficient_box < 0)
        throw std::invalid_argument("h0_retract_witness: negative bounds");

    RetractSearch out;
    out.max_summands = max_summands;
    out.coefficient_box = coefficient_box;

    const ChainComplex& endo = tgt.hom(c, c);
    IntMatrix id_col = tgt.unit(c).component(0);
    IntMatrix b_cc = endo.diff(1);

    if (solve(b_cc, id_col)) {
        out.status = RetractStatus::found;
        out.witness = RetractWitness{c, {}, true};
        out.detail = "the identity class is already a boundary";
        return out;
    }

    int ks = f.source.size();
    std::vector<H0Data> in_data, out_data;
    bool all_dead = true;
    for (int d = 0; d < ks; ++d) {
        in_data.push_back(h0_data(tgt.hom(c, f.object(d))));
        out_data.push_back(h0_data(tgt.hom(f.object(d), c)));
        if (!in_data.back().gens.empty() && !out_data.back().gens.empty())
            all_dead = false;
    }
    if (all_dead) {
        out.status = RetractStatus::certified_none;
        out.detail = "every composite through an image object is a boundary: "
                     "each source object has trivial H0 on one side";
        return out;
    }

    constexpr std::size_t per_object_cap = 48;
    constexpr std::size_t global_cap = 96;
    constexpr long attempt_cap = 250000;

    std::vector<RetractCandidate> candidates;
    for (int d = 0; d < ks && candidates.size() < global_cap; ++d) {
        const auto& ig = in_data[static_cast<std::size_t>(d)].gens;
        const auto& og = out_data[static_cast<std::size_t>(d)].gens;
        if (ig.empty() || og.empty()) continue;
        std::vector<std::vector<Integer>> lambdas;
        std::vector<Integer> cur(ig.size());
        for (long l1 = 1;
             l1 <= coefficient_box * static_cast<long>(ig.size()) &&
             lambdas.size() < per_object_cap;
             ++l1)
            l1_vectors(0, l1, coefficient_box, cur, lambdas, per_object_cap);
        for (const auto& lambda : lambdas) {
            if (candidates.size() >= global_cap) break;
            IntMatrix ic(ig[0].rows(), 1);
            for (std::size_t j = 0; j < ig.size(); ++j)
                ic = ic + ig[j].scaled(lambda[j]);
            IntMatrix block(id_col.rows(), og.size());
            bool live = false;
            for (std::size_t kcol = 0; kcol < og.size(); ++kcol) {
                IntMatrix col =
                    composite_column(tgt, c, f.object(d), og[kcol], ic);
                if (!solve(b_cc, col)) live = true;
                block.set_block(0, kcol, col);
            }
            if (!live) continue;  // only boundaries: nothing new to add
            candidates.push_back({d, std::move(ic), std::move(block)});
        }
    }

    long attempts = 0;
    for (long m = 1; m <= max_summands; ++m) {
        if (m > static_cast<long>(candidates.size())) break;
        std::vector<std::size_t> pick(static_cast<std::size_t>(m));
        for (std::size_t i = 0; i < pick.size(); ++i) pick[i] = i;
        while (true) {
            if (++attempts > attempt_cap) break;
            IntMatrix sys = candidates[pick[0]].block;
            for (std::size_t i = 1; i < pick.size(); ++i)
                sys = IntMatrix::hcat(sys, candidates[pick[i]].block);
            sys = IntMatrix::hcat(sys, b_cc);
            std::optional<IntMatrix> x = solve(sys, id_col);
            if (x) {
                RetractWitness wit;
                wit.object = c;
                IntMatrix total(id_col.rows(), 1);
                std::size_t col = 0;
                for (std::size_t i = 0; i < pick.size(); ++i) {
                    const RetractCandidate& cand = candidates[pick[i]];
                    const auto& og =
                        out_data[static_cast<std::size_t>(cand.through)].gens;
                    IntMatrix r(og[0].rows(), 1);
                    for (std::size_t kcol = 0; kcol < og.size(); ++kcol)
                        r = r + og[kcol].scaled(x->at(col + kcol, 0));
                    col += og.size();
                    if (r.is_zero()) continue;
                    total = total + composite_column(tgt, c,
                                                     f.object(cand.through), r,
                                                     cand.in_cycle);
                    wit.summands.push_back(
                        {cand.through, cand.in_cycle, std::move(r)});
                }
                wit.certified = solve(b_cc, total - id_col).has_value();
                out.status = RetractStatus::found;
                out.witness = std::move(wit);
                return out;
            }
            // next m-combination of candidate indices
            long i = m - 1;
            while (i >= 0 &&
                   pick[static_cast<std::size_t>(i)] ==
                       candidates.size() - static_cast<std::size_t>(m - i))
                --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (std::size_t j = static_cast<std::size_t>(i) + 1;
                 j < pick.size(); ++j)
                pick[j] = pick[j - 1] + 1;
        }
        if (attempts > attempt_cap) break;
    }

    out.status = RetractStatus::exhausted_bounds;
    out.detail = "no witness within " + std::to_string(max_summands) +
                 " summands and coefficient box " +
                 std::to_string(coefficient_box);
    return out;
}

// --- derived counit ----------------------------------------------------------

namespace {

CounitReport counit_core(const DgFunctor& f, int c, int n, const Window& window,
                         const NondegBound& tail) {
    const DgCategory& tgt = f.target;
    CounitReport out;
    out.object = c;
    out.window = window;
    out.ok = true;
    out.sound = true;

    Presheaf restricted = restrict_presheaf(f, representable(tgt, c));
    out.replacement = cofibrant_replacement(restricted, n, window, tail);
    out.kan = left_kan(f, out.replacement.presheaf);
    for (const auto& cert : out.replacement.certificates)
        if (!cert.sound) out.sound = false;

    int ks = f.source.size();
    for (int at = 0; at < tgt.size(); ++at) {
        const WeightedColimit& wc =
            out.kan.colimits[static_cast<std::size_t>(at)];
        ChainMap h = zero_map(wc.cover.total(), tgt.hom(at, c));
        for (int d = 0; d < ks; ++d)
            h = map_sum(
                h,
                compose(
                    tgt.comp(at, f.object(d), c),
                    compose(
                        tensor_map(out.replacement
                                       .augmentation[static_cast<std::size_t>(
                                           d)],
                                   identity_map(tgt.hom(at, f.object(d)))),
                        wc.cover.projection(static_cast<std::size_t>(d)))));
        ChainMap eps = map_from_quotient(wc.quotient, wc.model, h);

        CounitEntry e;
        e.at = at;
        e.comparison = quasi_iso_on(eps, window);
        e.kan_homology = homology(wc.complex, window);
        e.hom_homology = homology(tgt.hom(at, c), window);
        if (!e.comparison.ok && out.ok) {
            out.ok = false;
            out.detail = "counit comparison fails at object " +
                         tgt.objects[static_cast<std::size_t>(at)];
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

}  // namespace

CounitReport derived_counit_check(const DgFunctor& f, int c, int n,
                                  const Window& window,
                                  const NondegBound& tail) {
    if (n < 0)
        throw std::invalid_argument("derived_counit_check: negative truncation");
    CounitReport out = counit_core(f, c, n, window, tail);
    if (!out.sound) {
        CounitReport deeper = counit_core(f, c, n + 1, window, tail);
        bool stable = out.ok == deeper.ok;
        for (std::size_t i = 0; stable && i < out.entries.size(); ++i) {
            const CounitEntry& a = out.entries[i];
            const CounitEntry& b = deeper.entries[i];
            if (a.comparison.ok != b.comparison.ok ||
                !(a.kan_homology == b.kan_homology) ||
                !(a.hom_homology == b.hom_homology))
                stable = false;
        }
        out.heuristic_stable = stable;
    }
    return out;
}

// --- criteria rollup ----------------------------------------------------------

DwyerKanReport dwyer_kan_report(const DgFunctor& f, int n, const Window& window,
                                long max_summands, long coefficient_box) {
    DwyerKanReport out;
    out.hff = is_homotopically_ff(f, window);
    out.retracts_ok = true;
    out.counits_ok = true;
    for (int c = 0; c < f.target.size(); ++c) {
        out.retracts.push_back(
            h0_retract_witness(f, c, max_summands, coefficient_box));
        if (out.retracts.back().status != RetractStatus::found)
            out.retracts_ok = false;
        if (out.retracts.back().status == RetractStatus::exhausted_bounds)
            out.retract_bounds_hit = true;
        out.counits.push_back(derived_counit_check(f, c, n, window));
        if (!out.counits.back().ok) out.counits_ok = false;
        if (!out.counits.back().sound) out.heuristic_windows = true;
    }
    out.quillen_equivalence = out.hff.ok && out.counits_ok;
    return out;
}

}  // namespace dgc
