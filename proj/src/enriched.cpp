#include "dgcolim/enriched.hpp"

#include "dgcolim/tensorword.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace dgc {

namespace {

std::string triple_name(const FiniteCategory& cat, int i, int j, int k) {
    return "(" + cat.objects[static_cast<std::size_t>(i)] + ", " +
           cat.objects[static_cast<std::size_t>(j)] + ", " +
           cat.objects[static_cast<std::size_t>(k)] + ")";
}

}  // namespace

int FiniteCategory::compose_index(int i, int j, int k, int g, int f) const {
    return composition.at({i, j, k})[static_cast<std::size_t>(g)]
                                    [static_cast<std::size_t>(f)];
}

ValidationResult validate_category(const FiniteCategory& cat) {
    int n = cat.size();
    if (cat.hom.size() != static_cast<std::size_t>(n) ||
        cat.identity.size() != static_cast<std::size_t>(n))
        return {false, "hom table or identity list has wrong size"};
    for (int i = 0; i < n; ++i)
        if (cat.hom[static_cast<std::size_t>(i)].size() !=
            static_cast<std::size_t>(n))
            return {false,
                    "hom row of " + cat.objects[static_cast<std::size_t>(i)] +
                        " has wrong size"};
    for (int i = 0; i < n; ++i) {
        std::size_t r = cat.morphisms(i, i).size();
        int id = cat.identity[static_cast<std::size_t>(i)];
        if (id < 0 || static_cast<std::size_t>(id) >= r)
            return {false, "identity index out of range at " +
                               cat.objects[static_cast<std::size_t>(i)]};
    }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                std::size_t nf = cat.morphisms(i, j).size();
                std::size_t ng = cat.morphisms(j, k).size();
                auto it = cat.composition.find({i, j, k});
                if (nf == 0 || ng == 0) continue;
                if (it == cat.composition.end())
                    return {false,
                            "missing composition table at " +
                                triple_name(cat, i, j, k)};
                const auto& t = it->second;
                if (t.size() != ng)
                    return {false, "composition table at " +
                                       triple_name(cat, i, j, k) +
                                       " has wrong height"};
                std::size_t nh = cat.morphisms(i, k).size();
                for (std::size_t g = 0; g < ng; ++g) {
                    if (t[g].size() != nf)
                        return {false, "composition table at " +
                                           triple_name(cat, i, j, k) +
                                           " has wrong width"};
                    for (std::size_t f = 0; f < nf; ++f)
                        if (t[g][f] < 0 ||
                            static_cast<std::size_t>(t[g][f]) >= nh)
                            return {false, "composition index out of range at " +
                                               triple_name(cat, i, j, k)};
                }
            }
    // unit laws
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::size_t nf = cat.morphisms(i, j).size();
            for (std::size_t f = 0; f < nf; ++f) {
                int fp = static_cast<int>(f);
                if (cat.compose_index(i, i, j, fp,
                                      cat.identity[static_cast<std::size_t>(i)]) !=
                    fp)
                    return {false, "right unit law fails for " +
                                       cat.morphisms(i, j)[f]};
                if (cat.compose_index(i, j, j,
                                      cat.identity[static_cast<std::size_t>(j)],
                                      fp) != fp)
                    return {false, "left unit law fails for " +
                                       cat.morphisms(i, j)[f]};
            }
        }
    // associativity
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) {
                    std::size_t nf = cat.morphisms(i, j).size();
                    std::size_t ng = cat.morphisms(j, k).size();
                    std::size_t nh = cat.morphisms(k, l).size();
                    for (std::size_t f = 0; f < nf; ++f)
                        for (std::size_t g = 0; g < ng; ++g)
                            for (std::size_t h = 0; h < nh; ++h) {
                                int gf = cat.compose_index(
                                    i, j, k, static_cast<int>(g),
                                    static_cast<int>(f));
                                int hg = cat.compose_index(
                                    j, k, l, static_cast<int>(h),
                                    static_cast<int>(g));
                                if (cat.compose_index(i, k, l,
                                                      static_cast<int>(h), gf) !=
                                    cat.compose_index(i, j, l, hg,
                                                      static_cast<int>(f)))
                                    return {false,
                                            "associativity fails for (" +
                                                cat.morphisms(i, j)[f] + ", " +
                                                cat.morphisms(j, k)[g] + ", " +
                                                cat.morphisms(k, l)[h] + ")"};
                            }
                }
    return {};
}

FiniteCategory discrete_category(std::vector<std::string> names) {
    FiniteCategory cat;
    cat.objects = std::move(names);
    int n = cat.size();
    cat.hom.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<std::string>>(
                       static_cast<std::size_t>(n)));
    cat.identity.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) {
        cat.hom[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = {
            "id_" + cat.objects[static_cast<std::size_t>(i)]};
        cat.composition[{i, i, i}] = {{0}};
    }
    return cat;
}

FiniteCategory poset_category(std::vector<std::string> names,
                              const std::vector<std::pair<int, int>>& covers) {
    int n = static_cast<int>(names.size());
    std::vector<std::vector<bool>> leq(
        static_cast<std::size_t>(n),
        std::vector<bool>(static_cast<std::size_t>(n), false));
    for (int i = 0; i < n; ++i) leq[static_cast<std::size_t>(i)]
                                   [static_cast<std::size_t>(i)] = true;
    for (auto& [a, b] : covers)
        leq[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = true;
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] &&
                    leq[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)])
                    leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                        true;

    FiniteCategory cat;
    cat.objects = std::move(names);
    cat.hom.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<std::string>>(
                       static_cast<std::size_t>(n)));
    cat.identity.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (!leq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                continue;
            std::string nm =
                i == j ? "id_" + cat.objects[static_cast<std::size_t>(i)]
                       : cat.objects[static_cast<std::size_t>(i)] + "<=" +
                             cat.objects[static_cast<std::size_t>(j)];
            cat.hom[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = {
                nm};
        }
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (!cat.morphisms(i, j).empty() &&
                    !cat.morphisms(j, k).empty())
                    cat.composition[{i, j, k}] = {{0}};
    return cat;
}

FiniteCategory arrow_category() { return poset_category({"0", "1"}, {{0, 1}}); }

FiniteCategory span_category() {
    return poset_category({"a", "b", "c"}, {{0, 1}, {0, 2}});
}

bool is_loop_free(const FiniteCategory& cat) {
    int n = cat.size();
    for (int i = 0; i < n; ++i)
        if (cat.morphisms(i, i).size() != 1) return false;
    // cycle detection on the nonidentity arrow digraph
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j && !cat.morphisms(i, j).empty())
                ++indeg[static_cast<std::size_t>(j)];
    std::vector<int> queue;
    for (int i = 0; i < n; ++i)
        if (indeg[static_cast<std::size_t>(i)] == 0) queue.push_back(i);
    int seen = 0;
    while (!queue.empty()) {
        int i = queue.back();
        queue.pop_back();
        ++seen;
        for (int j = 0; j < n; ++j)
            if (i != j && !cat.morphisms(i, j).empty() &&
                --indeg[static_cast<std::size_t>(j)] == 0)
                queue.push_back(j);
    }
    return seen == n;
}

FiniteCategory under_category(int i, const FiniteCategory& cat) {
    struct Obj {
        int target;
        int f;
    };
    std::vector<Obj> objs;
    FiniteCategory u;
    for (int j = 0; j < cat.size(); ++j)
        for (std::size_t f = 0; f < cat.morphisms(i, j).size(); ++f) {
            objs.push_back({j, static_cast<int>(f)});
            u.objects.push_back(cat.objects[static_cast<std::size_t>(j)] + "/" +
                                cat.morphisms(i, j)[f]);
        }
    int m = static_cast<int>(objs.size());
    u.hom.assign(static_cast<std::size_t>(m),
                 std::vector<std::vector<std::string>>(
                     static_cast<std::size_t>(m)));
    u.identity.assign(static_cast<std::size_t>(m), 0);
    // arrows[p][q]: indices (into cat.hom) of the h with h o f_p = f_q
    std::vector<std::vector<std::vector<int>>> arrows(
        static_cast<std::size_t>(m),
        std::vector<std::vector<int>>(static_cast<std::size_t>(m)));
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q) {
            int jp = objs[static_cast<std::size_t>(p)].target;
            int jq = objs[static_cast<std::size_t>(q)].target;
            std::size_t nh = cat.morphisms(jp, jq).size();
            for (std::size_t h = 0; h < nh; ++h)
                if (cat.compose_index(i, jp, jq, static_cast<int>(h),
                                      objs[static_cast<std::size_t>(p)].f) ==
                    objs[static_cast<std::size_t>(q)].f) {
                    arrows[static_cast<std::size_t>(p)]
                          [static_cast<std::size_t>(q)]
                              .push_back(static_cast<int>(h));
                    u.hom[static_cast<std::size_t>(p)]
                         [static_cast<std::size_t>(q)]
                             .push_back(cat.morphisms(jp, jq)[h]);
                }
        }
    auto position = [&](int p, int q, int h) {
        const auto& v =
            arrows[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
        return static_cast<int>(std::find(v.begin(), v.end(), h) - v.begin());
    };
    for (int p = 0; p < m; ++p) {
        int jp = objs[static_cast<std::size_t>(p)].target;
        u.identity[static_cast<std::size_t>(p)] =
            position(p, p, cat.identity[static_cast<std::size_t>(jp)]);
    }
    for (int p = 0; p < m; ++p)
        for (int q = 0; q < m; ++q)
            for (int r = 0; r < m; ++r) {
                const auto& fq =
                    arrows[static_cast<std::size_t>(p)][static_cast<std::size_t>(q)];
                const auto& gr =
                    arrows[static_cast<std::size_t>(q)][static_cast<std::size_t>(r)];
                if (fq.empty() || gr.empty()) continue;
                std::vector<std::vector<int>> table(
                    gr.size(), std::vector<int>(fq.size(), 0));
                int jp = objs[static_cast<std::size_t>(p)].target;
                int jq = objs[static_cast<std::size_t>(q)].target;
                int jr = objs[static_cast<std::size_t>(r)].target;
                for (std::size_t g = 0; g < gr.size(); ++g)
                    for (std::size_t f = 0; f < fq.size(); ++f)
                        table[g][f] = position(
                            p, r,
                            cat.compose_index(jp, jq, jr, gr[g], fq[f]));
                u.composition[{p, q, r}] = std::move(table);
            }
    return u;
}

ValidationResult validate_simplicial_set(const SimplicialSet& k) {
    if (k.faces.size() != k.simplices.size())
        return {false, "face table size mismatch"};
    for (std::size_t n = 1; n < k.simplices.size(); ++n) {
        if (k.faces[n].size() != k.simplices[n].size())
            return {false, "face list count mismatch in dimension " +
                               std::to_string(n)};
        for (std::size_t s = 0; s < k.faces[n].size(); ++s) {
            if (k.faces[n][s].size() != n + 1)
                return {false, "simplex " + k.simplices[n][s] + " has " +
                                   std::to_string(k.faces[n][s].size()) +
                                   " faces"};
            for (std::size_t f : k.faces[n][s])
                if (f != SimplicialSet::no_face &&
                    f >= k.simplices[n - 1].size())
                    return {false, "face index out of range on " +
                                       k.simplices[n][s]};
        }
    }
    for (std::size_t n = 2; n < k.simplices.size(); ++n)
        for (std::size_t s = 0; s < k.faces[n].size(); ++s)
            for (std::size_t j = 1; j <= n; ++j)
                for (std::size_t i = 0; i < j; ++i) {
                    std::size_t a = k.faces[n][s][j];
                    std::size_t b = k.faces[n][s][i];
                    if (a == SimplicialSet::no_face ||
                        b == SimplicialSet::no_face)
                        continue;
                    if (k.faces[n - 1][a][i] != k.faces[n - 1][b][j - 1])
                        return {false, "face identity d_" + std::to_string(i) +
                                           " d_" + std::to_string(j) +
                                           " fails on " + k.simplices[n][s]};
                }
    return {};
}

SimplicialSet nerve(const FiniteCategory& cat, int cap) {
    bool lf = is_loop_free(cat);
    if (cap < 0 && !lf)
        throw std::invalid_argument(
            "nerve: category has loops; pass a dimension cap");
    SimplicialSet k;
    k.cap = cap;
    k.simplices.push_back(cat.objects);
    k.faces.emplace_back();

    struct Arrow {
        int src, dst, m;
    };
    using Chain = std::vector<Arrow>;
    auto key = [](const Chain& c) {
        std::vector<int> v;
        for (const Arrow& a : c) {
            v.push_back(a.src);
            v.push_back(a.dst);
            v.push_back(a.m);
        }
        return v;
    };
    auto chain_name = [&](const Chain& c) {
        std::string s;
        for (const Arrow& a : c) {
            if (!s.empty()) s += "|";
            s += cat.morphisms(a.src, a.dst)[static_cast<std::size_t>(a.m)];
        }
        return s;
    };
    auto is_id = [&](int src, int dst, int m) {
        return src == dst && m == cat.identity[static_cast<std::size_t>(src)];
    };

    std::vector<Chain> cur;
    for (int s = 0; s < cat.size(); ++s)
        for (int d = 0; d < cat.size(); ++d)
            for (std::size_t m = 0; m < cat.morphisms(s, d).size(); ++m)
                if (!is_id(s, d, static_cast<int>(m)))
                    cur.push_back({{s, d, static_cast<int>(m)}});

    std::map<std::vector<int>, std::size_t> prev_idx;
    int dim = 1;
    while (!cur.empty()) {
        if (cap >= 0 && dim > cap) {
            k.truncated = true;
            break;
        }
        std::vector<std::string> names;
        std::vector<std::vector<std::size_t>> faces;
        std::map<std::vector<int>, std::size_t> idx;
        for (std::size_t s = 0; s < cur.size(); ++s) {
            const Chain& c = cur[s];
            idx[key(c)] = s;
            names.push_back(chain_name(c));
            std::vector<std::size_t> fl(static_cast<std::size_t>(dim) + 1);
            if (dim == 1) {
                fl[0] = static_cast<std::size_t>(c[0].dst);
                fl[1] = static_cast<std::size_t>(c[0].src);
            } else {
                fl[0] = prev_idx.at(key(Chain(c.begin() + 1, c.end())));
                fl[static_cast<std::size_t>(dim)] =
                    prev_idx.at(key(Chain(c.begin(), c.end() - 1)));
                for (int j = 1; j < dim; ++j) {
                    const Arrow& a = c[static_cast<std::size_t>(j - 1)];
                    const Arrow& b = c[static_cast<std::size_t>(j)];
                    int cm = cat.compose_index(a.src, a.dst, b.dst, b.m, a.m);
                    if (is_id(a.src, b.dst, cm)) {
                        fl[static_cast<std::size_t>(j)] = SimplicialSet::no_face;
                        continue;
                    }
                    Chain shorter(c.begin(), c.end());
                    shorter[static_cast<std::size_t>(j - 1)] = {a.src, b.dst,
                                                                cm};
                    shorter.erase(shorter.begin() + j);
                    fl[static_cast<std::size_t>(j)] = prev_idx.at(key(shorter));
                }
            }
            faces.push_back(std::move(fl));
        }
        k.simplices.push_back(std::move(names));
        k.faces.push_back(std::move(faces));
        prev_idx = std::move(idx);

        std::vector<Chain> next;
        for (const Chain& c : cur) {
            int t = c.back().dst;
            for (int d = 0; d < cat.size(); ++d)
                for (std::size_t m = 0; m < cat.morphisms(t, d).size(); ++m)
                    if (!is_id(t, d, static_cast<int>(m))) {
                        Chain e = c;
                        e.push_back({t, d, static_cast<int>(m)});
                        next.push_back(std::move(e));
                    }
        }
        cur = std::move(next);
        ++dim;
    }
    return k;
}

namespace {

std::vector<std::vector<int>> subsets_of_size(int n, int k) {
    std::vector<std::vector<int>> out;
    std::vector<int> c(static_cast<std::size_t>(k));
    std::iota(c.begin(), c.end(), 0);
    while (true) {
        out.push_back(c);
        int i = k - 1;
        while (i >= 0 && c[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++c[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

std::string subset_name(const std::vector<int>& s) {
    std::string out;
    for (int v : s) out += std::to_string(v);
    return out;
}

}  // namespace

SimplicialSet standard_simplex(int n) {
    if (n < 0) throw std::invalid_argument("standard_simplex: negative n");
    SimplicialSet k;
    std::map<std::vector<int>, std::size_t> prev_idx;
    for (int d = 0; d <= n; ++d) {
        auto subs = subsets_of_size(n + 1, d + 1);
        std::vector<std::string> names;
        std::vector<std::vector<std::size_t>> faces;
        std::map<std::vector<int>, std::size_t> idx;
        for (std::size_t s = 0; s < subs.size(); ++s) {
            idx[subs[s]] = s;
            names.push_back(subset_name(subs[s]));
            if (d >= 1) {
                std::vector<std::size_t> fl;
                for (int i = 0; i <= d; ++i) {
                    std::vector<int> sub = subs[s];
                    sub.erase(sub.begin() + i);
                    fl.push_back(prev_idx.at(sub));
                }
                faces.push_back(std::move(fl));
            }
        }
        k.simplices.push_back(std::move(names));
        k.faces.push_back(std::move(faces));
        prev_idx = std::move(idx);
    }
    return k;
}

SimplicialSet simplex_boundary(int n) {
    if (n < 1) throw std::invalid_argument("simplex_boundary: need n >= 1");
    SimplicialSet k = standard_simplex(n);
    k.simplices.pop_back();
    k.faces.pop_back();
    return k;
}

ChainComplex zk_chains(const SimplicialSet& k) {
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (std::size_t n = 0; n < k.simplices.size(); ++n)
        ranks[static_cast<int>(n)] = k.simplices[n].size();
    for (std::size_t n = 1; n < k.simplices.size(); ++n) {
        IntMatrix d(k.simplices[n - 1].size(), k.simplices[n].size());
        for (std::size_t s = 0; s < k.faces[n].size(); ++s)
            for (std::size_t i = 0; i < k.faces[n][s].size(); ++i) {
                std::size_t f = k.faces[n][s][i];
                if (f == SimplicialSet::no_face) continue;
                d.at(f, s) += (i % 2 == 0) ? 1 : -1;
            }
        if (!d.is_zero()) diffs[static_cast<int>(n)] = std::move(d);
    }
    return ChainComplex(ranks, diffs);
}

// ---------------------------------------------------------------------------
// dg-categories

namespace {

std::string pair_name(const DgCategory& c, int a, int b) {
    return "(" + c.objects[static_cast<std::size_t>(a)] + ", " +
           c.objects[static_cast<std::size_t>(b)] + ")";
}

}  // namespace

ValidationResult validate_dg_category(const DgCategory& c) {
    int n = c.size();
    if (c.homs.size() != static_cast<std::size_t>(n) ||
        c.comps.size() != static_cast<std::size_t>(n) ||
        c.units.size() != static_cast<std::size_t>(n))
        return {false, "table sizes do not match the object count"};
    for (int a = 0; a < n; ++a)
        if (c.homs[static_cast<std::size_t>(a)].size() !=
                static_cast<std::size_t>(n) ||
            c.comps[static_cast<std::size_t>(a)].size() !=
                static_cast<std::size_t>(n))
            return {false, "hom or composition row has wrong size"};
    for (int a = 0; a < n; ++a) {
        ValidationResult v = validate_map(c.unit(a));
        if (!v.ok)
            return {false, "unit at " + c.objects[static_cast<std::size_t>(a)] +
                               ": " + v.detail};
        if (c.unit(a).source() != unit_complex() ||
            c.unit(a).target() != c.hom(a, a))
            return {false, "unit at " + c.objects[static_cast<std::size_t>(a)] +
                               " has wrong endpoints"};
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ValidationResult v = validate_complex(c.hom(a, b));
            if (!v.ok)
                return {false, "hom " + pair_name(c, a, b) + ": " + v.detail};
            for (int d = 0; d < n; ++d) {
                const ChainMap& m = c.comp(a, b, d);
                if (m.source() != tensor(c.hom(b, d), c.hom(a, b)) ||
                    m.target() != c.hom(a, d))
                    return {false, "composition at " + pair_name(c, a, b) +
                                       " -> " +
                                       c.objects[static_cast<std::size_t>(d)] +
                                       " has wrong endpoints"};
                ValidationResult mv = validate_map(m);
                if (!mv.ok)
                    return {false, "composition at " + pair_name(c, a, b) +
                                       " -> " +
                                       c.objects[static_cast<std::size_t>(d)] +
                                       ": " + mv.detail};
            }
        }
    // unit laws: g o id = g and id o g = g on the nose
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            ChainMap right = compose(
                c.comp(a, a, b),
                tensor_map(identity_map(c.hom(a, b)), c.unit(a)));
            if (!(right == identity_map(c.hom(a, b))))
                return {false, "right unit law fails at " + pair_name(c, a, b)};
            ChainMap left = compose(
                c.comp(a, b, b),
                tensor_map(c.unit(b), identity_map(c.hom(a, b))));
            if (!(left == identity_map(c.hom(a, b))))
                return {false, "left unit law fails at " + pair_name(c, a, b)};
        }
    // associativity through the two regroupings of the triple word
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d)
                for (int e = 0; e < n; ++e) {
                    TensorWord w({c.hom(d, e), c.hom(b, d), c.hom(a, b)});
                    TensorWord lw({tensor(c.hom(d, e), c.hom(b, d)),
                                   c.hom(a, b)});
                    TensorWord rw({c.hom(d, e),
                                   tensor(c.hom(b, d), c.hom(a, b))});
                    ChainMap lhs = compose(
                        c.comp(a, b, e),
                        compose(tensor_map(c.comp(b, d, e),
                                           identity_map(c.hom(a, b))),
                                regroup(w, {2, 1}, lw)));
                    ChainMap rhs = compose(
                        c.comp(a, d, e),
                        compose(tensor_map(identity_map(c.hom(d, e)),
                                           c.comp(a, b, d)),
                                regroup(w, {1, 2}, rw)));
                    if (!(lhs == rhs))
                        return {false,
                                "associativity fails on (" +
                                    c.objects[static_cast<std::size_t>(a)] +
                                    " -> " +
                                    c.objects[static_cast<std::size_t>(b)] +
                                    " -> " +
                                    c.objects[static_cast<std::size_t>(d)] +
                                    " -> " +
                                    c.objects[static_cast<std::size_t>(e)] +
                                    ")"};
                }
    return {};
}

bool dg_category_equal(const DgCategory& a, const DgCategory& b) {
    if (a.objects != b.objects) return false;
    int n = a.size();
    for (int i = 0; i < n; ++i) {
        if (!(a.unit(i) == b.unit(i))) return false;
        for (int j = 0; j < n; ++j) {
            if (a.hom(i, j) != b.hom(i, j)) return false;
            for (int k = 0; k < n; ++k)
                if (!(a.comp(i, j, k) == b.comp(i, j, k))) return false;
        }
    }
    return true;
}

DgCategory free_dg_category(const FiniteCategory& cat) {
    DgCategory c;
    c.objects = cat.objects;
    int n = cat.size();
    c.homs.assign(static_cast<std::size_t>(n),
                  std::vector<ChainComplex>(static_cast<std::size_t>(n)));
    c.comps.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<ChainMap>>(
                       static_cast<std::size_t>(n),
                       std::vector<ChainMap>(static_cast<std::size_t>(n))));
    c.units.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            std::size_t r = cat.morphisms(i, j).size();
            c.homs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                r == 0 ? ChainComplex() : ChainComplex({{0, r}}, {});
        }
    for (int i = 0; i < n; ++i) {
        std::size_t r = cat.morphisms(i, i).size();
        IntMatrix u(r, 1);
        u.at(static_cast<std::size_t>(cat.identity[static_cast<std::size_t>(i)]),
             0) = 1;
        c.units[static_cast<std::size_t>(i)] =
            ChainMap(unit_complex(), c.hom(i, i), {{0, u}});
    }
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d) {
                std::size_t nf = cat.morphisms(a, b).size();
                std::size_t ng = cat.morphisms(b, d).size();
                ChainComplex src = tensor(c.hom(b, d), c.hom(a, b));
                std::map<int, IntMatrix> comps;
                if (nf > 0 && ng > 0) {
                    IntMatrix m(cat.morphisms(a, d).size(), ng * nf);
                    for (std::size_t g = 0; g < ng; ++g)
                        for (std::size_t f = 0; f < nf; ++f)
                            m.at(static_cast<std::size_t>(cat.compose_index(
                                     a, b, d, static_cast<int>(g),
                                     static_cast<int>(f))),
                                 g * nf + f) += 1;
                    if (!m.is_zero()) comps[0] = std::move(m);
                }
                c.comps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                       [static_cast<std::size_t>(d)] =
                           ChainMap(src, c.hom(a, d), comps);
            }
    return c;
}

// ---------------------------------------------------------------------------
// internal hom of complexes and the full subcategory of Ch

namespace {

// Per-degree summand layout of hom_complex(a, b): maps a_p -> b_{p+n},
// blocked by p ascending, entry (i, j) at offset + i * arank + j.
struct HomLayout {
    struct Part {
        int p = 0;
        std::size_t offset = 0;
        std::size_t brank = 0;
        std::size_t arank = 0;
    };
    std::map<int, std::vector<Part>> parts;
    std::map<int, std::size_t> ranks;

    const Part* find(int n, int p) const {
        auto it = parts.find(n);
        if (it == parts.end()) return nullptr;
        for (const Part& q : it->second)
            if (q.p == p) return &q;
        return nullptr;
    }
};

HomLayout hom_layout(const ChainComplex& a, const ChainComplex& b) {
    HomLayout l;
    Window wa = a.support(), wb = b.support();
    if (wa.empty() || wb.empty()) return l;
    for (int n = wb.lo - wa.hi; n <= wb.hi - wa.lo; ++n) {
        std::vector<HomLayout::Part> ps;
        std::size_t off = 0;
        for (int p = wa.lo; p <= wa.hi; ++p) {
            std::size_t ra = a.rank(p), rb = b.rank(p + n);
            if (ra == 0 || rb == 0) continue;
            ps.push_back({p, off, rb, ra});
            off += rb * ra;
        }
        if (!ps.empty()) {
            l.parts[n] = std::move(ps);
            l.ranks[n] = off;
        }
    }
    return l;
}

}  // namespace

ChainComplex hom_complex(const ChainComplex& a, const ChainComplex& b) {
    HomLayout l = hom_layout(a, b);
    std::map<int, IntMatrix> diffs;
    for (const auto& [n, ps] : l.parts) {
        auto below = l.ranks.find(n - 1);
        if (below == l.ranks.end()) continue;
        IntMatrix d(below->second, l.ranks.at(n));
        for (const auto& part : ps) {
            const IntMatrix& db = b.diff(part.p + n);
            if (db.rows() > 0 && !db.is_zero()) {
                const HomLayout::Part* t = l.find(n - 1, part.p);
                if (t)
                    d.set_block(t->offset, part.offset,
                                kronecker(db, IntMatrix::identity(part.arank)));
            }
            const IntMatrix& da = a.diff(part.p + 1);
            if (da.cols() > 0 && !da.is_zero()) {
                const HomLayout::Part* t = l.find(n - 1, part.p + 1);
                if (t) {
                    IntMatrix blk = kronecker(
                        IntMatrix::identity(part.brank), da.transposed());
                    d.set_block(t->offset, part.offset,
                                n % 2 == 0 ? -blk : blk);
                }
            }
        }
        if (!d.is_zero()) diffs[n] = std::move(d);
    }
    return ChainComplex(l.ranks, diffs);
}

DgCategory full_subcategory_of_ch(const std::vector<ChainComplex>& objects,
                                  std::vector<std::string> names) {
    int n = static_cast<int>(objects.size());
    if (names.empty())
        for (int i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
    if (names.size() != objects.size())
        throw std::invalid_argument("full_subcategory_of_ch: name count");
    DgCategory c;
    c.objects = std::move(names);
    c.homs.assign(static_cast<std::size_t>(n),
                  std::vector<ChainComplex>(static_cast<std::size_t>(n)));
    c.comps.assign(static_cast<std::size_t>(n),
                   std::vector<std::vector<ChainMap>>(
                       static_cast<std::size_t>(n),
                       std::vector<ChainMap>(static_cast<std::size_t>(n))));
    c.units.resize(static_cast<std::size_t>(n));

    std::vector<std::vector<HomLayout>> lay(
        static_cast<std::size_t>(n),
        std::vector<HomLayout>(static_cast<std::size_t>(n)));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            lay[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                hom_layout(objects[static_cast<std::size_t>(x)],
                           objects[static_cast<std::size_t>(y)]);
            c.homs[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] =
                hom_complex(objects[static_cast<std::size_t>(x)],
                            objects[static_cast<std::size_t>(y)]);
        }

    for (int x = 0; x < n; ++x) {
        const HomLayout& l =
            lay[static_cast<std::size_t>(x)][static_cast<std::size_t>(x)];
        IntMatrix u(c.hom(x, x).rank(0), 1);
        auto it = l.parts.find(0);
        if (it != l.parts.end())
            for (const auto& part : it->second)
                for (std::size_t i = 0; i < part.arank; ++i)
                    u.at(part.offset + i * part.arank + i, 0) = 1;
        std::map<int, IntMatrix> comps;
        if (!u.is_zero()) comps[0] = std::move(u);
        c.units[static_cast<std::size_t>(x)] =
            ChainMap(unit_complex(), c.hom(x, x), comps);
    }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int d = 0; d < n; ++d) {
                const HomLayout& lab =
                    lay[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
                const HomLayout& lbd =
                    lay[static_cast<std::size_t>(b)][static_cast<std::size_t>(d)];
                const HomLayout& lad =
                    lay[static_cast<std::size_t>(a)][static_cast<std::size_t>(d)];
                TensorWord w({c.hom(b, d), c.hom(a, b)});
                std::map<int, IntMatrix> comps;
                Window ws = w.total().support();
                for (int deg = ws.lo; !ws.empty() && deg <= ws.hi; ++deg) {
                    std::size_t rows = c.hom(a, d).rank(deg);
                    std::size_t cols = w.total().rank(deg);
                    if (rows == 0 || cols == 0) continue;
                    IntMatrix m(rows, cols);
                    const auto& sums = w.summands(deg);
                    for (std::size_t t = 0; t < sums.size(); ++t) {
                        int gdeg = sums[t].degrees[0];
                        int fdeg = sums[t].degrees[1];
                        auto git = lbd.parts.find(gdeg);
                        auto fit = lab.parts.find(fdeg);
                        if (git == lbd.parts.end() || fit == lab.parts.end())
                            continue;
                        for (const auto& gp : git->second)
                            for (const auto& fp : fit->second) {
                                // composable when f lands where g starts
                                if (fp.p + fdeg != gp.p) continue;
                                const HomLayout::Part* tp =
                                    lad.find(deg, fp.p);
                                if (!tp) continue;
                                for (std::size_t i = 0; i < gp.brank; ++i)
                                    for (std::size_t j = 0; j < gp.arank; ++j)
                                        for (std::size_t v = 0; v < fp.arank;
                                             ++v) {
                                            std::size_t gidx =
                                                gp.offset + i * gp.arank + j;
                                            std::size_t fidx =
                                                fp.offset + j * fp.arank + v;
                                            std::size_t col = w.flat_index(
                                                deg, t, {gidx, fidx});
                                            m.at(tp->offset + i * fp.arank + v,
                                                 col) += 1;
                                        }
                            }
                    }
                    if (!m.is_zero()) comps[deg] = std::move(m);
                }
                c.comps[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]
                       [static_cast<std::size_t>(d)] =
                           ChainMap(w.total(), c.hom(a, d), comps);
            }
    return c;
}

FlatnessReport flatness_report(const DgCategory& c) {
    FlatnessReport rep;
    rep.locally_flat = true;  // homs are bounded free complexes by type
    rep.locally_star_flat = true;
    int n = c.size();
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            rep.hom_support =
                Window::hull(rep.hom_support, c.hom(a, b).support());
    for (int a = 0; a < n; ++a) {
        rep.units.push_back(is_cofibration(c.unit(a)));
        if (!rep.units.back().ok) rep.locally_star_flat = false;
    }
    return rep;
}

// ---------------------------------------------------------------------------
// presheaves and diagrams

ValidationResult validate_presheaf(const Presheaf& w) {
    int n = w.host.size();
    if (w.values.size() != static_cast<std::size_t>(n) ||
        w.actions.size() != static_cast<std::size_t>(n))
        return {false, "value or action table has wrong size"};
    for (int cp = 0; cp < n; ++cp)
        if (w.actions[static_cast<std::size_t>(cp)].size() !=
            static_cast<std::size_t>(n))
            return {false, "action row has wrong size"};
    const DgCategory& h = w.host;
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            const ChainMap& m = w.action(cp, cc);
            if (m.source() != tensor(w.value(cc), h.hom(cp, cc)) ||
                m.target() != w.value(cp))
                return {false, "action at " + pair_name(h, cp, cc) +
                                   " has wrong endpoints"};
            ValidationResult v = validate_map(m);
            if (!v.ok)
                return {false,
                        "action at " + pair_name(h, cp, cc) + ": " + v.detail};
        }
    for (int cc = 0; cc < n; ++cc) {
        ChainMap u = compose(
            w.action(cc, cc),
            tensor_map(identity_map(w.value(cc)), h.unit(cc)));
        if (!(u == identity_map(w.value(cc))))
            return {false, "unit action fails at " +
                               h.objects[static_cast<std::size_t>(cc)]};
    }
    for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = 0; c2 < n; ++c2) {
                TensorWord tw({w.value(c2), h.hom(c1, c2), h.hom(c0, c1)});
                TensorWord lw({tensor(w.value(c2), h.hom(c1, c2)),
                               h.hom(c0, c1)});
                TensorWord rw({w.value(c2),
                               tensor(h.hom(c1, c2), h.hom(c0, c1))});
                ChainMap lhs = compose(
                    w.action(c0, c1),
                    compose(tensor_map(w.action(c1, c2),
                                       identity_map(h.hom(c0, c1))),
                            regroup(tw, {2, 1}, lw)));
                ChainMap rhs = compose(
                    w.action(c0, c2),
                    compose(tensor_map(identity_map(w.value(c2)),
                                       h.comp(c0, c1, c2)),
                            regroup(tw, {1, 2}, rw)));
                if (!(lhs == rhs))
                    return {false,
                            "action incompatible with composition on (" +
                                h.objects[static_cast<std::size_t>(c0)] +
                                " -> " +
                                h.objects[static_cast<std::size_t>(c1)] +
                                " -> " +
                                h.objects[static_cast<std::size_t>(c2)] + ")"};
            }
    return {};
}

ValidationResult validate_diagram(const Diagram& d) {
    int n = d.host.size();
    if (d.values.size() != static_cast<std::size_t>(n) ||
        d.actions.size() != static_cast<std::size_t>(n))
        return {false, "value or action table has wrong size"};
    for (int cc = 0; cc < n; ++cc)
        if (d.actions[static_cast<std::size_t>(cc)].size() !=
            static_cast<std::size_t>(n))
            return {false, "action row has wrong size"};
    const DgCategory& h = d.host;
    for (int cc = 0; cc < n; ++cc)
        for (int cp = 0; cp < n; ++cp) {
            const ChainMap& m = d.action(cc, cp);
            if (m.source() != tensor(h.hom(cc, cp), d.value(cc)) ||
                m.target() != d.value(cp))
                return {false, "action at " + pair_name(h, cc, cp) +
                                   " has wrong endpoints"};
            ValidationResult v = validate_map(m);
            if (!v.ok)
                return {false,
                        "action at " + pair_name(h, cc, cp) + ": " + v.detail};
        }
    for (int cc = 0; cc < n; ++cc) {
        ChainMap u = compose(
            d.action(cc, cc),
            tensor_map(h.unit(cc), identity_map(d.value(cc))));
        if (!(u == identity_map(d.value(cc))))
            return {false, "unit action fails at " +
                               h.objects[static_cast<std::size_t>(cc)]};
    }
    for (int c0 = 0; c0 < n; ++c0)
        for (int c1 = 0; c1 < n; ++c1)
            for (int c2 = 0; c2 < n; ++c2) {
                TensorWord tw({h.hom(c1, c2), h.hom(c0, c1), d.value(c0)});
                TensorWord lw({h.hom(c1, c2),
                               tensor(h.hom(c0, c1), d.value(c0))});
                TensorWord rw({tensor(h.hom(c1, c2), h.hom(c0, c1)),
                               d.value(c0)});
                ChainMap lhs = compose(
                    d.action(c1, c2),
                    compose(tensor_map(identity_map(h.hom(c1, c2)),
                                       d.action(c0, c1)),
                            regroup(tw, {1, 2}, lw)));
                ChainMap rhs = compose(
                    d.action(c0, c2),
                    compose(tensor_map(h.comp(c0, c1, c2),
                                       identity_map(d.value(c0))),
                            regroup(tw, {2, 1}, rw)));
                if (!(lhs == rhs))
                    return {false,
                            "action incompatible with composition on (" +
                                h.objects[static_cast<std::size_t>(c0)] +
                                " -> " +
                                h.objects[static_cast<std::size_t>(c1)] +
                                " -> " +
                                h.objects[static_cast<std::size_t>(c2)] + ")"};
            }
    return {};
}

Presheaf representable(const DgCategory& c, int obj) {
    Presheaf w;
    w.host = c;
    int n = c.size();
    for (int x = 0; x < n; ++x) w.values.push_back(c.hom(x, obj));
    w.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int x = 0; x < n; ++x)
            w.actions[static_cast<std::size_t>(cp)].push_back(
                c.comp(cp, x, obj));
    return w;
}

Diagram corepresentable(const DgCategory& c, int obj) {
    Diagram d;
    d.host = c;
    int n = c.size();
    for (int x = 0; x < n; ++x) d.values.push_back(c.hom(obj, x));
    d.actions.resize(static_cast<std::size_t>(n));
    for (int x = 0; x < n; ++x)
        for (int xp = 0; xp < n; ++xp)
            d.actions[static_cast<std::size_t>(x)].push_back(
                c.comp(obj, x, xp));
    return d;
}

Presheaf zero_presheaf(const DgCategory& c) {
    Presheaf w;
    w.host = c;
    int n = c.size();
    w.values.assign(static_cast<std::size_t>(n), ChainComplex());
    w.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc)
            w.actions[static_cast<std::size_t>(cp)].push_back(
                ChainMap(tensor(ChainComplex(), c.hom(cp, cc)), ChainComplex(),
                         {}));
    return w;
}

Diagram zero_diagram(const DgCategory& c) {
    Diagram d;
    d.host = c;
    int n = c.size();
    d.values.assign(static_cast<std::size_t>(n), ChainComplex());
    d.actions.resize(static_cast<std::size_t>(n));
    for (int cc = 0; cc < n; ++cc)
        for (int cp = 0; cp < n; ++cp)
            d.actions[static_cast<std::size_t>(cc)].push_back(
                ChainMap(tensor(c.hom(cc, cp), ChainComplex()), ChainComplex(),
                         {}));
    return d;
}

Presheaf constant_presheaf(const DgCategory& c) {
    Presheaf w;
    w.host = c;
    int n = c.size();
    w.values.assign(static_cast<std::size_t>(n), unit_complex());
    w.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            ChainComplex src = tensor(unit_complex(), c.hom(cp, cc));
            std::map<int, IntMatrix> comps;
            std::size_t r = src.rank(0);
            if (r > 0) {
                IntMatrix m(1, r);
                for (std::size_t i = 0; i < r; ++i) m.at(0, i) = 1;
                comps[0] = std::move(m);
            }
            w.actions[static_cast<std::size_t>(cp)].push_back(
                ChainMap(src, unit_complex(), comps));
        }
    return w;
}

ValidationResult validate_presheaf_map(const Presheaf& a, const Presheaf& b,
                                       const PresheafMap& f) {
    if (!dg_category_equal(a.host, b.host))
        return {false, "presheaves live over different hosts"};
    int n = a.host.size();
    if (f.components.size() != static_cast<std::size_t>(n))
        return {false, "component count mismatch"};
    for (int cc = 0; cc < n; ++cc) {
        const ChainMap& m = f.components[static_cast<std::size_t>(cc)];
        if (m.source() != a.value(cc) || m.target() != b.value(cc))
            return {false, "component at " +
                               a.host.objects[static_cast<std::size_t>(cc)] +
                               " has wrong endpoints"};
        ValidationResult v = validate_map(m);
        if (!v.ok)
            return {false, "component at " +
                               a.host.objects[static_cast<std::size_t>(cc)] +
                               ": " + v.detail};
    }
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            ChainMap lhs = compose(f.components[static_cast<std::size_t>(cp)],
                                   a.action(cp, cc));
            ChainMap rhs = compose(
                b.action(cp, cc),
                tensor_map(f.components[static_cast<std::size_t>(cc)],
                           identity_map(a.host.hom(cp, cc))));
            if (!(lhs == rhs))
                return {false,
                        "naturality fails at " + pair_name(a.host, cp, cc)};
        }
    return {};
}

ValidationResult presheaf_iso_check(const Presheaf& a, const Presheaf& b,
                                    const PresheafMap& f) {
    ValidationResult v = validate_presheaf_map(a, b, f);
    if (!v.ok) return v;
    for (std::size_t cc = 0; cc < f.components.size(); ++cc) {
        try {
            map_inverse(f.components[cc]);
        } catch (const std::invalid_argument&) {
            return {false, "component at " + a.host.objects[cc] +
                               " is not invertible"};
        }
    }
    return {};
}

Presheaf presheaf_direct_sum(const std::vector<Presheaf>& parts) {
    if (parts.empty())
        throw std::invalid_argument("presheaf_direct_sum: no parts");
    for (std::size_t i = 1; i < parts.size(); ++i)
        if (!dg_category_equal(parts[0].host, parts[i].host))
            throw std::invalid_argument("presheaf_direct_sum: host mismatch");
    Presheaf w;
    w.host = parts[0].host;
    int n = w.host.size();
    std::vector<std::vector<ChainComplex>> columns(
        static_cast<std::size_t>(n));
    for (int cc = 0; cc < n; ++cc) {
        for (const Presheaf& p : parts)
            columns[static_cast<std::size_t>(cc)].push_back(p.value(cc));
        w.values.push_back(
            complex_direct_sum(columns[static_cast<std::size_t>(cc)]));
    }
    w.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            ChainMap total;
            for (std::size_t i = 0; i < parts.size(); ++i) {
                ChainMap piece = compose(
                    sum_inclusion(columns[static_cast<std::size_t>(cp)], i),
                    compose(parts[i].action(cp, cc),
                            tensor_map(
                                sum_projection(
                                    columns[static_cast<std::size_t>(cc)], i),
                                identity_map(w.host.hom(cp, cc)))));
                total = i == 0 ? piece : map_sum(total, piece);
            }
            w.actions[static_cast<std::size_t>(cp)].push_back(total);
        }
    return w;
}

Presheaf shift_presheaf(const Presheaf& w, int k) {
    Presheaf out;
    out.host = w.host;
    int n = w.host.size();
    for (int cc = 0; cc < n; ++cc)
        out.values.push_back(shift(w.value(cc), k));
    out.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            const ChainComplex& h = w.host.hom(cp, cc);
            TensorWord tw({sphere(k), w.value(cc), h});
            TensorWord lw({tensor(sphere(k), w.value(cc)), h});
            TensorWord rw({sphere(k), tensor(w.value(cc), h)});
            // shift(x, k) is tensor(sphere(k), x) on the nose, so both
            // regroupings have the right endpoints as data
            ChainMap to_shifted = compose(
                regroup(tw, {1, 2}, rw),
                map_inverse(regroup(tw, {2, 1}, lw)));
            out.actions[static_cast<std::size_t>(cp)].push_back(
                compose(shift_map(w.action(cp, cc), k), to_shifted));
        }
    return out;
}

Presheaf tensor_presheaf(const Presheaf& w, const ChainComplex& k) {
    Presheaf out;
    out.host = w.host;
    int n = w.host.size();
    for (int cc = 0; cc < n; ++cc)
        out.values.push_back(tensor(w.value(cc), k));
    out.actions.resize(static_cast<std::size_t>(n));
    for (int cp = 0; cp < n; ++cp)
        for (int cc = 0; cc < n; ++cc) {
            const ChainComplex& h = w.host.hom(cp, cc);
            const ChainComplex& v = w.value(cc);
            TensorWord w1({v, k, h});
            TensorWord l1({tensor(v, k), h});
            TensorWord r1({v, tensor(k, h)});
            TensorWord w2({v, h, k});
            TensorWord l2({v, tensor(h, k)});
            TensorWord r2({tensor(v, h), k});
            ChainMap braid = compose(
                tensor_map(identity_map(v), symmetry_map(k, h)),
                compose(regroup(w1, {1, 2}, r1),
                        map_inverse(regroup(w1, {2, 1}, l1))));
            ChainMap down = compose(regroup(w2, {2, 1}, r2),
                                    map_inverse(regroup(w2, {1, 2}, l2)));
            out.actions[static_cast<std::size_t>(cp)].push_back(compose(
                tensor_map(w.action(cp, cc), identity_map(k)),
                compose(down, braid)));
        }
    return out;
}

}  // namespace dgc
