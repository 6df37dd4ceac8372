#include "dgcolim/quotient.hpp"

#include <sstream>
#include <stdexcept>

namespace dgc {

QuotientComplex::QuotientComplex(ChainComplex cover,
                                 const std::map<int, IntMatrix>& generators)
    : cover_(std::move(cover)) {
    for (const auto& [n, gens] : generators) {
        if (gens.cols() == 0) continue;
        if (gens.rows() != cover_.rank(n)) {
            std::ostringstream os;
            os << "QuotientComplex: relations in degree " << n << " have "
               << gens.rows() << " rows, cover rank is " << cover_.rank(n);
            throw std::invalid_argument(os.str());
        }
        IntMatrix b = lattice_basis(gens);
        if (b.cols() > 0) rel_[n] = std::move(b);
    }
    for (const auto& [n, b] : rel_) {
        IntMatrix db = cover_.diff(n) * b;
        if (db.is_zero()) continue;
        auto it = rel_.find(n - 1);
        if (it == rel_.end() || !lattice_contains(it->second, db)) {
            std::ostringstream os;
            os << "QuotientComplex: relations in degree " << n
               << " are not closed under d";
            throw std::invalid_argument(os.str());
        }
    }
}

IntMatrix QuotientComplex::relations(int n) const {
    auto it = rel_.find(n);
    if (it != rel_.end()) return it->second;
    return IntMatrix(cover_.rank(n), 0);
}

GradedAbelianGroup::Part QuotientComplex::group(int n) const {
    GradedAbelianGroup::Part p;
    auto it = rel_.find(n);
    if (it == rel_.end()) {
        p.free_rank = static_cast<long>(cover_.rank(n));
        return p;
    }
    SmithForm s = smith_form(it->second);
    p.free_rank = static_cast<long>(cover_.rank(n) - s.rank);
    for (const auto& t : s.torsion()) p.torsion.push_back(t);
    return p;
}

bool QuotientComplex::degreewise_free() const {
    for (const auto& [n, b] : rel_) {
        SmithForm s = smith_form(b);
        if (!s.torsion().empty()) return false;
    }
    return true;
}

GradedAbelianGroup QuotientComplex::homology(const Window& w) const {
    GradedAbelianGroup out;
    for (int n = w.lo; n <= w.hi; ++n) {
        std::size_t r = cover_.rank(n);
        if (r == 0) continue;
        // Relative cycles: x with dx in R_{n-1}, as the x-part of the
        // kernel of [d | R].
        IntMatrix below = relations(n - 1);
        IntMatrix z;
        if (below.cols() == 0) {
            z = kernel_basis(cover_.diff(n));
        } else {
            IntMatrix k = kernel_basis(IntMatrix::hcat(cover_.diff(n), below));
            z = lattice_basis(k.slice_rows(0, r));
        }
        if (z.cols() == 0) continue;
        // Denominator: boundaries from the cover plus this degree's
        // relations, expressed in the cycle basis.
        IntMatrix dens = IntMatrix::hcat(cover_.diff(n + 1), relations(n));
        GradedAbelianGroup::Part p;
        if (dens.cols() == 0) {
            p.free_rank = static_cast<long>(z.cols());
        } else {
            auto y = solve(z, dens);
            if (!y)
                throw std::logic_error(
                    "QuotientComplex::homology: denominator outside cycles");
            SmithForm s = smith_form(*y);
            p.free_rank = static_cast<long>(z.cols() - s.rank);
            for (const auto& t : s.torsion()) p.torsion.push_back(t);
        }
        if (!p.trivial()) out.parts[n] = std::move(p);
    }
    return out;
}

GradedAbelianGroup QuotientComplex::homology() const {
    return homology(support());
}

namespace {

// Projection and section for one free quotient degree. Prefers a complement
// spanned by standard coordinates (unimodular minor of the raw projection);
// falls back to the Smith transform when none is unimodular.
void free_degree_split(const IntMatrix& rel, std::size_t r, IntMatrix& proj,
                       IntMatrix& sec) {
    std::size_t k = rel.cols();
    if (k == 0) {
        proj = IntMatrix::identity(r);
        sec = IntMatrix::identity(r);
        return;
    }
    SmithForm s = smith_form(rel);
    std::size_t f = r - s.rank;
    IntMatrix p0 = s.u.slice_rows(s.rank, f);
    if (f == 0) {
        proj = p0;
        sec = IntMatrix(r, 0);
        return;
    }
    std::vector<std::size_t> chosen;
    for (std::size_t j = 0; j < r && chosen.size() < f; ++j) {
        std::vector<std::size_t> cand = chosen;
        cand.push_back(j);
        if (smith_form(p0.select_cols(cand)).rank == cand.size())
            chosen = std::move(cand);
    }
    if (chosen.size() == f) {
        IntMatrix a = p0.select_cols(chosen);
        Integer det = determinant(a);
        if (det == 1 || det == -1) {
            IntMatrix inc(r, f);
            for (std::size_t i = 0; i < f; ++i) inc.at(chosen[i], i) = 1;
            proj = unimodular_inverse(a) * p0;
            sec = std::move(inc);
            return;
        }
    }
    proj = p0;
    sec = unimodular_inverse(s.u).slice_cols(s.rank, f);
}

}  // namespace

QuotientModel quotient_model(const QuotientComplex& q) {
    const ChainComplex& c = q.cover();
    Window s = c.support();
    QuotientModel m;
    if (q.degreewise_free()) {
        std::map<int, IntMatrix> proj, sec;
        std::map<int, std::size_t> ranks;
        for (int n = s.lo; n <= s.hi; ++n) {
            std::size_t r = c.rank(n);
            if (r == 0) continue;
            IntMatrix p, z;
            free_degree_split(q.relations(n), r, p, z);
            ranks[n] = p.rows();
            proj[n] = std::move(p);
            sec[n] = std::move(z);
        }
        std::map<int, IntMatrix> diffs;
        for (int n = s.lo + 1; n <= s.hi; ++n) {
            auto above = sec.find(n);
            auto below = proj.find(n - 1);
            if (above == sec.end() || below == proj.end()) continue;
            IntMatrix d = below->second * c.diff(n) * above->second;
            if (!d.is_zero()) diffs[n] = std::move(d);
        }
        m.complex = ChainComplex(ranks, diffs);
        std::map<int, IntMatrix> comps;
        for (auto& [n, p] : proj)
            if (!p.is_zero()) comps[n] = p;
        m.from_cover = ChainMap(c, m.complex, comps);
        m.exact = true;
        m.section = std::move(sec);
        return m;
    }
    // Cone model: relation lattices form a subcomplex; the model is the
    // cone of its inclusion into the cover.
    std::map<int, std::size_t> rranks;
    std::map<int, IntMatrix> rdiffs, incl;
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix b = q.relations(n);
        if (b.cols() == 0) continue;
        rranks[n] = b.cols();
        incl[n] = b;
    }
    for (int n = s.lo + 1; n <= s.hi; ++n) {
        IntMatrix b = q.relations(n);
        IntMatrix below = q.relations(n - 1);
        if (b.cols() == 0 || below.cols() == 0) continue;
        auto d = solve(below, c.diff(n) * b);
        if (!d)
            throw std::logic_error(
                "quotient_model: relations not closed under d");
        if (!d->is_zero()) rdiffs[n] = std::move(*d);
    }
    ChainComplex rcomplex(rranks, rdiffs);
    ConeResult cone = mapping_cone(ChainMap(rcomplex, c, incl));
    m.complex = cone.cone;
    m.from_cover = cone.include_target;
    m.exact = false;
    return m;
}

namespace {

void check_kills_relations(const QuotientComplex& q, const ChainMap& h,
                           const char* who) {
    Window s = q.support();
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix b = q.relations(n);
        if (b.cols() == 0) continue;
        if (!(h.component(n) * b).is_zero()) {
            std::ostringstream os;
            os << who << ": map does not kill the relations in degree " << n;
            throw std::invalid_argument(os.str());
        }
    }
}

}  // namespace

ChainMap map_from_quotient(const QuotientComplex& q, const QuotientModel& m,
                           const ChainMap& h) {
    check_kills_relations(q, h, "map_from_quotient");
    Window s = q.support();
    std::map<int, IntMatrix> comps;
    if (m.exact) {
        for (int n = s.lo; n <= s.hi; ++n) {
            auto it = m.section.find(n);
            if (it == m.section.end()) continue;
            IntMatrix c = h.component(n) * it->second;
            if (!c.is_zero()) comps[n] = std::move(c);
        }
        return ChainMap(m.complex, h.target(), comps);
    }
    // Cone degree n is cover_n + relations_{n-1}; h extends by zero on the
    // relation coordinates.
    Window cs = m.complex.support();
    for (int n = cs.lo; n <= cs.hi; ++n) {
        std::size_t cols = m.complex.rank(n);
        std::size_t rows = h.target().rank(n);
        if (cols == 0 || rows == 0) continue;
        IntMatrix c(rows, cols);
        IntMatrix hc = h.component(n);
        if (hc.is_zero()) continue;
        c.set_block(0, 0, hc);
        comps[n] = std::move(c);
    }
    return ChainMap(m.complex, h.target(), comps);
}

ChainMap map_into_quotient(const QuotientComplex& q, const QuotientModel& m,
                           const ChainMap& g) {
    if (m.exact) {
        // The projection absorbs any defect that lies in the relations;
        // verify it does so the result is an honest chain map.
        ChainMap out = compose(m.from_cover, g);
        ValidationResult v = validate_map(out);
        if (!v.ok)
            throw std::invalid_argument(
                "map_into_quotient: lift defect outside the relations (" +
                v.detail + ")");
        return out;
    }
    const ChainComplex& x = g.source();
    const ChainComplex& c = q.cover();
    Window s = Window::hull(x.support(), m.complex.support());
    std::map<int, IntMatrix> comps;
    for (int n = s.lo; n <= s.hi; ++n) {
        std::size_t rows = m.complex.rank(n);
        std::size_t cols = x.rank(n);
        if (rows == 0 || cols == 0) continue;
        IntMatrix comp(rows, cols);
        comp.set_block(0, 0, g.component(n));
        // Cone coordinate: the commuting defect expressed in the relation
        // basis one degree down.
        IntMatrix defect =
            g.component(n - 1) * x.diff(n) - c.diff(n) * g.component(n);
        IntMatrix below = q.relations(n - 1);
        if (!defect.is_zero()) {
            auto lift = solve(below, defect);
            if (!lift)
                throw std::invalid_argument(
                    "map_into_quotient: lift defect outside the relations");
            comp.set_block(c.rank(n), 0, *lift);
        }
        if (!comp.is_zero()) comps[n] = std::move(comp);
    }
    return ChainMap(x, m.complex, comps);
}

bool carries_relations(const QuotientComplex& q, const QuotientComplex& p,
                       const ChainMap& f) {
    Window s = q.support();
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix b = q.relations(n);
        if (b.cols() == 0) continue;
        IntMatrix fb = f.component(n) * b;
        if (fb.is_zero()) continue;
        if (!lattice_contains(p.relations(n), fb)) return false;
    }
    return true;
}

ChainMap induced_quotient_map(const QuotientComplex& q, const QuotientModel& m,
                              const QuotientComplex& p,
                              const QuotientModel& mp, const ChainMap& f) {
    if (!carries_relations(q, p, f))
        throw std::invalid_argument(
            "induced_quotient_map: map does not carry relations");
    if (m.exact) {
        // Lift model -> cover by the section, push forward, land in the
        // target model; exact for cone targets too via the lax-lift route.
        std::map<int, IntMatrix> lift;
        Window s = m.complex.support();
        for (int n = s.lo; n <= s.hi; ++n) {
            auto it = m.section.find(n);
            if (it == m.section.end()) continue;
            IntMatrix c = f.component(n) * it->second;
            if (!c.is_zero()) lift[n] = std::move(c);
        }
        ChainMap glift(m.complex, p.cover(), lift);
        return map_into_quotient(p, mp, glift);
    }
    if (mp.exact) {
        // Cone source, exact target: the composite cover map kills the
        // source relations outright.
        return map_from_quotient(q, m, compose(mp.from_cover, f));
    }
    // Cone to cone: f restricted to the relation subcomplexes fills the
    // shifted coordinate.
    Window s = Window::hull(m.complex.support(), mp.complex.support());
    std::map<int, IntMatrix> comps;
    for (int n = s.lo; n <= s.hi; ++n) {
        std::size_t rows = mp.complex.rank(n), cols = m.complex.rank(n);
        if (rows == 0 || cols == 0) continue;
        IntMatrix comp(rows, cols);
        IntMatrix fc = f.component(n);
        if (!fc.is_zero()) comp.set_block(0, 0, fc);
        IntMatrix b = q.relations(n - 1);
        if (b.cols() > 0) {
            auto fr = solve(p.relations(n - 1), f.component(n - 1) * b);
            if (!fr)
                throw std::logic_error(
                    "induced_quotient_map: restriction failed after the "
                    "relation check");
            if (!fr->is_zero())
                comp.set_block(p.cover().rank(n), q.cover().rank(n), *fr);
        }
        if (!comp.is_zero()) comps[n] = std::move(comp);
    }
    return ChainMap(m.complex, mp.complex, comps);
}

bool equal_mod_relations(const QuotientComplex& target, const ChainMap& f,
                         const ChainMap& g) {
    Window s = Window::hull(f.source().support(), g.source().support());
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix d = f.component(n) - g.component(n);
        if (d.is_zero()) continue;
        if (!lattice_contains(target.relations(n), d)) return false;
    }
    return true;
}

ValidationResult quotient_map_iso(const QuotientComplex& q, const ChainMap& h) {
    check_kills_relations(q, h, "quotient_map_iso");
    Window s = Window::hull(q.support(), h.target().support());
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix hc = h.component(n);
        IntMatrix k = kernel_basis(hc);
        std::ostringstream os;
        if (k.cols() > 0 && !lattice_contains(q.relations(n), k)) {
            os << "kernel exceeds the relations in degree " << n;
            return {false, os.str()};
        }
        SmithForm sf = smith_form(hc);
        if (sf.rank != hc.rows() || !sf.torsion().empty()) {
            os << "not surjective in degree " << n;
            return {false, os.str()};
        }
    }
    return {};
}

CofibrationReport quotient_map_cofibration(const QuotientComplex& q,
                                           const ChainMap& h) {
    check_kills_relations(q, h, "quotient_map_cofibration");
    Window s = Window::hull(q.support(), h.target().support());
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix hc = h.component(n);
        IntMatrix k = kernel_basis(hc);
        if (k.cols() > 0 && !lattice_contains(q.relations(n), k)) {
            std::ostringstream os;
            os << "kernel exceeds the relations in degree " << n;
            return {false, n, os.str()};
        }
        SmithForm sf = smith_form(hc);
        if (!sf.torsion().empty()) {
            std::ostringstream os;
            os << "cokernel has torsion Z/" << to_string(sf.torsion().front())
               << " in degree " << n;
            return {false, n, os.str()};
        }
    }
    return {true, 0, ""};
}

}  // namespace dgc
