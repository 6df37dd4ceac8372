#include "dgcolim/chain.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dgc {

namespace {
const IntMatrix kEmptyMatrix;
}

Window Window::hull(const Window& a, const Window& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    return Window{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

std::string Window::to_string() const {
    std::ostringstream os;
    if (empty())
        os << "[empty]";
    else
        os << "[" << lo << ", " << hi << "]";
    return os.str();
}

struct ChainComplex::Data {
    int lo = 0;
    int hi = -1;
    std::vector<std::size_t> ranks;  // degree - lo
    std::vector<IntMatrix> diffs;    // diff(lo) .. diff(hi+1)
};

ChainComplex::ChainComplex() : p_(std::make_shared<Data>()) {}

ChainComplex::ChainComplex(const std::map<int, std::size_t>& ranks,
                           const std::map<int, IntMatrix>& diffs) {
    auto d = std::make_shared<Data>();
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [deg, r] : ranks) {
        if (r == 0) continue;
        if (!any) {
            lo = hi = deg;
            any = true;
        } else {
            lo = std::min(lo, deg);
            hi = std::max(hi, deg);
        }
    }
    if (any) {
        d->lo = lo;
        d->hi = hi;
        d->ranks.assign(static_cast<std::size_t>(hi - lo + 1), 0);
        for (const auto& [deg, r] : ranks)
            if (r > 0) d->ranks[static_cast<std::size_t>(deg - lo)] = r;
        d->diffs.resize(static_cast<std::size_t>(hi - lo + 2));
        auto rank_at = [&](int n) -> std::size_t {
            if (n < lo || n > hi) return 0;
            return d->ranks[static_cast<std::size_t>(n - lo)];
        };
        for (int n = lo; n <= hi + 1; ++n) {
            std::size_t r = rank_at(n - 1), c = rank_at(n);
            auto it = diffs.find(n);
            if (it != diffs.end() && !it->second.is_zero()) {
                if (it->second.rows() != r || it->second.cols() != c) {
                    std::ostringstream os;
                    os << "ChainComplex: diff(" << n << ") has shape "
                       << it->second.rows() << "x" << it->second.cols()
                       << ", expected " << r << "x" << c;
                    throw std::invalid_argument(os.str());
                }
                d->diffs[static_cast<std::size_t>(n - lo)] = it->second;
            } else {
                d->diffs[static_cast<std::size_t>(n - lo)] = IntMatrix(r, c);
            }
        }
    }
    // Differentials given outside the support must be zero maps.
    for (const auto& [deg, m] : diffs) {
        if ((!any || deg < d->lo || deg > d->hi + 1) && !m.is_zero())
            throw std::invalid_argument(
                "ChainComplex: nonzero differential outside support");
    }
    p_ = std::move(d);
}

std::size_t ChainComplex::rank(int n) const {
    if (n < p_->lo || n > p_->hi) return 0;
    return p_->ranks[static_cast<std::size_t>(n - p_->lo)];
}

const IntMatrix& ChainComplex::diff(int n) const {
    if (p_->hi < p_->lo || n < p_->lo || n > p_->hi + 1) return kEmptyMatrix;
    return p_->diffs[static_cast<std::size_t>(n - p_->lo)];
}

Window ChainComplex::support() const { return Window{p_->lo, p_->hi}; }

std::size_t ChainComplex::total_rank() const {
    std::size_t t = 0;
    for (auto r : p_->ranks) t += r;
    return t;
}

bool ChainComplex::operator==(const ChainComplex& o) const {
    if (p_ == o.p_) return true;
    if (support() != o.support()) return false;
    if (support().empty()) return true;
    return p_->ranks == o.p_->ranks && p_->diffs == o.p_->diffs;
}

void ChainComplexBuilder::set_rank(int n, std::size_t r) {
    if (r > 0) ranks_[n] = r;
}

void ChainComplexBuilder::set_diff(int n, IntMatrix m) {
    if (!m.is_zero()) diffs_[n] = std::move(m);
}

ChainComplex ChainComplexBuilder::build() {
    return ChainComplex(ranks_, diffs_);
}

struct ChainMap::Data {
    ChainComplex src;
    ChainComplex dst;
    std::map<int, IntMatrix> comps;  // only nonzero components
};

ChainMap::ChainMap() : p_(std::make_shared<Data>()) {}

ChainMap::ChainMap(ChainComplex source, ChainComplex target,
                   const std::map<int, IntMatrix>& components) {
    auto d = std::make_shared<Data>();
    d->src = std::move(source);
    d->dst = std::move(target);
    for (const auto& [n, m] : components) {
        if (m.rows() != d->dst.rank(n) || m.cols() != d->src.rank(n)) {
            std::ostringstream os;
            os << "ChainMap: component(" << n << ") has shape " << m.rows()
               << "x" << m.cols() << ", expected " << d->dst.rank(n) << "x"
               << d->src.rank(n);
            throw std::invalid_argument(os.str());
        }
        if (!m.is_zero()) d->comps[n] = m;
    }
    p_ = std::move(d);
}

const ChainComplex& ChainMap::source() const { return p_->src; }
const ChainComplex& ChainMap::target() const { return p_->dst; }

IntMatrix ChainMap::component(int n) const {
    auto it = p_->comps.find(n);
    if (it != p_->comps.end()) return it->second;
    return IntMatrix(p_->dst.rank(n), p_->src.rank(n));
}

bool ChainMap::has_stored_component(int n) const {
    return p_->comps.count(n) > 0;
}

bool ChainMap::operator==(const ChainMap& o) const {
    return p_->src == o.p_->src && p_->dst == o.p_->dst &&
           p_->comps == o.p_->comps;
}

ChainMap identity_map(const ChainComplex& c) {
    std::map<int, IntMatrix> comps;
    Window s = c.support();
    for (int n = s.lo; n <= s.hi; ++n)
        if (c.rank(n) > 0) comps[n] = IntMatrix::identity(c.rank(n));
    return ChainMap(c, c, comps);
}

ChainMap zero_map(const ChainComplex& source, const ChainComplex& target) {
    return ChainMap(source, target, {});
}

ChainMap compose(const ChainMap& g, const ChainMap& f) {
    if (!(f.target() == g.source()))
        throw std::invalid_argument("compose: middle complexes differ");
    std::map<int, IntMatrix> comps;
    Window s = f.source().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (f.source().rank(n) == 0 || g.target().rank(n) == 0) continue;
        IntMatrix m = g.component(n) * f.component(n);
        if (!m.is_zero()) comps[n] = std::move(m);
    }
    return ChainMap(f.source(), g.target(), comps);
}

ChainMap map_sum(const ChainMap& f, const ChainMap& g) {
    if (!(f.source() == g.source()) || !(f.target() == g.target()))
        throw std::invalid_argument("map_sum: endpoint mismatch");
    std::map<int, IntMatrix> comps;
    Window s = f.source().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (f.source().rank(n) == 0 || f.target().rank(n) == 0) continue;
        comps[n] = f.component(n) + g.component(n);
    }
    return ChainMap(f.source(), f.target(), comps);
}

ChainMap map_negate(const ChainMap& f) { return map_scale(f, Integer(-1)); }

ChainMap map_scale(const ChainMap& f, const Integer& k) {
    std::map<int, IntMatrix> comps;
    Window s = f.source().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (f.source().rank(n) == 0 || f.target().rank(n) == 0) continue;
        comps[n] = f.component(n).scaled(k);
    }
    return ChainMap(f.source(), f.target(), comps);
}

ChainMap map_inverse(const ChainMap& f) {
    Window s = Window::hull(f.source().support(), f.target().support());
    std::map<int, IntMatrix> comps;
    for (int n = s.lo; !s.empty() && n <= s.hi; ++n) {
        std::size_t rs = f.source().rank(n);
        std::size_t rt = f.target().rank(n);
        if (rs != rt)
            throw std::invalid_argument("map_inverse: rank mismatch in degree " +
                                        std::to_string(n));
        if (rs == 0) continue;
        IntMatrix inv = unimodular_inverse(f.component(n));
        if (!inv.is_zero()) comps[n] = std::move(inv);
    }
    return ChainMap(f.target(), f.source(), comps);
}

bool GradedAbelianGroup::trivial_on(const Window& w) const {
    for (const auto& [n, p] : parts)
        if (w.contains(n) && !p.trivial()) return false;
    return true;
}

GradedAbelianGroup::Part GradedAbelianGroup::at(int n) const {
    auto it = parts.find(n);
    return it == parts.end() ? Part{} : it->second;
}

void GradedAbelianGroup::set(int n, Part p) {
    if (p.trivial())
        parts.erase(n);
    else
        parts[n] = std::move(p);
}

GradedAbelianGroup GradedAbelianGroup::restricted(const Window& w) const {
    GradedAbelianGroup g;
    for (const auto& [n, p] : parts)
        if (w.contains(n)) g.parts[n] = p;
    return g;
}

std::string GradedAbelianGroup::part_to_string(const Part& p) {
    if (p.trivial()) return "0";
    std::ostringstream os;
    bool first = true;
    if (p.free_rank > 0) {
        os << "Z";
        if (p.free_rank > 1) os << "^" << p.free_rank;
        first = false;
    }
    for (const auto& t : p.torsion) {
        if (!first) os << " + ";
        os << "Z/" << t.str();
        first = false;
    }
    return os.str();
}

std::string GradedAbelianGroup::to_string() const {
    if (parts.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [n, p] : parts) {
        if (!first) os << ", ";
        os << "H_" << n << " = " << part_to_string(p);
        first = false;
    }
    return os.str();
}

ValidationResult validate_complex(const ChainComplex& c) {
    Window s = c.support();
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix dd = c.diff(n) * c.diff(n + 1);
        if (!dd.is_zero()) {
            std::ostringstream os;
            os << "d(" << n << ") o d(" << n + 1 << ") != 0";
            return {false, os.str()};
        }
    }
    return {};
}

ValidationResult validate_map(const ChainMap& f) {
    Window s = Window::hull(f.source().support(), f.target().support());
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix lhs = f.target().diff(n) * f.component(n);
        IntMatrix rhs = f.component(n - 1) * f.source().diff(n);
        if (!(lhs == rhs)) {
            std::ostringstream os;
            os << "component(" << n << ") does not commute with d";
            return {false, os.str()};
        }
    }
    return {};
}

GradedAbelianGroup homology(const ChainComplex& c, const Window& w) {
    GradedAbelianGroup h;
    if (w.empty()) return h;
    Window s = c.support();
    for (int n = std::max(w.lo, s.lo); n <= std::min(w.hi, s.hi); ++n) {
        if (c.rank(n) == 0) continue;
        IntMatrix k = kernel_basis(c.diff(n));
        if (k.cols() == 0) continue;
        // Boundaries expressed in the kernel basis; solvable because the
        // kernel lattice is saturated and d o d = 0.
        auto x = solve(k, c.diff(n + 1));
        if (!x)
            throw std::logic_error(
                "homology: boundary not contained in cycles (d o d != 0?)");
        SmithForm sf = smith_form(*x);
        GradedAbelianGroup::Part p;
        p.free_rank = static_cast<long>(k.cols() - sf.rank);
        p.torsion = sf.torsion();
        h.set(n, std::move(p));
    }
    return h;
}

GradedAbelianGroup homology(const ChainComplex& c) {
    return homology(c, c.support());
}

long euler_characteristic(const ChainComplex& c) {
    long chi = 0;
    Window s = c.support();
    for (int n = s.lo; n <= s.hi; ++n)
        chi += (n % 2 == 0 ? 1 : -1) * static_cast<long>(c.rank(n));
    return chi;
}

ChainComplex shift(const ChainComplex& c, int k) {
    Window s = c.support();
    if (s.empty()) return ChainComplex();
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = s.lo; n <= s.hi; ++n)
        if (c.rank(n) > 0) ranks[n + k] = c.rank(n);
    for (int n = s.lo; n <= s.hi + 1; ++n) {
        const IntMatrix& d = c.diff(n);
        if (d.is_zero()) continue;
        diffs[n + k] = (k % 2 == 0) ? d : -d;
    }
    return ChainComplex(ranks, diffs);
}

ChainMap shift_map(const ChainMap& f, int k) {
    std::map<int, IntMatrix> comps;
    Window s = f.source().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (f.has_stored_component(n)) comps[n + k] = f.component(n);
    }
    return ChainMap(shift(f.source(), k), shift(f.target(), k), comps);
}

ChainComplex sphere(int n) {
    return ChainComplex({{n, 1}}, {});
}

ChainComplex disc(int n) {
    return ChainComplex({{n, 1}, {n + 1, 1}}, {{n + 1, IntMatrix::identity(1)}});
}

ChainMap disc_boundary(int n) {
    return ChainMap(sphere(n), disc(n), {{n, IntMatrix::identity(1)}});
}

ChainComplex unit_complex() { return sphere(0); }

ConeResult mapping_cone(const ChainMap& f) {
    const ChainComplex& a = f.source();
    const ChainComplex& b = f.target();
    Window sa = a.support(), sb = b.support();
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    Window hull = Window::hull(sb, sa.empty() ? sa : Window{sa.lo + 1, sa.hi + 1});
    for (int n = hull.lo; n <= hull.hi; ++n) {
        std::size_t r = b.rank(n) + a.rank(n - 1);
        if (r > 0) ranks[n] = r;
    }
    for (int n = hull.lo; n <= hull.hi + 1; ++n) {
        std::size_t rows = b.rank(n - 1) + a.rank(n - 2);
        std::size_t cols = b.rank(n) + a.rank(n - 1);
        if (rows == 0 || cols == 0) continue;
        IntMatrix m(rows, cols);
        m.set_block(0, 0, b.diff(n));
        m.set_block(0, b.rank(n), f.component(n - 1));
        m.set_block(b.rank(n - 1), b.rank(n), -a.diff(n - 1));
        if (!m.is_zero()) diffs[n] = std::move(m);
    }
    ChainComplex cone(ranks, diffs);
    std::map<int, IntMatrix> incl, proj;
    for (int n = hull.lo; n <= hull.hi; ++n) {
        std::size_t cr = cone.rank(n);
        if (cr == 0) continue;
        if (b.rank(n) > 0) {
            IntMatrix i(cr, b.rank(n));
            i.set_block(0, 0, IntMatrix::identity(b.rank(n)));
            incl[n] = std::move(i);
        }
        if (a.rank(n - 1) > 0) {
            IntMatrix p(a.rank(n - 1), cr);
            p.set_block(0, b.rank(n), IntMatrix::identity(a.rank(n - 1)));
            proj[n] = std::move(p);
        }
    }
    ConeResult r{cone, ChainMap(b, cone, incl), ChainMap(cone, shift(a, 1), proj)};
    return r;
}

ChainComplex complex_direct_sum(const std::vector<ChainComplex>& parts) {
    Window hull;
    for (const auto& p : parts) hull = Window::hull(hull, p.support());
    if (hull.empty()) return ChainComplex();
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = hull.lo; n <= hull.hi; ++n) {
        std::size_t r = 0;
        for (const auto& p : parts) r += p.rank(n);
        if (r > 0) ranks[n] = r;
    }
    for (int n = hull.lo; n <= hull.hi + 1; ++n) {
        std::size_t rows = 0, cols = 0;
        for (const auto& p : parts) {
            rows += p.rank(n - 1);
            cols += p.rank(n);
        }
        if (rows == 0 || cols == 0) continue;
        IntMatrix m(rows, cols);
        std::size_t ro = 0, co = 0;
        for (const auto& p : parts) {
            m.set_block(ro, co, p.diff(n));
            ro += p.rank(n - 1);
            co += p.rank(n);
        }
        if (!m.is_zero()) diffs[n] = std::move(m);
    }
    return ChainComplex(ranks, diffs);
}

ChainMap sum_inclusion(const std::vector<ChainComplex>& parts, std::size_t i) {
    ChainComplex sum = complex_direct_sum(parts);
    std::map<int, IntMatrix> comps;
    Window s = parts[i].support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (parts[i].rank(n) == 0) continue;
        IntMatrix m(sum.rank(n), parts[i].rank(n));
        std::size_t off = 0;
        for (std::size_t j = 0; j < i; ++j) off += parts[j].rank(n);
        m.set_block(off, 0, IntMatrix::identity(parts[i].rank(n)));
        comps[n] = std::move(m);
    }
    return ChainMap(parts[i], sum, comps);
}

ChainMap sum_projection(const std::vector<ChainComplex>& parts, std::size_t i) {
    ChainComplex sum = complex_direct_sum(parts);
    std::map<int, IntMatrix> comps;
    Window s = parts[i].support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (parts[i].rank(n) == 0) continue;
        IntMatrix m(parts[i].rank(n), sum.rank(n));
        std::size_t off = 0;
        for (std::size_t j = 0; j < i; ++j) off += parts[j].rank(n);
        m.set_block(0, off, IntMatrix::identity(parts[i].rank(n)));
        comps[n] = std::move(m);
    }
    return ChainMap(sum, parts[i], comps);
}

ChainMap map_direct_sum(const std::vector<ChainMap>& parts) {
    std::vector<ChainComplex> srcs, dsts;
    for (const auto& f : parts) {
        srcs.push_back(f.source());
        dsts.push_back(f.target());
    }
    ChainComplex src = complex_direct_sum(srcs);
    ChainComplex dst = complex_direct_sum(dsts);
    std::map<int, IntMatrix> comps;
    Window s = src.support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (src.rank(n) == 0 || dst.rank(n) == 0) continue;
        IntMatrix m(dst.rank(n), src.rank(n));
        std::size_t ro = 0, co = 0;
        bool nonzero = false;
        for (const auto& f : parts) {
            IntMatrix c = f.component(n);
            if (!c.is_zero()) {
                m.set_block(ro, co, c);
                nonzero = true;
            }
            ro += f.target().rank(n);
            co += f.source().rank(n);
        }
        if (nonzero) comps[n] = std::move(m);
    }
    return ChainMap(src, dst, comps);
}

ChainComplex truncate(const ChainComplex& c, const Window& w) {
    Window s = c.support();
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = std::max(s.lo, w.lo); n <= std::min(s.hi, w.hi); ++n)
        if (c.rank(n) > 0) ranks[n] = c.rank(n);
    for (int n = std::max(s.lo, w.lo) + 1; n <= std::min(s.hi, w.hi); ++n) {
        const IntMatrix& d = c.diff(n);
        if (!d.is_zero()) diffs[n] = d;
    }
    return ChainComplex(ranks, diffs);
}

ChainMap truncate(const ChainMap& f, const Window& w) {
    ChainComplex src = truncate(f.source(), w);
    ChainComplex dst = truncate(f.target(), w);
    std::map<int, IntMatrix> comps;
    Window s = src.support();
    for (int n = s.lo; n <= s.hi; ++n)
        if (src.rank(n) > 0 && dst.rank(n) > 0 && f.has_stored_component(n))
            comps[n] = f.component(n);
    return ChainMap(src, dst, comps);
}

Window quasi_iso_window(const ChainMap& f) {
    Window sa = f.source().support(), sb = f.target().support();
    if (sa.empty() && sb.empty()) return Window{};
    Window cone_s = Window::hull(
        sb, sa.empty() ? sa : Window{sa.lo + 1, sa.hi + 1});
    return Window::hull(Window::hull(sa, sb), cone_s);
}

QuasiIsoReport quasi_iso_on(const ChainMap& f, const Window& w) {
    ConeResult c = mapping_cone(f);
    QuasiIsoReport r;
    r.window = w;
    r.cone_homology = homology(c.cone, w);
    r.ok = r.cone_homology.trivial();
    return r;
}

QuasiIsoReport is_quasi_iso(const ChainMap& f, const Window& w) {
    Window need = quasi_iso_window(f);
    if (!w.contains(need)) {
        std::ostringstream os;
        os << "is_quasi_iso: window " << w.to_string()
           << " does not cover the degrees where homology can live; need "
           << need.to_string();
        throw std::invalid_argument(os.str());
    }
    QuasiIsoReport r = quasi_iso_on(f, need);
    r.window = w;
    return r;
}

CofibrationReport is_cofibration(const ChainMap& f) {
    Window s = f.source().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (f.source().rank(n) == 0) continue;
        SmithForm sf = smith_form(f.component(n));
        if (sf.rank != f.source().rank(n)) {
            return {false, n, "component not injective"};
        }
        if (!sf.torsion().empty()) {
            return {false, n,
                    "cokernel has torsion (invariant factor " +
                        sf.torsion().front().str() + ")"};
        }
    }
    return {true, 0, ""};
}

}  // namespace dgc
