#pragma once

#include "dgcolim/chain.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <random>
#include <vector>

namespace dgt {

using namespace dgc;
using Rng = std::mt19937_64;

inline long rand_between(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Unimodular matrix built from a few elementary row operations.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int ops = 6) {
    IntMatrix u = IntMatrix::identity(n);
    if (n < 2) return u;
    for (int t = 0; t < ops; ++t) {
        std::size_t i = static_cast<std::size_t>(rand_between(rng, 0, long(n) - 1));
        std::size_t j = static_cast<std::size_t>(rand_between(rng, 0, long(n) - 1));
        if (i == j) continue;
        Integer k = rand_between(rng, -2, 2);
        for (std::size_t c = 0; c < n; ++c) u.at(i, c) += k * u.at(j, c);
    }
    return u;
}

// Random bounded complex with controlled homology: a direct sum of spheres
// and torsion cells [Z -m-> Z], conjugated degreewise by unimodular basis
// changes. Homology stays that of the elementary pieces.
inline ChainComplex random_complex(Rng& rng, int lo, int hi, int pieces = 4) {
    std::vector<ChainComplex> parts;
    for (int p = 0; p < pieces; ++p) {
        int n = static_cast<int>(rand_between(rng, lo, hi));
        if (rand_between(rng, 0, 2) == 0) {
            parts.push_back(sphere(n));
        } else {
            long m = rand_between(rng, 1, 6);
            std::map<int, std::size_t> ranks{{n, 1}, {n + 1, 1}};
            std::map<int, IntMatrix> diffs{{n + 1, IntMatrix::from_rows({{m}})}};
            parts.emplace_back(ranks, diffs);
        }
    }
    ChainComplex d = complex_direct_sum(parts);
    Window s = d.support();
    std::map<int, IntMatrix> base_change;
    for (int n = s.lo; n <= s.hi; ++n)
        base_change[n] = random_unimodular(rng, d.rank(n));
    std::map<int, std::size_t> ranks;
    std::map<int, IntMatrix> diffs;
    for (int n = s.lo; n <= s.hi; ++n) {
        ranks[n] = d.rank(n);
        if (n > s.lo && !d.diff(n).is_zero())
            diffs[n] = base_change[n - 1] * d.diff(n) *
                       unimodular_inverse(base_change[n]);
    }
    return ChainComplex(ranks, diffs);
}

// Null-homotopic chain map src -> dst: f = d h + h d for random h of
// degree +1. Always a valid chain map.
inline ChainMap random_nullhomotopic_map(Rng& rng, const ChainComplex& src,
                                         const ChainComplex& dst) {
    Window s = Window::hull(src.support(), dst.support());
    std::map<int, IntMatrix> h;
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix m(dst.rank(n + 1), src.rank(n));
        for (std::size_t i = 0; i < m.rows(); ++i)
            for (std::size_t j = 0; j < m.cols(); ++j)
                m.at(i, j) = rand_between(rng, -2, 2);
        h[n] = std::move(m);
    }
    auto hcomp = [&](int n) {
        auto it = h.find(n);
        if (it == h.end()) return IntMatrix(dst.rank(n + 1), src.rank(n));
        return it->second;
    };
    std::map<int, IntMatrix> comps;
    for (int n = s.lo; n <= s.hi; ++n) {
        IntMatrix c = dst.diff(n + 1) * hcomp(n) + hcomp(n - 1) * src.diff(n);
        if (!c.is_zero()) comps[n] = std::move(c);
    }
    return ChainMap(src, dst, comps);
}

// ---- test-side oracle arithmetic on finitely generated abelian groups ----

inline Integer gcd_int(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline GradedAbelianGroup::Part tensor_groups(const GradedAbelianGroup::Part& a,
                                              const GradedAbelianGroup::Part& b) {
    GradedAbelianGroup::Part r;
    r.free_rank = a.free_rank * b.free_rank;
    std::vector<Integer> tors;
    for (const auto& m : a.torsion)
        for (long i = 0; i < b.free_rank; ++i) tors.push_back(m);
    for (const auto& m : b.torsion)
        for (long i = 0; i < a.free_rank; ++i) tors.push_back(m);
    for (const auto& m : a.torsion)
        for (const auto& n : b.torsion) tors.push_back(gcd_int(m, n));
    r.torsion = canonical_torsion_chain(tors);
    return r;
}

inline GradedAbelianGroup::Part tor_groups(const GradedAbelianGroup::Part& a,
                                           const GradedAbelianGroup::Part& b) {
    GradedAbelianGroup::Part r;
    std::vector<Integer> tors;
    for (const auto& m : a.torsion)
        for (const auto& n : b.torsion) tors.push_back(gcd_int(m, n));
    r.torsion = canonical_torsion_chain(tors);
    return r;
}

// Expected homology of a tensor product of free bounded complexes from the
// homology of the factors: degree n collects H_p (x) H_q over p+q = n plus
// Tor(H_p, H_q) over p+q = n-1.
inline GradedAbelianGroup kunneth(const GradedAbelianGroup& a,
                                  const GradedAbelianGroup& b) {
    std::map<int, long> free_acc;
    std::map<int, std::vector<Integer>> tors_acc;
    for (const auto& [p, ap] : a.parts) {
        for (const auto& [q, bq] : b.parts) {
            auto t = tensor_groups(ap, bq);
            free_acc[p + q] += t.free_rank;
            for (auto& x : t.torsion) tors_acc[p + q].push_back(x);
            auto tr = tor_groups(ap, bq);
            for (auto& x : tr.torsion) tors_acc[p + q + 1].push_back(x);
        }
    }
    GradedAbelianGroup out;
    for (const auto& [n, fr] : free_acc)
        if (fr != 0) out.parts[n].free_rank = fr;
    for (auto& [n, tors] : tors_acc) {
        auto chain = canonical_torsion_chain(tors);
        if (!chain.empty()) out.parts[n].torsion = std::move(chain);
    }
    for (auto it = out.parts.begin(); it != out.parts.end();)
        it = it->second.trivial() ? out.parts.erase(it) : std::next(it);
    return out;
}

}  // namespace dgt
