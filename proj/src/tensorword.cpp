#include "dgcolim/tensorword.hpp"

#include <algorithm>
#include <stdexcept>

namespace dgc {

const std::vector<TensorWord::Summand> TensorWord::kNoSummands;

namespace {

// All degree tuples with the given per-factor supports summing to n, in
// lexicographic order, skipping tuples with a zero-rank entry.
void enumerate_tuples(const std::vector<ChainComplex>& factors, int n,
                      std::size_t pos, std::vector<int>& cur,
                      const std::vector<int>& lo_suffix,
                      const std::vector<int>& hi_suffix,
                      std::vector<std::vector<int>>& out) {
    if (pos == factors.size()) {
        if (n == 0) out.push_back(cur);
        return;
    }
    Window s = factors[pos].support();
    if (s.empty()) return;
    for (int d = s.lo; d <= s.hi; ++d) {
        if (factors[pos].rank(d) == 0) continue;
        int rest = n - d;
        if (rest < lo_suffix[pos + 1] || rest > hi_suffix[pos + 1]) continue;
        cur.push_back(d);
        enumerate_tuples(factors, rest, pos + 1, cur, lo_suffix, hi_suffix, out);
        cur.pop_back();
    }
}

IntMatrix identity_kron(std::size_t pre, const IntMatrix& m, std::size_t post) {
    IntMatrix r = m;
    if (pre > 1) r = kronecker(IntMatrix::identity(pre), r);
    if (post > 1) r = kronecker(r, IntMatrix::identity(post));
    return r;
}

}  // namespace

TensorWord::TensorWord(std::vector<ChainComplex> factors,
                       std::optional<Window> window)
    : factors_(std::move(factors)), window_(window) {
    const std::size_t k = factors_.size();
    bool any_empty = false;
    for (const auto& f : factors_)
        if (f.support().empty()) any_empty = true;

    // Suffix bounds for pruning the tuple enumeration.
    std::vector<int> lo_suffix(k + 1, 0), hi_suffix(k + 1, 0);
    for (std::size_t i = k; i-- > 0;) {
        Window s = factors_[i].support();
        lo_suffix[i] = lo_suffix[i + 1] + (s.empty() ? 0 : s.lo);
        hi_suffix[i] = hi_suffix[i + 1] + (s.empty() ? 0 : s.hi);
    }

    int lo = lo_suffix[0], hi = hi_suffix[0];
    if (window_) {
        lo = std::max(lo, window_->lo);
        hi = std::min(hi, window_->hi);
    }

    std::map<int, std::size_t> ranks;
    if (!any_empty) {
        if (k == 0) {
            // Empty tensor product is the unit complex.
            if (!window_ || window_->contains(0)) {
                summands_[0].push_back(Summand{{}, 0, 1});
                ranks[0] = 1;
            }
        } else {
            for (int n = lo; n <= hi; ++n) {
                std::vector<std::vector<int>> tuples;
                std::vector<int> cur;
                enumerate_tuples(factors_, n, 0, cur, lo_suffix, hi_suffix,
                                 tuples);
                std::size_t off = 0;
                std::vector<Summand> list;
                for (auto& t : tuples) {
                    std::size_t size = 1;
                    for (std::size_t i = 0; i < k; ++i)
                        size *= factors_[i].rank(t[i]);
                    if (size == 0) continue;
                    list.push_back(Summand{std::move(t), off, size});
                    off += size;
                }
                if (off > 0) {
                    summands_[n] = std::move(list);
                    ranks[n] = off;
                }
            }
        }
    }

    // Differential: factor i contributes (-1)^{d_1+...+d_{i-1}} I x d_i x I.
    std::map<int, IntMatrix> diffs;
    for (const auto& [n, list] : summands_) {
        auto tgt_it = summands_.find(n - 1);
        if (tgt_it == summands_.end()) continue;
        IntMatrix m(ranks[n - 1], ranks[n]);
        bool nonzero = false;
        for (const auto& s : list) {
            std::size_t pre = 1;
            int degsum = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const IntMatrix& di = factors_[i].diff(s.degrees[i]);
                if (!di.is_zero()) {
                    std::vector<int> tdeg = s.degrees;
                    tdeg[i] -= 1;
                    std::size_t t = find_summand(n - 1, tdeg);
                    if (t != npos) {
                        std::size_t post = 1;
                        for (std::size_t j = i + 1; j < k; ++j)
                            post *= factors_[j].rank(s.degrees[j]);
                        IntMatrix block = identity_kron(pre, di, post);
                        if (degsum % 2 != 0) block = -block;
                        m.set_block(tgt_it->second[t].offset, s.offset, block);
                        nonzero = true;
                    }
                }
                pre *= factors_[i].rank(s.degrees[i]);
                degsum += s.degrees[i];
            }
        }
        if (nonzero) diffs[n] = std::move(m);
    }
    total_ = ChainComplex(ranks, diffs);
}

const std::vector<TensorWord::Summand>& TensorWord::summands(int n) const {
    auto it = summands_.find(n);
    return it == summands_.end() ? kNoSummands : it->second;
}

std::size_t TensorWord::find_summand(int n,
                                     const std::vector<int>& degrees) const {
    const auto& list = summands(n);
    auto cmp = [](const Summand& s, const std::vector<int>& d) {
        return s.degrees < d;
    };
    auto it = std::lower_bound(list.begin(), list.end(), degrees, cmp);
    if (it == list.end() || it->degrees != degrees) return npos;
    return static_cast<std::size_t>(it - list.begin());
}

std::size_t TensorWord::flat_index(int n, std::size_t t,
                                   const std::vector<std::size_t>& idx) const {
    const Summand& s = summands(n)[t];
    std::size_t flat = 0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        flat = flat * factors_[i].rank(s.degrees[i]) + idx[i];
    return s.offset + flat;
}

void TensorWord::for_each_basis(
    const Summand& s,
    const std::function<void(const std::vector<std::size_t>&, std::size_t)>& fn)
    const {
    const std::size_t k = factors_.size();
    std::vector<std::size_t> idx(k, 0);
    for (std::size_t flat = 0; flat < s.size; ++flat) {
        fn(idx, s.offset + flat);
        for (std::size_t i = k; i-- > 0;) {
            if (++idx[i] < factors_[i].rank(s.degrees[i])) break;
            idx[i] = 0;
        }
    }
}

ChainMap tensor_word_map(const TensorWord& src, const TensorWord& dst,
                         const std::vector<ChainMap>& per_factor) {
    if (per_factor.size() != src.factors().size() ||
        per_factor.size() != dst.factors().size())
        throw std::invalid_argument("tensor_word_map: factor count mismatch");
    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        const auto& list = src.summands(n);
        if (list.empty() || dst.total().rank(n) == 0) continue;
        IntMatrix m(dst.total().rank(n), src.total().rank(n));
        bool nonzero = false;
        for (const auto& sm : list) {
            std::size_t t = dst.find_summand(n, sm.degrees);
            if (t == TensorWord::npos) continue;
            IntMatrix block = IntMatrix::identity(1);
            bool zero = false;
            for (std::size_t i = 0; i < per_factor.size(); ++i) {
                IntMatrix c = per_factor[i].component(sm.degrees[i]);
                if (c.is_zero()) {
                    zero = true;
                    break;
                }
                block = kronecker(block, c);
            }
            if (zero) continue;
            m.set_block(dst.summands(n)[t].offset, sm.offset, block);
            nonzero = true;
        }
        if (nonzero) comps[n] = std::move(m);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

ChainMap contract_adjacent(const TensorWord& src, std::size_t i,
                           const ChainMap& m, const TensorWord& dst) {
    const auto& sf = src.factors();
    if (i + 1 >= sf.size())
        throw std::invalid_argument("contract_adjacent: position out of range");
    TensorWord pair({sf[i], sf[i + 1]});
    if (!(pair.total() == m.source()))
        throw std::invalid_argument(
            "contract_adjacent: map source does not match the factor pair");
    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        const auto& list = src.summands(n);
        if (list.empty() || dst.total().rank(n) == 0) continue;
        IntMatrix out(dst.total().rank(n), src.total().rank(n));
        bool nonzero = false;
        for (const auto& sm : list) {
            int dsum = sm.degrees[i] + sm.degrees[i + 1];
            IntMatrix mc = m.component(dsum);
            if (mc.is_zero()) continue;
            std::size_t pt =
                pair.find_summand(dsum, {sm.degrees[i], sm.degrees[i + 1]});
            if (pt == TensorWord::npos) continue;
            const auto& ps = pair.summands(dsum)[pt];
            IntMatrix block = mc.slice_cols(ps.offset, ps.size);
            if (block.is_zero()) continue;
            std::vector<int> tdeg;
            for (std::size_t j = 0; j < sf.size(); ++j) {
                if (j == i)
                    tdeg.push_back(dsum);
                else if (j != i + 1)
                    tdeg.push_back(sm.degrees[j]);
            }
            std::size_t t = dst.find_summand(n, tdeg);
            if (t == TensorWord::npos) continue;
            std::size_t pre = 1, post = 1;
            for (std::size_t j = 0; j < i; ++j) pre *= sf[j].rank(sm.degrees[j]);
            for (std::size_t j = i + 2; j < sf.size(); ++j)
                post *= sf[j].rank(sm.degrees[j]);
            out.set_block(dst.summands(n)[t].offset, sm.offset,
                          identity_kron(pre, block, post));
            nonzero = true;
        }
        if (nonzero) comps[n] = std::move(out);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

ChainMap insert_factor(const TensorWord& src, std::size_t i, const ChainMap& u,
                       const TensorWord& dst) {
    const auto& sf = src.factors();
    if (i > sf.size())
        throw std::invalid_argument("insert_factor: position out of range");
    if (!(u.source() == unit_complex()))
        throw std::invalid_argument("insert_factor: map source must be the unit");
    IntMatrix ucol = u.component(0);
    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        const auto& list = src.summands(n);
        if (list.empty() || dst.total().rank(n) == 0 || ucol.is_zero()) continue;
        IntMatrix out(dst.total().rank(n), src.total().rank(n));
        bool nonzero = false;
        for (const auto& sm : list) {
            std::vector<int> tdeg = sm.degrees;
            tdeg.insert(tdeg.begin() + static_cast<std::ptrdiff_t>(i), 0);
            std::size_t t = dst.find_summand(n, tdeg);
            if (t == TensorWord::npos) continue;
            std::size_t pre = 1, post = 1;
            for (std::size_t j = 0; j < i; ++j) pre *= sf[j].rank(sm.degrees[j]);
            for (std::size_t j = i; j < sf.size(); ++j)
                post *= sf[j].rank(sm.degrees[j]);
            out.set_block(dst.summands(n)[t].offset, sm.offset,
                          identity_kron(pre, ucol, post));
            nonzero = true;
        }
        if (nonzero) comps[n] = std::move(out);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

ChainMap regroup(const TensorWord& src, const std::vector<std::size_t>& groups,
                 const TensorWord& dst) {
    const auto& sf = src.factors();
    std::size_t total_factors = 0;
    for (auto g : groups) total_factors += g;
    if (total_factors != sf.size() || groups.size() != dst.factors().size())
        throw std::invalid_argument("regroup: group sizes do not match");

    // Per-run tensor words give the index layout inside each grouped factor.
    std::vector<TensorWord> runs;
    std::size_t at = 0;
    for (std::size_t j = 0; j < groups.size(); ++j) {
        std::vector<ChainComplex> run(sf.begin() + static_cast<std::ptrdiff_t>(at),
                                      sf.begin() +
                                          static_cast<std::ptrdiff_t>(at + groups[j]));
        runs.emplace_back(std::move(run));
        if (!(runs.back().total() == dst.factors()[j]))
            throw std::invalid_argument(
                "regroup: grouped factor does not match the run tensor");
        at += groups[j];
    }

    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        const auto& list = src.summands(n);
        if (list.empty() || dst.total().rank(n) == 0) continue;
        IntMatrix out(dst.total().rank(n), src.total().rank(n));
        bool nonzero = false;
        for (const auto& sm : list) {
            // Group degree sums and within-run summand positions.
            std::vector<int> gdeg(groups.size(), 0);
            std::vector<std::size_t> run_summand(groups.size());
            bool missing = false;
            at = 0;
            for (std::size_t j = 0; j < groups.size(); ++j) {
                std::vector<int> rd(sm.degrees.begin() +
                                        static_cast<std::ptrdiff_t>(at),
                                    sm.degrees.begin() +
                                        static_cast<std::ptrdiff_t>(at + groups[j]));
                for (int d : rd) gdeg[j] += d;
                run_summand[j] = runs[j].find_summand(gdeg[j], rd);
                if (run_summand[j] == TensorWord::npos) missing = true;
                at += groups[j];
            }
            if (missing) continue;
            std::size_t t = dst.find_summand(n, gdeg);
            if (t == TensorWord::npos) continue;
            src.for_each_basis(sm, [&](const std::vector<std::size_t>& idx,
                                       std::size_t col) {
                std::vector<std::size_t> gidx(groups.size());
                std::size_t k = 0;
                for (std::size_t j = 0; j < groups.size(); ++j) {
                    std::vector<std::size_t> sub(idx.begin() +
                                                     static_cast<std::ptrdiff_t>(k),
                                                 idx.begin() +
                                                     static_cast<std::ptrdiff_t>(
                                                         k + groups[j]));
                    gidx[j] = runs[j].flat_index(gdeg[j], run_summand[j], sub);
                    k += groups[j];
                }
                out.at(dst.flat_index(n, t, gidx), col) = 1;
            });
            nonzero = true;
        }
        if (nonzero) comps[n] = std::move(out);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

WordSum::WordSum(std::vector<TensorWord> words) : words_(std::move(words)) {
    std::vector<ChainComplex> parts;
    for (const auto& w : words_) parts.push_back(w.total());
    total_ = complex_direct_sum(parts);
    Window s = total_.support();
    for (int n = s.lo; n <= s.hi; ++n) {
        std::vector<std::size_t> offs(words_.size() + 1, 0);
        for (std::size_t i = 0; i < words_.size(); ++i)
            offs[i + 1] = offs[i] + words_[i].total().rank(n);
        offsets_[n] = std::move(offs);
    }
}

std::size_t WordSum::offset(int n, std::size_t w) const {
    auto it = offsets_.find(n);
    if (it == offsets_.end()) return 0;
    return it->second[w];
}

ChainMap WordSum::inclusion(std::size_t w) const {
    std::map<int, IntMatrix> comps;
    Window s = words_[w].total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        std::size_t r = words_[w].total().rank(n);
        if (r == 0) continue;
        IntMatrix m(total_.rank(n), r);
        m.set_block(offset(n, w), 0, IntMatrix::identity(r));
        comps[n] = std::move(m);
    }
    return ChainMap(words_[w].total(), total_, comps);
}

ChainMap WordSum::projection(std::size_t w) const {
    std::map<int, IntMatrix> comps;
    Window s = words_[w].total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        std::size_t r = words_[w].total().rank(n);
        if (r == 0) continue;
        IntMatrix m(r, total_.rank(n));
        m.set_block(0, offset(n, w), IntMatrix::identity(r));
        comps[n] = std::move(m);
    }
    return ChainMap(total_, words_[w].total(), comps);
}

ChainMap word_sum_map(const WordSum& src, const WordSum& dst,
                      const std::vector<WordBlock>& blocks) {
    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        if (src.total().rank(n) == 0 || dst.total().rank(n) == 0) continue;
        IntMatrix m(dst.total().rank(n), src.total().rank(n));
        bool nonzero = false;
        for (const auto& b : blocks) {
            if (b.coeff == 0) continue;
            IntMatrix c = b.map.component(n);
            if (c.is_zero()) continue;
            std::size_t ro = dst.offset(n, b.dst_word);
            std::size_t co = src.offset(n, b.src_word);
            for (std::size_t i = 0; i < c.rows(); ++i)
                for (std::size_t j = 0; j < c.cols(); ++j)
                    if (c.at(i, j) != 0) {
                        m.at(ro + i, co + j) += b.coeff * c.at(i, j);
                        nonzero = true;
                    }
        }
        if (nonzero) comps[n] = std::move(m);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

// ---- definitions declared in chain.hpp ----

ChainComplex tensor(const ChainComplex& a, const ChainComplex& b) {
    return TensorWord({a, b}).total();
}

ChainMap tensor_map(const ChainMap& f, const ChainMap& g) {
    TensorWord src({f.source(), g.source()});
    TensorWord dst({f.target(), g.target()});
    return tensor_word_map(src, dst, {f, g});
}

ChainMap symmetry_map(const ChainComplex& a, const ChainComplex& b) {
    TensorWord src({a, b});
    TensorWord dst({b, a});
    std::map<int, IntMatrix> comps;
    Window s = src.total().support();
    for (int n = s.lo; n <= s.hi; ++n) {
        const auto& list = src.summands(n);
        if (list.empty()) continue;
        IntMatrix m(dst.total().rank(n), src.total().rank(n));
        for (const auto& sm : list) {
            int p = sm.degrees[0], q = sm.degrees[1];
            std::size_t t = dst.find_summand(n, {q, p});
            if (t == TensorWord::npos) continue;
            int sign = (p % 2 != 0 && q % 2 != 0) ? -1 : 1;
            src.for_each_basis(sm, [&](const std::vector<std::size_t>& idx,
                                       std::size_t col) {
                m.at(dst.flat_index(n, t, {idx[1], idx[0]}), col) = sign;
            });
        }
        if (!m.is_zero()) comps[n] = std::move(m);
    }
    return ChainMap(src.total(), dst.total(), comps);
}

}  // namespace dgc
