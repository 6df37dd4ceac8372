#pragma once

#include "dgcolim/chain.hpp"

#include <functional>
#include <optional>
#include <vector>

namespace dgc {

// N-ary tensor product of chain complexes with a reproducible summand
// layout. Degree-n part is the direct sum over degree tuples (d_1,...,d_k)
// with sum n, ordered lexicographically; basis order inside a summand is
// mixed-radix with the first factor slowest. The Koszul sign on the
// differential of factor i is (-1)^{d_1+...+d_{i-1}}.
//
// An optional window truncates the assembled total degreewise (brutal
// truncation); callers account for the lost edge degrees themselves.
class TensorWord {
public:
    explicit TensorWord(std::vector<ChainComplex> factors,
                        std::optional<Window> window = std::nullopt);

    const ChainComplex& total() const { return total_; }
    const std::vector<ChainComplex>& factors() const { return factors_; }

    struct Summand {
        std::vector<int> degrees;
        std::size_t offset = 0;
        std::size_t size = 0;
    };

    const std::vector<Summand>& summands(int n) const;
    // Index of the summand with the given degree tuple, or npos.
    std::size_t find_summand(int n, const std::vector<int>& degrees) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t factor_rank(std::size_t i, int d) const {
        return factors_[i].rank(d);
    }

    // Flat index within the total degree-n group of the basis element with
    // the given per-factor indices, for summand t.
    std::size_t flat_index(int n, std::size_t t,
                           const std::vector<std::size_t>& idx) const;

    // Enumerates basis multi-indices of one summand in flat order.
    void for_each_basis(
        const Summand& s,
        const std::function<void(const std::vector<std::size_t>&, std::size_t)>&
            fn) const;

private:
    std::vector<ChainComplex> factors_;
    std::optional<Window> window_;
    ChainComplex total_;
    std::map<int, std::vector<Summand>> summands_;
    static const std::vector<Summand> kNoSummands;
};

// Convenience: the tensor of both complexes as a plain complex (the binary
// TensorWord layout, no window).
// Declared in chain.hpp: tensor, tensor_map, symmetry_map.

// Map between tensor words over the same number of factors, applying one
// degree-0 chain map per factor (source factor i -> target factor i).
// No signs arise because all maps have degree 0.
ChainMap tensor_word_map(const TensorWord& src, const TensorWord& dst,
                         const std::vector<ChainMap>& per_factor);

// Applies m : factor_i (x) factor_{i+1} -> G to adjacent factors, keeping
// the rest. dst must be the word with factors (..., G, ...) in place.
ChainMap contract_adjacent(const TensorWord& src, std::size_t i,
                           const ChainMap& m, const TensorWord& dst);

// Inserts a new factor at position i via u : unit_complex -> G.
ChainMap insert_factor(const TensorWord& src, std::size_t i, const ChainMap& u,
                       const TensorWord& dst);

// Canonical regrouping isomorphism. groups partitions the source factors
// into consecutive runs; dst must be the word whose j-th factor equals the
// TensorWord total of run j (e.g. regroup [A,B,C] with groups {2,1} to
// [tensor(A,B), C]). Pure index shuffling; every coefficient is +1.
ChainMap regroup(const TensorWord& src, const std::vector<std::size_t>& groups,
                 const TensorWord& dst);

// Direct sum of tensor words with per-degree offset bookkeeping. Summand
// order in every degree follows the word order given here.
class WordSum {
public:
    WordSum() = default;
    explicit WordSum(std::vector<TensorWord> words);

    const ChainComplex& total() const { return total_; }
    std::size_t count() const { return words_.size(); }
    const TensorWord& word(std::size_t w) const { return words_[w]; }
    std::size_t offset(int n, std::size_t w) const;

    ChainMap inclusion(std::size_t w) const;
    ChainMap projection(std::size_t w) const;

private:
    std::vector<TensorWord> words_;
    ChainComplex total_;
    std::map<int, std::vector<std::size_t>> offsets_;
};

// One block of a map between word sums: the given map on word totals,
// scaled and placed at (dst word, src word). Blocks accumulate.
struct WordBlock {
    std::size_t src_word = 0;
    std::size_t dst_word = 0;
    ChainMap map;
    Integer coeff = 1;
};

ChainMap word_sum_map(const WordSum& src, const WordSum& dst,
                      const std::vector<WordBlock>& blocks);

}  // namespace dgc
