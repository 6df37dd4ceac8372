#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace dgc {

// All arithmetic is exact; Smith normal form intermediates can blow up far
// past 64 bits even on small inputs.
using Integer = boost::multiprecision::cpp_int;

std::string to_string(const Integer& x);

// Dense row-major integer matrix. Rows and columns may be zero; a 0xN or Nx0
// matrix is a legitimate map to or from the zero group.
class IntMatrix {
public:
    IntMatrix() : rows_(0), cols_(0) {}
    IntMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    IntMatrix(std::size_t rows, std::size_t cols, std::vector<Integer> data);

    static IntMatrix identity(std::size_t n);
    static IntMatrix zero(std::size_t rows, std::size_t cols);
    // Rows listed top to bottom, entries left to right.
    static IntMatrix from_rows(std::vector<std::vector<long long>> rows);
    static IntMatrix column(std::vector<Integer> entries);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& at(std::size_t i, std::size_t j) const {
        return data_[i * cols_ + j];
    }

    bool is_zero() const;
    bool is_identity() const;
    bool operator==(const IntMatrix& o) const;
    bool operator!=(const IntMatrix& o) const { return !(*this == o); }

    IntMatrix operator*(const IntMatrix& o) const;
    IntMatrix operator+(const IntMatrix& o) const;
    IntMatrix operator-(const IntMatrix& o) const;
    IntMatrix operator-() const;
    IntMatrix scaled(const Integer& k) const;
    IntMatrix transposed() const;

    // Columns [first, first+count) as a separate matrix.
    IntMatrix slice_cols(std::size_t first, std::size_t count) const;
    IntMatrix slice_rows(std::size_t first, std::size_t count) const;
    IntMatrix select_rows(const std::vector<std::size_t>& idx) const;
    IntMatrix select_cols(const std::vector<std::size_t>& idx) const;

    // Side-by-side / stacked concatenation.
    static IntMatrix hcat(const IntMatrix& a, const IntMatrix& b);
    static IntMatrix vcat(const IntMatrix& a, const IntMatrix& b);

    // Writes `block` with its top-left corner at (i, j).
    void set_block(std::size_t i, std::size_t j, const IntMatrix& block);

    std::string to_string() const;

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Integer> data_;
};

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b);
IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b);

// U * A * V = D with U, V unimodular and D diagonal, d_1 | d_2 | ... | d_r,
// all d_i > 0, remaining diagonal entries zero.
struct SmithForm {
    IntMatrix d;
    IntMatrix u;
    IntMatrix v;
    std::size_t rank = 0;
    // The nontrivial (> 1) invariant factors, in divisibility order.
    std::vector<Integer> torsion() const;
    std::vector<Integer> diagonal() const;
};

SmithForm smith_form(const IntMatrix& a);

// Basis of { x : A x = 0 } as matrix columns. The basis spans the full
// integer kernel lattice (which is saturated), not just a finite-index
// sublattice.
IntMatrix kernel_basis(const IntMatrix& a);

// Solves A X = B over the integers; nullopt when no integral solution exists.
std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b);

// Canonical basis of the column lattice of A (column-style Hermite form:
// pivots positive, entries left of a pivot reduced, columns ordered by pivot
// row). Used wherever a relation lattice must be stored reproducibly.
IntMatrix lattice_basis(const IntMatrix& a);

// True when every column of B lies in the column lattice of A.
bool lattice_contains(const IntMatrix& a, const IntMatrix& b);

// Exact inverse of a unimodular matrix; throws std::invalid_argument if the
// matrix is not invertible over the integers.
IntMatrix unimodular_inverse(const IntMatrix& u);

// Fraction-free Bareiss determinant (square input).
Integer determinant(const IntMatrix& a);

// Multiset of cyclic orders -> canonical divisibility chain. Implemented by
// running Smith reduction on the diagonal matrix of the orders, so no
// factoring is needed.
std::vector<Integer> canonical_torsion_chain(std::vector<Integer> orders);

}  // namespace dgc
