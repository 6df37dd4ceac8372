#include "dgcolim/matrix.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dgc {

std::string to_string(const Integer& x) { return x.str(); }

namespace {

// Floor division (cpp_int's operator/ truncates toward zero).
Integer fdiv(const Integer& a, const Integer& b) {
    Integer q = a / b;
    if (a % b != 0 && ((a < 0) != (b < 0))) q -= 1;
    return q;
}

// Quotient minimizing the remainder: |a - q b| <= |b| / 2. Keeps the
// elimination transforms from blowing up.
Integer rdiv(const Integer& a, const Integer& b) {
    Integer q = a / b;
    Integer r = a - q * b;
    if (2 * abs(r) > abs(b)) q += ((r < 0) == (b < 0)) ? 1 : -1;
    return q;
}

}  // namespace

IntMatrix::IntMatrix(std::size_t rows, std::size_t cols,
                     std::vector<Integer> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_)
        throw std::invalid_argument("IntMatrix: data size mismatch");
}

IntMatrix IntMatrix::identity(std::size_t n) {
    IntMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

IntMatrix IntMatrix::zero(std::size_t rows, std::size_t cols) {
    return IntMatrix(rows, cols);
}

IntMatrix IntMatrix::from_rows(std::vector<std::vector<long long>> rows) {
    std::size_t r = rows.size();
    std::size_t c = r == 0 ? 0 : rows[0].size();
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c)
            throw std::invalid_argument("IntMatrix: ragged rows");
        for (std::size_t j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

IntMatrix IntMatrix::column(std::vector<Integer> entries) {
    IntMatrix m(entries.size(), 1);
    for (std::size_t i = 0; i < entries.size(); ++i)
        m.at(i, 0) = std::move(entries[i]);
    return m;
}

bool IntMatrix::is_zero() const {
    for (const auto& x : data_)
        if (x != 0) return false;
    return true;
}

bool IntMatrix::is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            if (at(i, j) != (i == j ? 1 : 0)) return false;
    return true;
}

bool IntMatrix::operator==(const IntMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
}

IntMatrix IntMatrix::operator*(const IntMatrix& o) const {
    if (cols_ != o.rows_)
        throw std::invalid_argument("IntMatrix: shape mismatch in product");
    IntMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const Integer& aik = at(i, k);
            if (aik == 0) continue;
            for (std::size_t j = 0; j < o.cols_; ++j) {
                const Integer& bkj = o.at(k, j);
                if (bkj != 0) r.at(i, j) += aik * bkj;
            }
        }
    return r;
}

IntMatrix IntMatrix::operator+(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: shape mismatch in sum");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] + o.data_[i];
    return r;
}

IntMatrix IntMatrix::operator-(const IntMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw std::invalid_argument("IntMatrix: shape mismatch in difference");
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = data_[i] - o.data_[i];
    return r;
}

IntMatrix IntMatrix::operator-() const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = -data_[i];
    return r;
}

IntMatrix IntMatrix::scaled(const Integer& k) const {
    IntMatrix r(rows_, cols_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] * k;
    return r;
}

IntMatrix IntMatrix::transposed() const {
    IntMatrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
    return r;
}

IntMatrix IntMatrix::slice_cols(std::size_t first, std::size_t count) const {
    IntMatrix r(rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < count; ++j) r.at(i, j) = at(i, first + j);
    return r;
}

IntMatrix IntMatrix::slice_rows(std::size_t first, std::size_t count) const {
    IntMatrix r(count, cols_);
    for (std::size_t i = 0; i < count; ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(first + i, j);
    return r;
}

IntMatrix IntMatrix::select_rows(const std::vector<std::size_t>& idx) const {
    IntMatrix r(idx.size(), cols_);
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < cols_; ++j) r.at(i, j) = at(idx[i], j);
    return r;
}

IntMatrix IntMatrix::select_cols(const std::vector<std::size_t>& idx) const {
    IntMatrix r(rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) r.at(i, j) = at(i, idx[j]);
    return r;
}

IntMatrix IntMatrix::hcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("IntMatrix: hcat row mismatch");
    IntMatrix r(a.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(0, a.cols(), b);
    return r;
}

IntMatrix IntMatrix::vcat(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols() != b.cols())
        throw std::invalid_argument("IntMatrix: vcat column mismatch");
    IntMatrix r(a.rows() + b.rows(), a.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), 0, b);
    return r;
}

void IntMatrix::set_block(std::size_t i, std::size_t j, const IntMatrix& b) {
    if (i + b.rows() > rows_ || j + b.cols() > cols_)
        throw std::invalid_argument("IntMatrix: block out of range");
    for (std::size_t r = 0; r < b.rows(); ++r)
        for (std::size_t c = 0; c < b.cols(); ++c)
            at(i + r, j + c) = b.at(r, c);
}

std::string IntMatrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows_; ++i) {
        os << (i ? "; " : "");
        for (std::size_t j = 0; j < cols_; ++j)
            os << (j ? " " : "") << at(i, j).str();
    }
    os << "]";
    return os.str();
}

IntMatrix kronecker(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            const Integer& aij = a.at(i, j);
            if (aij == 0) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    r.at(i * b.rows() + k, j * b.cols() + l) = aij * b.at(k, l);
        }
    return r;
}

IntMatrix direct_sum(const IntMatrix& a, const IntMatrix& b) {
    IntMatrix r(a.rows() + b.rows(), a.cols() + b.cols());
    r.set_block(0, 0, a);
    r.set_block(a.rows(), a.cols(), b);
    return r;
}

std::vector<Integer> SmithForm::torsion() const {
    std::vector<Integer> t;
    for (std::size_t i = 0; i < rank; ++i)
        if (d.at(i, i) > 1) t.push_back(d.at(i, i));
    return t;
}

std::vector<Integer> SmithForm::diagonal() const {
    std::vector<Integer> t;
    for (std::size_t i = 0; i < rank; ++i) t.push_back(d.at(i, i));
    return t;
}

SmithForm smith_form(const IntMatrix& a) {
    SmithForm s;
    s.d = a;
    s.u = IntMatrix::identity(a.rows());
    s.v = IntMatrix::identity(a.cols());
    IntMatrix& d = s.d;
    IntMatrix& u = s.u;
    IntMatrix& v = s.v;
    const std::size_t m = a.rows(), n = a.cols();

    auto swap_rows = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t c = 0; c < n; ++c) std::swap(d.at(i, c), d.at(j, c));
        for (std::size_t c = 0; c < m; ++c) std::swap(u.at(i, c), u.at(j, c));
    };
    auto swap_cols = [&](std::size_t i, std::size_t j) {
        if (i == j) return;
        for (std::size_t r = 0; r < m; ++r) std::swap(d.at(r, i), d.at(r, j));
        for (std::size_t r = 0; r < n; ++r) std::swap(v.at(r, i), v.at(r, j));
    };
    // row_i -= q * row_j
    auto row_sub = [&](std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        for (std::size_t c = 0; c < n; ++c) d.at(i, c) -= q * d.at(j, c);
        for (std::size_t c = 0; c < m; ++c) u.at(i, c) -= q * u.at(j, c);
    };
    auto col_sub = [&](std::size_t i, std::size_t j, const Integer& q) {
        if (q == 0) return;
        for (std::size_t r = 0; r < m; ++r) d.at(r, i) -= q * d.at(r, j);
        for (std::size_t r = 0; r < n; ++r) v.at(r, i) -= q * v.at(r, j);
    };
    auto negate_row = [&](std::size_t i) {
        for (std::size_t c = 0; c < n; ++c) d.at(i, c) = -d.at(i, c);
        for (std::size_t c = 0; c < m; ++c) u.at(i, c) = -u.at(i, c);
    };

    std::size_t t = 0;
    while (t < m && t < n) {
        // Smallest nonzero entry of the trailing block becomes the pivot;
        // keeps intermediate growth manageable.
        std::size_t pi = m, pj = n;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j) {
                if (d.at(i, j) == 0) continue;
                if (pi == m || abs(d.at(i, j)) < abs(d.at(pi, pj))) {
                    pi = i;
                    pj = j;
                }
            }
        if (pi == m) break;
        swap_rows(t, pi);
        swap_cols(t, pj);

        bool clean = false;
        while (!clean) {
            clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (d.at(i, t) == 0) continue;
                Integer q = rdiv(d.at(i, t), d.at(t, t));
                row_sub(i, t, q);
                if (d.at(i, t) != 0) {
                    swap_rows(t, i);  // remainder is smaller; continue
                    clean = false;
                }
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (d.at(t, j) == 0) continue;
                Integer q = rdiv(d.at(t, j), d.at(t, t));
                col_sub(j, t, q);
                if (d.at(t, j) != 0) {
                    swap_cols(t, j);
                    clean = false;
                }
            }
        }
        if (d.at(t, t) < 0) negate_row(t);

        // Divisibility: the pivot must divide the rest of the block.
        bool restart = false;
        for (std::size_t i = t + 1; i < m && !restart; ++i)
            for (std::size_t j = t + 1; j < n && !restart; ++j)
                if (d.at(i, j) % d.at(t, t) != 0) {
                    row_sub(t, i, Integer(-1));  // fold row i into row t
                    restart = true;
                }
        if (!restart) ++t;
    }
    s.rank = t;
    return s;
}

IntMatrix kernel_basis(const IntMatrix& a) {
    SmithForm s = smith_form(a);
    IntMatrix k = s.v.slice_cols(s.rank, a.cols() - s.rank);
    // Same lattice, canonical basis; also sheds the entry growth the
    // accumulated transform tends to carry.
    return lattice_basis(k);
}

std::optional<IntMatrix> solve(const IntMatrix& a, const IntMatrix& b) {
    if (a.rows() != b.rows())
        throw std::invalid_argument("solve: row mismatch");
    SmithForm s = smith_form(a);
    IntMatrix ub = s.u * b;
    IntMatrix y(a.cols(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j) {
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i < s.rank) {
                const Integer& di = s.d.at(i, i);
                if (ub.at(i, j) % di != 0) return std::nullopt;
                if (i < a.cols()) y.at(i, j) = ub.at(i, j) / di;
            } else if (ub.at(i, j) != 0) {
                return std::nullopt;
            }
        }
    }
    return s.v * y;
}

IntMatrix lattice_basis(const IntMatrix& a) {
    // Column-style Hermite form; the pivot columns are the canonical basis.
    IntMatrix h = a;
    const std::size_t m = h.rows(), n = h.cols();
    std::size_t c = 0;
    for (std::size_t r = 0; r < m && c < n; ++r) {
        std::size_t p = n;
        for (std::size_t j = c; j < n; ++j)
            if (h.at(r, j) != 0) {
                if (p == n || abs(h.at(r, j)) < abs(h.at(r, p))) p = j;
            }
        if (p == n) continue;
        for (std::size_t i = 0; i < m; ++i) std::swap(h.at(i, c), h.at(i, p));
        // Kill row r in columns to the right of c.
        bool again = true;
        while (again) {
            again = false;
            for (std::size_t j = c + 1; j < n; ++j) {
                if (h.at(r, j) == 0) continue;
                Integer q = rdiv(h.at(r, j), h.at(r, c));
                for (std::size_t i = 0; i < m; ++i)
                    h.at(i, j) -= q * h.at(i, c);
                if (h.at(r, j) != 0) {
                    for (std::size_t i = 0; i < m; ++i)
                        std::swap(h.at(i, c), h.at(i, j));
                    again = true;
                }
            }
        }
        if (h.at(r, c) < 0)
            for (std::size_t i = 0; i < m; ++i) h.at(i, c) = -h.at(i, c);
        // Reduce earlier columns at row r into [0, pivot).
        for (std::size_t j = 0; j < c; ++j) {
            Integer q = fdiv(h.at(r, j), h.at(r, c));
            if (q != 0)
                for (std::size_t i = 0; i < m; ++i)
                    h.at(i, j) -= q * h.at(i, c);
        }
        ++c;
    }
    return h.slice_cols(0, c);
}

bool lattice_contains(const IntMatrix& a, const IntMatrix& b) {
    return solve(a, b).has_value();
}

IntMatrix unimodular_inverse(const IntMatrix& u) {
    if (u.rows() != u.cols())
        throw std::invalid_argument("unimodular_inverse: not square");
    auto inv = solve(u, IntMatrix::identity(u.rows()));
    if (!inv || !((*inv) * u).is_identity())
        throw std::invalid_argument("unimodular_inverse: matrix not unimodular");
    return *inv;
}

Integer determinant(const IntMatrix& a) {
    if (a.rows() != a.cols())
        throw std::invalid_argument("determinant: not square");
    const std::size_t n = a.rows();
    if (n == 0) return 1;
    IntMatrix m = a;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            std::size_t p = n;
            for (std::size_t i = k + 1; i < n; ++i)
                if (m.at(i, k) != 0) {
                    p = i;
                    break;
                }
            if (p == n) return 0;
            for (std::size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(p, j));
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                m.at(i, j) =
                    (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

std::vector<Integer> canonical_torsion_chain(std::vector<Integer> orders) {
    std::vector<Integer> kept;
    for (auto& x : orders) {
        Integer v = abs(x);
        if (v == 0 || v == 1) continue;  // 0 is not a finite order; 1 is trivial
        kept.push_back(v);
    }
    if (kept.size() <= 1) return kept;
    IntMatrix diag(kept.size(), kept.size());
    for (std::size_t i = 0; i < kept.size(); ++i) diag.at(i, i) = kept[i];
    return smith_form(diag).torsion();
}

}  // namespace dgc
