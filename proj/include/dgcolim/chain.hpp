#pragma once

#include "dgcolim/matrix.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dgc {

// Inclusive degree interval; empty when hi < lo.
struct Window {
    int lo = 0;
    int hi = -1;
    bool empty() const { return hi < lo; }
    bool contains(int n) const { return lo <= n && n <= hi; }
    bool contains(const Window& w) const {
        return w.empty() || (lo <= w.lo && w.hi <= hi);
    }
    static Window hull(const Window& a, const Window& b);
    Window padded(int margin) const {
        return empty() ? *this : Window{lo - margin, hi + margin};
    }
    bool operator==(const Window& o) const = default;
    std::string to_string() const;
};

// Bounded chain complex of finitely generated free abelian groups. The
// differential lowers degree: diff(n) maps C_n to C_{n-1} and has shape
// rank(n-1) x rank(n), acting on column vectors. Values are immutable and
// cheap to copy (shared payload).
class ChainComplex {
public:
    ChainComplex();  // the zero complex

    // ranks: degree -> rank (zeros allowed, dropped). diffs: degree n ->
    // matrix for diff(n); missing entries are zero maps. Shapes are enforced
    // here; d o d = 0 is checked by validate_complex.
    ChainComplex(const std::map<int, std::size_t>& ranks,
                 const std::map<int, IntMatrix>& diffs);

    std::size_t rank(int n) const;
    const IntMatrix& diff(int n) const;
    // Support hull: smallest window containing all nonzero ranks.
    Window support() const;
    bool is_zero_complex() const { return support().empty(); }
    std::size_t total_rank() const;

    bool operator==(const ChainComplex& o) const;
    bool operator!=(const ChainComplex& o) const { return !(*this == o); }

private:
    struct Data;
    std::shared_ptr<const Data> p_;
    friend class ChainComplexBuilder;
    explicit ChainComplex(std::shared_ptr<const Data> p) : p_(std::move(p)) {}
};

// Incremental construction helper used by the operations in this library.
class ChainComplexBuilder {
public:
    void set_rank(int n, std::size_t r);
    void set_diff(int n, IntMatrix m);  // shape checked at build()
    ChainComplex build();

private:
    std::map<int, std::size_t> ranks_;
    std::map<int, IntMatrix> diffs_;
};

// Degree-0 chain map. Components commute with the differentials
// (validate_map checks this); component(n) has shape
// target.rank(n) x source.rank(n).
class ChainMap {
public:
    ChainMap();  // zero map between zero complexes
    ChainMap(ChainComplex source, ChainComplex target,
             const std::map<int, IntMatrix>& components);

    const ChainComplex& source() const;
    const ChainComplex& target() const;
    IntMatrix component(int n) const;
    bool has_stored_component(int n) const;

    bool operator==(const ChainMap& o) const;

private:
    struct Data;
    std::shared_ptr<const Data> p_;
};

ChainMap identity_map(const ChainComplex& c);
ChainMap zero_map(const ChainComplex& source, const ChainComplex& target);
ChainMap compose(const ChainMap& g, const ChainMap& f);  // g after f
ChainMap map_sum(const ChainMap& f, const ChainMap& g);  // same source/target
ChainMap map_negate(const ChainMap& f);
ChainMap map_scale(const ChainMap& f, const Integer& k);
// Degreewise inverse of an isomorphism; throws std::invalid_argument when
// some component is not square and unimodular.
ChainMap map_inverse(const ChainMap& f);

// Finitely generated graded abelian group: per degree a free rank and a
// torsion divisibility chain. Degrees with trivial group are omitted.
struct GradedAbelianGroup {
    struct Part {
        long free_rank = 0;
        std::vector<Integer> torsion;  // d_1 | d_2 | ..., all > 1
        bool trivial() const { return free_rank == 0 && torsion.empty(); }
        bool operator==(const Part& o) const = default;
    };
    std::map<int, Part> parts;

    bool trivial() const { return parts.empty(); }
    bool trivial_on(const Window& w) const;
    Part at(int n) const;
    void set(int n, Part p);
    GradedAbelianGroup restricted(const Window& w) const;
    bool operator==(const GradedAbelianGroup& o) const = default;
    std::string to_string() const;
    static std::string part_to_string(const Part& p);
};

struct ValidationResult {
    bool ok = true;
    std::string detail;  // names the first failing degree / axiom
};

// d o d = 0 and shape coherence.
ValidationResult validate_complex(const ChainComplex& c);
// Components commute with differentials.
ValidationResult validate_map(const ChainMap& f);

// Exact homology (kernel mod image via Smith normal form) for every degree
// in the window.
GradedAbelianGroup homology(const ChainComplex& c, const Window& w);
GradedAbelianGroup homology(const ChainComplex& c);  // over the full support

long euler_characteristic(const ChainComplex& c);

// Binary tensor product with the usual sign rule
// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db. Degree-(p,q) summands are
// ordered by p ascending; basis order inside a summand is row-major
// (first factor slowest).
ChainComplex tensor(const ChainComplex& a, const ChainComplex& b);
ChainMap tensor_map(const ChainMap& f, const ChainMap& g);

// The symmetry isomorphism a (x) b -> b (x) a with sign (-1)^{pq}.
ChainMap symmetry_map(const ChainComplex& a, const ChainComplex& b);

// shift(c, k)_n = c_{n-k} with differential scaled by (-1)^k; equal on the
// nose to tensor(sphere(k), c).
ChainComplex shift(const ChainComplex& c, int k);
ChainMap shift_map(const ChainMap& f, int k);

ChainComplex sphere(int n);        // free rank 1 in degree n
ChainComplex disc(int n);          // Z in degrees n+1, n with identity diff
ChainMap disc_boundary(int n);     // sphere(n) -> disc(n), bottom inclusion
ChainComplex unit_complex();       // sphere(0)

struct ConeResult {
    ChainComplex cone;      // cone(f)_n = target_n + source_{n-1}
    ChainMap include_target;
    ChainMap project_shifted_source;  // cone -> shift(source, 1)
};
ConeResult mapping_cone(const ChainMap& f);

ChainComplex complex_direct_sum(const std::vector<ChainComplex>& parts);
ChainMap map_direct_sum(const std::vector<ChainMap>& parts);
// Inclusion of parts[i] into the direct sum, and the matching projection.
ChainMap sum_inclusion(const std::vector<ChainComplex>& parts, std::size_t i);
ChainMap sum_projection(const std::vector<ChainComplex>& parts, std::size_t i);

// Brutal truncation to the window: generators outside are dropped. Homology
// is only preserved away from the cut edges; callers track trusted windows.
ChainComplex truncate(const ChainComplex& c, const Window& w);
ChainMap truncate(const ChainMap& f, const Window& w);

// The smallest window on which a quasi-isomorphism verdict for f is
// complete: hull of both supports with one extra degree above the source.
Window quasi_iso_window(const ChainMap& f);

struct QuasiIsoReport {
    bool ok = false;
    GradedAbelianGroup cone_homology;  // restricted to the inspected window
    Window window;
};

// Total check: requires the window to cover quasi_iso_window(f), otherwise
// throws std::invalid_argument (the verdict would be unsound).
QuasiIsoReport is_quasi_iso(const ChainMap& f, const Window& w);
// Window-relative check with no soundness precondition; used internally on
// truncated complexes whose trusted window is tracked by the caller.
QuasiIsoReport quasi_iso_on(const ChainMap& f, const Window& w);

struct CofibrationReport {
    bool ok = false;
    int failing_degree = 0;
    std::string reason;
};

// Degreewise split injectivity surrogate: every component is injective with
// free cokernel (all Smith invariant factors 1).
CofibrationReport is_cofibration(const ChainMap& f);

}  // namespace dgc
