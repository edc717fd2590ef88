#pragma once

#include <limits>
#include <vector>

#include "qcpot/common.hpp"
#include "qcpot/jets.hpp"

namespace qcpot {

/// Sentinel for the extended value -infinity. No +infinity entries are
/// permitted anywhere; arithmetic with the sentinel is reserved for
/// sup/max reductions, where it acts as the identity.
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

/// Axis-aligned box [lo, hi] in R^n, n = 1..3, with lo[i] < hi[i].
struct Box {
    int dim = 1;
    Vec lo = vec_zero();
    Vec hi = vec_zero();

    Box() = default;
    Box(int n, const Vec& lo_, const Vec& hi_);
    static Box make(std::initializer_list<double> lo_, std::initializer_list<double> hi_);

    bool contains(const Vec& x, double tol = 0.0) const;
    double diameter() const;
    Vec center() const;
    /// Box shrunk by delta on every face. Throws if it would be empty.
    Box shrunk(double delta) const;
};

/// Uniform grid over a box: shape[i] nodes per axis (>= 3), spacing
/// h[i] = (hi[i] - lo[i]) / (shape[i] - 1). Node order is row-major with
/// axis 0 slowest, which fixes the file format and all tie-breaking.
class GridSpec {
public:
    GridSpec() = default;
    GridSpec(const Box& box, const IVec& shape);
    static GridSpec make(std::initializer_list<double> lo, std::initializer_list<double> hi,
                         std::initializer_list<int> shape);

    int dim() const { return box_.dim; }
    const Box& box() const { return box_; }
    const IVec& shape() const { return shape_; }
    const Vec& spacing() const { return h_; }
    double max_spacing() const;
    double min_spacing() const;
    std::size_t size() const { return size_; }
    double cell_volume() const;

    IVec multi(std::size_t flat) const;
    std::size_t flat(const IVec& m) const;
    Vec node(std::size_t flat) const;
    Vec node(const IVec& m) const;

    /// Interior: at least one node away from every face.
    bool interior(std::size_t flat) const;
    /// Flat index of the node nearest to x (clamped to the grid).
    std::size_t nearest(const Vec& x) const;
    /// True when the other spec addresses the same nodes.
    bool same_grid(const GridSpec& o) const;

private:
    Box box_;
    IVec shape_ = {1, 1, 1};
    Vec h_ = vec_zero();
    std::size_t size_ = 0;
};

/// Real-valued (or -infinity-extended) function sampled on a grid.
struct ScalarField {
    GridSpec spec;
    std::vector<double> values;

    ScalarField() = default;
    ScalarField(const GridSpec& s, std::vector<double> v);

    double operator()(std::size_t k) const { return values[k]; }
    bool has_neg_inf() const;
    /// Largest value (the sentinel is the identity of max).
    double max_value() const;
    /// Largest |u| over finite entries.
    double max_abs_finite() const;
};

/// Boolean mask over the nodes of a grid.
struct GridMask {
    GridSpec spec;
    std::vector<std::uint8_t> bits;

    GridMask() = default;
    explicit GridMask(const GridSpec& s) : spec(s), bits(s.size(), 0) {}

    std::size_t count() const;
};

/// Samples generator(node) at every node, row-major.
ScalarField build_field(const GridSpec& spec, const std::function<double(const Vec&)>& generator);

/// Centered-difference 2-jet at an interior node. Diagonal Hessian entries
/// use the standard second difference, off-diagonal entries the 4-point
/// cross stencil, so A is symmetric by construction.
Jet2 numeric_jet(const ScalarField& field, std::size_t index);

/// Cell-counting measure: (number of set bits) * prod(h[i]).
double mask_measure(const GridMask& mask);

}  // namespace qcpot
