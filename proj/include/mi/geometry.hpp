#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mi {

/// Finite set of points in R^d, stored row-major. Index i always refers to
/// the same point; duplicates are permitted (noise sampling can collide).
class PointCloud {
public:
    PointCloud() = default;

    /// Takes flat row-major coordinates; size must be a multiple of dim and
    /// all values finite.
    PointCloud(std::size_t dim, std::vector<double> coords);

    /// Convenience constructor from per-point vectors.
    static PointCloud from_points(const std::vector<std::vector<double>>& pts);

    [[nodiscard]] std::size_t dim() const { return dim_; }
    [[nodiscard]] std::size_t size() const { return n_; }
    [[nodiscard]] bool empty() const { return n_ == 0; }

    [[nodiscard]] std::span<const double> point(std::size_t i) const {
        return {coords_.data() + i * dim_, dim_};
    }
    [[nodiscard]] const std::vector<double>& coords() const { return coords_; }

    /// Subset in the given index order.
    [[nodiscard]] PointCloud subset(const std::vector<std::size_t>& indices) const;

private:
    std::size_t dim_ = 0;
    std::size_t n_ = 0;
    std::vector<double> coords_;
};

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        s += d * d;
    }
    return s;
}

/// Annulus reference geometry: the set of points whose distance to `center`
/// lies in [r_inner, r_outer]. r_inner == r_outer describes a circle,
/// r_inner == 0 a disk.
struct RingSpec {
    std::vector<double> center{0.0, 0.0};
    double r_inner = 0.0;
    double r_outer = 1.0;
    double epsilon = 1.0; // always r_outer - r_inner

    RingSpec() = default;
    RingSpec(std::vector<double> c, double ri, double ro);

    /// Ring of width eps around the unit circle: radii 1 -/+ eps/2.
    static RingSpec paper_ring(double eps);

    [[nodiscard]] std::size_t dim() const { return center.size(); }
};

/// Volume of the d-dimensional unit ball.
double unit_ball_volume(std::size_t d);

/// max over i of min over j != i of ||X_j - X_i||. Throws "degenerate
/// sample" for fewer than 2 points. Duplicated points contribute 0 to the
/// inner minimum, which is correct.
double maxmin_nn(const PointCloud& cloud);

struct Neighbor {
    std::size_t index;
    double distance;
};

/// The k nearest cloud points to `query`, distances nondecreasing, ties
/// broken by smaller index. 1 <= k <= |cloud|.
std::vector<Neighbor> knn(const PointCloud& cloud, std::span<const double> query,
                          std::size_t k);

/// Hausdorff distance between two finite point sets (exact double loop).
double hausdorff_finite(const PointCloud& a, const PointCloud& b);

/// Distance from a point to the annulus: 0 inside, else the radial gap to
/// the nearer of the two bounding spheres.
double dist_to_ring(std::span<const double> p, const RingSpec& ring);

struct GridHausdorff {
    double value;     // max(grid sup of min-dist to cloud, cloud max of dist to ring)
    double grid_step; // discretization bound: adjacent grid points <= this apart
};

/// Hausdorff distance between a 2-D cloud and the annulus, via a
/// deterministic angular x radial grid with adjacent points <= grid_step
/// apart. Converges to d_H as grid_step -> 0.
GridHausdorff hausdorff_cloud_to_ring(const PointCloud& cloud, const RingSpec& ring,
                                      double grid_step);

} // namespace mi
