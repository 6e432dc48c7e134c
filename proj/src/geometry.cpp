#include "mi/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "mi/kdtree.hpp"

namespace mi {

namespace {

void check_finite(const std::vector<double>& coords) {
    for (double c : coords) {
        if (!std::isfinite(c)) throw std::invalid_argument("point cloud: non-finite coordinate");
    }
}

// d <= 16: hierarchical partition; above, exactness certification matters
// more than speed, so plain loops.
constexpr std::size_t kKdTreeMaxDim = 16;

} // namespace

PointCloud::PointCloud(std::size_t dim, std::vector<double> coords) {
    if (dim == 0) throw std::invalid_argument("point cloud: dim must be positive");
    if (coords.size() % dim != 0)
        throw std::invalid_argument("point cloud: coordinate count not a multiple of dim");
    check_finite(coords);
    dim_ = dim;
    n_ = coords.size() / dim;
    coords_ = std::move(coords);
}

PointCloud PointCloud::from_points(const std::vector<std::vector<double>>& pts) {
    if (pts.empty()) throw std::invalid_argument("point cloud: no points given");
    const std::size_t dim = pts.front().size();
    std::vector<double> flat;
    flat.reserve(pts.size() * dim);
    for (const auto& p : pts) {
        if (p.size() != dim) throw std::invalid_argument("point cloud: ragged point list");
        flat.insert(flat.end(), p.begin(), p.end());
    }
    return PointCloud(dim, std::move(flat));
}

PointCloud PointCloud::subset(const std::vector<std::size_t>& indices) const {
    std::vector<double> flat;
    flat.reserve(indices.size() * dim_);
    for (std::size_t i : indices) {
        if (i >= n_) throw std::out_of_range("point cloud subset: index out of range");
        const auto p = point(i);
        flat.insert(flat.end(), p.begin(), p.end());
    }
    PointCloud out;
    out.dim_ = dim_;
    out.n_ = indices.size();
    out.coords_ = std::move(flat);
    return out;
}

RingSpec::RingSpec(std::vector<double> c, double ri, double ro) {
    if (!(ri >= 0.0) || !(ro > 0.0) || ri > ro)
        throw std::invalid_argument("ring: need 0 <= r_inner <= r_outer, r_outer > 0");
    for (double x : c) {
        if (!std::isfinite(x)) throw std::invalid_argument("ring: non-finite center");
    }
    center = std::move(c);
    r_inner = ri;
    r_outer = ro;
    epsilon = ro - ri;
}

RingSpec RingSpec::paper_ring(double eps) {
    if (!(eps >= 0.0) || eps > 2.0)
        throw std::invalid_argument("ring: width must lie in [0, 2]");
    return RingSpec({0.0, 0.0}, 1.0 - eps / 2.0, 1.0 + eps / 2.0);
}

double unit_ball_volume(std::size_t d) {
    if (d == 0) throw std::invalid_argument("unit ball volume: d must be positive");
    const double hd = static_cast<double>(d) / 2.0;
    return std::pow(std::numbers::pi, hd) / std::tgamma(hd + 1.0);
}

double maxmin_nn(const PointCloud& cloud) {
    if (cloud.size() < 2) throw std::invalid_argument("degenerate sample");
    double worst = 0.0;
    if (cloud.dim() <= kKdTreeMaxDim) {
        KdTree tree(cloud);
        for (std::size_t i = 0; i < cloud.size(); ++i)
            worst = std::max(worst, tree.nn_sq_excluding(i));
    } else {
        for (std::size_t i = 0; i < cloud.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < cloud.size(); ++j) {
                if (j == i) continue;
                best = std::min(best, squared_distance(cloud.point(i), cloud.point(j)));
            }
            worst = std::max(worst, best);
        }
    }
    return std::sqrt(worst);
}

std::vector<Neighbor> knn(const PointCloud& cloud, std::span<const double> query,
                          std::size_t k) {
    if (query.size() != cloud.dim()) throw std::invalid_argument("knn: query dim mismatch");
    if (k == 0 || k > cloud.size()) throw std::invalid_argument("knn: k out of range");
    std::vector<Neighbor> out;
    if (cloud.dim() <= kKdTreeMaxDim) {
        KdTree tree(cloud);
        tree.knn(query, k, out);
    } else {
        std::vector<std::pair<double, std::size_t>> all(cloud.size());
        for (std::size_t j = 0; j < cloud.size(); ++j)
            all[j] = {squared_distance(query, cloud.point(j)), j};
        std::sort(all.begin(), all.end());
        out.reserve(k);
        for (std::size_t j = 0; j < k; ++j) out.push_back({all[j].second, std::sqrt(all[j].first)});
    }
    return out;
}

namespace {

double directed_hausdorff_sq(const PointCloud& a, const PointCloud& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        const auto p = a.point(i);
        for (std::size_t j = 0; j < b.size(); ++j)
            best = std::min(best, squared_distance(p, b.point(j)));
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

double hausdorff_finite(const PointCloud& a, const PointCloud& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty cloud");
    if (a.dim() != b.dim()) throw std::invalid_argument("hausdorff: dimension mismatch");
    return std::sqrt(std::max(directed_hausdorff_sq(a, b), directed_hausdorff_sq(b, a)));
}

double dist_to_ring(std::span<const double> p, const RingSpec& ring) {
    if (p.size() != ring.dim()) throw std::invalid_argument("dist_to_ring: dim mismatch");
    const double rho = std::sqrt(squared_distance(p, ring.center));
    if (rho >= ring.r_inner && rho <= ring.r_outer) return 0.0;
    return std::min(std::abs(rho - ring.r_inner), std::abs(rho - ring.r_outer));
}

GridHausdorff hausdorff_cloud_to_ring(const PointCloud& cloud, const RingSpec& ring,
                                      double grid_step) {
    if (cloud.empty()) throw std::invalid_argument("hausdorff to ring: empty cloud");
    if (cloud.dim() != 2 || ring.dim() != 2)
        throw std::invalid_argument("ring reference is 2-D only");
    if (!(grid_step > 0.0)) throw std::invalid_argument("hausdorff to ring: grid_step must be > 0");

    KdTree tree(cloud);

    const double two_pi = 2.0 * std::numbers::pi;
    const double width = ring.r_outer - ring.r_inner;
    const std::size_t radial_cells =
        width > 0.0 ? static_cast<std::size_t>(std::ceil(width / grid_step)) : 0;

    double sup_sq = 0.0;
    double q[2];
    for (std::size_t t = 0; t <= radial_cells; ++t) {
        const double r = radial_cells == 0
                             ? ring.r_inner
                             : ring.r_inner + width * static_cast<double>(t) /
                                                  static_cast<double>(radial_cells);
        const std::size_t angular =
            std::max<std::size_t>(4, static_cast<std::size_t>(std::ceil(two_pi * r / grid_step)));
        if (r == 0.0) {
            q[0] = ring.center[0];
            q[1] = ring.center[1];
            sup_sq = std::max(sup_sq, tree.nearest_sq({q, 2}));
            continue;
        }
        for (std::size_t j = 0; j < angular; ++j) {
            const double theta = two_pi * static_cast<double>(j) / static_cast<double>(angular);
            q[0] = ring.center[0] + r * std::cos(theta);
            q[1] = ring.center[1] + r * std::sin(theta);
            sup_sq = std::max(sup_sq, tree.nearest_sq({q, 2}));
        }
    }

    double cloud_term = 0.0;
    for (std::size_t i = 0; i < cloud.size(); ++i)
        cloud_term = std::max(cloud_term, dist_to_ring(cloud.point(i), ring));

    return {std::max(std::sqrt(sup_sq), cloud_term), grid_step};
}

} // namespace mi
