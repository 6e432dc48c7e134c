#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mi/geometry.hpp"

namespace mi {

/// Exact k-d tree over a PointCloud. Used for d <= 16; above that the free
/// functions fall back to brute force. Every query is exact and returns
/// results bit-identical to the brute-force double loop (same per-pair
/// arithmetic, ties broken by point index), since all downstream statistics
/// feed decision thresholds.
class KdTree {
public:
    explicit KdTree(const PointCloud& cloud, std::size_t leaf_size = 16);

    KdTree(const KdTree&) = delete;
    KdTree& operator=(const KdTree&) = delete;

    [[nodiscard]] const PointCloud& cloud() const { return *cloud_; }

    /// k nearest neighbors of an arbitrary query point; (distance^2, index)
    /// lexicographic order decides ties. Returned sorted nondecreasing.
    void knn(std::span<const double> query, std::size_t k,
             std::vector<Neighbor>& out) const;

    /// Squared distance from cloud point i to its nearest other point
    /// (j != i). Requires >= 2 points.
    [[nodiscard]] double nn_sq_excluding(std::size_t i) const;

    /// Squared distance from an arbitrary query to its nearest cloud point.
    [[nodiscard]] double nearest_sq(std::span<const double> query) const;

    /// Indices j with ||query - X_j|| < radius (strict), j != exclude.
    /// Order unspecified. Pass exclude = npos to keep all.
    void radius_lt(std::span<const double> query, double radius, std::size_t exclude,
                   std::vector<std::size_t>& out) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    struct Node {
        double split = 0.0;
        int axis = -1;            // -1 marks a leaf
        std::size_t left = 0;     // child node ids, or [begin,end) into order_ for leaves
        std::size_t right = 0;
    };

    std::size_t build(std::size_t begin, std::size_t end);

    const PointCloud* cloud_;
    std::size_t leaf_size_;
    std::vector<Node> nodes_;
    std::vector<std::size_t> order_; // point indices, permuted by the build
    std::size_t root_ = 0;
};

} // namespace mi
