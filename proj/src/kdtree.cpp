#include "mi/kdtree.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace mi {

KdTree::KdTree(const PointCloud& cloud, std::size_t leaf_size)
    : cloud_(&cloud), leaf_size_(std::max<std::size_t>(1, leaf_size)) {
    order_.resize(cloud.size());
    for (std::size_t i = 0; i < order_.size(); ++i) order_[i] = i;
    if (!order_.empty()) {
        nodes_.reserve(2 * order_.size() / leaf_size_ + 2);
        root_ = build(0, order_.size());
    }
}

std::size_t KdTree::build(std::size_t begin, std::size_t end) {
    const std::size_t id = nodes_.size();
    nodes_.emplace_back();
    if (end - begin <= leaf_size_) {
        nodes_[id].axis = -1;
        nodes_[id].left = begin;
        nodes_[id].right = end;
        return id;
    }

    const PointCloud& pc = *cloud_;
    const std::size_t dim = pc.dim();
    int axis = 0;
    double best_spread = -1.0;
    for (std::size_t d = 0; d < dim; ++d) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -std::numeric_limits<double>::infinity();
        for (std::size_t t = begin; t < end; ++t) {
            const double v = pc.point(order_[t])[d];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (hi - lo > best_spread) {
            best_spread = hi - lo;
            axis = static_cast<int>(d);
        }
    }

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                     order_.begin() + static_cast<std::ptrdiff_t>(mid),
                     order_.begin() + static_cast<std::ptrdiff_t>(end),
                     [&](std::size_t a, std::size_t b) {
                         const double da = pc.point(a)[static_cast<std::size_t>(axis)];
                         const double db = pc.point(b)[static_cast<std::size_t>(axis)];
                         if (da != db) return da < db;
                         return a < b; // index tie-break keeps the build deterministic
                     });
    const double split = pc.point(order_[mid])[static_cast<std::size_t>(axis)];

    const std::size_t l = build(begin, mid);
    const std::size_t r = build(mid, end);
    nodes_[id].axis = axis;
    nodes_[id].split = split;
    nodes_[id].left = l;
    nodes_[id].right = r;
    return id;
}

namespace {
struct Visit {
    std::size_t node;
    double plane_sq; // lower bound on d^2 for every point under this node
};
} // namespace

void KdTree::knn(std::span<const double> query, std::size_t k,
                 std::vector<Neighbor>& out) const {
    out.clear();
    if (k == 0 || k > order_.size()) throw std::invalid_argument("knn: k out of range");

    // max-heap on (d^2, index); lexicographic order resolves distance ties
    // by smaller index, matching brute force.
    std::vector<std::pair<double, std::size_t>> heap;
    heap.reserve(k);

    std::vector<Visit> stack;
    stack.reserve(64);
    stack.push_back({root_, 0.0});
    while (!stack.empty()) {
        const Visit v = stack.back();
        stack.pop_back();
        if (heap.size() == k && v.plane_sq > heap.front().first) continue;
        const Node& nd = nodes_[v.node];
        if (nd.axis < 0) {
            for (std::size_t t = nd.left; t < nd.right; ++t) {
                const std::size_t idx = order_[t];
                const double d2 = squared_distance(query, cloud_->point(idx));
                const std::pair<double, std::size_t> cand{d2, idx};
                if (heap.size() < k) {
                    heap.push_back(cand);
                    std::push_heap(heap.begin(), heap.end());
                } else if (cand < heap.front()) {
                    std::pop_heap(heap.begin(), heap.end());
                    heap.back() = cand;
                    std::push_heap(heap.begin(), heap.end());
                }
            }
        } else {
            const double diff = query[static_cast<std::size_t>(nd.axis)] - nd.split;
            const double plane = diff * diff;
            const std::size_t near = diff < 0.0 ? nd.left : nd.right;
            const std::size_t far = diff < 0.0 ? nd.right : nd.left;
            stack.push_back({far, plane});
            stack.push_back({near, v.plane_sq});
        }
    }

    std::sort(heap.begin(), heap.end());
    out.reserve(k);
    for (const auto& [d2, idx] : heap) out.push_back({idx, std::sqrt(d2)});
}

double KdTree::nn_sq_excluding(std::size_t i) const {
    if (order_.size() < 2) throw std::invalid_argument("degenerate sample");
    const auto query = cloud_->point(i);
    double best = std::numeric_limits<double>::infinity();

    std::vector<Visit> stack;
    stack.reserve(64);
    stack.push_back({root_, 0.0});
    while (!stack.empty()) {
        const Visit v = stack.back();
        stack.pop_back();
        if (v.plane_sq >= best) continue;
        const Node& nd = nodes_[v.node];
        if (nd.axis < 0) {
            for (std::size_t t = nd.left; t < nd.right; ++t) {
                const std::size_t idx = order_[t];
                if (idx == i) continue;
                best = std::min(best, squared_distance(query, cloud_->point(idx)));
            }
        } else {
            const double diff = query[static_cast<std::size_t>(nd.axis)] - nd.split;
            const double plane = diff * diff;
            const std::size_t near = diff < 0.0 ? nd.left : nd.right;
            const std::size_t far = diff < 0.0 ? nd.right : nd.left;
            stack.push_back({far, plane});
            stack.push_back({near, v.plane_sq});
        }
    }
    return best;
}

double KdTree::nearest_sq(std::span<const double> query) const {
    double best = std::numeric_limits<double>::infinity();
    if (nodes_.empty()) return best;

    std::vector<Visit> stack;
    stack.reserve(64);
    stack.push_back({root_, 0.0});
    while (!stack.empty()) {
        const Visit v = stack.back();
        stack.pop_back();
        if (v.plane_sq >= best) continue;
        const Node& nd = nodes_[v.node];
        if (nd.axis < 0) {
            for (std::size_t t = nd.left; t < nd.right; ++t)
                best = std::min(best, squared_distance(query, cloud_->point(order_[t])));
        } else {
            const double diff = query[static_cast<std::size_t>(nd.axis)] - nd.split;
            const double plane = diff * diff;
            const std::size_t near = diff < 0.0 ? nd.left : nd.right;
            const std::size_t far = diff < 0.0 ? nd.right : nd.left;
            stack.push_back({far, plane});
            stack.push_back({near, v.plane_sq});
        }
    }
    return best;
}

void KdTree::radius_lt(std::span<const double> query, double radius, std::size_t exclude,
                       std::vector<std::size_t>& out) const {
    out.clear();
    if (nodes_.empty() || !(radius > 0.0)) return;
    const double r2 = radius * radius;

    std::vector<Visit> stack;
    stack.reserve(64);
    stack.push_back({root_, 0.0});
    while (!stack.empty()) {
        const Visit v = stack.back();
        stack.pop_back();
        if (v.plane_sq >= r2) continue; // strict inequality query: boundary excluded
        const Node& nd = nodes_[v.node];
        if (nd.axis < 0) {
            for (std::size_t t = nd.left; t < nd.right; ++t) {
                const std::size_t idx = order_[t];
                if (idx == exclude) continue;
                if (squared_distance(query, cloud_->point(idx)) < r2) out.push_back(idx);
            }
        } else {
            const double diff = query[static_cast<std::size_t>(nd.axis)] - nd.split;
            const double plane = diff * diff;
            const std::size_t near = diff < 0.0 ? nd.left : nd.right;
            const std::size_t far = diff < 0.0 ? nd.right : nd.left;
            stack.push_back({far, plane});
            stack.push_back({near, v.plane_sq});
        }
    }
}

} // namespace mi
