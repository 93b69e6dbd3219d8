#include "tonguetrace/extract.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <tuple>

namespace tonguetrace {

const char* to_string(ExtractStage stage) {
    switch (stage) {
        case ExtractStage::threshold: return "threshold";
        case ExtractStage::thinning: return "thinning";
        case ExtractStage::filter: return "filter";
        case ExtractStage::extremities: return "extremities";
        case ExtractStage::graph: return "graph";
        case ExtractStage::path: return "path";
    }
    return "unknown";
}

std::vector<PixelPoint> threshold_map(const ProbMap& prob, double t) {
    if (!(t > 0.0 && t < 1.0))
        throw std::invalid_argument("threshold_map: threshold must be inside (0,1)");
    std::vector<PixelPoint> points;
    for (int y = 0; y < prob.height; ++y) {
        const double* row = prob.values.data() + static_cast<std::size_t>(y) * prob.width;
        for (int x = 0; x < prob.width; ++x)
            if (row[x] >= t) points.push_back({x, y});
    }
    return points;
}

BinaryMask points_to_mask(const std::vector<PixelPoint>& points, int width, int height) {
    BinaryMask mask(width, height);
    for (const PixelPoint& p : points) {
        if (!mask.in_bounds(p))
            throw std::out_of_range("points_to_mask: point outside the target grid");
        mask.labels[static_cast<std::size_t>(p.y) * width + p.x] = 1;
    }
    return mask;
}

std::vector<PixelPoint> mask_to_points(const BinaryMask& mask) {
    std::vector<PixelPoint> points;
    for (int y = 0; y < mask.height; ++y)
        for (int x = 0; x < mask.width; ++x)
            if (mask(x, y)) points.push_back({x, y});
    return points;
}

std::vector<PixelPoint> filter_outliers(const std::vector<PixelPoint>& points,
                                        int min_component_size, double rel_component_size) {
    if (points.empty()) throw std::invalid_argument("filter_outliers: empty point set");
    if (min_component_size < 1)
        throw std::invalid_argument("filter_outliers: min_component_size must be >= 1");
    if (!(rel_component_size >= 0.0 && rel_component_size <= 1.0))
        throw std::invalid_argument("filter_outliers: rel_component_size must be in [0,1]");

    std::vector<PixelPoint> sorted(points);
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

    int min_x = sorted[0].x, max_x = sorted[0].x;
    int min_y = sorted[0].y, max_y = sorted[0].y;
    for (const PixelPoint& p : sorted) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int bw = max_x - min_x + 1;
    const int bh = max_y - min_y + 1;
    auto cell = [&](int x, int y) { return static_cast<std::size_t>(y - min_y) * bw + (x - min_x); };

    constexpr std::int32_t kAbsent = -2, kUnlabeled = -1;
    std::vector<std::int32_t> label(static_cast<std::size_t>(bw) * bh, kAbsent);
    for (const PixelPoint& p : sorted) label[cell(p.x, p.y)] = kUnlabeled;

    // 8-connected component labeling, row-major seed order.
    std::vector<std::size_t> comp_size;
    std::vector<std::size_t> stack;
    for (const PixelPoint& seed : sorted) {
        if (label[cell(seed.x, seed.y)] != kUnlabeled) continue;
        const auto id = static_cast<std::int32_t>(comp_size.size());
        std::size_t size = 0;
        stack.push_back(cell(seed.x, seed.y));
        label[stack.back()] = id;
        while (!stack.empty()) {
            const std::size_t c = stack.back();
            stack.pop_back();
            ++size;
            const int x = static_cast<int>(c % bw) + min_x;
            const int y = static_cast<int>(c / bw) + min_y;
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    if (dx == 0 && dy == 0) continue;
                    const int nx = x + dx, ny = y + dy;
                    if (nx < min_x || nx > max_x || ny < min_y || ny > max_y) continue;
                    const std::size_t nc = cell(nx, ny);
                    if (label[nc] == kUnlabeled) {
                        label[nc] = id;
                        stack.push_back(nc);
                    }
                }
        }
        comp_size.push_back(size);
    }

    const std::size_t largest = *std::max_element(comp_size.begin(), comp_size.end());
    const double floor_size =
        std::max(static_cast<double>(min_component_size), rel_component_size * static_cast<double>(largest));

    std::vector<PixelPoint> kept;
    kept.reserve(sorted.size());
    for (const PixelPoint& p : sorted) {
        const std::size_t size = comp_size[label[cell(p.x, p.y)]];
        if (static_cast<double>(size) >= floor_size || size == largest) kept.push_back(p);
    }
    return kept;
}

namespace {

// Deletion table for one Zhang-Suen subiteration. Bit k of the code holds
// neighbour P(k+2) in the classical numbering (P2 = north, then clockwise:
// P3 = NE, P4 = E, P5 = SE, P6 = S, P7 = SW, P8 = W, P9 = NW).
std::array<bool, 256> make_thinning_lut(bool first_subiteration) {
    std::array<bool, 256> del{};
    for (int code = 0; code < 256; ++code) {
        int p[10] = {};
        for (int k = 0; k < 8; ++k) p[k + 2] = (code >> k) & 1;
        int neighbours = 0;
        for (int k = 2; k <= 9; ++k) neighbours += p[k];
        int transitions = 0;
        for (int k = 2; k <= 9; ++k)
            if (p[k] == 0 && p[k == 9 ? 2 : k + 1] == 1) ++transitions;
        const bool directional = first_subiteration
                                     ? p[2] * p[4] * p[6] == 0 && p[4] * p[6] * p[8] == 0
                                     : p[2] * p[4] * p[8] == 0 && p[2] * p[6] * p[8] == 0;
        del[code] = neighbours >= 2 && neighbours <= 6 && transitions == 1 && directional;
    }
    return del;
}

bool thinning_pass(BinaryMask& mask, const std::array<bool, 256>& lut) {
    const int w = mask.width, h = mask.height;
    auto get = [&](int x, int y) -> int {
        return (x >= 0 && x < w && y >= 0 && y < h) ? mask(x, y) : 0;
    };
    std::vector<std::size_t> doomed;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!mask(x, y)) continue;
            const int code = get(x, y - 1) | get(x + 1, y - 1) << 1 | get(x + 1, y) << 2 |
                             get(x + 1, y + 1) << 3 | get(x, y + 1) << 4 | get(x - 1, y + 1) << 5 |
                             get(x - 1, y) << 6 | get(x - 1, y - 1) << 7;
            if (lut[code]) doomed.push_back(static_cast<std::size_t>(y) * w + x);
        }
    for (std::size_t i : doomed) mask.labels[i] = 0;
    return !doomed.empty();
}

} // namespace

BinaryMask thin(const BinaryMask& mask) {
    static const std::array<bool, 256> lut1 = make_thinning_lut(true);
    static const std::array<bool, 256> lut2 = make_thinning_lut(false);
    BinaryMask out = mask;
    while (true) {
        const bool c1 = thinning_pass(out, lut1);
        const bool c2 = thinning_pass(out, lut2);
        if (!c1 && !c2) break;
    }
    return out;
}

std::pair<PixelPoint, PixelPoint> find_extremities(const std::vector<PixelPoint>& points) {
    if (points.size() < 2)
        throw std::invalid_argument("find_extremities: need at least 2 points");

    double gx = 0.0, gy = 0.0;
    for (const PixelPoint& p : points) {
        gx += p.x;
        gy += p.y;
    }
    gx /= static_cast<double>(points.size());
    gy /= static_cast<double>(points.size());

    struct Angular {
        double theta;
        PixelPoint p;
    };
    std::vector<Angular> sweep;
    sweep.reserve(points.size());
    for (const PixelPoint& p : points) {
        const double dx = p.x - gx, dy = p.y - gy;
        if (dx == 0.0 && dy == 0.0) continue; // points at the gravity center carry no angle
        sweep.push_back({std::atan2(dy, dx), p});
    }
    if (sweep.size() < 2)
        throw std::invalid_argument("find_extremities: degenerate geometry, points coincide with the gravity center");

    std::sort(sweep.begin(), sweep.end(), [](const Angular& a, const Angular& b) {
        return a.theta != b.theta ? a.theta < b.theta : a.p < b.p;
    });

    constexpr double kTwoPi = 2.0 * std::numbers::pi;
    std::size_t best = 0;
    double best_gap = -1.0;
    for (std::size_t i = 0; i < sweep.size(); ++i) {
        const std::size_t j = (i + 1) % sweep.size();
        const double gap = sweep[j].theta - sweep[i].theta + (j == 0 ? kTwoPi : 0.0);
        if (gap > best_gap) {
            best_gap = gap;
            best = i;
        }
    }
    const Angular& lo = sweep[best];
    const Angular& hi = sweep[(best + 1) % sweep.size()];
    return lo.theta <= hi.theta ? std::make_pair(lo.p, hi.p) : std::make_pair(hi.p, lo.p);
}

PointGraph build_graph(const std::vector<PixelPoint>& points, PixelPoint e1, PixelPoint e2,
                       const ExtractConfig& config) {
    PointGraph graph;
    graph.nodes = points;
    std::sort(graph.nodes.begin(), graph.nodes.end());
    graph.nodes.erase(std::unique(graph.nodes.begin(), graph.nodes.end()), graph.nodes.end());

    if (!std::binary_search(graph.nodes.begin(), graph.nodes.end(), e1) ||
        !std::binary_search(graph.nodes.begin(), graph.nodes.end(), e2))
        throw std::invalid_argument("build_graph: extremities must belong to the point set");

    const double radius = config.connection_radius_override ? *config.connection_radius_override
                                                            : dist(e1, e2) - 1.0;
    if (!(radius > 0.0))
        throw std::invalid_argument("build_graph: connection radius is not positive (degenerate extremities)");
    const double radius_sq = radius * radius;

    // Spatial binning with cell size >= radius: all pairs closer than the
    // radius live in the 3x3 cell neighbourhood.
    const auto n = static_cast<std::int32_t>(graph.nodes.size());
    int min_x = graph.nodes[0].x, min_y = graph.nodes[0].y;
    int max_x = min_x, max_y = min_y;
    for (const PixelPoint& p : graph.nodes) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const int cell = std::max(1, static_cast<int>(std::ceil(radius)));
    const int gw = (max_x - min_x) / cell + 1;
    const int gh = (max_y - min_y) / cell + 1;
    std::vector<std::vector<std::int32_t>> bins(static_cast<std::size_t>(gw) * gh);
    for (std::int32_t i = 0; i < n; ++i) {
        const PixelPoint& p = graph.nodes[i];
        bins[static_cast<std::size_t>((p.y - min_y) / cell) * gw + (p.x - min_x) / cell].push_back(i);
    }

    for (std::int32_t i = 0; i < n; ++i) {
        const PixelPoint& p = graph.nodes[i];
        const int cx = (p.x - min_x) / cell, cy = (p.y - min_y) / cell;
        for (int dy = -1; dy <= 1; ++dy) {
            if (cy + dy < 0 || cy + dy >= gh) continue;
            for (int dx = -1; dx <= 1; ++dx) {
                if (cx + dx < 0 || cx + dx >= gw) continue;
                for (std::int32_t j : bins[static_cast<std::size_t>(cy + dy) * gw + (cx + dx)]) {
                    if (j <= i) continue;
                    const auto sq = static_cast<double>(sq_dist(p, graph.nodes[j]));
                    if (sq < radius_sq) graph.edges.push_back({i, j, sq});
                }
            }
        }
    }
    return graph;
}

std::vector<PixelPoint> shortest_path(const PointGraph& graph, PixelPoint e1, PixelPoint e2) {
    const auto n = static_cast<std::int32_t>(graph.nodes.size());
    std::int32_t src = -1, dst = -1;
    for (std::int32_t i = 0; i < n; ++i) {
        if (graph.nodes[i] == e1) src = i;
        if (graph.nodes[i] == e2) dst = i;
    }
    if (src < 0 || dst < 0)
        throw std::invalid_argument("shortest_path: endpoint is not a graph node");
    if (src == dst) return {e1};

    // Compressed adjacency; every undirected edge contributes both directions.
    std::vector<std::int32_t> degree(n, 0);
    for (const PointGraph::Edge& e : graph.edges) {
        ++degree[e.a];
        ++degree[e.b];
    }
    std::vector<std::size_t> offset(n + 1, 0);
    for (std::int32_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + degree[i];
    std::vector<std::int32_t> adj_node(offset[n]);
    std::vector<double> adj_cost(offset[n]);
    {
        std::vector<std::size_t> fill(offset.begin(), offset.end() - 1);
        for (const PointGraph::Edge& e : graph.edges) {
            adj_node[fill[e.a]] = e.b;
            adj_cost[fill[e.a]++] = e.cost;
            adj_node[fill[e.b]] = e.a;
            adj_cost[fill[e.b]++] = e.cost;
        }
    }

    // Dijkstra keyed by (cost, hops, predecessor index): the composite key
    // makes tie-breaking total, so equal-cost graphs yield one fixed path.
    constexpr double kInf = std::numeric_limits<double>::infinity();
    std::vector<double> cost(n, kInf);
    std::vector<std::int32_t> hops(n, std::numeric_limits<std::int32_t>::max());
    std::vector<std::int32_t> pred(n, -1);
    using HeapItem = std::tuple<double, std::int32_t, std::int32_t>; // cost, hops, node
    std::priority_queue<HeapItem, std::vector<HeapItem>, std::greater<>> heap;
    cost[src] = 0.0;
    hops[src] = 0;
    pred[src] = src;
    heap.push({0.0, 0, src});

    while (!heap.empty()) {
        const auto [d, h, u] = heap.top();
        heap.pop();
        if (d != cost[u] || h != hops[u]) continue; // stale entry
        for (std::size_t k = offset[u]; k < offset[u + 1]; ++k) {
            const std::int32_t v = adj_node[k];
            const double cand_cost = d + adj_cost[k];
            const std::int32_t cand_hops = h + 1;
            if (cand_cost < cost[v] || (cand_cost == cost[v] && cand_hops < hops[v])) {
                cost[v] = cand_cost;
                hops[v] = cand_hops;
                pred[v] = u;
                heap.push({cand_cost, cand_hops, v});
            } else if (cand_cost == cost[v] && cand_hops == hops[v] && u < pred[v]) {
                pred[v] = u; // same cost and length: keep the lexicographically smaller route
            }
        }
    }

    if (pred[dst] < 0)
        throw ExtractError(ExtractStage::path, "extremities lie in different graph components");

    std::vector<PixelPoint> path;
    for (std::int32_t v = dst; v != src; v = pred[v]) path.push_back(graph.nodes[v]);
    path.push_back(graph.nodes[src]);
    std::reverse(path.begin(), path.end());
    return path;
}

Contour extract_contour(const ProbMap& prob, const ExtractConfig& config) {
    if (!(config.threshold > 0.0 && config.threshold < 1.0))
        throw std::invalid_argument("extract_contour: threshold must be inside (0,1)");

    std::vector<PixelPoint> points = threshold_map(prob, config.threshold);
    if (config.enable_thinning && !points.empty())
        points = mask_to_points(thin(points_to_mask(points, prob.width, prob.height)));
    if (points.empty())
        throw ExtractError(ExtractStage::filter, "no pixels at or above the decision threshold");

    points = filter_outliers(points, config.min_component_size, config.rel_component_size);

    std::pair<PixelPoint, PixelPoint> ends;
    try {
        ends = find_extremities(points);
    } catch (const std::invalid_argument& e) {
        throw ExtractError(ExtractStage::extremities, e.what());
    }

    PointGraph graph;
    try {
        graph = build_graph(points, ends.first, ends.second, config);
    } catch (const std::invalid_argument& e) {
        throw ExtractError(ExtractStage::graph, e.what());
    }

    Contour contour{shortest_path(graph, ends.first, ends.second)};
    contour.validate();
    return contour;
}

} // namespace tonguetrace
