#ifndef TONGUETRACE_EXTRACT_HPP
#define TONGUETRACE_EXTRACT_HPP

#include <optional>
#include <stdexcept>
#include <utility>

#include "tonguetrace/types.hpp"

namespace tonguetrace {

struct ExtractConfig {
    double threshold = 0.4;
    int min_component_size = 3;
    double rel_component_size = 0.05;
    // Pixel radius for graph edges; when unset, the distance between the two
    // extremities minus 1 pixel is used.
    std::optional<double> connection_radius_override;
    bool enable_thinning = false;
};

enum class ExtractStage { threshold, thinning, filter, extremities, graph, path };

const char* to_string(ExtractStage stage);

// Pipeline failure tagged with the stage that raised it.
class ExtractError : public std::runtime_error {
public:
    ExtractError(ExtractStage stage, const std::string& msg)
        : std::runtime_error(std::string(to_string(stage)) + ": " + msg), stage_(stage) {}
    ExtractStage stage() const { return stage_; }

private:
    ExtractStage stage_;
};

// Candidate contour points connected within a radius; edge cost is the
// squared Euclidean distance. Nodes are kept in row-major order and each
// undirected edge is stored once with a < b.
struct PointGraph {
    struct Edge {
        std::int32_t a;
        std::int32_t b;
        double cost;
    };
    std::vector<PixelPoint> nodes;
    std::vector<Edge> edges;
};

// Pixels with probability >= t, in row-major order. Requires 0 < t < 1.
std::vector<PixelPoint> threshold_map(const ProbMap& prob, double t);

// Drops every 8-connected component smaller than
// max(min_component_size, rel_component_size * largest component size);
// the largest component always survives. Points are returned row-major.
std::vector<PixelPoint> filter_outliers(const std::vector<PixelPoint>& points,
                                        int min_component_size = 3,
                                        double rel_component_size = 0.05);

// Zhang-Suen two-subiteration thinning, iterated to a fixed point.
BinaryMask thin(const BinaryMask& mask);

// The two open-curve endpoints: the adjacent pair, in angular order around
// the gravity center, with the greatest angular gap. The first of the pair
// is the gap boundary with the smaller atan2 angle.
std::pair<PixelPoint, PixelPoint> find_extremities(const std::vector<PixelPoint>& points);

PointGraph build_graph(const std::vector<PixelPoint>& points, PixelPoint e1, PixelPoint e2,
                       const ExtractConfig& config = {});

// Minimum-total-cost path under the squared-distance edge costs. Ties are
// broken by fewer hops, then by lexicographic (row-major) node order, so the
// output is fully deterministic.
std::vector<PixelPoint> shortest_path(const PointGraph& graph, PixelPoint e1, PixelPoint e2);

// Full post-processing chain: threshold -> [thin] -> filter -> extremities
// -> graph -> shortest path. Throws ExtractError tagged with the failing
// stage; every output point has probability >= threshold.
Contour extract_contour(const ProbMap& prob, const ExtractConfig& config = {});

// Point set <-> mask helpers shared by the pipeline and the generators.
BinaryMask points_to_mask(const std::vector<PixelPoint>& points, int width, int height);
std::vector<PixelPoint> mask_to_points(const BinaryMask& mask);

} // namespace tonguetrace

#endif
