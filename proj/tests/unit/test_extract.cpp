#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>

#include "support/oracles.hpp"
#include "tonguetrace/extract.hpp"
#include "tonguetrace/metrics.hpp"
#include "tonguetrace/rasterize.hpp"
#include "tonguetrace/rng.hpp"

using namespace tonguetrace;

namespace {

std::vector<PixelPoint> arc_points(double cx, double cy, double radius, double start_deg,
                                   double span_deg, double step_deg) {
    std::vector<PixelPoint> pts;
    for (double a = start_deg; a <= start_deg + span_deg + 1e-9; a += step_deg) {
        const double rad = a * std::numbers::pi / 180.0;
        const PixelPoint p{static_cast<int>(std::lround(cx + radius * std::cos(rad))),
                           static_cast<int>(std::lround(cy + radius * std::sin(rad)))};
        if (pts.empty() || !(pts.back() == p)) pts.push_back(p);
    }
    return pts;
}

} // namespace

TEST_CASE("threshold_map keeps pixels at or above the threshold") {
    const ProbMap map(3, 1, {0.39, 0.40, 0.41});
    CHECK((threshold_map(map, 0.4) == std::vector<PixelPoint>{{1, 0}, {2, 0}}));
    CHECK(threshold_map(ProbMap(2, 2, 0.0), 0.4).empty());
    CHECK(threshold_map(ProbMap(2, 2, 1.0), 0.4).size() == 4);
    CHECK_THROWS_AS(threshold_map(map, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(threshold_map(map, 1.0), std::invalid_argument);
}

TEST_CASE("filter_outliers drops small components by the size rule") {
    // 50-pixel chain plus an isolated speckle
    std::vector<PixelPoint> points;
    for (int x = 0; x < 50; ++x) points.push_back({x, 10});
    points.push_back({25, 40});
    const auto kept = filter_outliers(points);
    CHECK(kept.size() == 50);
    CHECK(std::find(kept.begin(), kept.end(), PixelPoint{25, 40}) == kept.end());

    // single component passes through untouched
    std::vector<PixelPoint> chain(points.begin(), points.begin() + 50);
    CHECK(filter_outliers(chain) == chain);

    // 100 + 4: the 4-pixel cluster is below max(3, 0.05*100) = 5
    std::vector<PixelPoint> two;
    for (int x = 0; x < 100; ++x) two.push_back({x, 0});
    for (int x = 0; x < 4; ++x) two.push_back({x, 50});
    CHECK(filter_outliers(two).size() == 100);

    CHECK_THROWS_AS(filter_outliers({}), std::invalid_argument);
}

TEST_CASE("filter_outliers keeps the largest component even below the absolute floor") {
    const std::vector<PixelPoint> tiny{{0, 0}, {1, 0}};
    CHECK(filter_outliers(tiny) == tiny);
}

TEST_CASE("thinning leaves 1-pixel lines alone and collapses blocks") {
    BinaryMask line(10, 3);
    for (int x = 1; x < 9; ++x) line.set({x, 1}, 1);
    CHECK(thin(line) == line);

    BinaryMask block(5, 5);
    for (int y = 1; y <= 3; ++y)
        for (int x = 1; x <= 3; ++x) block.set({x, y}, 1);
    const BinaryMask thinned = thin(block);
    CHECK(thinned == oracles::zhang_suen_reference(block));
    int ones = 0;
    for (auto v : thinned.labels) ones += v;
    CHECK(ones == 1); // a solid 3x3 square reduces to its center

    const BinaryMask empty(4, 4);
    CHECK(thin(empty) == empty);
}

TEST_CASE("thinning matches the rule-table reference on random masks") {
    SplitMix64 rng(31);
    for (int trial = 0; trial < 40; ++trial) {
        BinaryMask mask(24, 24);
        // random blobs: a few filled rectangles
        for (int b = 0; b < 3; ++b) {
            const int x0 = static_cast<int>(rng.next_below(16));
            const int y0 = static_cast<int>(rng.next_below(16));
            const int w = 2 + static_cast<int>(rng.next_below(7));
            const int h = 2 + static_cast<int>(rng.next_below(7));
            for (int y = y0; y < std::min(24, y0 + h); ++y)
                for (int x = x0; x < std::min(24, x0 + w); ++x) mask.set({x, y}, 1);
        }
        const BinaryMask ours = thin(mask);
        CHECK(ours == oracles::zhang_suen_reference(mask));
        CHECK(thin(ours) == ours); // idempotent on its own output
        // output pixels are a subset of input pixels
        for (std::size_t i = 0; i < mask.labels.size(); ++i)
            if (ours.labels[i]) CHECK(mask.labels[i] == 1);
    }
}

TEST_CASE("find_extremities returns the endpoints of an arc") {
    const auto pts = arc_points(50, 50, 20, -45, 270, 5);
    auto [a, b] = find_extremities(pts);
    const std::set<PixelPoint> expected{pts.front(), pts.back()};
    CHECK(expected.count(a) == 1);
    CHECK(expected.count(b) == 1);
    CHECK(!(a == b));
}

TEST_CASE("find_extremities on two points returns them") {
    auto [a, b] = find_extremities({{3, 4}, {10, 4}});
    const std::set<PixelPoint> expected{{3, 4}, {10, 4}};
    CHECK(expected.count(a) == 1);
    CHECK(expected.count(b) == 1);
}

TEST_CASE("find_extremities on a ring with one point removed returns its neighbours") {
    std::vector<PixelPoint> ring;
    const int n = 60;
    for (int k = 0; k < n; ++k) {
        const double rad = 2.0 * std::numbers::pi * k / n;
        const PixelPoint p{static_cast<int>(std::lround(64 + 40 * std::cos(rad))),
                           static_cast<int>(std::lround(64 + 40 * std::sin(rad)))};
        if (ring.empty() || !(ring.back() == p)) ring.push_back(p);
    }
    const std::size_t removed = 17;
    const PixelPoint before = ring[removed - 1];
    const PixelPoint after = ring[removed + 1];
    std::vector<PixelPoint> pts = ring;
    pts.erase(pts.begin() + removed);
    auto [a, b] = find_extremities(pts);
    const std::set<PixelPoint> expected{before, after};
    CHECK(expected.count(a) == 1);
    CHECK(expected.count(b) == 1);
}

TEST_CASE("find_extremities rejects degenerate inputs") {
    CHECK_THROWS_AS(find_extremities({{1, 1}}), std::invalid_argument);
    // duplicates collapsing onto the gravity center
    CHECK_THROWS_AS(find_extremities({{3, 3}, {3, 3}}), std::invalid_argument);
}

TEST_CASE("returned pair bounds the maximum angular gap") {
    SplitMix64 rng(32);
    for (int trial = 0; trial < 50; ++trial) {
        const auto pts = oracles::random_points(rng, 3 + static_cast<int>(rng.next_below(20)), 0, 40);
        auto [a, b] = find_extremities(pts);
        // recompute the sweep directly
        double gx = 0, gy = 0;
        for (const auto& p : pts) {
            gx += p.x;
            gy += p.y;
        }
        gx /= pts.size();
        gy /= pts.size();
        std::vector<std::pair<double, PixelPoint>> sweep;
        for (const auto& p : pts)
            if (p.x != gx || p.y != gy) sweep.push_back({std::atan2(p.y - gy, p.x - gx), p});
        std::sort(sweep.begin(), sweep.end(), [](const auto& lhs, const auto& rhs) {
            return lhs.first != rhs.first ? lhs.first < rhs.first : lhs.second < rhs.second;
        });
        double best = -1;
        std::pair<PixelPoint, PixelPoint> pair;
        for (std::size_t i = 0; i < sweep.size(); ++i) {
            const std::size_t j = (i + 1) % sweep.size();
            double gap = sweep[j].first - sweep[i].first;
            if (j == 0) gap += 2 * std::numbers::pi;
            if (gap > best) {
                best = gap;
                pair = {sweep[i].second, sweep[j].second};
            }
        }
        const std::set<PixelPoint> expected{pair.first, pair.second};
        CHECK(expected.count(a) == 1);
        CHECK(expected.count(b) == 1);
    }
}

TEST_CASE("build_graph follows the radius rule") {
    const std::vector<PixelPoint> pts{{0, 0}, {1, 0}, {5, 0}};
    const PointGraph g = build_graph(pts, {0, 0}, {5, 0});
    // radius = 5 - 1 = 4; pair distances are 1, 4 and 5, and the rule is
    // strictly-less-than, so only the unit pair connects
    REQUIRE(g.edges.size() == 1);
    CHECK(g.edges[0].a == 0);
    CHECK(g.edges[0].b == 1);
    CHECK(g.edges[0].cost == 1.0);

    // with an override admitting both short pairs
    ExtractConfig cfg;
    cfg.connection_radius_override = 4.5;
    const PointGraph g2 = build_graph(pts, {0, 0}, {5, 0}, cfg);
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : g2.edges) pairs.insert({e.a, e.b});
    CHECK((pairs == std::set<std::pair<int, int>>{{0, 1}, {1, 2}}));
    for (const auto& e : g2.edges)
        CHECK(e.cost == static_cast<double>(sq_dist(g2.nodes[e.a], g2.nodes[e.b])));
}

TEST_CASE("build_graph can produce a disconnected graph") {
    ExtractConfig cfg;
    cfg.connection_radius_override = 2.0;
    const PointGraph g = build_graph({{0, 0}, {3, 0}}, {0, 0}, {3, 0}, cfg);
    CHECK(g.edges.empty());
    CHECK_THROWS_AS(shortest_path(g, {0, 0}, {3, 0}), ExtractError);
}

TEST_CASE("build_graph validates extremities") {
    CHECK_THROWS_AS(build_graph({{0, 0}, {1, 0}}, {0, 0}, {9, 9}), std::invalid_argument);
    // adjacent extremities give radius 0
    CHECK_THROWS_AS(build_graph({{0, 0}, {1, 0}}, {0, 0}, {1, 0}), std::invalid_argument);
}

TEST_CASE("graph edges carry squared distances and no self loops") {
    SplitMix64 rng(33);
    const auto pts = oracles::random_points(rng, 30, 0, 30);
    ExtractConfig cfg;
    cfg.connection_radius_override = 12.0;
    const PointGraph g = build_graph(pts, pts[0], pts[1], cfg);
    for (const auto& e : g.edges) {
        CHECK(e.a < e.b);
        CHECK(e.cost > 0.0);
        CHECK(e.cost == static_cast<double>(sq_dist(g.nodes[e.a], g.nodes[e.b])));
        CHECK(std::sqrt(e.cost) < 12.0);
    }
    // binning misses nothing: count pairs directly
    std::size_t expected = 0;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
        for (std::size_t j = i + 1; j < g.nodes.size(); ++j)
            if (dist(g.nodes[i], g.nodes[j]) < 12.0) ++expected;
    CHECK(g.edges.size() == expected);
}

TEST_CASE("quadratic cost prefers many short hops") {
    const std::vector<PixelPoint> pts{{0, 0}, {1, 0}, {2, 0}};
    ExtractConfig cfg;
    cfg.connection_radius_override = 10.0;
    const PointGraph g = build_graph(pts, {0, 0}, {2, 0}, cfg);
    const auto path = shortest_path(g, {0, 0}, {2, 0});
    CHECK((path == std::vector<PixelPoint>{{0, 0}, {1, 0}, {2, 0}}));
}

TEST_CASE("shortest_path handles the trivial and error cases") {
    const std::vector<PixelPoint> pts{{0, 0}, {1, 0}};
    ExtractConfig cfg;
    cfg.connection_radius_override = 5.0;
    const PointGraph g = build_graph(pts, {0, 0}, {1, 0}, cfg);
    CHECK((shortest_path(g, {0, 0}, {0, 0}) == std::vector<PixelPoint>{{0, 0}}));
    CHECK_THROWS_AS(shortest_path(g, {0, 0}, {7, 7}), std::invalid_argument);
}

TEST_CASE("shortest_path matches exhaustive enumeration on small graphs") {
    SplitMix64 rng(34);
    for (int trial = 0; trial < 60; ++trial) {
        const PointGraph g = oracles::random_graph(rng, 9);
        const int src = 0;
        const int dst = static_cast<int>(g.nodes.size()) - 1;
        const auto expected = oracles::brute_min_path_cost(g, src, dst);
        if (!expected) {
            CHECK_THROWS_AS(shortest_path(g, g.nodes[src], g.nodes[dst]), ExtractError);
            continue;
        }
        const auto path = shortest_path(g, g.nodes[src], g.nodes[dst]);
        double cost = 0.0;
        for (std::size_t i = 1; i < path.size(); ++i)
            cost += static_cast<double>(sq_dist(path[i - 1], path[i]));
        CHECK(cost == doctest::Approx(*expected).epsilon(1e-12));
    }
}

TEST_CASE("collinear equally spaced points are visited in order") {
    std::vector<PixelPoint> pts;
    for (int x = 0; x < 12; ++x) pts.push_back({x, 5});
    ExtractConfig cfg;
    cfg.connection_radius_override = 100.0;
    const PointGraph g = build_graph(pts, {0, 5}, {11, 5}, cfg);
    CHECK(shortest_path(g, {0, 5}, {11, 5}) == pts);
}

TEST_CASE("extract_contour recovers a clean synthetic curve") {
    const auto pts = arc_points(64, 64, 40, 10, 200, 1.2);
    Contour truth{pts};
    truth.validate();
    const BinaryMask mask = rasterize_contour(truth, 128, 128);
    std::vector<double> values(mask.labels.begin(), mask.labels.end());
    const ProbMap prob(128, 128, std::move(values));

    const Contour out = extract_contour(prob);
    CHECK(msd(out, truth, 1.0) <= 0.5);

    // every output point sits on a thresholded pixel
    for (const PixelPoint& p : out.points) CHECK(prob.at(p) >= 0.4);
}

TEST_CASE("extract_contour tags failures with the stage") {
    try {
        extract_contour(ProbMap(16, 16, 0.0));
        FAIL("expected ExtractError");
    } catch (const ExtractError& e) {
        CHECK(e.stage() == ExtractStage::filter);
    }
}

TEST_CASE("a dominant component wins over a well-separated blob") {
    // long horizontal curve plus a far small blob that survives nothing
    BinaryMask mask(128, 128);
    for (int x = 5; x < 120; ++x) mask.set({x, 30}, 1);
    for (int y = 100; y < 102; ++y)
        for (int x = 100; x < 102; ++x) mask.set({x, y}, 1);
    std::vector<double> values(mask.labels.begin(), mask.labels.end());
    const Contour out = extract_contour(ProbMap(128, 128, std::move(values)));
    for (const PixelPoint& p : out.points) CHECK(p.y == 30);
}

TEST_CASE("extraction output is deterministic") {
    SplitMix64 rng(35);
    std::vector<double> values(64 * 64, 0.0);
    for (int x = 4; x < 60; ++x) {
        values[static_cast<std::size_t>(20) * 64 + x] = 1.0;
        values[static_cast<std::size_t>(21) * 64 + x] = 1.0; // a thick band forces tie-breaking
    }
    for (int i = 0; i < 200; ++i)
        values[rng.next_below(64 * 64)] = std::min(1.0, values[rng.next_below(64 * 64)] + 0.3);
    const ProbMap prob(64, 64, values);
    const Contour first = extract_contour(prob);
    for (int i = 0; i < 5; ++i) CHECK(extract_contour(prob) == first);
}

TEST_CASE("small gaps are bridged when the radius admits the jump") {
    const auto pts = arc_points(64, 64, 45, 200, 140, 1.2);
    Contour truth{pts};
    const BinaryMask mask = rasterize_contour(truth, 128, 128);
    const auto chain = mask_to_points(mask);

    // knock out two interior pixels
    BinaryMask holed = mask;
    const PixelPoint g1 = chain[chain.size() / 3];
    const PixelPoint g2 = chain[2 * chain.size() / 3];
    holed.set(g1, 0);
    holed.set(g2, 0);

    std::vector<double> values(holed.labels.begin(), holed.labels.end());
    const Contour out = extract_contour(ProbMap(128, 128, std::move(values)));

    // the path passes within a pixel of each removed location
    for (const PixelPoint& hole : {g1, g2}) {
        double best = 1e9;
        for (const PixelPoint& p : out.points) best = std::min(best, dist(p, hole));
        CHECK(best <= 1.5);
    }
    CHECK(msd(out, truth, 1.0) <= 0.5);
}
