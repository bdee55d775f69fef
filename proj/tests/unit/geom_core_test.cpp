#include <cmath>
#include <sstream>

#include <gtest/gtest.h>

#include "awfn/csv.hpp"
#include "awfn/error.hpp"
#include "awfn/geometry.hpp"
#include "awfn/weights.hpp"

using namespace awfn;

namespace {

template <class F>
ErrorCode code_of(F&& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.code();
    }
    ADD_FAILURE() << "no structured error thrown";
    return ErrorCode::Io;
}

}  // namespace

TEST(Distance, HandValues) {
    EXPECT_DOUBLE_EQ(distance(Point{0, 0}, Point{3, 4}), 5.0);
    EXPECT_DOUBLE_EQ(distance(Point{1, 1}, Point{1, 1}), 0.0);
    EXPECT_NEAR(distance(Point{0, 0, 0}, Point{1, 1, 1}), 1.7320508, 1e-7);
}

TEST(Distance, DimensionMismatch) {
    EXPECT_EQ(code_of([] { distance(Point{0, 0}, Point{1, 2, 3}); }), ErrorCode::DimensionMismatch);
}

TEST(WeightedDistance, HandValues) {
    EXPECT_DOUBLE_EQ(weighted_distance(Point{0, 0}, Point{3, 4}, 0.5), 2.5);
    EXPECT_DOUBLE_EQ(weighted_distance(Point{2, 7}, Point{2, 7}, 0.3), 0.0);
    EXPECT_DOUBLE_EQ(weighted_distance(Point{0, 0}, Point{1, 0}, 1.0), 1.0);
    EXPECT_EQ(code_of([] { weighted_distance(Point{0, 0}, Point{1, 0}, 0.0); }), ErrorCode::InvalidWeight);
    EXPECT_EQ(code_of([] { weighted_distance(Point{0, 0}, Point{1, 0}, -2.0); }), ErrorCode::InvalidWeight);
}

TEST(NormalizeWeights, DivideByMax) {
    const std::vector<double> raw{2, 4, 1};
    const auto n = normalize_weights(raw);
    EXPECT_EQ(n.weights, (std::vector<double>{0.5, 1.0, 0.25}));
    EXPECT_EQ(n.p1_index, 1u);
}

TEST(NormalizeWeights, TieAndSingleton) {
    const std::vector<double> tie{4, 4};
    EXPECT_EQ(normalize_weights(tie).weights, (std::vector<double>{1.0, 1.0}));
    EXPECT_EQ(normalize_weights(tie).p1_index, 0u);
    const std::vector<double> one{7};
    EXPECT_EQ(normalize_weights(one).weights, (std::vector<double>{1.0}));
    EXPECT_EQ(normalize_weights(one).p1_index, 0u);
}

TEST(NormalizeWeights, Errors) {
    EXPECT_EQ(code_of([] { normalize_weights({}); }), ErrorCode::EmptyInput);
    const std::vector<double> bad{1, 0};
    EXPECT_EQ(code_of([&] { normalize_weights(bad); }), ErrorCode::InvalidWeight);
    const std::vector<double> nan{1, std::nan("")};
    EXPECT_EQ(code_of([&] { normalize_weights(nan); }), ErrorCode::InvalidWeight);
}

TEST(NormalizeWeights, MaxIsExactlyOne) {
    const std::vector<double> raw{0.1 + 0.2, 0.3, 0.1};
    const auto n = normalize_weights(raw);
    EXPECT_EQ(n.weights[n.p1_index], 1.0);
}

TEST(DirectionalWidth, HandValues) {
    const PointSet p{{0, 0}, {2, 0}, {1, 5}};
    EXPECT_DOUBLE_EQ(directional_width(p, Direction({1, 0})), 2.0);
    EXPECT_DOUBLE_EQ(directional_width(p, Direction({0, 1})), 5.0);
    EXPECT_DOUBLE_EQ(directional_width(PointSet{{3, 3}}, Direction::normalized({1, 1})), 0.0);
    EXPECT_DOUBLE_EQ(directional_width(p, -Direction({1, 0})), 2.0);
}

TEST(DirectionalWidth, Errors) {
    EXPECT_EQ(code_of([] { directional_width(PointSet(2), Direction({1, 0})); }), ErrorCode::EmptyInput);
    EXPECT_EQ(code_of([] { Direction({1, 1}); }), ErrorCode::OutOfRange);
    const PointSet p{{0, 0, 0}};
    EXPECT_EQ(code_of([&] { directional_width(p, Direction({1, 0})); }), ErrorCode::DimensionMismatch);
}

TEST(PointSetTest, RejectsNonFiniteAndMismatch) {
    PointSet s(2);
    EXPECT_EQ(code_of([&] { s.push_back(std::vector<double>{1, 2, 3}); }), ErrorCode::DimensionMismatch);
    EXPECT_ANY_THROW(s.push_back(std::vector<double>{1, INFINITY}));
    s.push_back(std::vector<double>{1, 2});
    EXPECT_EQ(s.size(), 1u);
}

TEST(Csv, RoundTrip) {
    const PointSet p{{0.1, -2.5}, {1e-300, 3}};
    const std::vector<double> w{0.5, 1};
    std::stringstream ss;
    write_point_table(ss, p, w);
    EXPECT_EQ(ss.str().substr(0, 12), "x0,x1,weight");
    const auto t = read_point_table(ss);
    EXPECT_TRUE(t.has_weight_column);
    EXPECT_EQ(t.points, p);
    EXPECT_EQ(t.weights, w);
}

TEST(Csv, UnweightedDefaultsToOne) {
    std::stringstream ss("x0,x1,x2\n1,2,3\n4,5,6\n");
    const auto t = read_point_table(ss);
    EXPECT_FALSE(t.has_weight_column);
    EXPECT_EQ(t.points.dimension(), 3u);
    EXPECT_EQ(t.weights, (std::vector<double>{1, 1}));
}

TEST(Csv, MalformedInput) {
    std::stringstream bad_header("a,b\n1,2\n");
    EXPECT_EQ(code_of([&] { read_point_table(bad_header); }), ErrorCode::Parse);
    std::stringstream short_row("x0,x1\n1\n");
    EXPECT_EQ(code_of([&] { read_point_table(short_row); }), ErrorCode::Parse);
    std::stringstream junk("x0,x1\n1,zz\n");
    EXPECT_EQ(code_of([&] { read_point_table(junk); }), ErrorCode::Parse);
}

TEST(Csv, ParseCoordinates) {
    EXPECT_EQ(parse_coordinates("0.5,-1"), (std::vector<double>{0.5, -1}));
    EXPECT_EQ(format_double(0.1), "0.1");
}
