#include "glc3d/error.hpp"
#include "glc3d/linear_model.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace glc3d;

namespace {

CaseRecord point(std::vector<double> v) {
    return CaseRecord{0, std::move(v), "A", 0, std::nullopt};
}

}  // namespace

TEST(LinearModel, NormalizesByLargestMagnitude) {
    const LinearModel m = LinearModel::from_coefficients({3.0, -1.5});
    EXPECT_EQ(m.normalized_coefficients(), (std::vector<double>{1.0, -0.5}));
    EXPECT_EQ(m.scale(), 3.0);
    EXPECT_EQ(LinearModel::from_coefficients({0.4, 0.2}).normalized_coefficients(), (std::vector<double>{1.0, 0.5}));
    EXPECT_THROW((void)LinearModel::from_coefficients({0.0, 0.0}), ValidationError);
    EXPECT_THROW((void)LinearModel::from_coefficients({}), ValidationError);
    EXPECT_THROW((void)LinearModel::from_coefficients({1.0, NAN}), ValidationError);
}

TEST(LinearModel, Angles) {
    const auto q = angles_from_coefficients(std::vector<double>{1.0, 0.0, -1.0});
    EXPECT_EQ(q[0], 0.0);
    EXPECT_DOUBLE_EQ(q[1], std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(q[2], std::numbers::pi);
    EXPECT_THROW((void)angles_from_coefficients(std::vector<double>{1.5}), ValidationError);

    // a = (0.8, 0.4), x = (0.5, 0.5): cos(Q_i) x_i gives the projections 0.4 and 0.2.
    const auto q2 = angles_from_coefficients(std::vector<double>{0.8, 0.4});
    EXPECT_NEAR(std::cos(q2[0]) * 0.5, 0.4, 1e-12);
    EXPECT_NEAR(std::cos(q2[1]) * 0.5, 0.2, 1e-12);
}

TEST(LinearModel, Evaluate) {
    EXPECT_NEAR(evaluate(std::vector<double>{1.0, 0.5}, std::vector<double>{0.4, 0.4}), 0.6, 1e-12);
    EXPECT_EQ(evaluate(std::vector<double>{0.0, 0.0, 0.0}, std::vector<double>{0.3, 0.2, 0.9}), 0.0);
    EXPECT_THROW((void)evaluate(std::vector<double>{1.0}, std::vector<double>{1.0, 2.0}), ContractError);

    std::mt19937_64 rng(3);
    for (int t = 0; t < 100; ++t) {
        const LinearModel m = test::random_model(rng, 6);
        const CaseRecord x = test::unit_case(rng, 6);
        double reverse = 0.0;
        for (std::size_t i = 6; i-- > 0;) {
            reverse += m.normalized_coefficients()[i] * x.values[i];
        }
        EXPECT_NEAR(evaluate(m, x), reverse, 1e-12);
    }
}

TEST(LinearModel, Contributions) {
    const LinearModel ones = LinearModel::from_coefficients({1, 1, 1, 1});
    const CaseRecord x = point({0.1, 0.4, 0.5, 0.7});
    EXPECT_NEAR(contribution(ones, x, 0), 0.5, 1e-15);
    EXPECT_NEAR(contribution(ones, x, 1), 1.2, 1e-15);
    EXPECT_THROW((void)contribution(ones, x, 2), ContractError);
    EXPECT_EQ(contribution(ones, point({0, 0, 0, 0}), 1), 0.0);

    std::mt19937_64 rng(5);
    for (std::size_t n : {3u, 5u, 6u}) {
        for (int t = 0; t < 100; ++t) {
            const LinearModel m = test::random_model(rng, n);
            const CaseRecord c = test::unit_case(rng, n);
            double sum = 0.0;
            for (std::size_t k = 0; k < pair_count(n); ++k) {
                sum += contribution(m, c, k);
            }
            EXPECT_NEAR(sum, evaluate(m, c), 1e-12);
        }
    }
}

TEST(LinearModel, ClassifyIncludesBoundary) {
    const LinearModel m = LinearModel::from_coefficients({1.0, 0.5});
    const CaseRecord x = point({0.4, 0.4});
    EXPECT_EQ(classify(m.with_threshold(0.5), x), Decision::class1);
    EXPECT_EQ(classify(m.with_threshold(0.7), x), Decision::class2);
    EXPECT_EQ(classify(m.with_threshold(evaluate(m, x)), x), Decision::class1);
    EXPECT_THROW((void)classify(m, x), ContractError);
}

TEST(LinearModel, ScaledThreshold) {
    EXPECT_EQ(scaled_threshold(LinearModel::from_coefficients({3.0, 1.0}), 1.5), 0.5);
    EXPECT_EQ(scaled_threshold(LinearModel::from_coefficients({1.0, -1.0}), 0.3), 0.3);

    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int mismatches = 0;
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> c(4);
        for (auto& v : c) {
            v = u(rng);
        }
        const LinearModel m = LinearModel::from_coefficients(c);
        const CaseRecord x = test::unit_case(rng, 4);
        const double raw_t = u(rng);
        const double big_f = evaluate(c, x.values);
        if (big_f == raw_t) {
            continue;
        }
        const bool raw_class1 = big_f >= raw_t;
        mismatches += raw_class1 != (classify(m.with_threshold(scaled_threshold(m, raw_t)), x) == Decision::class1);
    }
    EXPECT_EQ(mismatches, 0);
}

TEST(LinearModel, TextFormatRoundTrip) {
    const LinearModel m =
        LinearModel::from_coefficients({0.3, -1.7, 0.1, 2.0}).with_threshold(0.125).with_positive_class("Setosa");
    const std::string text = write_model(m);
    EXPECT_EQ(read_model(text), m);
    EXPECT_EQ(write_model(read_model(text)), text);
    EXPECT_EQ(read_model(write_model(LinearModel::from_coefficients({1.0}))), LinearModel::from_coefficients({1.0}));
}

TEST(LinearModel, TextFormatRejectsBadInput) {
    const std::string good = write_model(LinearModel::from_coefficients({1.0, 0.5}));
    EXPECT_THROW((void)read_model(good + "bogus = 1\n"), Error);
    EXPECT_THROW((void)read_model(good + "scale = 1.0\n"), Error);
    std::string tampered = good;
    const std::string stored = "normalized_coefficients = 1.0 0.5";
    tampered.replace(tampered.find(stored), stored.size(), "normalized_coefficients = 1.0 0.6");
    EXPECT_THROW((void)read_model(tampered), ValidationError);
    std::string version = good;
    version.replace(version.find("format_version = 1"), 18, "format_version = 2");
    EXPECT_THROW((void)read_model(version), Error);
    EXPECT_THROW((void)load_model_file("/nonexistent/model.txt"), IoError);
}
