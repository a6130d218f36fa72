#include "glc3d/dataset.hpp"
#include "glc3d/error.hpp"
#include "glc3d/number_format.hpp"
#include "test_util.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

using namespace glc3d;
using glc3d::test::csv;

TEST(Dataset, IrisShape) {
    const Dataset d = load_csv_file(GLC3D_IRIS);
    EXPECT_EQ(d.size(), 150u);
    EXPECT_EQ(d.dimension(), 4u);
    ASSERT_EQ(d.class_labels().size(), 3u);
    EXPECT_EQ(d.class_labels()[0], "Setosa");
    EXPECT_FALSE(d.is_normalized());
}

TEST(Dataset, SingleRow) {
    const Dataset d = csv("a,b,class\n1,2,X\n");
    ASSERT_EQ(d.size(), 1u);
    EXPECT_EQ(d.at(0).values, (std::vector<double>{1.0, 2.0}));
    EXPECT_EQ(d.at(0).class_label, "X");
    EXPECT_EQ(d.attribute_names(), (std::vector<std::string>{"a", "b"}));
}

TEST(Dataset, NonNumericCellNamesRowAndColumn) {
    try {
        (void)csv("a,b,class\n1,2,X\n3,abc,Y\n");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.row(), 3u);
        EXPECT_EQ(e.column(), 2u);
        EXPECT_NE(std::string(e.what()).find("'b'"), std::string::npos);
    }
}

TEST(Dataset, ErrorsOnBadInput) {
    EXPECT_THROW((void)csv(""), ValidationError);
    EXPECT_THROW((void)csv("a,b,class\n"), ValidationError);
    EXPECT_THROW((void)csv("a,b,label\n1,2,X\n"), ConfigurationError);
    EXPECT_THROW((void)csv("a,b,class\n1,2\n"), ParseError);
    EXPECT_THROW((void)csv("a,b,class\n1,\"2,X\n"), ParseError);
    EXPECT_THROW((void)load_csv_file("/nonexistent/file.csv"), IoError);
}

TEST(Dataset, QuotedFieldsCrlfAndCustomDelimiter) {
    const Dataset d = csv("\"a\";b;kind\r\n1;2;\"x;y\"\r\n\r\n3;4;z\r\n", {"kind", ';', std::nullopt});
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.at(0).class_label, "x;y");
    EXPECT_EQ(d.at(1).values[1], 4.0);
}

TEST(Dataset, ClassColumnAnywhereAndTarget) {
    const Dataset d = csv("class,a,y,b\nP,1,10,2\nQ,3,20,4\n", {"class", ',', std::string("y")});
    EXPECT_EQ(d.dimension(), 2u);
    ASSERT_TRUE(d.has_target());
    EXPECT_EQ(*d.at(1).target, 20.0);
    EXPECT_EQ(d.at(1).values, (std::vector<double>{3.0, 4.0}));
}

TEST(Dataset, ConstructorChecksInvariants) {
    CaseRecord a{0, {0.5, 0.5}, "A", 0, std::nullopt};
    CaseRecord b{1, {0.5}, "A", 0, std::nullopt};
    EXPECT_THROW(Dataset({"x", "y"}, {a, b}), ValidationError);
    CaseRecord out{0, {1.5, 0.5}, "A", 0, std::nullopt};
    EXPECT_THROW(Dataset({"x", "y"}, {out}, std::vector<AttributeRange>{{0, 1}, {0, 1}}), ValidationError);
}

TEST(Normalize, MinMax) {
    const Dataset d = normalize(csv("a,b,class\n2,7,X\n4,7,X\n6,7,Y\n"));
    EXPECT_TRUE(d.is_normalized());
    EXPECT_EQ(d.at(0).values[0], 0.0);
    EXPECT_EQ(d.at(1).values[0], 0.5);
    EXPECT_EQ(d.at(2).values[0], 1.0);
    for (const auto& c : d.cases()) {
        EXPECT_EQ(c.values[1], 0.5);
    }
}

TEST(Normalize, IrisSepalLengthHasOneZeroAndOneOne) {
    const Dataset d = test::iris();
    const auto column = d.columns().column(0);
    EXPECT_EQ(std::count(column.begin(), column.end(), 0.0), 1);
    EXPECT_EQ(std::count(column.begin(), column.end(), 1.0), 1);
    for (std::size_t i = 0; i < d.dimension(); ++i) {
        for (double v : d.columns().column(i)) {
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 1.0);
        }
    }
    // Oracle: min/max per attribute recomputed outside the library.
    const std::vector<AttributeRange> expected{{4.3, 7.9}, {2.0, 4.4}, {1.0, 6.9}, {0.1, 2.5}};
    EXPECT_EQ(*d.normalization(), expected);
}

TEST(Normalize, DenormalizeRoundTrip) {
    const Dataset raw = load_csv_file(GLC3D_IRIS);
    const Dataset back = denormalize(normalize(raw));
    for (std::size_t j = 0; j < raw.size(); ++j) {
        for (std::size_t i = 0; i < raw.dimension(); ++i) {
            EXPECT_NEAR(back.at(j).values[i], raw.at(j).values[i], 1e-12);
        }
    }
}

TEST(Normalize, Idempotent) {
    const Dataset once = test::iris();
    const Dataset twice = normalize(once);
    for (std::size_t j = 0; j < once.size(); ++j) {
        EXPECT_EQ(once.at(j).values, twice.at(j).values);
    }
}

TEST(Padding, Examples) {
    CaseRecord six{0, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6}, "A", 0, std::nullopt};
    EXPECT_EQ(pad_to_multiple(six, 3), six);

    CaseRecord four{0, {0.1, 0.4, 0.5, 0.7}, "A", 0, std::nullopt};
    const CaseRecord padded = pad_to_multiple(four, 3);
    EXPECT_EQ(padded.values, (std::vector<double>{0.1, 0.4, 0.5, 0.7, 0.5, 0.7}));
    EXPECT_EQ(padded.padding, 2u);
    EXPECT_EQ(padded.dimension(), 4u);
    EXPECT_EQ(strip_padding(padded), four);

    CaseRecord five{0, {0.1, 0.2, 0.3, 0.4, 0.5}, "A", 0, std::nullopt};
    const CaseRecord p2 = pad_to_multiple(five, 2);
    EXPECT_EQ(p2.values.size(), 6u);
    EXPECT_EQ(p2.values[5], 0.5);

    EXPECT_THROW((void)pad_to_multiple(four, 4), ContractError);
    // Re-padding starts from the unpadded values.
    EXPECT_EQ(pad_to_multiple(padded, 2), four);
}

TEST(WriteCsv, RoundTrip) {
    const Dataset raw = load_csv_file(GLC3D_IRIS);
    std::ostringstream out;
    write_csv(out, raw);
    const Dataset back = csv(out.str());
    ASSERT_EQ(back.size(), raw.size());
    for (std::size_t j = 0; j < raw.size(); ++j) {
        EXPECT_EQ(back.at(j), raw.at(j));
    }
}

TEST(NumberFormat, RoundTripAndStrictness) {
    for (double v : {0.1, 1.0, -2.5e-300, 1.0 / 3.0, 123456789.0}) {
        const std::string s = format_double(v);
        EXPECT_TRUE(s.find('.') != std::string::npos || s.find('e') != std::string::npos) << s;
        EXPECT_EQ(*parse_double(s), v);
    }
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_FALSE(parse_double("1.0x"));
    EXPECT_FALSE(parse_double("nan"));
    EXPECT_FALSE(parse_double(""));
    EXPECT_EQ(*parse_double("+2"), 2.0);
}
