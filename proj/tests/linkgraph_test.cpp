#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "linksom/error.hpp"
#include "linksom/linkgraph.hpp"
#include "support/oracles.hpp"

namespace linksom {
namespace {

TEST(ParseEdgeList, SingleWeightedLink) {
    const LinkGraph g = parse_edge_list("fernand0\tatalaya\t7\n");
    ASSERT_EQ(g.node_count(), 2u);
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.label(0), "fernand0");
    EXPECT_EQ(g.label(1), "atalaya");
    EXPECT_EQ(g.weight(0, 1), 7u);
}

TEST(ParseEdgeList, DuplicateLinesAreSummed) {
    const LinkGraph g = parse_edge_list("a\tb\t3\na\tb\t2");
    ASSERT_EQ(g.edges().size(), 1u);
    EXPECT_EQ(g.weight(0, 1), 5u);
}

TEST(ParseEdgeList, NegativeCountIsRejectedWithLine) {
    try {
        parse_edge_list("a\tb\t-1");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 1u);
    }
}

TEST(ParseEdgeList, MalformedLines) {
    EXPECT_THROW(parse_edge_list("a\tb\t1\na\tb\n"), ParseError);
    EXPECT_THROW(parse_edge_list("a\tb\tx"), ParseError);
    EXPECT_THROW(parse_edge_list("a\tb\t1.5"), ParseError);
    EXPECT_THROW(parse_edge_list("a\tb\t1\t2"), ParseError);
    EXPECT_THROW(parse_edge_list("\tb\t1"), ParseError);
    try {
        parse_edge_list("# header\n\na\tb\t1\nc\td\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 4u);
    }
}

TEST(ParseEdgeList, EmptyInputIsAnError) {
    EXPECT_THROW(parse_edge_list(""), FormatError);
    EXPECT_THROW(parse_edge_list("# only comments\n\n"), FormatError);
}

TEST(ParseEdgeList, CommentsDeclarationsSelfLinksAndOrder) {
    const LinkGraph g = parse_edge_list(
        "# blogs\r\n"
        "pawley\tpawley\t4\r\n"
        "lonely\t\r\n"
        "elda\tpawley\t1\n"
        "with space\telda\t0\n");
    ASSERT_EQ(g.node_count(), 4u);
    EXPECT_EQ(g.labels(), (std::vector<std::string>{"pawley", "lonely", "elda", "with space"}));
    EXPECT_EQ(g.weight(0, 0), 4u);
    EXPECT_EQ(g.weight(2, 0), 1u);
    EXPECT_EQ(g.edges().size(), 3u);
}

TEST(ParseEdgeList, ReserializationIsIdempotent) {
    std::mt19937_64 gen(7);
    for (int trial = 0; trial < 50; ++trial) {
        const LinkGraph g = testing::random_graph(gen, 1 + trial % 12, 0.3);
        const LinkGraph once = parse_edge_list(write_edge_list(g));
        EXPECT_EQ(once, g);
        EXPECT_EQ(write_edge_list(parse_edge_list(write_edge_list(once))), write_edge_list(once));
    }
}

TEST(ExtractVectors, OutgoingAndIncomingOfSingleLink) {
    const LinkGraph g = parse_edge_list("a\tb\t7\n");
    const DataSet out = extract_vectors(g, Direction::Outgoing, Normalization::Raw);
    ASSERT_EQ(out.dimension, 2u);
    EXPECT_EQ(out.records[0].values, (std::vector<double>{0, 7}));
    EXPECT_EQ(out.records[1].values, (std::vector<double>{0, 0}));

    const DataSet in = extract_vectors(g, Direction::Incoming, Normalization::Raw);
    EXPECT_EQ(in.records[0].values, (std::vector<double>{0, 0}));
    EXPECT_EQ(in.records[1].values, (std::vector<double>{7, 0}));
    EXPECT_EQ(in.direction, Direction::Incoming);
}

TEST(ExtractVectors, RelativeL1KeepsSelfLink) {
    const LinkGraph g = parse_edge_list("a\ta\t1\na\tb\t3\n");
    const DataSet d = extract_vectors(g, Direction::Outgoing, Normalization::RelativeL1);
    EXPECT_DOUBLE_EQ(d.records[0].values[0], 0.25);
    EXPECT_DOUBLE_EQ(d.records[0].values[1], 0.75);
    EXPECT_EQ(d.records[1].values, (std::vector<double>{0, 0}));
}

TEST(ExtractVectors, EmptyGraphIsRejected) {
    EXPECT_THROW(extract_vectors(LinkGraph{}, Direction::Outgoing), std::invalid_argument);
}

TEST(ExtractVectors, Properties) {
    std::mt19937_64 gen(11);
    for (int trial = 0; trial < 100; ++trial) {
        const LinkGraph g = testing::random_graph(gen, 1 + trial % 15, 0.25);
        const DataSet out = extract_vectors(g, Direction::Outgoing);
        const DataSet in = extract_vectors(g, Direction::Incoming);
        const DataSet rel = extract_vectors(g, Direction::Outgoing, Normalization::RelativeL1);
        double total = 0.0;
        for (std::size_t i = 0; i < g.node_count(); ++i) {
            EXPECT_EQ(out.records[i].label, g.label(i));
            for (std::size_t j = 0; j < g.node_count(); ++j) {
                EXPECT_EQ(out.records[i].values[j], in.records[j].values[i]);
                total += out.records[i].values[j];
            }
            const double sum = std::accumulate(rel.records[i].values.begin(), rel.records[i].values.end(), 0.0);
            const bool zero = std::all_of(out.records[i].values.begin(), out.records[i].values.end(),
                                          [](double v) { return v == 0.0; });
            if (zero) {
                EXPECT_EQ(sum, 0.0);
            } else {
                EXPECT_NEAR(sum, 1.0, 1e-9);
            }
        }
        EXPECT_EQ(total, static_cast<double>(g.total_weight()));
    }
}

TEST(SompakDat, WriteFormat) {
    DataSet d;
    d.dimension = 2;
    d.records.push_back({"a", {0, 7}});
    EXPECT_EQ(write_sompak_dat(d), "# direction=outgoing normalization=raw\n2\n0 7 a\n");
}

TEST(SompakDat, ParseRecordsAndArityErrors) {
    const DataSet d = parse_sompak_dat("2\n1 2 x\n3 4 y\n");
    ASSERT_EQ(d.size(), 2u);
    EXPECT_EQ(d.records[0].label, "x");
    EXPECT_EQ(d.records[1].label, "y");
    EXPECT_EQ(d.records[1].values, (std::vector<double>{3, 4}));
    EXPECT_EQ(d.direction, Direction::Outgoing);
    EXPECT_EQ(d.normalization, Normalization::Raw);

    try {
        parse_sompak_dat("2\n1 x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_sompak_dat("# nothing\n"), FormatError);
    EXPECT_THROW(parse_sompak_dat("x\n1 2\n"), FormatError);
}

TEST(SompakDat, MetadataAndLabelsWithSpaces) {
    const DataSet d = parse_sompak_dat("# direction=incoming normalization=relative_l1\n3\n0.5 0 0.5 two words\n");
    EXPECT_EQ(d.direction, Direction::Incoming);
    EXPECT_EQ(d.normalization, Normalization::RelativeL1);
    EXPECT_EQ(d.records[0].label, "two words");
}

TEST(SompakDat, RoundTripIsExact) {
    std::mt19937_64 gen(3);
    for (int trial = 0; trial < 30; ++trial) {
        DataSet d = testing::random_dataset(gen, 1 + trial, 1 + trial % 7, -1e3, 1e3);
        d.direction = trial % 2 ? Direction::Incoming : Direction::Outgoing;
        d.normalization = trial % 3 ? Normalization::Raw : Normalization::RelativeL1;
        d.records[0].values[0] = 1.0 / 3.0;
        EXPECT_EQ(parse_sompak_dat(write_sompak_dat(d)), d);
    }
}

}  // namespace
}  // namespace linksom
