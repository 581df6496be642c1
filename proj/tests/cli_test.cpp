#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "linksom/cli.hpp"
#include "linksom/linkgraph.hpp"
#include "linksom/som.hpp"

namespace fs = std::filesystem;

namespace linksom {
namespace {

const fs::path kData = LINKSOM_TEST_DATA_DIR;

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

class CliTest : public ::testing::Test {
protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("linksom_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
        fs::remove_all(dir_);
        fs::create_directories(dir_);
    }
    void TearDown() override { fs::remove_all(dir_); }

    int run(std::vector<std::string> args) {
        args.insert(args.begin(), "linksom");
        out_.str("");
        err_.str("");
        return cli::run(args, out_, err_);
    }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }

    fs::path dir_;
    std::ostringstream out_, err_;
};

TEST_F(CliTest, IngestFixtureHasDimensionThree) {
    ASSERT_EQ(run({"ingest", (kData / "three_lines.tsv").string(), path("g.dat")}), 0) << err_.str();
    const DataSet d = parse_sompak_dat(slurp(path("g.dat")));
    EXPECT_EQ(d.dimension, 3u);
    EXPECT_EQ(d.records[0].label, "fernand0");
    EXPECT_EQ(d.records[0].values, (std::vector<double>{0, 7, 0}));
    const std::string manifest = slurp(path("g.dat.manifest"));
    EXPECT_NE(manifest.find("command=ingest\n"), std::string::npos);
    EXPECT_NE(manifest.find("direction=outgoing\n"), std::string::npos);

    ASSERT_EQ(run({"ingest", (kData / "three_lines.tsv").string(), path("in.dat"), "--direction", "incoming",
                   "--normalization", "relative_l1"}),
              0);
    const DataSet in = parse_sompak_dat(slurp(path("in.dat")));
    EXPECT_EQ(in.direction, Direction::Incoming);
    EXPECT_EQ(in.normalization, Normalization::RelativeL1);
    EXPECT_EQ(in.records[1].values, (std::vector<double>{1, 0, 0}));
}

TEST_F(CliTest, TrainDefaultsAndDeterminism) {
    ASSERT_EQ(run({"ingest", (kData / "three_lines.tsv").string(), path("g.dat")}), 0);
    ASSERT_EQ(run({"train", path("g.dat"), path("a.cod"), "--restarts", "1", "--seed", "42"}), 0) << err_.str();
    ASSERT_EQ(run({"train", path("g.dat"), path("b.cod"), "--restarts", "1", "--seed", "42"}), 0);
    EXPECT_EQ(slurp(path("a.cod")), slurp(path("b.cod")));
    const SomMap m = parse_cod(slurp(path("a.cod")));
    EXPECT_EQ(m.topology(), (GridTopology{9, 7, Lattice::Hexagonal}));
    EXPECT_EQ(m.neighborhood(), Neighborhood::Bubble);
    EXPECT_EQ(slurp(path("a.cod.manifest")), slurp(path("b.cod.manifest")).replace(
                                                     slurp(path("b.cod.manifest")).find("b.cod"), 5, "a.cod"));
    const std::string manifest = slurp(path("a.cod.manifest"));
    for (const char* kv : {"xsize=9\n", "ysize=7\n", "lattice=hexa\n", "neighborhood=bubble\n", "length1=2000\n",
                           "radius1=9\n", "alpha1=0.1\n", "length2=10000\n", "radius2=1\n", "alpha2=0.02\n",
                           "seed=42\n"}) {
        EXPECT_NE(manifest.find(kv), std::string::npos) << kv;
    }
    EXPECT_NE(out_.str().find("steps 12000"), std::string::npos);
}

TEST_F(CliTest, HelpListsDefaults) {
    EXPECT_EQ(run({"train", "--help"}), 0);
    const std::string help = out_.str();
    for (const char* flag : {"--x", "--y", "--lattice", "--neigh", "--len1", "--rad1", "--alpha1", "--len2", "--rad2",
                             "--alpha2", "--restarts", "--seed"}) {
        EXPECT_NE(help.find(flag), std::string::npos) << flag;
    }
    for (const char* def : {"[9]", "[7]", "[hexa]", "[bubble]", "[2000]", "[0.1]", "[10000]", "[0.02]", "[30]"}) {
        EXPECT_NE(help.find(def), std::string::npos) << def;
    }
}

TEST_F(CliTest, ExitCodes) {
    EXPECT_EQ(run({"bogus"}), 1);
    EXPECT_EQ(run({"train", "--nope", "a", "b"}), 1);
    EXPECT_EQ(run({"train", path("missing.dat"), path("x.cod")}), 2);
    EXPECT_EQ(err_.str().find('\n'), err_.str().size() - 1);
    {
        std::ofstream(path("bad.tsv")) << "a\tb\t-3\n";
    }
    EXPECT_EQ(run({"ingest", path("bad.tsv"), path("bad.dat")}), 2);
    EXPECT_NE(err_.str().find("line 1"), std::string::npos);
    ASSERT_EQ(run({"ingest", (kData / "three_lines.tsv").string(), path("g.dat")}), 0);
    EXPECT_EQ(run({"train", path("g.dat"), path("x.cod"), "--alpha1", "1.5"}), 1);
    EXPECT_EQ(run({"train", path("g.dat"), path("x.cod"), "--lattice", "tri"}), 1);
}

TEST_F(CliTest, FullPipeline) {
    const std::string edges = (kData / "three_lines.tsv").string();
    ASSERT_EQ(run({"ingest", edges, path("g.dat")}), 0);
    ASSERT_EQ(run({"train", path("g.dat"), path("m.cod"), "--x", "3", "--y", "2", "--len1", "100", "--len2", "200",
                   "--rad1", "2", "--restarts", "2"}),
              0)
        << err_.str();

    ASSERT_EQ(run({"umatrix", path("m.cod"), path("u.pgm"), "--regions", path("regions.csv")}), 0) << err_.str();
    EXPECT_EQ(slurp(path("u.pgm")).substr(0, 3), "P5\n");
    EXPECT_EQ(slurp(path("regions.csv")).substr(0, 16), "unit,x,y,region\n");
    ASSERT_EQ(run({"umatrix", path("m.cod"), path("u.csv"), "--threshold", "0.5"}), 0);
    EXPECT_NE(slurp(path("u.csv.manifest")).find("threshold=0.5\n"), std::string::npos);
    EXPECT_EQ(run({"umatrix", path("m.cod"), path("u.png")}), 1);
    EXPECT_EQ(run({"umatrix", path("m.cod"), path("u.pgm"), "--threshold", "abc"}), 1);

    ASSERT_EQ(run({"communities", path("m.cod"), path("g.dat"), path("c.csv")}), 0);
    const std::string csv = slurp(path("c.csv"));
    EXPECT_EQ(csv.substr(0, 15), "unit,x,y,label\n");
    for (const char* l : {",fernand0\n", ",atalaya\n", ",pawley\n"}) EXPECT_NE(csv.find(l), std::string::npos);

    ASSERT_EQ(run({"overlay", path("m.cod"), path("g.dat"), path("f.ppm"), "--factions",
                   (kData / "three_factions.tsv").string()}),
              0)
        << err_.str();
    EXPECT_EQ(slurp(path("f.ppm")).substr(0, 3), "P6\n");
    ASSERT_EQ(run({"overlay", path("m.cod"), path("g.dat"), path("k.svg"), "--kmeans", "2"}), 0) << err_.str();
    ASSERT_EQ(run({"overlay", path("m.cod"), path("g.dat"), path("c.pgm"), "--closeness", edges, "--scores",
                   path("scores.csv")}),
              0)
        << err_.str();
    EXPECT_TRUE(fs::exists(path("c.pgm.txt")));
    EXPECT_EQ(slurp(path("scores.csv")).substr(0, 12), "label,score\n");
    EXPECT_EQ(run({"overlay", path("m.cod"), path("g.dat"), path("c.pgm")}), 1);
    EXPECT_EQ(run({"overlay", path("m.cod"), path("g.dat"), path("c.ppm"), "--closeness", edges}), 1);

    ASSERT_EQ(run({"profile", path("g.dat"), path("p.svg"), "--labels", "fernand0,pawley"}), 0) << err_.str();
    EXPECT_NE(slurp(path("p.svg")).find(">pawley</text>"), std::string::npos);
    const std::string first_unit = csv.substr(15, csv.find(',', 15) - 15);
    ASSERT_EQ(run({"profile", path("g.dat"), path("q.svg"), "--unit", first_unit, "--cod", path("m.cod")}), 0)
        << err_.str();
    EXPECT_NE(slurp(path("q.svg")).find("class=\"bar\""), std::string::npos);
    EXPECT_EQ(run({"profile", path("g.dat"), path("p.svg"), "--labels", "ghost"}), 2);
    EXPECT_EQ(run({"profile", path("g.dat"), path("p.svg")}), 1);
}

TEST_F(CliTest, DimensionMismatchIsDataError) {
    ASSERT_EQ(run({"ingest", (kData / "three_lines.tsv").string(), path("g.dat")}), 0);
    {
        std::ofstream(path("m.cod")) << "2 rect 1 1 bubble\n0 0\n";
    }
    EXPECT_EQ(run({"communities", path("m.cod"), path("g.dat"), path("c.csv")}), 2);
}

}  // namespace
}  // namespace linksom
