#include "nilcohom/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "nilcohom");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    int code = nilcohom::run(int(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

} // namespace

TEST(Cli, Cohomology) {
    auto r = call({"cohomology", "--model", "iwasawa3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("1\t1\t6\t6\t4\t8\n"), std::string::npos);
    auto pretty = call({"cohomology", "--model", "iwasawa3", "--pretty"});
    EXPECT_EQ(pretty.code, 0);
    EXPECT_NE(pretty.out, r.out);
}

TEST(Cli, Lemma) {
    auto r = call({"lemma", "--model", "torus3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("ddbar_lemma\tholds"), std::string::npos);
    auto iw = call({"lemma", "--model", "iwasawa3"});
    EXPECT_EQ(iw.code, 0);
    EXPECT_NE(iw.out.find("ddbar_lemma\tfails"), std::string::npos);
}

TEST(Cli, Kuranishi) {
    auto r = call({"kuranishi", "--model", "iwasawa3", "--order", "3"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("m=6\n"), std::string::npos);
    EXPECT_NE(r.out.find("top_order=2\n"), std::string::npos);
    EXPECT_NE(r.out.find("obstructed=no\n"), std::string::npos);
}

TEST(Cli, ScanDeterministic) {
    std::vector<std::string> args = {"scan", "--model", "iwasawa3", "--order", "3", "--samples", "5", "--seed", "0"};
    auto a = call(args), b = call(args);
    EXPECT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("semicontinuity=ok\n"), std::string::npos);
    for (auto j : {"(1,0)", "(2,0)", "(2,2)", "(2,3)"}) EXPECT_NE(a.out.find(j), std::string::npos) << j;
    auto other = call({"scan", "--model", "iwasawa3", "--order", "3", "--samples", "5", "--seed", "1"});
    EXPECT_NE(other.out, a.out);
}

TEST(Cli, ExtendAndRefusal) {
    auto r = call({"extend", "--model", "iwasawa3", "--bidegree", "2,3", "--class", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("closed=yes\n"), std::string::npos);
    EXPECT_NE(r.out.find("unique=yes\n"), std::string::npos);
    auto refused = call({"extend", "--model", "iwasawa3", "--bidegree", "2,1"});
    EXPECT_EQ(refused.code, 1);
    EXPECT_EQ(refused.err, "refused: B^{2,2} fails\n");
    auto no_rep = call({"extend", "--model", "iwasawa3", "--bidegree", "1,0", "--class", "3"});
    EXPECT_EQ(no_rep.code, 1);
    EXPECT_EQ(call({"extend", "--model", "iwasawa3", "--bidegree", "2,3", "--class", "4"}).code, 2);
    EXPECT_EQ(call({"extend", "--model", "iwasawa3", "--bidegree", "2"}).code, 2);
}

TEST(Cli, PKahler) {
    auto r = call({"pkahler", "--model", "torus2", "--samples", "2"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("ok=yes\n"), std::string::npos);
    auto iw = call({"pkahler", "--model", "iwasawa3"});
    EXPECT_EQ(iw.code, 1);
    EXPECT_EQ(iw.err, "refused: ddbar-lemma fails\n");
}

TEST(Cli, Identities) {
    auto r = call({"identities", "--model", "kodaira-thurston", "--samples", "20", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, call({"identities", "--model", "kodaira-thurston", "--samples", "20", "--seed", "3"}).out);
    EXPECT_EQ(r.out.find("fail\n"), std::string::npos);
}

TEST(Cli, UsageErrors) {
    EXPECT_EQ(call({}).code, 2);
    EXPECT_EQ(call({"bogus"}).code, 2);
    EXPECT_EQ(call({"cohomology"}).code, 2);
    EXPECT_EQ(call({"cohomology", "--model", "no-such-model"}).code, 2);
    EXPECT_EQ(call({"kuranishi", "--model", "torus1", "--order", "0"}).code, 2);
    EXPECT_EQ(call({"scan", "--model", "torus1", "--samples", "0"}).code, 2);
    EXPECT_EQ(call({"--help"}).code, 0);
}

TEST(Cli, ModelFileAndOut) {
    auto dir = std::filesystem::temp_directory_path() / "nilcohom_cli_test";
    std::filesystem::create_directories(dir);
    auto model = dir / "kt.model";
    std::ofstream(model) << "dim 2\nname kt-file\nd p2 = p1^q1\n";
    auto outp = dir / "out.tsv";
    auto r = call({"cohomology", "--model", model.string(), "--out", outp.string()});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(outp);
    std::stringstream ss;
    ss << in.rdbuf();
    EXPECT_EQ(ss.str(), call({"cohomology", "--model", "kodaira-thurston"}).out);
    std::ofstream(dir / "bad.model") << "dim 2\nd p2 = q1^q2\n";
    EXPECT_EQ(call({"cohomology", "--model", (dir / "bad.model").string()}).code, 2);
    std::filesystem::remove_all(dir);
}
