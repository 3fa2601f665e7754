#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "support.hpp"
#include "tdenoise/io.hpp"
#include "tdenoise/synthetic.hpp"

using namespace tdenoise;
namespace fs = std::filesystem;

namespace {

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun run(std::vector<std::string> args) {
  args.insert(args.begin(), "tdenoise");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST(Cli, ArgumentErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"denoise", "--sigma", "10", "a.msi", "b.msi"}).code, 2);
  EXPECT_EQ(run({"denoise", "--method", "bm3d", "--sigma", "10", "a.msi", "b.msi"}).code, 2);
  EXPECT_EQ(run({"add-noise", "--seed", "1", "a.msi", "b.msi"}).code, 2);
}

TEST(Cli, MissingInputExitsThree) {
  test::TempDir dir;
  const CliRun r = run({"metrics", (dir / "nope.msi").string(), (dir / "nope.msi").string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_FALSE(r.err.empty());
  std::ofstream(dir / "bad.msi") << "MSI2 garbage";
  EXPECT_EQ(run({"metrics", (dir / "bad.msi").string(), (dir / "bad.msi").string()}).code, 3);
}

TEST(Cli, MetricsOnIdenticalImages) {
  test::TempDir dir;
  write_msi(dir / "a.msi", synthetic::msi_cube(16, 16, 4));
  const CliRun r = run({"metrics", "--header", (dir / "a.msi").string(), (dir / "a.msi").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "method,sigma,psnr,ssim,ergas,sam,seconds\n-,-,inf,1.000000,0.000000,0.000000,0\n");
}

TEST(Cli, AddNoiseIsReproducible) {
  test::TempDir dir;
  write_msi(dir / "a.msi", synthetic::msi_cube(16, 16, 4));
  const std::string in = (dir / "a.msi").string();
  ASSERT_EQ(run({"add-noise", "--sigma", "30", "--seed", "7", in, (dir / "n1.msi").string()}).code, 0);
  ASSERT_EQ(run({"add-noise", "--sigma", "30", "--seed", "7", in, (dir / "n2.msi").string()}).code, 0);
  EXPECT_EQ(slurp(dir / "n1.msi"), slurp(dir / "n2.msi"));
  ASSERT_EQ(run({"add-noise", "--sigma", "30", "--seed", "8", in, (dir / "n3.msi").string()}).code, 0);
  EXPECT_NE(slurp(dir / "n1.msi"), slurp(dir / "n3.msi"));
  EXPECT_EQ(run({"add-noise", "--ramp", "10:20", "--stripes", "0,2:15", "--seed", "1", in,
                 (dir / "n4.msi").string()})
                .code,
            0);
  EXPECT_EQ(run({"add-noise", "--stripes", "9:15", "--seed", "1", in, (dir / "n5.msi").string()}).code, 2);
}

TEST(Cli, DenoiseWritesOutputAndMetrics) {
  test::TempDir dir;
  write_image(dir / "clean.png", synthetic::color_scene(32));
  ASSERT_EQ(run({"add-noise", "--sigma", "20", "--seed", "1", (dir / "clean.png").string(),
                 (dir / "noisy.msi").string()})
                .code,
            0);
  const CliRun r = run({"denoise", "--method", "mstsvd", "--sigma", "20", "--k", "8", "--sr", "6",
                     "--basis-cache", (dir / "basis.gbas").string(), "--clean", (dir / "clean.png").string(),
                     (dir / "noisy.msi").string(), (dir / "out.msi").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "out.msi"));
  EXPECT_TRUE(fs::exists(dir / "basis.gbas"));
  EXPECT_NE(r.out.find("method,sigma,psnr,ssim,ergas,sam,seconds\nmstsvd,20,"), std::string::npos) << r.out;

  const std::string first = slurp(dir / "out.msi");
  ASSERT_EQ(run({"denoise", "--method", "mstsvd", "--sigma", "20", "--k", "8", "--sr", "6", "--basis-cache",
                 (dir / "basis.gbas").string(), (dir / "noisy.msi").string(), (dir / "out2.msi").string()})
                .code,
            0);
  EXPECT_EQ(slurp(dir / "out2.msi"), first);

  EXPECT_EQ(run({"denoise", "--method", "cmstsvd", "--sigma", "20", (dir / "noisy.msi").string(),
                 (dir / "out.tiff").string()})
                .code,
            3);
  EXPECT_EQ(run({"denoise", "--method", "mstsvd", "--sigma", "20", "--ps", "64", (dir / "noisy.msi").string(),
                 (dir / "o.msi").string()})
                .code,
            2);
}

TEST(Cli, BenchWritesReports) {
  test::TempDir dir;
  std::ofstream(dir / "cfg.json") << R"({"images": ["synthetic:color32"], "methods": ["hosvd4d"],
    "sigmas": [20], "timings": false})";
  const CliRun r = run({"bench", "--config", (dir / "cfg.json").string(), "--csv", (dir / "r.csv").string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Noisy"), std::string::npos);
  EXPECT_EQ(slurp(dir / "r.csv").rfind("image,method,sigma,psnr,ssim,ergas,sam,seconds,status\n", 0), 0u);
  std::ofstream(dir / "bad.json") << "{not json";
  EXPECT_EQ(run({"bench", "--config", (dir / "bad.json").string()}).code, 2);
}

TEST(Cli, SelfTestPasses) {
  const CliRun r = run({"self-test", "--instances", "20"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}
