#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace fs = std::filesystem;

namespace {

const std::string cli = WEMBED_CLI_PATH;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path dir = fs::path("cli_tmp");
  fs::create_directories(dir);
  const fs::path out = dir / ("out" + std::to_string(counter) + ".txt");
  const fs::path err = dir / ("err" + std::to_string(counter) + ".txt");
  ++counter;
  const std::string cmd = cli + " " + args + " > " + out.string() + " 2> " + err.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(out), slurp(err)};
}

fs::path write_file(const std::string& name, const std::string& content) {
  const fs::path dir = fs::path("cli_tmp");
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream out(p);
  out << content;
  return p;
}

}  // namespace

TEST_CASE("embed: round trip and eval") {
  const auto graph = write_file("tri.txt", "a b\nb c\nc a\n");
  const fs::path emb = fs::path("cli_tmp") / "tri_emb.txt";

  const auto embed = run("embed --input " + graph.string() + " --dim 2 --seed 1 --out " +
                         emb.string());
  REQUIRE(embed.exit_code == 0);
  CHECK(embed.out.find("iterations=") != std::string::npos);
  CHECK(embed.out.find("final_loss=") != std::string::npos);
  CHECK(embed.out.find("wall_time_s=") != std::string::npos);

  std::ifstream in(emb);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("# wembed d=2 l=1", 0) == 0);

  const auto eval = run("eval --graph " + graph.string() + " --embedding " + emb.string());
  REQUIRE(eval.exit_code == 0);
  CHECK(eval.out.find("f1=1 ") != std::string::npos);
  CHECK(eval.out.find("mode=exact") != std::string::npos);
}

TEST_CASE("embed: flag validation") {
  const auto graph = write_file("edge.txt", "a b\n");
  CHECK(run("embed --input " + graph.string() + " --out x.txt").exit_code == 1);  // missing --dim
  CHECK(run("embed --input " + graph.string() + " --dim 0 --out x.txt").exit_code == 1);
  CHECK(run("embed --input " + graph.string() + " --dim 2 --out x.txt --bogus").exit_code == 1);
}

TEST_CASE("embed: missing input file") {
  const auto r = run("embed --input cli_tmp/no_such_file.txt --dim 2 --out cli_tmp/e.txt");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("error:") != std::string::npos);
}

TEST_CASE("embed: malformed edge list reports the line") {
  const auto graph = write_file("bad.txt", "a b\noops\n");
  const auto r = run("embed --input " + graph.string() + " --dim 2 --out cli_tmp/e.txt");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("embed: byte-identical output across identical runs") {
  const auto graph = write_file("p4.txt", "a b\nb c\nc d\n");
  const fs::path e1 = fs::path("cli_tmp") / "det1.txt";
  const fs::path e2 = fs::path("cli_tmp") / "det2.txt";
  REQUIRE(run("embed --input " + graph.string() + " --dim 3 --seed 7 --max-iters 120 --out " +
              e1.string()).exit_code == 0);
  REQUIRE(run("embed --input " + graph.string() + " --dim 3 --seed 7 --max-iters 120 --out " +
              e2.string()).exit_code == 0);
  CHECK(slurp(e1) == slurp(e2));
  CHECK(!slurp(e1).empty());
}

TEST_CASE("embed: --uniform-weights writes unit weights") {
  const auto graph = write_file("star.txt", "c a\nc b\nc d\nc e\n");
  const fs::path emb = fs::path("cli_tmp") / "star_emb.txt";
  REQUIRE(run("embed --input " + graph.string() + " --dim 2 --seed 1 --max-iters 50 " +
              "--uniform-weights --out " + emb.string()).exit_code == 0);
  std::ifstream in(emb);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string label, weight;
    row >> label >> weight;
    CHECK(std::stod(weight) == 1.0);
  }
}

TEST_CASE("eval: mismatched labels are named") {
  const auto graph = write_file("g1.txt", "a b\nb c\n");
  const fs::path emb = fs::path("cli_tmp") / "g1_emb.txt";
  REQUIRE(run("embed --input " + graph.string() + " --dim 2 --max-iters 30 --out " +
              emb.string()).exit_code == 0);
  const auto other = write_file("g2.txt", "a b\nb zz\n");
  const auto r = run("eval --graph " + other.string() + " --embedding " + emb.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("zz") != std::string::npos);
}

TEST_CASE("eval: sampled mode reports its parameters") {
  const auto gen = run("generate girg --n 200 --avg-deg 8 --beta 3 --dim 2 --seed 4 "
                       "--out cli_tmp/girg_eval.txt");
  REQUIRE(gen.exit_code == 0);
  const fs::path emb = fs::path("cli_tmp") / "girg_eval_emb.txt";
  REQUIRE(run("embed --input cli_tmp/girg_eval.txt --dim 4 --max-iters 60 --out " +
              emb.string()).exit_code == 0);
  const auto r = run("eval --graph cli_tmp/girg_eval.txt --lcc --embedding " + emb.string() +
                     " --sample-factor 5 --seed 9");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("mode=sampled:5:9") != std::string::npos);
}

TEST_CASE("eval: --exact and --sample-factor conflict") {
  const auto graph = write_file("g3.txt", "a b\n");
  const auto r = run("eval --graph " + graph.string() +
                     " --embedding nowhere.txt --exact --sample-factor 5");
  CHECK(r.exit_code == 1);
}

TEST_CASE("generate: validation and output format") {
  CHECK(run("generate girg --n 100 --avg-deg 8 --beta 2 --out cli_tmp/x.txt").exit_code == 1);
  CHECK(run("generate girg --n 1 --avg-deg 8 --beta 3 --out cli_tmp/x.txt").exit_code == 1);

  const auto r = run("generate girg --n 150 --avg-deg 6 --beta 3 --dim 2 --seed 2 "
                     "--out cli_tmp/girg.txt");
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("n=150") != std::string::npos);
  CHECK(r.out.find("avg_deg=") != std::string::npos);

  const auto stats = run("stats --input cli_tmp/girg.txt");
  REQUIRE(stats.exit_code == 0);
}

TEST_CASE("stats: regular graph prints undefined heterogeneity") {
  const auto graph = write_file("c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
  const auto r = run("stats --input " + graph.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("n=5 m=5") != std::string::npos);
  CHECK(r.out.find("heterogeneity=undefined") != std::string::npos);
}

TEST_CASE("stats: star heterogeneity and stability across runs") {
  const auto graph = write_file("star5.txt", "c a\nc b\nc d\nc e\n");
  const auto a = run("stats --input " + graph.string());
  const auto b = run("stats --input " + graph.string());
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("heterogeneity=-0.124938") != std::string::npos);
  CHECK(a.out.find("deg_min=1 deg_mean=1.6 deg_max=4") != std::string::npos);
  CHECK(a.out.find("lcc_n=5") != std::string::npos);
}
