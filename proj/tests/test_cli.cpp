#include <cstdio>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "doctest.h"

namespace {

struct CliResult {
    int status = -1;
    std::string out;
};

CliResult run_cli(const std::string& args, bool merge_stderr = false,
                  const std::string& env = "") {
    std::string cmd = env + (env.empty() ? "" : " ") + MORPHOSEQ_CLI_PATH + " " + args +
                      (merge_stderr ? " 2>&1" : " 2>/dev/null");
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    CliResult r;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0)
        r.out.append(buf, got);
    int raw = pclose(pipe);
    r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return r;
}

std::string spec(const std::string& name) {
    return std::string(MORPHOSEQ_SPECS_DIR) + "/" + name;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("cli generate") {
    CliResult r = run_cli("generate " + spec("fib.json") + " -n 8");
    CHECK(r.status == 0);
    CHECK(r.out == "01001010\n");
    CliResult it = run_cli("generate " + spec("fib.json") + " --iterate 3");
    CHECK(it.status == 0);
    CHECK(it.out == "01001\n");
}

TEST_CASE("cli tree") {
    CliResult r = run_cli("tree " + spec("fib.json") + " -n 6");
    CHECK(r.status == 0);
    CHECK(r.out == "1 0 1 1\n"
                   "2 1 0 2\n"
                   "3 2 0 3\n"
                   "4 2 1 3\n"
                   "5 3 0 4\n"
                   "6 3 1 4\n");
}

TEST_CASE("cli phi") {
    CliResult r = run_cli("phi " + spec("fib.json") + " -n 5");
    CHECK(r.status == 0);
    CHECK(r.out == "0 eps 0\n"
                   "1 1 1\n"
                   "2 10 0\n"
                   "3 100 0\n"
                   "4 101 1\n");
}

TEST_CASE("cli kernel") {
    CliResult r = run_cli("kernel " + spec("fib.json") + " --witness-len 8");
    CHECK(r.status == 0);
    CHECK(r.out == "rep=0 witness=01001010 exact=yes\n"
                   "rep=1 witness=10010100 exact=yes\n"
                   "rep=2 witness=00101001 exact=yes\n"
                   "classes: lower=3 upper=3\n");
}

TEST_CASE("cli staircase kernel") {
    CliResult r = run_cli("kernel --staircase " + spec("staircase.json"));
    CHECK(r.status == 0);
    CHECK(r.out ==
          "prefix classes: 2\n"
          "witness 0: 1101001000010000000100000000000100000000000000001000000000000000\n"
          "witness 1: 0000000000000000000000000000000000000000000000000000000000000000\n"
          "labeled counts: 3 5 8 10 13 16 19 23 27\n"
          "shape counts: 2 4 8 10 13 16 19 23 27\n"
          "labeled strictly increasing d=2..8: yes\n");
}

TEST_CASE("cli rewrite") {
    CliResult steps = run_cli("rewrite " + spec("fib.json") + " --steps 2");
    CHECK(steps.status == 0);
    CHECK(steps.out == "1 EXPAND-S 0 1 S 1~ E\n"
                       "2 UNFOLD-BAR 0 1 S 0 E\n");

    CliResult quiet = run_cli("rewrite " + spec("fib.json") + " --steps 3 --quiet");
    CHECK(quiet.status == 0);
    CHECK(quiet.out == "010\n");

    CliResult conv = run_cli("rewrite " + spec("fib.json") + " --prefix 64");
    CliResult gen = run_cli("generate " + spec("fib.json") + " -n 64");
    CHECK(conv.status == 0);
    CHECK(conv.out == gen.out);
}

TEST_CASE("cli turtle closure") {
    std::string base = "turtle " + spec("period-doubling.json") + " --angles 0=140,1=-80";
    CliResult open = run_cli(base + " --check-closure 6000");
    CHECK(open.status == 0);
    CHECK(open.out == "NOT CLOSED at step 6001\ndistinct segments: 4164\n");

    CliResult closed = run_cli(base + " --check-closure 9216,92160");
    CHECK(closed.status == 0);
    CHECK(closed.out == "CLOSED\ndistinct segments: 4554\n");
}

TEST_CASE("cli turtle svg output") {
    std::string base = "turtle " + spec("period-doubling.json") + " --angles 0=140,1=-80";
    CliResult dump = run_cli(base + " --steps 4");
    CHECK(dump.status == 0);
    CHECK(dump.out.find("<svg xmlns=\"http://www.w3.org/2000/svg\"") != std::string::npos);
    CHECK(dump.out.find("M -0.766044 -0.642788 L 0.000000 0.000000") != std::string::npos);

    std::string path_a = "/tmp/morphoseq_cli_a.svg", path_b = "/tmp/morphoseq_cli_b.svg";
    CliResult wa = run_cli(base + " --steps 4 --out " + path_a);
    CliResult wb = run_cli(base + " --steps 4 --out " + path_b);
    CHECK(wa.status == 0);
    CHECK(wa.out == "segments: 4\n");
    CHECK(wb.out == "segments: 4\n");
    CHECK(slurp(path_a) == dump.out);
    CHECK(slurp(path_a) == slurp(path_b));
    std::remove(path_a.c_str());
    std::remove(path_b.c_str());
}

TEST_CASE("cli verify") {
    CliResult equal = run_cli("verify " + spec("fib.json") + " " + spec("fib.json") + " -n 50");
    CHECK(equal.status == 0);
    CHECK(equal.out ==
          "prefix: EQUAL up to n=50\n"
          "  note: bounded evidence for an open conjecture unless equality is otherwise proven\n"
          "tree shape: IDENTICAL (P,R) for n=1..50\n"
          "kernel A: 3 classes (exact)\n"
          "kernel B: 3 classes (exact)\n");

    CliResult diff = run_cli("verify " + spec("fib.json") + " " + spec("spir.json") + " -n 50");
    CHECK(diff.status == 1);
    CHECK(diff.out == "prefix: MISMATCH at index 0 (A=0, B=1)\n"
                      "tree shape: DIFFERS first at n=3\n"
                      "kernel A: 3 classes (exact)\n"
                      "kernel B: 3 classes (exact)\n");

    CliResult arith = run_cli("verify " + spec("fib.json") + " " + spec("don-even-fib.json") +
                              " -n 100 --arith-a 0,2");
    CHECK(arith.status == 0);
    CHECK(arith.out.find("prefix: EQUAL up to n=100") == 0);
    CHECK(arith.out.find("bounded evidence for an open conjecture") != std::string::npos);
    CHECK(arith.out.find("tree shape: DIFFERS first at n=2") != std::string::npos);
}

TEST_CASE("cli exit codes") {
    CliResult budget =
        run_cli("generate " + spec("fib.json") + " -n 100000", true, "MORPHOSEQ_BUDGET=100");
    CHECK(budget.status == 3);
    CHECK(budget.out == "error: BudgetExceeded: sequence prefix of 100000 exceeds budget 100\n");

    CliResult missing = run_cli("generate " + spec("nope.json") + " -n 5", true);
    CHECK(missing.status == 2);
    CHECK(missing.out.find("error: IoError: cannot open") == 0);

    CliResult flag = run_cli("generate " + spec("fib.json") + " --bogus", true);
    CHECK(flag.status == 2);

    CliResult none = run_cli("", true);
    CHECK(none.status == 2);
}

TEST_CASE("cli automaton json round trip") {
    CliResult dot = run_cli("automaton " + spec("fib.json"));
    CHECK(dot.status == 0);
    CHECK(dot.out.find("digraph mixdfao") != std::string::npos);
    CHECK(dot.out.find("q0 [label=\"0/0/2\"]") != std::string::npos);

    CliResult mini = run_cli("automaton " + spec("spir.json") + " --minimize");
    CHECK(mini.status == 0);
    CHECK(mini.out.find("digraph mixdfao") != std::string::npos);

    CliResult json = run_cli("automaton " + spec("spir.json") + " --json");
    CHECK(json.status == 0);
    std::string path = "/tmp/morphoseq_cli_roundtrip.json";
    {
        std::ofstream out(path, std::ios::binary);
        out << json.out;
    }
    CliResult a = run_cli("generate " + path + " -n 32");
    CliResult b = run_cli("generate " + spec("spir.json") + " -n 32");
    CHECK(a.status == 0);
    CHECK(a.out == b.out);
    std::remove(path.c_str());
}
