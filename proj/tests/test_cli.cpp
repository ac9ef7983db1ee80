#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <string>

#include "fintop/errors.hpp"
#include "fintop/io.hpp"
#include "fintop/run.hpp"

using namespace fintop;

namespace {

const std::filesystem::path kRoot = FINTOP_SOURCE_DIR;

struct Invocation
{
    int exit = -1;
    std::string out;
};

/// Runs the CLI from the source directory; stderr is folded into the output.
Invocation cli(const std::string& args, const std::string& env = "")
{
    const std::string cmd = "cd '" + kRoot.string() + "' && " + env + " '" FINTOP_CLI_PATH "' " + args + " 2>&1";
    Invocation r;
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0)
        r.out.append(buf.data(), n);
    const int status = pclose(pipe);
    r.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

io::json strip_timing(io::json j)
{
    j.erase("timing_ms");
    return j;
}

} // namespace

TEST_SUITE("cli")
{
    TEST_CASE("every shipped fixture meets its expectation")
    {
        const auto fixtures = io::list_fixtures(kRoot / "fixtures");
        REQUIRE(fixtures.size() >= 15);
        for (const auto& f : fixtures) {
            CAPTURE(f.name);
            REQUIRE(f.theorem);
            const auto rep = verify_fixture(f, *f.theorem);
            CHECK(to_string(rep.status) == f.expect.value_or("Certified"));
            CHECK(rep.finalized());
        }
    }

    TEST_CASE("reports are deterministic apart from timing")
    {
        const auto f = io::load_fixture(kRoot / "fixtures/comparability");
        const auto a = verify_fixture(f, "relation-equivalence").to_json(false);
        const auto b = verify_fixture(f, "relation-equivalence").to_json(false);
        CHECK(a.dump() == b.dump());
        CHECK_FALSE(a.contains("timing_ms"));
    }

    TEST_CASE("finalize replays certificates and demotes a bad one to Error")
    {
        const Poset chain = Poset::from_relations({}, {{"a", "b"}});
        RunReport good("test");
        good.status = Status::Certified;
        good.attach("chain", chain, is_dismantlable(chain).certificate);
        good.finalize();
        CHECK(good.status == Status::Certified);
        CHECK(good.certificate_count() == 1);

        RunReport bad("test");
        bad.status = Status::Certified;
        ReductionCertificate forged;
        forged.steps.push_back({StepKind::DownBeat, "a", "b", nullptr, {}, {}});
        bad.attach("forged", chain, forged);
        bad.finalize();
        CHECK(bad.status == Status::Error);

        // A certificate that replays but ends at the wrong place.
        RunReport wrong_end("test");
        wrong_end.status = Status::Certified;
        wrong_end.attach("chain", chain, ReductionCertificate{});
        wrong_end.finalize();
        CHECK(wrong_end.status == Status::Error);
    }

    TEST_CASE("exit codes and hashes")
    {
        CHECK(exit_code(Status::Certified) == 0);
        CHECK(exit_code(Status::Refuted) == 1);
        CHECK(exit_code(Status::Unknown) == 2);
        CHECK(exit_code(Status::Error) == 2);
        CHECK(kInputErrorExit == 3);
        CHECK(status_from_string("Refuted") == Status::Refuted);
        CHECK_THROWS_AS(status_from_string("maybe"), InputError);
        // FNV-1a 64 reference values.
        CHECK(content_hash("") == "cbf29ce484222325");
        CHECK(content_hash("a") == "af63dc4c8601ec8c");
    }

    TEST_CASE("binary: exit-code contract")
    {
        const auto ok = cli("verify completion-homology fixtures/triangle-boundary-cover");
        CHECK(ok.exit == 0);
        const auto j = io::json::parse(ok.out);
        CHECK(j["status"] == "Certified");
        CHECK(j["result"]["completion"]["f_vector"] == io::json::array({2, 2}));

        CHECK(cli("verify relation-equivalence fixtures/point-vs-antichain").exit == 1);
        CHECK(cli("--budget 1 reduce fixtures/collapsible-not-contractible/poset.txt --method oracle").exit == 2);
        CHECK(cli("reduce fixtures/collapsible-not-contractible/poset.txt --method oracle").exit == 0);
        CHECK(cli("verify no-such-target fixtures/point").exit == 3);
        CHECK(cli("homology --poset fixtures/does-not-exist.txt").exit == 3);
        CHECK(cli("mapper --sample circle").exit == 3);
        CHECK(cli("--no-such-flag").exit == 3);
        CHECK(cli("--help").exit == 0);
    }

    TEST_CASE("binary: malformed input reports line and column")
    {
        const auto dir = std::filesystem::temp_directory_path() / "fintop-cli-test";
        std::filesystem::create_directories(dir);
        const auto bad = dir / "bad.txt";
        {
            std::FILE* f = std::fopen(bad.c_str(), "w");
            REQUIRE(f);
            std::fputs("a < b\nb < < c\n", f);
            std::fclose(f);
        }
        const auto r = cli("homology --poset '" + bad.string() + "'");
        CHECK(r.exit == 3);
        CHECK(r.out.find("line 2, column") != std::string::npos);
        std::filesystem::remove_all(dir);
    }

    TEST_CASE("binary: homology of a point is zero in reduced form")
    {
        const auto r = cli("homology --poset fixtures/point/poset.txt --reduced");
        CHECK(r.exit == 0);
        const auto j = io::json::parse(r.out);
        const auto& h = j["result"]["homology"];
        CHECK(h["reduced"] == true);
        for (const auto& g : h["groups"])
            CHECK(g["betti"] == 0);
    }

    TEST_CASE("binary: JSON output is deterministic modulo timing")
    {
        const auto a = cli("--seed 42 mapper --sample circle --count 60 --epsilon 0.25 --intervals 4 --overlap 0.3");
        const auto b = cli("--seed 42 mapper --sample circle --count 60 --epsilon 0.25 --intervals 4 --overlap 0.3");
        REQUIRE(a.exit == 0);
        CHECK(strip_timing(io::json::parse(a.out)) == strip_timing(io::json::parse(b.out)));
        const auto env = cli("mapper --sample circle --count 60 --epsilon 0.25 --intervals 4 --overlap 0.3",
                             "FINTOP_SEED=42");
        CHECK(env.exit == 0);
        CHECK(strip_timing(io::json::parse(env.out)) == strip_timing(io::json::parse(a.out)));
    }

    TEST_CASE("binary: batch verification")
    {
        const auto r = cli("verify --batch fixtures");
        CHECK(r.exit == 0);
    }
}
