#include <doctest.h>

#include <cmath>
#include <map>
#include <numeric>
#include <random>

#include "fintop/errors.hpp"
#include "fintop/generators.hpp"
#include "fintop/io.hpp"
#include "fintop/mapper.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

const FilterSpec kX{FilterKind::Projection, 0};

PointCloud line_points(std::size_t n)
{
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i)
        pts.push_back({static_cast<double>(i), 0.0});
    return PointCloud(numbered_ids("p", n), pts);
}

/// Two tight clusters around (0,0) and (10,0).
PointCloud two_clusters()
{
    std::vector<std::vector<double>> pts;
    for (int i = 0; i < 5; ++i)
        pts.push_back({0.1 * i, 0.0});
    for (int i = 0; i < 5; ++i)
        pts.push_back({10.0 + 0.1 * i, 0.0});
    return PointCloud(numbered_ids("p", 10), pts);
}

std::vector<std::string> names_of(const PointCloud& pc, const std::vector<int>& idx)
{
    std::vector<std::string> out;
    for (int i : idx)
        out.push_back(pc.ids()[i]);
    return out;
}

} // namespace

TEST_SUITE("mapper")
{
    TEST_CASE("interval cover geometry")
    {
        const auto one = cover_intervals(-2.0, 3.0, {1, 0.0});
        REQUIRE(one.size() == 1);
        CHECK(one[0].lo == -2.0);
        CHECK(one[0].hi == 3.0);

        for (std::size_t n : {2u, 3u, 4u, 7u})
            for (double g : {0.0, 0.25, 0.5, 0.9}) {
                const auto iv = cover_intervals(0.0, 1.0, {n, g});
                REQUIRE(iv.size() == n);
                CHECK(iv.front().lo == 0.0);
                CHECK(iv.back().hi == 1.0);
                const double len = 1.0 / (n - (n - 1) * g);
                for (std::size_t i = 0; i < n; ++i)
                    CHECK(iv[i].hi - iv[i].lo == doctest::Approx(len).epsilon(1e-12));
                for (std::size_t i = 0; i + 1 < n; ++i)
                    CHECK(iv[i].hi - iv[i + 1].lo == doctest::Approx(g * len).epsilon(1e-12));
            }
        CHECK_THROWS_AS(cover_intervals(0, 1, {0, 0.0}), std::invalid_argument);
        CHECK_THROWS_AS(cover_intervals(0, 1, {2, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(cover_intervals(0, 1, {2, -0.1}), std::invalid_argument);
    }

    TEST_CASE("pullback: one interval is the whole cloud; half-overlapping intervals share the middle")
    {
        const auto pc = line_points(5);
        const auto one = pullback_cover(pc, kX, {1, 0.0});
        REQUIRE(one.parts.size() == 1);
        CHECK(one.parts[0].all());

        // Range [0,4], l = 8/3: I0 = [0, 8/3], I1 = [4/3, 4].
        const auto two = pullback_cover(pc, kX, {2, 0.5});
        REQUIRE(two.parts.size() == 2);
        CHECK(two.parts[0] == Bits(5, 0b00111));
        CHECK(two.parts[1] == Bits(5, 0b11100));
        CHECK(two.names == std::vector<std::string>{"I0", "I1"});
        CHECK_FALSE(two.degenerate);
    }

    TEST_CASE("degenerate filter range falls back to one interval with a warning")
    {
        const PointCloud pc({"a", "b", "c"}, {{1.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}});
        const auto c = pullback_cover(pc, kX, {4, 0.3});
        CHECK(c.degenerate);
        CHECK_FALSE(c.warning.empty());
        REQUIRE(c.parts.size() == 1);
        CHECK(c.parts[0].count() == 3);
        CHECK_THROWS_AS(pullback_cover(pc, {FilterKind::Projection, 5}, {2, 0.3}), InputError);
    }

    TEST_CASE("point cloud validation")
    {
        CHECK_THROWS_AS(PointCloud({"a", "a"}, {{0.0}, {1.0}}), InputError);
        CHECK_THROWS_AS(PointCloud({""}, {{0.0}}), InputError);
        CHECK_THROWS_AS(PointCloud({"a", "b"}, {{0.0}, {1.0, 2.0}}), InputError);
        CHECK_THROWS_AS(PointCloud({"a"}, {{std::nan("")}}), InputError);
        CHECK(PointCloud({"a", "b"}, {{0.0, 0.0}, {3.0, 4.0}}).distance(0, 1) == 5.0);
    }

    TEST_CASE("filters")
    {
        const PointCloud pc({"a", "b", "c"}, {{0.0, 5.0}, {1.0, 6.0}, {3.0, 7.0}});
        CHECK(evaluate_filter(pc, {FilterKind::Projection, 1}) == std::vector<double>{5.0, 6.0, 7.0});
        const auto ecc = evaluate_filter(pc, {FilterKind::Eccentricity, 0});
        CHECK(ecc[0] == doctest::Approx(std::sqrt(13.0)));
        CHECK(ecc[1] == doctest::Approx(std::sqrt(5.0)));
        CHECK(ecc[2] == doctest::Approx(std::sqrt(13.0)));
    }

    TEST_CASE("epsilon components against breadth-first search")
    {
        const auto big = two_clusters();
        Bits all(big.size());
        all.set();
        CHECK(epsilon_components(big, all, 100.0).size() == 1);
        const auto two = epsilon_components(big, all, 0.5);
        REQUIRE(two.size() == 2);
        CHECK(component_name(big, two[0]) == "p0");
        CHECK(component_name(big, two[1]) == "p5");
        CHECK_THROWS_AS(epsilon_components(big, all, 0.0), std::invalid_argument);

        Rng rng(71);
        for (int trial = 0; trial < 30; ++trial) {
            const auto pc = circle_sample(rng.next(), 40);
            std::vector<int> members;
            Bits subset(pc.size());
            for (std::size_t i = 0; i < pc.size(); ++i)
                if (rng.chance(0.6)) {
                    members.push_back(static_cast<int>(i));
                    subset.set(i);
                }
            const double eps = 0.1 + 0.3 * rng.uniform();
            auto ref = oracle::epsilon_components(pc, members, eps);
            std::sort(ref.begin(), ref.end());
            std::vector<std::vector<int>> got;
            for (const auto& c : epsilon_components(pc, subset, eps)) {
                std::vector<int> idx;
                for (auto i : bit_indices(c))
                    idx.push_back(static_cast<int>(i));
                got.push_back(idx);
            }
            std::sort(got.begin(), got.end());
            CHECK(got == ref);
        }
    }

    TEST_CASE("two clusters in one interval give two 0-cells and no edges")
    {
        const auto r = mapper_completion(two_clusters(), kX, {1, 0.0}, 0.5);
        REQUIRE(r.completion);
        CHECK(r.completion->f_vector() == std::vector<std::size_t>{2});
        CHECK(r.completion_homology.betti(0) == 2);
    }

    TEST_CASE("a single cluster gives a point-like completion")
    {
        const auto r = mapper_completion(line_points(6), kX, {3, 0.4}, 1.5);
        REQUIRE(r.completion);
        CHECK(homology(*r.completion, true).is_zero());
        // Every intersection is connected: completion and component nerve agree.
        CHECK(isomorphic(r.completion_poset.poset, face_poset(r.component_nerve)));
    }

    TEST_CASE("circle demo at the documented parameters")
    {
        const auto pc = circle_sample(42, 60);
        const auto r = mapper_completion(pc, kX, {4, 0.3}, 0.25);
        REQUIRE(r.cover.parts.size() == 4);
        for (std::size_t i = 0; i + 1 < 4; ++i)
            CHECK((r.cover.parts[i] & r.cover.parts[i + 1]).any());
        CHECK((r.cover.parts[0] & r.cover.parts[2]).none());
        Bits all(pc.size());
        for (const auto& p : r.cover.parts)
            all |= p;
        CHECK(all.all());

        // The inner intervals each meet the circle in an upper and a lower arc.
        const auto split = component_split(pc, r.cover, 0.25);
        std::map<std::string, std::size_t> comps;
        for (const auto& e : split)
            comps[e.label] = e.components.size();
        CHECK(comps.at("{I0}") == 1);
        CHECK(comps.at("{I1}") == 2);
        CHECK(comps.at("{I2}") == 2);
        CHECK(comps.at("{I3}") == 1);
        CHECK(comps.at("{I1,I2}") == 2);

        REQUIRE(r.completion);
        CHECK(r.completion->f_vector() == std::vector<std::size_t>{6, 6});
        CHECK(r.completion_homology.betti(1) == 1);
        CHECK(r.nerve_homology.betti(1) == 0);
        CHECK(homology(r.nerve, true).is_zero());
        CHECK(r.component_nerve_homology.betti(1) == 1);
        CHECK(validate_simplex_cells(r.completion_poset.poset, r.completion_poset.dims).empty());

        // Cross-check the nerve homology with the oracle ranks.
        const auto ref = oracle::betti(oracle::faces_of(r.nerve));
        CHECK(ref.rational.at(0) == 1);
        CHECK(oracle::trimmed(ref.rational).size() == 1);
    }

    TEST_CASE("figure eight has two independent loops in the completion")
    {
        const auto r = mapper_completion(figure_eight_sample(42), kX, {6, 0.3}, 0.25);
        CHECK(r.completion_homology.betti(1) == 2);
    }

    TEST_CASE("output does not depend on the input order of the points")
    {
        const auto pc = circle_sample(7, 60);
        std::vector<std::size_t> perm(pc.size());
        std::iota(perm.begin(), perm.end(), 0);
        std::mt19937_64 gen(3);
        std::shuffle(perm.begin(), perm.end(), gen);
        std::vector<std::string> ids;
        std::vector<std::vector<double>> pts;
        for (auto i : perm) {
            ids.push_back(pc.ids()[i]);
            pts.push_back(pc.point(i));
        }
        const PointCloud shuffled(ids, pts);
        const auto a = mapper_completion(pc, kX, {4, 0.3}, 0.25);
        const auto b = mapper_completion(shuffled, kX, {4, 0.3}, 0.25);
        CHECK(a.completion_poset.poset == b.completion_poset.poset);
        CHECK(a.component_nerve == b.component_nerve);
        CHECK(a.nerve == b.nerve);
        CHECK(io::to_json(a.completion_poset) == io::to_json(b.completion_poset));
    }

    TEST_CASE("sample generators are deterministic")
    {
        const auto a = circle_sample(42, 60);
        const auto b = circle_sample(42, 60);
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(a.point(i) == b.point(i));
        CHECK(a.ids().front() == "p00");
        for (std::size_t i = 0; i < a.size(); ++i)
            CHECK(std::hypot(a.point(i)[0], a.point(i)[1]) == doctest::Approx(1.0));
        CHECK(names_of(a, {0, 1}) == std::vector<std::string>{"p00", "p01"});
    }

    TEST_CASE("CSV points")
    {
        const auto plain = io::parse_points("0,0\n1,0\n2,1\n");
        CHECK(plain.size() == 3);
        CHECK(plain.dimension() == 2);
        CHECK(plain.ids() == std::vector<std::string>{"p0", "p1", "p2"});

        const auto header = io::parse_points("x,y\n0,0\n1,1\n");
        CHECK(header.size() == 2);
        CHECK(header.dimension() == 2);

        const auto ids = io::parse_points("id,x,y\nfoo,0,0\nbar,1,1\n");
        CHECK(ids.ids() == std::vector<std::string>{"foo", "bar"});
        CHECK(ids.dimension() == 2);

        const auto implicit = io::parse_points("# comment\nfoo,0\nbar,1\n");
        CHECK(implicit.ids() == std::vector<std::string>{"foo", "bar"});

        try {
            io::parse_points("x,y\n0,0\n1,zz\n");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(e.line() == 3);
            CHECK(e.column() == 3);
        }
        CHECK_THROWS_AS(io::parse_points("0,0\n1\n"), InputError);
        CHECK_THROWS_AS(io::parse_points(""), InputError);
        CHECK_THROWS_AS(io::parse_points("x,y\n"), InputError);
    }

    TEST_CASE("exports")
    {
        const auto r = mapper_completion(circle_sample(42, 60), kX, {4, 0.3}, 0.25);
        const auto dot = completion_dot(r.completion_poset);
        CHECK(dot.find("graph") != std::string::npos);
        CHECK(complex_dot(r.nerve, "nerve").find("--") != std::string::npos);
        const auto j = io::to_json(r);
        CHECK(j.contains("completion"));
    }
}
