#include <doctest.h>

#include <filesystem>

#include "fintop/cylinder.hpp"
#include "fintop/errors.hpp"
#include "fintop/generators.hpp"
#include "fintop/io.hpp"
#include "fintop/run.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

io::Fixture fixture(const std::string& name)
{
    return io::load_fixture(std::filesystem::path(FINTOP_SOURCE_DIR) / "fixtures" / name);
}

/// Transitive closure of both orders plus the relation on the disjoint union.
oracle::Order brute_cylinder(const Relation& r)
{
    const std::size_t nx = r.source().size(), ny = r.target().size();
    std::vector<std::pair<int, int>> pairs;
    for (Index a = 0; a < nx; ++a)
        for (Index b = 0; b < nx; ++b)
            if (r.source().less(a, b))
                pairs.emplace_back(a, b);
    for (Index a = 0; a < ny; ++a)
        for (Index b = 0; b < ny; ++b)
            if (r.target().less(a, b))
                pairs.emplace_back(nx + a, nx + b);
    for (auto [x, y] : r.pairs())
        pairs.emplace_back(x, nx + y);
    return oracle::closure(nx + ny, pairs);
}

} // namespace

TEST_SUITE("cylinder")
{
    TEST_CASE("cylinder order equals the generated order")
    {
        Rng rng(51);
        for (int trial = 0; trial < 100; ++trial) {
            const Poset x = random_poset(rng, 1 + rng.below(6), 0.4, "x");
            const Poset y = random_poset(rng, 1 + rng.below(6), 0.4, "y");
            std::vector<Bits> related(x.size(), Bits(y.size()));
            for (auto& b : related)
                for (std::size_t j = 0; j < y.size(); ++j)
                    if (rng.chance(0.3))
                        b.set(j);
            const Relation r(x, y, related);
            const auto c = build_cylinder(r);
            CHECK(oracle::order_of(c.poset) == brute_cylinder(r));
            CHECK(c.poset.id(0).rfind("X:", 0) == 0);
            CHECK(induced_subposet(c.source_part()) == prefixed(x, kSourcePrefix));
            CHECK(induced_subposet(c.target_part()) == prefixed(y, kTargetPrefix));
        }
    }

    TEST_CASE("image and preimage")
    {
        const Poset x = Poset::from_relations({"a", "b"}, {});
        const Poset y = Poset::from_relations({}, {{"p", "q"}});
        using Pairs = std::vector<std::pair<std::string, std::string>>;
        const Relation r(x, y, Pairs{{"a", "q"}, {"b", "p"}});
        CHECK(image(r, ElementSet::from_ids(x, {"a"})).ids() == std::vector<std::string>{"q"});
        CHECK(preimage(r, ElementSet::from_ids(y, {"p", "q"})).ids() == std::vector<std::string>{"a", "b"});
        CHECK(r.size() == 2);
        CHECK_THROWS_AS(Relation(x, y, Pairs{{"a", "zz"}}), InputError);
        CHECK_THROWS_AS(image(r, ElementSet::from_ids(y, {"p"})), InputError);
    }

    TEST_CASE("monotone maps are checked")
    {
        const Poset x = Poset::from_relations({}, {{"a", "b"}});
        const Poset y = Poset::from_relations({}, {{"p", "q"}});
        CHECK_NOTHROW(MonotoneMap::from_ids(x, y, {{"a", "p"}, {"b", "q"}}));
        CHECK_THROWS_AS(MonotoneMap::from_ids(x, y, {{"a", "q"}, {"b", "p"}}), InputError);
        CHECK_THROWS_AS(MonotoneMap::from_ids(x, y, {{"a", "p"}}), InputError);
    }

    TEST_CASE("mapping cylinder retracts onto the target")
    {
        Rng rng(52);
        for (int trial = 0; trial < 100; ++trial) {
            const Poset x = random_poset(rng, 1 + rng.below(8), 0.4, "x");
            const Poset y = random_poset(rng, 1 + rng.below(8), 0.4, "y");
            const auto f = random_monotone_map(rng, x, y);
            const auto mc = mapping_cylinder(f);
            CHECK(mc.cylinder.poset == build_cylinder(f.relation()).poset);
            CHECK(mc.retraction.size() == x.size());
            for (const auto& s : mc.retraction.steps)
                CHECK(s.kind == StepKind::UpBeat);
            const auto r = replay(mc.cylinder.poset, mc.retraction);
            REQUIRE(r.ok);
            CHECK(r.result == prefixed(y, kTargetPrefix));
            CHECK(same_homology(homology(mc.cylinder.poset), homology(y)).equal);
        }
    }

    TEST_CASE("hypotheses on the shipped fixtures")
    {
        const Relation comp = fixture_relation(fixture("comparability"));
        CHECK(check_source_side(comp).status == Status::Certified);
        CHECK(check_target_side(comp).status == Status::Certified);

        const Relation bad = fixture_relation(fixture("point-vs-antichain"));
        const auto tgt = check_target_side(bad);
        CHECK(tgt.status == Status::Refuted);
        REQUIRE(tgt.first_failure());
        CHECK(tgt.first_failure()->verdict.value == Verdict::NonTrivial);
        CHECK(aggregate(tgt.entries) == Status::Refuted);
    }

    TEST_CASE("equivalence on the shipped fixtures")
    {
        const Relation comp = fixture_relation(fixture("comparability"));
        const auto rep = verify_relation_equivalence(comp);
        CHECK(rep.status == Status::Certified);
        REQUIRE(rep.to_source);
        REQUIRE(rep.to_target);
        const auto c = build_cylinder(comp);
        const auto rs = replay(c.poset, *rep.to_source);
        const auto rt = replay(c.poset, *rep.to_target);
        REQUIRE(rs.ok);
        REQUIRE(rt.ok);
        CHECK(rs.result == prefixed(comp.source(), kSourcePrefix));
        CHECK(rt.result == prefixed(comp.target(), kTargetPrefix));
        CHECK(rep.comparison.equal);

        const auto refuted = verify_relation_equivalence(fixture_relation(fixture("point-vs-antichain")));
        CHECK(refuted.status == Status::Refuted);
        CHECK_FALSE(refuted.to_target);
    }

    TEST_CASE("gamma collapses refuse when a punctured set is not certified")
    {
        const Relation bad = fixture_relation(fixture("point-vs-antichain"));
        const auto c = build_cylinder(bad);
        const auto g = gamma_collapse_to_target(c);
        CHECK_FALSE(g.certificate);
        CHECK_FALSE(g.failing_element.empty());
        CHECK(gamma_collapse_to_source(c).certificate);
    }

    TEST_CASE("random certified relations are certified with replayable certificates")
    {
        Rng rng(53);
        for (int trial = 0; trial < 30; ++trial) {
            const auto cr = random_certified_relation(rng);
            REQUIRE(cr);
            const auto rep = verify_relation_equivalence(cr->relation);
            CHECK(rep.status == Status::Certified);
            const auto c = build_cylinder(cr->relation);
            CHECK(replay(c.poset, *rep.to_source).ok);
            CHECK(replay(c.poset, *rep.to_target).ok);
            CHECK(same_homology(homology(cr->relation.source()), homology(cr->relation.target())).equal);
        }
    }

    TEST_CASE("homology form")
    {
        const Relation comp = fixture_relation(fixture("relation-homology"));
        const auto rep = verify_relation_homology(comp, 2);
        CHECK(rep.status == Status::Certified);
        CHECK(rep.degree == 2);
        const auto bad = verify_relation_homology(fixture_relation(fixture("point-vs-antichain")), 1);
        CHECK(bad.status == Status::Refuted);
    }

    TEST_CASE("report on a relation target carries both certificates")
    {
        const auto rep = verify_fixture(fixture("comparability"), "relation-equivalence");
        CHECK(rep.status == Status::Certified);
        CHECK(rep.certificate_count() >= 2);
        CHECK_THROWS_AS(verify_fixture(fixture("comparability"), "no-such-target"), InputError);
    }
}
