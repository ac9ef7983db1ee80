#include <doctest.h>

#include <random>

#include "fintop/errors.hpp"
#include "fintop/io.hpp"
#include "fintop/poset.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace fintop;

TEST_SUITE("poset")
{
    TEST_CASE("closure and Hasse diagram agree with Warshall on random relations")
    {
        std::mt19937_64 gen(11);
        for (int trial = 0; trial < 200; ++trial) {
            const int n = 1 + static_cast<int>(gen() % 9);
            const auto raw = testing_support::raw_order(gen, n, 0.35);
            const Poset p = testing_support::to_poset(raw);
            const auto leq = testing_support::oracle_order(raw, p);
            REQUIRE(p.size() == static_cast<std::size_t>(n));
            CHECK(oracle::order_of(p) == leq);

            std::size_t hasse = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b)
                    if (oracle::covers(leq, a, b)) {
                        ++hasse;
                        const auto& up = p.upper_covers(static_cast<Index>(a));
                        CHECK(std::find(up.begin(), up.end(), static_cast<Index>(b)) != up.end());
                    }
            CHECK(p.hasse_size() == hasse);
            CHECK(p.hasse_edges().size() == hasse);
        }
    }

    TEST_CASE("elements are stored in identifier order")
    {
        const Poset p = Poset::from_relations({"c", "a"}, {{"b", "a"}});
        CHECK(p.ids() == std::vector<std::string>{"a", "b", "c"});
        CHECK(p.less(p.index_of("b"), p.index_of("a")));
        CHECK_FALSE(p.comparable(p.index_of("c"), p.index_of("a")));
    }

    TEST_CASE("cycles and empty identifiers are rejected")
    {
        CHECK_THROWS_AS(Poset::from_relations({}, {{"a", "b"}, {"b", "a"}}), InputError);
        CHECK_THROWS_AS(Poset::from_relations({}, {{"a", "a"}}), InputError);
        CHECK_THROWS_AS(Poset::from_relations({""}, {}), InputError);
    }

    TEST_CASE("down-sets, up-sets, closure and open hull")
    {
        // a < c, b < c, c < d
        const Poset p = Poset::from_relations({}, {{"a", "c"}, {"b", "c"}, {"c", "d"}});
        CHECK(down_set(p, "c").ids() == std::vector<std::string>{"a", "b", "c"});
        CHECK(punctured_down(p, "c").ids() == std::vector<std::string>{"a", "b"});
        CHECK(up_set(p, "a").ids() == std::vector<std::string>{"a", "c", "d"});
        CHECK(punctured_up(p, "d").empty());

        const auto ab = ElementSet::from_ids(p, {"a", "b"});
        CHECK(is_down_set(ab));
        CHECK_FALSE(is_up_set(ab));
        CHECK(closure(ab).ids() == std::vector<std::string>{"a", "b", "c", "d"});
        const auto cd = ElementSet::from_ids(p, {"c"});
        CHECK(open_hull(cd).ids() == std::vector<std::string>{"a", "b", "c"});
        CHECK_THROWS_AS(ElementSet::from_ids(p, {"zz"}), InputError);
    }

    TEST_CASE("opposite reverses the order and is an involution")
    {
        std::mt19937_64 gen(5);
        for (int trial = 0; trial < 50; ++trial) {
            const auto raw = testing_support::raw_order(gen, 1 + static_cast<int>(gen() % 8), 0.4);
            const Poset p = testing_support::to_poset(raw);
            const Poset op = opposite(p);
            for (Index a = 0; a < p.size(); ++a)
                for (Index b = 0; b < p.size(); ++b)
                    CHECK(p.leq(a, b) == op.leq(b, a));
            CHECK(opposite(op) == p);
        }
    }

    TEST_CASE("linear extension respects the order and breaks ties by identifier")
    {
        std::mt19937_64 gen(9);
        for (int trial = 0; trial < 100; ++trial) {
            const auto raw = testing_support::raw_order(gen, 1 + static_cast<int>(gen() % 10), 0.3);
            const Poset p = testing_support::to_poset(raw);
            const auto ext = linear_extension(p);
            REQUIRE(ext.size() == p.size());
            std::vector<std::size_t> pos(p.size());
            for (std::size_t i = 0; i < ext.size(); ++i)
                pos[ext[i]] = i;
            for (Index a = 0; a < p.size(); ++a)
                for (Index b = 0; b < p.size(); ++b)
                    if (p.less(a, b))
                        CHECK(pos[a] < pos[b]);
        }
        const Poset anti = Poset::from_relations({"b", "a", "c"}, {});
        CHECK(linear_extension(anti) == std::vector<Index>{0, 1, 2});
    }

    TEST_CASE("connected components agree with union-find on the comparability graph")
    {
        std::mt19937_64 gen(21);
        for (int trial = 0; trial < 100; ++trial) {
            const auto raw = testing_support::raw_order(gen, 1 + static_cast<int>(gen() % 10), 0.15);
            const Poset p = testing_support::to_poset(raw);
            const auto leq = oracle::order_of(p);
            std::vector<bool> members(p.size());
            Bits bits = p.empty_bits();
            for (Index x = 0; x < p.size(); ++x)
                if (gen() % 3 != 0) {
                    members[x] = true;
                    bits.set(x);
                }
            const auto comps = connected_components(ElementSet(p, bits));
            CHECK(comps.size() == oracle::components(leq, members));
            Bits all = p.empty_bits();
            for (const auto& c : comps)
                all |= c.bits();
            CHECK(all == bits);
        }
    }

    TEST_CASE("induced subposet keeps the restricted order")
    {
        const Poset p = Poset::from_relations({}, {{"a", "b"}, {"b", "c"}});
        const Poset sub = induced_subposet(ElementSet::from_ids(p, {"a", "c"}));
        CHECK(sub.size() == 2);
        CHECK(sub.less(sub.index_of("a"), sub.index_of("c")));
        CHECK(sub.hasse_size() == 1);
    }

    TEST_CASE("isomorphism test")
    {
        const Poset chain = Poset::from_relations({}, {{"a", "b"}, {"b", "c"}});
        const Poset chain2 = Poset::from_relations({}, {{"z", "y"}, {"y", "x"}});
        const Poset vee = Poset::from_relations({}, {{"a", "b"}, {"a", "c"}});
        CHECK(isomorphic(chain, chain2));
        CHECK_FALSE(isomorphic(chain, vee));
        CHECK(isomorphic(vee, opposite(opposite(vee))));
    }

    TEST_CASE("text parser: chains, bare elements, comments")
    {
        const Poset p = io::parse_poset("# comment\na < b < c\nd e\n\nb < e  # trailing\n");
        CHECK(p.size() == 5);
        CHECK(p.less(p.index_of("a"), p.index_of("c")));
        CHECK(p.less(p.index_of("a"), p.index_of("e")));
        CHECK_FALSE(p.comparable(p.index_of("d"), p.index_of("a")));
    }

    TEST_CASE("text parser reports line and column")
    {
        try {
            io::parse_poset("a < b\nb < < c\n");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(e.line() == 2);
            CHECK(e.column() > 0);
        }
        CHECK_THROWS_AS(io::parse_poset("a < b\nb < a\n"), InputError);
    }

    TEST_CASE("JSON poset round trip")
    {
        const Poset p = io::parse_poset("a < b\nc < b\nd\n");
        const auto j = io::to_json(p);
        CHECK(io::parse_poset(j.dump()) == p);
        CHECK(io::parse_poset(io::to_text(p)) == p);
        CHECK_THROWS_AS(io::parse_poset("{\"elements\": [\"a\"], \"relations\": [[\"a\"]]}"), InputError);
    }
}
