#include <doctest.h>

#include <filesystem>

#include "fintop/generators.hpp"
#include "fintop/cylinder.hpp"
#include "fintop/homology.hpp"
#include "fintop/io.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

SimplicialComplex fixture_complex(const std::string& name)
{
    return io::load_complex(std::filesystem::path(FINTOP_SOURCE_DIR) / "fixtures" / name / "complex.txt");
}

std::vector<std::size_t> bettis(const HomologyProfile& h)
{
    std::vector<std::size_t> out;
    for (const auto& g : h.groups)
        out.push_back(g.betti);
    return out;
}

} // namespace

TEST_SUITE("homology")
{
    TEST_CASE("shipped triangulations")
    {
        const auto hexagon = homology(fixture_complex("hexagon"));
        CHECK(hexagon.describe(0) == "Z");
        CHECK(hexagon.describe(1) == "Z");
        CHECK(hexagon.groups.size() == 2);

        const auto sphere = homology(fixture_complex("tetrahedron-boundary"));
        CHECK(bettis(sphere) == std::vector<std::size_t>{1, 0, 1});
        CHECK(sphere.degree(1).is_zero());

        const auto rp2 = homology(fixture_complex("projective-plane"));
        CHECK(rp2.describe(0) == "Z");
        CHECK(rp2.degree(1).betti == 0);
        CHECK(rp2.degree(1).torsion == std::vector<Integer>{2});
        CHECK(rp2.degree(2).is_zero());

        const auto torus = homology(fixture_complex("torus"));
        CHECK(bettis(torus) == std::vector<std::size_t>{1, 2, 1});
        CHECK(torus.degree(1).torsion.empty());
    }

    TEST_CASE("shipped triangulations against the independent rank oracle")
    {
        for (const char* name : {"hexagon", "tetrahedron-boundary", "projective-plane", "torus"}) {
            const auto k = fixture_complex(name);
            const auto ref = oracle::betti(oracle::faces_of(k));
            const auto h = homology(k);
            for (std::size_t d = 0; d < ref.rational.size(); ++d)
                CHECK(h.betti(d) == ref.rational[d]);
        }
        // Z/2 torsion in H1 of the projective plane shows up as an extra
        // class mod 2 in degrees 1 and 2, and not mod 3.
        const auto rp2 = oracle::betti(oracle::faces_of(fixture_complex("projective-plane")));
        CHECK(rp2.mod.at(2) == std::vector<std::size_t>{1, 1, 1});
        CHECK(rp2.mod.at(3) == std::vector<std::size_t>{1, 0, 0});
    }

    TEST_CASE("Smith factors form a divisibility chain")
    {
        const auto m = IntegerMatrix::from_dense({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
        const auto s = smith_normal_form(m);
        CHECK(s.invariant_factors == std::vector<Integer>{2, 6, 12});
        CHECK(s.rank == 3);

        Rng rng(99);
        for (int trial = 0; trial < 50; ++trial) {
            std::vector<std::vector<Integer>> rows(1 + rng.below(6));
            const std::size_t cols = 1 + rng.below(6);
            for (auto& r : rows)
                for (std::size_t c = 0; c < cols; ++c)
                    r.push_back(static_cast<long long>(rng.below(21)) - 10);
            const auto mat = IntegerMatrix::from_dense(rows, cols);
            const auto snf = smith_normal_form(mat);
            for (std::size_t i = 1; i < snf.invariant_factors.size(); ++i)
                CHECK(snf.invariant_factors[i] % snf.invariant_factors[i - 1] == 0);
            for (const auto& d : snf.invariant_factors)
                CHECK(d > 0);
            std::vector<std::vector<oracle::BigInt>> big(rows.begin(), rows.end());
            CHECK(snf.rank == oracle::rank_bareiss(big));
            CHECK(rational_rank(mat) == snf.rank);
            // Sparse and dense paths agree.
            CHECK(smith_normal_form(mat, 0).invariant_factors == snf.invariant_factors);
        }
    }

    TEST_CASE("random complexes: Betti numbers over Q and Z/p match the oracle")
    {
        Rng rng(7);
        for (int trial = 0; trial < 40; ++trial) {
            const auto k = random_complex(rng, 7, 6, 3);
            const auto ref = oracle::betti(oracle::faces_of(k));
            const auto cc = chain_complex(k);
            const auto q = rational_betti_numbers(cc);
            for (std::size_t d = 0; d < ref.rational.size(); ++d) {
                CHECK(q.at(d) == ref.rational[d]);
                CHECK(betti_numbers_mod_p(cc, 2).at(d) == ref.mod.at(2)[d]);
                CHECK(betti_numbers_mod_p(cc, 3).at(d) == ref.mod.at(3)[d]);
            }
            const auto h = homology(k);
            for (std::size_t d = 0; d < ref.rational.size(); ++d)
                CHECK(h.betti(d) == ref.rational[d]);
            CHECK(euler_characteristic(k) == oracle::euler(oracle::faces_of(k)));
            CHECK(euler_characteristic(h) == euler_characteristic(k));
            CHECK(h.betti(0) == count_components(k));
        }
    }

    TEST_CASE("homology is invariant under barycentric subdivision")
    {
        Rng rng(8);
        for (int trial = 0; trial < 20; ++trial) {
            const auto k = random_complex(rng, 6, 4, 2);
            CHECK(same_homology(homology(k), homology(barycentric_complex(k))).equal);
            const Poset p = random_poset(rng, 1 + rng.below(7), 0.4);
            CHECK(same_homology(homology(p), homology(barycentric_poset(p))).equal);
        }
    }

    TEST_CASE("Euler characteristic examples")
    {
        CHECK(euler_characteristic(SimplicialComplex::from_facets({{"a"}})) == 1);
        CHECK(euler_characteristic(fixture_complex("hexagon")) == 0);
        CHECK(euler_characteristic(SimplicialComplex::from_facets({{"u", "v"}, {"v", "w"}, {"u", "w"}})) == 0);
        CHECK(euler_characteristic(fixture_complex("projective-plane")) == 1);
    }

    TEST_CASE("reduced homology and comparisons")
    {
        const Poset point = Poset::from_relations({"p"}, {});
        const Poset pair = Poset::from_relations({"a", "b"}, {});
        CHECK(homology(point, true).is_zero());
        CHECK(homology(point, true).summary() == homology(point, true).summary());
        const auto cmp = same_homology(homology(point, true), homology(pair, true));
        CHECK_FALSE(cmp.equal);
        CHECK_FALSE(cmp.differences.empty());
        CHECK(homology(pair, true).describe(0) == "Z");

        const auto empty = homology(Poset(), true);
        CHECK(empty.empty_space);
        CHECK(empty.first_nonzero_degree() == -1);
        CHECK_FALSE(empty.is_zero());
    }

    TEST_CASE("truncated comparison")
    {
        const auto sphere = homology(fixture_complex("tetrahedron-boundary"), true);
        const auto point = homology(SimplicialComplex::from_facets({{"a"}}), true);
        CHECK(same_homology_up_to(sphere, point, 1).equal);
        CHECK_FALSE(same_homology_up_to(sphere, point, 2).equal);
    }
}
