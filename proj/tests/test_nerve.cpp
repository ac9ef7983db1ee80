#include <doctest.h>

#include <filesystem>
#include <set>

#include "fintop/errors.hpp"
#include "fintop/generators.hpp"
#include "fintop/io.hpp"
#include "fintop/nerve.hpp"
#include "oracles.hpp"

using namespace fintop;

namespace {

ComplexCover fixture_cover(const std::string& name)
{
    const auto dir = std::filesystem::path(FINTOP_SOURCE_DIR) / "fixtures" / name;
    return io::complex_cover(io::load_complex(dir / "complex.txt"), io::load_cover(dir / "cover.txt"));
}

std::vector<std::size_t> bettis(const HomologyProfile& h)
{
    std::vector<std::size_t> out;
    for (const auto& g : h.groups)
        out.push_back(g.betti);
    return out;
}

} // namespace

TEST_SUITE("nerve")
{
    TEST_CASE("two-part cover of a triangle boundary: nerve versus completion")
    {
        const auto cover = fixture_cover("triangle-boundary-cover");
        const auto n = nerve(cover);
        CHECK(n.f_vector() == std::vector<std::size_t>{2, 1});
        CHECK(homology(n, true).is_zero());

        const auto cw = completion_cw(cover);
        CHECK(cw.f_vector() == std::vector<std::size_t>{2, 2});
        const auto h = homology(cw);
        CHECK(h.describe(0) == "Z");
        CHECK(h.describe(1) == "Z");
        CHECK(h.groups.size() == 2);

        const auto cp = completion_poset(cover.face_cover());
        std::vector<std::string> edges;
        for (Index e = 0; e < cp.poset.size(); ++e)
            if (cp.dims[e] == 1)
                edges.push_back(cp.poset.id(e));
        CHECK(edges == std::vector<std::string>{"{L,T}|{u}", "{L,T}|{v}"});
        CHECK(validate_simplex_cells(cp.poset, cp.dims).empty());

        const auto cls = classify_cover(cover);
        CHECK(cls.kind == CoverKind::QuasiGood);

        const auto rep = verify_completion_homology(cover);
        CHECK(rep.status == Status::Certified);
        CHECK(rep.comparison.equal);
        REQUIRE(rep.completion);
        CHECK(rep.completion->f_vector() == std::vector<std::size_t>{2, 2});
    }

    TEST_CASE("good cover by edges")
    {
        const auto cover = fixture_cover("triangle-boundary-edges");
        const auto& pc = cover.face_cover();
        CHECK(classify_cover(cover).kind == CoverKind::Good);
        const auto n = nerve(cover);
        CHECK(n.f_vector() == std::vector<std::size_t>{3, 3});

        const auto faces = trivial_faces(pc);
        CHECK(faces.status == Status::Certified);
        CHECK(faces.poset == nerve_poset(pc));
        for (const auto& x : pc.base().ids()) {
            const auto containing = faces_containing(pc, faces, x);
            CHECK_FALSE(containing.empty());
            const Poset sub = induced_subposet(containing);
            CHECK(maximal_elements(sub).size() == 1);
        }
        CHECK_THROWS_AS(faces_containing(pc, faces, "nope"), InputError);

        for (auto v : {NerveVariant::GoodPoset, NerveVariant::TrivialFaces, NerveVariant::QuasiGood}) {
            const auto rep = verify_nerve_equivalence(pc, v);
            CHECK(rep.status == Status::Certified);
            CHECK(rep.comparison.equal);
            REQUIRE(rep.equivalence);
            CHECK(rep.equivalence->to_source);
            CHECK(rep.equivalence->to_target);
        }
    }

    TEST_CASE("quasi-good cover with a disconnected intersection")
    {
        const auto cover = fixture_cover("hexagon-arcs");
        const auto& pc = cover.face_cover();
        CHECK(classify_cover(cover).kind == CoverKind::QuasiGood);
        CHECK(verify_nerve_equivalence(pc, NerveVariant::GoodPoset).status != Status::Certified);
        const auto rep = verify_nerve_equivalence(pc, NerveVariant::QuasiGood);
        CHECK(rep.status == Status::Certified);
        CHECK(bettis(rep.nerve_homology) == std::vector<std::size_t>{1, 1});
        CHECK(bettis(homology(completion_cw(cover))) == std::vector<std::size_t>{1, 1});
        CHECK(homology(nerve(cover), true).is_zero());
    }

    TEST_CASE("a part with non-trivial homology makes the cover neither")
    {
        const auto hexagon = io::load_complex(std::filesystem::path(FINTOP_SOURCE_DIR) / "fixtures/hexagon/complex.txt");
        std::vector<std::vector<std::string>> all;
        for (const auto& f : hexagon.facets())
            all.push_back(hexagon.labels(f));
        const ComplexCover cover(hexagon, {{"P", all}, {"Q", {all[0]}}});
        CHECK(classify_cover(cover).kind == CoverKind::Neither);
        CHECK(verify_nerve_equivalence(cover.face_cover(), NerveVariant::QuasiGood).status == Status::Refuted);
    }

    TEST_CASE("cover errors")
    {
        const Poset p = Poset::from_relations({}, {{"a", "c"}, {"b", "c"}});
        CHECK_THROWS_AS(PosetCover::from_ids(p, {{"A", {"c"}}}), InputError);
        CHECK_NOTHROW(PosetCover::from_ids(p, {{"A", {"c"}}}, true));
        CHECK_THROWS_AS(PosetCover::from_ids(p, {{"A", {"a"}}}), InputError);
        CHECK_THROWS_AS(PosetCover::from_ids(p, {{"A", {"a", "b", "c"}}, {"A", {"a"}}}), InputError);
        CHECK_THROWS_AS(PosetCover::from_ids(p, {{"", {"a", "b", "c"}}}), InputError);
        CHECK_THROWS_AS(PosetCover::from_ids(p, {{"A", {"a", "b", "zz"}}}), InputError);

        const auto k = SimplicialComplex::from_facets({{"u", "v"}, {"v", "w"}});
        CHECK_THROWS_AS(ComplexCover(k, {{"A", {{"u", "w"}}}, {"B", {{"u", "v"}, {"v", "w"}}}}), InputError);
        CHECK_THROWS_AS(ComplexCover(k, {{"A", {{"u", "v"}}}}), InputError);
    }

    TEST_CASE("intersections agree with brute-force subset enumeration")
    {
        Rng rng(61);
        for (int trial = 0; trial < 100; ++trial) {
            const std::size_t n = 1 + rng.below(8), m = 1 + rng.below(5);
            std::vector<Bits> parts(m, Bits(n));
            for (auto& b : parts)
                for (std::size_t i = 0; i < n; ++i)
                    if (rng.chance(0.5))
                        b.set(i);
            std::set<std::vector<std::size_t>> brute;
            for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
                Bits w(n);
                w.set();
                std::vector<std::size_t> j;
                for (std::size_t i = 0; i < m; ++i)
                    if (mask >> i & 1) {
                        w &= parts[i];
                        j.push_back(i);
                    }
                if (w.any())
                    brute.insert(j);
            }
            std::set<std::vector<std::size_t>> found;
            for (const auto& f : enumerate_intersections(parts))
                found.insert(f.parts);
            CHECK(found == brute);
        }
    }

    TEST_CASE("completion equals the nerve when every intersection is connected")
    {
        Rng rng(62);
        for (int trial = 0; trial < 20; ++trial) {
            const auto cover = random_good_cover(rng);
            REQUIRE(cover);
            const auto cp = completion_poset(*cover);
            CHECK(isomorphic(cp.poset, nerve_poset(*cover)));
            CHECK(validate_simplex_cells(cp.poset, cp.dims).empty());
        }
    }

    TEST_CASE("random good and quasi-good covers are certified")
    {
        Rng rng(63);
        for (int trial = 0; trial < 15; ++trial) {
            const auto good = random_good_cover(rng);
            REQUIRE(good);
            const auto rg = verify_nerve_equivalence(*good, NerveVariant::GoodPoset);
            CHECK(rg.status == Status::Certified);
            const auto ref = oracle::betti(oracle::chains(oracle::order_of(good->base())));
            CHECK(bettis(homology(nerve(*good))) == oracle::trimmed(ref.rational));

            const auto quasi = random_quasi_good_cover(rng);
            REQUIRE(quasi);
            const auto rq = verify_nerve_equivalence(*quasi, NerveVariant::QuasiGood);
            CHECK(rq.status == Status::Certified);
            CHECK(same_homology(homology(quasi->base()), homology(completion_cw(completion_poset(*quasi)))).equal);
        }
    }
}
