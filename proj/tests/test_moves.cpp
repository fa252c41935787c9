#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"

using namespace knotcover;
using kctest::kink;
using kctest::trefoil;
using kctest::unknot0;

namespace {

PlanarDiagram stacked_kinks() {
    // strand: a -c0- l1 loop, then b -c1- l2 loop
    PlanarDiagram d;
    d.crossings = {{{1, 3, 3, 2}}, {{2, 4, 4, 1}}};
    return d;
}

}  // namespace

TEST_CASE("find_nugatory") {
    CHECK(find_nugatory(kink()) == std::set<int>{0});
    CHECK(find_nugatory(trefoil()).empty());
    CHECK(find_nugatory(stacked_kinks()) == std::set<int>{0, 1});
}

TEST_CASE("reduce_r1 on a single kink yields the 0-crossing unknot") {
    auto d = reduce_r1(kink(), 0);
    CHECK(d.crossing_count() == 0);
    CHECK(d.free_loops.size() == 1);
    CHECK(components(d).size() == 1);
}

TEST_CASE("reduce_r1 on stacked kinks yields a single kink") {
    auto d0 = stacked_kinks();
    REQUIRE(validate(d0).ok);
    auto d = reduce_r1(d0, 1);
    CHECK(d.crossing_count() == 1);
    CHECK(d.free_loops.empty());
    CHECK(canonical_signature(d) == canonical_signature(kink()));
}

TEST_CASE("reduce_r1 rejects non-nugatory crossings") {
    CHECK_THROWS_AS(reduce_r1(trefoil(), 0), DomainError);
    CHECK_THROWS_AS(reduce_r1(trefoil(), 1), DomainError);
    CHECK_THROWS_AS(reduce_r1(trefoil(), 2), DomainError);
}

TEST_CASE("r1_add then reduce_r1 round-trips") {
    auto d = trefoil();
    auto d1 = r1_add(d, 1, true);
    CHECK(d1.crossing_count() == 4);
    auto nug = find_nugatory(d1);
    REQUIRE(nug.size() == 1);
    auto d2 = reduce_r1(d1, *nug.begin());
    CHECK(canonical_signature(d2) == canonical_signature(d));
}

TEST_CASE("alternating_unknot_check") {
    SECTION("chain of four kinks reduces with a four-step log") {
        PlanarDiagram d = unknot0();
        for (int i = 0; i < 4; ++i) {
            ArcId on = d.free_loops.empty() ? d.crossings[0].arcs[0] : d.free_loops[0];
            for (bool uf : {true, false}) {
                PlanarDiagram cand = r1_add(d, on, true, uf);
                if (is_alternating(cand)) {
                    d = cand;
                    break;
                }
            }
        }
        REQUIRE(d.crossing_count() == 4);
        REQUIRE(is_alternating(d));
        auto res = alternating_unknot_check(d);
        CHECK(res.is_unknot);
        CHECK(res.log.size() == 4);
        for (const auto& m : res.log) CHECK(m.kind == MoveKind::R1Remove);
    }
    SECTION("trefoil stalls at three crossings") {
        auto res = alternating_unknot_check(trefoil());
        CHECK_FALSE(res.is_unknot);
        CHECK(res.final_diagram.crossing_count() == 3);
        CHECK(res.log.empty());
    }
    SECTION("0-crossing diagram: true with empty log") {
        auto res = alternating_unknot_check(unknot0());
        CHECK(res.is_unknot);
        CHECK(res.log.empty());
    }
    SECTION("precondition failures") {
        PlanarDiagram t = trefoil();
        t.crossings[0] = {{5, 1, 4, 2}};  // non-alternating variant
        CHECK_THROWS_AS(alternating_unknot_check(t), DomainError);
        CHECK_THROWS_AS(alternating_unknot_check(kctest::hopf()), DomainError);
    }
}

TEST_CASE("r2_add creates a removable bigon") {
    auto d = kink();
    auto fs = compute_faces(d);
    // pick the 2-corner face; its darts carry distinct arcs
    for (const auto& f : fs.faces) {
        if (f.corners.size() != 2) continue;
        if (d.arc_at(f.corners[0]) == d.arc_at(f.corners[1])) continue;
        auto d2 = r2_add(d, f.corners[0], f.corners[1]);
        CHECK(d2.crossing_count() == 3);
        // find the new over/under bigon and remove it again
        auto fs2 = compute_faces(d2);
        bool removed = false;
        for (int i = 0; i < static_cast<int>(fs2.faces.size()); ++i) {
            const auto& g = fs2.faces[i];
            if (g.corners.size() != 2 || g.corners[0].crossing == g.corners[1].crossing) continue;
            if ((g.corners[0].slot + g.corners[1].slot) % 2 == 0) continue;
            auto d3 = r2_remove(d2, i);
            CHECK(canonical_signature(d3) == canonical_signature(d));
            removed = true;
            break;
        }
        CHECK(removed);
    }
}

TEST_CASE("random move-generated diagrams stay valid") {
    std::mt19937 rng(20240811);
    for (int i = 0; i < 40; ++i) {
        auto d = kctest::random_diagram(rng, 3 + i % 9);
        auto rep = validate(d);
        REQUIRE(rep.ok);
        REQUIRE(components(d).size() >= 1);
    }
}
