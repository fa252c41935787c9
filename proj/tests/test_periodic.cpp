#include <catch2/catch_amalgamated.hpp>

#include "knotcover/tangle.hpp"
#include "test_helpers.hpp"

using namespace knotcover;

namespace {

std::vector<Dart> face_corners(const PlanarDiagram& d, const FaceRef& ref) {
    auto fs = compute_faces(d);
    return fs.faces[fs.face_of.at(*ref.corner)].corners;
}

// marked-diagram isomorphism, allowing the two axis points to swap roles
bool closure_isomorphic(const AxisClosureDiagram& a, const AxisClosureDiagram& b) {
    if (a.k != b.k) return false;
    if (a.diagram.crossing_count() == 0 || b.diagram.crossing_count() == 0)
        return a.diagram.crossing_count() == b.diagram.crossing_count() &&
               a.diagram.free_loops.size() == b.diagram.free_loops.size();
    auto sig_a = canonical_signature(
        a.diagram, {face_corners(a.diagram, a.axis_face), face_corners(a.diagram, a.infinity_face)});
    auto sig_b1 = canonical_signature(
        b.diagram, {face_corners(b.diagram, b.axis_face), face_corners(b.diagram, b.infinity_face)});
    auto sig_b2 = canonical_signature(
        b.diagram, {face_corners(b.diagram, b.infinity_face), face_corners(b.diagram, b.axis_face)});
    return sig_a == sig_b1 || sig_a == sig_b2;
}

std::vector<TangleDiagram> corpus() {
    return {
        tangle_from_braid(1, {}),
        tangle_from_braid(2, {1}),
        tangle_from_braid(2, {-1}),
        tangle_from_braid(2, {1, 1}),
        tangle_from_braid(2, {1, 1, 1}),
        tangle_from_braid(3, {1, 2}),
        tangle_from_braid(3, {1, -2}),
        tangle_from_braid(3, {1, 1, 2}),
        tangle_from_braid(3, {2, 2, 1, 1}),
        tangle_from_braid(4, {1, 2, 3}),
        tangle_from_braid(4, {2, 1, 3, 2}),
        tangle_from_braid(4, {1, 3, 2, 2, 1, 3}),
    };
}

}  // namespace

TEST_CASE("braid tangles validate and know their permutation") {
    auto t = tangle_from_braid(3, {1, 2});
    CHECK(t.crossing_count() == 2);
    auto perm = tangle_permutation(t);
    CHECK(perm == std::vector<int>{2, 0, 1});

    auto id4 = tangle_from_braid(4, {});
    CHECK(tangle_permutation(id4) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("build_periodic basics") {
    SECTION("n below 2 is rejected") {
        CHECK_THROWS_AS(build_periodic(tangle_from_braid(2, {1}), 1), DomainError);
    }
    SECTION("crossingless strand wraps into the unknot") {
        auto p = build_periodic(tangle_from_braid(1, {}), 3);
        CHECK(p.diagram.crossing_count() == 0);
        CHECK(p.diagram.free_loops.size() == 1);
        auto q = quotient(p);
        CHECK(q.k == 1);
        CHECK(q.diagram.crossing_count() == 0);
    }
    SECTION("one twist, three periods: the trefoil") {
        auto p = build_periodic(tangle_from_braid(2, {1}), 3);
        CHECK(p.diagram.crossing_count() == 3);
        CHECK(is_alternating(p.diagram));
        CHECK(components(p.diagram).size() == 1);
        LaurentPoly j = jones(p.diagram, orient(p.diagram));
        LaurentPoly jt = jones(kctest::trefoil(), orient(kctest::trefoil()));
        CHECK((j == jt || j == jt.mirrored()));
    }
}

TEST_CASE("quotient round trip against the closure, n = 2..6") {
    for (const auto& t : corpus()) {
        AxisClosureDiagram cl = closure(t);
        CHECK(cl.k == t.k);
        for (int n = 2; n <= 6; ++n) {
            auto p = build_periodic(t, n);
            CHECK(p.diagram.crossing_count() == n * t.crossing_count());
            AxisClosureDiagram q = quotient(p);
            INFO("k=" << t.k << " crossings=" << t.crossing_count() << " n=" << n);
            CHECK(closure_isomorphic(q, cl));
        }
    }
}

TEST_CASE("detect_period finds constructed rotations") {
    for (const auto& t : corpus()) {
        if (t.crossing_count() == 0) continue;
        for (int n : {2, 3, 4}) {
            auto p = build_periodic(t, n);
            auto found = detect_period(p.diagram, n);
            INFO("k=" << t.k << " crossings=" << t.crossing_count() << " n=" << n);
            REQUIRE(found.has_value());
            CHECK(found->n == n);
            // the witness is a genuine period: its quotient works
            auto q = quotient(*found);
            CHECK(q.diagram.crossing_count() == t.crossing_count());
        }
    }
}

TEST_CASE("detect_period on pinned diagrams") {
    SECTION("standard trefoil has a visible 3-period") {
        auto found = detect_period(kctest::trefoil(), 3);
        REQUIRE(found.has_value());
        auto q = quotient(*found);
        CHECK(q.diagram.crossing_count() == 1);
        CHECK(q.k == 2);
    }
    SECTION("figure-eight (braid closure) has no 5-period, but a 2-period") {
        auto fig8 = build_periodic(tangle_from_braid(3, {1, -2}), 2).diagram;
        REQUIRE(fig8.crossing_count() == 4);
        CHECK_FALSE(detect_period(fig8, 5).has_value());
        CHECK(detect_period(fig8, 2).has_value());
    }
    SECTION("trefoil has no 2-period on this diagram") {
        CHECK_FALSE(detect_period(kctest::trefoil(), 2).has_value());
    }
}

TEST_CASE("identity automorphism is rejected") {
    auto p = build_periodic(tangle_from_braid(2, {1}), 3);
    PeriodicDiagram bad = p;
    for (int c = 0; c < bad.diagram.crossing_count(); ++c) bad.crossing_map[c] = c;
    CHECK_THROWS_AS(quotient(bad), DomainError);
}

TEST_CASE("quotient marks: the two fixed faces project to distinct faces") {
    auto p = build_periodic(tangle_from_braid(3, {1, 2}), 4);
    auto q = quotient(p);
    REQUIRE(q.axis_face.corner.has_value());
    REQUIRE(q.infinity_face.corner.has_value());
    auto fs = compute_faces(q.diagram);
    CHECK(fs.face_of.at(*q.axis_face.corner) != fs.face_of.at(*q.infinity_face.corner));
    CHECK(q.k == 3);
}
