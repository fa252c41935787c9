#pragma once

// Elementary moves on planar diagrams: nugatory-crossing detection and
// removal, kink insertion, both R2 directions, R3, and the alternating
// unknot decision procedure built on them.

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotcover/planar_diagram.hpp"

namespace knotcover {

enum class MoveKind { R1Add, R1Remove, R2Add, R2Remove, R3, Flype, BoxSlide, ParityMove, Rotation };

inline std::string move_kind_name(MoveKind k) {
    switch (k) {
        case MoveKind::R1Add: return "R1-add";
        case MoveKind::R1Remove: return "R1-remove";
        case MoveKind::R2Add: return "R2-add";
        case MoveKind::R2Remove: return "R2-remove";
        case MoveKind::R3: return "R3";
        case MoveKind::Flype: return "flype";
        case MoveKind::BoxSlide: return "box-slide";
        case MoveKind::ParityMove: return "parity-move";
        case MoveKind::Rotation: return "rotation";
    }
    return "?";
}

struct MoveRecord {
    MoveKind kind;
    std::vector<int> site;  // crossing/arc/box ids, meaning depends on kind
    std::string direction;
};

/// Crossings that appear twice on the boundary walk of a single face
/// (isthmus crossings, removable by a Reidemeister I move).
inline std::set<int> find_nugatory(const PlanarDiagram& d) {
    auto fs = compute_faces(d);
    std::set<int> out;
    for (const auto& f : fs.faces) {
        std::map<int, int> hits;
        for (const Dart& dt : f.corners) hits[dt.crossing]++;
        for (const auto& [c, k] : hits)
            if (k >= 2) out.insert(c);
    }
    return out;
}

namespace detail {

/// Remove the listed crossings and splice each listed arc pair into one
/// strand. Merged classes with no surviving slot occurrence become free
/// loops. Arc classes are renamed to their minimal member.
inline PlanarDiagram splice_out(const PlanarDiagram& d, const std::set<int>& gone,
                                const std::vector<std::pair<ArcId, ArcId>>& joins) {
    std::map<ArcId, ArcId> parent;
    std::function<ArcId(ArcId)> find = [&](ArcId x) {
        if (!parent.count(x)) parent[x] = x;
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto unite = [&](ArcId a, ArcId b) {
        ArcId ra = find(a), rb = find(b);
        if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    for (const auto& [a, b] : joins) unite(a, b);

    PlanarDiagram out;
    out.free_loops = d.free_loops;
    std::map<ArcId, int> survivors;
    for (int c = 0; c < d.crossing_count(); ++c) {
        if (gone.count(c)) continue;
        Crossing cr = d.crossings[c];
        for (ArcId& a : cr.arcs) {
            a = find(a);
            survivors[a]++;
        }
        out.crossings.push_back(cr);
    }
    // classes that were joined but no longer touch any crossing close up
    std::set<ArcId> roots;
    for (const auto& [a, b] : joins) {
        roots.insert(find(a));
        roots.insert(find(b));
    }
    for (ArcId r : roots)
        if (!survivors.count(r)) out.free_loops.push_back(r);
    std::sort(out.free_loops.begin(), out.free_loops.end());
    return out;
}

/// The face certifying that crossing c is nugatory, with the slot s1 such
/// that the face meets c at corners (c,s1) and (c,s1+2).
inline std::optional<int> nugatory_slot(const PlanarDiagram& d, const FaceSet& fs, int c) {
    for (const auto& f : fs.faces) {
        std::vector<int> slots;
        for (const Dart& dt : f.corners)
            if (dt.crossing == c) slots.push_back(dt.slot);
        if (slots.size() == 2 && (slots[0] + 2) % 4 == slots[1] % 4) return slots[0];
        if (slots.size() == 2 && (slots[1] + 2) % 4 == slots[0] % 4) return slots[1];
    }
    return std::nullopt;
}

}  // namespace detail

/// Remove a nugatory crossing: the strand pairs across the certifying face
/// are joined, untwisting the loop. Errors when c is not nugatory.
inline PlanarDiagram reduce_r1(const PlanarDiagram& d, int c) {
    if (c < 0 || c >= d.crossing_count()) fail("NotNugatory", "no such crossing");
    auto fs = compute_faces(d);
    auto s1 = detail::nugatory_slot(d, fs, c);
    if (!s1) fail("NotNugatory", "crossing " + std::to_string(c) + " is not nugatory");
    auto arc = [&](int s) { return d.crossings[c].arcs[((*s1 + s) % 4 + 4) % 4]; };
    PlanarDiagram out = detail::splice_out(d, {c}, {{arc(0), arc(1)}, {arc(2), arc(3)}});
    require_valid(out);
    return out;
}

/// Add a kink on the given arc. positive picks the handedness (removing a
/// positive kink divides the bracket by -A^3); under_first picks whether the
/// strand, entering along the kept piece of the arc, passes under or over
/// first. The loop sits at slots {2,3} or {0,1} for +1, {1,2} for -1.
inline PlanarDiagram r1_add(const PlanarDiagram& d, ArcId a, bool positive,
                            bool under_first = true) {
    ArcId maxid = 0;
    for (const auto& cr : d.crossings) maxid = std::max(maxid, *std::max_element(cr.arcs.begin(), cr.arcs.end()));
    for (ArcId l : d.free_loops) maxid = std::max(maxid, l);
    ArcId q = maxid + 1, l = maxid + 2;

    PlanarDiagram out = d;
    auto occ = arc_occurrences(d);
    if (occ.count(a)) {
        // split a at its later occurrence: that end becomes q
        Dart dt = occ.at(a)[1];
        out.crossings[dt.crossing].arcs[dt.slot] = q;
    } else {
        // kink on a crossing-free loop
        auto it = std::find(out.free_loops.begin(), out.free_loops.end(), a);
        if (it == out.free_loops.end()) fail("InvalidDiagram", "no such arc");
        out.free_loops.erase(it);
        q = a;  // the strand is a single arc through the new crossing
    }
    // strand runs p(=a) -> X -> l -> X -> q
    if (under_first)
        out.crossings.push_back(positive ? Crossing{{a, q, l, l}} : Crossing{{a, l, l, q}});
    else
        out.crossings.push_back(positive ? Crossing{{q, a, l, l}} : Crossing{{q, l, l, a}});
    require_valid(out);
    return out;
}

/// Push the strand at dart da across the strand at dart db through their
/// common face; the arc at da ends up passing over twice. The darts must
/// sit on one face and carry distinct arcs.
inline PlanarDiagram r2_add(const PlanarDiagram& d, Dart da, Dart db) {
    auto fs = compute_faces(d);
    if (fs.face_of.at(da) != fs.face_of.at(db)) fail("InvalidMove", "darts not on a common face");
    ArcId a = d.arc_at(da), b = d.arc_at(db);
    if (a == b) fail("InvalidMove", "self R2 not supported");
    auto occ = arc_occurrences(d);
    Dart da_far = alpha(d, occ, da);
    Dart db_far = alpha(d, occ, db);

    ArcId maxid = 0;
    for (const auto& cr : d.crossings) maxid = std::max(maxid, *std::max_element(cr.arcs.begin(), cr.arcs.end()));
    for (ArcId lp : d.free_loops) maxid = std::max(maxid, lp);
    ArcId a2 = maxid + 1, b2 = maxid + 2, ma = maxid + 3, mb = maxid + 4;

    PlanarDiagram base = d;
    base.crossings[da_far.crossing].arcs[da_far.slot] = a2;  // a keeps its da end
    base.crossings[db.crossing].arcs[db.slot] = b2;          // b keeps its far end

    // The b strand stays under at both new crossings; the two candidate slot
    // layouts are mirror gluings and at least one of them closes up planar.
    for (int variant = 0; variant < 2; ++variant) {
        PlanarDiagram out = base;
        if (variant == 0) {
            out.crossings.push_back({{mb, ma, b, a}});    // X1
            out.crossings.push_back({{b2, ma, mb, a2}});  // X2
        } else {
            out.crossings.push_back({{b, ma, mb, a}});    // X1 mirrored
            out.crossings.push_back({{mb, ma, b2, a2}});  // X2 mirrored
        }
        if (validate(out).ok) return out;
    }
    fail("InternalInvariant", "R2 insertion produced no planar gluing");
}

/// Cancel an R2 bigon: the face must be a bigon whose two strands pass one
/// fully over and one fully under.
inline PlanarDiagram r2_remove(const PlanarDiagram& d, int face_index) {
    auto fs = compute_faces(d);
    const Face& f = fs.faces.at(face_index);
    if (f.corners.size() != 2) fail("InvalidMove", "face is not a bigon");
    Dart dp = f.corners[0], dq = f.corners[1];
    int P = dp.crossing, Q = dq.crossing;
    if (P == Q) fail("InvalidMove", "degenerate bigon at a single crossing");
    if ((dp.slot + dq.slot) % 2 == 0)
        fail("InvalidMove", "twist bigon is not an R2 pair");
    int p = dp.slot, q = dq.slot;
    auto arcP = [&](int s) { return d.crossings[P].arcs[((p + s) % 4 + 4) % 4]; };
    auto arcQ = [&](int s) { return d.crossings[Q].arcs[((q + s) % 4 + 4) % 4]; };
    // strand 1: ext(P,p+2) - m1 - ext(Q,q+3); strand 2: ext(P,p+3) - m2 - ext(Q,q+2)
    PlanarDiagram out = detail::splice_out(
        d, {P, Q},
        {{arcP(2), arcP(0)}, {arcP(0), arcQ(3)}, {arcP(3), arcP(1)}, {arcP(1), arcQ(2)}});
    require_valid(out);
    return out;
}

/// Slide the free strand of a triangular face across the opposite crossing.
/// The face must have three corners at three distinct crossings and one of
/// its sides must run fully over or fully under at its two ends.
inline PlanarDiagram r3(const PlanarDiagram& d, int face_index) {
    auto fs = compute_faces(d);
    const Face& f = fs.faces.at(face_index);
    if (f.corners.size() != 3) fail("InvalidMove", "face is not a triangle");
    std::set<int> cs;
    for (const Dart& dt : f.corners) cs.insert(dt.crossing);
    if (cs.size() != 3) fail("InvalidMove", "triangle corners not at distinct crossings");

    // rotate the walk [d_b, d_a, d_t] so the side at d_t is uniformly
    // over or under: with corner slots, that is s_X + s_Y odd where
    // X = d_t.crossing, Y = d_b.crossing
    int pick = -1;
    for (int i = 0; i < 3; ++i) {
        int sX = f.corners[(i + 2) % 3].slot;
        int sY = f.corners[i].slot;
        if ((sX + sY) % 2 == 1) {
            pick = i;
            break;
        }
    }
    if (pick == -1) fail("InvalidMove", "no slideable strand on this triangle");
    Dart d_b = f.corners[pick], d_a = f.corners[(pick + 1) % 3], d_t = f.corners[(pick + 2) % 3];
    int X = d_t.crossing, Y = d_b.crossing, Z = d_a.crossing;
    int sx = d_t.slot, sy = d_b.slot, sz = d_a.slot;
    auto at = [&](int c, int base, int off) { return d.crossings[c].arcs[((base + off) % 4 + 4) % 4]; };

    // template: X = [e_T, n_A, t, a] rooted at t = slot sx
    ArcId t = at(X, sx, 0), a_arc = at(X, sx, 1), e_T = at(X, sx, 2), n_A = at(X, sx, 3);
    // Y = [t, n_B, w_T, b] rooted at b = slot sy
    ArcId b_arc = at(Y, sy, 0), t_chk = at(Y, sy, 1), n_B = at(Y, sy, 2), w_T = at(Y, sy, 3);
    // Z = [a, b, s_A, s_B] rooted at a = slot sz
    ArcId a_chk = at(Z, sz, 0), b_chk = at(Z, sz, 1), s_A = at(Z, sz, 2), s_B = at(Z, sz, 3);
    if (t != t_chk || a_arc != a_chk || b_arc != b_chk)
        fail("InternalInvariant", "triangle walk does not match the R3 template");

    bool T_under_X = (sx % 2 == 0);        // t occupies slots {sx, sx+2}
    bool T_under_Y = ((sy + 1) % 2 == 0);  // t at slot sy+1
    bool A_under_Z = (sz % 2 == 0);

    PlanarDiagram out = d;
    // X' = [t', a', w_T, s_A]; Y' = [e_T, b', t', s_B]; Z' = [n_A, n_B, a', b']
    auto rot1 = [](std::array<ArcId, 4> v) {
        return std::array<ArcId, 4>{v[1], v[2], v[3], v[0]};
    };
    std::array<ArcId, 4> nx{t, a_arc, w_T, s_A};
    std::array<ArcId, 4> ny{e_T, b_arc, t, s_B};
    std::array<ArcId, 4> nz{n_A, n_B, a_arc, b_arc};
    if (!T_under_X) nx = rot1(nx);
    if (!T_under_Y) ny = rot1(ny);
    if (!A_under_Z) nz = rot1(nz);
    out.crossings[X].arcs = nx;
    out.crossings[Y].arcs = ny;
    out.crossings[Z].arcs = nz;
    require_valid(out);
    return out;
}

/// Decide unknottedness of a connected alternating one-component diagram by
/// repeatedly removing nugatory crossings. For alternating diagrams this
/// terminates with the right answer; the log lists the removals performed.
/// Connectedness of the diagram is assumed (split alternating pictures are
/// rejected by validation).
struct UnknotCheckResult {
    bool is_unknot;
    std::vector<MoveRecord> log;
    PlanarDiagram final_diagram;
};

inline UnknotCheckResult alternating_unknot_check(const PlanarDiagram& d0) {
    require_valid(d0);
    if (!is_alternating(d0)) fail("NotAlternating", "diagram is not alternating");
    if (components(d0).size() != 1) fail("MultiComponent", "knot expected, link given");

    PlanarDiagram d = d0;
    UnknotCheckResult res{false, {}, d};
    while (d.crossing_count() > 0) {
        auto nug = find_nugatory(d);
        if (nug.empty()) break;
        int c = *nug.begin();
        d = reduce_r1(d, c);
        res.log.push_back({MoveKind::R1Remove, {c}, ""});
    }
    res.is_unknot = (d.crossing_count() == 0);
    res.final_diagram = d;
    return res;
}

}  // namespace knotcover
