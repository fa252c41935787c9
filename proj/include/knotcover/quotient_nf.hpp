#pragma once

// The pinwheel normal form of alternating axis-closure diagrams of the
// trivial knot: construction, canonicalization, and the normalization
// procedure that recovers the parameters by stripping twist strings at the
// axis.
//
// A pinwheel (k; c_1..c_{k-1}) is one strand spiralling k times around the
// axis dot, consecutive wraps twisting through a box of c_i crossings. The
// innermost wrap bounds a monogon containing the dot, the outermost one a
// monogon containing the point at infinity, and each box is a chain of
// bigons. Normalization locates the dot monogon, strips the maximal
// adjacent twist string, and recurses with k reduced by one.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotcover/moves.hpp"
#include "knotcover/tangle.hpp"

namespace knotcover {

struct QuotientNormalForm {
    int k = 1;
    std::vector<int> boxes;  // c_1..c_{k-1}, all >= 1
    bool mirror = false;

    void validate() const {
        if (k < 1) fail("InvalidNormalForm", "k must be >= 1");
        if (static_cast<int>(boxes.size()) != k - 1)
            fail("InvalidNormalForm", "need exactly k-1 boxes");
        for (int c : boxes)
            if (c < 1) fail("InvalidNormalForm", "box crossing counts must be >= 1");
    }

    int total_crossings() const { return std::accumulate(boxes.begin(), boxes.end(), 0); }

    friend bool operator==(const QuotientNormalForm& a, const QuotientNormalForm& b) {
        return a.k == b.k && a.boxes == b.boxes && a.mirror == b.mirror;
    }

    std::string str() const {
        std::string s = std::to_string(k) + ";";
        for (size_t i = 0; i < boxes.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(boxes[i]);
        }
        s += mirror ? ";-" : ";+";
        return s;
    }
};

/// The staircase tangle whose twists realize the boxes: braid word
/// 1^c1 2^c2 ... (k-1)^c(k-1).
inline TangleDiagram nf_to_tangle(const QuotientNormalForm& q) {
    q.validate();
    std::vector<int> word;
    for (int i = 0; i < q.k - 1; ++i)
        for (int j = 0; j < q.boxes[i]; ++j) word.push_back(i + 1);
    return tangle_from_braid(q.k, word);
}

namespace detail {

/// Walk the single strand of a diagram; returns the passages as (crossing,
/// entering slot) in strand order.
inline std::vector<Dart> strand_passages(const PlanarDiagram& d) {
    auto occ = arc_occurrences(d);
    auto comps = components(d);
    if (comps.size() != 1) fail("MultiComponent", "expected a knot diagram");
    std::vector<Dart> passages;
    ArcId a = comps[0][0];
    Dart head = occ.at(a)[1];
    for (size_t i = 0; i < comps[0].size(); ++i) {
        passages.push_back(head);
        Dart through{head.crossing, (head.slot + 2) % 4};
        a = d.arc_at(through);
        head = alpha(d, occ, through);
    }
    return passages;
}

/// Rotate crossings so that passages alternate under/over along the strand,
/// under first at even positions when parity = 0. Returns the applied
/// rotation (0 or 1) per crossing; fails when no alternating assignment
/// exists.
inline std::vector<int> alternation_rotations(const PlanarDiagram& d, int parity) {
    auto passages = strand_passages(d);
    std::vector<int> rot(d.crossing_count(), -1);
    for (size_t pos = 0; pos < passages.size(); ++pos) {
        const Dart& p = passages[pos];
        bool want_under = (static_cast<int>(pos) % 2) == parity;
        // under pair occupies old slots {r, r+2}; entering slot s is under
        // iff s has the parity of r
        int need = want_under ? p.slot % 2 : (p.slot + 1) % 2;
        if (rot[p.crossing] == -1)
            rot[p.crossing] = need;
        else if (rot[p.crossing] != need)
            fail("NotAlternating", "no alternating assignment exists for this walk");
    }
    return rot;
}

inline void apply_rotations(PlanarDiagram& d, const std::vector<int>& rot) {
    for (int c = 0; c < d.crossing_count(); ++c) {
        if (rot[c] == 1) {
            auto& a = d.crossings[c].arcs;
            a = {a[1], a[2], a[3], a[0]};
        }
    }
}

inline Dart rotate_corner(const Dart& corner, const std::vector<int>& rot) {
    // old slot s sits at new slot (s - rot) mod 4
    return {corner.crossing, ((corner.slot - rot[corner.crossing]) % 4 + 4) % 4};
}

/// Sign of the kink whose loop arc occupies adjacent slots (s, s+1):
/// positive for {0,1} and {2,3}, negative otherwise (under pair on {0,2}).
inline int kink_sign_at(int first_loop_slot) { return first_loop_slot % 2 == 0 ? +1 : -1; }

}  // namespace detail

/// Emit the pinwheel diagram of the normal form: k wraps around the dot,
/// boxes of c_i crossings between consecutive wraps, alternating with the
/// chirality picked by the mirror bit. The result is alternating and its
/// knot is trivial.
inline AxisClosureDiagram nf_to_diagram(const QuotientNormalForm& q) {
    q.validate();
    AxisClosureDiagram out;
    out.k = q.k;
    if (q.k == 1) {
        out.diagram.free_loops = {1};
        out.loop_windings[1] = 1;
        out.axis_face = FaceRef::at_loop(1, 0);
        out.infinity_face = FaceRef::at_loop(1, 1);
        return out;
    }

    // crossing g = position in box order; slots before the over/under pass:
    // 0 = up-right, 1 = up-left, 2 = down-left, 3 = down-right
    int total = q.total_crossings();
    PlanarDiagram d;
    d.crossings.assign(total, Crossing{{0, 0, 0, 0}});
    int next_arc = 1;
    auto connect = [&](int c1, int s1, int c2, int s2) {
        d.crossings[c1].arcs[s1] = next_arc;
        d.crossings[c2].arcs[s2] = next_arc;
        ++next_arc;
    };

    std::vector<int> box_start(q.k - 1);
    int g = 0;
    for (int i = 0; i < q.k - 1; ++i) {
        box_start[i] = g;
        g += q.boxes[i];
    }
    connect(0, 0, 0, 1);  // inner hairpin around the dot
    for (int i = 0; i < q.k - 1; ++i) {
        int first = box_start[i], last = box_start[i] + q.boxes[i] - 1;
        for (int j = first; j < last; ++j) {
            connect(j, 2, j + 1, 1);  // left ladder strand
            connect(j, 3, j + 1, 0);  // right ladder strand
        }
        if (i + 1 < q.k - 1) {
            connect(last, 2, box_start[i + 1], 0);  // straight connector
            connect(last, 3, box_start[i + 1], 1);  // hairpin around the dot
        } else {
            connect(last, 2, last, 3);  // outer hairpin around infinity
        }
    }

    // alternation: choose the global parity whose dot kink matches mirror
    std::vector<int> rot;
    for (int parity : {0, 1}) {
        std::vector<int> cand = detail::alternation_rotations(d, parity);
        // after rotating crossing 0 by cand[0], the dot loop sits at old
        // slots {0,1} -> sign + iff cand[0] == 0
        int sign = (cand[0] == 0) ? +1 : -1;
        if ((sign < 0) == q.mirror) {
            rot = cand;
            break;
        }
    }
    if (rot.empty()) fail("InternalInvariant", "no alternation parity matches the mirror bit");
    detail::apply_rotations(d, rot);
    require_valid(d);
    if (!is_alternating(d)) fail("InternalInvariant", "pinwheel is not alternating");

    out.diagram = d;
    out.axis_face = FaceRef::at_corner(detail::rotate_corner({0, 0}, rot));
    out.infinity_face = FaceRef::at_corner(detail::rotate_corner({total - 1, 2}, rot));

    auto fs = compute_faces(d);
    if (fs.faces[fs.face_of.at(*out.axis_face.corner)].corners.size() != 1 ||
        fs.faces[fs.face_of.at(*out.infinity_face.corner)].corners.size() != 1)
        fail("InternalInvariant", "pinwheel axis faces are not monogons");
    if (face_winding(d, fs, fs.face_of.at(*out.axis_face.corner),
                     fs.face_of.at(*out.infinity_face.corner)) != q.k)
        fail("InternalInvariant", "pinwheel winding does not match k");
    return out;
}

struct NormalizeResult {
    QuotientNormalForm qnf;
    std::vector<MoveRecord> log;
};

/// Strip the diagram down to the crossingless closure, recording one box
/// per maximal twist string adjacent to the dot. Errors:
///   NotAlternating    - the diagram is not alternating
///   NontrivialKnot    - the knot is not trivial, or no twist string at the
///                       axis can be stripped
///   InternalNugatory  - a nugatory crossing sits away from the axis faces
///                       (the diagram is not a quotient of a minimal one)
inline NormalizeResult normalize_unknot_quotient(const AxisClosureDiagram& a0) {
    require_valid(a0.diagram);
    if (!is_alternating(a0.diagram)) fail("NotAlternating", "quotient diagram must alternate");

    NormalizeResult res;
    PlanarDiagram d = a0.diagram;

    if (d.crossing_count() == 0) {
        if (d.free_loops.size() != 1)
            fail("InvalidDiagram", "crossingless closure must be a single loop");
        if (a0.k != 1) fail("InvalidDiagram", "crossingless closure has k = 1");
        res.qnf = QuotientNormalForm{1, {}, false};
        return res;
    }
    if (!d.free_loops.empty())
        fail("InvalidDiagram", "free loops cannot coexist with crossings in a quotient");
    if (components(d).size() != 1) fail("MultiComponent", "quotient knot expected");

    if (!alternating_unknot_check(d).is_unknot)
        fail("NontrivialKnot", "the represented knot is not trivial");

    Dart dot = a0.axis_face.corner ? *a0.axis_face.corner : Dart{-1, -1};
    Dart inf = a0.infinity_face.corner ? *a0.infinity_face.corner : Dart{-1, -1};
    if (dot.crossing < 0 || inf.crossing < 0)
        fail("InvalidDiagram", "marked faces must be corner faces when crossings exist");

    std::vector<int> boxes;
    bool mirror = false;
    int guard = 0;
    while (d.crossing_count() > 0) {
        if (++guard > a0.diagram.crossing_count() + 2)
            fail("InternalInvariant", "normalization failed to terminate");
        auto fs = compute_faces(d);
        int dot_face = fs.face_of.at(dot);
        int inf_face = fs.face_of.at(inf);

        // every monogon away from the axis faces violates minimality
        for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i) {
            if (fs.faces[i].corners.size() != 1) continue;
            if (i != dot_face && i != inf_face)
                fail("InternalNugatory", "nugatory crossing inside the tangle");
        }
        if (fs.faces[dot_face].corners.size() != 1)
            fail("NontrivialKnot", "no twist string can be stripped at the axis");

        // the dot monogon names the top crossing of the current first box
        Dart mono = fs.faces[dot_face].corners[0];
        int x0 = mono.crossing;
        if (boxes.empty()) mirror = detail::kink_sign_at(mono.slot) < 0;

        // follow the chain of twist bigons
        std::vector<int> chain{x0};
        std::set<int> in_chain{x0};
        int cur = x0;
        bool grew = true;
        while (grew) {
            grew = false;
            for (const auto& f : fs.faces) {
                if (f.corners.size() != 2) continue;
                int ca = f.corners[0].crossing, cb = f.corners[1].crossing;
                if (ca == cb) continue;
                int nxt = -1;
                if (ca == cur && !in_chain.count(cb)) nxt = cb;
                if (cb == cur && !in_chain.count(ca)) nxt = ca;
                if (nxt >= 0) {
                    chain.push_back(nxt);
                    in_chain.insert(nxt);
                    cur = nxt;
                    grew = true;
                    break;
                }
            }
        }

        // strip the whole string: all arcs at chain crossings merge into the
        // new inner hairpin
        std::vector<std::pair<ArcId, ArcId>> joins;
        for (int c : chain) {
            const auto& arcs = d.crossings[c].arcs;
            joins.push_back({arcs[0], arcs[1]});
            joins.push_back({arcs[1], arcs[2]});
            joins.push_back({arcs[2], arcs[3]});
        }
        std::set<int> gone(chain.begin(), chain.end());
        for (int c : chain)
            res.log.push_back({MoveKind::R1Remove, {c}, "box " + std::to_string(boxes.size() + 1)});
        PlanarDiagram nd = detail::splice_out(d, gone, joins);
        require_valid(nd);

        boxes.push_back(static_cast<int>(chain.size()));

        if (nd.crossing_count() == 0) {
            if (nd.free_loops.size() != 1)
                fail("NontrivialKnot", "stripping did not terminate in a single loop");
            d = nd;
            break;
        }

        // the merged arc appears twice at one crossing: the next box top
        std::map<ArcId, std::vector<Dart>> occ_new;
        for (int c = 0; c < nd.crossing_count(); ++c)
            for (int s = 0; s < 4; ++s) occ_new[nd.crossings[c].arcs[s]].push_back({c, s});
        std::optional<Dart> new_dot;
        for (const auto& [arc, v] : occ_new) {
            if (v.size() != 2 || v[0].crossing != v[1].crossing) continue;
            // adjacent slots hold the new kink loop; take the corner between
            int s0 = v[0].slot, s1 = v[1].slot;
            int corner_slot = -1;
            if ((s0 + 1) % 4 == s1) corner_slot = s0;
            if ((s1 + 1) % 4 == s0) corner_slot = s1;
            if (corner_slot < 0) continue;
            // the loop we want wraps the dot: it is the one made of merged
            // strands, i.e. the arc class containing the old hairpin
            bool from_strip = false;
            for (const auto& j : joins)
                if (j.first == arc || j.second == arc) from_strip = true;
            if (!from_strip) continue;
            new_dot = Dart{v[0].crossing, corner_slot};
        }
        if (!new_dot)
            fail("NontrivialKnot", "stripping exposed no wrap around the axis");

        // remap the infinity corner through the removals
        auto remap = [&gone](Dart dt) {
            int shift = 0;
            for (int g2 : gone)
                if (g2 < dt.crossing) ++shift;
            return Dart{dt.crossing - shift, dt.slot};
        };
        if (gone.count(inf.crossing))
            fail("InternalInvariant", "infinity face consumed before the final strip");
        inf = remap(inf);
        dot = *new_dot;
        d = nd;

        auto fs2 = compute_faces(d);
        if (fs2.faces[fs2.face_of.at(dot)].corners.size() != 1)
            fail("InternalInvariant", "new axis face is not a monogon");
    }

    int k = static_cast<int>(boxes.size()) + 1;
    if (k != a0.k)
        fail("InvalidDiagram", "declared k=" + std::to_string(a0.k) + " but stripping found k=" +
                                   std::to_string(k));
    res.qnf = QuotientNormalForm{k, boxes, mirror};
    return res;
}

/// Re-insert a twist string of c crossings at the dot: the inverse of one
/// normalization round, turning a (k; c_1..) closure into (k+1; c, c_1..).
inline AxisClosureDiagram inverse_strip(const AxisClosureDiagram& a, int c) {
    if (c < 1) fail("InvalidNormalForm", "box crossing counts must be >= 1");
    require_valid(a.diagram);

    // locate the dot monogon (or the bare loop for k = 1)
    PlanarDiagram d = a.diagram;
    ArcId maxid = 0;
    for (const auto& cr : d.crossings)
        for (ArcId x : cr.arcs) maxid = std::max(maxid, x);
    for (ArcId l : d.free_loops) maxid = std::max(maxid, l);

    int z = -1, sz = -1;  // crossing and first loop slot of the dot kink
    if (d.crossing_count() == 0) {
        if (d.free_loops.size() != 1) fail("InvalidDiagram", "expected one loop");
    } else {
        auto fs = compute_faces(d);
        if (!a.axis_face.corner) fail("InvalidDiagram", "axis face must be a corner face");
        const Face& f = fs.faces[fs.face_of.at(*a.axis_face.corner)];
        if (f.corners.size() != 1) fail("InvalidDiagram", "axis face is not a monogon");
        z = f.corners[0].crossing;
        sz = f.corners[0].slot;
    }

    // new chain crossings appended after the existing ones, wired with the
    // construction pattern and glued to the old dot kink
    auto build = [&](bool swap_ends) -> PlanarDiagram {
        PlanarDiagram nd = d;
        int base = nd.crossing_count();
        ArcId next = maxid + 1;
        nd.crossings.insert(nd.crossings.end(), c, Crossing{{0, 0, 0, 0}});
        auto connect = [&](int c1, int s1, int c2, int s2) {
            nd.crossings[c1].arcs[s1] = next;
            nd.crossings[c2].arcs[s2] = next;
            ++next;
        };
        connect(base, 0, base, 1);  // new inner hairpin
        for (int j = 0; j < c - 1; ++j) {
            connect(base + j, 2, base + j + 1, 1);
            connect(base + j, 3, base + j + 1, 0);
        }
        if (z >= 0) {
            // replace the old loop arc: its two slots now receive the
            // connector and the around-the-dot hairpin
            int s_lo = sz, s_hi = (sz + 1) % 4;
            if (swap_ends) std::swap(s_lo, s_hi);
            nd.crossings[base + c - 1].arcs[2] = next;
            nd.crossings[z].arcs[s_lo] = next;
            ++next;
            nd.crossings[base + c - 1].arcs[3] = next;
            nd.crossings[z].arcs[s_hi] = next;
            ++next;
        } else {
            // k = 1: the old loop becomes the outer hairpin
            ArcId loop = d.free_loops.front();
            nd.free_loops.clear();
            nd.crossings[base + c - 1].arcs[2] = loop;
            nd.crossings[base + c - 1].arcs[3] = loop;
        }
        return nd;
    };

    PlanarDiagram nd;
    bool ok = false;
    for (bool swap_ends : {false, true}) {
        nd = build(swap_ends);
        if (validate(nd).ok) {
            ok = true;
            break;
        }
        if (z < 0) break;  // the loop case has no gluing ambiguity
    }
    if (!ok) fail("InternalInvariant", "twist insertion produced no planar gluing");

    // restore alternation by rotating only where needed; the walk-parity
    // assignment matching the previous crossings leaves them untouched
    std::vector<int> rot;
    for (int parity : {0, 1}) {
        std::vector<int> cand;
        try {
            cand = detail::alternation_rotations(nd, parity);
        } catch (const DomainError&) {
            continue;
        }
        bool touches_old = false;
        for (int i = 0; i < static_cast<int>(d.crossings.size()); ++i)
            if (cand[i] != 0) touches_old = true;
        if (!touches_old) {
            rot = cand;
            break;
        }
    }
    if (rot.empty()) fail("InternalInvariant", "no alternation assignment preserves the diagram");
    detail::apply_rotations(nd, rot);
    if (!is_alternating(nd)) fail("InternalInvariant", "insertion broke alternation");

    AxisClosureDiagram out;
    out.diagram = nd;
    out.k = a.k + 1;
    int base = d.crossing_count();
    out.axis_face = FaceRef::at_corner(detail::rotate_corner({base, 0}, rot));
    out.infinity_face = (z >= 0) ? a.infinity_face
                                 : FaceRef::at_corner(detail::rotate_corner(
                                       {base + c - 1, 2}, rot));
    auto fs = compute_faces(nd);
    if (fs.faces[fs.face_of.at(*out.axis_face.corner)].corners.size() != 1)
        fail("InternalInvariant", "inserted hairpin is not a monogon");
    return out;
}

/// Canonical representative of the axis-swap equivalence: exchanging the
/// two axis points reverses the box order (and can flip the mirror bit even
/// for palindromic boxes), so both descriptions are derived and the
/// lexicographically smaller (boxes, mirror) wins. Idempotent because the
/// swap is an involution.
inline QuotientNormalForm nf_canonical(const QuotientNormalForm& q) {
    q.validate();
    if (q.k == 1) return QuotientNormalForm{1, {}, false};
    AxisClosureDiagram d = nf_to_diagram(q);
    std::swap(d.axis_face, d.infinity_face);
    QuotientNormalForm other = normalize_unknot_quotient(d).qnf;
    auto key = [](const QuotientNormalForm& x) { return std::make_pair(x.boxes, x.mirror); };
    return key(q) <= key(other) ? q : other;
}

}  // namespace knotcover
