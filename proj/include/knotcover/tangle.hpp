#pragma once

// Tangles, periodic diagrams built from n cyclically glued copies, the
// quotient construction, and combinatorial period detection.
//
// Tangles are presented braid-style: k strands enter at the top and leave
// at the bottom of a disk. build_periodic glues n copies bottom-to-top
// around an annulus whose core is the axis; the rotation by one copy is the
// period. The quotient of a periodic diagram is one fundamental domain
// closed by its k arcs around the marked axis face.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotcover/planar_diagram.hpp"

namespace knotcover {

struct TangleDiagram {
    int k = 1;
    std::vector<Crossing> crossings;
    std::vector<ArcId> top;     // arc dangling at top position j (0-based, left to right)
    std::vector<ArcId> bottom;  // arc dangling at bottom position j

    int crossing_count() const { return static_cast<int>(crossings.size()); }
};

/// Braid-word constructor: letters +g / -g (1-based, g < k) put a crossing
/// between strand positions g-1 and g. Positive letters store the
/// NW-SE strand as the under diagonal, negative the NE-SW one; slot order
/// at every crossing is [up-right, up-left, down-left, down-right] rotated
/// to put the under pair on slots {0,2}.
inline TangleDiagram tangle_from_braid(int k, const std::vector<int>& word) {
    if (k < 1) fail("InvalidTangle", "tangle width must be >= 1");
    TangleDiagram t;
    t.k = k;
    t.top.resize(k);
    t.bottom.resize(k);
    std::vector<ArcId> cur(k);
    for (int j = 0; j < k; ++j) cur[j] = t.top[j] = j + 1;
    ArcId next = k + 1;
    for (int letter : word) {
        int g = std::abs(letter);
        if (g < 1 || g >= k) fail("InvalidTangle", "braid letter out of range");
        ArcId uL = cur[g - 1], uR = cur[g];
        ArcId dL = next++, dR = next++;
        // ccw order [uR, uL, dL, dR]; rotating by one swaps the under diagonal
        if (letter > 0)
            t.crossings.push_back({{uR, uL, dL, dR}});
        else
            t.crossings.push_back({{uL, dL, dR, uR}});
        cur[g - 1] = dL;
        cur[g] = dR;
    }
    for (int j = 0; j < k; ++j) t.bottom[j] = cur[j];
    return t;
}

/// The strand permutation of a braid-style tangle: entering at top position
/// j you leave at bottom position perm[j].
inline std::vector<int> tangle_permutation(const TangleDiagram& t) {
    std::map<ArcId, std::vector<Dart>> occ;
    for (int c = 0; c < t.crossing_count(); ++c)
        for (int s = 0; s < 4; ++s) occ[t.crossings[c].arcs[s]].push_back({c, s});
    std::vector<int> perm(t.k, -1);
    for (int j = 0; j < t.k; ++j) {
        ArcId a = t.top[j];
        std::optional<Dart> head;  // the crossing end the strand is entering
        // a boundary arc has at most one crossing occurrence; a through
        // strand has none
        while (true) {
            auto it = occ.find(a);
            if (it == occ.end() || it->second.empty()) break;
            Dart entry;
            if (!head) {
                if (it->second.size() == 2) fail("InvalidTangle", "boundary arc used twice in crossings");
                entry = it->second[0];
            } else {
                entry = *head;
            }
            Dart exit{entry.crossing, (entry.slot + 2) % 4};
            a = t.crossings[entry.crossing].arcs[exit.slot];
            // the far end of the exit arc, if it has another crossing
            const auto& v = occ.at(a);
            if (v.size() == 2) {
                head = (v[0] == exit) ? v[1] : v[0];
            } else {
                break;  // reached a boundary arc
            }
        }
        auto bt = std::find(t.bottom.begin(), t.bottom.end(), a);
        if (bt == t.bottom.end()) fail("InvalidTangle", "strand does not reach the bottom boundary");
        perm[j] = static_cast<int>(bt - t.bottom.begin());
    }
    return perm;
}

/// An order-n combinatorial rotation of a diagram: crossing c maps to
/// crossing_map[c] with even slot shift rot_map[c]. Crossing-free periodic
/// diagrams (unknot wrapped around the axis) carry an empty map.
struct PeriodicDiagram {
    PlanarDiagram diagram;
    int n = 2;
    std::vector<int> crossing_map;
    std::vector<int> rot_map;
    // windings around the axis of the closure arcs that carry no crossings,
    // keyed by the loop arc of the QUOTIENT; filled by build_periodic
    std::map<ArcId, int> quotient_loop_windings;

    Dart map_dart(const Dart& dt) const {
        return {crossing_map[dt.crossing], (dt.slot + rot_map[dt.crossing]) % 4};
    }
};

/// Face designator: a face named by one of its corners, or a side of a
/// crossing-free loop (loops bound two synthetic faces, side 0 and 1).
struct FaceRef {
    std::optional<Dart> corner;
    std::optional<std::pair<ArcId, int>> loop_side;

    static FaceRef at_corner(Dart dt) { return {dt, std::nullopt}; }
    static FaceRef at_loop(ArcId a, int side) { return {std::nullopt, std::pair{a, side}}; }

    friend bool operator==(const FaceRef& a, const FaceRef& b) {
        return a.corner == b.corner && a.loop_side == b.loop_side;
    }
};

/// A k-strand tangle closed by k arcs around the marked axis face; the
/// second marked face is the image of the other end of the rotation axis.
struct AxisClosureDiagram {
    PlanarDiagram diagram;
    FaceRef axis_face;
    FaceRef infinity_face;
    int k = 1;
    std::map<ArcId, int> loop_windings;  // crossing-free closure components
};

namespace detail {

inline void check_automorphism(const PlanarDiagram& d, const PeriodicDiagram& p) {
    auto occ = arc_occurrences(d);
    int n = d.crossing_count();
    if (static_cast<int>(p.crossing_map.size()) != n || static_cast<int>(p.rot_map.size()) != n)
        fail("InvalidPeriod", "automorphism tables sized wrong");
    for (int c = 0; c < n; ++c) {
        if (p.rot_map[c] % 2 != 0) fail("InvalidPeriod", "slot shift breaks over/under");
        for (int s = 0; s < 4; ++s) {
            Dart img_alpha = p.map_dart(alpha(d, occ, {c, s}));
            Dart alpha_img = alpha(d, occ, p.map_dart({c, s}));
            if (!(img_alpha == alpha_img))
                fail("InvalidPeriod", "map does not commute with the arc involution");
        }
    }
    // order exactly n, no fixed crossing at any intermediate power
    std::vector<int> pow(n);
    std::iota(pow.begin(), pow.end(), 0);
    for (int step = 1; step <= p.n; ++step) {
        for (int c = 0; c < n; ++c) pow[c] = p.crossing_map[pow[c]];
        bool identity = true;
        for (int c = 0; c < n; ++c)
            if (pow[c] != c) identity = false;
        if (step < p.n) {
            if (identity) fail("InvalidPeriod", "automorphism order divides " + std::to_string(step));
            for (int c = 0; c < n; ++c)
                if (pow[c] == c) fail("InvalidPeriod", "crossing fixed by a power of the rotation");
        } else if (!identity) {
            fail("InvalidPeriod", "automorphism order is not " + std::to_string(p.n));
        }
    }
}

/// Faces fixed (setwise) by the rotation, as indices into fs.
inline std::vector<int> fixed_faces(const FaceSet& fs, const PeriodicDiagram& p) {
    std::vector<int> out;
    for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i) {
        Dart img = p.map_dart(fs.faces[i].corners[0]);
        if (fs.face_of.at(img) == i) out.push_back(i);
    }
    return out;
}

}  // namespace detail

/// Validate a PeriodicDiagram: genuine order-n rotation, over/under kept,
/// no fixed crossing, exactly two fixed faces.
inline void validate_periodic(const PeriodicDiagram& p) {
    require_valid(p.diagram);
    if (p.n < 2) fail("InvalidPeriod", "period order must be >= 2");
    if (p.diagram.crossing_count() == 0) return;  // crossingless wrap, nothing to check
    detail::check_automorphism(p.diagram, p);
    auto fs = compute_faces(p.diagram);
    auto fixed = detail::fixed_faces(fs, p);
    if (fixed.size() != 2)
        fail("InvalidPeriod", "rotation fixes " + std::to_string(fixed.size()) + " faces, need 2");
}

/// Glue n copies of the tangle around the axis. Crossing m*C+c is copy m of
/// tangle crossing c; the rotation shifts copies by one.
inline PeriodicDiagram build_periodic(const TangleDiagram& t, int n) {
    if (n < 2) fail("InvalidPeriod", "period order must be >= 2");
    int C = t.crossing_count();
    ArcId span = 1;
    for (const auto& cr : t.crossings)
        for (ArcId a : cr.arcs) span = std::max(span, a + 1);
    for (ArcId a : t.top) span = std::max(span, a + 1);
    for (ArcId a : t.bottom) span = std::max(span, a + 1);

    // copy arcs then merge copy m's bottom with copy m+1's top
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
    auto copy_arc = [&](int m, ArcId a) { return a + span * m; };
    for (int m = 0; m < n; ++m)
        for (int j = 0; j < t.k; ++j)
            unite(copy_arc(m, t.bottom[j]), copy_arc((m + 1) % n, t.top[j]));

    PeriodicDiagram p;
    p.n = n;
    for (int m = 0; m < n; ++m)
        for (int c = 0; c < C; ++c) {
            Crossing cr = t.crossings[c];
            for (ArcId& a : cr.arcs) a = find(copy_arc(m, a));
            p.diagram.crossings.push_back(cr);
            p.crossing_map.push_back(((m + 1) % n) * C + c);
            p.rot_map.push_back(0);
        }

    // crossing-free strand cycles close into loops; record quotient windings
    auto perm = tangle_permutation(t);
    std::set<ArcId> used;
    for (const auto& cr : p.diagram.crossings)
        for (ArcId a : cr.arcs) used.insert(a);
    std::set<ArcId> loop_roots;
    for (int j = 0; j < t.k; ++j) {
        for (int m = 0; m < n; ++m) {
            ArcId r = find(copy_arc(m, t.top[j]));
            if (!used.count(r)) loop_roots.insert(r);
        }
    }
    for (ArcId r : loop_roots) p.diagram.free_loops.push_back(r);
    std::sort(p.diagram.free_loops.begin(), p.diagram.free_loops.end());

    // quotient windings: a crossing-free permutation cycle of length L
    // closes around the axis L times in the quotient
    std::set<ArcId> touched;
    for (const auto& cr : t.crossings)
        for (ArcId b : cr.arcs) touched.insert(b);
    std::set<int> seen;
    for (int j = 0; j < t.k; ++j) {
        if (seen.count(j)) continue;
        int L = 0, x = j;
        bool crossingless = true;
        do {
            seen.insert(x);
            if (touched.count(t.top[x])) crossingless = false;
            x = perm[x];
            ++L;
        } while (x != j);
        if (crossingless) p.quotient_loop_windings[find(copy_arc(0, t.top[j]))] = L;
    }
    validate_periodic(p);
    return p;
}

/// Winding of the diagram's strands between two marked faces: assign
/// integer heights to faces, with every directed arc separating its left
/// face from its right face at +1, and return |height(to) - height(from)|.
/// Path independent on the sphere; free loops are invisible to it.
inline int face_winding(const PlanarDiagram& d, const FaceSet& fs, int face_from, int face_to) {
    if (d.crossing_count() == 0) return 0;
    Orientation o = orient(d);
    auto occ = arc_occurrences(d);
    // per arc: (left face, right face) seen from its tail dart; the face at
    // corner (c,s) flanks the outgoing arc at slot s on its ccw side
    std::vector<std::vector<std::pair<int, int>>> adj(fs.faces.size());
    for (const auto& [a, darts] : occ) {
        Dart t = tail_dart(d, occ, o, a);
        int fl = fs.face_of.at({t.crossing, t.slot});
        int fr = fs.face_of.at({t.crossing, (t.slot + 3) % 4});
        adj[fl].push_back({fr, +1});
        adj[fr].push_back({fl, -1});
    }
    std::vector<int> height(fs.faces.size(), INT32_MIN);
    std::vector<int> stack{face_from};
    height[face_from] = 0;
    while (!stack.empty()) {
        int f = stack.back();
        stack.pop_back();
        for (auto [g, delta] : adj[f]) {
            if (height[g] == INT32_MIN) {
                height[g] = height[f] + delta;
                stack.push_back(g);
            } else if (height[g] != height[f] + delta) {
                fail("InternalInvariant", "face winding is inconsistent");
            }
        }
    }
    if (height[face_to] == INT32_MIN) fail("InternalInvariant", "marked face unreachable");
    return std::abs(height[face_to] - height[face_from]);
}

inline int face_index_of(const PlanarDiagram&, const FaceSet& fs, const FaceRef& ref) {
    if (!ref.corner) fail("InvalidFaceRef", "expected a corner-bearing face");
    return fs.face_of.at(*ref.corner);
}

/// Quotient of a periodic diagram by its rotation: one crossing per orbit,
/// arcs by orbit representatives, the two fixed faces becoming the axis dot
/// and the point at infinity, and k recovered from the winding.
inline AxisClosureDiagram quotient(const PeriodicDiagram& p) {
    validate_periodic(p);
    const PlanarDiagram& d = p.diagram;

    if (d.crossing_count() == 0) {
        // a crossingless wrap: quotient is the k=1 crossingless closure per loop
        if (d.free_loops.empty()) fail("InvalidPeriod", "empty diagram");
        AxisClosureDiagram a;
        int k = 0;
        for (const auto& [loop, w] : p.quotient_loop_windings) {
            a.diagram.free_loops.push_back(loop);
            a.loop_windings[loop] = w;
            k += w;
        }
        if (a.diagram.free_loops.empty()) {
            a.diagram.free_loops = {1};
            a.loop_windings[1] = 1;
            k = 1;
        }
        a.axis_face = FaceRef::at_loop(a.diagram.free_loops.front(), 0);
        a.infinity_face = FaceRef::at_loop(a.diagram.free_loops.front(), 1);
        a.k = k;
        return a;
    }

    auto occ = arc_occurrences(d);
    int C = d.crossing_count();
    // crossing orbits
    std::vector<int> orbit_rep(C, -1);
    for (int c = 0; c < C; ++c) {
        if (orbit_rep[c] != -1) continue;
        std::vector<int> orbit;
        int x = c;
        do {
            orbit.push_back(x);
            x = p.crossing_map[x];
        } while (x != c);
        int rep = *std::min_element(orbit.begin(), orbit.end());
        for (int y : orbit) orbit_rep[y] = rep;
    }
    // arc orbits at dart level
    std::map<ArcId, ArcId> arc_parent;
    std::function<ArcId(ArcId)> find = [&](ArcId x) {
        if (!arc_parent.count(x)) arc_parent[x] = x;
        while (arc_parent[x] != x) x = arc_parent[x] = arc_parent[arc_parent[x]];
        return x;
    };
    auto unite = [&](ArcId a, ArcId b) {
        ArcId ra = find(a), rb = find(b);
        if (ra != rb) arc_parent[std::max(ra, rb)] = std::min(ra, rb);
    };
    for (int c = 0; c < C; ++c)
        for (int s = 0; s < 4; ++s) {
            Dart img = p.map_dart({c, s});
            unite(d.arc_at({c, s}), d.arc_at(img));
        }

    AxisClosureDiagram a;
    std::map<int, int> new_index;  // old rep crossing -> quotient index
    for (int c = 0; c < C; ++c) {
        if (orbit_rep[c] != c) continue;
        Crossing cr = d.crossings[c];
        for (ArcId& x : cr.arcs) x = find(x);
        new_index[c] = a.diagram.crossing_count();
        a.diagram.crossings.push_back(cr);
    }
    for (const auto& [loop, w] : p.quotient_loop_windings) {
        a.diagram.free_loops.push_back(loop);
        a.loop_windings[loop] = w;
    }
    require_valid(a.diagram);

    // fixed faces map to the marked faces; project a corner of each
    auto fs_big = compute_faces(d);
    auto fixed = detail::fixed_faces(fs_big, p);
    if (fixed.size() != 2) fail("InvalidPeriod", "expected two fixed faces");
    std::vector<FaceRef> marks;
    for (int fi : fixed) {
        // walk the corner around its orbit until it sits on the rep crossing
        Dart cur = fs_big.faces[fi].corners[0];
        while (cur.crossing != orbit_rep[cur.crossing]) cur = p.map_dart(cur);
        marks.push_back(FaceRef::at_corner({new_index.at(cur.crossing), cur.slot}));
    }
    std::sort(marks.begin(), marks.end(), [](const FaceRef& x, const FaceRef& y) {
        return *x.corner < *y.corner;
    });
    a.axis_face = marks[0];
    a.infinity_face = marks[1];

    auto fs_q = compute_faces(a.diagram);
    int extra = 0;
    for (const auto& [loop, w] : a.loop_windings) extra += w;
    a.k = face_winding(a.diagram, fs_q, face_index_of(a.diagram, fs_q, a.axis_face),
                       face_index_of(a.diagram, fs_q, a.infinity_face)) +
          extra;
    return a;
}

/// The axis closure of a tangle: the quotient of its 2-periodic double. Any
/// n gives the same closure; 2 is the cheapest witness.
inline AxisClosureDiagram closure(const TangleDiagram& t) { return quotient(build_periodic(t, 2)); }

/// Search the combinatorial rotation group of d for an order-n period:
/// a rotation with two fixed faces, no fixed crossing, preserving the
/// rotation system and over/under. Returns the witness or nothing.
inline std::optional<PeriodicDiagram> detect_period(const PlanarDiagram& d, int n) {
    require_valid(d);
    if (n < 2) fail("InvalidPeriod", "period order must be >= 2");
    if (d.crossing_count() == 0) {
        if (d.free_loops.size() == 1) {
            PeriodicDiagram p;
            p.diagram = d;
            p.n = n;
            p.quotient_loop_windings[d.free_loops.front()] = 1;
            return p;
        }
        return std::nullopt;
    }
    if (!d.free_loops.empty())
        fail("InvalidPeriod", "free loops carry no combinatorial position; remove them first");

    auto occ = arc_occurrences(d);
    std::vector<int> label0, rots0;
    std::string sig0 = detail::rooted_signature(d, occ, 0, 0, label0, rots0);
    if (sig0.empty()) fail("InvalidDiagram", "disconnected diagram");
    // order-indexed inverse of label0
    int C = d.crossing_count();
    std::vector<int> inv0(C);
    for (int c = 0; c < C; ++c) inv0[label0[c]] = c;

    for (int c = 0; c < C; ++c) {
        for (int rot : {0, 2}) {
            if (c == 0 && rot == 0) continue;  // identity
            std::vector<int> label1, rots1;
            std::string sig1 = detail::rooted_signature(d, occ, c, rot, label1, rots1);
            if (sig1 != sig0) continue;
            // the BFS address match defines an automorphism
            PeriodicDiagram p;
            p.diagram = d;
            p.n = n;
            p.crossing_map.resize(C);
            p.rot_map.resize(C);
            std::vector<int> inv1(C);
            for (int x = 0; x < C; ++x) inv1[label1[x]] = x;
            for (int x = 0; x < C; ++x) {
                int img = inv1[label0[x]];
                p.crossing_map[x] = img;
                p.rot_map[x] = ((rots1[img] - rots0[x]) % 4 + 4) % 4;
            }
            try {
                validate_periodic(p);
            } catch (const DomainError&) {
                continue;
            }
            return p;
        }
    }
    return std::nullopt;
}

}  // namespace knotcover
