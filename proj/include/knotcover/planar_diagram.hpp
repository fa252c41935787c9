#pragma once

// Combinatorial planar diagrams of knots and links: crossings carrying a
// rotation system, faces by corner walking, strand components, explicit
// orientations, validation, and the alternation test.
//
// Conventions:
//   - Each crossing stores 4 arc ids in counterclockwise slot order.
//   - The under-strand occupies slots 0 and 2; the over-strand slots 1 and 3.
//   - With an orientation, slot 0 is the incoming under end (enforced on
//     serialization, not on in-memory values).
//   - Crossing-free closed components are kept separately as free loops.

#include <algorithm>
#include <array>
#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "knotcover/errors.hpp"

namespace knotcover {

using ArcId = int;

struct Crossing {
    std::array<ArcId, 4> arcs;

    friend bool operator==(const Crossing& a, const Crossing& b) { return a.arcs == b.arcs; }
};

/// An arc end sitting in a crossing slot.
struct Dart {
    int crossing = -1;
    int slot = -1;

    auto operator<=>(const Dart&) const = default;
};

struct PlanarDiagram {
    std::vector<Crossing> crossings;
    std::vector<ArcId> free_loops;

    int crossing_count() const { return static_cast<int>(crossings.size()); }
    ArcId arc_at(const Dart& dt) const { return crossings[dt.crossing].arcs[dt.slot]; }

    friend bool operator==(const PlanarDiagram& a, const PlanarDiagram& b) {
        return a.crossings == b.crossings && a.free_loops == b.free_loops;
    }
};

inline Dart sigma(const Dart& d) { return {d.crossing, (d.slot + 1) % 4}; }
inline Dart sigma_inv(const Dart& d) { return {d.crossing, (d.slot + 3) % 4}; }
inline bool is_under_slot(int slot) { return slot == 0 || slot == 2; }

/// arc id -> its (at most 2) slot occurrences, sorted.
inline std::map<ArcId, std::vector<Dart>> arc_occurrences(const PlanarDiagram& d) {
    std::map<ArcId, std::vector<Dart>> occ;
    for (int c = 0; c < d.crossing_count(); ++c)
        for (int s = 0; s < 4; ++s) occ[d.crossings[c].arcs[s]].push_back({c, s});
    for (auto& [a, v] : occ) std::sort(v.begin(), v.end());
    return occ;
}

/// The other end of the arc at dart dt. Requires a well-formed diagram.
inline Dart alpha(const PlanarDiagram& d, const std::map<ArcId, std::vector<Dart>>& occ,
                  const Dart& dt) {
    const auto& v = occ.at(d.arc_at(dt));
    return (v[0] == dt) ? v[1] : v[0];
}

/// A face as its cyclic corner list. Corner (c,s) is the region between
/// slots s and s+1 of crossing c; the orbit follows phi = sigma^-1 . alpha.
struct Face {
    std::vector<Dart> corners;

    Dart min_corner() const { return *std::min_element(corners.begin(), corners.end()); }
};

struct FaceSet {
    std::vector<Face> faces;
    std::map<Dart, int> face_of;  // corner -> index into faces

    int at(const Dart& dt) const { return face_of.at(dt); }
};

/// All corner-orbit faces of the 4-valent map. Crossing-free loops carry no
/// corners and are not represented here.
inline FaceSet compute_faces(const PlanarDiagram& d) {
    auto occ = arc_occurrences(d);
    FaceSet fs;
    std::set<Dart> seen;
    for (int c = 0; c < d.crossing_count(); ++c) {
        for (int s = 0; s < 4; ++s) {
            Dart start{c, s};
            if (seen.count(start)) continue;
            Face f;
            Dart cur = start;
            do {
                f.corners.push_back(cur);
                seen.insert(cur);
                cur = sigma_inv(alpha(d, occ, cur));
            } while (cur != start);
            fs.faces.push_back(std::move(f));
        }
    }
    // canonical order: rotate each face to start at its minimal corner, then
    // sort faces by that corner
    for (auto& f : fs.faces) {
        auto it = std::min_element(f.corners.begin(), f.corners.end());
        std::rotate(f.corners.begin(), it, f.corners.end());
    }
    std::sort(fs.faces.begin(), fs.faces.end(),
              [](const Face& a, const Face& b) { return a.corners[0] < b.corners[0]; });
    for (int i = 0; i < static_cast<int>(fs.faces.size()); ++i)
        for (const Dart& dt : fs.faces[i].corners) fs.face_of[dt] = i;
    return fs;
}

/// Strand components in traversal order. Entering a crossing at slot s you
/// leave at slot s+2. Free loops are appended as singleton components.
inline std::vector<std::vector<ArcId>> components(const PlanarDiagram& d) {
    auto occ = arc_occurrences(d);
    std::vector<std::vector<ArcId>> comps;
    std::set<ArcId> seen;
    for (const auto& [arc, v] : occ) {
        if (seen.count(arc)) continue;
        std::vector<ArcId> comp;
        ArcId a = arc;
        Dart head = v[1];  // walk from the later occurrence through the crossing
        while (!seen.count(a)) {
            seen.insert(a);
            comp.push_back(a);
            Dart through{head.crossing, (head.slot + 2) % 4};
            a = d.arc_at(through);
            head = alpha(d, occ, through);
        }
        comps.push_back(std::move(comp));
    }
    for (ArcId l : d.free_loops) comps.push_back({l});
    return comps;
}

struct ValidationCheck {
    std::string name;
    bool pass;
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    std::vector<ValidationCheck> checks;
    int face_count = 0;  // corner faces plus one per free loop plus the empty-map sphere
    FaceSet faces;

    void add(const std::string& name, bool pass, const std::string& detail = "") {
        checks.push_back({name, pass, detail});
        ok = ok && pass;
    }
};

/// Connected components of the crossing graph (crossings joined by arcs).
inline int crossing_graph_components(const PlanarDiagram& d) {
    int n = d.crossing_count();
    if (n == 0) return 0;
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto occ = arc_occurrences(d);
    for (const auto& [a, v] : occ)
        if (v.size() == 2) parent[find(v[0].crossing)] = find(v[1].crossing);
    std::set<int> roots;
    for (int i = 0; i < n; ++i) roots.insert(find(i));
    return static_cast<int>(roots.size());
}

/// Report-style validation of the diagram invariants. Never throws; the
/// report lists pass/fail per invariant and carries the computed faces.
inline ValidationReport validate(const PlanarDiagram& d) {
    ValidationReport rep;

    std::map<ArcId, int> count;
    for (const auto& cr : d.crossings)
        for (ArcId a : cr.arcs) count[a]++;
    bool mult_ok = true;
    std::string bad;
    for (const auto& [a, k] : count) {
        if (k != 2) {
            mult_ok = false;
            bad += (bad.empty() ? "" : ", ") + std::string("arc ") + std::to_string(a) + " used " +
                   std::to_string(k) + "x";
        }
    }
    for (ArcId l : d.free_loops) {
        if (count.count(l)) {
            mult_ok = false;
            bad += (bad.empty() ? "" : ", ") + std::string("free loop ") + std::to_string(l) +
                   " also used in crossings";
        }
    }
    rep.add("arc multiplicity", mult_ok, bad);
    if (!mult_ok) return rep;  // face walking needs well-formed arcs

    rep.faces = compute_faces(d);
    int V = d.crossing_count();
    int E = 2 * V;
    int F_map = static_cast<int>(rep.faces.faces.size());
    if (V == 0) F_map = 1;  // the empty map leaves the whole sphere
    rep.face_count = F_map + static_cast<int>(d.free_loops.size());

    int C = crossing_graph_components(d);
    bool euler_ok = (V - E + F_map == 1 + C);  // connected nonempty: V-E+F = 2
    rep.add("euler sphere embedding", euler_ok,
            "V=" + std::to_string(V) + " E=" + std::to_string(E) + " F=" + std::to_string(F_map) +
                " components=" + std::to_string(C));
    if (V > 0)
        rep.add("connected", C == 1,
                C == 1 ? "" : "split diagram with " + std::to_string(C) + " pieces");
    return rep;
}

inline void require_valid(const PlanarDiagram& d) {
    ValidationReport rep = validate(d);
    if (!rep.ok) {
        std::string msg;
        for (const auto& c : rep.checks)
            if (!c.pass) msg += c.name + (c.detail.empty() ? "" : " (" + c.detail + ")") + "; ";
        fail("InvalidDiagram", msg);
    }
}

// ---------------------------------------------------------------------------
// Orientations

/// Direction of each arc. For an arc with sorted occurrences [d0, d1],
/// value true means the strand runs d0 -> d1 (tail d0, head d1). Free loops
/// get a direction bit too, though nothing observes it combinatorially.
using Orientation = std::map<ArcId, bool>;

inline Dart head_dart(const PlanarDiagram&, const std::map<ArcId, std::vector<Dart>>& occ,
                      const Orientation& o, ArcId a) {
    const auto& v = occ.at(a);
    return o.at(a) ? v[1] : v[0];
}
inline Dart tail_dart(const PlanarDiagram&, const std::map<ArcId, std::vector<Dart>>& occ,
                      const Orientation& o, ArcId a) {
    const auto& v = occ.at(a);
    return o.at(a) ? v[0] : v[1];
}

/// Orient every component coherently; flip[i] reverses component i (in the
/// order returned by components()). Missing entries default to false.
inline Orientation orient(const PlanarDiagram& d, const std::vector<bool>& flip = {}) {
    auto occ = arc_occurrences(d);
    auto comps = components(d);
    Orientation o;
    for (size_t i = 0; i < comps.size(); ++i) {
        bool rev = i < flip.size() && flip[i];
        const auto& comp = comps[i];
        if (comp.size() == 1 && !occ.count(comp[0])) {
            o[comp[0]] = !rev;  // free loop
            continue;
        }
        // components() walked each strand from v[1] of its first arc through
        // the crossing; reproduce that walk and record directions.
        ArcId a = comp[0];
        Dart head = occ.at(a)[1];
        for (size_t step = 0; step < comp.size(); ++step) {
            const auto& v = occ.at(a);
            o[a] = (head == v[1]) != rev;
            Dart through{head.crossing, (head.slot + 2) % 4};
            a = d.arc_at(through);
            head = alpha(d, occ, through);
        }
    }
    return o;
}

/// True when the orientation directs every strand coherently through each
/// crossing (one head and one tail per strand-through pair).
inline bool orientation_coherent(const PlanarDiagram& d, const Orientation& o) {
    auto occ = arc_occurrences(d);
    for (const auto& [a, v] : occ)
        if (!o.count(a)) return false;
    for (int c = 0; c < d.crossing_count(); ++c) {
        for (int s : {0, 1}) {
            Dart in{c, s}, out{c, s + 2};
            ArcId ain = d.arc_at(in), aout = d.arc_at(out);
            bool in_is_head = head_dart(d, occ, o, ain) == in;
            bool out_is_head = head_dart(d, occ, o, aout) == out;
            // a self-loop arc occupying both slots heads exactly one of them
            if (ain == aout) {
                if (head_dart(d, occ, o, ain) != in && head_dart(d, occ, o, ain) != out)
                    return false;
                continue;
            }
            if (in_is_head == out_is_head) return false;
        }
    }
    return true;
}

namespace detail {
inline int sign_at(const PlanarDiagram& d, const std::map<ArcId, std::vector<Dart>>& occ,
                   const Orientation& o, int c) {
    // +1 when under x over is a positively oriented frame: the under strand
    // entering at slot 0 pairs with the over strand entering at slot 3, and
    // reversing both passages preserves the sign.
    Dart s0{c, 0}, s3{c, 3};
    bool under_in0 = head_dart(d, occ, o, d.arc_at(s0)) == s0;
    bool over_in3 = head_dart(d, occ, o, d.arc_at(s3)) == s3;
    return (under_in0 == over_in3) ? +1 : -1;
}
}  // namespace detail

/// Sign of a crossing under an orientation.
inline int crossing_sign(const PlanarDiagram& d, const Orientation& o, int c) {
    auto occ = arc_occurrences(d);
    return detail::sign_at(d, occ, o, c);
}

/// Sum of crossing signs.
inline int writhe(const PlanarDiagram& d, const Orientation& o) {
    auto occ = arc_occurrences(d);
    int w = 0;
    for (int c = 0; c < d.crossing_count(); ++c) w += detail::sign_at(d, occ, o, c);
    return w;
}

// ---------------------------------------------------------------------------
// Alternation

/// True iff along every component the passages alternate between under
/// (slots 0/2) and over (slots 1/3). Vacuous for crossing-free loops.
inline bool is_alternating(const PlanarDiagram& d) {
    auto occ = arc_occurrences(d);
    auto comps = components(d);
    for (const auto& comp : comps) {
        if (comp.size() == 1 && !occ.count(comp[0])) continue;
        // walk the strand, recording under/over of each entered slot
        ArcId a = comp[0];
        Dart head = occ.at(a)[1];
        std::optional<bool> prev;
        bool first_under = false;
        size_t steps = 0;
        do {
            bool under = is_under_slot(head.slot);
            if (steps == 0) first_under = under;
            if (prev && *prev == under) return false;
            prev = under;
            Dart through{head.crossing, (head.slot + 2) % 4};
            a = d.arc_at(through);
            head = alpha(d, occ, through);
            ++steps;
        } while (a != comp[0] || head != occ.at(comp[0])[1]);
        // closing the loop must alternate as well
        if (steps > 1 && *prev == first_under) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Canonical form and isomorphism

namespace detail {

/// BFS relabeling from a root crossing with an even slot rotation. Fills
/// label (old crossing -> new id) and rots (even slot shift per crossing,
/// new slot = (old slot - rot) mod 4) and returns the serialized map, or ""
/// when the diagram is not connected to the root. The rotation of each
/// discovered crossing is fixed so the entering dart gets the smaller of its
/// two parity-preserving slot images, which makes the labeling equivariant
/// under any under/over-respecting isomorphism.
inline std::string rooted_signature(const PlanarDiagram& d,
                                    const std::map<ArcId, std::vector<Dart>>& occ, int root,
                                    int root_rot, std::vector<int>& label,
                                    std::vector<int>& rots) {
    int n = d.crossing_count();
    label.assign(n, -1);
    rots.assign(n, 0);
    std::vector<int> order;
    label[root] = 0;
    rots[root] = root_rot;
    order.push_back(root);

    for (size_t qi = 0; qi < order.size(); ++qi) {
        int oc = order[qi];
        for (int ns = 0; ns < 4; ++ns) {
            int os = (ns + rots[oc]) % 4;
            Dart there = alpha(d, occ, {oc, os});
            if (label[there.crossing] != -1) continue;
            label[there.crossing] = static_cast<int>(order.size());
            rots[there.crossing] = (there.slot % 2 == 0) ? there.slot : there.slot - 1;
            // entering dart's new slot becomes 0 (even parity) or 1 (odd)
            order.push_back(there.crossing);
        }
    }
    if (static_cast<int>(order.size()) != n) return {};

    std::string sig;
    for (int oc : order) {
        for (int ns = 0; ns < 4; ++ns) {
            int os = (ns + rots[oc]) % 4;
            Dart there = alpha(d, occ, {oc, os});
            int pc = label[there.crossing];
            int ps = ((there.slot - rots[there.crossing]) % 4 + 4) % 4;
            sig += std::to_string(pc) + "." + std::to_string(ps) + ";";
        }
        sig += "|";
    }
    return sig;
}

inline std::string relabel_marks(const std::vector<std::vector<Dart>>& marks,
                                 const std::vector<int>& label, const std::vector<int>& rots) {
    std::string out;
    for (const auto& mark : marks) {
        std::vector<Dart> image;
        for (const Dart& dt : mark) {
            int ns = ((dt.slot - rots[dt.crossing]) % 4 + 4) % 4;
            image.push_back({label[dt.crossing], ns});
        }
        std::sort(image.begin(), image.end());
        for (const Dart& dt : image) out += std::to_string(dt.crossing) + "." + std::to_string(dt.slot) + ",";
        out += "/";
    }
    return out;
}

}  // namespace detail

/// Canonical signature of a connected diagram, minimal over all BFS roots
/// and even rotations. Two diagrams are combinatorially isomorphic through
/// an orientation-preserving, under/over-respecting map iff their signatures
/// match; optional marks (e.g. faces given by their corner sets) must
/// correspond under the same map.
inline std::string canonical_signature(const PlanarDiagram& d,
                                       const std::vector<std::vector<Dart>>& marks = {}) {
    if (d.crossing_count() == 0)
        return "loops:" + std::to_string(d.free_loops.size()) + "#marks:" +
               std::to_string(marks.size());
    auto occ = arc_occurrences(d);
    std::string best;
    std::vector<int> label, rots;
    for (int c = 0; c < d.crossing_count(); ++c)
        for (int rot : {0, 2}) {
            std::string sig = detail::rooted_signature(d, occ, c, rot, label, rots);
            if (sig.empty()) continue;
            sig += "#" + detail::relabel_marks(marks, label, rots);
            if (best.empty() || sig < best) best = sig;
        }
    return best + "+loops:" + std::to_string(d.free_loops.size());
}

}  // namespace knotcover
