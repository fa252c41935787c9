#pragma once

// Kauffman bracket by state-sum enumeration with an incremental union-find,
// the writhe-corrected Jones polynomial, and the linking number.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "knotcover/laurent.hpp"
#include "knotcover/planar_diagram.hpp"

namespace knotcover {

inline constexpr int kBracketCapDefault = 26;

namespace detail {

// Union-find with rollback so the 2^n smoothing tree shares prefix work.
class RollbackDsu {
public:
    explicit RollbackDsu(int n) : parent_(n), size_(n, 1), classes_(n) {
        for (int i = 0; i < n; ++i) parent_[i] = i;
    }
    int find(int x) const {
        while (parent_[x] != x) x = parent_[x];
        return x;
    }
    void unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) {
            trail_.push_back(-1);
            return;
        }
        if (size_[a] < size_[b]) std::swap(a, b);
        parent_[b] = a;
        size_[a] += size_[b];
        --classes_;
        trail_.push_back(b);
    }
    void undo() {
        int b = trail_.back();
        trail_.pop_back();
        if (b == -1) return;
        size_[parent_[b]] -= size_[b];
        parent_[b] = b;
        ++classes_;
    }
    int classes() const { return classes_; }

private:
    std::vector<int> parent_;
    std::vector<int> size_;
    std::vector<int> trail_;
    int classes_;
};

struct StateTable {
    // counts[a][loops]: number of states with a A-smoothings and that many
    // circles; bounded by 2^cap so int64 is exact
    std::vector<std::vector<long long>> counts;
};

inline void enumerate_states(const PlanarDiagram& d, const std::vector<std::array<int, 4>>& slots,
                             RollbackDsu& dsu, int level, int a_count, StateTable& table) {
    if (level == d.crossing_count()) {
        table.counts[a_count][dsu.classes()]++;
        return;
    }
    const auto& s = slots[level];
    // A-smoothing joins slots (0,1) and (2,3); B joins (0,3) and (1,2)
    dsu.unite(s[0], s[1]);
    dsu.unite(s[2], s[3]);
    enumerate_states(d, slots, dsu, level + 1, a_count + 1, table);
    dsu.undo();
    dsu.undo();

    dsu.unite(s[0], s[3]);
    dsu.unite(s[1], s[2]);
    enumerate_states(d, slots, dsu, level + 1, a_count, table);
    dsu.undo();
    dsu.undo();
}

}  // namespace detail

/// Kauffman bracket <d> with loop value -A^2 - A^-2, normalized so a single
/// crossing-free loop gives 1. Exact; throws above the crossing cap.
inline LaurentPoly kauffman_bracket(const PlanarDiagram& d, int cap = kBracketCapDefault) {
    int n = d.crossing_count();
    if (n > cap)
        fail("CrossingCapExceeded", std::to_string(n) + " crossings exceeds cap " +
                                        std::to_string(cap));

    // arc ids -> dense indices
    std::map<ArcId, int> index;
    for (const auto& cr : d.crossings)
        for (ArcId a : cr.arcs)
            if (!index.count(a)) index[a] = static_cast<int>(index.size());
    int m = static_cast<int>(index.size());
    std::vector<std::array<int, 4>> slots(n);
    for (int c = 0; c < n; ++c)
        for (int s = 0; s < 4; ++s) slots[c][s] = index.at(d.crossings[c].arcs[s]);

    int extra = static_cast<int>(d.free_loops.size());
    if (m == 0) {
        // no crossings: d^(loops-1), with the empty diagram mapping to 1
        LaurentPoly p = LaurentPoly::one();
        for (int i = 1; i < extra; ++i) p = p * LaurentPoly::loop_value();
        return p;
    }

    detail::StateTable table;
    table.counts.assign(n + 1, std::vector<long long>(m + 1, 0));
    detail::RollbackDsu dsu(m);
    detail::enumerate_states(d, slots, dsu, 0, 0, table);

    LaurentPoly result;
    LaurentPoly dpow = LaurentPoly::one();  // d^(loops-1), loops starts at 1
    std::vector<LaurentPoly> dpowers(m + extra + 1);
    for (int l = 1; l <= m + extra; ++l) {
        dpowers[l] = dpow;
        dpow = dpow * LaurentPoly::loop_value();
    }
    for (int a = 0; a <= n; ++a)
        for (int l = 1; l <= m; ++l) {
            long long cnt = table.counts[a][l];
            if (!cnt) continue;
            // A^(a - b) with b = n - a, times d^(l + extra - 1)
            result = result + dpowers[l + extra].shifted(2 * a - n) *
                                  LaurentPoly::monomial(cnt, 0);
        }
    return result;
}

/// Jones polynomial in the bracket variable A: (-A^3)^(-w) <d>. Substitute
/// t = A^-4 for the classical normalization. The orientation must be
/// supplied explicitly and coherent.
inline LaurentPoly jones(const PlanarDiagram& d, const Orientation& o,
                         int cap = kBracketCapDefault) {
    if (!orientation_coherent(d, o)) fail("IncoherentOrientation", "orientation does not follow the strands");
    int w = writhe(d, o);
    LaurentPoly br = kauffman_bracket(d, cap);
    return br.shifted(-3 * w) * LaurentPoly::monomial((w % 2 == 0) ? 1 : -1, 0);
}

/// Render a Jones value in t = A^-4; exponents are printed as quarters of
/// the A-exponent and may be half-integral for links.
inline std::string jones_t_string(const LaurentPoly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto it = p.terms().begin(); it != p.terms().end(); ++it) {
        BigInt c = it->second;
        if (first) {
            if (c < 0) { out += "-"; c = -c; }
        } else {
            out += (c < 0) ? " - " : " + ";
            if (c < 0) c = -c;
        }
        first = false;
        int a_exp = it->first;  // ascending in A means descending in t
        int t_num = -a_exp;     // t exponent = -a_exp/4
        std::string coeff = c.str();
        if (a_exp == 0) {
            out += coeff;
            continue;
        }
        if (c != 1) out += coeff + "*";
        out += "t";
        if (t_num != 4) {
            out += "^";
            if (t_num % 4 == 0)
                out += std::to_string(t_num / 4);
            else
                out += "(" + std::to_string(t_num) + "/4)";
        }
    }
    return out;
}

/// Half the signed sum over crossings between the two components.
inline int linking_number(const PlanarDiagram& d, const Orientation& o) {
    auto comps = components(d);
    if (comps.size() != 2) fail("WrongComponentCount", "linking number needs exactly two components");
    if (!orientation_coherent(d, o)) fail("IncoherentOrientation", "orientation does not follow the strands");
    std::map<ArcId, int> comp_of;
    for (int i = 0; i < 2; ++i)
        for (ArcId a : comps[i]) comp_of[a] = i;
    auto occ = arc_occurrences(d);
    int total = 0;
    for (int c = 0; c < d.crossing_count(); ++c) {
        if (comp_of.at(d.crossings[c].arcs[0]) == comp_of.at(d.crossings[c].arcs[1])) continue;
        total += detail::sign_at(d, occ, o, c);
    }
    return total / 2;
}

}  // namespace knotcover
