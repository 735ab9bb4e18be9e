#pragma once

#include <random>
#include <vector>

#include "aarhus/canonical.hpp"
#include "aarhus/diagram.hpp"

namespace aarhus::testing {

inline Label L(const char* name) { return Label{name, false}; }
inline Label D(const char* name) { return Label{name, true}; }

// Re-presents a diagram: permutes internal vertices by `vperm`, rotates the
// slots of vertex v by rot[v] (rotations are orientation-preserving), and
// applies `flip[v]` transpositions of slots 1,2 (each flip is one AS sign).
inline Diagram relabel(const Diagram& d, const std::vector<int>& vperm,
                       const std::vector<int>& rot, const std::vector<bool>& flip) {
    Diagram out;
    out.set_internal_count(d.internal_count());
    for (const auto& l : d.legs()) out.add_leg(l);
    for (const auto& ln : d.lines()) out.add_line(ln.label, ln.attachments);
    auto map_port = [&](int pt) {
        auto r = d.classify(pt);
        if (r.kind != Diagram::PortRef::Internal) return pt;  // leg/skel codes survive
        int slot = (r.b + rot[r.a]) % 3;
        if (flip[r.a] && slot >= 1) slot = 3 - slot;  // swap slots 1 and 2
        return out.port_internal(vperm[r.a], slot);
    };
    for (const auto& [a, b] : d.edges()) out.add_edge(map_port(a), map_port(b));
    return out;
}

inline Diagram random_relabel(const Diagram& d, std::mt19937_64& rng, int* parity_out) {
    const int t = d.internal_count();
    std::vector<int> vperm(t);
    for (int i = 0; i < t; ++i) vperm[i] = i;
    std::shuffle(vperm.begin(), vperm.end(), rng);
    std::vector<int> rot(t);
    std::vector<bool> flip(t);
    int parity = 1;
    for (int v = 0; v < t; ++v) {
        rot[v] = static_cast<int>(rng() % 3);
        flip[v] = rng() % 2 == 0;
        if (flip[v]) parity = -parity;
    }
    if (parity_out) *parity_out = parity;
    return relabel(d, vperm, rot, flip);
}

}  // namespace aarhus::testing
