#include "aarhus/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "aarhus/errors.hpp"

namespace aarhus {

std::string space_name(Space s) {
    switch (s) {
        case Space::Aempty: return "Aempty";
        case Space::Aup: return "Aup";
        case Space::B: return "B";
        case Space::Bplus: return "Bplus";
    }
    return "?";
}

bool space_from_name(const std::string& name, Space* out) {
    if (name == "Aempty") *out = Space::Aempty;
    else if (name == "Aup") *out = Space::Aup;
    else if (name == "B") *out = Space::B;
    else if (name == "Bplus") *out = Space::Bplus;
    else return false;
    return true;
}

int Diagram::add_line(const Label& l, int attachments) {
    if (!lines_.empty() && !(lines_.back().label < l))
        throw KernelError("skeleton lines must be added in increasing label order");
    lines_.push_back(SkeletonLine{l, attachments});
    return static_cast<int>(lines_.size()) - 1;
}

void Diagram::add_edge(int port_a, int port_b) {
    edges_.emplace_back(std::min(port_a, port_b), std::max(port_a, port_b));
}

int Diagram::attachment_count() const {
    int a = 0;
    for (const auto& l : lines_) a += l.attachments;
    return a;
}

int Diagram::port_skel(int line, int pos) const {
    int base = 3 * internal_ + leg_count();
    for (int i = 0; i < line; ++i) base += lines_[i].attachments;
    return base + pos;
}

int Diagram::total_ports() const {
    return 3 * internal_ + leg_count() + attachment_count();
}

Diagram::PortRef Diagram::classify(int port) const {
    if (port < 3 * internal_) return PortRef{PortRef::Internal, port / 3, port % 3};
    port -= 3 * internal_;
    if (port < leg_count()) return PortRef{PortRef::Leg, port, 0};
    port -= leg_count();
    for (int i = 0; i < static_cast<int>(lines_.size()); ++i) {
        if (port < lines_[i].attachments) return PortRef{PortRef::Skel, i, port};
        port -= lines_[i].attachments;
    }
    throw KernelError("port out of range");
}

std::vector<int> Diagram::partner_map() const {
    std::vector<int> partner(total_ports(), -1);
    for (const auto& [a, b] : edges_) {
        partner[a] = b;
        partner[b] = a;
    }
    return partner;
}

int Diagram::degree() const {
    return (internal_ + leg_count() + attachment_count()) / 2;
}

bool Diagram::wellformed(std::string* why) const {
    const int n = total_ports();
    std::vector<int> seen(n, 0);
    for (const auto& [a, b] : edges_) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            if (why) *why = "edge references unknown port";
            return false;
        }
        seen[a]++;
        seen[b]++;
    }
    for (int p = 0; p < n; ++p) {
        if (seen[p] != 1) {
            if (why) *why = "port " + std::to_string(p) + " has " + std::to_string(seen[p]) + " edge ends (want 1)";
            return false;
        }
    }
    if ((internal_ + leg_count() + attachment_count()) % 2 != 0) {
        if (why) *why = "odd total vertex count";
        return false;
    }
    for (size_t i = 0; i + 1 < lines_.size(); ++i) {
        if (!(lines_[i].label < lines_[i + 1].label)) {
            if (why) *why = "skeleton line labels not strictly increasing";
            return false;
        }
    }
    return true;
}

bool Diagram::has_internal_loop() const {
    for (const auto& [a, b] : edges_) {
        auto ra = classify(a);
        auto rb = classify(b);
        if (ra.kind == PortRef::Internal && rb.kind == PortRef::Internal && ra.a == rb.a) return true;
    }
    return false;
}

std::vector<std::vector<int>> Diagram::internal_components() const {
    const int t = internal_;
    const int n = t + leg_count();
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto node_of = [&](const PortRef& r) -> int {
        if (r.kind == PortRef::Internal) return r.a;
        if (r.kind == PortRef::Leg) return t + r.a;
        return -1;
    };
    for (const auto& [a, b] : edges_) {
        int na = node_of(classify(a));
        int nb = node_of(classify(b));
        if (na >= 0 && nb >= 0) parent[find(na)] = find(nb);
    }
    std::vector<std::vector<int>> comps;
    std::vector<int> comp_of(n, -1);
    for (int i = 0; i < n; ++i) {
        int r = find(i);
        if (comp_of[r] < 0) {
            comp_of[r] = static_cast<int>(comps.size());
            comps.emplace_back();
        }
        comps[comp_of[r]].push_back(i);
    }
    return comps;
}

std::string Diagram::validate(Space space, const LabelSet& labels) const {
    std::string why;
    if (!wellformed(&why)) return why;

    if (space == Space::Aempty) {
        if (leg_count() > 0) return "manifold diagram has legs";
        if (has_skeleton()) return "manifold diagram has skeleton lines";
        return "";
    }

    if (space == Space::Aup) {
        if (leg_count() > 0) return "pure tangle diagram has free legs";
        // Untouched skeleton lines are not stored; present ones must come
        // from the label set and actually carry attachments.
        for (const auto& ln : lines_) {
            if (!contains_label(labels, ln.label))
                return "skeleton label '" + ln.label.text() + "' not in label set";
            if (ln.attachments == 0) return "skeleton line without attachments stored";
        }
        // connected modulo skeleton: every internal component touches a line
        auto comps = internal_components();
        const auto partner = partner_map();
        const int t = internal_;
        for (const auto& comp : comps) {
            bool touches = false;
            for (int node : comp) {
                if (node >= t) continue;
                for (int s = 0; s < 3 && !touches; ++s) {
                    int q = partner[port_internal(node, s)];
                    if (q >= 0 && classify(q).kind == PortRef::Skel) touches = true;
                }
            }
            if (!touches && !comp.empty())
                return "internal component not connected to the skeleton";
        }
        return "";
    }

    // B / Bplus
    if (has_skeleton()) return "uni-trivalent diagram has skeleton lines";
    for (const auto& l : legs_)
        if (!contains_label(labels, l)) return "leg label '" + l.text() + "' not in label set";
    auto comps = internal_components();
    const int t = internal_;
    for (const auto& comp : comps) {
        bool has_leg = false, has_internal = false;
        for (int node : comp) (node >= t ? has_leg : has_internal) = true;
        if (!has_leg) return "closed component (no legs)";
        if (space == Space::Bplus && !has_internal)
            return "component without trivalent vertex";
    }
    return "";
}

std::string diagram_key(const Diagram& d) {
    std::ostringstream os;
    os << "t" << d.internal_count() << ";L";
    for (const auto& l : d.legs()) os << l.text() << ",";
    os << ";S";
    for (const auto& ln : d.lines()) os << ln.label.text() << ":" << ln.attachments << ",";
    os << ";E";
    auto edges = d.edges();
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) os << a << "-" << b << ",";
    return os.str();
}

Diagram empty_diagram() { return Diagram{}; }

Diagram theta() {
    Diagram d;
    d.set_internal_count(2);
    for (int s = 0; s < 3; ++s) d.add_edge(d.port_internal(0, s), d.port_internal(1, s));
    return d;
}

Diagram strut(const Label& a, const Label& b) {
    Diagram d;
    int i = d.add_leg(a);
    int j = d.add_leg(b);
    d.add_edge(d.port_leg(i), d.port_leg(j));
    return d;
}

Diagram wheel2(const Label& a, const Label& b) {
    Diagram d;
    d.set_internal_count(2);
    int i = d.add_leg(a);
    int j = d.add_leg(b);
    d.add_edge(d.port_internal(0, 0), d.port_leg(i));
    d.add_edge(d.port_internal(1, 0), d.port_leg(j));
    d.add_edge(d.port_internal(0, 1), d.port_internal(1, 1));
    d.add_edge(d.port_internal(0, 2), d.port_internal(1, 2));
    return d;
}

Diagram y_graph(const Label& a, const Label& b, const Label& c) {
    Diagram d;
    d.set_internal_count(1);
    const Label labs[3] = {a, b, c};
    for (int s = 0; s < 3; ++s) {
        int j = d.add_leg(labs[s]);
        d.add_edge(d.port_internal(0, s), d.port_leg(j));
    }
    return d;
}

Diagram dumbbell() {
    Diagram d;
    d.set_internal_count(2);
    d.add_edge(d.port_internal(0, 0), d.port_internal(0, 1));
    d.add_edge(d.port_internal(1, 0), d.port_internal(1, 1));
    d.add_edge(d.port_internal(0, 2), d.port_internal(1, 2));
    return d;
}

}  // namespace aarhus
