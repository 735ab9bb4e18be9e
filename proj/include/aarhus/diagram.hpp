#pragma once

#include <string>
#include <utility>
#include <vector>

#include "aarhus/label.hpp"

namespace aarhus {

enum class Space { Aempty, Aup, B, Bplus };

std::string space_name(Space s);
bool space_from_name(const std::string& name, Space* out);

struct SkeletonLine {
    Label label;
    int attachments = 0;
    auto operator<=>(const SkeletonLine&) const = default;
};

// A diagram is a perfect matching on "ports":
//   - internal trivalent vertex v owns ports 3v, 3v+1, 3v+2; slot order
//     (0,1,2) is the cyclic orientation of the vertex,
//   - leg j owns a single port,
//   - attachment p of skeleton line l owns a single port. Skeleton ports are
//     rigid: isomorphisms fix them pointwise.
// Multi-edges and self-loops are representable; self-loops at trivalent
// vertices always canonicalize to sign 0.
class Diagram {
public:
    struct PortRef {
        enum Kind { Internal = 0, Leg = 1, Skel = 2 };
        Kind kind;
        int a;  // vertex id / leg id / line index
        int b;  // slot / unused / position
    };

    Diagram() = default;

    // -- construction ------------------------------------------------------
    void set_internal_count(int t) { internal_ = t; }
    int add_leg(const Label& l) {
        legs_.push_back(l);
        return static_cast<int>(legs_.size()) - 1;
    }
    // Lines must be added in strictly increasing label order.
    int add_line(const Label& l, int attachments);
    void add_edge(int port_a, int port_b);

    // -- structure ---------------------------------------------------------
    int internal_count() const { return internal_; }
    int leg_count() const { return static_cast<int>(legs_.size()); }
    const std::vector<Label>& legs() const { return legs_; }
    const std::vector<SkeletonLine>& lines() const { return lines_; }
    int attachment_count() const;
    bool has_skeleton() const { return !lines_.empty(); }

    int port_internal(int v, int slot) const { return 3 * v + slot; }
    int port_leg(int j) const { return 3 * internal_ + j; }
    int port_skel(int line, int pos) const;
    int total_ports() const;
    PortRef classify(int port) const;

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    // port -> partner port, or -1 where no edge ends (ill-formed diagrams).
    std::vector<int> partner_map() const;

    int degree() const;  // (#trivalent + #legs + #attachments) / 2

    bool wellformed(std::string* why = nullptr) const;

    // Space membership. Returns "" when valid, otherwise the first violated
    // invariant. Violations are data, not failures.
    std::string validate(Space space, const LabelSet& labels) const;

    bool has_internal_loop() const;

    // Connected components of the graph spanned by internal vertices and
    // legs (skeleton collapsed away). Each entry lists node ids, internal
    // vertices first (node id = vertex id, then t + leg id).
    std::vector<std::vector<int>> internal_components() const;

    bool operator==(const Diagram&) const = default;

private:
    int internal_ = 0;
    std::vector<Label> legs_;
    std::vector<SkeletonLine> lines_;
    std::vector<std::pair<int, int>> edges_;
};

// Deterministic presentation key; canonical diagrams get canonical keys.
std::string diagram_key(const Diagram& d);

// -- builders used widely in tests and sample data --------------------------
Diagram empty_diagram();
Diagram theta();                          // 2 vertices, triple edge
Diagram strut(const Label& a, const Label& b);
Diagram wheel2(const Label& a, const Label& b);  // circle with two legs
Diagram y_graph(const Label& a, const Label& b, const Label& c);
Diagram dumbbell();                       // two looped vertices joined by an edge

}  // namespace aarhus
