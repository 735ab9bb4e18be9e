#include "aarhus/canonical.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "aarhus/errors.hpp"

namespace aarhus {

namespace {

// Individualization-refinement search over one diagram. Movable nodes are
// the internal vertices and the legs; skeleton ports act as fixed anchors.
class CanonSearch {
public:
    explicit CanonSearch(const Diagram& d)
        : d_(d), t_(d.internal_count()), u_(d.leg_count()), partner_(d.partner_map()) {
        const int a = d.attachment_count();
        n_ = t_ + u_ + a;
        node_ports_.resize(n_);
        for (int v = 0; v < t_; ++v)
            for (int s = 0; s < 3; ++s) node_ports_[v].push_back(d.port_internal(v, s));
        for (int j = 0; j < u_; ++j) node_ports_[t_ + j].push_back(d.port_leg(j));
        int k = t_ + u_;
        for (int li = 0; li < static_cast<int>(d.lines().size()); ++li)
            for (int p = 0; p < d.lines()[li].attachments; ++p)
                node_ports_[k++].push_back(d.port_skel(li, p));
        port_node_.assign(d.total_ports(), -1);
        for (int nd = 0; nd < n_; ++nd)
            for (int pt : node_ports_[nd]) port_node_[pt] = nd;
    }

    SignedCanonical run() {
        std::vector<int> colors = initial_colors();
        refine(colors);
        descend(colors);
        SignedCanonical out;
        out.diagram = best_diagram_;
        out.key = best_key_;
        if (best_signs_.count(1) && best_signs_.count(-1))
            out.sign = 0;
        else
            out.sign = *best_signs_.begin();
        return out;
    }

private:
    std::vector<int> initial_colors() const {
        // Internal vertices share one color; legs are colored by label; each
        // skeleton port is its own fixed color. All of this is independent
        // of the input presentation.
        std::vector<Label> leg_labels(d_.legs());
        std::sort(leg_labels.begin(), leg_labels.end());
        leg_labels.erase(std::unique(leg_labels.begin(), leg_labels.end()), leg_labels.end());
        std::vector<int> colors(n_);
        for (int v = 0; v < t_; ++v) colors[v] = 0;
        for (int j = 0; j < u_; ++j) {
            int r = static_cast<int>(std::lower_bound(leg_labels.begin(), leg_labels.end(),
                                                      d_.legs()[j]) - leg_labels.begin());
            colors[t_ + j] = 1 + r;
        }
        const int base = 1 + static_cast<int>(leg_labels.size());
        for (int k = t_ + u_; k < n_; ++k) colors[k] = base + (k - t_ - u_);
        return colors;
    }

    // Equitable refinement; renumbers colors by (old color, neighbor color
    // multiset) so the result does not depend on the input ordering.
    void refine(std::vector<int>& colors) const {
        while (true) {
            std::vector<std::pair<std::vector<int>, int>> sig(n_);
            for (int nd = 0; nd < n_; ++nd) {
                std::vector<int> s;
                s.push_back(colors[nd]);
                std::vector<int> nb;
                for (int pt : node_ports_[nd]) nb.push_back(colors[port_node_[partner_[pt]]]);
                std::sort(nb.begin(), nb.end());
                s.insert(s.end(), nb.begin(), nb.end());
                sig[nd] = {std::move(s), nd};
            }
            auto sorted = sig;
            std::sort(sorted.begin(), sorted.end());
            std::map<std::vector<int>, int> rank;
            for (const auto& [s, nd] : sorted)
                rank.emplace(s, static_cast<int>(rank.size()));
            bool changed = false;
            for (int nd = 0; nd < n_; ++nd) {
                int c = rank[sig[nd].first];
                if (c != colors[nd]) changed = true;
                colors[nd] = c;
            }
            if (!changed) return;
        }
    }

    void descend(std::vector<int>& colors) {
        // Find the first non-singleton cell among movable nodes.
        std::map<int, std::vector<int>> cells;
        for (int nd = 0; nd < t_ + u_; ++nd) cells[colors[nd]].push_back(nd);
        const std::vector<int>* target = nullptr;
        for (const auto& [c, members] : cells) {
            if (members.size() > 1) {
                target = &members;
                break;
            }
        }
        if (!target) {
            visit_leaf(colors);
            return;
        }
        for (int pick : *target) {
            std::vector<int> next(n_);
            for (int nd = 0; nd < n_; ++nd) next[nd] = 2 * colors[nd] + 1;
            next[pick] = 2 * colors[pick];
            refine(next);
            descend(next);
        }
    }

    void visit_leaf(const std::vector<int>& colors) {
        // Ranks within each kind, ordered by final color.
        std::vector<int> vrank(t_, -1), lrank(u_, -1);
        {
            std::vector<std::pair<int, int>> vs, ls;
            for (int v = 0; v < t_; ++v) vs.push_back({colors[v], v});
            for (int j = 0; j < u_; ++j) ls.push_back({colors[t_ + j], j});
            std::sort(vs.begin(), vs.end());
            std::sort(ls.begin(), ls.end());
            for (int i = 0; i < t_; ++i) vrank[vs[i].second] = i;
            for (int i = 0; i < u_; ++i) lrank[ls[i].second] = i;
        }

        Diagram canon;
        canon.set_internal_count(t_);
        {
            std::vector<Label> new_legs(u_);
            for (int j = 0; j < u_; ++j) new_legs[lrank[j]] = d_.legs()[j];
            for (const auto& l : new_legs) canon.add_leg(l);
        }
        for (const auto& ln : d_.lines()) canon.add_line(ln.label, ln.attachments);

        // Canonical slot assignment per internal vertex. Ports are grouped
        // by partner descriptor; parallel edges within a group are paired
        // consistently from both ends via the shared edge index.
        bool ambiguous = false;
        int sign = 1;
        std::vector<int> new_port(d_.total_ports(), -1);
        for (int j = 0; j < u_; ++j) new_port[d_.port_leg(j)] = canon.port_leg(lrank[j]);
        for (int li = 0; li < static_cast<int>(d_.lines().size()); ++li)
            for (int p = 0; p < d_.lines()[li].attachments; ++p)
                new_port[d_.port_skel(li, p)] = canon.port_skel(li, p);

        // partner descriptor: (kind-class, id...) per port; loops keyed on self
        struct Key {
            int k0, k1, k2;
            auto operator<=>(const Key&) const = default;
        };
        // edge index per port, used to pair parallel edges consistently
        std::vector<int> edge_of_port(d_.total_ports(), -1);
        for (int ei = 0; ei < static_cast<int>(d_.edges().size()); ++ei) {
            edge_of_port[d_.edges()[ei].first] = ei;
            edge_of_port[d_.edges()[ei].second] = ei;
        }

        for (int v = 0; v < t_; ++v) {
            std::vector<std::pair<Key, int>> ports;  // (key, old port)
            for (int s = 0; s < 3; ++s) {
                const int pt = d_.port_internal(v, s);
                const int q = partner_[pt];
                const int m = port_node_[q];
                Key key{};
                if (m < t_) key = {0, vrank[m], 0};
                else if (m < t_ + u_) key = {1, lrank[m - t_], 0};
                else {
                    auto r = d_.classify(q);
                    key = {2, r.a, r.b};
                }
                ports.push_back({key, pt});
            }
            std::stable_sort(ports.begin(), ports.end(),
                             [&](const auto& a, const auto& b) {
                                 if (a.first != b.first) return a.first < b.first;
                                 // within a parallel group: order by edge index
                                 return edge_of_port[a.second] < edge_of_port[b.second];
                             });
            // self-loop: the two loop ports give identical rows either way,
            // with opposite parities
            for (int s = 0; s < 3; ++s) {
                const int pt = ports[s].second;
                if (port_node_[partner_[pt]] == v) ambiguous = true;
                new_port[pt] = canon.port_internal(vrank[v], s);
            }
            // parity of (old slot -> new slot)
            int perm[3];
            for (int s = 0; s < 3; ++s) perm[ports[s].second % 3] = s;
            int inv = 0;
            for (int i = 0; i < 3; ++i)
                for (int j = i + 1; j < 3; ++j)
                    if (perm[i] > perm[j]) ++inv;
            if (inv % 2 == 1) sign = -sign;
        }

        for (const auto& [a, b] : d_.edges()) canon.add_edge(new_port[a], new_port[b]);
        std::string key = diagram_key(canon);

        if (best_key_.empty() || key < best_key_) {
            best_key_ = key;
            best_diagram_ = std::move(canon);
            best_signs_.clear();
            best_signs_.insert(sign);
            if (ambiguous) best_signs_.insert(-sign);
        } else if (key == best_key_) {
            best_signs_.insert(sign);
            if (ambiguous) best_signs_.insert(-sign);
        }
    }

    const Diagram& d_;
    int t_, u_, n_;
    std::vector<int> partner_;
    std::vector<std::vector<int>> node_ports_;
    std::vector<int> port_node_;

    std::string best_key_;
    Diagram best_diagram_;
    std::set<int> best_signs_;
};

Diagram extract_component(const Diagram& d, const std::vector<int>& nodes) {
    const int t = d.internal_count();
    std::vector<int> vmap(t, -1), lmap(d.leg_count(), -1);
    int nv = 0, nl = 0;
    for (int nd : nodes)
        if (nd < t) vmap[nd] = nv++;
    Diagram sub;
    sub.set_internal_count(nv);
    for (int nd : nodes)
        if (nd >= t) {
            lmap[nd - t] = nl++;
            sub.add_leg(d.legs()[nd - t]);
        }
    for (const auto& [a, b] : d.edges()) {
        auto ra = d.classify(a);
        auto rb = d.classify(b);
        const int na = ra.kind == Diagram::PortRef::Internal ? ra.a : t + ra.a;
        if (std::find(nodes.begin(), nodes.end(), na) == nodes.end()) continue;
        auto map_port = [&](const Diagram::PortRef& r) {
            if (r.kind == Diagram::PortRef::Internal) return sub.port_internal(vmap[r.a], r.b);
            return sub.port_leg(lmap[r.a]);
        };
        sub.add_edge(map_port(ra), map_port(rb));
    }
    return sub;
}

}  // namespace

Diagram concat_components(const std::vector<const Diagram*>& parts) {
    Diagram merged;
    int t_total = 0;
    for (const Diagram* p : parts) {
        if (p->has_skeleton()) throw KernelError("concat_components: skeleton diagrams");
        t_total += p->internal_count();
    }
    merged.set_internal_count(t_total);
    int voff = 0;
    std::vector<std::pair<int, int>> pending;  // >=0 internal port, <0 leg id - 1
    for (const Diagram* p : parts) {
        std::vector<int> leg_map(p->leg_count());
        for (int j = 0; j < p->leg_count(); ++j) leg_map[j] = merged.add_leg(p->legs()[j]);
        for (const auto& [a, b] : p->edges()) {
            auto mp = [&](int pt) {
                auto r = p->classify(pt);
                if (r.kind == Diagram::PortRef::Internal) return 3 * (voff + r.a) + r.b;
                return -1 - leg_map[r.a];
            };
            pending.push_back({mp(a), mp(b)});
        }
        voff += p->internal_count();
    }
    for (auto [a, b] : pending)
        merged.add_edge(a >= 0 ? a : merged.port_leg(-1 - a), b >= 0 ? b : merged.port_leg(-1 - b));
    return merged;
}

std::vector<Diagram> split_components(const Diagram& d) {
    if (d.has_skeleton()) throw KernelError("split_components: skeleton diagrams");
    std::vector<Diagram> out;
    for (const auto& nodes : d.internal_components()) out.push_back(extract_component(d, nodes));
    return out;
}

SignedCanonical canonical_form(const Diagram& d) {
    std::string why;
    if (!d.wellformed(&why)) throw KernelError("canonical_form on ill-formed diagram: " + why);

    if (d.has_skeleton()) {
        bool any_empty = false;
        for (const auto& ln : d.lines()) any_empty |= (ln.attachments == 0);
        if (!any_empty) return CanonSearch(d).run();
        // Zero-attachment lines are representational noise; drop them. Their
        // removal shifts no port codes.
        Diagram trimmed;
        trimmed.set_internal_count(d.internal_count());
        for (const auto& l : d.legs()) trimmed.add_leg(l);
        for (const auto& ln : d.lines())
            if (ln.attachments > 0) trimmed.add_line(ln.label, ln.attachments);
        for (const auto& [a, b] : d.edges()) trimmed.add_edge(a, b);
        if (trimmed.has_skeleton()) return CanonSearch(trimmed).run();
        return canonical_form(trimmed);
    }

    // Componentwise: canonicalize each connected component, sort by key,
    // reassemble. Swapping identical components never costs a sign.
    auto comps = d.internal_components();
    std::vector<SignedCanonical> parts;
    int sign = 1;
    for (const auto& nodes : comps) {
        Diagram sub = extract_component(d, nodes);
        SignedCanonical c = CanonSearch(sub).run();
        sign *= c.sign;
        parts.push_back(std::move(c));
    }
    std::sort(parts.begin(), parts.end(),
              [](const SignedCanonical& a, const SignedCanonical& b) { return a.key < b.key; });

    std::vector<const Diagram*> ptrs;
    ptrs.reserve(parts.size());
    for (const auto& p : parts) ptrs.push_back(&p.diagram);

    SignedCanonical out;
    out.diagram = concat_components(ptrs);
    out.sign = sign;
    out.key = diagram_key(out.diagram);
    return out;
}

}  // namespace aarhus
