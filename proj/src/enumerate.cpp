#include "aarhus/enumerate.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>

#include "aarhus/errors.hpp"

namespace aarhus {

namespace {

// Stub-matching generator with symmetry breaking: always extend the lowest
// node with remaining degree, and among untouched nodes only the first of
// each kind is a legal partner. Residual duplicates are removed by
// canonical-key dedupe.
class Generator {
public:
    Generator(int t, int u) : t_(t), u_(u), n_(t + u) {
        rem_.assign(n_, 0);
        touched_.assign(n_, false);
        for (int i = 0; i < t_; ++i) rem_[i] = 3;
        for (int i = t_; i < n_; ++i) rem_[i] = 1;
    }

    std::vector<Diagram> run() {
        if (n_ == 0) return {};
        touched_[0] = true;
        recurse(-1, -1);
        std::vector<Diagram> out;
        out.reserve(found_.size());
        for (auto& [key, d] : found_) out.push_back(std::move(d));
        return out;
    }

private:
    void recurse(int last_anchor, int last_partner) {
        int i = -1;
        for (int k = 0; k < n_; ++k)
            if (rem_[k] > 0) {
                i = k;
                break;
            }
        if (i < 0) {
            finish();
            return;
        }
        // Edges anchored at i are emitted with non-decreasing partner; the
        // stubs of i are interchangeable, so this loses nothing.
        const int min_j = (i == last_anchor) ? last_partner : i;
        // self-loop (internal nodes only)
        if (i < t_ && rem_[i] >= 2 && min_j <= i) try_edge(i, i);
        int first_fresh_internal = -1, first_fresh_leg = -1;
        for (int j = i + 1; j < n_; ++j) {
            if (rem_[j] <= 0) continue;
            if (!touched_[j]) {
                if (j < t_) {
                    if (first_fresh_internal >= 0) continue;
                    first_fresh_internal = j;
                } else {
                    if (first_fresh_leg >= 0) continue;
                    first_fresh_leg = j;
                }
            }
            if (j < min_j) continue;
            try_edge(i, j);
        }
    }

    void try_edge(int i, int j) {
        rem_[i] -= (i == j) ? 2 : 1;
        if (i != j) rem_[j] -= 1;
        const bool was_touched = touched_[j];
        touched_[j] = true;
        edges_.push_back({i, j});
        recurse(i, j);
        edges_.pop_back();
        touched_[j] = was_touched;
        rem_[i] += (i == j) ? 2 : 1;
        if (i != j) rem_[j] += 1;
    }

    void finish() {
        // connectivity over nodes
        std::vector<int> parent(n_);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int x) {
            while (parent[x] != x) x = parent[x] = parent[parent[x]];
            return x;
        };
        for (const auto& [a, b] : edges_) parent[find(a)] = find(b);
        const int root = find(0);
        for (int k = 1; k < n_; ++k)
            if (find(k) != root) return;

        Diagram d;
        d.set_internal_count(t_);
        for (int j = 0; j < u_; ++j) d.add_leg(Label{});
        std::vector<int> used(n_, 0);
        auto next_port = [&](int node) {
            if (node < t_) return d.port_internal(node, used[node]++);
            return d.port_leg(node - t_);
        };
        for (const auto& [a, b] : edges_) {
            int pa = next_port(a);
            int pb = next_port(b);
            d.add_edge(pa, pb);
        }
        SignedCanonical c = canonical_form(d);
        found_.emplace(c.key, std::move(c.diagram));
    }

    int t_, u_, n_;
    std::vector<int> rem_;
    std::vector<bool> touched_;
    std::vector<std::pair<int, int>> edges_;
    std::map<std::string, Diagram> found_;
};

std::mutex g_cache_mutex;

}  // namespace

std::vector<Diagram> connected_unitrivalent_classes(int t, int u) {
    static std::map<std::pair<int, int>, std::vector<Diagram>> cache;
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto it = cache.find({t, u});
    if (it != cache.end()) return it->second;
    auto result = Generator(t, u).run();
    cache[{t, u}] = result;
    return result;
}

std::vector<SignedCanonical> connected_manifold_classes(int degree, bool include_zero) {
    std::vector<SignedCanonical> out;
    if (degree <= 0) return out;
    for (const Diagram& d : connected_unitrivalent_classes(2 * degree, 0)) {
        SignedCanonical c = canonical_form(d);
        if (c.sign == 0 && !include_zero) continue;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(),
              [](const SignedCanonical& a, const SignedCanonical& b) { return a.key < b.key; });
    return out;
}

std::vector<SignedCanonical> connected_b_classes(int degree, const LabelSet& labels,
                                                 bool include_zero) {
    std::vector<SignedCanonical> out;
    if (degree <= 0) return out;
    std::map<std::string, SignedCanonical> seen;
    for (int u = 1; u <= 2 * degree; ++u) {
        const int t = 2 * degree - u;
        for (const Diagram& shape : connected_unitrivalent_classes(t, u)) {
            // all labelings of the legs
            std::vector<int> assign(u, 0);
            while (true) {
                Diagram d = shape;
                {
                    Diagram relabeled;
                    relabeled.set_internal_count(shape.internal_count());
                    for (int j = 0; j < u; ++j) relabeled.add_leg(labels[assign[j]]);
                    for (const auto& [a, b] : shape.edges()) relabeled.add_edge(a, b);
                    d = std::move(relabeled);
                }
                SignedCanonical c = canonical_form(d);
                if (c.sign != 0 || include_zero) seen.emplace(c.key, std::move(c));
                int k = u - 1;
                while (k >= 0 && assign[k] == static_cast<int>(labels.size()) - 1) assign[k--] = 0;
                if (k < 0) break;
                assign[k]++;
            }
        }
    }
    for (auto& [key, c] : seen) out.push_back(std::move(c));
    return out;
}

namespace {

// Multisets of connected classes with total degree exactly `degree`.
std::vector<SignedCanonical> multiset_spanning(
    int degree, const std::vector<std::vector<SignedCanonical>>& connected_by_degree) {
    std::vector<SignedCanonical> out;
    if (degree == 0) {
        out.push_back(canonical_form(empty_diagram()));
        return out;
    }
    // flatten, ordered by (degree, key)
    struct Piece {
        const SignedCanonical* c;
        int degree;
    };
    std::vector<Piece> pieces;
    for (int d = 1; d < static_cast<int>(connected_by_degree.size()); ++d)
        for (const auto& c : connected_by_degree[d]) pieces.push_back({&c, d});

    std::vector<const SignedCanonical*> chosen;
    std::map<std::string, SignedCanonical> seen;
    auto emit = [&]() {
        Diagram merged;
        int t_total = 0;
        for (auto* p : chosen) t_total += p->diagram.internal_count();
        merged.set_internal_count(t_total);
        std::vector<std::tuple<int, int, int, int>> edges;  // flags+ids, resolved later
        int voff = 0;
        std::vector<Label> legs;
        std::vector<std::pair<int, int>> pending;
        for (auto* p : chosen) {
            const Diagram& sub = p->diagram;
            std::vector<int> leg_map(sub.leg_count());
            for (int j = 0; j < sub.leg_count(); ++j) {
                leg_map[j] = static_cast<int>(legs.size());
                legs.push_back(sub.legs()[j]);
            }
            for (const auto& [a, b] : sub.edges()) {
                auto mp = [&](int pt) {
                    auto r = sub.classify(pt);
                    if (r.kind == Diagram::PortRef::Internal) return 3 * (voff + r.a) + r.b;
                    return -1 - leg_map[r.a];
                };
                pending.push_back({mp(a), mp(b)});
            }
            voff += sub.internal_count();
        }
        for (const auto& l : legs) merged.add_leg(l);
        for (auto [a, b] : pending)
            merged.add_edge(a >= 0 ? a : merged.port_leg(-1 - a),
                            b >= 0 ? b : merged.port_leg(-1 - b));
        SignedCanonical c = canonical_form(merged);
        seen.emplace(c.key, std::move(c));
        (void)edges;
    };
    // choose multiset: non-decreasing piece index
    std::function<void(int, int)> rec = [&](int remaining, int min_idx) {
        if (remaining == 0) {
            emit();
            return;
        }
        for (int i = min_idx; i < static_cast<int>(pieces.size()); ++i) {
            if (pieces[i].degree > remaining) continue;
            chosen.push_back(pieces[i].c);
            rec(remaining - pieces[i].degree, i);
            chosen.pop_back();
        }
    };
    rec(degree, 0);
    for (auto& [key, c] : seen) out.push_back(std::move(c));
    return out;
}

}  // namespace

std::vector<SignedCanonical> spanning_aempty(int degree, bool include_zero) {
    std::vector<std::vector<SignedCanonical>> conn(degree + 1);
    for (int d = 1; d <= degree; ++d) conn[d] = connected_manifold_classes(d, include_zero);
    return multiset_spanning(degree, conn);
}

std::vector<SignedCanonical> spanning_b(int degree, const LabelSet& labels, bool include_zero) {
    std::vector<std::vector<SignedCanonical>> conn(degree + 1);
    for (int d = 1; d <= degree; ++d) conn[d] = connected_b_classes(d, labels, include_zero);
    return multiset_spanning(degree, conn);
}

std::vector<SignedCanonical> spanning_aup(int degree, const LabelSet& labels, bool include_zero) {
    if (degree == 0) return {canonical_form(empty_diagram())};
    std::map<std::string, SignedCanonical> seen;
    // Arrangement classes of zero B-classes can be nonzero upstairs, so the
    // base set always includes them.
    for (const SignedCanonical& base : spanning_b(degree, labels, /*include_zero=*/true)) {
        const Diagram& bd = base.diagram;
        // group legs by label
        std::map<Label, std::vector<int>> by_label;
        for (int j = 0; j < bd.leg_count(); ++j) by_label[bd.legs()[j]].push_back(j);
        // per-label permutations give the orderings along each line
        std::vector<Label> line_labels;
        std::vector<std::vector<int>> perms;  // current permutation per label
        for (auto& [lab, legs] : by_label) line_labels.push_back(lab);

        std::vector<std::vector<int>> current;
        for (auto& [lab, legs] : by_label) {
            std::vector<int> p(legs.size());
            std::iota(p.begin(), p.end(), 0);
            current.push_back(p);
        }
        auto build = [&]() {
            Diagram d;
            d.set_internal_count(bd.internal_count());
            std::vector<int> leg_to_port(bd.leg_count(), -1);
            {
                int li = 0;
                for (auto& [lab, legs] : by_label) {
                    d.add_line(lab, static_cast<int>(legs.size()));
                    ++li;
                }
            }
            {
                int li = 0;
                for (auto& [lab, legs] : by_label) {
                    for (int pos = 0; pos < static_cast<int>(legs.size()); ++pos)
                        leg_to_port[legs[current[li][pos]]] = d.port_skel(li, pos);
                    ++li;
                }
            }
            for (const auto& [a, b] : bd.edges()) {
                auto mp = [&](int pt) {
                    auto r = bd.classify(pt);
                    if (r.kind == Diagram::PortRef::Internal) return d.port_internal(r.a, r.b);
                    return leg_to_port[r.a];
                };
                d.add_edge(mp(a), mp(b));
            }
            SignedCanonical c = canonical_form(d);
            if (c.sign != 0 || include_zero) seen.emplace(c.key, std::move(c));
        };
        // iterate the product of permutations
        std::function<void(size_t)> iterate = [&](size_t idx) {
            if (idx == current.size()) {
                build();
                return;
            }
            std::sort(current[idx].begin(), current[idx].end());
            do {
                iterate(idx + 1);
            } while (std::next_permutation(current[idx].begin(), current[idx].end()));
        };
        iterate(0);
        (void)perms;
    }
    std::vector<SignedCanonical> out;
    for (auto& [key, c] : seen) out.push_back(std::move(c));
    return out;
}

std::vector<SignedCanonical> enumerate_diagrams(Space space, int degree, const LabelSet& labels,
                                                const EnumerationLimits& limits,
                                                bool include_zero) {
    if (degree < 0) throw LimitExceeded("negative degree");
    const int cap = space == Space::Aempty ? limits.aempty_cap : limits.labeled_cap;
    if (degree > cap)
        throw LimitExceeded("degree " + std::to_string(degree) + " above enumeration cap " +
                            std::to_string(cap));
    switch (space) {
        case Space::Aempty: return spanning_aempty(degree, include_zero);
        case Space::B: return spanning_b(degree, labels, include_zero);
        case Space::Bplus: {
            auto all = spanning_b(degree, labels, include_zero);
            std::vector<SignedCanonical> out;
            for (auto& c : all)
                if (c.diagram.validate(Space::Bplus, labels).empty()) out.push_back(std::move(c));
            return out;
        }
        case Space::Aup: return spanning_aup(degree, labels, include_zero);
    }
    return {};
}

}  // namespace aarhus
