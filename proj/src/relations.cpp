#include "aarhus/relations.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "aarhus/errors.hpp"

namespace aarhus {

namespace {

// Rewire one internal edge into Jacobi configuration 1, 2 or 3. su/sv are
// the slots of the anchoring edge at u and v.
Diagram rewire_ihx(const Diagram& d, int u, int su, int v, int sv, int which) {
    const int stub_old[4] = {
        d.port_internal(u, (su + 1) % 3), d.port_internal(u, (su + 2) % 3),
        d.port_internal(v, (sv + 1) % 3), d.port_internal(v, (sv + 2) % 3)};
    // cfg1: (a,b | c,d)  cfg2: (b,c | a,d)  cfg3: (c,a | b,d)
    static const int order[3][4] = {{0, 1, 2, 3}, {1, 2, 0, 3}, {2, 0, 1, 3}};
    const int pos_new[4] = {d.port_internal(u, 0), d.port_internal(u, 1),
                            d.port_internal(v, 1), d.port_internal(v, 2)};
    std::map<int, int> remap;
    for (int j = 0; j < 4; ++j) remap[stub_old[order[which][j]]] = pos_new[j];

    const std::pair<int, int> middle{std::min(d.port_internal(u, su), d.port_internal(v, sv)),
                                     std::max(d.port_internal(u, su), d.port_internal(v, sv))};
    Diagram out;
    out.set_internal_count(d.internal_count());
    for (const auto& l : d.legs()) out.add_leg(l);
    for (const auto& ln : d.lines()) out.add_line(ln.label, ln.attachments);
    for (const auto& e : d.edges()) {
        if (e == middle) continue;
        auto mp = [&](int pt) {
            auto it = remap.find(pt);
            return it == remap.end() ? pt : it->second;
        };
        out.add_edge(mp(e.first), mp(e.second));
    }
    out.add_edge(d.port_internal(u, 2), d.port_internal(v, 0));
    return out;
}

}  // namespace

std::vector<GradedSum> ihx_relators(const Diagram& d, Space space, const LabelSet& labels,
                                    int max_degree) {
    std::vector<GradedSum> rows;
    const auto partner = d.partner_map();
    std::set<std::pair<int, int>> seen_edges;
    for (const auto& [pa, pb] : d.edges()) {
        auto ra = d.classify(pa);
        auto rb = d.classify(pb);
        if (ra.kind != Diagram::PortRef::Internal || rb.kind != Diagram::PortRef::Internal)
            continue;
        if (ra.a == rb.a) continue;  // loops carry no IHX row
        GradedSum row(space, labels, max_degree);
        for (int which = 0; which < 3; ++which)
            row.add(rewire_ihx(d, ra.a, ra.b, rb.a, rb.b, which), Rat(1));
        if (!row.is_zero()) rows.push_back(std::move(row));
    }
    (void)partner;
    (void)seen_edges;
    return rows;
}

std::vector<GradedSum> stu_relators(const Diagram& d, const LabelSet& labels, int max_degree) {
    std::vector<GradedSum> rows;
    const auto partner = d.partner_map();
    const int t = d.internal_count();
    for (int li = 0; li < static_cast<int>(d.lines().size()); ++li) {
        const int att = d.lines()[li].attachments;
        for (int p = 0; p + 1 < att; ++p) {
            const int s1 = d.port_skel(li, p);
            const int s2 = d.port_skel(li, p + 1);
            const int alpha = partner[s1];
            const int beta = partner[s2];
            GradedSum row(Space::Aup, labels, max_degree);
            row.add(d, Rat(1));  // T

            if (alpha != s2) {
                // U: swap what the two attachments grab
                Diagram u_diag;
                u_diag.set_internal_count(t);
                for (const auto& ln : d.lines()) u_diag.add_line(ln.label, ln.attachments);
                for (const auto& [a, b] : d.edges()) {
                    if ((a == s1 && b == alpha) || (a == alpha && b == s1) ||
                        (a == s2 && b == beta) || (a == beta && b == s2))
                        continue;
                    u_diag.add_edge(a, b);
                }
                u_diag.add_edge(s1, beta);
                u_diag.add_edge(s2, alpha);
                row.add(u_diag, Rat(-1));
            } else {
                row.add(d, Rat(-1));  // U == T for the two ends of one chord
            }

            // S: contract the pair onto a new vertex w with cyclic order
            // (line-edge, alpha, beta)
            Diagram s_diag;
            s_diag.set_internal_count(t + 1);
            const int w = t;
            for (const auto& ln : d.lines()) {
                int a2 = ln.attachments;
                if (&ln == &d.lines()[li]) a2 -= 1;
                if (a2 > 0) s_diag.add_line(ln.label, a2);
            }
            // old line index -> new line index (dropped when emptied)
            std::vector<int> line_map(d.lines().size(), -1);
            {
                int k = 0;
                for (int i = 0; i < static_cast<int>(d.lines().size()); ++i) {
                    int a2 = d.lines()[i].attachments - (i == li ? 1 : 0);
                    if (a2 > 0) line_map[i] = k++;
                }
            }
            auto map_port = [&](int pt) -> int {
                auto r = d.classify(pt);
                if (r.kind == Diagram::PortRef::Internal) return s_diag.port_internal(r.a, r.b);
                if (r.kind == Diagram::PortRef::Leg) throw KernelError("STU on a legged diagram");
                int pos = r.b;
                if (r.a == li) {
                    if (pos == p || pos == p + 1) throw KernelError("contracted port survived");
                    if (pos > p + 1) pos -= 1;
                }
                return s_diag.port_skel(line_map[r.a], pos);
            };
            for (const auto& [a, b] : d.edges()) {
                if (a == s1 || b == s1 || a == s2 || b == s2) continue;
                s_diag.add_edge(map_port(a), map_port(b));
            }
            // the merged attachment sits where position p used to be
            s_diag.add_edge(s_diag.port_internal(w, 0), s_diag.port_skel(line_map[li], p));
            if (alpha == s2) {
                s_diag.add_edge(s_diag.port_internal(w, 1), s_diag.port_internal(w, 2));
            } else {
                s_diag.add_edge(s_diag.port_internal(w, 1), map_port(alpha));
                s_diag.add_edge(s_diag.port_internal(w, 2), map_port(beta));
            }
            row.add(s_diag, Rat(-1));

            if (!row.is_zero()) rows.push_back(std::move(row));
        }
    }
    return rows;
}

std::vector<GradedSum> as_relators(const Diagram& d, Space space, const LabelSet& labels,
                                   int max_degree) {
    std::vector<GradedSum> rows;
    for (int v = 0; v < d.internal_count(); ++v) {
        Diagram flipped;
        flipped.set_internal_count(d.internal_count());
        for (const auto& l : d.legs()) flipped.add_leg(l);
        for (const auto& ln : d.lines()) flipped.add_line(ln.label, ln.attachments);
        const int p1 = d.port_internal(v, 1);
        const int p2 = d.port_internal(v, 2);
        for (const auto& [a, b] : d.edges()) {
            auto mp = [&](int pt) { return pt == p1 ? p2 : pt == p2 ? p1 : pt; };
            flipped.add_edge(mp(a), mp(b));
        }
        GradedSum row(space, labels, max_degree);
        row.add(d, Rat(1));
        row.add(flipped, Rat(1));
        rows.push_back(std::move(row));
    }
    return rows;
}

namespace {

SparseRow row_from_sum(const GradedSum& row, const std::map<std::string, int>& col_of) {
    SparseRow r;
    for (const auto& [key, term] : row.terms()) {
        auto it = col_of.find(key);
        if (it == col_of.end())
            throw KernelError("relator term escapes the spanning set: " + key);
        r.push_back({it->second, term.coeff});
    }
    std::sort(r.begin(), r.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return r;
}

}  // namespace

RelationMatrix relation_matrix(Space space, int degree, const LabelSet& labels,
                               const EnumerationLimits& limits) {
    RelationMatrix m;
    m.spanning = enumerate_diagrams(space, degree, labels, limits, /*include_zero=*/false);
    for (int i = 0; i < static_cast<int>(m.spanning.size()); ++i)
        m.col_of[m.spanning[i].key] = i;

    std::set<SparseRow> rows;
    const int N = degree;
    if (space == Space::Aup) {
        auto anchors = spanning_aup(degree, labels, /*include_zero=*/true);
        for (const auto& a : anchors)
            for (const auto& row : stu_relators(a.diagram, labels, N))
                rows.insert(row_from_sum(row, m.col_of));
    } else {
        for (const auto& a : m.spanning)
            for (const auto& row : ihx_relators(a.diagram, space, labels, N))
                rows.insert(row_from_sum(row, m.col_of));
    }
    m.rows.assign(rows.begin(), rows.end());
    return m;
}

const std::map<int, Rat>& EliminationTable::coords_of_key(const std::string& key) const {
    auto it = col_of.find(key);
    if (it == col_of.end()) throw KernelError("diagram not in spanning set: " + key);
    return coords[it->second];
}

EliminationTable build_elimination(std::vector<SignedCanonical> spanning,
                                   const std::vector<GradedSum>& relators) {
    EliminationTable t;
    t.spanning = std::move(spanning);
    std::sort(t.spanning.begin(), t.spanning.end(),
              [](const SignedCanonical& a, const SignedCanonical& b) { return a.key < b.key; });
    for (int i = 0; i < static_cast<int>(t.spanning.size()); ++i)
        t.col_of[t.spanning[i].key] = i;

    RowEchelon ech;
    {
        std::set<SparseRow> rows;
        for (const auto& r : relators) rows.insert(row_from_sum(r, t.col_of));
        for (const auto& r : rows) ech.add_row(r);
    }
    ech.finalize();

    std::map<int, int> basis_rank;
    for (int c = 0; c < static_cast<int>(t.spanning.size()); ++c) {
        if (ech.is_pivot(c)) continue;
        basis_rank[c] = static_cast<int>(t.basis_cols.size());
        t.basis_cols.push_back(c);
        t.basis.push_back(t.spanning[c].diagram);
        t.basis_keys.push_back(t.spanning[c].key);
    }
    t.coords.resize(t.spanning.size());
    for (int c = 0; c < static_cast<int>(t.spanning.size()); ++c) {
        if (!ech.is_pivot(c)) {
            t.coords[c] = {{basis_rank[c], Rat(1)}};
            continue;
        }
        const SparseRow& row = ech.pivot_rows().at(c);
        std::map<int, Rat> coord;
        for (size_t k = 1; k < row.size(); ++k) {
            const auto& [col, val] = row[k];
            coord[basis_rank.at(col)] = -val;
        }
        t.coords[c] = std::move(coord);
    }
    return t;
}

// ---------------------------------------------------------------------------

namespace {

std::string table_cache_key(const std::string& tag, const LabelSet& labels, int degree) {
    std::string k = tag + "|";
    for (const auto& l : labels) k += l.text() + ",";
    k += "|" + std::to_string(degree);
    return k;
}

}  // namespace

BasisCache::BasisCache(EnumerationLimits limits, std::string cache_dir)
    : limits_(limits), cache_dir_(std::move(cache_dir)) {}

const EliminationTable& BasisCache::connected_table(Space space, const LabelSet& labels,
                                                    int degree) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    return connected_table_locked(space, labels, degree);
}

const EliminationTable& BasisCache::connected_table_locked(Space space, const LabelSet& labels,
                                                           int degree) {
    if (space != Space::Aempty && space != Space::B)
        throw KernelError("connected tables exist only for Aempty and B");
    const LabelSet effective = space == Space::Aempty ? LabelSet{} : labels;
    const std::string key = table_cache_key(
        space == Space::Aempty ? "Aconn" : "Bconn", effective, degree);
    auto it = tables_.find(key);
    if (it != tables_.end()) return *it->second;

    std::vector<SignedCanonical> spanning =
        space == Space::Aempty ? connected_manifold_classes(degree)
                               : connected_b_classes(degree, labels);
    std::vector<GradedSum> rows;
    for (const auto& a : spanning)
        for (auto& row : ihx_relators(a.diagram, space, labels, degree))
            rows.push_back(std::move(row));
    auto table = std::make_unique<EliminationTable>(build_elimination(std::move(spanning), rows));
    const EliminationTable& ref = *table;
    tables_.emplace(key, std::move(table));
    return ref;
}

const QuotientBasis& BasisCache::get(Space space, const LabelSet& labels, int degree) {
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    const int cap = space == Space::Aempty ? limits_.aempty_cap : limits_.labeled_cap;
    if (degree > cap)
        throw LimitExceeded("degree " + std::to_string(degree) +
                            " above enumeration cap " + std::to_string(cap));
    const LabelSet effective = space == Space::Aempty ? LabelSet{} : labels;
    const std::string key = table_cache_key(space_name(space), effective, degree);
    auto it = bases_.find(key);
    if (it != bases_.end()) return *it->second;

    auto qb = std::make_unique<QuotientBasis>();
    qb->space_ = space;
    qb->labels_ = effective;
    qb->degree_ = degree;
    qb->cache_ = this;

    if (space == Space::Aup) {
        const std::string tkey = table_cache_key("AupTab", effective, degree);
        auto jt = tables_.find(tkey);
        if (jt == tables_.end()) {
            std::vector<SignedCanonical> spanning = spanning_aup(degree, labels);
            std::vector<GradedSum> rows;
            for (const auto& a : spanning_aup(degree, labels, /*include_zero=*/true))
                for (auto& row : stu_relators(a.diagram, labels, degree))
                    rows.push_back(std::move(row));
            auto table =
                std::make_unique<EliminationTable>(build_elimination(std::move(spanning), rows));
            jt = tables_.emplace(tkey, std::move(table)).first;
        }
        qb->direct_ = jt->second.get();
        qb->basis_ = qb->direct_->basis;
        qb->basis_keys_ = qb->direct_->basis_keys;
    } else if (space == Space::B || space == Space::Aempty) {
        // monomial basis over connected quotient bases
        for (int d = 1; d <= degree; ++d) connected_table_locked(space, labels, d);
        struct Gen {
            const Diagram* diagram;
            const std::string* key;
            int degree;
        };
        std::vector<Gen> gens;
        for (int d = 1; d <= degree; ++d) {
            const auto& tab = connected_table_locked(space, labels, d);
            for (int i = 0; i < tab.dim(); ++i)
                gens.push_back({&tab.basis[i], &tab.basis_keys[i], d});
        }
        std::vector<std::pair<std::string, Diagram>> monomials;
        std::vector<const Diagram*> chosen;
        std::function<void(int, int)> rec = [&](int remaining, int min_idx) {
            if (remaining == 0) {
                std::vector<const Diagram*> sorted = chosen;
                std::vector<std::pair<std::string, const Diagram*>> keyed;
                for (auto* p : sorted) keyed.push_back({diagram_key(*p), p});
                std::sort(keyed.begin(), keyed.end(),
                          [](const auto& a, const auto& b) { return a.first < b.first; });
                sorted.clear();
                for (auto& [k, p] : keyed) sorted.push_back(p);
                Diagram m = concat_components(sorted);
                monomials.push_back({diagram_key(m), std::move(m)});
                return;
            }
            for (int i = min_idx; i < static_cast<int>(gens.size()); ++i) {
                if (gens[i].degree > remaining) continue;
                chosen.push_back(gens[i].diagram);
                rec(remaining - gens[i].degree, i);
                chosen.pop_back();
            }
        };
        rec(degree, 0);  // degree 0 yields exactly the empty monomial
        std::sort(monomials.begin(), monomials.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        for (int i = 0; i < static_cast<int>(monomials.size()); ++i) {
            qb->monomial_index_[monomials[i].first] = i;
            qb->basis_keys_.push_back(monomials[i].first);
            qb->basis_.push_back(std::move(monomials[i].second));
        }
    } else {
        throw KernelError("no quotient basis for space " + space_name(space));
    }

    const QuotientBasis& ref = *qb;
    bases_.emplace(key, std::move(qb));
    return ref;
}

std::map<int, Rat> QuotientBasis::reduce_diagram(const Diagram& canonical_diagram) const {
    if (direct_) {
        return direct_->coords_of_key(diagram_key(canonical_diagram));
    }
    // componentwise expansion over connected tables
    std::vector<Diagram> comps = split_components(canonical_diagram);
    std::map<int, Rat> out;
    // per component: sparse coords over that degree's connected basis
    struct CompChoice {
        const EliminationTable* table;
        std::map<int, Rat> coords;
    };
    std::vector<CompChoice> per_comp;
    for (const auto& c : comps) {
        const EliminationTable& tab =
            cache_->connected_table(space_, labels_, c.degree());
        per_comp.push_back({&tab, tab.coords_of_key(diagram_key(c))});
    }
    std::vector<const Diagram*> chosen(per_comp.size(), nullptr);
    std::function<void(size_t, Rat)> rec = [&](size_t idx, Rat acc) {
        if (idx == per_comp.size()) {
            std::vector<std::pair<std::string, const Diagram*>> keyed;
            for (auto* p : chosen) keyed.push_back({diagram_key(*p), p});
            std::sort(keyed.begin(), keyed.end(),
                      [](const auto& a, const auto& b) { return a.first < b.first; });
            std::vector<const Diagram*> sorted;
            for (auto& [k, p] : keyed) sorted.push_back(p);
            const std::string mkey = diagram_key(concat_components(sorted));
            auto it = monomial_index_.find(mkey);
            if (it == monomial_index_.end())
                throw KernelError("monomial missing from quotient basis: " + mkey);
            out[it->second] += acc;
            if (out[it->second] == 0) out.erase(it->second);
            return;
        }
        for (const auto& [pos, val] : per_comp[idx].coords) {
            chosen[idx] = &per_comp[idx].table->basis[pos];
            rec(idx + 1, acc * val);
        }
    };
    rec(0, Rat(1));
    return out;
}

std::vector<Rat> QuotientBasis::reduce(const GradedSum& s) const {
    std::vector<Rat> out(dim(), Rat(0));
    for (const auto& [key, term] : s.terms()) {
        if (term.diagram.degree() != degree_) continue;
        for (const auto& [pos, val] : reduce_diagram(term.diagram)) out[pos] += val * term.coeff;
    }
    return out;
}

int BasisCache::dimension(Space space, const LabelSet& labels, int degree) {
    return get(space, labels, degree).dim();
}

int BasisCache::primitive_dimension(int degree) {
    if (degree <= 0) return 0;
    std::lock_guard<std::recursive_mutex> lock(mutex_);
    if (degree > limits_.aempty_cap)
        throw LimitExceeded("degree above enumeration cap");
    return connected_table_locked(Space::Aempty, {}, degree).dim();
}

}  // namespace aarhus
