#include "aarhus/maps.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <numeric>

#include "aarhus/errors.hpp"

namespace aarhus {

void TensorSum::add(const Diagram& left, const Diagram& right, const Rat& c) {
    if (c == 0) return;
    SignedCanonical cl = canonical_form(left);
    if (cl.sign == 0) return;
    SignedCanonical cr = canonical_form(right);
    if (cr.sign == 0) return;
    const Rat v = c * cl.sign * cr.sign;
    auto key = std::make_pair(cl.key, cr.key);
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(std::move(key), Term{std::move(cl.diagram), std::move(cr.diagram), v});
        return;
    }
    it->second.coeff += v;
    if (it->second.coeff == 0) terms_.erase(it);
}

bool TensorSum::operator==(const TensorSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second.coeff != jt->second.coeff) return false;
    return true;
}

namespace {

void check_union_family(const GradedSum& a, const GradedSum& b) {
    const bool a_ok = a.space() == Space::Aempty || a.space() == Space::B || a.space() == Space::Bplus;
    const bool b_ok = b.space() == Space::Aempty || b.space() == Space::B || b.space() == Space::Bplus;
    if (!a_ok || !b_ok) throw SpaceMismatch("disjoint union lives on Aempty and B only");
    if ((a.space() == Space::Aempty) != (b.space() == Space::Aempty) || a.labels() != b.labels())
        throw SpaceMismatch("disjoint union over different spaces");
}

}  // namespace

GradedSum du_product(const GradedSum& a, const GradedSum& b) {
    check_union_family(a, b);
    GradedSum out(a.space(), a.labels(), std::min(a.max_degree(), b.max_degree()));
    for (const auto& [ka, ta] : a.terms()) {
        for (const auto& [kb, tb] : b.terms()) {
            if (ta.diagram.degree() + tb.diagram.degree() > out.max_degree()) continue;
            out.add(concat_components({&ta.diagram, &tb.diagram}), ta.coeff * tb.coeff);
        }
    }
    return out;
}

GradedSum exp_union(const GradedSum& s) {
    if (s.constant_term() != 0)
        throw BadConstantTerm("exp_union needs a vanishing constant term");
    GradedSum result = GradedSum::unit(s.space(), s.labels(), s.max_degree());
    GradedSum power = result;
    for (int k = 1; k <= s.max_degree(); ++k) {
        power = du_product(power, s) * (Rat(1) / k);
        if (power.is_zero()) break;
        result.add_scaled(power, Rat(1));
    }
    return result;
}

GradedSum log_union(const GradedSum& u) {
    if (u.constant_term() != 1)
        throw BadConstantTerm("log_union needs constant term 1");
    GradedSum eps = u.without_constant();
    GradedSum result(u.space(), u.labels(), u.max_degree());
    GradedSum power = GradedSum::unit(u.space(), u.labels(), u.max_degree());
    for (int k = 1; k <= u.max_degree(); ++k) {
        power = du_product(power, eps);
        if (power.is_zero()) break;
        const Rat c = Rat((k % 2 == 1) ? 1 : -1) / k;
        result.add_scaled(power, c);
    }
    return result;
}

TensorSum coproduct(const Diagram& d) {
    TensorSum out;
    std::vector<Diagram> comps = split_components(d);
    const size_t k = comps.size();
    for (size_t mask = 0; mask < (size_t{1} << k); ++mask) {
        std::vector<const Diagram*> left, right;
        for (size_t i = 0; i < k; ++i)
            ((mask >> i) & 1 ? left : right).push_back(&comps[i]);
        out.add(concat_components(left), concat_components(right), Rat(1));
    }
    return out;
}

TensorSum coproduct(const GradedSum& s) {
    TensorSum out;
    for (const auto& [key, term] : s.terms()) {
        TensorSum one = coproduct(term.diagram);
        for (const auto& [k2, t2] : one.terms()) out.add(t2.left, t2.right, t2.coeff * term.coeff);
    }
    return out;
}

TensorSum tensor_square(const GradedSum& s) {
    TensorSum out;
    for (const auto& [ka, ta] : s.terms())
        for (const auto& [kb, tb] : s.terms())
            out.add(ta.diagram, tb.diagram, ta.coeff * tb.coeff);
    return out;
}

GradedSum substitute_legs(const GradedSum& s, const DenseMatrix& a) {
    const LabelSet& labels = s.labels();
    if (a.size() != labels.size()) throw KernelError("substitution matrix has wrong size");
    GradedSum out(s.space(), labels, s.max_degree());
    for (const auto& [key, term] : s.terms()) {
        const Diagram& d = term.diagram;
        const int u = d.leg_count();
        std::vector<int> from(u);
        for (int j = 0; j < u; ++j) from[j] = label_index(labels, d.legs()[j]);
        std::vector<int> to(u, 0);
        while (true) {
            Rat c = term.coeff;
            for (int j = 0; j < u; ++j) c *= a[from[j]][to[j]];
            if (c != 0) {
                Diagram nd;
                nd.set_internal_count(d.internal_count());
                for (int j = 0; j < u; ++j) nd.add_leg(labels[to[j]]);
                for (const auto& [pa, pb] : d.edges()) nd.add_edge(pa, pb);
                out.add(nd, c);
            }
            int k = u - 1;
            while (k >= 0 && to[k] == static_cast<int>(labels.size()) - 1) to[k--] = 0;
            if (k < 0) break;
            to[k]++;
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

GradedSum chi(const GradedSum& s) {
    GradedSum out(Space::Aup, s.labels(), s.max_degree());
    for (const auto& [key, term] : s.terms()) {
        const Diagram& d = term.diagram;
        const std::string why = d.validate(Space::B, s.labels());
        if (!why.empty()) throw SpaceMismatch("chi input: " + why);
        std::map<Label, std::vector<int>> by_label;
        for (int j = 0; j < d.leg_count(); ++j) by_label[d.legs()[j]].push_back(j);
        Rat denom(1);
        std::vector<std::vector<int>> order;
        for (auto& [lab, legs] : by_label) {
            for (size_t i = 2; i <= legs.size(); ++i) denom *= static_cast<int>(i);
            std::vector<int> p(legs.size());
            std::iota(p.begin(), p.end(), 0);
            order.push_back(std::move(p));
        }
        const Rat per = term.coeff / denom;
        std::function<void(size_t)> rec = [&](size_t idx) {
            if (idx == order.size()) {
                Diagram nd;
                nd.set_internal_count(d.internal_count());
                std::vector<int> leg_to_port(d.leg_count(), -1);
                int li = 0;
                for (auto& [lab, legs] : by_label) {
                    nd.add_line(lab, static_cast<int>(legs.size()));
                    ++li;
                }
                li = 0;
                for (auto& [lab, legs] : by_label) {
                    for (int pos = 0; pos < static_cast<int>(legs.size()); ++pos)
                        leg_to_port[legs[order[li][pos]]] = nd.port_skel(li, pos);
                    ++li;
                }
                for (const auto& [a, b] : d.edges()) {
                    auto mp = [&](int pt) {
                        auto r = d.classify(pt);
                        if (r.kind == Diagram::PortRef::Internal) return nd.port_internal(r.a, r.b);
                        return leg_to_port[r.a];
                    };
                    nd.add_edge(mp(a), mp(b));
                }
                out.add(nd, per);
                return;
            }
            std::sort(order[idx].begin(), order[idx].end());
            do {
                rec(idx + 1);
            } while (std::next_permutation(order[idx].begin(), order[idx].end()));
        };
        rec(0);
    }
    return out;
}

namespace {

// Per-degree matrix of chi between the quotient bases, cached with its
// inverse (chi is an isomorphism by formal PBW; a singular matrix means the
// relation generation broke).
struct ChiSolve {
    DenseMatrix inverse;  // dim_b x dim_aup
};

std::mutex g_chi_mutex;
std::map<std::string, ChiSolve> g_chi_cache;

std::string chi_key(const BasisCache* cache, const LabelSet& labels, int degree) {
    std::string k = std::to_string(reinterpret_cast<uintptr_t>(cache)) + "|";
    for (const auto& l : labels) k += l.text() + ",";
    return k + "|" + std::to_string(degree);
}

const ChiSolve& chi_solve(BasisCache& cache, const LabelSet& labels, int degree) {
    const std::string key = chi_key(&cache, labels, degree);
    {
        std::lock_guard<std::mutex> lock(g_chi_mutex);
        auto it = g_chi_cache.find(key);
        if (it != g_chi_cache.end()) return it->second;
    }
    const QuotientBasis& bb = cache.get(Space::B, labels, degree);
    const QuotientBasis& ab = cache.get(Space::Aup, labels, degree);
    if (bb.dim() != ab.dim())
        throw SolveFailure("PBW dimension mismatch at degree " + std::to_string(degree) + ": B " +
                           std::to_string(bb.dim()) + " vs Aup " + std::to_string(ab.dim()));
    const int n = bb.dim();
    DenseMatrix m(n, std::vector<Rat>(n, Rat(0)));
    for (int j = 0; j < n; ++j) {
        GradedSum one(Space::B, labels, degree);
        one.add_canonical(bb.basis_keys()[j], bb.basis()[j], Rat(1));
        std::vector<Rat> col = ab.reduce(chi(one));
        for (int i = 0; i < n; ++i) m[i][j] = col[i];
    }
    ChiSolve solve;
    if (!invert_matrix(m, &solve.inverse))
        throw SolveFailure("chi matrix singular at degree " + std::to_string(degree));
    std::lock_guard<std::mutex> lock(g_chi_mutex);
    return g_chi_cache.emplace(key, std::move(solve)).first->second;
}

}  // namespace

GradedSum sigma(const GradedSum& s, BasisCache& cache) {
    GradedSum out(Space::B, s.labels(), s.max_degree());
    for (const auto& [key, term] : s.terms()) {
        const std::string why = term.diagram.validate(Space::Aup, s.labels());
        if (!why.empty()) throw SpaceMismatch("sigma input: " + why);
    }
    for (int d = 0; d <= s.max_degree(); ++d) {
        GradedSum part = s.restrict_degree(d);
        if (part.is_zero()) continue;
        if (d == 0) {
            out.add_scaled(part, Rat(1));  // constants pass through
            continue;
        }
        const QuotientBasis& ab = cache.get(Space::Aup, s.labels(), d);
        std::vector<Rat> v = ab.reduce(part);
        const ChiSolve& solve = chi_solve(cache, s.labels(), d);
        const QuotientBasis& bb = cache.get(Space::B, s.labels(), d);
        for (int j = 0; j < bb.dim(); ++j) {
            Rat c(0);
            for (int i = 0; i < ab.dim(); ++i) c += solve.inverse[j][i] * v[i];
            if (c != 0) out.add_canonical(bb.basis_keys()[j], bb.basis()[j], c);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------

namespace {

void check_aup(const GradedSum& s) {
    if (s.space() != Space::Aup) throw SpaceMismatch("expected a pure tangle diagram sum");
}

}  // namespace

GradedSum stack_product(const GradedSum& a, const GradedSum& b) {
    check_aup(a);
    check_aup(b);
    if (a.labels() != b.labels()) throw SpaceMismatch("stacking over different label sets");
    GradedSum out(Space::Aup, a.labels(), std::min(a.max_degree(), b.max_degree()));
    for (const auto& [ka, ta] : a.terms()) {
        for (const auto& [kb, tb] : b.terms()) {
            const Diagram& da = ta.diagram;
            const Diagram& db = tb.diagram;
            if (da.degree() + db.degree() > out.max_degree()) continue;
            Diagram nd;
            nd.set_internal_count(da.internal_count() + db.internal_count());
            // merge lines: a's attachments first on every shared line
            std::map<Label, std::pair<int, int>> att;  // label -> (a count, b count)
            for (const auto& ln : da.lines()) att[ln.label].first = ln.attachments;
            for (const auto& ln : db.lines()) att[ln.label].second = ln.attachments;
            std::map<Label, int> line_idx;
            for (auto& [lab, counts] : att)
                line_idx[lab] = nd.add_line(lab, counts.first + counts.second);
            auto map_a = [&](int pt) {
                auto r = da.classify(pt);
                if (r.kind == Diagram::PortRef::Internal) return nd.port_internal(r.a, r.b);
                const Label lab = da.lines()[r.a].label;
                return nd.port_skel(line_idx[lab], r.b);
            };
            auto map_b = [&](int pt) {
                auto r = db.classify(pt);
                if (r.kind == Diagram::PortRef::Internal)
                    return nd.port_internal(da.internal_count() + r.a, r.b);
                const Label lab = db.lines()[r.a].label;
                return nd.port_skel(line_idx[lab], att[lab].first + r.b);
            };
            for (const auto& [pa, pb] : da.edges()) nd.add_edge(map_a(pa), map_a(pb));
            for (const auto& [pa, pb] : db.edges()) nd.add_edge(map_b(pa), map_b(pb));
            out.add(nd, ta.coeff * tb.coeff);
        }
    }
    return out;
}

GradedSum cable_delta(const GradedSum& s, const LabelSet& to) {
    check_aup(s);
    GradedSum out(Space::Aup, to, s.max_degree());
    const int n = static_cast<int>(to.size());
    for (const auto& [key, term] : s.terms()) {
        const Diagram& d = term.diagram;
        if (d.lines().size() > 1)
            throw SpaceMismatch("cable_delta expects a one-line skeleton");
        const int k = d.lines().empty() ? 0 : d.lines()[0].attachments;
        if (n == 0 && k > 0) continue;  // no lines to lift onto: 0^k terms
        std::vector<int> lift(k, 0);
        while (true) {
            Diagram nd;
            nd.set_internal_count(d.internal_count());
            std::vector<int> count(n, 0);
            for (int p = 0; p < k; ++p) count[lift[p]]++;
            std::vector<int> line_of(n, -1);
            for (int li = 0; li < n; ++li)
                if (count[li] > 0) line_of[li] = nd.add_line(to[li], count[li]);
            std::vector<int> pos_port(k);
            std::vector<int> next(n, 0);
            for (int p = 0; p < k; ++p) pos_port[p] = nd.port_skel(line_of[lift[p]], next[lift[p]]++);
            for (const auto& [pa, pb] : d.edges()) {
                auto mp = [&](int pt) {
                    auto r = d.classify(pt);
                    if (r.kind == Diagram::PortRef::Internal) return nd.port_internal(r.a, r.b);
                    return pos_port[r.b];
                };
                nd.add_edge(mp(pa), mp(pb));
            }
            out.add(nd, term.coeff);
            int i = k - 1;
            while (i >= 0 && lift[i] == n - 1) lift[i--] = 0;
            if (i < 0) break;
            lift[i]++;
        }
    }
    return out;
}

GradedSum skeleton_act(const std::vector<GradedSum>& factors, const GradedSum& target) {
    check_aup(target);
    const LabelSet& labels = target.labels();
    if (factors.size() != labels.size())
        throw SpaceMismatch("one factor per skeleton component required");
    GradedSum acc = target;
    for (size_t i = 0; i < factors.size(); ++i) {
        // embed the one-line factor onto line labels[i]
        GradedSum embedded(Space::Aup, labels, target.max_degree());
        for (const auto& [key, term] : factors[i].terms()) {
            const Diagram& d = term.diagram;
            if (d.lines().size() > 1)
                throw SpaceMismatch("skeleton_act factors live on one line");
            Diagram nd;
            nd.set_internal_count(d.internal_count());
            if (!d.lines().empty()) nd.add_line(labels[i], d.lines()[0].attachments);
            for (const auto& [pa, pb] : d.edges()) {
                auto mp = [&](int pt) {
                    auto r = d.classify(pt);
                    if (r.kind == Diagram::PortRef::Internal) return nd.port_internal(r.a, r.b);
                    return nd.port_skel(0, r.b);
                };
                nd.add_edge(mp(pa), mp(pb));
            }
            embedded.add(nd, term.coeff);
        }
        acc = stack_product(embedded, acc);
    }
    return acc;
}

GradedSum assemble_zcheck(const GradedSum& z, const GradedSum& nu) {
    check_aup(z);
    if (nu.constant_term() != 1) throw BadConstantTerm("nu must have constant term 1");
    GradedSum nu_cut = nu.truncated(z.max_degree());
    GradedSum delta_nu = cable_delta(nu_cut, z.labels());
    GradedSum core = stack_product(delta_nu, z);
    std::vector<GradedSum> factors(z.labels().size(), nu_cut);
    return skeleton_act(factors, core);
}

std::map<int, std::vector<Rat>> reduce_coordinates(const GradedSum& s, BasisCache& cache) {
    Space space = s.space() == Space::Bplus ? Space::B : s.space();
    for (const auto& [key, term] : s.terms()) {
        const std::string why = term.diagram.validate(space, s.labels());
        if (!why.empty()) throw SpaceMismatch("reduce: " + why);
    }
    std::map<int, std::vector<Rat>> out;
    for (int d = 0; d <= s.max_degree(); ++d)
        out[d] = cache.get(space, s.labels(), d).reduce(s);
    return out;
}

}  // namespace aarhus
