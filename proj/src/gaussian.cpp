#include "aarhus/gaussian.hpp"

#include <algorithm>
#include <functional>

#include "aarhus/errors.hpp"

namespace aarhus {

LinkingMatrix::LinkingMatrix(LabelSet labels, DenseMatrix entries)
    : labels_(std::move(labels)), entries_(std::move(entries)) {
    const int n = static_cast<int>(labels_.size());
    if (static_cast<int>(entries_.size()) != n)
        throw KernelError("linking matrix size does not match labels");
    for (const auto& row : entries_)
        if (static_cast<int>(row.size()) != n) throw KernelError("linking matrix not square");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (entries_[i][j] != entries_[j][i]) throw KernelError("linking matrix not symmetric");
}

bool LinkingMatrix::invertible() const {
    if (!inverse_tried_) {
        DenseMatrix inv;
        if (invert_matrix(entries_, &inv)) inverse_ = std::move(inv);
        inverse_tried_ = true;
    }
    return inverse_.has_value();
}

const DenseMatrix& LinkingMatrix::inverse() const {
    if (!invertible()) throw SingularCovariance("linking matrix is singular");
    return *inverse_;
}

std::pair<int, int> LinkingMatrix::signature() const { return signature_of(entries_); }

SignaturePair signature(const LinkingMatrix& l) {
    auto [p, m] = l.signature();
    return SignaturePair{p, m};
}

// ---------------------------------------------------------------------------

PerturbedGaussian split_gaussian(const GradedSum& g) {
    if (g.constant_term() != 1) throw BadConstantTerm("Gaussian must have constant term 1");
    const LabelSet& labels = g.labels();
    const int n = static_cast<int>(labels.size());

    GradedSum lg = log_union(g);
    DenseMatrix cov(n, std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = i; j < n; ++j) {
            SignedCanonical sc = canonical_form(strut(labels[i], labels[j]));
            Rat c = lg.coeff(sc.key) * sc.sign;
            if (i == j) c *= 2;
            cov[i][j] = c;
            cov[j][i] = c;
        }
    }
    LinkingMatrix l(labels, cov);
    if (!l.invertible()) throw SingularCovariance("covariance of the Gaussian part is singular");

    // strip the Gaussian factor
    GradedSum strut_part(g.space(), labels, g.max_degree());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rat c = i == j ? cov[i][i] / 2 : cov[i][j];
            if (c != 0) strut_part.add(strut(labels[i], labels[j]), -c);
        }
    GradedSum pert = du_product(g, exp_union(strut_part));

    for (const auto& [key, term] : pert.terms()) {
        const std::string why = term.diagram.validate(Space::Bplus, labels);
        if (!why.empty())
            throw NotGaussianForm("perturbation is not in B+: " + why);
    }
    if (pert.constant_term() != 1) throw NotGaussianForm("perturbation lost its unit");
    GradedSum pert_tagged(Space::Bplus, labels, pert.max_degree());
    for (const auto& [key, term] : pert.terms())
        pert_tagged.add_canonical(key, term.diagram, term.coeff);
    return PerturbedGaussian{std::move(l), std::move(pert_tagged)};
}

GradedSum reassemble_gaussian(const PerturbedGaussian& pg) {
    const LabelSet& labels = pg.covariance.labels();
    const int n = pg.covariance.size();
    GradedSum strut_part(Space::B, labels, pg.perturbation.max_degree());
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            Rat c = i == j ? pg.covariance.at(i, i) / 2 : pg.covariance.at(i, j);
            if (c != 0) strut_part.add(strut(labels[i], labels[j]), c);
        }
    GradedSum pert_b(Space::B, labels, pg.perturbation.max_degree());
    for (const auto& [key, term] : pg.perturbation.terms())
        pert_b.add_canonical(key, term.diagram, term.coeff);
    return du_product(pert_b, exp_union(strut_part));
}

// ---------------------------------------------------------------------------

namespace {

// Walk the matched leg-pairs to resolve each chain of strut hops into a
// final edge between surviving ports.
Diagram glue_one(const Diagram& d1, const Diagram& d2, const std::vector<int>& match_1to2,
                 const std::vector<int>& match_2to1) {
    const int t1 = d1.internal_count();
    const int t2 = d2.internal_count();
    Diagram out;
    out.set_internal_count(t1 + t2);

    auto p1 = d1.partner_map();
    auto p2 = d2.partner_map();

    // survivors: internal ports of both diagrams
    auto out_port = [&](int side, int pt) {
        const Diagram& d = side == 0 ? d1 : d2;
        auto r = d.classify(pt);
        return out.port_internal(r.a + (side == 0 ? 0 : t1), r.b);
    };

    std::vector<std::vector<bool>> seen(2);
    seen[0].assign(d1.total_ports(), false);
    seen[1].assign(d2.total_ports(), false);

    auto is_leg = [&](int side, int pt) {
        const Diagram& d = side == 0 ? d1 : d2;
        return d.classify(pt).kind == Diagram::PortRef::Leg;
    };
    auto leg_id = [&](int side, int pt) {
        const Diagram& d = side == 0 ? d1 : d2;
        return d.classify(pt).a;
    };

    for (int side = 0; side < 2; ++side) {
        const Diagram& d = side == 0 ? d1 : d2;
        for (int pt = 0; pt < d.total_ports(); ++pt) {
            if (seen[side][pt] || is_leg(side, pt)) continue;
            seen[side][pt] = true;
            // follow: partner; while partner is a glued leg, hop across
            int cs = side, cp = (cs == 0 ? p1 : p2)[pt];
            while (true) {
                seen[cs][cp] = true;
                if (!is_leg(cs, cp)) break;
                const int lid = leg_id(cs, cp);
                const int other = cs == 0 ? match_1to2[lid] : match_2to1[lid];
                const int os = 1 - cs;
                const Diagram& od = os == 0 ? d1 : d2;
                const int opt = od.port_leg(other);
                seen[os][opt] = true;
                cs = os;
                cp = (cs == 0 ? p1 : p2)[opt];
            }
            if (cs == side && cp == pt) throw KernelError("closed strut loop in gluing");
            out.add_edge(out_port(side, pt), out_port(cs, cp));
        }
    }
    // a vertex-free cycle of struts would evade the walk entirely; the B+
    // requirement on c2 rules it out, asserted here
    for (int side = 0; side < 2; ++side)
        for (bool v : seen[side])
            if (!v) throw KernelError("vertex-free closed loop in gluing");
    return out;
}

}  // namespace

std::vector<SignedCanonical> glue_pairing_expand(const Diagram& c1, const Diagram& c2) {
    // group legs by label name (c1 duals against c2 plain labels)
    std::map<std::string, std::vector<int>> legs1, legs2;
    for (int j = 0; j < c1.leg_count(); ++j) {
        if (!c1.legs()[j].dual) throw SpaceMismatch("left gluing factor must carry dual labels");
        legs1[c1.legs()[j].name].push_back(j);
    }
    for (int j = 0; j < c2.leg_count(); ++j) {
        if (c2.legs()[j].dual) throw SpaceMismatch("right gluing factor must carry plain labels");
        legs2[c2.legs()[j].name].push_back(j);
    }
    if (legs1.size() != legs2.size()) return {};
    for (const auto& [name, v] : legs1) {
        auto it = legs2.find(name);
        if (it == legs2.end() || it->second.size() != v.size()) return {};
    }

    std::vector<SignedCanonical> out;
    std::vector<std::string> names;
    for (const auto& [name, v] : legs1) names.push_back(name);
    std::vector<std::vector<int>> perms(names.size());
    for (size_t i = 0; i < names.size(); ++i) {
        perms[i].resize(legs1[names[i]].size());
        std::iota(perms[i].begin(), perms[i].end(), 0);
    }
    std::function<void(size_t)> rec = [&](size_t idx) {
        if (idx == names.size()) {
            std::vector<int> m12(c1.leg_count(), -1), m21(c2.leg_count(), -1);
            for (size_t i = 0; i < names.size(); ++i) {
                const auto& a = legs1[names[i]];
                const auto& b = legs2[names[i]];
                for (size_t k = 0; k < a.size(); ++k) {
                    m12[a[k]] = b[perms[i][k]];
                    m21[b[perms[i][k]]] = a[k];
                }
            }
            out.push_back(canonical_form(glue_one(c1, c2, m12, m21)));
            return;
        }
        std::sort(perms[idx].begin(), perms[idx].end());
        do {
            rec(idx + 1);
        } while (std::next_permutation(perms[idx].begin(), perms[idx].end()));
    };
    rec(0);
    return out;
}

GradedSum glue_pairing(const GradedSum& c1, const GradedSum& c2) {
    for (const auto& [key, term] : c2.terms()) {
        const std::string why = term.diagram.validate(Space::Bplus, c2.labels());
        if (!why.empty()) throw SpaceMismatch("glue_pairing right factor: " + why);
    }
    const int n = std::min(c1.max_degree(), c2.max_degree());
    GradedSum out(Space::Aempty, {}, n);
    for (const auto& [k1, t1] : c1.terms()) {
        for (const auto& [k2, t2] : c2.terms()) {
            for (const auto& glued : glue_pairing_expand(t1.diagram, t2.diagram)) {
                if (glued.sign == 0) continue;
                out.add_canonical(glued.key, glued.diagram, t1.coeff * t2.coeff * glued.sign);
            }
        }
    }
    return out;
}

GradedSum integrate_fg(const PerturbedGaussian& pg, int N) {
    const LabelSet& labels = pg.covariance.labels();
    const DenseMatrix& linv = pg.covariance.inverse();  // SingularCovariance when degenerate
    const LabelSet duals = duals_of(labels);
    const int n = pg.covariance.size();

    // Highest strut count that can match a perturbation term's legs.
    int max_struts = 0;
    for (const auto& [key, term] : pg.perturbation.terms())
        max_struts = std::max(max_struts, term.diagram.leg_count() / 2);

    GradedSum exponent(Space::B, duals, max_struts);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            // ordered-pair sum with the 1/2 out front
            Rat c = i == j ? -linv[i][i] / 2 : -linv[i][j];
            if (c != 0) exponent.add(strut(duals[i], duals[j]), c);
        }
    GradedSum dual_exp = exp_union(exponent);

    GradedSum pert(pg.perturbation.space(), labels, pg.perturbation.max_degree());
    for (const auto& [key, term] : pg.perturbation.terms())
        pert.add_canonical(key, term.diagram, term.coeff);

    return glue_pairing(dual_exp, pert).truncated(N);
}

GradedSum invert_unit(const GradedSum& s) {
    if (s.constant_term() == 0)
        throw NonInvertibleUnit("cannot invert: constant term is 0");
    const Rat c0 = s.constant_term();
    // s = c0 (1 + eps) => s^-1 = c0^-1 sum (-eps)^k
    GradedSum eps = (s * (Rat(1) / c0)).without_constant();
    GradedSum acc = GradedSum::unit(s.space(), s.labels(), s.max_degree());
    GradedSum power = acc;
    for (int k = 1; k <= s.max_degree(); ++k) {
        power = du_product(power, eps) * Rat(-1);
        if (power.is_zero()) break;
        acc.add_scaled(power, Rat(1));
    }
    return acc * (Rat(1) / c0);
}

GradedSum aarhus0(const GradedSum& zcheck, int N, BasisCache& cache) {
    GradedSum b = sigma(zcheck, cache);
    PerturbedGaussian pg = split_gaussian(b);
    return integrate_fg(pg, N);
}

GradedSum aarhus_integral(const GradedSum& zcheck, const GradedSum& uplus_value,
                          const GradedSum& uminus_value, int N, BasisCache& cache) {
    if (uplus_value.constant_term() == 0 || uminus_value.constant_term() == 0)
        throw NonInvertibleUnit("U+/U- values must have nonzero constant term");
    GradedSum b = sigma(zcheck, cache);
    PerturbedGaussian pg = split_gaussian(b);
    auto [sp, sm] = pg.covariance.signature();
    GradedSum result = integrate_fg(pg, N);
    GradedSum up_inv = invert_unit(uplus_value.truncated(N));
    GradedSum um_inv = invert_unit(uminus_value.truncated(N));
    for (int k = 0; k < sp; ++k) result = du_product(result, up_inv);
    for (int k = 0; k < sm; ++k) result = du_product(result, um_inv);
    return result;
}

}  // namespace aarhus
