#include "aarhus/gradedsum.hpp"

#include "aarhus/errors.hpp"

namespace aarhus {

GradedSum GradedSum::unit(Space space, LabelSet labels, int max_degree) {
    GradedSum s(space, std::move(labels), max_degree);
    s.add_canonical(diagram_key(empty_diagram()), empty_diagram(), Rat(1));
    return s;
}

void GradedSum::add(const Diagram& d, const Rat& c) {
    if (c == 0) return;
    if (d.degree() > max_degree_) return;
    SignedCanonical sc = canonical_form(d);
    if (sc.sign == 0) return;
    add_canonical(sc.key, sc.diagram, c * sc.sign);
}

void GradedSum::add_canonical(const std::string& key, const Diagram& d, const Rat& c) {
    if (c == 0) return;
    if (d.degree() > max_degree_) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
        terms_.emplace(key, Term{d, c});
        return;
    }
    it->second.coeff += c;
    if (it->second.coeff == 0) terms_.erase(it);
}

void GradedSum::add_scaled(const GradedSum& other, const Rat& c) {
    check_compatible(other);
    for (const auto& [key, term] : other.terms_)
        add_canonical(key, term.diagram, term.coeff * c);
}

Rat GradedSum::coeff(const std::string& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? Rat(0) : it->second.coeff;
}

Rat GradedSum::constant_term() const { return coeff(diagram_key(empty_diagram())); }

GradedSum GradedSum::without_constant() const {
    GradedSum out = *this;
    out.terms_.erase(diagram_key(empty_diagram()));
    return out;
}

GradedSum GradedSum::truncated(int new_max_degree) const {
    GradedSum out(space_, labels_, new_max_degree);
    for (const auto& [key, term] : terms_)
        out.add_canonical(key, term.diagram, term.coeff);
    return out;
}

GradedSum GradedSum::restrict_degree(int degree) const {
    GradedSum out(space_, labels_, max_degree_);
    for (const auto& [key, term] : terms_)
        if (term.diagram.degree() == degree) out.add_canonical(key, term.diagram, term.coeff);
    return out;
}

int GradedSum::min_term_degree() const {
    int best = max_degree_ + 1;
    for (const auto& [key, term] : terms_) best = std::min(best, term.diagram.degree());
    return best;
}

GradedSum GradedSum::operator+(const GradedSum& o) const {
    GradedSum out = *this;
    out.add_scaled(o, Rat(1));
    return out;
}

GradedSum GradedSum::operator-(const GradedSum& o) const {
    GradedSum out = *this;
    out.add_scaled(o, Rat(-1));
    return out;
}

GradedSum GradedSum::operator*(const Rat& c) const {
    GradedSum out(space_, labels_, max_degree_);
    if (c == 0) return out;
    for (const auto& [key, term] : terms_)
        out.add_canonical(key, term.diagram, term.coeff * c);
    return out;
}

bool GradedSum::operator==(const GradedSum& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt)
        if (it->first != jt->first || it->second.coeff != jt->second.coeff) return false;
    return true;
}

void GradedSum::check_compatible(const GradedSum& o) const {
    if (space_ != o.space_ || labels_ != o.labels_)
        throw SpaceMismatch("graded sums live in different spaces");
}

}  // namespace aarhus
