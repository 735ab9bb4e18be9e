#pragma once

#include <map>
#include <string>

#include "aarhus/canonical.hpp"
#include "aarhus/diagram.hpp"
#include "aarhus/rational.hpp"

namespace aarhus {

// A finite formal linear combination of canonical diagrams with exact
// rational coefficients, truncated at a working degree. All mutating entry
// points canonicalize; AS-zero diagrams are silently absorbed into 0 and
// terms above the truncation degree are dropped (that is what working in
// the degree-completed space means).
class GradedSum {
public:
    struct Term {
        Diagram diagram;
        Rat coeff;
    };

    GradedSum() = default;
    GradedSum(Space space, LabelSet labels, int max_degree)
        : space_(space), labels_(std::move(labels)), max_degree_(max_degree) {}

    static GradedSum unit(Space space, LabelSet labels, int max_degree);
    static GradedSum zero(Space space, LabelSet labels, int max_degree) {
        return GradedSum(space, std::move(labels), max_degree);
    }

    Space space() const { return space_; }
    const LabelSet& labels() const { return labels_; }
    int max_degree() const { return max_degree_; }

    bool is_zero() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<std::string, Term>& terms() const { return terms_; }

    // Adds c * d after canonicalization (sign folded into the coefficient).
    void add(const Diagram& d, const Rat& c);
    // Adds c * d where d is already canonical with key `key`.
    void add_canonical(const std::string& key, const Diagram& d, const Rat& c);
    void add_scaled(const GradedSum& other, const Rat& c);

    Rat coeff(const std::string& key) const;
    Rat constant_term() const;          // coefficient of the empty diagram
    GradedSum without_constant() const;
    GradedSum truncated(int new_max_degree) const;
    GradedSum restrict_degree(int degree) const;  // homogeneous part

    int min_term_degree() const;  // max_degree_+1 when zero

    GradedSum operator+(const GradedSum& o) const;
    GradedSum operator-(const GradedSum& o) const;
    GradedSum operator*(const Rat& c) const;

    bool operator==(const GradedSum& o) const;

private:
    void check_compatible(const GradedSum& o) const;

    Space space_ = Space::B;
    LabelSet labels_;
    int max_degree_ = 0;
    std::map<std::string, Term> terms_;
};

}  // namespace aarhus
