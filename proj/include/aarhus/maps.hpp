#pragma once

#include <vector>

#include "aarhus/gradedsum.hpp"
#include "aarhus/relations.hpp"

namespace aarhus {

// Formal sum of diagram pairs; codomain of the coproduct.
class TensorSum {
public:
    struct Term {
        Diagram left, right;
        Rat coeff;
    };

    void add(const Diagram& left, const Diagram& right, const Rat& c);
    const std::map<std::pair<std::string, std::string>, Term>& terms() const { return terms_; }
    bool operator==(const TensorSum& o) const;

private:
    std::map<std::pair<std::string, std::string>, Term> terms_;
};

// -- algebra structure (Aempty and B) ----------------------------------------

GradedSum du_product(const GradedSum& a, const GradedSum& b);
// exp w.r.t. disjoint union; input must have zero constant term.
GradedSum exp_union(const GradedSum& s);
// log w.r.t. disjoint union; input must have constant term 1.
GradedSum log_union(const GradedSum& u);
// Splits each diagram by subsets of its connected components.
TensorSum coproduct(const Diagram& d);
TensorSum coproduct(const GradedSum& s);
// Tensor-square of a sum, for grouplike checks.
TensorSum tensor_square(const GradedSum& s);

// Linear extension of a leg substitution x -> sum_y A[x][y] y. A is indexed
// by the positions of s.labels(); the result lives over the same labels.
GradedSum substitute_legs(const GradedSum& s, const DenseMatrix& a);

// -- PBW ---------------------------------------------------------------------

// Average of all ways of ordering the legs along the labeled lines.
GradedSum chi(const GradedSum& s);
// Inverse of chi, degree by degree through the quotient bases.
GradedSum sigma(const GradedSum& s, BasisCache& cache);

// -- skeleton operations ------------------------------------------------------

// Stacking product on Aup: per line, a's attachments come first.
GradedSum stack_product(const GradedSum& a, const GradedSum& b);
// Replaces the single line of s by |to| clones, summing over all lifts.
GradedSum cable_delta(const GradedSum& s, const LabelSet& to);
// Sticks factors[i] (each on a one-line skeleton) onto line i of the target.
GradedSum skeleton_act(const std::vector<GradedSum>& factors, const GradedSum& target);
// nu^(X) * Delta_X(nu) * Z with everything truncated at Z's degree cap.
GradedSum assemble_zcheck(const GradedSum& z, const GradedSum& nu);

// Coordinates of s per degree (0..max_degree) over the quotient bases.
std::map<int, std::vector<Rat>> reduce_coordinates(const GradedSum& s, BasisCache& cache);

}  // namespace aarhus
