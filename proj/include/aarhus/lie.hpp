#pragma once

#include <map>
#include <string>
#include <vector>

#include "aarhus/gaussian.hpp"
#include "aarhus/gradedsum.hpp"
#include "aarhus/linalg.hpp"
#include "aarhus/rational.hpp"

namespace aarhus {

// Metrized Lie algebra data: vertices contract against the structure tensor
// f_abc (all indices lowered), edges against the inverse metric g^{ab}.
class LieData {
public:
    LieData() = default;
    LieData(int dim, DenseMatrix metric, std::map<std::array<int, 3>, Rat> f_entries);

    int dim() const { return dim_; }
    const DenseMatrix& metric() const { return metric_; }
    const DenseMatrix& metric_inv() const { return metric_inv_; }
    const Rat& f(int a, int b, int c) const { return f_[(a * dim_ + b) * dim_ + c]; }
    // nonzero entries, for sparse contraction
    const std::vector<std::pair<std::array<int, 3>, Rat>>& f_nonzero() const { return f_nz_; }

    // Throws BadLieData unless the metric is symmetric invertible, f is
    // totally antisymmetric and the Jacobi identity holds.
    void validate() const;

    static LieData so3();  // f = epsilon, metric = identity
    static LieData sl2();  // trace form basis: metric diag(2,2,-2), f_123 = -4

private:
    int dim_ = 0;
    DenseMatrix metric_, metric_inv_;
    std::vector<Rat> f_;
    std::vector<std::pair<std::array<int, 3>, Rat>> f_nz_;
};

// Monomial in the variables {x_a : x in X, a = 1..dim}; pairs are
// (label index, algebra index), kept sorted.
using Monomial = std::vector<std::pair<int, int>>;
using Poly = std::map<Monomial, Rat>;

// Element of S(g)^{tensor X} graded by the internal-vertex count of the
// diagrams it came from (the grading that drives the pairing truncation).
class PolyTensor {
public:
    PolyTensor() = default;
    explicit PolyTensor(LabelSet labels) : labels_(std::move(labels)) {}

    const LabelSet& labels() const { return labels_; }
    const std::map<int, Poly>& by_weight() const { return by_weight_; }
    void add(int weight, const Monomial& m, const Rat& c);
    Poly flatten() const;
    bool operator==(const PolyTensor& o) const {
        return labels_ == o.labels_ && by_weight_ == o.by_weight_;
    }

private:
    LabelSet labels_;
    std::map<int, Poly> by_weight_;
};

// Closed evaluation: one f per vertex in its cyclic order, one g^{ab} per
// edge; multiplicative over disjoint union, linear over sums.
Rat tg_closed(const LieData& g, const GradedSum& s);
Rat tg_closed_diagram(const LieData& g, const Diagram& d);

// Open evaluation: legs become variables, a k-leg diagram contributes a
// degree-k monomial of weight = its internal vertex count.
PolyTensor tg_open(const LieData& g, const GradedSum& s);

// Formal Wick pairing of an (already exponentiated) perturbation image
// against exp(-Q^{-1}/2), Q = L (x) metric: each complete contraction pairs
// (x_a, y_b) with -l^{xy} g_{ab}. Truncated at diagram degree N, i.e. at
// monomial weight 2N.
Rat wick_pair(const PolyTensor& p, const LinkingMatrix& l, const LieData& g, int N);

// Truncated power series in hbar.
struct HbarSeries {
    std::map<int, Rat> coeffs;  // power -> coefficient, zeros omitted
    int max_degree = 0;
    bool operator==(const HbarSeries&) const = default;
};

// Degree grading: the part of s sitting at each power of hbar.
std::map<int, GradedSum> hbar_grade(const GradedSum& s);

// T_g after the hbar grading, coefficientwise.
HbarSeries rozansky_series(const LieData& g, const GradedSum& aarhus_value);

std::string poly_str(const Poly& p, const LabelSet& labels);

}  // namespace aarhus
