#pragma once

#include <optional>
#include <vector>

#include "aarhus/gradedsum.hpp"
#include "aarhus/linalg.hpp"
#include "aarhus/maps.hpp"
#include "aarhus/relations.hpp"

namespace aarhus {

// Symmetric rational matrix indexed by component labels.
class LinkingMatrix {
public:
    LinkingMatrix() = default;
    LinkingMatrix(LabelSet labels, DenseMatrix entries);

    const LabelSet& labels() const { return labels_; }
    int size() const { return static_cast<int>(labels_.size()); }
    const DenseMatrix& entries() const { return entries_; }
    const Rat& at(int i, int j) const { return entries_[i][j]; }

    bool invertible() const;
    // Inverse covariance l^{xy}; SingularCovariance when not invertible.
    const DenseMatrix& inverse() const;

    std::pair<int, int> signature() const;  // (sigma_plus, sigma_minus)

    bool operator==(const LinkingMatrix& o) const {
        return labels_ == o.labels_ && entries_ == o.entries_;
    }

private:
    LabelSet labels_;
    DenseMatrix entries_;
    mutable std::optional<DenseMatrix> inverse_;
    mutable bool inverse_tried_ = false;
};

struct SignaturePair {
    int sigma_plus = 0;
    int sigma_minus = 0;
};

// Covariance plus a strut-free perturbation with constant term 1.
struct PerturbedGaussian {
    LinkingMatrix covariance;
    GradedSum perturbation;  // in B+(X)
};

// Reads the covariance off log(G) and verifies that what remains is a
// genuine B+ perturbation. The stored coefficient convention: the exponent
// (1/2) sum_{x,y} l_xy strut_xy over ordered pairs puts l_xy on strut_xy for
// x != y and l_xx/2 on strut_xx.
PerturbedGaussian split_gaussian(const GradedSum& g);

// Reassembles perturbation (union) exp((1/2) sum l_xy strut_xy).
GradedSum reassemble_gaussian(const PerturbedGaussian& pg);

// Sum over all ways of gluing the @x-marked legs of c1 to the x-marked legs
// of c2. Zero on leg-count mismatch; otherwise prod_x k_x! summands.
GradedSum glue_pairing(const GradedSum& c1, const GradedSum& c2);
// All raw gluings of one diagram pair, before any term combines; used by the
// counting law and the oracle comparisons.
std::vector<SignedCanonical> glue_pairing_expand(const Diagram& c1, const Diagram& c2);

// <exp(-1/2 sum l^{xy} strut_{@x@y}), perturbation>, truncated at N.
GradedSum integrate_fg(const PerturbedGaussian& pg, int N);

SignaturePair signature(const LinkingMatrix& l);

// Truncated geometric-series inverse of a constant-term-1 element.
GradedSum invert_unit(const GradedSum& s);

// aarhus0 = integrate_fg(split_gaussian(sigma(zcheck)))
GradedSum aarhus0(const GradedSum& zcheck, int N, BasisCache& cache);

// aarhus = A0(U+)^{-sigma+} A0(U-)^{-sigma-} A0(L)
GradedSum aarhus_integral(const GradedSum& zcheck, const GradedSum& uplus_value,
                          const GradedSum& uminus_value, int N, BasisCache& cache);

}  // namespace aarhus
