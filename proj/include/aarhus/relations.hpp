#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "aarhus/enumerate.hpp"
#include "aarhus/gradedsum.hpp"
#include "aarhus/linalg.hpp"

namespace aarhus {

// -- relator generation ------------------------------------------------------
//
// AS is imposed structurally by signed canonicalization, so only IHX and STU
// generate matrix rows.
//
// IHX rows come in Jacobi-aligned triples: for an internal edge m joining u
// (remaining half-edges a,b; cyclic order (a,b,m)) and v (half-edges c,d;
// cyclic order (m,c,d)), the three configurations
//     cfg1: u=(a,b,m) v=(m,c,d)
//     cfg2: u=(b,c,m) v=(m,a,d)
//     cfg3: u=(c,a,m) v=(m,b,d)
// satisfy cfg1 + cfg2 + cfg3 = 0. This matches the Jacobi identity term for
// term, so Lie-algebra weight systems kill every row identically.
//
// STU rows: for adjacent attachments p,p+1 on a line with partners alpha,
// beta, the relator is T - U - S with U the swap and S the contraction onto
// a new vertex with cyclic order (line-edge, alpha, beta).

std::vector<GradedSum> ihx_relators(const Diagram& d, Space space, const LabelSet& labels,
                                    int max_degree);
std::vector<GradedSum> stu_relators(const Diagram& d, const LabelSet& labels, int max_degree);
// One relator per (internal vertex): flip one cyclic order, add. Identically
// zero under signed canonicalization; kept for the verification suites.
std::vector<GradedSum> as_relators(const Diagram& d, Space space, const LabelSet& labels,
                                   int max_degree);

// -- relation matrix over a spanning set -------------------------------------

struct RelationMatrix {
    std::vector<SignedCanonical> spanning;  // sorted by canonical key
    std::map<std::string, int> col_of;
    std::vector<SparseRow> rows;
};

RelationMatrix relation_matrix(Space space, int degree, const LabelSet& labels,
                               const EnumerationLimits& limits = {});

// -- quotient bases -----------------------------------------------------------

// Spanning set + RREF of the relator rows, with coordinates of every
// spanning class over the surviving basis (lexicographically least keys
// become pivots and get eliminated).
struct EliminationTable {
    std::vector<SignedCanonical> spanning;
    std::map<std::string, int> col_of;
    std::vector<int> basis_cols;
    std::vector<Diagram> basis;
    std::vector<std::string> basis_keys;
    std::vector<std::map<int, Rat>> coords;  // per spanning column, over basis positions

    int dim() const { return static_cast<int>(basis.size()); }
    const std::map<int, Rat>& coords_of_key(const std::string& key) const;
};

EliminationTable build_elimination(std::vector<SignedCanonical> spanning,
                                   const std::vector<GradedSum>& relators);

class BasisCache;

// Normal forms for one (space, labels, degree). For the polynomial algebras
// (Aempty, B) the table factors through connected classes; for Aup it is a
// direct STU elimination.
class QuotientBasis {
public:
    Space space() const { return space_; }
    int degree() const { return degree_; }
    const LabelSet& labels() const { return labels_; }

    int dim() const { return static_cast<int>(basis_.size()); }
    const std::vector<Diagram>& basis() const { return basis_; }
    const std::vector<std::string>& basis_keys() const { return basis_keys_; }

    // Coordinates of one canonical diagram of this degree.
    std::map<int, Rat> reduce_diagram(const Diagram& canonical_diagram) const;
    // Dense coordinates of the degree-homogeneous part of s.
    std::vector<Rat> reduce(const GradedSum& s) const;

private:
    friend class BasisCache;
    Space space_ = Space::Aempty;
    LabelSet labels_;
    int degree_ = 0;
    std::vector<Diagram> basis_;
    std::vector<std::string> basis_keys_;
    std::map<std::string, int> monomial_index_;          // key -> basis position
    const EliminationTable* direct_ = nullptr;           // Aup
    BasisCache* cache_ = nullptr;                        // Aempty/B expansion
};

// Keyed store of connected tables and per-degree quotient bases. Concurrent
// reads of completed entries are safe; construction of a missing entry is
// serialized per cache.
class BasisCache {
public:
    explicit BasisCache(EnumerationLimits limits = {}, std::string cache_dir = "");

    const EnumerationLimits& limits() const { return limits_; }

    const QuotientBasis& get(Space space, const LabelSet& labels, int degree);
    // Connected-class table for Aempty or B.
    const EliminationTable& connected_table(Space space, const LabelSet& labels, int degree);

    int dimension(Space space, const LabelSet& labels, int degree);
    int primitive_dimension(int degree);  // Aempty connected quotient

private:
    friend class QuotientBasis;
    const EliminationTable& connected_table_locked(Space space, const LabelSet& labels,
                                                   int degree);

    EnumerationLimits limits_;
    std::string cache_dir_;
    mutable std::recursive_mutex mutex_;
    std::map<std::string, std::unique_ptr<EliminationTable>> tables_;
    std::map<std::string, std::unique_ptr<QuotientBasis>> bases_;
};

}  // namespace aarhus
