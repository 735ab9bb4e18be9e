#pragma once

#include <string>

#include "aarhus/diagram.hpp"

namespace aarhus {

// Canonical representative of a diagram's isomorphism class, with the
// antisymmetry sign of the relabeling. sign == 0 iff the diagram admits an
// automorphism that reverses the product of vertex orientations; such
// diagrams vanish modulo AS.
struct SignedCanonical {
    Diagram diagram;
    int sign = 1;        // +1, -1 or 0
    std::string key;     // diagram_key(diagram)
};

// Isomorphisms may permute internal vertices and same-labeled legs and may
// rotate/flip vertex orientations (flips cost a sign). Skeleton attachment
// points are fixed. Canonicalization is componentwise on skeleton-free
// diagrams, so disjoint unions stay cheap.
SignedCanonical canonical_form(const Diagram& d);

// Concatenates skeleton-free diagrams as disjoint components, in the order
// given, without canonicalizing. Reordering identical parts never costs an
// AS sign, so concatenation of canonical parts sorted by key is canonical.
Diagram concat_components(const std::vector<const Diagram*>& parts);

// Splits a skeleton-free diagram into its connected components (internal
// vertex order preserved within each part).
std::vector<Diagram> split_components(const Diagram& d);

}  // namespace aarhus
