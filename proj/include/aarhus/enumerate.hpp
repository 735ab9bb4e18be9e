#pragma once

#include <vector>

#include "aarhus/canonical.hpp"
#include "aarhus/diagram.hpp"

namespace aarhus {

// Default enumeration caps; ~27 operations sit behind these. Raise with
// care: closed trivalent multigraph counts grow quickly with the degree.
struct EnumerationLimits {
    int aempty_cap = 6;
    int labeled_cap = 4;
};

// Connected multigraphs with t trivalent and u univalent vertices, one
// canonical representative per isomorphism class. Legs all carry the blank
// label (labelings are applied downstream). Loop-bearing classes included.
std::vector<Diagram> connected_unitrivalent_classes(int t, int u);

// Connected manifold diagram classes of the given degree (2*degree trivalent
// vertices). AS-zero classes excluded unless include_zero.
std::vector<SignedCanonical> connected_manifold_classes(int degree, bool include_zero = false);

// Connected uni-trivalent classes of the given degree over the label set,
// each component carrying at least one leg.
std::vector<SignedCanonical> connected_b_classes(int degree, const LabelSet& labels,
                                                 bool include_zero = false);

// Spanning sets: one canonical diagram per isomorphism class of the degree,
// disconnected diagrams included (multisets of connected classes).
std::vector<SignedCanonical> spanning_aempty(int degree, bool include_zero = false);
std::vector<SignedCanonical> spanning_b(int degree, const LabelSet& labels,
                                        bool include_zero = false);
// Pure tangle diagram classes: every connected component attached to the
// skeleton; enumerated by ordering the legs of B-spanning diagrams along
// the lines.
std::vector<SignedCanonical> spanning_aup(int degree, const LabelSet& labels,
                                          bool include_zero = false);

// The [OP] enumerate_diagrams surface: dispatches on the space.
std::vector<SignedCanonical> enumerate_diagrams(Space space, int degree, const LabelSet& labels,
                                                const EnumerationLimits& limits = {},
                                                bool include_zero = false);

}  // namespace aarhus
