#include "aarhus/label.hpp"

#include <algorithm>

namespace aarhus {

LabelSet make_label_set(std::vector<std::string> names) {
    LabelSet out;
    out.reserve(names.size());
    for (auto& n : names) out.push_back(Label::parse(n));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

LabelSet duals_of(const LabelSet& labels) {
    LabelSet out;
    out.reserve(labels.size());
    for (const auto& l : labels) out.push_back(l.to_dual());
    std::sort(out.begin(), out.end());
    return out;
}

bool contains_label(const LabelSet& labels, const Label& l) {
    return std::binary_search(labels.begin(), labels.end(), l);
}

int label_index(const LabelSet& labels, const Label& l) {
    auto it = std::lower_bound(labels.begin(), labels.end(), l);
    if (it == labels.end() || *it != l) return -1;
    return static_cast<int>(it - labels.begin());
}

}  // namespace aarhus
