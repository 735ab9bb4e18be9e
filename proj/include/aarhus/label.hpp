#pragma once

#include <compare>
#include <string>
#include <vector>

namespace aarhus {

// Component labels x and their formal duals @x. Duals only show up in the
// gluing pairing, where the @x-marked legs of one diagram are matched with
// the x-marked legs of another.
struct Label {
    std::string name;
    bool dual = false;

    auto operator<=>(const Label&) const = default;

    std::string text() const { return dual ? "@" + name : name; }

    static Label parse(const std::string& tok) {
        if (!tok.empty() && tok[0] == '@') return Label{tok.substr(1), true};
        return Label{tok, false};
    }

    Label to_dual() const { return Label{name, true}; }
    Label to_plain() const { return Label{name, false}; }
};

// Always kept sorted and duplicate-free.
using LabelSet = std::vector<Label>;

LabelSet make_label_set(std::vector<std::string> names);
LabelSet duals_of(const LabelSet& labels);
bool contains_label(const LabelSet& labels, const Label& l);
int label_index(const LabelSet& labels, const Label& l);  // -1 if absent

}  // namespace aarhus
