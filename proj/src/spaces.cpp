#include "procmat/spaces.hpp"

namespace procmat {

std::string to_string(const SpaceLabel& label) {
    std::string s = label.party;
    switch (label.port) {
        case Port::Input: s += "_I"; break;
        case Port::Output: s += "_O"; break;
        case Port::None: break;
    }
    return s + "[" + std::to_string(label.dimension) + "]";
}

Index total_dimension(const Layout& layout) {
    Index n = 1;
    for (const SpaceLabel& l : layout) {
        if (l.dimension < 1)
            throw layout_error("space " + to_string(l) + " has dimension < 1");
        n *= l.dimension;
        if (n > kMaxTotalDimension)
            throw layout_error("total dimension exceeds cap of " +
                               std::to_string(kMaxTotalDimension));
    }
    return n;
}

int find_site(const Layout& layout, const SpaceLabel& label) {
    for (std::size_t k = 0; k < layout.size(); ++k)
        if (layout[k].same_site(label)) return static_cast<int>(k);
    return -1;
}

void check_distinct_sites(const Layout& layout) {
    for (std::size_t i = 0; i < layout.size(); ++i)
        for (std::size_t j = i + 1; j < layout.size(); ++j)
            if (layout[i].same_site(layout[j]))
                throw layout_error("duplicate space label " +
                                   to_string(layout[i]));
}

bool is_permutation_of(const Layout& a, const Layout& b) {
    if (a.size() != b.size()) return false;
    std::vector<bool> used(b.size(), false);
    for (const SpaceLabel& l : a) {
        bool found = false;
        for (std::size_t k = 0; k < b.size(); ++k) {
            if (!used[k] && b[k] == l) {
                used[k] = true;
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

std::string to_string(const Layout& layout) {
    std::string s = "[";
    for (std::size_t k = 0; k < layout.size(); ++k) {
        if (k > 0) s += ", ";
        s += to_string(layout[k]);
    }
    return s + "]";
}

} // namespace procmat
