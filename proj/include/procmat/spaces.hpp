#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "procmat/errors.hpp"

namespace procmat {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Default tolerances: double precision at total dimension <= 4096 keeps
// roundoff orders of magnitude below these.
inline constexpr double kHermitianTol = 1e-9;
inline constexpr double kPsdTol = 1e-9;
inline constexpr double kValidationTol = 1e-9;

// Hard cap on the total dimension of any labeled operator.
inline constexpr Index kMaxTotalDimension = 4096;

// ---------------------------- space labels ----------------------------------

// A party owns up to two Hilbert spaces: the input space (system before the
// operation) and the output space (system after). Plain spatial subsystems
// carry no port.
enum class Port { Input, Output, None };

struct SpaceLabel {
    std::string party;
    Port port = Port::None;
    Index dimension = 2;

    bool operator==(const SpaceLabel& o) const {
        return party == o.party && port == o.port && dimension == o.dimension;
    }
    bool operator!=(const SpaceLabel& o) const { return !(*this == o); }

    // Two labels address the same site if party and port agree.
    bool same_site(const SpaceLabel& o) const {
        return party == o.party && port == o.port;
    }
};

inline SpaceLabel input_space(std::string party, Index d = 2) {
    return SpaceLabel{std::move(party), Port::Input, d};
}
inline SpaceLabel output_space(std::string party, Index d = 2) {
    return SpaceLabel{std::move(party), Port::Output, d};
}
inline SpaceLabel plain_space(std::string party, Index d = 2) {
    return SpaceLabel{std::move(party), Port::None, d};
}

std::string to_string(const SpaceLabel& label);

// ------------------------------ layouts -------------------------------------

using Layout = std::vector<SpaceLabel>;

// Product of all dimensions; throws layout_error on a non-positive dimension
// or when the product exceeds kMaxTotalDimension.
Index total_dimension(const Layout& layout);

// Index of the label addressing the same site, or -1.
int find_site(const Layout& layout, const SpaceLabel& label);

// Throws layout_error if two labels in `layout` address the same site.
void check_distinct_sites(const Layout& layout);

bool is_permutation_of(const Layout& a, const Layout& b);

std::string to_string(const Layout& layout);

} // namespace procmat
