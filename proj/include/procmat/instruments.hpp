#pragma once

#include <optional>
#include <string>
#include <vector>

#include "procmat/operator.hpp"

// Instruments, POVMs, and CP maps in Choi representation.
//
// Choi convention for a map from A_I to A_O:
//
//   M = sum_{jl} |j><l|_{A_I} (x) [map(|l><j|)]^T_{A_O}
//
// with the transpose in the computational basis. Complete positivity of the
// map is positive semi-definiteness of M. Trivial (one-dimensional) input or
// output spaces drop out of the layout: a preparation of state s with
// probability p has Choi p * s^T, a final POVM element enters untransposed.

namespace procmat {

// ------------------------------- CP maps ------------------------------------

struct CPMap {
    Operator choi;
    std::optional<SpaceLabel> input_label;   // nullopt: trivial input
    std::optional<SpaceLabel> output_label;  // nullopt: trivial output

    Index input_dim() const { return input_label ? input_label->dimension : 1; }
    Index output_dim() const {
        return output_label ? output_label->dimension : 1;
    }
};

// Throws layout_error unless choi's layout is exactly [input, output] with
// the trivial sides omitted.
void check_cpmap_layout(const CPMap& map);

// Reconstruct the action on a density matrix: rho -> [tr_in((rho (x) 1) M)]^T.
Matrix apply_cpmap(const CPMap& map, const Matrix& rho);

CPMap choi_from_kraus(const std::vector<Matrix>& kraus, const SpaceLabel& in,
                      const SpaceLabel& out);

bool is_trace_preserving(const CPMap& map, double tol = kValidationTol);

// ----------------------------- instruments -----------------------------------

// Outcome-indexed CP maps over one party's spaces. Valid when every branch
// is PSD and the branch sum is trace preserving.
struct Instrument {
    std::string setting_name;
    std::vector<CPMap> branches;
    std::vector<double> outcome_values;  // +1/-1 for two-outcome instruments

    Index n_outcomes() const { return static_cast<Index>(branches.size()); }
};

bool is_valid_instrument(const Instrument& instr, double tol = kValidationTol,
                         std::string* why = nullptr);

// No-bias condition in Choi form:
//   tr_in sum_a M_a == (d_in/d_out) * identity on the output space.
// Free operations satisfy it; a deterministic preparation of a pure state
// does not.
bool is_unbiased(const Instrument& instr, double tol = kValidationTol);

// -------------------------------- POVMs -------------------------------------

struct POVM {
    std::vector<Operator> elements;  // share one layout
    std::vector<double> outcome_values;
};

bool is_valid_povm(const POVM& povm, double tol = kValidationTol,
                   std::string* why = nullptr);

// Spatial measurement -> temporal instrument, M_a = E_a / d_out, splitting
// the POVM space as d_in * d_out. Throws layout_error when the dimension
// does not factor. d_out == total dimension yields a preparation
// instrument, d_out == 1 a final measurement.
Instrument povm_to_instrument(const POVM& povm, Index d_out);

// --------------------------- projective settings ----------------------------

struct BlochSetting {
    enum class Plane { XY, Full };
    Plane plane = Plane::XY;
    double phi = 0.0;
    double theta = 0.0;  // used only for Plane::Full

    double polar() const;  // pi/2 in the XY plane, else theta
};

// Lueders instrument for +/-1-outcome projective qubit measurement:
// branch a maps rho -> P_a rho P_a.
Instrument projective_instrument(const BlochSetting& s, const SpaceLabel& in,
                                 const SpaceLabel& out);

// Final projective measurement (trivial output): branches are the
// projectors themselves.
Instrument projective_measurement(const BlochSetting& s, const SpaceLabel& in);

// Unbiased preparation equivalent to the spatial projective measurement of
// the same setting (the d_out-image of the projective POVM): branches P_a/2.
// The prepared physical states are the transposed projectors.
Instrument projective_preparation(const BlochSetting& s,
                                  const SpaceLabel& out);

// -------------------------- preparation reduction ---------------------------

struct PreparationBranch {
    double probability;
    Operator state;  // unit-trace density matrix on the output space
};

// Reduce an instrument acting on a maximally mixed input to the induced
// preparation: rho_a = tr_in M_a / d_in, emitted as probability tr(rho_a)
// and state rho_a^T / tr(rho_a).
std::vector<PreparationBranch> reduce_preparation(const Instrument& instr);

} // namespace procmat
