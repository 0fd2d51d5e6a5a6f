#pragma once

#include <string>
#include <vector>

#include "procmat/instruments.hpp"
#include "procmat/operator.hpp"

// Process matrices: the resources correlations are extracted from. A
// process is a PSD operator over the parties' input/output spaces together
// with a declared structural class. Validation checks the class conditions:
//
//   SpatialState   all ports Input (or plain), trace 1
//   Channel        two slots [outputs][inputs]; tracing the inputs leaves
//                  the identity on the outputs
//   FixedOrderComb time-ordered slots; recursively, tracing the last
//                  (input) slot must leave identity on the preceding
//                  output slot tensor a valid smaller comb
//
// Processes carry their natural trace (the identity process on qubits has
// trace 2, chi_kappa has trace 2); only process_to_state normalizes.

namespace procmat {

enum class ProcessStructure { SpatialState, Channel, FixedOrderComb };

// Time-ordered label groups, earliest first; used by Channel and
// FixedOrderComb validation.
using CombOrder = std::vector<Layout>;

struct ProcessMatrix {
    Operator op;
    ProcessStructure structure;
    CombOrder comb_order;  // empty for SpatialState
};

struct ValidityReport {
    bool psd = false;
    bool structure_ok = false;
    std::vector<std::string> failures;

    bool ok() const { return psd && structure_ok; }
    std::string summary() const;
};

// ------------------------------ constructors --------------------------------

ProcessMatrix spatial_state(Operator density);

// Channel process per the transposed Choi convention:
//   T = sum_{jl} |j><l|_{A_O} (x) map(|j><l|)_{B_I},
// valid iff the map is CPTP. Throws validation_error otherwise.
ProcessMatrix channel_to_process(const CPMap& map);

// W = (1/d)_{A_I} (x) [[1]]_{A_O B_I}: measure, trivial evolution, measure.
ProcessMatrix identity_process(Index d = 2);

// rho = W / tr W. Throws numerical_error on vanishing trace.
Operator process_to_state(const ProcessMatrix& w);

// Choi of the CNOT gate as a channel from (A_O, D) to (B_I, C_I):
// |lambda> = sqrt(2)(|00>_{A_O B_I}|Phi+>_{D C_I} + |11>_{A_O B_I}|Psi+>_{D C_I}).
ProcessMatrix cnot_process();

// Tripartite spatio-temporal process: prepare, CNOT with the |kappa>
// ancilla, measure both. chi_kappa = tr_D[(1 (x) |k><k|^T_D (x) 1 1) Lambda],
// equal to 2 |G_kappa><G_kappa|.
ProcessMatrix ghz_process(double kappa);

// Pure density matrix of |G_kappa> on plain spatial labels A, B, C.
Operator g_kappa_state(double kappa);

// -------------------------------- validation ---------------------------------

ValidityReport validate(const ProcessMatrix& w, double tol = kValidationTol);

// Mix with trace-matched white noise: v W + (1-v) tr(W) 1/D. Preserves the
// structural class.
ProcessMatrix depolarize(const ProcessMatrix& w, double visibility);

} // namespace procmat
