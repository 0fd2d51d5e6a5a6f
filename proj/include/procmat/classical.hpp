#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "procmat/correlations.hpp"

// Classical temporal resources and free operations, the Bell-factorization
// construction, and brute-force classical and biseparable bounds by
// exhaustive enumeration of deterministic strategies.

namespace procmat {

using Rng = std::mt19937_64;

// --------------------------- classical operations ----------------------------

// P(a, lambda_out | x, lambda_in), normalized over (a, lambda_out) for
// every (x, lambda_in). Trivial input or output states use cardinality 1.
struct ClassicalOperation {
    int n_settings = 1;
    int n_outcomes = 2;
    int d_in = 1;
    int d_out = 1;
    std::vector<double> table;

    double p(int a, int lo, int x, int li) const {
        return table[static_cast<std::size_t>(
            ((a * d_out + lo) * n_settings + x) * d_in + li)];
    }
    double& p(int a, int lo, int x, int li) {
        return table[static_cast<std::size_t>(
            ((a * d_out + lo) * n_settings + x) * d_in + li)];
    }

    static ClassicalOperation zeros(int n_settings, int n_outcomes, int d_in,
                                    int d_out);
};

// Throws validation_error when a slice is not a probability distribution.
void check_classical_operation(const ClassicalOperation& op,
                               double tol = 1e-9);

// Classical no-bias: uniform input maps to uniform output when the outcome
// is ignored: (1/d_in) sum_{a, l_in} P(a, l_out | x, l_in) == 1/d_out.
bool classical_is_unbiased(const ClassicalOperation& op, double tol = 1e-9);

// ---------------------------- classical resources ----------------------------

// A classical channel P(lambda_to | lambda_from).
struct ClassicalResource {
    int d_from = 2;
    int d_to = 2;
    std::vector<double> table;

    double p(int to, int from) const {
        return table[static_cast<std::size_t>(to * d_from + from)];
    }
    double& p(int to, int from) {
        return table[static_cast<std::size_t>(to * d_from + from)];
    }
};

void check_classical_resource(const ClassicalResource& res, double tol = 1e-9);

// -------------------------- correlation extraction ---------------------------

// P(a, b | x, y) = sum_l P_B(b | y, l_B) P_R(l_B | l_A) P_A(a, l_A | x),
// for a preparation-side opA (trivial input) and measurement-side opB
// (trivial output). Outcomes are emitted as +/-1 values (outcome index 0
// maps to +1) when both sides are binary.
ProbabilityTable classical_correlations(const ClassicalOperation& opA,
                                        const ClassicalResource& res,
                                        const ClassicalOperation& opB);

// --------------------------- Bell factorization ------------------------------

// The rearrangement that proves unbiased classical temporal correlations
// are locally causal: joint hidden-variable weight
// Pbar_R(l_B, l_A) = P_R(l_B | l_A)/d_out and response
// Pbar_A(a | x, l_A) = d_out * P_A(a, l_A | x).
struct LocalModel {
    int d_lambda_a = 0;
    int d_lambda_b = 0;
    std::vector<double> hidden_weight;  // Pbar_R indexed (l_B, l_A)
    std::vector<double> response_a;     // (a, x, l_A)
    std::vector<double> response_b;     // (b, y, l_B)
    int n_settings_a = 0, n_outcomes_a = 0;
    int n_settings_b = 0, n_outcomes_b = 0;

    ProbabilityTable reassemble() const;
};

// Throws validation_error when opA violates the preparation no-bias
// condition (the construction is invalid for biased operations).
LocalModel bell_factorization(const ClassicalOperation& opA,
                              const ClassicalResource& res,
                              const ClassicalOperation& opB,
                              double tol = 1e-9);

// ------------------------------ classical bounds -----------------------------

// Maximum of the functional over per-party deterministic strategies,
// exhaustively enumerated. Throws when the instance needs more than 20
// strategy bits. Enumeration runs in parallel with a deterministic
// max-reduction (ties break toward the lowest strategy index).
double local_bound(const InequalityFunctional& f, int n_parties,
                   int n_settings);

// Maximum over the three bipartitions of three parties, with an arbitrary
// joint deterministic strategy inside the pair (signalling allowed) and a
// deterministic lone party.
double biseparable_bound(const InequalityFunctional& f);

// ------------------------------ random sampling ------------------------------

// Uniform Dirichlet over each conditional slice.
ClassicalResource random_resource(int d_from, int d_to, Rng& rng);

// Unbiased preparation: P(a, l | x) = q(a | l, x)/d_out with Dirichlet q.
ClassicalOperation random_unbiased_preparation(int n_settings, int n_outcomes,
                                               int d_out, Rng& rng);

// Measurement side, trivial output: P(b | y, l_in) Dirichlet per (y, l_in).
ClassicalOperation random_measurement(int n_settings, int n_outcomes, int d_in,
                                      Rng& rng);

} // namespace procmat
