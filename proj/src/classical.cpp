#include "procmat/classical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace procmat {

// --------------------------- classical operations ----------------------------

ClassicalOperation ClassicalOperation::zeros(int n_settings, int n_outcomes,
                                             int d_in, int d_out) {
    ClassicalOperation op;
    op.n_settings = n_settings;
    op.n_outcomes = n_outcomes;
    op.d_in = d_in;
    op.d_out = d_out;
    op.table.assign(
        static_cast<std::size_t>(n_settings * n_outcomes * d_in * d_out), 0.0);
    return op;
}

void check_classical_operation(const ClassicalOperation& op, double tol) {
    for (double v : op.table)
        if (v < -tol)
            throw validation_error("classical operation has negative entry");
    for (int x = 0; x < op.n_settings; ++x)
        for (int li = 0; li < op.d_in; ++li) {
            double sum = 0.0;
            for (int a = 0; a < op.n_outcomes; ++a)
                for (int lo = 0; lo < op.d_out; ++lo) sum += op.p(a, lo, x, li);
            if (std::abs(sum - 1.0) > tol)
                throw validation_error(
                    "classical operation slice does not sum to 1");
        }
}

bool classical_is_unbiased(const ClassicalOperation& op, double tol) {
    for (int x = 0; x < op.n_settings; ++x)
        for (int lo = 0; lo < op.d_out; ++lo) {
            double sum = 0.0;
            for (int a = 0; a < op.n_outcomes; ++a)
                for (int li = 0; li < op.d_in; ++li) sum += op.p(a, lo, x, li);
            sum /= static_cast<double>(op.d_in);
            if (std::abs(sum - 1.0 / static_cast<double>(op.d_out)) > tol)
                return false;
        }
    return true;
}

void check_classical_resource(const ClassicalResource& res, double tol) {
    for (double v : res.table)
        if (v < -tol)
            throw validation_error("classical resource has negative entry");
    for (int from = 0; from < res.d_from; ++from) {
        double sum = 0.0;
        for (int to = 0; to < res.d_to; ++to) sum += res.p(to, from);
        if (std::abs(sum - 1.0) > tol)
            throw validation_error(
                "classical resource column does not sum to 1");
    }
}

// -------------------------- correlation extraction ---------------------------

static std::vector<double> binary_outcome_values(int n) {
    if (n == 2) return {+1.0, -1.0};
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) v[static_cast<std::size_t>(k)] = k;
    return v;
}

ProbabilityTable classical_correlations(const ClassicalOperation& opA,
                                        const ClassicalResource& res,
                                        const ClassicalOperation& opB) {
    if (opA.d_in != 1)
        throw layout_error("preparation side must have trivial input");
    if (opB.d_out != 1)
        throw layout_error("measurement side must have trivial output");
    if (opA.d_out != res.d_from || res.d_to != opB.d_in)
        throw layout_error("hidden-state cardinalities do not chain");

    ProbabilityTable table;
    table.settings_shape = {opA.n_settings, opB.n_settings};
    table.outcomes_shape = {opA.n_outcomes, opB.n_outcomes};
    table.outcome_values = {binary_outcome_values(opA.n_outcomes),
                            binary_outcome_values(opB.n_outcomes)};
    table.values.assign(static_cast<std::size_t>(
                            opA.n_settings * opB.n_settings * opA.n_outcomes *
                            opB.n_outcomes),
                        0.0);

    for (int x = 0; x < opA.n_settings; ++x)
        for (int y = 0; y < opB.n_settings; ++y)
            for (int a = 0; a < opA.n_outcomes; ++a)
                for (int b = 0; b < opB.n_outcomes; ++b) {
                    double sum = 0.0;
                    for (int la = 0; la < opA.d_out; ++la)
                        for (int lb = 0; lb < opB.d_in; ++lb)
                            sum += opB.p(b, 0, y, lb) * res.p(lb, la) *
                                   opA.p(a, la, x, 0);
                    table.values[static_cast<std::size_t>(
                        ((x * opB.n_settings + y) * opA.n_outcomes + a) *
                            opB.n_outcomes +
                        b)] = sum;
                }
    return table;
}

// --------------------------- Bell factorization ------------------------------

ProbabilityTable LocalModel::reassemble() const {
    ProbabilityTable table;
    table.settings_shape = {n_settings_a, n_settings_b};
    table.outcomes_shape = {n_outcomes_a, n_outcomes_b};
    table.outcome_values = {binary_outcome_values(n_outcomes_a),
                            binary_outcome_values(n_outcomes_b)};
    table.values.assign(static_cast<std::size_t>(n_settings_a * n_settings_b *
                                                 n_outcomes_a * n_outcomes_b),
                        0.0);

    auto ra = [&](int a, int x, int la) {
        return response_a[static_cast<std::size_t>(
            (a * n_settings_a + x) * d_lambda_a + la)];
    };
    auto rb = [&](int b, int y, int lb) {
        return response_b[static_cast<std::size_t>(
            (b * n_settings_b + y) * d_lambda_b + lb)];
    };

    for (int x = 0; x < n_settings_a; ++x)
        for (int y = 0; y < n_settings_b; ++y)
            for (int a = 0; a < n_outcomes_a; ++a)
                for (int b = 0; b < n_outcomes_b; ++b) {
                    double sum = 0.0;
                    for (int la = 0; la < d_lambda_a; ++la)
                        for (int lb = 0; lb < d_lambda_b; ++lb)
                            sum += rb(b, y, lb) * ra(a, x, la) *
                                   hidden_weight[static_cast<std::size_t>(
                                       lb * d_lambda_a + la)];
                    table.values[static_cast<std::size_t>(
                        ((x * n_settings_b + y) * n_outcomes_a + a) *
                            n_outcomes_b +
                        b)] = sum;
                }
    return table;
}

LocalModel bell_factorization(const ClassicalOperation& opA,
                              const ClassicalResource& res,
                              const ClassicalOperation& opB, double tol) {
    if (opA.d_in != 1)
        throw layout_error("preparation side must have trivial input");
    if (!classical_is_unbiased(opA, tol))
        throw validation_error(
            "factorization requires an unbiased preparation: biased "
            "operations are resources, not operations");

    LocalModel model;
    model.d_lambda_a = opA.d_out;
    model.d_lambda_b = opB.d_in;
    model.n_settings_a = opA.n_settings;
    model.n_outcomes_a = opA.n_outcomes;
    model.n_settings_b = opB.n_settings;
    model.n_outcomes_b = opB.n_outcomes;

    const double d_out = static_cast<double>(opA.d_out);
    model.hidden_weight.assign(
        static_cast<std::size_t>(model.d_lambda_b * model.d_lambda_a), 0.0);
    for (int lb = 0; lb < model.d_lambda_b; ++lb)
        for (int la = 0; la < model.d_lambda_a; ++la)
            model.hidden_weight[static_cast<std::size_t>(
                lb * model.d_lambda_a + la)] = res.p(lb, la) / d_out;

    model.response_a.assign(
        static_cast<std::size_t>(opA.n_outcomes * opA.n_settings * opA.d_out),
        0.0);
    for (int a = 0; a < opA.n_outcomes; ++a)
        for (int x = 0; x < opA.n_settings; ++x)
            for (int la = 0; la < opA.d_out; ++la)
                model.response_a[static_cast<std::size_t>(
                    (a * opA.n_settings + x) * opA.d_out + la)] =
                    d_out * opA.p(a, la, x, 0);

    model.response_b.assign(
        static_cast<std::size_t>(opB.n_outcomes * opB.n_settings * opB.d_in),
        0.0);
    for (int b = 0; b < opB.n_outcomes; ++b)
        for (int y = 0; y < opB.n_settings; ++y)
            for (int lb = 0; lb < opB.d_in; ++lb)
                model.response_b[static_cast<std::size_t>(
                    (b * opB.n_settings + y) * opB.d_in + lb)] =
                    opB.p(b, 0, y, lb);
    return model;
}

// ------------------------------ classical bounds -----------------------------

namespace {

// Deterministic +/-1 assignment for party p at setting x, read from the
// bits of the strategy index.
inline double det_outcome(std::uint64_t strategy, int bit) {
    return (strategy >> bit) & 1u ? -1.0 : +1.0;
}

} // namespace

double local_bound(const InequalityFunctional& f, int n_parties,
                   int n_settings) {
    const int bits = n_parties * n_settings;
    if (bits > 20)
        throw error("deterministic enumeration limited to 20 strategy bits, "
                    "got " +
                    std::to_string(bits));
    if (f.n_parties() != n_parties)
        throw layout_error("functional arity does not match party count");

    const std::int64_t n_strategies = 1ll << bits;

    // Per-thread candidates merged in index order keep the reduction
    // deterministic (ties break toward the lowest strategy index).
    int n_threads = 1;
#ifdef _OPENMP
    n_threads = omp_get_max_threads();
#endif
    std::vector<double> thread_best(static_cast<std::size_t>(n_threads),
                                    -std::numeric_limits<double>::infinity());
    std::vector<std::int64_t> thread_index(
        static_cast<std::size_t>(n_threads), n_strategies);

#pragma omp parallel num_threads(n_threads)
    {
        int tid = 0;
#ifdef _OPENMP
        tid = omp_get_thread_num();
#endif
        double local_best = -std::numeric_limits<double>::infinity();
        std::int64_t local_index = n_strategies;
#pragma omp for schedule(static)
        for (std::int64_t s = 0; s < n_strategies; ++s) {
            const std::uint64_t strategy = static_cast<std::uint64_t>(s);
            double value = 0.0;
            for (const auto& [tuple, coeff] : f.coefficients) {
                double product = 1.0;
                for (int p = 0; p < n_parties; ++p)
                    product *= det_outcome(
                        strategy, p * n_settings +
                                      tuple[static_cast<std::size_t>(p)]);
                value += coeff * product;
            }
            if (f.absolute) value = std::abs(value);
            if (value > local_best) {
                local_best = value;
                local_index = s;
            }
        }
        thread_best[static_cast<std::size_t>(tid)] = local_best;
        thread_index[static_cast<std::size_t>(tid)] = local_index;
    }

    double best = thread_best[0];
    std::int64_t best_index = thread_index[0];
    for (std::size_t t = 1; t < thread_best.size(); ++t)
        if (thread_best[t] > best ||
            (thread_best[t] == best && thread_index[t] < best_index)) {
            best = thread_best[t];
            best_index = thread_index[t];
        }
    (void)best_index;
    return best;
}

double biseparable_bound(const InequalityFunctional& f) {
    if (f.n_parties() != 3)
        throw layout_error("biseparable bound is defined for three parties");
    const int n_settings = static_cast<int>(f.n_settings());
    if (n_settings != 2)
        throw layout_error("biseparable enumeration expects binary settings");

    double best = 0.0;
    // Bipartitions: lone party 0, 1, or 2; the other two share a joint
    // strategy (y, z) -> (b, c) with signalling allowed inside the pair.
    for (int lone = 0; lone < 3; ++lone) {
        const int pair_first = lone == 0 ? 1 : 0;
        const int pair_second = lone == 2 ? 1 : 2;

        // 4 joint-setting cells, 4 outcome pairs each: 4^4 strategies,
        // 2^2 lone strategies.
        for (std::uint32_t joint = 0; joint < 256; ++joint)
            for (std::uint32_t lone_strat = 0; lone_strat < 4; ++lone_strat) {
                double value = 0.0;
                for (const auto& [tuple, coeff] : f.coefficients) {
                    const int xl = tuple[static_cast<std::size_t>(lone)];
                    const int xp = tuple[static_cast<std::size_t>(pair_first)];
                    const int xq = tuple[static_cast<std::size_t>(pair_second)];
                    const int cell = 2 * xp + xq;
                    const std::uint32_t pair_bits = (joint >> (2 * cell)) & 3u;
                    const double outcome_p = (pair_bits & 1u) ? -1.0 : +1.0;
                    const double outcome_q = (pair_bits & 2u) ? -1.0 : +1.0;
                    const double outcome_l =
                        ((lone_strat >> xl) & 1u) ? -1.0 : +1.0;
                    value += coeff * outcome_p * outcome_q * outcome_l;
                }
                if (f.absolute) value = std::abs(value);
                best = std::max(best, value);
            }
    }
    return best;
}

// ------------------------------ random sampling ------------------------------

static std::vector<double> dirichlet(int n, Rng& rng) {
    std::exponential_distribution<double> exp_dist(1.0);
    std::vector<double> v(static_cast<std::size_t>(n));
    double sum = 0.0;
    for (double& x : v) {
        x = exp_dist(rng);
        sum += x;
    }
    for (double& x : v) x /= sum;
    return v;
}

ClassicalResource random_resource(int d_from, int d_to, Rng& rng) {
    ClassicalResource res;
    res.d_from = d_from;
    res.d_to = d_to;
    res.table.assign(static_cast<std::size_t>(d_from * d_to), 0.0);
    for (int from = 0; from < d_from; ++from) {
        const auto col = dirichlet(d_to, rng);
        for (int to = 0; to < d_to; ++to)
            res.p(to, from) = col[static_cast<std::size_t>(to)];
    }
    return res;
}

ClassicalOperation random_unbiased_preparation(int n_settings, int n_outcomes,
                                               int d_out, Rng& rng) {
    ClassicalOperation op =
        ClassicalOperation::zeros(n_settings, n_outcomes, 1, d_out);
    for (int x = 0; x < n_settings; ++x)
        for (int lo = 0; lo < d_out; ++lo) {
            const auto q = dirichlet(n_outcomes, rng);
            for (int a = 0; a < n_outcomes; ++a)
                op.p(a, lo, x, 0) =
                    q[static_cast<std::size_t>(a)] / static_cast<double>(d_out);
        }
    return op;
}

ClassicalOperation random_measurement(int n_settings, int n_outcomes, int d_in,
                                      Rng& rng) {
    ClassicalOperation op =
        ClassicalOperation::zeros(n_settings, n_outcomes, d_in, 1);
    for (int y = 0; y < n_settings; ++y)
        for (int li = 0; li < d_in; ++li) {
            const auto q = dirichlet(n_outcomes, rng);
            for (int b = 0; b < n_outcomes; ++b)
                op.p(b, 0, y, li) = q[static_cast<std::size_t>(b)];
        }
    return op;
}

} // namespace procmat
