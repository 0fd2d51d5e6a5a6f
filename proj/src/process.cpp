#include "procmat/process.hpp"

#include <cmath>

#include "procmat/states.hpp"

namespace procmat {

std::string ValidityReport::summary() const {
    if (ok()) return "valid";
    std::string s = "invalid:";
    for (const std::string& f : failures) s += "\n  - " + f;
    return s;
}

ProcessMatrix spatial_state(Operator density) {
    return ProcessMatrix{std::move(density), ProcessStructure::SpatialState, {}};
}

ProcessMatrix channel_to_process(const CPMap& map) {
    check_cpmap_layout(map);
    if (!map.input_label || !map.output_label)
        throw layout_error("channel_to_process requires non-trivial spaces");
    if (!is_trace_preserving(map))
        throw validation_error("map is not trace preserving (Choi condition "
                               "tr_out M == identity fails)");

    const Index din = map.input_dim();
    const Index dout = map.output_dim();
    const SpaceLabel from = output_space(map.input_label->party, din);
    const SpaceLabel to = input_space(map.output_label->party, dout);

    // T = sum_{jl} |j><l|_{A_O} (x) map(|j><l|)_{B_I}
    Matrix t = Matrix::Zero(din * dout, din * dout);
    for (Index j = 0; j < din; ++j)
        for (Index l = 0; l < din; ++l) {
            Matrix basis = Matrix::Zero(din, din);
            basis(j, l) = 1.0;
            const Matrix mapped = apply_cpmap(map, basis);
            for (Index p = 0; p < dout; ++p)
                for (Index q = 0; q < dout; ++q)
                    t(j * dout + p, l * dout + q) = mapped(p, q);
        }

    return ProcessMatrix{Operator({from, to}, std::move(t)),
                         ProcessStructure::Channel,
                         {{from}, {to}}};
}

ProcessMatrix identity_process(Index d) {
    if (d < 2) throw layout_error("identity_process requires d >= 2");
    const SpaceLabel ai = input_space("A", d);
    const SpaceLabel ao = output_space("A", d);
    const SpaceLabel bi = input_space("B", d);

    const Operator mixed(
        {ai}, Matrix::Identity(d, d) / static_cast<double>(d));
    const Operator link({ao, bi}, states::entangled_identity(d));
    Operator w = tensor(mixed, link);
    return ProcessMatrix{std::move(w),
                         ProcessStructure::FixedOrderComb,
                         {{ai}, {ao}, {bi}}};
}

Operator process_to_state(const ProcessMatrix& w) {
    const Complex tr = w.op.trace();
    if (std::abs(tr) < 1e-14)
        throw numerical_error("process has vanishing trace");
    return w.op * (1.0 / tr);
}

ProcessMatrix cnot_process() {
    const SpaceLabel ao = output_space("A", 2);
    const SpaceLabel bi = input_space("B", 2);
    const SpaceLabel d = output_space("D", 2);
    const SpaceLabel ci = input_space("C", 2);

    // Layout (A_O, B_I, D, C_I).
    const Vector phi = states::phi_plus();
    const Vector psi = states::psi_plus();
    Vector lambda = Vector::Zero(16);
    for (Index dc = 0; dc < 4; ++dc) {
        lambda(0 * 4 + dc) += std::sqrt(2.0) * phi(dc);   // |00>
        lambda(3 * 4 + dc) += std::sqrt(2.0) * psi(dc);   // |11>
    }
    return ProcessMatrix{Operator({ao, bi, d, ci}, states::projector(lambda)),
                         ProcessStructure::Channel,
                         {{ao, d}, {bi, ci}}};
}

ProcessMatrix ghz_process(double kappa) {
    if (kappa < 0.0 || kappa > 1.0)
        throw validation_error("kappa must lie in [0, 1]");
    const ProcessMatrix cnot = cnot_process();
    const Layout& layout = cnot.op.layout();  // (A_O, B_I, D, C_I)
    const SpaceLabel d_label = layout[2];

    // 1_{A_O} (x) 1_{B_I} (x) |k><k|^T_D (x) 1_{C_I}
    const Operator kappa_proj(
        {d_label}, states::projector(states::kappa_ket(kappa)));
    Operator insert = tensor(
        tensor(Operator::identity({layout[0], layout[1]}),
               transpose_subsystem(kappa_proj, {d_label})),
        Operator::identity({layout[3]}));

    Operator chi = partial_trace(reorder(insert, layout) * cnot.op, {d_label});
    return ProcessMatrix{std::move(chi),
                         ProcessStructure::FixedOrderComb,
                         {{layout[0]}, {layout[1], layout[3]}}};
}

Operator g_kappa_state(double kappa) {
    if (kappa < 0.0 || kappa > 1.0)
        throw validation_error("kappa must lie in [0, 1]");
    return Operator({input_space("A"), input_space("B"), input_space("C")},
                    states::projector(states::g_kappa(kappa)));
}

// --------------------------------- validation --------------------------------

namespace {

bool approx_identity(const Matrix& m, double tol) {
    return (m - Matrix::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <=
           tol;
}

// Recursive comb condition over time-ordered slots.
void check_comb(const Operator& w, const CombOrder& order, double tol,
                ValidityReport& report) {
    if (order.empty()) {
        if (w.dim() != 1 || std::abs(w.entries()(0, 0) - 1.0) > tol)
            report.failures.push_back("comb does not close to unit weight");
        return;
    }

    const Layout& last = order.back();
    const bool last_is_input = [&] {
        for (const SpaceLabel& l : last)
            if (l.port != Port::Input) return false;
        return true;
    }();

    if (last_is_input && order.size() == 1) {
        // Initial state slot.
        if (std::abs(w.trace() - Complex(1.0)) > tol)
            report.failures.push_back("initial-state slot is not normalized");
        return;
    }

    if (!last_is_input) {
        report.failures.push_back("final comb slot contains non-input spaces");
        return;
    }

    // Trace the final inputs; the preceding output slot must factor as an
    // identity.
    const Operator traced = partial_trace(w, last);
    CombOrder rest(order.begin(), order.end() - 1);
    const Layout& outs = rest.back();
    for (const SpaceLabel& l : outs)
        if (l.port != Port::Output) {
            report.failures.push_back(
                "comb slot preceding " + to_string(last) +
                " must contain output spaces only");
            return;
        }

    const Index d_out = total_dimension(outs);
    Operator smaller =
        partial_trace(traced, outs) * (1.0 / static_cast<double>(d_out));

    // traced == smaller (x) identity(outs), up to ordering.
    Operator rebuilt = tensor(smaller, Operator::identity(outs));
    const Operator aligned = reorder(rebuilt, traced.layout());
    const double dev =
        (aligned.entries() - traced.entries()).cwiseAbs().maxCoeff();
    if (dev > tol) {
        report.failures.push_back(
            "tracing " + to_string(last) + " does not leave identity on " +
            to_string(outs) + " (deviation " + std::to_string(dev) + ")");
        return;
    }

    rest.pop_back();
    check_comb(smaller, rest, tol, report);
}

} // namespace

ValidityReport validate(const ProcessMatrix& w, double tol) {
    ValidityReport report;

    if (!w.op.is_hermitian(tol)) {
        report.failures.push_back("process matrix is not Hermitian");
        return report;
    }
    report.psd = is_psd(w.op, tol);
    if (!report.psd)
        report.failures.push_back("process matrix is not positive semi-definite");

    switch (w.structure) {
        case ProcessStructure::SpatialState: {
            bool ports_ok = true;
            for (const SpaceLabel& l : w.op.layout())
                if (l.port == Port::Output) ports_ok = false;
            if (!ports_ok)
                report.failures.push_back(
                    "spatial state carries an output space");
            const double tr_dev = std::abs(w.op.trace() - Complex(1.0));
            if (tr_dev > tol)
                report.failures.push_back("spatial state trace differs from 1");
            report.structure_ok = ports_ok && tr_dev <= tol;
            break;
        }
        case ProcessStructure::Channel:
        case ProcessStructure::FixedOrderComb: {
            if (w.comb_order.empty()) {
                report.failures.push_back("missing comb order");
                report.structure_ok = false;
                break;
            }
            Layout flattened;
            for (const Layout& slot : w.comb_order)
                flattened.insert(flattened.end(), slot.begin(), slot.end());
            if (!is_permutation_of(flattened, w.op.layout())) {
                report.failures.push_back(
                    "comb order does not cover the process layout");
                report.structure_ok = false;
                break;
            }
            const std::size_t before = report.failures.size();
            check_comb(w.op, w.comb_order, tol, report);
            report.structure_ok = report.failures.size() == before;
            break;
        }
    }
    return report;
}

ProcessMatrix depolarize(const ProcessMatrix& w, double visibility) {
    if (visibility < 0.0 || visibility > 1.0)
        throw validation_error("visibility must lie in [0, 1]");
    const Index n = w.op.dim();
    const Matrix white = w.op.trace() / static_cast<double>(n) *
                         Matrix::Identity(n, n);
    Matrix mixed = visibility * w.op.entries() + (1.0 - visibility) * white;
    return ProcessMatrix{Operator(w.op.layout(), std::move(mixed)),
                         w.structure, w.comb_order};
}

} // namespace procmat
